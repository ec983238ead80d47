"""Exception types shared across the library.

Every contract violation raises one of these named errors so callers (and the
CLI) can distinguish bad input from internal failure.
"""


class TreegroupsError(Exception):
    """Base class for all library errors."""


class EqualArgumentsError(TreegroupsError, ValueError):
    """Two arguments that must differ were equal."""


class IndexOutOfRangeError(TreegroupsError, IndexError):
    """A leaf, strand or generator index was outside its valid range."""


class AddressTooShortError(TreegroupsError, ValueError):
    """A Cantor address has no leaf address of the symbol as a prefix."""


class OutOfDomainError(TreegroupsError, ValueError):
    """A point lies outside the domain of a piecewise map."""


class SearchExceededError(TreegroupsError, RuntimeError):
    """An exact search hit its resource cap before terminating."""


class NoGeneratorFoundError(TreegroupsError, RuntimeError):
    """The deterministic generator search exhausted its space."""


class NotPureError(TreegroupsError, ValueError):
    """A braid that must be pure has a nontrivial underlying permutation."""


class StrandMismatchError(TreegroupsError, ValueError):
    """Two braids that must share a strand count do not."""


class EdgeNotPresentError(TreegroupsError, KeyError):
    """An edge is not part of the tessellation or seed."""


class EdgeNotInteriorError(TreegroupsError, ValueError):
    """A seed restriction edge is not interior to the support."""


class LabelNotReachableError(TreegroupsError, ValueError):
    """The characteristic-map recursion did not reach the requested label."""


class NotStabilizingError(TreegroupsError, ValueError):
    """A move word does not fix the base tessellation."""


class MissingImageError(TreegroupsError, KeyError):
    """A presentation generator has no image under the given assignment."""


class NonConvergentError(TreegroupsError, ArithmeticError):
    """A contour integral failed to reach the requested tolerance."""


class DomainViolationError(TreegroupsError, ValueError):
    """An argument violates the convergence domain of a special function."""


class DegreeMismatchError(TreegroupsError, ValueError):
    """Symbol components have inconsistent leaf counts or degrees."""


class ElementSyntaxError(TreegroupsError, ValueError):
    """Textual element grammar violation, with the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
