import json

import pytest

from treegroups.cli import (
    build_parser,
    format_bv_element,
    format_element,
    main,
    parse_bv_element,
    parse_element,
)
from treegroups.cosimplicial import PERMUTATIONS, symbol_equal
from treegroups.errors import DegreeMismatchError, ElementSyntaxError


class TestElementGrammar:
    def test_identity(self):
        s = parse_element("[0|0|1]")
        assert s.target.bits == "0" and s.coeff.images == (1,)

    def test_f_generator(self):
        s = parse_element("[10100|11000|1,2,3]")
        assert s.source.bits == "11000"

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            parse_element("[100|100|1]")

    def test_syntax_error(self):
        with pytest.raises(ElementSyntaxError):
            parse_element("[10100|11000]")

    def test_roundtrip(self):
        for text in ("[0|0|1]", "[10100|11000|1,2,3]", "[100|100|2,1]"):
            s = parse_element(text)
            assert symbol_equal(parse_element(format_element(s)), s, PERMUTATIONS)
            assert format_element(parse_element(format_element(s))) == format_element(s)

    def test_json_form(self):
        s = parse_element('{"target": "100", "source": "100", "perm": [2, 1]}')
        assert s.coeff.images == (2, 1)

    def test_bv_roundtrip(self):
        s = parse_bv_element("[100|100|s1 s1]")
        assert format_bv_element(parse_bv_element(format_bv_element(s))) == format_bv_element(s)
        t = parse_bv_element('{"target": "100", "source": "100", "braid": "s1^-1"}')
        assert t.coeff.letters == ((1, -1),)


class TestExitCodes:
    def test_el_order(self, capsys):
        assert main(["el", "order", "alpha"]) == 0
        assert capsys.readouterr().out.strip() == "4"

    def test_el_order_exceeds(self, capsys):
        assert main(["el", "order", "[10100|11000|1,2,3]", "--cap", "5"]) == 0
        assert capsys.readouterr().out.strip() == "exceeds cap"

    def test_el_equal_failure_code(self, capsys):
        assert main(["el", "equal", "[0|0|1]", "alpha"]) == 1
        assert main(["el", "equal", "alpha", "alpha"]) == 0

    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as err:
            main(["el", "order", "--bogus-flag"])
        assert err.value.code == 2

    def test_unknown_subcommand_is_2(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2

    def test_bad_element_is_2(self, capsys):
        assert main(["el", "order", "[100|100|1]"]) == 2
        assert "error" in capsys.readouterr().err

    def test_help_lists_subcommands(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--help"])
        assert err.value.code == 0
        out = capsys.readouterr().out
        for name in ("el", "braid", "bv", "tess", "quant", "presentation"):
            assert name in out


class TestCommands:
    def test_el_rot(self, capsys):
        assert main(["el", "rot", "[1100100|1100100|2,3,4,1]"]) == 0
        assert capsys.readouterr().out.strip() == "1/4"

    def test_el_eval(self, capsys):
        assert main(["el", "eval", "[10100|11000|1,2,3]", "1/4"]) == 0
        assert capsys.readouterr().out.strip() == "1/2"

    def test_el_compose_reduce(self, capsys):
        assert main(["el", "compose", "[10100|11000|1,2,3]", "[11000|10100|1,2,3]"]) == 0
        assert capsys.readouterr().out.strip() == "[0|0|1]"

    def test_braid_equal(self, capsys):
        assert main(["braid", "equal", "s1 s2 s1", "s2 s1 s2"]) == 0
        assert main(["braid", "equal", "s1", "s1^-1", "--strands", "2"]) == 1

    def test_braid_burau_json(self, capsys):
        assert main(["braid", "burau", "s1", "--strands", "2", "--json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert rows == [["1 - t", "t"], ["1", "0"]]

    def test_braid_double(self, capsys):
        assert main(["braid", "double", "s1", "1", "--strands", "2"]) == 0
        assert capsys.readouterr().out.strip() == "s1 s2"

    def test_bv_project(self, capsys):
        assert main(["bv", "project", "[100|100|s1]"]) == 0
        assert capsys.readouterr().out.strip() == "[100|100|2,1]"

    def test_bv_equal(self, capsys):
        assert main(["bv", "equal", "[100|100|s1 s1 s1^-1]", "[100|100|s1]"]) == 0

    def test_tess_act_json(self, capsys):
        assert main(["tess", "act", "--word", "AAAA"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["doe"] == ["0", "inf"]

    def test_tess_flip_label(self, capsys):
        assert main(["tess", "flip", "--label", "0"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["doe"] == ["1", "-1"]

    def test_tess_ball(self, capsys):
        assert main(["tess", "ball", "--radius", "1", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["spheres"] == [1, 4]

    def test_tess_label(self, capsys):
        assert main(["tess", "label", "--word", "AAAA"]) == 0
        assert main(["tess", "label", "--word", "A"]) == 1

    def test_tess_act_from_file(self, tmp_path, capsys):
        assert main(["tess", "act", "--word", "BA"]) == 0
        saved = capsys.readouterr().out
        path = tmp_path / "tess.json"
        path.write_text(saved)
        assert main(["tess", "act", "--word", "ab", "--in", str(path)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["doe"] == ["0", "inf"]

    def test_tess_render(self, tmp_path, capsys):
        out = tmp_path / "disk.svg"
        assert main(["tess", "render", "--out", str(out), "--word", "BA"]) == 0
        assert out.read_text().startswith("<?xml")

    def test_quant_check_csv_plot(self, tmp_path, capsys):
        csv_path = tmp_path / "residuals.csv"
        png_path = tmp_path / "residuals.png"
        code = main(
            [
                "quant",
                "check",
                "--suite",
                "pentagon",
                "--csv",
                str(csv_path),
                "--plot",
                str(png_path),
            ]
        )
        assert code == 0
        assert "PASS" in capsys.readouterr().out
        header = csv_path.read_text().splitlines()[0]
        assert header == "suite,check,case,residual,tolerance,status"
        assert png_path.stat().st_size > 0

    def test_quant_seed_reproducible(self, capsys):
        main(["quant", "check", "--suite", "mutation", "--seed", "7", "--json"])
        first = capsys.readouterr().out
        main(["quant", "check", "--suite", "mutation", "--seed", "7", "--json"])
        assert capsys.readouterr().out == first

    def test_quant_check_json(self, capsys):
        assert main(["quant", "check", "--suite", "mutation", "--json"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert all(r["status"] == "pass" for r in rows)

    def test_presentation_check(self, capsys):
        assert main(["presentation", "check", "T_LS", "--target", "symbols"]) == 0
        assert main(["presentation", "check", "T_LS", "--target", "tessellation"]) == 0
        assert main(["presentation", "check", "BraidedHoughton", "--n", "3"]) == 0

    def test_presentation_params(self, capsys):
        assert (
            main(["presentation", "check", "T_npqrs", "--params", "1,0,0,0,0", "--json"]) == 0
        )
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert len(data["relators"]) == 7
