"""Tests for the command-line front end."""

import json

from crysturn.catalog import dump_group, builtin_catalog
from crysturn.cli import (
    EXIT_BAD_DATA,
    EXIT_OK,
    EXIT_UNDECIDED,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    payload = json.loads(out) if out.strip() else None
    return code, payload, err


class TestRinf:
    def test_line_has_witness(self, capsys):
        code, out, _ = run(capsys, "rinf", "1/1/1/1/1")
        assert code == EXIT_OK
        assert "NO" in out and "-1" in out

    def test_infinite_dihedral_holds(self, capsys):
        code, out, _ = run(capsys, "rinf", "1/2/1/1/1")
        assert code == EXIT_OK
        assert "YES" in out

    def test_undecided_without_search(self, capsys):
        code, out, _ = run(capsys, "rinf", "2/1/1/1/1")
        assert code == EXIT_UNDECIDED

    def test_word_search_decides(self, capsys):
        code, out, _ = run(capsys, "rinf", "2/1/1/1/1", "--search-words", "2")
        assert code == EXIT_OK
        assert "NO" in out

    def test_json_schema(self, capsys):
        code, payload, _ = run_json(capsys, "rinf", "1/1/1/1/1")
        assert code == EXIT_OK
        assert set(payload) == {"result", "meta"}
        assert payload["result"]["r_infinity"] is False
        assert payload["result"]["witness"] == [[-1]]
        assert payload["meta"]["normaliser_size"] == 2
        assert "elapsed_ms" in payload["meta"]


class TestSpectrum:
    def test_p3(self, capsys):
        code, out, _ = run(capsys, "spectrum", "2/4/1/1/1")
        assert code == EXIT_OK
        assert "{4}" in out
        assert "infinity: yes" in out

    def test_json_matches_text(self, capsys):
        code, payload, _ = run_json(capsys, "spectrum", "3/3/1/1/1")
        assert code == EXIT_OK
        assert payload["result"]["finite_values"] == [2]
        assert payload["result"]["contains_infinity"] is True

    def test_undecided_for_infinite_normaliser(self, capsys):
        code, out, _ = run(capsys, "spectrum", "2/1/1/1/1")
        assert code == EXIT_UNDECIDED


class TestReidnr:
    def test_point_reflection_three(self, capsys):
        code, out, _ = run(
            capsys, "reidnr", "2/1/2/1/1", "--D", "[[0,-1],[1,-1]]", "--d", "0,0"
        )
        assert code == EXIT_OK
        assert out.strip() == "R = 3"

    def test_half_translation(self, capsys):
        code, out, _ = run(
            capsys, "reidnr", "2/1/2/1/1", "--D", "[[0,1],[1,4]]", "--d", "1/2,0"
        )
        assert code == EXIT_OK
        assert out.strip() == "R = 4"

    def test_infinite_value(self, capsys):
        code, payload, _ = run_json(
            capsys, "reidnr", "2/1/2/1/1", "--D", "[[1,0],[0,1]]", "--d", "0,0"
        )
        assert code == EXIT_OK
        assert payload["result"]["reidemeister_number"] == "infinity"

    def test_invalid_automorphism(self, capsys):
        code, _, err = run(
            capsys, "reidnr", "2/4/1/1/1", "--D", "[[1,1],[0,1]]", "--d", "0,0"
        )
        assert code == EXIT_BAD_DATA
        assert "invalid group data" in err

    def test_bad_matrix_syntax(self, capsys):
        code, _, err = run(capsys, "reidnr", "2/1/2/1/1", "--D", "[[1,2]", "--d", "0,0")
        assert code == EXIT_USAGE


class TestFindD:
    def test_existing(self, capsys):
        code, out, _ = run(capsys, "find-d", "2/1/2/1/1", "--D", "[[0,1],[1,2]]")
        assert code == EXIT_OK
        assert out.startswith("d = ")

    def test_absent(self, capsys, tmp_path):
        doc = {
            "dimension": 3,
            "generators": [
                {
                    "translation": ["0", "0", "1/4"],
                    "matrix": [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
                }
            ],
            "normalizer_generators": [[[1, 0, 0], [0, 1, 0], [0, 0, -1]]],
        }
        path = tmp_path / "screw4.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run(
            capsys, "find-d", str(path), "--D", "[[1,0,0],[0,1,0],[0,0,-1]]"
        )
        assert code == EXIT_OK
        assert "no translation part exists" in out


class TestDeltaBase:
    def test_point_reflection(self, capsys):
        code, payload, _ = run_json(capsys, "delta-base", "2/1/2/1/1")
        assert code == EXIT_OK
        got = {tuple(d) for d in payload["result"]["base_translations"]}
        assert got == {("0", "0"), ("0", "1/2"), ("1/2", "0"), ("1/2", "1/2")}


class TestValidate:
    def test_good_file(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(dump_group(builtin_catalog().group("2/4/1/1/1")), encoding="utf-8")
        code, out, _ = run(capsys, "validate", str(path))
        assert code == EXIT_OK
        assert "valid group" in out

    def test_bad_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"dimension": 2, "generators": [{"translation": ["1/2","0"], '
            '"matrix": [[1,0],[0,1]]}]}',
            encoding="utf-8",
        )
        code, _, err = run(capsys, "validate", str(path))
        assert code == EXIT_BAD_DATA
        assert "cocycle" in err

    def test_missing_source(self, capsys):
        code, _, err = run(capsys, "rinf", "no/such/entry")
        assert code == EXIT_USAGE


class TestCatalog:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == EXIT_OK
        assert "1/1/1/1/1" in out.splitlines()

    def test_show(self, capsys):
        code, out, _ = run(capsys, "catalog", "show", "3/2/1/2/1")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["dimension"] == 3

    def test_check_single(self, capsys):
        code, out, _ = run(capsys, "catalog", "check", "1/1/1/1/1")
        assert code == EXIT_OK
        assert "[PASS] 1/1/1/1/1" in out
        assert "1 passed, 0 failed" in out

    def test_check_reports_schema(self, capsys):
        code, payload, _ = run_json(capsys, "catalog", "check", "3/3/1/1/1")
        assert code == EXIT_OK
        assert payload["result"]["passed"] == 1
        assert payload["result"]["failed"] == 0


class TestCaps:
    def test_cap_flag_forces_undecided(self, capsys):
        code, _, _ = run(capsys, "rinf", "2/4/1/1/1", "--cap", "5")
        assert code == EXIT_UNDECIDED

    def test_env_cap_override(self, capsys, monkeypatch):
        monkeypatch.setenv("CRYSTURN_CAP", "5")
        code, _, _ = run(capsys, "rinf", "2/4/1/1/1")
        assert code == EXIT_UNDECIDED

    def test_bad_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("CRYSTURN_CAP", "many")
        code, _, err = run(capsys, "rinf", "2/4/1/1/1")
        assert code == EXIT_USAGE


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_text_and_json_agree(self, capsys):
        _, text_out, _ = run(capsys, "spectrum", "2/4/1/1/1")
        _, payload, _ = run_json(capsys, "spectrum", "2/4/1/1/1")
        assert "{4}" in text_out
        assert payload["result"]["finite_values"] == [4]
        assert ("infinity: yes" in text_out) == payload["result"]["contains_infinity"]
