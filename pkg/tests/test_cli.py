"""
Tests for the command-line entry point
"""

import json

import pytest

from src.cli import build_parser, main
from src.storage.models import BOTH_CERTIFIED

FULL = "full:k=2"
TILDE_FULL = "tilde(full:k=2)"


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_language_envelope(capsys):
    code, payload = run_json(capsys, ["language", "--spec", FULL, "--depth", "4"])
    assert code == 0
    assert payload["kind"] == "language"
    assert payload["witnesses"]["counts"] == [2, 4, 8, 16]
    assert payload["resolution"] == {"depth": 4}
    assert payload["metadata"]["tool"] == "symdyn"


def test_reproducible_output_is_stable(capsys):
    argv = ["check", "mixing", "--spec", FULL, "--depth", "12", "--j", "2", "--horizon", "4",
            "--u", "01", "--v", "10", "--reproducible"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert "metadata" not in json.loads(first)


def test_absent_result_exits_1(capsys):
    code, payload = run_json(
        capsys, ["check", "periodic", "--spec", "subst:0->01;1->10;seed=0", "--depth", "20", "--p-max", "8"]
    )
    assert code == 1
    assert payload["verdict"] == "absent-at-resolution"


def test_parse_error(capsys):
    assert main(["language", "--spec", "full:k=x"]) == 2
    err = capsys.readouterr().err
    assert "column 8" in err
    assert err.rstrip().endswith("^")


def test_unknown_check(capsys):
    assert main(["check", "entropy", "--spec", FULL]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_resolution_error(capsys):
    assert main(["check", "devaney", "--spec", FULL, "--depth", "5"]) == 3


def test_missing_spec(capsys):
    assert main(["language"]) == 2
    assert "no spec" in capsys.readouterr().err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(f"spec={FULL}\ndepth=4\nreproducible=yes\n")
    code, payload = run_json(capsys, ["language", "--config", str(config)])
    assert code == 0
    assert payload["witnesses"]["counts"] == [2, 4, 8, 16]
    assert "metadata" not in payload

    code, payload = run_json(capsys, ["language", "--config", str(config), "--depth", "3"])
    assert payload["witnesses"]["counts"] == [2, 4, 8]


def test_unknown_config_key(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(f"spec={FULL}\ncolour=red\n")
    assert main(["language", "--config", str(config)]) == 2
    assert "unknown config key" in capsys.readouterr().err


def test_out_file_and_text_format(tmp_path, capsys):
    out = tmp_path / "language.txt"
    code = main(["language", "--spec", FULL, "--depth", "3", "--format", "text", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    lines = out.read_text().splitlines()
    assert lines[0] == "language: generated"
    assert set(lines[1]) == {"="}


def test_unwritable_out(tmp_path, capsys):
    out = tmp_path / "missing" / "cert.json"
    assert main(["language", "--spec", FULL, "--depth", "3", "--out", str(out)]) == 2


def test_verify_paper_on_full_extension(capsys):
    code, payload = run_json(
        capsys,
        ["verify-paper", "--spec", TILDE_FULL, "--depth", "12", "--j", "2", "--horizon", "4",
         "--p-max", "4", "--reproducible"],
    )
    assert code == 1
    assert payload["verdict"] == BOTH_CERTIFIED
    assert payload["witnesses"]["base_devaney"]["verdict"] == "certified"
    assert payload["witnesses"]["tilde_periodic_scan"]["verdict"] == "inconclusive"


def test_verify_paper_reproducible_output_is_stable(capsys):
    argv = ["verify-paper", "--spec", TILDE_FULL, "--depth", "12", "--j", "2", "--horizon", "4",
            "--p-max", "4", "--reproducible"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert "metadata" not in json.loads(first)


def test_verify_paper_rejects_base_spec(capsys):
    assert main(["verify-paper", "--spec", FULL]) == 2


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
