import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcsusy.cli import (
    Grid,
    RunConfig,
    _use_color,
    cmd_spectrum,
    cmd_verify,
    cmd_wigner,
    main,
    parse_config,
    serialize_config,
)
from mcsusy.errors import ParseError, UnknownKey

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# -- configuration ---------------------------------------------------------------
def test_parse_full_config():
    text = """\
# comment line
mode = formal_hbar
W1 = p2   # trailing comment
W2 = q1*p2 - q2*p1
nmax = 3
state = 2,1,0
grid = -1,1,-1/2,1/2,5
slice = 1/2,0
format = json
"""
    cfg = parse_config(text)
    assert cfg.formal and cfg.n_max == 3 and cfg.state == (2, 1, 0)
    assert cfg.grid == Grid(Fraction(-1), Fraction(1), Fraction(-1, 2), Fraction(1, 2), 5)
    assert cfg.expression("W1") == "p2" and cfg.expression("P2") == "0"
    assert cfg.slice == (Fraction(1, 2), 0) and cfg.format == "json"


@pytest.mark.parametrize(
    "text,exc,line,column",
    [
        ("example = 1\n  colour = red", UnknownKey, 2, 3),
        ("nmax = 1\nnmax = 2", ParseError, 2, 1),
        ("W1 = q1 +", ParseError, 1, 9),
        ("example = 3", ParseError, 1, 10),
        ("just words", ParseError, 1, 1),
        ("example = 1\nW1 = q1", ParseError, 1, 10),
        ("K = q1", ParseError, 1, 4),
        ("grid = 1,0,0,1,5", ParseError, 1, 7),
    ],
)
def test_config_errors(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_config(text)
    assert (info.value.line, info.value.column) == (line, column)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=8)


@st.composite
def configs(draw):
    lo_q, lo_p = draw(fractions), draw(fractions)
    grid = Grid(lo_q, lo_q + draw(st.integers(1, 4)), lo_p, lo_p + 1, draw(st.integers(2, 40)))
    base = {
        "mode": draw(st.sampled_from(["hbar_one", "formal_hbar"])),
        "n_max": draw(st.integers(0, 6)),
        "state": (draw(st.integers(1, 2)), draw(st.integers(0, 4)), draw(st.integers(0, 4))),
        "grid": grid,
        "slice": (draw(fractions), draw(fractions)),
        "format": draw(st.sampled_from([None, "csv", "json"])),
        "out": draw(st.sampled_from([None, "out.csv"])),
    }
    if draw(st.booleans()):
        return RunConfig(example=draw(st.integers(1, 2)), K=draw(st.sampled_from([None, "q1^2 + 3*p1"])), **base)
    return RunConfig(functions=(("W1", "p2"), ("P2", "q1*q2 - 1/2")), **base)


@given(configs())
def test_config_round_trip(cfg):
    assert parse_config(serialize_config(cfg)) == cfg


# -- commands ----------------------------------------------------------------------
def test_verify_codes():
    code, payload = cmd_verify(parse_config((CONFIGS / "example1.cfg").read_text()))
    assert code == 0 and payload["passed"]
    code, payload = cmd_verify(parse_config((CONFIGS / "perturbed.cfg").read_text()))
    assert code == 1 and not payload["passed"]
    assert next(c for c in payload["checks"] if c["condition"] == "eq17")["residual_text"] == "i"


def test_spectrum_table():
    code, table = cmd_spectrum(RunConfig(example=1), n_max=1)
    assert code == 0
    assert table[0] == (1, 0, 0, "0", True)
    assert (2, 0, 0, "1", True) in table
    code, table = cmd_spectrum(RunConfig(example=2), n_max=0)
    assert table == [(1, 0, 0, "1", True), (2, 0, 0, "0", True)]


def test_spectrum_needs_example():
    with pytest.raises(ParseError):
        cmd_spectrum(RunConfig())


def test_wigner_csv_and_json():
    cfg = RunConfig(state=(1, 1, 0), grid=Grid(Fraction(-1), Fraction(1), Fraction(-1), Fraction(1), 3))
    text = cmd_wigner(cfg)
    lines = text.split("\n")
    assert "\r" not in text and lines[4] == "q1,p1,value"
    assert all(line.startswith("# ") for line in lines[:4])
    values = {(r.split(",")[0], r.split(",")[1]): float(r.split(",")[2]) for r in lines[5:] if r}
    assert len(values) == 9 and values[("0.0", "0.0")] < 0 < values[("1.0", "0.0")]
    data = json.loads(cmd_wigner(cfg, fmt="json"))
    assert data["state"] == {"j": 1, "nA": 1, "nB": 0} and len(data["values"]) == 9


# -- entry point --------------------------------------------------------------------
def test_main_verify_writes_json(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code, stdout, err = run(["verify", "--config", str(CONFIGS / "example1.cfg"), "--out", str(out)], capsys)
    assert code == 0 and stdout == ""
    assert "verify: PASS" in err and "\033[" not in err
    assert json.loads(out.read_text())["passed"]
    assert [p.name for p in tmp_path.iterdir()] == ["verify.json"]


def test_main_exit_codes(tmp_path, capsys):
    assert run(["verify", "--config", str(CONFIGS / "perturbed.cfg")], capsys)[0] == 1
    assert run(["spectrum", "--example", "1", "--k", "q2"], capsys)[0] == 2
    assert run(["spectrum", "--example", "1", "--k", "q1"], capsys)[0] == 2
    assert run(["wigner", "--state", "1,-1,0"], capsys)[0] == 2
    assert run(["verify", "--config", str(tmp_path / "missing.cfg")], capsys)[0] == 3
    assert run(["spectrum", "--example", "1", "--nmax", "0", "--out", str(tmp_path / "no" / "x.csv")], capsys)[0] == 3


def test_main_spectrum_is_byte_stable(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert run(["spectrum", "--example", "1", "--nmax", "1", "--out", str(p)], capsys)[0] == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b and b"\r" not in a
    assert a.splitlines()[0] == b"j,nA,nB,lambda,verified"
    assert a.splitlines()[1] == b"1,0,0,0,true"


def test_main_overwrites_atomically(tmp_path, capsys):
    out = tmp_path / "w.csv"
    out.write_text("old")
    code, _, _ = run(["wigner", "--grid=-1,1,-1,1,2", "--state", "2,0,0", "--out", str(out)], capsys)
    assert code == 0 and out.read_text().count("\n") == 9
    assert sorted(p.name for p in tmp_path.iterdir()) == ["w.csv"]


def test_report_json(capsys):
    code, stdout, _ = run(["report", "--example", "1", "--nmax", "1", "--format", "json"], capsys)
    data = json.loads(stdout)
    assert code == 0 and data["ladder"]["passed"]
    assert {"verify", "ladder", "spectrum", "dressed_norms"} <= set(data)
    assert data["dressed_norms"][0]["psi"] == "(1/4)*pi^-2"


def test_color_switch(monkeypatch):
    class Tty:
        def isatty(self):
            return True

    monkeypatch.setenv("MC_COLOR", "1")
    assert _use_color(Tty())
    monkeypatch.setenv("MC_COLOR", "0")
    assert not _use_color(Tty())


def test_module_entry_point():
    env = dict(os.environ, MC_COLOR="0")
    proc = subprocess.run([sys.executable, "-m", "mcsusy", "spectrum", "--example", "2", "--nmax", "0"],
                          capture_output=True, env=env, check=False)
    assert proc.returncode == 0
    assert proc.stdout == b"j,nA,nB,lambda,verified\n1,0,0,1,true\n2,0,0,0,true\n"
