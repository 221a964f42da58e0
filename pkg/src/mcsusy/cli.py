"""Command-line interface: ``mcsusy {verify,spectrum,wigner,report}``.

Configuration files hold ``key = value`` lines; ``#`` starts a comment.

========  ==============================================================
key       value
========  ==============================================================
mode      ``hbar_one`` (default) or ``formal_hbar``
example   ``1`` or ``2``; excludes W1/W2/P1/P2
K         expression for the example's free function (default 0)
W1 ...    expressions for W1, W2, P1, P2 (missing ones are 0)
nmax      nonnegative integer (default 2)
state     ``j,na,nb`` (default ``1,0,0``)
grid      ``q1min,q1max,p1min,p1max,n`` (default ``-2,2,-2,2,21``)
slice     ``q2,p2`` values held fixed in Wigner grids (default ``0,0``)
format    ``csv`` or ``json``
out       output path (stdout when absent)
========  ==============================================================

Exit codes: 0 success, 1 a verified identity failed, 2 invalid input,
3 output could not be written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import ConditionViolated, MCError, ParseError, UnknownKey, UnsupportedK
from .jc import dressed_norms, ladder_check, make_example, spectrum, wigner_function
from .parser import parse_expression
from .star import PhaseSpaceFunction
from .susy import (
    Report,
    build_system,
    full_report,
    verify_classical_limits,
)

__all__ = ["RunConfig", "cmd_report", "cmd_spectrum", "cmd_verify", "cmd_wigner", "main", "parse_config", "serialize_config"]

FUNCTION_KEYS = ("W1", "W2", "P1", "P2")
_KEYS = ("mode", "example", "K", *FUNCTION_KEYS, "nmax", "state", "grid", "slice", "format", "out")
_MODES = ("hbar_one", "formal_hbar")


@dataclass(frozen=True)
class Grid:
    q1min: Fraction
    q1max: Fraction
    p1min: Fraction
    p1max: Fraction
    n: int

    def axis(self, lo, hi):
        step = (hi - lo) / (self.n - 1)
        return [lo + k * step for k in range(self.n)]

    def __str__(self):
        return ",".join(_fmt_fraction(x) for x in (self.q1min, self.q1max, self.p1min, self.p1max)) + f",{self.n}"


@dataclass(frozen=True)
class RunConfig:
    mode: str = "hbar_one"
    example: int | None = None
    K: str | None = None
    functions: tuple = ()  # ((key, expression), ...) in W1, W2, P1, P2 order
    n_max: int = 2
    state: tuple = (1, 0, 0)
    grid: Grid = field(default_factory=lambda: Grid(Fraction(-2), Fraction(2), Fraction(-2), Fraction(2), 21))
    slice: tuple = (Fraction(0), Fraction(0))
    format: str | None = None
    out: str | None = None

    @property
    def formal(self) -> bool:
        return self.mode == "formal_hbar"

    def expression(self, key) -> str:
        return dict(self.functions).get(key, "0")

    def quadruple(self):
        """Parsed ``(W1, W2, P1, P2)`` for explicit-function configs."""
        return tuple(parse_expression(self.expression(k), formal=self.formal) for k in FUNCTION_KEYS)

    def k_function(self) -> PhaseSpaceFunction:
        return parse_expression(self.K or "0", formal=self.formal)


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- configuration --------------------------------------------------------------
def _parse_int(text, line, col, key, minimum=0):
    try:
        value = int(text.strip())
    except ValueError:
        raise ParseError(f"{key} must be an integer", line, col, text.strip()) from None
    if minimum is not None and value < minimum:
        raise ParseError(f"{key} must be at least {minimum}", line, col, text.strip())
    return value


def _parse_number(text, line, col, key):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{key} needs rational numbers", line, col, text.strip()) from None


def _split(text, count, line, col, key):
    parts = text.split(",")
    if len(parts) != count:
        raise ParseError(f"{key} needs {count} comma-separated values", line, col, text.strip())
    return parts


def parse_state(text, line=1, col=1) -> tuple:
    # negative quantum numbers are rejected later with IndexOutOfRange
    j, na, nb = (_parse_int(p, line, col, "state", minimum=None) for p in _split(text, 3, line, col, "state"))
    if j not in (1, 2):
        raise ParseError("atomic level must be 1 or 2", line, col, text.strip())
    return j, na, nb


def parse_grid(text, line=1, col=1) -> Grid:
    *bounds, n = _split(text, 5, line, col, "grid")
    q1min, q1max, p1min, p1max = (_parse_number(b, line, col, "grid") for b in bounds)
    n = _parse_int(n, line, col, "grid", minimum=2)
    if q1max <= q1min or p1max <= p1min:
        raise ParseError("grid needs positive extent on both axes", line, col, text.strip())
    return Grid(q1min, q1max, p1min, p1max, n)


def _parse_value(key, raw, line, col, formal):
    value = raw.strip()
    if key == "mode":
        if value not in _MODES:
            raise ParseError(f"mode must be one of {', '.join(_MODES)}", line, col, value)
        return value
    if key == "example":
        if value not in ("1", "2"):
            raise ParseError("example must be 1 or 2", line, col, value)
        return int(value)
    if key in ("K", *FUNCTION_KEYS):
        parse_expression(raw, formal=formal, line=line, column=col)
        return value
    if key == "nmax":
        return _parse_int(value, line, col, key)
    if key == "state":
        return parse_state(value, line, col)
    if key == "grid":
        return parse_grid(value, line, col)
    if key == "slice":
        return tuple(_parse_number(p, line, col, key) for p in _split(value, 2, line, col, key))
    if key == "format":
        if value not in ("csv", "json"):
            raise ParseError("format must be csv or json", line, col, value)
        return value
    if not value:
        raise ParseError("out needs a path", line, col, value)
    return value


def parse_config(text: str) -> RunConfig:
    """Parse configuration text; errors carry their position and offending token."""
    entries = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError("expected 'key = value'", lineno, col, body.strip())
        key_part, raw = body.split("=", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        if key not in _KEYS:
            raise UnknownKey(f"unknown key {key!r}", lineno, key_col, key)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, key_col, key)
        entries[key] = (raw, lineno, len(key_part) + 2)
    mode = "hbar_one"
    if "mode" in entries:
        mode = _parse_value("mode", *entries["mode"], False)
    formal = mode == "formal_hbar"
    values = {k: _parse_value(k, *v, formal) for k, v in entries.items()}
    if "example" in values and any(k in values for k in FUNCTION_KEYS):
        raw, lineno, col = entries["example"]
        raise ParseError("example excludes explicit W1/W2/P1/P2", lineno, col, raw.strip())
    if "K" in values and "example" not in values:
        raw, lineno, col = entries["K"]
        raise ParseError("K is only meaningful with example", lineno, col, raw.strip())
    config = RunConfig(
        mode=mode,
        example=values.get("example"),
        K=values.get("K"),
        functions=tuple((k, values[k]) for k in FUNCTION_KEYS if k in values),
        format=values.get("format"),
        out=values.get("out"),
    )
    updates = {"n_max": values.get("nmax"), "state": values.get("state"), "grid": values.get("grid"),
               "slice": values.get("slice")}
    return replace(config, **{k: v for k, v in updates.items() if v is not None})


def serialize_config(config: RunConfig) -> str:
    """Inverse of :func:`parse_config`: ``parse_config(serialize_config(c)) == c``."""
    lines = [f"mode = {config.mode}"]
    if config.example is not None:
        lines.append(f"example = {config.example}")
    if config.K is not None:
        lines.append(f"K = {config.K}")
    lines += [f"{k} = {v}" for k, v in config.functions]
    lines.append(f"nmax = {config.n_max}")
    lines.append("state = " + ",".join(map(str, config.state)))
    lines.append(f"grid = {config.grid}")
    lines.append("slice = " + ",".join(_fmt_fraction(x) for x in config.slice))
    if config.format is not None:
        lines.append(f"format = {config.format}")
    if config.out is not None:
        lines.append(f"out = {config.out}")
    return "\n".join(lines) + "\n"


# -- output -------------------------------------------------------------------------
def write_output(text: str, path: str | None):
    """Write to ``path`` atomically (temp file and rename), or to stdout."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".mcsusy-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _csv_text(header, rows, comments=()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _use_color(stream) -> bool:
    return os.environ.get("MC_COLOR", "1") != "0" and hasattr(stream, "isatty") and stream.isatty()


def _status(name, ok, detail=""):
    stream = sys.stderr
    word = "PASS" if ok else "FAIL"
    if _use_color(stream):
        word = f"\033[{32 if ok else 31}m{word}\033[0m"
    stream.write(f"{name}: {word}{detail}\n")


# -- commands -------------------------------------------------------------------------
def _system_report(config: RunConfig) -> Report:
    if config.example is not None:
        jc = make_example(config.example, config.k_function(), formal=config.formal)
        rep = full_report(jc.base)
        if not config.formal:
            rep.extend(jc.verify_structure())
            if config.example == 1 and jc.K_is_zero:
                rep.extend(jc.verify_constants())
        if config.formal:
            rep.extend(verify_classical_limits(jc.base))
        return rep
    quad = config.quadruple()
    try:
        system = build_system(*quad)
    except ConditionViolated as exc:
        return exc.report
    rep = full_report(system)
    if config.formal:
        rep.extend(verify_classical_limits(system))
    return rep


def cmd_verify(config: RunConfig) -> tuple[int, dict]:
    """Run every condition and identity; exit code 0 iff nothing failed."""
    rep = _system_report(config)
    return (0 if rep.passed else 1), rep.to_json()


def _example_system(config: RunConfig):
    if config.example is None:
        raise ParseError("this command needs an example configuration (example = 1 or 2)")
    if config.formal:
        raise ParseError("this command needs mode = hbar_one")
    jc = make_example(config.example, config.k_function())
    if not jc.K_is_zero:
        raise UnsupportedK("spectra are available for K = 0 only")
    return jc


def cmd_spectrum(config: RunConfig, n_max: int | None = None) -> tuple[int, list]:
    """Rows ``(j, nA, nB, lambda, verified)``."""
    jc = _example_system(config)
    rows = spectrum(jc, config.n_max if n_max is None else n_max)
    table = [(r.j, r.nA, r.nB, str(r.eigenvalue), r.verified) for r in rows]
    return (0 if all(r.verified for r in rows) else 1), table


def _float_text(x: float) -> str:
    return repr(float(x))


def wigner_grid(config: RunConfig, state=None):
    """Sample the scalar Wigner function on the configured ``(q1, p1)`` slice."""
    j, na, nb = state or config.state
    W = wigner_function(na, nb)
    q2, p2 = config.slice
    g = config.grid
    rows = []
    for q1 in g.axis(g.q1min, g.q1max):
        for p1 in g.axis(g.p1min, g.p1max):
            poly = W.evaluate({"q1": q1, "q2": q2, "p1": p1, "p2": p2})
            r2 = q1 * q1 + p1 * p1 + q2 * q2 + p2 * p2
            value = float(poly) * math.exp(-float(r2)) * math.pi ** W.pi_power
            rows.append((float(q1), float(p1), value))
    meta = {
        "state": {"j": j, "nA": na, "nB": nb},
        "slice": {"q2": _fmt_fraction(q2), "p2": _fmt_fraction(p2)},
        "normalization": "unit phase-space integral; value = pi^-2 * P(q,p) * exp(-(q1^2+p1^2+q2^2+p2^2))",
        "grid": str(g),
    }
    return meta, rows


def cmd_wigner(config: RunConfig, state=None, fmt=None) -> str:
    meta, rows = wigner_grid(config, state)
    fmt = fmt or config.format or "csv"
    if fmt == "json":
        meta = dict(meta, values=[{"q1": q, "p1": p, "value": v} for q, p, v in rows])
        return _json_text(meta)
    comments = [
        "state j={j} nA={nA} nB={nB}".format(**meta["state"]),
        "slice q2={q2} p2={p2}".format(**meta["slice"]),
        f"normalization {meta['normalization']}",
        f"grid {meta['grid']}",
    ]
    table = [(_float_text(q), _float_text(p), _float_text(v)) for q, p, v in rows]
    return _csv_text(["q1", "p1", "value"], table, comments)


def cmd_report(config: RunConfig) -> tuple[int, dict]:
    """Full verification plus, for example configs with K = 0, the JC suite."""
    code, verify = cmd_verify(config)
    out = {"verify": verify}
    if config.example is not None and not config.formal and not config.k_function():
        n = config.n_max
        ladders = Report()
        for na in range(n + 1):
            for nb in range(n + 1):
                ladders.extend(ladder_check(na, nb))
        scode, table = cmd_spectrum(config)
        out["ladder"] = ladders.to_json()
        out["spectrum"] = [dict(zip(("j", "nA", "nB", "lambda", "verified"), row)) for row in table]
        if config.example == 1:
            out["dressed_norms"] = [
                {"nA": a, "nB": b, "phi": None if phi is None else str(phi), "psi": str(psi)}
                for a, b, phi, psi in dressed_norms(n)
            ]
        code = max(code, scode, 0 if ladders.passed else 1)
    return code, out


# -- entry point ---------------------------------------------------------------------
def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mcsusy", description="Exact Moyal-Clifford SUSY computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "check the nilpotency conditions and every SUSY identity"),
        ("spectrum", "exact star-eigenvalues of the Jaynes-Cummings examples"),
        ("wigner", "sample a Wigner function on a (q1, p1) grid"),
        ("report", "verify plus ladder, spectrum and dressed-state data"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH")
        p.add_argument("--example", type=int, choices=(1, 2))
        p.add_argument("--k", metavar="EXPR")
        p.add_argument("--nmax", type=int, metavar="N")
        p.add_argument("--state", metavar="j,na,nb")
        p.add_argument("--grid", metavar="q1min,q1max,p1min,p1max,n",
                       help="use --grid=... when the first bound is negative")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out", metavar="PATH")
    return ap


def _load_config(args) -> RunConfig:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = parse_config(fh.read())
    else:
        config = RunConfig()
    changes = {}
    if args.example is not None:
        if config.functions:
            raise ParseError("--example conflicts with explicit functions in the config")
        changes["example"] = args.example
    if args.k is not None:
        parse_expression(args.k, formal=config.formal)
        changes["K"] = args.k
    if args.nmax is not None:
        if args.nmax < 0:
            raise ParseError("--nmax must be nonnegative")
        changes["n_max"] = args.nmax
    if args.state is not None:
        changes["state"] = parse_state(args.state)
    if args.grid is not None:
        changes["grid"] = parse_grid(args.grid)
    if args.format is not None:
        changes["format"] = args.format
    if args.out is not None:
        changes["out"] = args.out
    return replace(config, **changes)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args)
        if args.command in ("verify", "report"):
            code, payload = cmd_verify(config) if args.command == "verify" else cmd_report(config)
            failures = payload.get("failures", payload.get("verify", {}).get("failures"))
            text = _json_text(payload)
            _status(args.command, code == 0, f" ({failures} failures)")
        elif args.command == "spectrum":
            code, table = cmd_spectrum(config)
            header = ["j", "nA", "nB", "lambda", "verified"]
            if (config.format or "csv") == "json":
                text = _json_text([dict(zip(header, row)) for row in table])
            else:
                text = _csv_text(header, [(*row[:4], "true" if row[4] else "false") for row in table])
        else:
            code, text = 0, cmd_wigner(config)
    except (MCError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    try:
        write_output(text, config.out)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write output: {exc}\n")
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())
