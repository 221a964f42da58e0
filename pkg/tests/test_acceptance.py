"""The ten acceptance criteria, each checked at exact (zero-residual) tolerance.

Every criterion is a function returning ``(passed, detail)``. Under pytest
each one becomes a test and its one-line verdict is printed in the
"acceptance criteria" section of the summary; ``python tests/test_acceptance.py``
prints the same lines directly.
"""
import itertools
import random
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES
from oracles import bopp_star, gaussian_dict, overlap_oracle

from mcsusy.cli import cmd_verify, main, parse_config
from mcsusy.clifford import (
    CliffordElement,
    clifford_anticommutator,
    generator,
    matmul,
    to_matrix,
    witt_basis,
)
from mcsusy.field import SQRT2, ExactScalar, I, Number
from mcsusy.jc import (
    eigenvalue,
    ladder_check,
    laguerre_wigner,
    make_example,
    orthogonality_integral,
    spectrum,
    verify_spectrum,
    wigner_function,
)
from mcsusy.sampling import random_polynomial, random_valid_quadruple
from mcsusy.star import PhaseSpaceFunction, integrate, moyal_star, variables
from mcsusy.susy import (
    build_system,
    check_conditions,
    factorization_check,
    verify_classical_limits,
    verify_closure,
    verify_constants,
    verify_intertwining,
)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
SEED = 20240601
CRITERIA = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return register


def _failed(reports):
    return [c.label for rep in reports for c in rep.failures]


def _random_clifford(rng):
    coeffs = {}
    for mask in rng.sample(range(16), rng.randint(1, 5)):
        c = Number(rng.randint(-3, 3), rng.randint(-3, 3))
        if rng.random() < 0.3:
            c = c * SQRT2
        coeffs[mask] = c
    return CliffordElement(coeffs)


@criterion(1, "Clifford table, Witt relations, matrix representation")
def clifford_table():
    rng = random.Random(SEED)
    bad = [(j, k) for j, k in itertools.product(range(1, 5), repeat=2)
           if clifford_anticommutator(generator(j), generator(k)) != (2 if j == k else 0)]
    f, g, fc, gc = witt_basis()
    nulls = [f, g, fc, gc]
    witt_ok = all(not clifford_anticommutator(x, y) for x in nulls for y in nulls
                  if {id(x), id(y)} not in ({id(f), id(fc)}, {id(g), id(gc)}))
    witt_ok &= clifford_anticommutator(f, fc) == 2 and clifford_anticommutator(g, gc) == 2
    mult_bad = 0
    for _ in range(200):
        x, y = _random_clifford(rng), _random_clifford(rng)
        mult_bad += to_matrix(x * y) != matmul(to_matrix(x), to_matrix(y))
    ok = not bad and witt_ok and not mult_bad
    return ok, f"16 pair relations ({len(bad)} bad), Witt {'ok' if witt_ok else 'FAILED'}, 200 matrix pairs ({mult_bad} bad)"


@criterion(2, "star product vs Bopp-shift oracle, associativity")
def star_oracle():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(200):
        F, G = (random_polynomial(rng, max_degree=4, per_variable=True, formal=True) for _ in range(2))
        mismatches += gaussian_dict(moyal_star(F, G)) != bopp_star(F, G)
    non_assoc = 0
    for k in range(100):
        F, G, H = (random_polynomial(rng, max_degree=2, formal=bool(k % 2)) for _ in range(3))
        non_assoc += moyal_star(moyal_star(F, G), H) != moyal_star(F, moyal_star(G, H))
    return not mismatches and not non_assoc, f"200 Bopp pairs ({mismatches} mismatches), 100 triples ({non_assoc} non-associative)"


@criterion(3, "nilpotency condition gate")
def condition_gate():
    reports = [make_example(w).base.conditions for w in (1, 2)]
    examples_ok = all(r["eq17"].passed and r["eq18"].passed and r["eq15"].passed for r in reports)
    fq1, _fq2, fp1, _fp2 = variables(formal=True)
    zero = PhaseSpaceFunction.constant(0, formal=True)
    perturbed = check_conditions(fq1, fp1, zero, zero)
    residual = perturbed["eq17"].residual
    ok = examples_ok and residual == PhaseSpaceFunction.hbar() * I
    return ok, f"examples {'pass' if examples_ok else 'FAIL'}; perturbed eq17 residual = {residual}"


@criterion(4, "SUSY closure for the examples and 20 random systems")
def susy_closure():
    rng = random.Random(SEED)
    systems = [make_example(w).base for w in (1, 2)]
    systems += [build_system(*random_valid_quadruple(rng)) for _ in range(20)]
    failed = _failed(verify_closure(s) for s in systems)
    return not failed, f"{len(systems)} systems, failures: {failed or 'none'}"


@criterion(5, "intertwining relations and constants of motion")
def intertwining():
    reports = []
    for w in (1, 2):
        base = make_example(w).base
        reports += [verify_intertwining(base), factorization_check(base), verify_constants(base)]
    closed = make_example(1).verify_constants()
    reports.append(closed)
    failed = _failed(reports)
    labels = ", ".join(c.label for c in closed.checks)
    return not failed, f"generic eq32-42 on both examples plus {labels}; failures: {failed or 'none'}"


@criterion(6, "bare spectrum for n <= 4 in both examples")
def bare_spectrum():
    rows1 = spectrum(make_example(1), 4)
    rows2 = spectrum(make_example(2), 4)
    lam = {(r.j, r.nA, r.nB): r.eigenvalue for r in rows1}
    ok = len(rows1) == 50 and all(r.verified for r in rows1 + rows2)
    ok &= lam[1, 0, 0] == 0 and lam[2, 0, 0] == 1
    ok &= all(lam[1, n, 0] == 0 for n in range(5))
    ok &= all(r.eigenvalue == eigenvalue(1, 3 - r.j, r.nB, r.nA) for r in rows2)
    verified = sum(r.verified for r in rows1 + rows2)
    return ok, f"{verified}/{len(rows1) + len(rows2)} eigenpairs exact; lambda100=0, lambda200=1, zero family n<=4"


@criterion(7, "dressed states for n <= 3")
def dressed_states():
    rep = verify_spectrum(1, 3)
    kinds = ("kernel_L2", "kernel_L1dagger", "dressed_Phi_map", "dressed_Psi_map", "eq66", "eq67")
    counts = {k: sum(c.label.startswith(k + "[") for c in rep.checks) for k in kinds}
    ok = rep.passed and all(counts.values())
    return ok, f"{len(rep.checks)} checks ({len(rep.failures)} failed): " + ", ".join(f"{k} x{n}" for k, n in counts.items())


@criterion(8, "Wigner functions: vacuum, ladders, orthogonality, Laguerre form")
def wigner_suite():
    vacuum_ok = integrate(wigner_function(0, 0)) == 1
    ladder_failed = _failed(ladder_check(a, b) for a in range(5) for b in range(5))
    quarter = ExactScalar(Number(1) / 4, -2)
    states = list(itertools.product(range(4), repeat=2))
    ortho_bad = 0
    for i, n in enumerate(states):
        for m in states[i:]:
            expected = quarter if n == m else ExactScalar(Number(0), 0)
            got = orthogonality_integral(n, m)
            (re, im), pi_power = overlap_oracle(wigner_function(*n), wigner_function(*m))
            oracle = ExactScalar(Number(re, im), pi_power)
            ortho_bad += not (got == expected == oracle)
    laguerre_bad = sum(wigner_function(a, b) != laguerre_wigner(a, b) for a in range(5) for b in range(5))
    ok = vacuum_ok and not ladder_failed and not ortho_bad and not laguerre_bad
    return ok, (f"vacuum integral {'1' if vacuum_ok else 'WRONG'}, 25 ladder states ({len(ladder_failed)} bad), "
                f"136 overlaps ({ortho_bad} bad), 25 Laguerre forms ({laguerre_bad} bad)")


@criterion(9, "classical limits in formal-hbar mode")
def classical_limits():
    rng = random.Random(SEED)
    reports = [verify_classical_limits(make_example(w, formal=True).base) for w in (1, 2)]
    reports += [verify_classical_limits(build_system(*random_valid_quadruple(rng, formal=True))) for _ in range(20)]
    failed = _failed(reports)
    return not failed, f"2 examples + 20 random systems, {sum(len(r.checks) for r in reports)} limits; failures: {failed or 'none'}"


@criterion(10, "CLI exit codes and byte-stable spectrum")
def cli_behaviour():
    code_ok, _ = cmd_verify(parse_config((CONFIGS / "example1.cfg").read_text()))
    code_bad, _ = cmd_verify(parse_config((CONFIGS / "perturbed.cfg").read_text()))
    with tempfile.TemporaryDirectory() as tmp:
        outs = [Path(tmp) / f"run{k}.csv" for k in (1, 2)]
        codes = [main(["spectrum", "--example", "1", "--nmax", "2", "--out", str(p)]) for p in outs]
        first, second = (p.read_bytes() for p in outs)
    stable = first == second and b"\r" not in first
    ok = code_ok == 0 and code_bad == 1 and codes == [0, 0] and stable
    return ok, f"verify example1 -> {code_ok}, perturbed -> {code_bad}; spectrum nmax=2 byte-stable: {stable}"


def run_criterion(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance(number):
    ok, line = run_criterion(number)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
