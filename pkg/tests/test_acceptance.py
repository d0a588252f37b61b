"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion k: PASS|FAIL`` line to the terminal
(capture is bypassed) before asserting.
"""

import json
import random
import time
from fractions import Fraction as F

import pytest

from chainpoly.borel import ModuleSpec, commutator_check, invariants_check, power_commutator_check, realization_bridge
from chainpoly.cli import main
from chainpoly.diag import (
    DiagChainFamily,
    casimir_report_diag,
    ode_residual_diag,
    route_equivalence_diag,
    verify_ket_actions_diag,
)
from chainpoly.jordan import JordanChainFamily, ode_residual_jordan, route_equivalence_jordan, verify_ket_actions_jordan
from chainpoly.properties import biorth_report, higher_ode_report, recurrence_report, zeros_report
from chainpoly.qpoly import QPoly
from chainpoly.suites import classical_report, random_probe
from chainpoly.symstate import OpName, commutator_residual


@pytest.fixture
def announce(capsys):
    def _say(k, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    return _say


def test_criterion_1_sl2_realization(announce):
    rng = random.Random(2024)
    alphas = [F(0), F(1, 2), F(-1, 3), F(10), F(7, 5)]
    pairs = [(OpName.Eminus, OpName.Eplus), (OpName.T, OpName.Eplus), (OpName.T, OpName.Eminus)]
    start = time.perf_counter()
    bad = 0
    for alpha in alphas:
        for _ in range(200):
            p = random_probe(rng)
            bad += sum(not commutator_residual(a, b, p, alpha).is_zero() for a, b in pairs)
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5
    announce(1, ok, f"(1000 probes, {bad} nonzero residuals, {elapsed:.2f}s)")
    assert ok


def test_criterion_2_classical_layer(announce):
    reps = [classical_report(a, 16) for a in (F(0), F(1, 2), F(10))]
    ok = all(r.passed for r in reps)
    announce(2, ok, f"({sum(len(r.checks) for r in reps)} checks)")
    assert ok


def test_criterion_3_jordan_family(announce):
    sigmas = (F(1, 2), F(-3))
    failures = []
    for N in (1, 2, 3):
        fam = JordanChainFamily(N, F(1, 3), sigmas[: N - 1])
        ket = verify_ket_actions_jordan(fam, 12)
        route = route_equivalence_jordan(fam, 20)
        failures += ket.failures + route.failures
        for n in range(21):
            for ell in range(1, N):
                if not ode_residual_jordan(fam, n, ell).is_zero():
                    failures.append((N, n, ell))
        if N == 3:
            a = fam.alpha
            c0 = (a * a - 1) / 4
            want = [[c0, 0, 0], [a, c0, 0], [1, a, c0]]
            got = [[F(x) for x in row] for row in ket.info["casimir_matrix"]]
            if got != want:
                failures.append("casimir matrix")
    ok = not failures
    announce(3, ok, f"({len(failures)} failures)")
    assert ok


def test_criterion_4_diag_family(announce):
    failures = []
    matches = None
    for N, sig in ((1, ()), (2, (F(2),)), (3, (F(1, 3), F(-5, 2)))):
        fam = DiagChainFamily(N, F(1, 2), sig)
        rep = verify_ket_actions_diag(fam, 20)
        failures += rep.failures + route_equivalence_diag(fam, 20).failures
        for n, ell in fam.entries(20):
            if ell >= 1 and not ode_residual_diag(fam, n, ell).is_zero():
                failures.append((N, n, ell))
        if N == 3:
            s1, s2 = sig
            if fam.omega(1, 1) != QPoly([-1, s1]) or fam.omega(2, 2) != QPoly([F(1, 2), -s1, s2]):
                failures.append("literal states")
            matches = casimir_report_diag(fam, 20).info["casimir_matches"]
    ok = not failures and matches is not None and matches["general"] and not matches["matrix_display"]
    announce(4, ok, f"(Casimir matches general formula, not the matrix display: {matches})")
    assert ok


def test_criterion_5_property_suite(announce):
    failures, corrections = [], []
    for alpha, s1 in ((F(10), F(2)), (F(1, 2), F(-3)), (F(0), F(1, 7))):
        jfam = JordanChainFamily(2, alpha, (s1,))
        dfam = DiagChainFamily(2, alpha, (s1,))
        failures += recurrence_report(jfam, 20).failures
        for fam in (jfam, dfam):
            rep = higher_ode_report(fam, 20, fit_max=10)
            failures += rep.failures
            key = "ode4_fit" if fam.case == "jordan" else "ode3_fit"
            fit = rep.info[key]
            if fit["verify_range"] != list(range(11, 21)) or not fit["verified"]:
                failures.append((fam.case, "fit"))
            corrections.append(fit["corrections"])
    ok = not failures
    announce(5, ok, f"(quoted ODEs corrected, e.g. {corrections[0]} / {corrections[1]})")
    assert ok


def test_criterion_6_biorthogonality(announce):
    failures, counter = [], []
    for alpha, s1 in ((F(0), F(1)), (F(1, 2), F(-3)), (F(10), F(2, 7))):
        failures += biorth_report(JordanChainFamily(2, alpha, (s1,)), 12).failures
    for alpha, s1 in ((F(10), F(2)), (F(2), F(1)), (F(1, 3), F(5))):
        rep = biorth_report(DiagChainFamily(2, alpha, (s1,)), 12)
        failures += rep.failures
        counter += rep.info["counterexamples_n_equals_m"]
    ok = not failures
    announce(6, ok, f"(diagonal n = m counterexamples: {counter or 'none'})")
    assert ok


def test_criterion_7_zeros(announce):
    cases = [("jordan", 6, F(2), F(10)), ("jordan", 50, F(1, 100), F(1, 100)),
             ("diag", 8, F(2), F(10)), ("diag", 20, F(1, 1000), F(1, 1000))]
    results = []
    for case, n, s1, alpha in cases:
        fam = (JordanChainFamily if case == "jordan" else DiagChainFamily)(2, alpha, (s1,))
        start = time.perf_counter()
        rep = zeros_report(fam, n)
        elapsed = time.perf_counter() - start
        results.append((case, n, rep.real_root_count == rep.degree == n, elapsed))
    ok = all(r[2] for r in results) and results[1][3] < 60
    announce(7, ok, "(" + ", ".join(f"{c} n={n}: {t:.1f}s" for c, n, _, t in results) + ")")
    assert ok


def test_criterion_8_modules(announce):
    failures = []
    for case in ("nondiag", "diag"):
        for n in range(1, 6):
            spec = ModuleSpec(case, n, 8)
            for rep in (commutator_check(spec), power_commutator_check(spec, 4), invariants_check(spec)):
                failures += rep.failures
    bridges = []
    for N in (1, 2):
        for fam in (JordanChainFamily(N, F(1, 2), (F(1),) * (N - 1)),
                    DiagChainFamily(N, F(1, 2), (F(1),) * (N - 1))):
            case = "nondiag" if fam.case == "jordan" else "diag"
            rep = realization_bridge(ModuleSpec(case, N, 8), fam)
            failures += rep.failures
            bridges.append(f"{fam.case} N={N} lam={rep.info.get('lambda')}")
    ok = not failures
    announce(8, ok, "(" + "; ".join(bridges) + ")")
    assert ok


def test_criterion_9_cli(announce, tmp_path, capsys):
    code = main(["verify", "-o", str(tmp_path / "report.json")])
    capsys.readouterr()
    doc = json.loads((tmp_path / "report.json").read_text())
    args = ["build", "--family", "diag", "--N", "3", "--alpha", "1/2", "--sigma", "1/3",
            "--sigma", "2", "--nmax", "12"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(args + ["-o", str(a)])
    main(args + ["-o", str(b)])
    fam = DiagChainFamily(3, F(1, 2), (F(1, 3), F(2)))
    table = json.loads(a.read_text())["table"]
    roundtrip = all(QPoly.from_strings(table[f"{n},{l}"]) == fam.omega(n, l) for n, l in fam.entries(12))
    ok = code == 0 and doc["passed"] and a.read_bytes() == b.read_bytes() and roundtrip
    announce(9, ok, f"(verify --suite all exit {code}; build byte-identical and round-trips)")
    assert ok
