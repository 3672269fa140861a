"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import json

import pytest

from padic_lf import JobConfig, run_suite
from padic_lf.local import FieldCtx
from padic_lf.metaplectic import reducible_at_zero, unitary_characters
from padic_lf.suites import tilde_characters
from padic_lf.tables import dump_json, reducibility_rows


@pytest.fixture
def announce(capsys):
    def _announce(number: int, title: str, failures: list, detail: str = ""):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] {status}: {title}{' (' + detail + ')' if detail else ''}")
        assert not failures, failures[:5]
    return _announce


def _run(p, n, suite, **kw):
    return run_suite(JobConfig(p, n, suites=[suite], **kw))


def _fails(report):
    return [(r.suite, r.identity, r.params) for r in report.failures]


def test_01_tate_functional_equation(announce):
    failures, total = [], 0
    for p in (5, 7, 13):
        rep = _run(p, 1, "tate", conductor_bound=2, phis=10)
        failures += _fails(rep)
        total += len(rep.records)
    announce(1, "Tate functional equation, p in {5,7,13}, e(chi) <= 2, 10 Schwartz functions", failures,
             f"{total} records")


def test_02_epsilon_identities(announce):
    failures, names, total = [], set(), 0
    for p in (5, 7, 13):
        for e_psi in (0, 1):
            rep = _run(p, 1, "epsilon-identities", conductor_bound=2, psi_conductor=e_psi)
            failures += _fails(rep)
            names |= {r.identity for r in rep.records}
            total += len(rep.records)
    expected = {"epsilon-reflection", "epsilon-monomial", "epsilon-change-psi", "epsilon-product"}
    if names != expected:
        failures.append(("missing identities", expected - names))
    announce(2, "epsilon identities (reflection, monomial, change of psi, product)", failures, f"{total} records")


def test_03_valuation_restricted_tate_equation(announce):
    failures, total = [], 0
    for p, n in ((7, 1), (7, 3), (13, 3), (13, 6), (13, 12)):
        rep = _run(p, n, "theta", conductor_bound=2, phis=10)
        ks = {r.params["k"] for r in rep.records}
        if ks != set(range(n)):
            failures.append(("k coverage", p, n))
        ram = {r.params["chi"]["e"] > 0 for r in rep.records}
        if ram != {True, False}:
            failures.append(("character coverage", p, n))
        failures += _fails(rep)
        total += len(rep.records)
    announce(3, "theta_m equations for all k, unramified and ramified chi", failures, f"{total} records")


def test_04_metaplectic_valuation_restricted_equation(announce):
    failures, total = [], 0
    for p, n in ((13, 2), (13, 4), (13, 6), (13, 12), (5, 2)):
        rep = _run(p, n, "theta-tilde", phis=10)
        cases = {json.dumps(r.params["chi"], sort_keys=True) for r in rep.records}
        if len(cases) != len(tilde_characters(FieldCtx(p, n))):
            failures.append(("chi-case coverage", p, n))
        failures += _fails(rep)
        total += len(rep.records)
    announce(4, "theta~_m equations for the three chi cases", failures, f"{total} records")


def test_05_weil_weighted_integral(announce):
    failures, total = [], 0
    for p in (5, 13):
        rep = _run(p, 2, "metaplectic-gamma", conductor_bound=2)
        ms = {(r.params["e_psi"], r.params["M"]) for r in rep.records if "M" in r.params}
        if len(ms) < 4:
            failures.append(("M coverage", p))
        if not any(r.identity == "ramified-psi-reduction" for r in rep.records):
            failures.append(("ramified psi reduction missing", p))
        failures += _fails(rep)
        total += len(rep.records)
    announce(5, "weighted integral = metaplectic gamma expression, M-stable, ramified psi reduction", failures,
             f"{total} records")


def test_06_completing_the_square(announce):
    rep = _run(5, 1, "completing-square")
    failures = _fails(rep)
    above = sum(r.params["above_threshold"] for r in rep.records)
    below = len(rep.records) - above
    if len(rep.records) < 20 or not above or not below:
        failures.append(("coverage", above, below))
    announce(6, "quadratic Gaussian integral identity at p=5", failures, f"{above} above / {below} below threshold")


def test_07_dmatrix_dual_method(announce):
    failures, total = [], 0
    for p, n in ((7, 3), (5, 2), (13, 4), (13, 6)):
        rep = _run(p, n, "dmatrix")
        failures += _fails(rep)
        failures += [("skipped", r.params) for r in rep.records if r.skipped]
        total += len(rep.records)
    announce(7, "closed = integral, entrywise, every canonical case", failures, f"{total} entries")


def test_08_plancherel_scalar(announce):
    failures, total = [], 0
    for p, n in ((7, 3), (5, 2), (13, 4), (13, 6)):
        rep = _run(p, n, "plancherel")
        idents = {r.identity for r in rep.records}
        if idents != {"matrix-product-is-scalar", "formula-equals-matrices"}:
            failures.append(("coverage", p, n, idents))
        failures += _fails(rep)
        total += len(rep.records)
    announce(8, "D(chi,s) D(chi^-1,-s) is scalar and plancherel(formula) = plancherel(matrices)", failures,
             f"{total} records")


def test_09_reducibility_sweep(announce):
    failures, total, reducible = [], 0, 0
    grid = ((7, 1), (7, 3), (5, 2), (13, 4), (13, 6), (13, 12))
    for p, n in grid:
        rep = _run(p, n, "reducibility")
        failures += _fails(rep)
        total += len(rep.records)
    for p in sorted({p for p, _ in grid}):
        ns = [n for q, n in grid if q == p]
        rows = reducibility_rows(p, ns)
        for r in rows:
            reducible += r["reducible"]
            if r["reducible"] and r["n_parity"] != "odd":
                failures.append(("reducible at even n", r))
        if dump_json(rows) != dump_json(reducibility_rows(p, ns)):
            failures.append(("table not deterministic", p))
    # reducible verdicts need chi^n quadratic and nontrivial
    for p, n in grid:
        ctx = FieldCtx(p, n)
        for chi in unitary_characters(ctx):
            if reducible_at_zero(chi, ctx).reducible:
                chin = chi ** n
                if not ((chin ** 2).is_trivial() and not chin.is_trivial()):
                    failures.append(("central character", p, n, chi))
    if not reducible:
        failures.append(("no reducible rows at all",))
    announce(9, "predicate route = analytic route; reducible only for odd n", failures,
             f"{total} records, {reducible} reducible rows")


def test_10_structural(announce):
    failures, total = [], 0
    for p, n in ((7, 3), (13, 4), (5, 4), (13, 6)):
        rep = _run(p, n, "structural", seed=0)
        kub = sum(r.identity == "kubota-2-cocycle" for r in rep.records)
        if kub != 100:
            failures.append(("kubota triples", kub))
        failures += _fails(rep)
        total += len(rep.records)
    announce(10, "Hilbert symbol, Weil index, beta sum formula, Kubota cocycle, unramified consistency",
             failures, f"{total} records")
