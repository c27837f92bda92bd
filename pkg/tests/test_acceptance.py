"""End-to-end acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line (shown in the terminal summary and
on stdout with ``-s``) and then asserts the verdict at the stated tolerance.
"""
import math

import numpy as np
import pytest

from conftest import ACCEPTANCE
from fracsemi import (FractionalOrder, Grid1D, KernelQuery, assemble_dirichlet, heat_kernel_fourier,
                      heat_kernel_subordinated, poisson_kernel_closed, spectrum)
from fracsemi.verify import (check_convergence, check_domain_monotonicity, check_domination,
                             check_eigenvalues, check_extension_constants, check_form_criterion,
                             check_holomorphy_axioms, check_resolvent_sector, check_sector_norm_Lp,
                             check_submarkovian_forms, check_torsion, check_two_sided_bounds,
                             check_ultracontractivity, extend_estimate_constants)

HALF = FractionalOrder(0.5)


def verdict(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def spec_half_256():
    grid = Grid1D(-1.0, 1.0, 256)
    return grid, spectrum(assemble_dirichlet(grid, HALF))


def test_01_kernel_three_way():
    worst = {}
    for s in (0.3, 0.5, 0.7):
        order = FractionalOrder(s)
        err = 0.0
        for t in (0.1, 1.0, 10.0):
            for r in (0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0):
                sub = heat_kernel_subordinated(KernelQuery(t, r, order))
                four = heat_kernel_fourier(KernelQuery(t, r, order)).real
                err = max(err, abs(sub - four) / abs(four))
                if s == 0.5:
                    closed = poisson_kernel_closed(t, r)
                    err = max(err, abs(sub / closed - 1.0), abs(four / closed - 1.0))
        worst[s] = err
    ok = all(e <= (1e-6 if s == 0.5 else 1e-5) for s, e in worst.items())
    verdict(1, "kernel three-way agreement", ok, ", ".join(f"s={s}: {e:.2e}" for s, e in worst.items()))


def test_02_two_sided_bounds():
    reports = {(s, n): check_two_sided_bounds(FractionalOrder(s, n)) for s in (0.25, 0.5, 0.75) for n in (1, 2)}
    ok = all(r.passed and 0.0 < r.fitted_constants["C1"] <= r.fitted_constants["C2"] for r in reports.values())
    spread = max(r.fitted_constants["spread"] for r in reports.values())
    selfsim = max(r.fitted_constants["self_similarity_residual"] for r in reports.values())
    verdict(2, "two-sided kernel bound", ok, f"max spread {spread:.3g} (<= 100), self-similarity {selfsim:.1e}")


def test_03_ultracontractivity():
    slopes = {}
    for s in (0.25, 0.5, 0.75):
        for n in (1, 2):
            rep = check_ultracontractivity(FractionalOrder(s, n))
            slopes[(s, n)] = abs(rep.fitted_constants["slope"] + 0.5 * n / s)
    err = max(slopes.values())
    verdict(3, "ultracontractivity exponent", err <= 1e-3, f"max |slope + N/2s| = {err:.1e}")


def test_04_domination():
    rep = check_domination(Grid1D(-1.0, 1.0, 512), HALF)
    pairs = ", ".join(f"{c:.4f}->{f:.4f}" for c, f in rep.refinement_trend)
    verdict(4, "domination by the analytic kernel (n=256->512)", rep.passed, f"delta {pairs}")


def test_05_domain_monotonicity_and_nested_form():
    inner, outer = Grid1D(-1.0, 1.0, 128), Grid1D(-2.0, 2.0, 256)
    mono = check_domain_monotonicity(inner, outer, HALF)
    form = check_form_criterion(inner, outer, HALF, sample_count=100)
    ok = mono.passed and form.passed
    verdict(5, "domain monotonicity and nested form", ok,
            f"monotonicity violation {mono.max_violation:.2g}, form gap "
            f"{form.fitted_constants['max_relative_gap']:.1e}")


def test_06_submarkovian(spec_half_256):
    grid, spec = spec_half_256
    rep = check_submarkovian_forms(assemble_dirichlet(grid, HALF), sample_count=100, spec=spec)
    c = rep.fitted_constants
    verdict(6, "submarkovian forms and semigroup", rep.passed,
            f"min entry {c['min_semigroup_entry']:.2e}, max row sum {c['max_semigroup_rowsum']:.15f}")


def test_07_resolvent_sector(spec_half_256):
    rep = check_resolvent_sector(spec_half_256[1])
    detail = ", ".join(f"{k[2:-1]}={v:.6g}" for k, v in rep.fitted_constants.items())
    verdict(7, "resolvent sector bound", rep.passed, detail)


def test_08_sector_l1(spec_half_256):
    grid, spec = spec_half_256
    rep = check_sector_norm_Lp(spec, grid, HALF)
    c = rep.fitted_constants
    expo = 0.5 / HALF.s
    bounded = all(c[f"C[alpha={a:g}]"] <= c["C0"] * math.cos(a) ** -expo * (1 + 1e-12) for a in (0.0, 0.5, 0.9, 1.2))
    consts = ", ".join(f"{v:.4f}" for v in rep.refinement_trend)
    verdict(8, "sector L1 norm", rep.passed and bounded, f"C(alpha) = {consts}, C0 = {c['C0']:.4f}")


def test_09_holomorphy(spec_half_256):
    grid, spec = spec_half_256
    rep = check_holomorphy_axioms(spec, grid)
    c = rep.fitted_constants
    verdict(9, "holomorphy axioms", rep.passed,
            f"law residual {c['law_residual']:.1e}, final ray error {c['max_final_ray_error']:.1e}")


def test_10_eigenvalues():
    rep = check_eigenvalues(HALF, ns=(256, 512, 1024))
    c = rep.fitted_constants
    verdict(10, "first eigenvalue", rep.passed,
            f"lambda1 {c['lambda1']:.5f} vs {c['reference']:.5f}, below (pi^2/4)^s = {c['spectral_comparison']:.5f}")


def test_11_torsion():
    rep = check_torsion(HALF, ns=(512, 1024))
    c = rep.fitted_constants
    verdict(11, "exterior Dirichlet torsion", rep.passed,
            f"u(0) {c['u0_fine']:.5f}, extrapolated {c['u0_extrapolated']:.5f}, weak residual {c['weak_residual']:.1e}")


def test_12_convergence():
    rep = check_convergence()
    c = rep.fitted_constants
    gaps = ", ".join(f"{v:.3e}" for v in rep.refinement_trend)
    verdict(12, "s -> 1 convergence", rep.passed, f"gaps {gaps}, rhs {c['rhs']:.10f}")


def test_13_extension_constants():
    rep = check_extension_constants()
    worst = 0.0
    for M in (1.0, 2.0, math.e, 10.0):
        _, omega, _ = extend_estimate_constants(M, 1.0)
        for t in np.linspace(0.0, 11.0, 111):
            n = math.floor(t)
            worst = max(worst, M ** (n + 1) / (M * math.exp(omega * t)))
    ok = rep.passed and worst <= 1.0 + 1e-12
    verdict(13, "extension constants", ok, f"max M^(n+1) / (M e^(omega t)) = {worst:.15f}")
