"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""
import math
import time
from fractions import Fraction
from itertools import product

import pytest

from conftest import ACCEPTANCE_LINES

from amplitrace import archgeom as ag
from amplitrace.affine_hecke import coset_growth_ratio, double_coset_count, lattice_oracle_count, sandwich_upper
from amplitrace.amplifier import exponent_budget, period_lower_bound
from amplitrace.rootdata import build_root_datum, is_dominant, norm_star, norm_star_adjoint, weyl_group
from amplitrace.sympair import brute_force_exists, catalog, classify, cone_method, get_pair, is_H_large


def record(n: int, title: str, failures: list[str], detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {n}: {title}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += " -- " + "; ".join(failures)
    ACCEPTANCE_LINES.append((n, line))
    print(line)
    assert not failures, line


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    failures = []
    gl2, sl2 = build_root_datum("GL2"), build_root_datum("A1")
    for q in (2, 3, 5):
        for n in range(4):
            a = double_coset_count(gl2, (n, 0))(q)
            b = lattice_oracle_count("GL2", n, q)
            if a != b:
                failures.append(f"GL2 n={n} q={q}: {a} != {b}")
            a = double_coset_count(sl2, (n,))(q)
            b = lattice_oracle_count("SL2", n, q)
            if a != b:
                failures.append(f"SL2 n={n} q={q}: {a} != {b}")
    dt = time.perf_counter() - t0
    if dt >= 60:
        failures.append(f"runtime {dt:.1f}s >= 60s")
    record(1, "double-coset counts match lattice and tree oracles", failures, f"24 cases, {dt:.2f}s")


def test_criterion_2_growth_sandwich():
    failures, checked = [], 0
    for label in ("A1", "A1xA1", "A2", "B2", "G2"):
        rd = build_root_datum(label)
        upper = sandwich_upper(rd)
        for lam in product(range(0, 5), repeat=rd.character_lattice_rank):
            if not is_dominant(rd, lam):
                continue
            for q in (2, 3, 5, 7):
                r = coset_growth_ratio(rd, lam, q)
                checked += 1
                if not (1 <= r <= upper):
                    failures.append(f"{label} {lam} q={q}: ratio {r} outside [1, {upper}]")
    record(2, "coset growth ratio within [1, sum_W 2^(l(w)-N)]", failures, f"{checked} exact comparisons")


def test_criterion_3_largeness():
    t0 = time.perf_counter()
    failures = []
    w = is_H_large(get_pair("maclachlan-reid"))
    if w is None or w.mu != (1,) or w.margin != 0:
        failures.append(f"maclachlan-reid witness {w}")
    for label in [f"su{n}1" for n in range(2, 6)] + [f"so{n}1" for n in range(2, 6)]:
        if is_H_large(get_pair(label)) is None:
            failures.append(f"{label} has no witness")
    if is_H_large(get_pair("split-control")) is not None:
        failures.append("split-control has a witness")
    for p in catalog():
        cone = cone_method(p)[0]
        brute = brute_force_exists(p, height=6)
        if cone != brute:
            failures.append(f"{p.label}: cone {cone} vs brute force {brute}")
    dt = time.perf_counter() - t0
    if dt >= 300:
        failures.append(f"runtime {dt:.1f}s >= 300s")
    record(3, "largeness witnesses on the catalog", failures, f"{dt:.2f}s")


def test_criterion_4_classification():
    failures = []
    for label, tag in (("maclachlan-reid", "T"), ("sl2xsl2-diag", "T"), ("split-control", "ST"),
                       ("compact-control", "NT")):
        got = classify(get_pair(label)).tag
        if got != tag:
            failures.append(f"{label}: {got} != {tag}")
    for p in catalog():
        tag = classify(p).tag
        has = is_H_large(p) is not None
        if tag in ("T", "NT") and not has:
            failures.append(f"{p.label} ({tag}) has no witness")
        if p.label == "split-control" and has:
            failures.append("split control has a witness")
    record(4, "split-rank classification consistent with largeness", failures)


def test_criterion_5_period_bound():
    failures = []
    pair = get_pair("maclachlan-reid")
    for q in (2, 3, 5):
        pb = period_lower_bound(pair, (1,), q)
        expected = Fraction(q * (q + 1), q * q)
        if pb.bound != 1:
            failures.append(f"q={q}: bound {pb.bound} != 1")
        if pb.exact != expected or not pb.exact > 1 or not pb.exact >= pb.bound:
            failures.append(f"q={q}: exact {pb.exact} != {expected}")
    record(5, "exact H-period of the amplifier at the identity exceeds 1", failures)


def test_criterion_6_exponent_budget():
    t0 = time.perf_counter()
    failures = []
    b = exponent_budget(10, 1)
    if b.c != Fraction(1, 20):
        failures.append(f"c = {b.c}")
    if b.delta != Fraction(1, 40) * (1 - b.epsilon):
        failures.append(f"delta = {b.delta}")
    if b.delta_limit != Fraction(1, 40):
        failures.append(f"epsilon -> 0 limit = {b.delta_limit}")
    if not b.symbolic_check():
        failures.append("symbolic inequalities fail")
    if not b.certificate["pass"]:
        failures.append(f"grid certificate fails: {b.certificate}")
    dt = time.perf_counter() - t0
    if dt >= 10:
        failures.append(f"runtime {dt:.1f}s >= 10s")
    record(6, "exponent budget c = 1/20, delta = (1 - eps)/40", failures,
           f"eps={b.epsilon}, delta={b.delta}, {b.certificate['grid_points']} grid points")


def test_criterion_7_spectral_floor():
    failures, floors = [], []
    for xi in (0.0, 10.0, 100.0):
        tf = ag.build_kxi_h3(xi, rtol=1e-6)
        f = ag.kxi_floor(tf)
        floors.append(f"{f:.3f}")
        if f < 1 / 16:
            failures.append(f"xi={xi}: min h_xi = {f} < 1/16")
    record(7, "h_xi >= 1/16 within distance 1 of xi", failures, "floors " + ", ".join(floors))


def test_criterion_8_spherical_decay():
    t0 = time.perf_counter()
    failures = []
    sup, lam, r = ag.spherical_sup(n_lam=1000, n_r=1000)
    if sup > 3:
        failures.append(f"sup {sup} > 3 at lambda={lam}, r={r}")
    c = ag.kxi_constants(xis=(10.0, 50.0, 200.0))
    if not (math.isfinite(c["decay_constant"]) and c["decay_constant"] > 0):
        failures.append(f"decay constant {c['decay_constant']}")
    n_r = len(ag.build_kxi_h3(10.0).r_grid)
    if n_r < 1000:
        failures.append(f"radial grid has {n_r} < 1000 points")
    dt = time.perf_counter() - t0
    if dt >= 120:
        failures.append(f"runtime {dt:.1f}s >= 120s")
    record(8, "spherical function and k_xi decay shape", failures,
           f"sup {sup:.4f}, decay constant {c['decay_constant']:.4f}, {dt:.1f}s")


def test_criterion_9_tube_bounds():
    failures = []
    scan = ag.tube_bound_scan("h3", n_theta=60, n_r=1001, n_eps=40)
    if scan["violations"]:
        failures.append(f"{scan['violations']} tube-radius violations, worst {scan['worst']}")
    slopes = []
    for t in (0.3, 0.7, 1.0, math.pi / 2):
        fit = ag.fit_volume_exponent("h3", t)
        if "small_eps_exponent" in fit:
            s = fit["small_eps_exponent"]
            slopes.append(s)
            if not 1.9 <= s <= 2.1:
                failures.append(f"theta={t}: volume exponent {s}")
    if not slopes:
        failures.append("no small-eps volume fit")
    for t in (0.3, 1.0, math.pi / 2):
        for e in (0.05, 0.5, 3.0):
            v = ag.orbital_tube_volume("h3", t, e).value
            if abs(v / ag.tube_volume_closed("h3", t, e) - 1) > 1e-8:
                failures.append(f"volume closed form mismatch at theta={t}, eps={e}")
        for rr in (0.0, 0.5, 2.0):
            if abs(float(ag.displacement("h3", rr, t)) - ag.displacement_matrix_model("h3", rr, t)) > 1e-10:
                failures.append(f"displacement mismatch at theta={t}, r={rr}")
        if abs(ag.discriminant_from_adjoint("h3", t) / ag.weyl_discriminant_elliptic("h3", t) - 1) > 1e-10:
            failures.append(f"discriminant mismatch at theta={t}")
    mc = ag.tube_volume_monte_carlo("h3", math.pi / 2, 0.1, seed=0)
    quad = ag.orbital_tube_volume("h3", math.pi / 2, 0.1).value
    if abs(mc / quad - 1) > 0.02:
        failures.append(f"Monte Carlo volume {mc} vs {quad}")
    record(9, "tube radius bound and quadratic tube volume on H3", failures,
           f"worst radius ratio {scan['worst']['ratio']:.3f}, exponents "
           + ", ".join(f"{s:.3f}" for s in slopes))


def _coweights(rank: int, height: int):
    for v in product(range(-height, height + 1), repeat=rank):
        if sum(abs(x) for x in v) <= height:
            yield v


def test_criterion_10_norm_properties():
    failures, checked = [], 0
    data = []
    for p in catalog():
        for rd in (p.g, p.h):
            if rd not in data:
                data.append(rd)
    for rd in data:
        simple = [w for w in weyl_group(rd).elements if w.length == 1]
        for mu in _coweights(rd.character_lattice_rank, 5):
            n = norm_star(rd, mu)
            checked += 1
            if n != norm_star(rd, [-x for x in mu]):
                failures.append(f"{rd.name} {mu}: not symmetric")
            if n != norm_star_adjoint(rd, mu):
                failures.append(f"{rd.name} {mu}: adjoint form differs")
            # simple reflections generate W
            if any(norm_star(rd, s.act_coweight(mu)) != n for s in simple):
                failures.append(f"{rd.name} {mu}: not Weyl invariant")
    record(10, "norm symmetry, Weyl invariance and adjoint agreement", failures[:5],
           f"{len(data)} root data, {checked} coweights")
