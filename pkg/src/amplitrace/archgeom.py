"""Rank-one archimedean checks on hyperbolic 2- and 3-space.

Models: H2 = SL2(R)/SO(2) and H3 = SL2(C)/SU(2), curvature -1.  The root
is normalized so that ``<alpha, xi> = |xi|``; the elliptic element of angle
theta is ``diag(e^{i theta}, e^{-i theta})`` (H3) or the rotation matrix by
theta (H2), both of which rotate about their fixed set by ``2 theta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, linalg, optimize

from .errors import NumericError, ValidationError

MODELS = ("h2", "h3")
MULTIPLICITY = {"h2": 1, "h3": 2}

# Tube-radius constants, fitted with fit_tube_constants(model, T=5) (max ratio
# on the fitting grid times 1.1) and frozen here.  Valid for T <= TUBE_T_MAX.
TUBE_T_MAX = 5.0
TUBE_CONSTANTS = {
    "h3": (8.8, 4.6),
    "h2": (2.2, 4.3),
}


def _model(model: str) -> str:
    m = str(model).lower()
    if m not in MODELS:
        raise ValidationError(f"unknown model {model!r}; use h2 or h3")
    return m


# ---------------------------------------------------------------- Plancherel weight

@dataclass(frozen=True)
class PlancherelBeta:
    value: float
    factors: tuple[tuple[float, int], ...]


def beta(model: str, xi) -> PlancherelBeta:
    """``prod (1 + |<alpha, xi>|)^m(alpha)`` over the single positive root."""
    m = _model(model)
    x = float(np.linalg.norm(np.atleast_1d(np.asarray(xi, dtype=float))))
    if not math.isfinite(x):
        raise ValidationError("spectral parameter must be finite")
    mult = MULTIPLICITY[m]
    return PlancherelBeta((1 + x) ** mult, ((x, mult),))


# ---------------------------------------------------------------- discriminant

@dataclass(frozen=True)
class EllipticElement:
    model: str
    angle: float
    discriminant: float
    central: bool


def _is_central(theta: float) -> bool:
    return abs(math.sin(theta)) < 1e-15


def weyl_discriminant_elliptic(model: str, theta: float) -> float:
    """``|det(1 - Ad gamma)|`` on ``g / g_gamma``; 1 for central gamma."""
    m = _model(model)
    if _is_central(theta):
        return 1.0
    s2 = math.sin(theta) ** 2
    return 16 * s2 * s2 if m == "h3" else 4 * s2


def elliptic_element(model: str, theta: float) -> EllipticElement:
    return EllipticElement(_model(model), float(theta), weyl_discriminant_elliptic(model, theta),
                           _is_central(theta))


def _sl2_basis_real(model: str) -> list[np.ndarray]:
    h = np.array([[1, 0], [0, -1]], dtype=complex)
    e = np.array([[0, 1], [0, 0]], dtype=complex)
    f = np.array([[0, 0], [1, 0]], dtype=complex)
    base = [h, e, f]
    return base + [1j * b for b in base] if model == "h3" else base


def _coords(x: np.ndarray, model: str) -> np.ndarray:
    c = np.array([x[0, 0], x[0, 1], x[1, 0]])
    return np.concatenate([c.real, c.imag]) if model == "h3" else c.real


def discriminant_from_adjoint(model: str, theta: float) -> float:
    """Oracle: eigenvalues of Ad(gamma) on the real Lie algebra, dropping the centralizer."""
    m = _model(model)
    if m == "h3":
        g = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
    else:
        g = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]], dtype=complex)
    ginv = np.linalg.inv(g)
    cols = [_coords(g @ b @ ginv, m) for b in _sl2_basis_real(m)]
    ad = np.array(cols).T
    ev = np.linalg.eigvals(ad)
    vals = np.sort(np.abs(1 - ev))
    keep = vals[MULTIPLICITY[m]:]  # centralizer has real dimension 1 (h2) or 2 (h3)
    return float(np.prod(keep))


# ---------------------------------------------------------------- spherical functions

def spherical_h3(lam, r):
    """``sin(lam r) / (lam sinh r)``, with its limits at r = 0 and lam = 0."""
    lam = np.asarray(lam, dtype=float)
    r = np.asarray(r, dtype=float)
    lam, r = np.broadcast_arrays(lam, r)
    out = np.ones(lam.shape)
    small_r = np.abs(r) < 1e-8
    small_l = np.abs(lam) < 1e-12
    gen = ~small_r & ~small_l
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(gen, np.sin(lam * r) / np.where(gen, lam * np.sinh(r), 1.0), out)
        out = np.where(small_l & ~small_r, r / np.where(small_r, 1.0, np.sinh(r)), out)
    # r -> 0: 1 - (lam^2 + 1) r^2 / 6 to second order.
    out = np.where(small_r, 1 - (lam**2 + 1) * r**2 / 6, out)
    return out if out.ndim else float(out)


def spherical_h3_integral(lam: float, r: float) -> float:
    """Oracle: ``1/2 int_0^pi (cosh r - sinh r cos t)^(-1 - i lam) sin t dt``."""
    ch, sh = math.cosh(r), math.sinh(r)

    def part(t, which):
        u = ch - sh * math.cos(t)
        z = u ** complex(-1, -lam) * math.sin(t)
        return z.real if which == 0 else z.imag

    lim = 200 + int(5 * abs(lam) * max(r, 1))
    re, _ = integrate.quad(part, 0, math.pi, args=(0,), limit=lim, epsabs=1e-12, epsrel=1e-11)
    im, _ = integrate.quad(part, 0, math.pi, args=(1,), limit=lim, epsabs=1e-10, epsrel=0)
    if abs(im) > 1e-8:
        raise NumericError(f"spherical integral has imaginary part {im} at lam={lam}, r={r}")
    return 0.5 * re


# ---------------------------------------------------------------- test function k_xi

def _sinc(x):
    x = np.asarray(x)
    safe = np.where(np.abs(x) < 1e-8, 1.0, x)
    return np.where(np.abs(x) < 1e-8, 1 - x * x / 6, np.sin(safe) / safe)


@dataclass(frozen=True)
class TestFunctionKxi:
    """Spherical test function on H3 concentrated near spectral parameter ``xi``.

    ``b0`` is the m-fold self-convolution of a box, normalized to mass 1 and
    supported in radius ``delta/2``, so ``h0 = b0_hat^2 = sinc(nu delta/(2m))^(2m)``.
    """

    __test__ = False  # not a pytest class

    xi: float
    h0_support_radius: float
    smoothness: int = 4
    r_grid: np.ndarray = field(default=None, repr=False, compare=False)
    samples: np.ndarray = field(default=None, repr=False, compare=False)
    quadrature_points: int = 0

    def h0(self, nu):
        m = self.smoothness
        return _sinc(np.asarray(nu) * self.h0_support_radius / (2 * m)) ** (2 * m)

    def h_xi0(self, nu):
        nu = np.asarray(nu)
        return self.h0(nu - self.xi) + self.h0(-nu - self.xi)

    def h_xi(self, nu):
        v = self.h_xi0(nu)
        return (v * np.conj(v)).real if np.iscomplexobj(v) else v * v

    def k(self, r):
        """Interpolated radial profile."""
        return np.interp(r, self.r_grid, self.samples)


def _kxi_profile(tf: TestFunctionKxi, r: np.ndarray, n: int, cutoff: float) -> np.ndarray:
    lam = np.linspace(0.0, cutoff, n)
    w = tf.h_xi(lam) * lam**2
    phi = spherical_h3(lam[None, :], r[:, None])
    return integrate.simpson(w[None, :] * phi, x=lam, axis=1) / (2 * math.pi**2)


def build_kxi_h3(xi: float, delta: float = 0.5, r_max: float = 2.0, n_r: int = 1001,
                 rtol: float = 1e-6) -> TestFunctionKxi:
    """Build ``k_xi`` by spherical inversion with Plancherel density ``lam^2``."""
    if not 0 < delta <= 0.5:
        raise ValidationError(f"h0 support radius must lie in (0, 1/2], got {delta}")
    xi = abs(float(xi))
    probe = TestFunctionKxi(xi, delta)
    m = probe.smoothness
    # h_xi decays like (2m / (nu delta))^(4m) away from xi; cut where it is < 1e-30.
    cutoff = xi + (2 * m / delta) * 10 ** (30 / (4 * m)) + 50
    r = np.linspace(0.0, r_max, n_r)
    n = 2 ** 13 + 1
    prev = _kxi_profile(probe, r, n, cutoff)
    for _ in range(6):
        n = 2 * n - 1
        cur = _kxi_profile(probe, r, n, cutoff)
        scale = max(np.max(np.abs(cur)), 1e-300)
        if np.max(np.abs(cur - prev)) <= rtol * scale:
            break
        prev = cur
    else:
        raise NumericError(
            f"k_xi quadrature did not converge for xi={xi}: change {np.max(np.abs(cur - prev)):.3e}"
            f" at {n} nodes"
        )
    tf = TestFunctionKxi(xi, delta, m, r, cur, n)
    if tf.h_xi(xi) < 1:
        raise NumericError(f"h_xi(xi) = {tf.h_xi(xi)} < 1")
    return tf


def floor_threshold(smoothness: int = 4) -> float:
    """Largest support radius delta with h0(1) >= 1/4, so that h_xi >= 1/16 near xi."""
    m = smoothness
    return optimize.brentq(lambda d: float(_sinc(d / (2 * m))) ** (2 * m) - 0.25, 1e-6, 2 * m * math.pi - 1e-9)


def kxi_floor(tf: TestFunctionKxi, n: int = 4001) -> float:
    """Minimum of h_xi over unitary parameters with real part within 1 of xi."""
    lam = np.linspace(tf.xi - 1, tf.xi + 1, n)
    lo = float(np.min(tf.h_xi(lam)))
    if tf.xi <= 1:
        t = np.linspace(-1, 1, n)
        lo = min(lo, float(np.min(tf.h_xi(1j * t))))
    return lo


# ---------------------------------------------------------------- displacement and tubes

def displacement(model: str, r, theta):
    """``d(p, gamma p)`` for p at distance r from the fixed set: ``2 asinh(|sin theta| sinh r)``."""
    _model(model)
    return 2 * np.arcsinh(np.abs(np.sin(theta)) * np.sinh(r))


def _point(model: str, r):
    """Positive det-1 matrix at distance r from the base point, orthogonal to the fixed set."""
    r = np.asarray(r, dtype=float)
    m = np.empty(r.shape + (2, 2), dtype=complex if model == "h3" else float)
    m[..., 0, 0] = m[..., 1, 1] = np.cosh(r)
    m[..., 0, 1] = m[..., 1, 0] = np.sinh(r)
    return m


def _gamma(model: str, theta: float) -> np.ndarray:
    if model == "h3":
        return np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def displacement_matrix_model(model: str, r: float, theta: float) -> float:
    """Oracle: distance between X and gamma X gamma^* from generalized eigenvalues."""
    m = _model(model)
    x = _point(m, r)
    g = _gamma(m, theta)
    y = g @ x @ g.conj().T
    mu = linalg.eigh(y, x, eigvals_only=True)
    return 0.5 * float(math.log(mu[-1]) - math.log(mu[0]))


def displacement_matrix_batch(model: str, r: np.ndarray, theta: float) -> np.ndarray:
    """Vectorized matrix-model displacement via ``2 cosh d = tr(X^{-1} Y)``."""
    m = _model(model)
    x = _point(m, r)
    g = _gamma(m, theta)
    y = g @ x @ g.conj().T
    tr = np.einsum("...ij,...ji->...", np.linalg.inv(x), y).real
    return np.arccosh(np.maximum(tr / 2, 1.0))


def tube_radius(eps: float, theta: float) -> float:
    """Exact radius of ``{p : d(p, gamma p) < eps}`` around the fixed set."""
    return float(np.arcsinh(np.sinh(eps / 2) / abs(math.sin(theta))))


def tube_radius_bound(eps: float, D: float, T: float = TUBE_T_MAX, model: str = "h3") -> float:
    """``C1 eps/D`` when ``eps/D <= 2``, else ``C2 log(eps/D)``, with frozen constants."""
    m = _model(model)
    if not (D > 0 and 0 < eps < T and T >= 1):
        raise ValidationError(f"need D > 0, 0 < eps < T, T >= 1; got eps={eps}, D={D}, T={T}")
    if T > TUBE_T_MAX:
        raise ValidationError(f"frozen constants are certified for T <= {TUBE_T_MAX}")
    c1, c2 = TUBE_CONSTANTS[m]
    x = eps / D
    return c1 * x if x <= 2 else c2 * math.log(x)


def fit_tube_constants(model: str, T: float = TUBE_T_MAX, n_theta: int = 200, n_eps: int = 200,
                       safety: float = 1.1) -> tuple[float, float]:
    """Smallest constants making the two-regime bound hold on a grid, times ``safety``."""
    m = _model(model)
    thetas = np.linspace(0.05, math.pi / 2, n_theta)
    epss = np.geomspace(0.01, T * (1 - 1e-9), n_eps)
    th, ep = np.meshgrid(thetas, epss, indexing="ij")
    D = np.vectorize(lambda t: weyl_discriminant_elliptic(m, t))(th)
    R = np.arcsinh(np.sinh(ep / 2) / np.abs(np.sin(th)))
    x = ep / D
    lin = x <= 2
    c1 = float(np.max(R[lin] / x[lin])) if lin.any() else 0.0
    c2 = float(np.max(R[~lin] / np.log(x[~lin]))) if (~lin).any() else 0.0
    return c1 * safety, c2 * safety


def _tube_radius_numeric(model: str, theta: float, eps: float, r_max: float) -> float:
    f = lambda r: float(displacement(model, r, theta)) - eps  # noqa: E731
    if f(r_max) < 0:
        return r_max
    return optimize.brentq(f, 0.0, r_max, xtol=1e-14, rtol=1e-14)


@dataclass(frozen=True)
class TubeVolume:
    value: float
    radius: float
    saturated: bool


def orbital_tube_volume(model: str, theta: float, eps: float, r_max: float = 30.0) -> TubeVolume:
    """Volume of ``{p : d(p, gamma p) < eps}``: per unit axis length (H3) or total (H2)."""
    m = _model(model)
    if _is_central(theta):
        raise ValidationError("central elements fix every point; the tube is the whole space")
    if eps <= 0:
        raise ValidationError("eps must be positive")
    R = _tube_radius_numeric(m, theta, eps, r_max)
    if m == "h3":
        dens = lambda r: 2 * math.pi * math.sinh(r) * math.cosh(r)  # noqa: E731
    else:
        dens = lambda r: 2 * math.pi * math.sinh(r)  # noqa: E731
    val, err = integrate.quad(dens, 0.0, R, epsabs=1e-12, epsrel=1e-12)
    if not math.isfinite(val) or err > 1e-8 * max(1.0, val):
        raise NumericError(f"tube volume quadrature failed: value {val}, error estimate {err}")
    return TubeVolume(val, R, R >= r_max)


def tube_volume_closed(model: str, theta: float, eps: float) -> float:
    R = tube_radius(eps, theta)
    return math.pi * math.sinh(R) ** 2 if _model(model) == "h3" else 2 * math.pi * (math.cosh(R) - 1)


def tube_volume_monte_carlo(model: str, theta: float, eps: float, n: int = 400_000, seed: int = 0) -> float:
    """Independent estimate: sample radii from the volume density on a box, count hits."""
    m = _model(model)
    box = 0.05
    while float(displacement_matrix_batch(m, np.array([box]), theta)[0]) < eps:
        box *= 2
    box *= 1.25
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    if m == "h3":
        r = np.arcsinh(np.sinh(box) * np.sqrt(u))
        total = math.pi * math.sinh(box) ** 2
    else:
        r = np.arccosh(1 + (math.cosh(box) - 1) * u)
        total = 2 * math.pi * (math.cosh(box) - 1)
    hits = displacement_matrix_batch(m, r, theta) < eps
    return total * float(np.mean(hits))


def fit_volume_exponent(model: str, theta: float, n: int = 25) -> dict:
    """Log-log slopes of the tube volume in eps, below and above ``eps = 2D``."""
    D = weyl_discriminant_elliptic(model, theta)
    out = {"theta": theta, "D": D}
    hi = min(0.5, 2 * D)
    if hi > 0.01 * 1.5:
        e = np.geomspace(0.01, hi, n)
        v = np.array([orbital_tube_volume(model, theta, x).value for x in e])
        slope, icpt = np.polyfit(np.log(e / D), np.log(v), 1)
        out["small_eps_exponent"] = float(slope)
        out["small_eps_constant"] = float(np.max(v / (e / D) ** 2))
    lo = 2 * D
    if lo < 4:
        e = np.geomspace(lo * 1.01, 5.0, n)
        v = np.array([orbital_tube_volume(model, theta, x).value for x in e])
        A, icpt = np.polyfit(np.log(e / D), np.log(v), 1)
        out["large_eps_exponent_A"] = float(A)
        out["large_eps_constant_C"] = float(np.max(v / (e / D) ** A))
    return out


# ---------------------------------------------------------------- polar coordinates

def _hermitian_basis(model: str) -> list[np.ndarray]:
    # Unit-norm tangent directions (norm = 2 |eigenvalue|): radial first, then angular.
    h = np.array([[0.5, 0], [0, -0.5]], dtype=complex)
    x = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
    y = np.array([[0, -0.5j], [0.5j, 0]], dtype=complex)
    return [h, x, y] if model == "h3" else [h, x]


def radial_part(g: np.ndarray) -> float:
    """Cartan radial coordinate ``d(o, g o) = 2 log sigma_max(g)`` for det-1 g."""
    s = np.linalg.svd(g, compute_uv=False)
    return float(math.log(s[0]) - math.log(s[-1]))


def _dist(g1: np.ndarray, g2: np.ndarray) -> float:
    return radial_part(np.linalg.solve(g1, g2))


def _speed(curve, h: float) -> float:
    """Speed at 0 of a curve in G (acting on o), central differences with one Richardson step."""
    s1 = _dist(curve(-h), curve(h)) / (2 * h)
    s2 = _dist(curve(-h / 2), curve(h / 2)) / h
    return (4 * s2 - s1) / 3


def polar_metric_check(model: str, samples: int = 200, seed: int = 0, h: float = 1e-4,
                       rtol: float = 1e-6, t_max: float = 3.0) -> dict:
    """Finite-difference pullback of the metric through ``V -> exp(V) o``.

    At ``V = t * diag(1/2, -1/2)`` the radial speed should be 1 and each
    angular direction ``sinh(t)/t``; rotating by ``k_a`` should move at
    speed ``2 sinh t`` in ``a``.
    """
    m = _model(model)
    rng = np.random.default_rng(seed)
    basis = _hermitian_basis(m)
    worst = {"rel_error": 0.0}
    ratios, c_fit = [], math.inf
    radial_pairs_ok = True
    for i in range(samples):
        t = float(rng.uniform(0.05, t_max))
        V = t * basis[0]
        for j, Y in enumerate(basis):
            speed = _speed(lambda s: linalg.expm(V + s * Y), h)
            expect = 1.0 if j == 0 else math.sinh(t) / t
            err = abs(speed / expect - 1)
            ratios.append(speed / expect)
            if err > worst["rel_error"]:
                worst = {"rel_error": err, "t": t, "direction": j, "measured": speed, "expected": expect}
        a = float(rng.uniform(0, math.pi))
        k = lambda s: np.array([[math.cos(s), -math.sin(s)], [math.sin(s), math.cos(s)]], dtype=complex)  # noqa: E731
        e = linalg.expm(V)
        speed = _speed(lambda s: k(a + s) @ e, h)
        expect = 2 * math.sinh(t)
        err = abs(speed / expect - 1)
        if err > worst["rel_error"]:
            worst = {"rel_error": err, "t": t, "direction": "rotation", "measured": speed, "expected": expect}
        c_fit = min(c_fit, math.asinh(speed / 2) / t)
        # Radial projection is distance non-increasing.
        g1 = _random_sl2(m, rng)
        g2 = _random_sl2(m, rng)
        if abs(radial_part(g1) - radial_part(g2)) > _dist(g1, g2) + 1e-9:
            radial_pairs_ok = False
    ok = worst["rel_error"] <= rtol and radial_pairs_ok and c_fit > 0
    return {
        "samples": samples,
        "max_rel_error": worst["rel_error"],
        "worst": worst,
        "angular_lower_bound_c": c_fit,
        "radial_projection_ok": radial_pairs_ok,
        "pass": ok,
    }


def _random_sl2(model: str, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(2, 2))
    if model == "h3":
        a = a + 1j * rng.normal(size=(2, 2))
    d = np.linalg.det(a)
    if model == "h2" and d.real < 0:
        a[0] = -a[0]
        d = -d
    return a / np.sqrt(d)


def displacement_lower_constant(model: str = "h3", n_theta: int = 100, n_r: int = 200) -> float:
    """``min d(r, theta) / (sinh(r) D(theta))`` over theta in [0.05, pi/2], r in (0, 10]."""
    th = np.linspace(0.05, math.pi / 2, n_theta)[:, None]
    r = np.linspace(10 / n_r, 10, n_r)[None, :]
    D = np.vectorize(lambda t: weyl_discriminant_elliptic(model, t))(th)
    return float(np.min(displacement(model, r, th) / (np.sinh(r) * D)))


# ---------------------------------------------------------------- verification suites

SUITES = ("discriminant", "spherical", "kxi", "displacement", "tube", "volume", "polar")
H3_ONLY = ("spherical", "kxi")


def _suite_discriminant(model: str, seed: int) -> dict:
    thetas = np.linspace(0.05, math.pi - 0.05, 60)
    errs = [abs(discriminant_from_adjoint(model, t) / weyl_discriminant_elliptic(model, t) - 1) for t in thetas]
    i = int(np.argmax(errs))
    return {
        "grid": {"theta": [0.05, math.pi - 0.05, len(thetas)]},
        "fitted_constants": {},
        "worst_case": {"theta": float(thetas[i]), "rel_error": float(errs[i])},
        "pass": max(errs) <= 1e-10 and weyl_discriminant_elliptic(model, math.pi) == 1.0,
    }


def spherical_sup(n_lam: int = 200, n_r: int = 200) -> tuple[float, float, float]:
    """``sup |phi_lam(r)| (1 + lam r)^(1/2)`` over lam in [1, 100], r in (0, 2]."""
    lam = np.linspace(1, 100, n_lam)[:, None]
    r = np.linspace(2 / n_r, 2, n_r)[None, :]
    v = np.abs(spherical_h3(lam, r)) * np.sqrt(1 + lam * r)
    i, j = np.unravel_index(int(np.argmax(v)), v.shape)
    return float(v[i, j]), float(lam[i, 0]), float(r[0, j])


def _suite_spherical(model: str, seed: int) -> dict:
    sup, lam_w, r_w = spherical_sup()
    worst_rel = 0.0
    for lam in np.linspace(0.5, 30, 12):
        for r in np.linspace(0.01, 3, 12):
            exact = spherical_h3(lam, r)
            orc = spherical_h3_integral(float(lam), float(r))
            worst_rel = max(worst_rel, abs(orc - exact) / max(abs(exact), 1e-3))
    return {
        "grid": {"lambda": [1, 100, 200], "r": [0.01, 2, 200], "oracle_points": 144},
        "fitted_constants": {"spherical_sup": sup},
        "worst_case": {"lambda": lam_w, "r": r_w, "oracle_rel_error": worst_rel},
        "pass": sup <= 3 and worst_rel <= 1e-8,
    }


def kxi_constants(xis=(10.0, 50.0, 200.0), ratio_xis=None, delta: float = 0.5) -> dict:
    """Fitted constants for ``k_xi(0) ~ beta(xi)`` and the decay profile."""
    ratio_xis = ratio_xis if ratio_xis is not None else np.geomspace(5, 200, 8)
    ratios = []
    for x in ratio_xis:
        tf = build_kxi_h3(float(x), delta)
        ratios.append(float(tf.samples[0] / beta("h3", x).value))
    decay, where = 0.0, None
    for x in xis:
        tf = build_kxi_h3(float(x), delta)
        v = np.abs(tf.samples) * np.sqrt(1 + x * tf.r_grid) / beta("h3", x).value
        j = int(np.argmax(v))
        if v[j] > decay:
            decay, where = float(v[j]), {"xi": float(x), "r": float(tf.r_grid[j])}
    return {
        "ratio_min": min(ratios),
        "ratio_max": max(ratios),
        "ratio_constant": max(max(ratios), 1 / min(ratios)),
        "decay_constant": decay,
        "decay_worst": where,
    }


def _suite_kxi(model: str, seed: int) -> dict:
    floors = {}
    for x in (0.0, 10.0, 100.0):
        floors[str(x)] = kxi_floor(build_kxi_h3(x))
    c = kxi_constants()
    ok = min(floors.values()) >= 1 / 16 - 1e-6 and c["ratio_min"] > 0 and math.isfinite(c["decay_constant"])
    return {
        "grid": {"r": [0, 2, 1001], "xi_floor": [0, 10, 100], "xi_ratio": [5, 200, 8], "xi_decay": [10, 50, 200]},
        "fitted_constants": {"ratio_constant": c["ratio_constant"], "decay_constant": c["decay_constant"],
                             "floor_threshold_delta": floor_threshold()},
        "worst_case": {"min_floor": min(floors.values()), "floors": floors, "decay": c["decay_worst"]},
        "pass": bool(ok),
    }


def _suite_displacement(model: str, seed: int) -> dict:
    worst = 0.0
    for t in np.linspace(0.05, math.pi / 2, 15):
        for r in np.linspace(0, 3, 15):
            worst = max(worst, abs(float(displacement(model, r, t)) - displacement_matrix_model(model, r, t)))
    c = displacement_lower_constant(model)
    return {
        "grid": {"theta": [0.05, math.pi / 2, 15], "r": [0, 3, 15], "lower_bound_r": [0.05, 10, 200]},
        "fitted_constants": {"lower_bound_c": c},
        "worst_case": {"abs_error": worst},
        "pass": worst <= 1e-10 and c > 0,
    }


def tube_bound_scan(model: str, n_theta: int = 60, n_r: int = 801, n_eps: int = 40) -> dict:
    """For every (theta, eps), the largest grid radius with displacement < eps versus the bound."""
    thetas = np.linspace(0.05, math.pi / 2, n_theta)
    rs = np.linspace(0, 20, n_r)
    epss = np.geomspace(0.01, 5 * (1 - 1e-6), n_eps)
    worst = {"ratio": 0.0}
    violations = 0
    for t in thetas:
        d = displacement(model, rs, t)
        D = weyl_discriminant_elliptic(model, t)
        for e in epss:
            inside = rs[d < e]
            if inside.size == 0:
                continue
            b = tube_radius_bound(float(e), D, TUBE_T_MAX, model)
            ratio = float(inside.max() / b)
            if ratio > 1:
                violations += 1
            if ratio > worst["ratio"]:
                worst = {"ratio": ratio, "theta": float(t), "eps": float(e), "r": float(inside.max())}
    return {"violations": violations, "worst": worst}


def _suite_tube(model: str, seed: int) -> dict:
    scan = tube_bound_scan(model)
    c1, c2 = TUBE_CONSTANTS[model]
    return {
        "grid": {"theta": [0.05, math.pi / 2, 60], "r": [0, 20, 801], "eps": [0.01, 5, 40]},
        "fitted_constants": {"C1": c1, "C2": c2, "T_max": TUBE_T_MAX},
        "worst_case": scan["worst"],
        "pass": scan["violations"] == 0,
    }


def _suite_volume(model: str, seed: int) -> dict:
    worst_closed = 0.0
    for t in (0.3, 0.7, 1.2, math.pi / 2):
        for e in (0.01, 0.1, 1.0, 4.0):
            v = orbital_tube_volume(model, t, e).value
            worst_closed = max(worst_closed, abs(v / tube_volume_closed(model, t, e) - 1))
    quad = orbital_tube_volume(model, math.pi / 2, 0.1).value
    mc = tube_volume_monte_carlo(model, math.pi / 2, 0.1, seed=seed)
    mc_err = abs(mc / quad - 1)
    fits = [fit_volume_exponent(model, t) for t in (0.3, 0.7, 1.0, math.pi / 2)]
    slopes = [f["small_eps_exponent"] for f in fits if "small_eps_exponent" in f]
    large = [f for f in fits if "large_eps_exponent_A" in f]
    return {
        "grid": {"theta": [0.3, 0.7, 1.0, math.pi / 2], "eps_small": [0.01, "min(0.5, 2D)", 25]},
        "fitted_constants": {
            "small_eps_exponents": slopes,
            "small_eps_constant": max(f["small_eps_constant"] for f in fits if "small_eps_constant" in f),
            "large_eps": [{"theta": f["theta"], "A": f["large_eps_exponent_A"], "C": f["large_eps_constant_C"]}
                          for f in large],
        },
        "worst_case": {"closed_form_rel_error": worst_closed, "monte_carlo_rel_error": mc_err,
                       "monte_carlo": mc, "quadrature": quad},
        "pass": worst_closed <= 1e-8 and mc_err <= 0.02 and bool(slopes) and all(1.9 <= s <= 2.1 for s in slopes),
    }


def _suite_polar(model: str, seed: int) -> dict:
    rep = polar_metric_check(model, samples=100, seed=seed)
    return {
        "grid": {"samples": rep["samples"], "t": [0.05, 3.0]},
        "fitted_constants": {"angular_lower_bound_c": rep["angular_lower_bound_c"]},
        "worst_case": rep["worst"],
        "pass": rep["pass"],
    }


_SUITE_FUNCS = {
    "discriminant": _suite_discriminant,
    "spherical": _suite_spherical,
    "kxi": _suite_kxi,
    "displacement": _suite_displacement,
    "tube": _suite_tube,
    "volume": _suite_volume,
    "polar": _suite_polar,
}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def verify_suite(model: str, suite: str = "all", seed: int = 0) -> dict:
    """Run one named check (or all of them) and return a plain-data report."""
    m = _model(model)
    names = SUITES if suite == "all" else (suite,)
    for n in names:
        if n not in _SUITE_FUNCS:
            raise ValidationError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    if m != "h3" and suite in H3_ONLY:
        raise ValidationError(f"suite {suite!r} exists only for the h3 model")
    results = {}
    for n in names:
        if m != "h3" and n in H3_ONLY:
            continue
        results[n] = _plain(_SUITE_FUNCS[n](m, seed))
    if suite != "all":
        out = dict(results[suite])
        out["suite"] = suite
    else:
        out = {
            "suite": "all",
            "grid": {k: v["grid"] for k, v in results.items()},
            "fitted_constants": {k: v["fitted_constants"] for k, v in results.items()},
            "worst_case": {k: v["worst_case"] for k, v in results.items()},
            "pass": all(v["pass"] for v in results.values()),
            "suites_passed": {k: v["pass"] for k, v in results.items()},
        }
    out["model"] = m
    out["seed"] = seed
    return out
