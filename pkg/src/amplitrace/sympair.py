"""Symmetric pairs (G, H), the largeness test ``2||mu||*_H >= ||mu||*``, and split-rank classification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, ResourceError, UnsupportedQuery, ValidationError
from .exact import dot, mat_vec, nullspace, primitive_integer, rank, rref
from .rootdata import (
    RootDatum,
    build_root_datum,
    dominant_representative,
    norm_star,
    simply_connected,
    special_orthogonal,
    torus,
)

IntMat = tuple[tuple[int, ...], ...]

DEFAULT_BRUTE_HEIGHT = 6
DEFAULT_FLAT_CAP = 200_000


@dataclass(frozen=True)
class SymmetricPair:
    """``embed`` has one row per coordinate of X_*(T) and one column per coordinate of X_*(T_H).

    ``theta`` is the involution in maximally split position (used for split
    ranks); ``theta_compact`` is a position whose fixed lattice contains the
    image of ``embed``.
    """

    label: str
    g: RootDatum
    h: RootDatum
    embed: IntMat
    theta: IntMat | None = None
    theta_compact: IntMat | None = None
    rep_weights: tuple[tuple[int, ...], ...] = ()
    coherent_position: bool = False
    description: str = ""

    def __post_init__(self):
        n, m = self.g.character_lattice_rank, self.h.character_lattice_rank
        e = self.embed
        if len(e) != n or any(len(row) != m for row in e):
            raise ValidationError(f"{self.label}: embed must be a {n}x{m} integer matrix")
        if m and rank(e) != m:
            raise ValidationError(f"{self.label}: embed is not injective")
        if m and _max_minor_gcd(e) != 1:
            raise ValidationError(f"{self.label}: embed has torsion in its cokernel")
        for name in ("theta", "theta_compact"):
            t = getattr(self, name)
            if t is None:
                continue
            if len(t) != n or any(len(row) != n for row in t):
                raise ValidationError(f"{self.label}: {name} must be {n}x{n}")
            sq = tuple(tuple(sum(t[i][k] * t[k][j] for k in range(n)) for j in range(n)) for i in range(n))
            if any(sq[i][j] != int(i == j) for i in range(n) for j in range(n)):
                raise ValidationError(f"{self.label}: {name} is not an involution")
            coroots = {r.coroot for r in self.g.roots}
            if {mat_vec(t, c) for c in coroots} != coroots:
                raise ValidationError(f"{self.label}: {name} does not permute the coroots")
        if self.theta_compact is not None:
            for j in range(m):
                col = tuple(e[i][j] for i in range(n))
                if mat_vec(self.theta_compact, col) != col:
                    raise ValidationError(f"{self.label}: embed is not fixed by theta_compact")
        for w in self.rep_weights:
            if len(w) != n:
                raise ValidationError(f"{self.label}: representation weight {w} has wrong length")

    def embed_coweight(self, mu: Sequence) -> tuple:
        return mat_vec(self.embed, mu)


def _det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n, d = len(a), Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def _max_minor_gcd(e: IntMat) -> int:
    from math import gcd

    m = len(e[0])
    g = 0
    for rows in combinations(range(len(e)), m):
        g = gcd(g, abs(int(_det([e[i] for i in rows]))))
        if g == 1:
            break
    return g


# ---------------------------------------------------------------- norms and largeness

def norm_star_H(pair: SymmetricPair, mu: Sequence) -> Fraction:
    return norm_star(pair.h, mu)


@dataclass(frozen=True)
class LargenessWitness:
    mu: tuple[int, ...]
    margin: Fraction

    def __post_init__(self):
        if not any(self.mu):
            raise ConsistencyError("a largeness witness must be nonzero")
        if self.margin < 0:
            raise ConsistencyError(f"witness {self.mu} has negative margin {self.margin}")


def margin(pair: SymmetricPair, mu: Sequence) -> Fraction:
    """``2||mu||*_H - ||embed(mu)||*`` with both norms computed by Weyl maxima."""
    return 2 * norm_star(pair.h, mu) - norm_star(pair.g, pair.embed_coweight(mu))


def _linear_forms(pair: SymmetricPair) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Positive roots of H and pulled-back positive roots of G, as forms on X_*(T_H)."""
    hforms = [a.root for a in pair.h.positive_roots]
    et = list(zip(*pair.embed)) if pair.embed else []
    gforms = [tuple(dot(a.root, col) for col in et) for a in pair.g.positive_roots]
    return hforms, gforms


def _twice_margin(hforms, gforms, mu) -> Fraction:
    # Adjoint form of both norms: 2||mu||*_H = sum_H |<b, mu>|, ||E mu||* = 1/2 sum_G |<a, E mu>|.
    return 2 * sum(abs(dot(b, mu)) for b in hforms) - sum(abs(dot(a, mu)) for a in gforms)


def _flat_rays(pair: SymmetricPair, cap: int) -> list[tuple]:
    """Candidate extreme rays of the common linearity cones of both norms."""
    d = pair.h.character_lattice_rank
    hforms, gforms = _linear_forms(pair)
    normals = []
    seen = set()
    for f in hforms + gforms:
        if any(f):
            key = primitive_integer(f)
            if key[next(i for i, x in enumerate(key) if x)] < 0:
                key = tuple(-x for x in key)
            if key not in seen:
                seen.add(key)
                normals.append(key)
    lineality = nullspace(normals, d) if normals else nullspace([], d)
    if lineality:
        return [tuple(v) for v in lineality]
    if comb(len(normals), d - 1) > cap:
        raise ResourceError(
            f"{pair.label}: {comb(len(normals), d - 1)} hyperplane subsets exceed cap {cap};"
            " use brute-force-only mode"
        )
    rays = set()
    for sub in combinations(normals, d - 1):
        ns = nullspace(list(sub), d) if sub else nullspace([], d)
        if len(ns) == 1:
            rays.add(primitive_integer(ns[0]))
    return sorted(rays)


def cone_method(pair: SymmetricPair, cap: int = DEFAULT_FLAT_CAP) -> tuple[bool, tuple[int, ...] | None, Fraction | None]:
    """Exact existence decision: (exists, best ray, its margin)."""
    if pair.h.character_lattice_rank == 0:
        return False, None, None
    hforms, gforms = _linear_forms(pair)
    best = None
    for r in _flat_rays(pair, cap):
        for s in (1, -1):
            v = primitive_integer([s * x for x in r])
            val = _twice_margin(hforms, gforms, v) / 2
            if val >= 0:
                key = (max(abs(x) for x in v), -val, v)
                if best is None or key < best[0]:
                    best = (key, v, val)
    if best is None:
        return False, None, None
    return True, best[1], best[2]


def _box(d: int, height: int) -> np.ndarray:
    axis = np.arange(-height, height + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    return pts[np.any(pts != 0, axis=1)]


def brute_force_witness(pair: SymmetricPair, height: int = DEFAULT_BRUTE_HEIGHT, dominant_only: bool = True):
    """Best witness in the box of the given height, or None.

    Ordering: smallest coordinate height, then largest margin, then lexicographic.
    """
    d = pair.h.character_lattice_rank
    if d == 0:
        return None
    hforms, gforms = _linear_forms(pair)
    pts = _box(d, height)
    if dominant_only and pair.h.rank:
        simple = np.array(pair.h.simple_roots, dtype=np.int64)
        pts = pts[np.all(pts @ simple.T >= 0, axis=1)]
    hm = np.array(hforms, dtype=np.int64).reshape(-1, d)
    gm = np.array(gforms, dtype=np.int64).reshape(-1, d)
    twice = 2 * np.abs(pts @ hm.T).sum(axis=1) - np.abs(pts @ gm.T).sum(axis=1)
    ok = twice >= 0
    if not ok.any():
        return None
    cand = pts[ok]
    heights = np.abs(cand).max(axis=1)
    hmin = heights.min()
    cand, vals = cand[heights == hmin], twice[ok][heights == hmin]
    top = vals.max()
    rows = sorted(tuple(int(x) for x in row) for row in cand[vals == top])
    mu = rows[0]
    return LargenessWitness(mu, margin(pair, mu))


def is_H_large(pair: SymmetricPair, cap: int = DEFAULT_FLAT_CAP,
               height: int = DEFAULT_BRUTE_HEIGHT, brute_force_only: bool = False) -> LargenessWitness | None:
    """Decide whether a nonzero ``mu`` with ``2||mu||*_H >= ||embed(mu)||*`` exists."""
    if brute_force_only:
        return brute_force_witness(pair, height)
    exists, ray, _ = cone_method(pair, cap)
    if not exists:
        return None
    w = brute_force_witness(pair, height)
    if w is not None:
        return w
    mu = tuple(int(x) for x in dominant_representative(pair.h, ray))
    if margin(pair, mu) < 0:
        mu = ray
    return LargenessWitness(mu, margin(pair, mu))


def brute_force_exists(pair: SymmetricPair, height: int = DEFAULT_BRUTE_HEIGHT) -> bool:
    return brute_force_witness(pair, height, dominant_only=False) is not None


# ---------------------------------------------------------------- split ranks

def _require_theta(pair: SymmetricPair) -> IntMat:
    if pair.theta is None:
        raise UnsupportedQuery(f"{pair.label}: no involution recorded for this pair")
    return pair.theta


def minus_eigenlattice(theta: IntMat) -> list[tuple]:
    n = len(theta)
    return nullspace([[theta[i][j] + int(i == j) for j in range(n)] for i in range(n)], n)


def theta_split_rank(pair: SymmetricPair) -> int:
    return len(minus_eigenlattice(_require_theta(pair)))


def dual_torus_rank(pair: SymmetricPair) -> int:
    """Rank of X_*(T) / embed(X_*(T_H))."""
    return pair.g.character_lattice_rank - pair.h.character_lattice_rank


@dataclass(frozen=True)
class Classification:
    tag: str
    theta_split_rank: int
    absolute_rank: int
    levi_is_torus: bool


def classify(pair: SymmetricPair) -> Classification:
    theta = _require_theta(pair)
    basis = minus_eigenlattice(theta)
    sr = len(basis)
    n = pair.g.character_lattice_rank
    levi_torus = all(any(dot(a.root, v) != 0 for v in basis) for a in pair.g.positive_roots)
    if sr == n:
        tag = "ST"
    elif levi_torus:
        tag = "T"
    else:
        tag = "NT"
    return Classification(tag, sr, n, levi_torus)


# ---------------------------------------------------------------- catalog

def _eye(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _diag(*xs: int) -> IntMat:
    n = len(xs)
    return tuple(tuple(xs[i] if i == j else 0 for j in range(n)) for i in range(n))


def _swap(k: int) -> IntMat:
    n = 2 * k
    return tuple(tuple(int(j == (i + k) % n) for j in range(n)) for i in range(n))


def _std_weights_A(n: int) -> list[tuple[int, ...]]:
    """Weights of the standard representation of SL(n+1) in fundamental-weight coordinates."""
    return [tuple(int(i == j) - int(i == j + 1) for j in range(n)) for i in range(n + 1)]


def _signed_units(m: int, zero: bool) -> list[tuple[int, ...]]:
    out = []
    for i in range(m):
        for s in (1, -1):
            out.append(tuple(s * int(j == i) for j in range(m)))
    if zero:
        out.append((0,) * m)
    return out


def _pad(ws, before: int, after: int):
    return [(0,) * before + tuple(w) + (0,) * after for w in ws]


def _highest_coroot_reflection(rd: RootDatum) -> IntMat:
    top = rd.positive_roots[-1]
    n = rd.character_lattice_rank
    return tuple(tuple(int(i == j) - top.coroot[i] * top.root[j] for j in range(n)) for i in range(n))


def _levi(rd: RootDatum, keep: Sequence[int], name: str) -> RootDatum:
    return RootDatum(rd.character_lattice_rank, tuple(rd.simple_roots[i] for i in keep),
                     tuple(rd.simple_coroots[i] for i in keep), name)


def _build_catalog() -> tuple[SymmetricPair, ...]:
    pairs = []
    a1 = simply_connected("A", 1)
    a1a1 = build_root_datum("A1xA1")
    pairs.append(SymmetricPair(
        "maclachlan-reid", a1a1, a1, ((1,), (1,)), _swap(1), _swap(1),
        tuple(_pad(_std_weights_A(1), 0, 1) + _pad(_std_weights_A(1), 1, 0)), True,
        "SL2 x SL2 with the diagonal SL2 and the factor swap (complexified SL2(C) / SL2(R))",
    ))
    for n in range(2, 6):
        g = simply_connected("A", n)
        h = _levi(g, range(n - 1), f"S(GL{n}xGL1)")
        pairs.append(SymmetricPair(
            f"su{n}1", g, h, _eye(n), _highest_coroot_reflection(g), _eye(n),
            tuple(_std_weights_A(n)), False,
            f"SL{n + 1} with the Levi S(GL{n} x GL1), real form SU({n},1)",
        ))
    # SO(n+1) > SO(n) in standard torus coordinates.
    so_specs = {
        2: (torus(1), ((1,),), _diag(-1), _diag(1)),
        3: (special_orthogonal(3), ((1,), (0,)), _diag(-1, 1), _diag(1, -1)),
        4: (special_orthogonal(4), _eye(2), _diag(-1, 1), _diag(1, 1)),
        5: (special_orthogonal(5), ((1, 0), (0, 1), (0, 0)), _diag(-1, 1, 1), _diag(1, 1, -1)),
    }
    for n, (h, emb, th, thc) in so_specs.items():
        g = special_orthogonal(n + 1)
        m = g.character_lattice_rank
        pairs.append(SymmetricPair(
            f"so{n}1", g, h, emb, th, thc, tuple(_signed_units(m, (n + 1) % 2 == 1)), False,
            f"SO{n + 1} with SO{n}, real form SO({n},1)",
        ))
    for n in (2, 3):
        g1 = simply_connected("A", n - 1)
        g = build_root_datum(f"A{n - 1}xA{n - 1}")
        k = n - 1
        emb = _eye(k) + _eye(k)
        pairs.append(SymmetricPair(
            f"sl{n}xsl{n}-diag", g, g1, emb, _swap(k), _swap(k),
            tuple(_pad(_std_weights_A(k), 0, k) + _pad(_std_weights_A(k), k, 0)), True,
            f"SL{n} x SL{n} with the diagonal SL{n} and the factor swap",
        ))
    pairs.append(SymmetricPair(
        "split-control", a1, torus(1), ((1,),), _diag(-1), _diag(1),
        tuple(_std_weights_A(1)), False, "SL2 with its diagonal torus, split involution",
    ))
    pairs.append(SymmetricPair(
        "compact-control", a1, a1, ((1,),), _diag(1), _diag(1),
        tuple(_std_weights_A(1)), True, "G = H = SL2 with the trivial involution",
    ))
    return tuple(pairs)


_CATALOG: tuple[SymmetricPair, ...] | None = None


def catalog() -> list[SymmetricPair]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def get_pair(label: str) -> SymmetricPair:
    key = label.strip().lower().replace("(", "").replace(")", "").replace(",", "")
    for p in catalog():
        if p.label == key:
            return p
    raise ValidationError(f"unknown pair {label!r}; known: {', '.join(p.label for p in catalog())}")


def analyze_pair(pair: SymmetricPair, cap: int = DEFAULT_FLAT_CAP, height: int = DEFAULT_BRUTE_HEIGHT) -> dict:
    """Everything the CLI reports about one pair, as plain data."""
    w = is_H_large(pair, cap=cap, height=height)
    cone_exists = cone_method(pair, cap)[0]
    brute = brute_force_exists(pair, height)
    if cone_exists != brute:
        raise ConsistencyError(f"{pair.label}: cone method says {cone_exists}, brute force says {brute}")
    out = {
        "pair": pair.label,
        "description": pair.description,
        "h_large": w is not None,
        "witness": list(w.mu) if w else None,
        "margin": str(w.margin) if w else None,
        "dual_torus_rank": dual_torus_rank(pair),
    }
    if pair.theta is not None:
        c = classify(pair)
        out.update(classification=c.tag, theta_split_rank=c.theta_split_rank,
                   absolute_rank=c.absolute_rank, levi_is_torus=c.levi_is_torus)
        out["rank_disagreement"] = c.theta_split_rank != out["dual_torus_rank"]
    return out


__all__ = [
    "SymmetricPair", "LargenessWitness", "Classification", "norm_star_H", "margin",
    "is_H_large", "cone_method", "brute_force_witness", "brute_force_exists",
    "theta_split_rank", "dual_torus_rank", "classify", "catalog", "get_pair", "analyze_pair",
]
