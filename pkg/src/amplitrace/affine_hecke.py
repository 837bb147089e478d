"""Extended affine Weyl lengths and spherical double-coset sizes ``#K t(lambda) K / K``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ConsistencyError, ValidationError
from .exact import dot, integer_row_basis, solve
from .rootdata import (
    RootDatum,
    WeylElement,
    dominant_representative,
    is_integral,
    norm_star,
    weyl_group,
)

Poly = tuple[int, ...]  # coefficients, constant term first


@dataclass(frozen=True)
class ExtendedAffineElement:
    """``t(translation) * finite_part``."""

    translation: tuple[int, ...]
    finite_part: WeylElement

    def compose(self, other: ExtendedAffineElement, rd: RootDatum) -> ExtendedAffineElement:
        lam = tuple(a + b for a, b in zip(self.translation, self.finite_part.act_coweight(other.translation)))
        return ExtendedAffineElement(lam, weyl_group(rd).multiply(self.finite_part, other.finite_part))


def _integral(rd: RootDatum, lam: Sequence) -> tuple[int, ...]:
    if len(lam) != rd.character_lattice_rank:
        raise ValidationError(f"coweight {list(lam)} has length {len(lam)}, expected {rd.character_lattice_rank}")
    if not is_integral(lam):
        raise ValidationError(f"coweight {[str(Fraction(x)) for x in lam]} is not integral")
    return tuple(int(Fraction(x)) for x in lam)


def affine_length(rd: RootDatum, lam: Sequence, w: WeylElement) -> int:
    """Length of ``t(lam) w`` in the extended affine Weyl group."""
    lam = _integral(rd, lam)
    winv = weyl_group(rd).inverse(w)
    total = 0
    for a in rd.positive_roots:
        p = dot(a.root, lam)
        # alpha lies in w(Delta+) exactly when w^{-1} alpha is positive.
        if rd.is_positive_root(winv.act_weight(a.root)):
            total += abs(p)
        else:
            total += abs(p - 1)
    return total


def double_coset_elements(rd: RootDatum, lam: Sequence) -> list[ExtendedAffineElement]:
    """``W t(lam) W`` as the set of ``t(mu) u`` with ``mu`` in the orbit of ``lam``."""
    lam = _integral(rd, lam)
    W = weyl_group(rd)
    orbit = sorted({w.act_coweight(lam) for w in W.elements})
    return [ExtendedAffineElement(mu, u) for mu in orbit for u in W.elements]


def poincare_polynomial(rd: RootDatum) -> Poly:
    W = weyl_group(rd)
    coeffs = [0] * (W.long_element.length + 1)
    for w in W.elements:
        coeffs[w.length] += 1
    return tuple(coeffs)


def poly_eval(p: Sequence[int], q) -> int:
    v = 0
    for c in reversed(p):
        v = v * q + c
    return v


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[Poly, Poly]:
    """Division in Z[q] by a monic polynomial."""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dq = len(den) - 1
    quot = [0] * max(len(rem) - dq, 1)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                rem[k + j] -= c * d
    rem = rem[:dq] if dq else []
    while len(quot) > 1 and quot[-1] == 0:
        quot.pop()
    return tuple(quot), tuple(rem)


@dataclass(frozen=True)
class HeckeCountPolynomial:
    coeffs: Poly
    normalization: Poly

    def __call__(self, q: int) -> int:
        return poly_eval(self.coeffs, q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(terms) or "0"


def double_coset_count(rd: RootDatum, lam: Sequence) -> HeckeCountPolynomial:
    """Exact ``#K t(lam) K / K`` as a polynomial in the residue cardinality q."""
    lam = dominant_representative(rd, _integral(rd, lam))
    num = [0] * (1 + 2 * int(2 * norm_star(rd, lam)) + len(rd.positive_roots))
    for g in double_coset_elements(rd, lam):
        ell = affine_length(rd, g.translation, g.finite_part)
        if ell >= len(num):
            num.extend([0] * (ell + 1 - len(num)))
        num[ell] += 1
    den = poincare_polynomial(rd)
    quot, rem = poly_divmod(num, den)
    if any(rem):
        raise ConsistencyError(
            f"length generating function {num} is not divisible by the Poincare polynomial {list(den)}"
        )
    if any(c < 0 for c in quot):
        raise ConsistencyError(f"double coset polynomial {list(quot)} has a negative coefficient")
    return HeckeCountPolynomial(quot, den)


def coset_growth_ratio(rd: RootDatum, lam: Sequence, q: int) -> Fraction:
    """``#K lam K / K`` divided by ``q^(2 ||lam||*)``."""
    if int(q) != q or q < 2:
        raise ValidationError(f"q must be an integer >= 2, got {q}")
    lam = dominant_representative(rd, _integral(rd, lam))
    two_norm = 2 * norm_star(rd, lam)
    assert two_norm.denominator == 1, "2||lam||* must be an integer for integral lam"
    return Fraction(double_coset_count(rd, lam)(q), q ** int(two_norm))


def sandwich_upper(rd: RootDatum) -> Fraction:
    """``sum_W 2^(l(w) - |Delta+|)``, the q-independent ceiling for the growth ratio."""
    n = len(rd.positive_roots)
    return sum((Fraction(2) ** (w.length - n) for w in weyl_group(rd).elements), Fraction(0))


def quotient_by_central_torus(rd: RootDatum) -> RootDatum:
    """Divide the cocharacter lattice by the cocharacters killed by every root.

    The quotient is realised as the image of ``y -> (<alpha_i, y>)_i`` inside
    ``Z^rank``, which is automatically torsion free.
    """
    if rd.is_semisimple:
        return rd
    basis = _quotient_basis(rd)
    r = rd.rank
    cols = [list(b) for b in basis]  # basis vectors of the image lattice
    mat = [[cols[k][i] for k in range(r)] for i in range(r)]  # columns are the basis vectors
    coroots = []
    for j in range(r):
        image = [rd.cartan_matrix[i][j] for i in range(r)]
        coords = solve(mat, image)
        coroots.append(tuple(int(x) for x in coords))
    roots = tuple(tuple(basis[k][i] for k in range(r)) for i in range(r))
    name = f"{rd.name}/Z" if rd.name else None
    return RootDatum(r, roots, tuple(coroots), name)


def _quotient_basis(rd: RootDatum) -> list[tuple[int, ...]]:
    n = rd.character_lattice_rank
    images = [tuple(a[k] for a in rd.simple_roots) for k in range(n)]
    basis = integer_row_basis(images)
    if len(basis) != rd.rank:
        raise ConsistencyError("root lattice image has unexpected rank")
    return basis


def project_to_quotient(rd: RootDatum, lam: Sequence) -> tuple[int, ...]:
    """Image of an integral cocharacter in ``quotient_by_central_torus(rd)``."""
    lam = _integral(rd, lam)
    if rd.is_semisimple:
        return lam
    basis = _quotient_basis(rd)
    r = rd.rank
    mat = [[basis[k][i] for k in range(r)] for i in range(r)]
    coords = solve(mat, [dot(a, lam) for a in rd.simple_roots])
    return tuple(int(x) for x in coords)


# ---------------------------------------------------------------- classical oracle

_ORACLE_PRIMES = (2, 3, 5, 7, 11, 13)


def lattice_oracle_count(group: str, n: int, q: int) -> int:
    """Classical count of the double coset, independent of affine lengths.

    GL2: Hermite normal forms ``[[a, b], [0, d]]`` with ``ad = q^n``,
    ``0 <= b < d`` and cyclic quotient (``gcd(a, b, d) = 1``).
    SL2: vertices at distance ``2n`` from a base vertex of the
    ``(q+1)``-regular tree, counted as reduced words in ``q + 1`` involutions.
    """
    label = str(group).upper()
    if label not in ("GL2", "SL2"):
        raise ValidationError(f"unsupported oracle group {group!r}; use GL2 or SL2")
    if q not in _ORACLE_PRIMES:
        raise ValidationError(f"oracle needs a prime q <= 13, got {q}")
    if not 0 <= n <= 5:
        raise ValidationError(f"oracle needs 0 <= n <= 5, got {n}")
    if label == "GL2":
        total = 0
        for i in range(n + 1):
            a, d = q**i, q ** (n - i)
            total += sum(1 for b in range(d) if gcd(gcd(a, b), d) == 1)
        return total
    # Words w_1...w_m in letters 0..q with no two equal neighbours.
    ends = [1] * (q + 1) if n else []
    for _ in range(2 * n - 1):
        s = sum(ends)
        ends = [s - e for e in ends]
    return sum(ends) if n else 1
