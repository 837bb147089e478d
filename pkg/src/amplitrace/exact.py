"""Small exact-arithmetic helpers: rational linear algebra and symbolic prime powers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def as_fraction_vector(v: Iterable) -> Vec:
    return tuple(Fraction(x) for x in v)


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple, ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of {x : rows @ x = 0} over Q."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][f]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vec:
    """Unique solution of a square nonsingular rational system."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(m[i][n] for i in range(n))


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def integer_row_basis(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite basis of the Z-span of integer row vectors."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list[int]] = []
    c = 0
    while m and c < ncols:
        nz = [r for r in m if r[c] != 0]
        if not nz:
            c += 1
            continue
        # Euclid on column c across the remaining rows.
        while sum(1 for r in m if r[c] != 0) > 1:
            m.sort(key=lambda r: (r[c] == 0, abs(r[c])))
            piv = m[0]
            for i in range(1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // piv[c]
                    m[i] = [a - q * b for a, b in zip(m[i], piv)]
        m.sort(key=lambda r: (r[c] == 0, abs(r[c])))
        piv = m.pop(0)
        if piv[c] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        m = [r for r in m if any(r)]
        c += 1
    return [tuple(r) for r in out]


@dataclass(frozen=True)
class ExactPower:
    """The positive real number ``coeff * base**exponent`` kept symbolic.

    Exponents are rational, so comparisons are decided with integer powers
    rather than floats.
    """

    coeff: Fraction
    base: int
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.coeff <= 0 or self.base < 1:
            raise ValueError("ExactPower represents positive reals only")

    @property
    def is_rational(self) -> bool:
        return self.exponent.denominator == 1 or self.base == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        e = int(self.exponent) if self.base != 1 else 0
        return self.coeff * Fraction(self.base) ** e

    def __float__(self) -> float:
        return float(self.coeff) * float(self.base) ** float(self.exponent)

    def _cmp(self, other) -> int:
        if not isinstance(other, ExactPower):
            other = ExactPower(Fraction(other), 1, Fraction(0)) if other > 0 else None
            if other is None:
                return 1
        # Compare c1 * b1^e1 with c2 * b2^e2 by raising both to a common denominator.
        d = self.exponent.denominator * other.exponent.denominator
        lhs = self.coeff ** d * Fraction(self.base) ** int(self.exponent * d)
        rhs = other.coeff ** d * Fraction(other.base) ** int(other.exponent * d)
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if isinstance(other, (ExactPower, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash(float(self))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.as_fraction())
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{c}{self.base}^({self.exponent})"
