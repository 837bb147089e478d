"""Root data, finite Weyl groups, and the cocharacter norm ``||mu||*``.

Coordinates: characters live in ``X*(T) = Z^n`` and cocharacters in
``X_*(T) = Z^n`` with the standard dot product as pairing.  For the named
simply connected types the cocharacter basis is the basis of simple
coroots, so ``alpha_i^vee = e_i`` and ``alpha_i`` is the i-th row of the
Cartan matrix.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import ResourceError, ValidationError
from .exact import dot, identity, mat_vec, solve

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]

DEFAULT_WEYL_CAP = 10**6
_ROOT_CAP = 10**4
JSON_VERSION = 1


def _as_int_vec(v: Iterable, what: str) -> IntVec:
    out = []
    for x in v:
        if isinstance(x, bool) or Fraction(x).denominator != 1:
            raise ValidationError(f"{what}: entry {x!r} is not an integer")
        out.append(int(x))
    return tuple(out)


@dataclass(frozen=True)
class Root:
    root: IntVec
    coroot: IntVec
    coeffs: IntVec  # coefficients in the simple roots

    @property
    def positive(self) -> bool:
        return any(c > 0 for c in self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class RootDatum:
    character_lattice_rank: int
    simple_roots: tuple[IntVec, ...]
    simple_coroots: tuple[IntVec, ...]
    name: str | None = None

    def __post_init__(self):
        n = self.character_lattice_rank
        if n < 0:
            raise ValidationError("character_lattice_rank must be non-negative")
        roots = tuple(_as_int_vec(r, "simple root") for r in self.simple_roots)
        coroots = tuple(_as_int_vec(c, "simple coroot") for c in self.simple_coroots)
        object.__setattr__(self, "simple_roots", roots)
        object.__setattr__(self, "simple_coroots", coroots)
        if len(roots) != len(coroots):
            raise ValidationError(
                f"{len(roots)} simple roots but {len(coroots)} simple coroots"
            )
        for i, (a, c) in enumerate(zip(roots, coroots)):
            if len(a) != n or len(c) != n:
                raise ValidationError(f"simple root/coroot {i} does not have length {n}")
        cm = self.cartan_matrix
        r = len(roots)
        for i in range(r):
            if cm[i][i] != 2:
                raise ValidationError(f"Cartan entry C[{i}][{i}] = {cm[i][i]}, expected 2")
            for j in range(r):
                if i == j:
                    continue
                if cm[i][j] > 0:
                    raise ValidationError(f"Cartan entry C[{i}][{j}] = {cm[i][j]} is positive")
                if (cm[i][j] == 0) != (cm[j][i] == 0):
                    raise ValidationError(
                        f"Cartan entries C[{i}][{j}] = {cm[i][j]} and C[{j}][{i}] = {cm[j][i]}"
                        " are not simultaneously zero"
                    )
        # Forces closure of the root system; raises for infinite types.
        self.roots

    @property
    def rank(self) -> int:
        """Semisimple rank (number of simple roots)."""
        return len(self.simple_roots)

    @property
    def is_semisimple(self) -> bool:
        return self.rank == self.character_lattice_rank

    @cached_property
    def cartan_matrix(self) -> IntMat:
        return tuple(
            tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots
        )

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots, positive ones first, each block ordered by height then coefficients."""
        r = self.rank
        cm = self.cartan_matrix
        # Track (root coefficients, coroot coefficients) under simple reflections.
        start = [(_unit(r, i), _unit(r, i)) for i in range(r)]
        seen = set(start)
        queue = deque(start)
        while queue:
            c, d = queue.popleft()
            for i in range(r):
                pc = sum(c[j] * cm[j][i] for j in range(r))  # <beta, alpha_i^vee>
                pd = sum(cm[i][j] * d[j] for j in range(r))  # <alpha_i, beta^vee>
                c2 = tuple(x - (pc if k == i else 0) for k, x in enumerate(c))
                d2 = tuple(x - (pd if k == i else 0) for k, x in enumerate(d))
                if (c2, d2) not in seen:
                    if len(seen) >= _ROOT_CAP:
                        raise ValidationError(
                            f"Cartan matrix {cm} does not generate a finite root system"
                        )
                    seen.add((c2, d2))
                    queue.append((c2, d2))
        out = []
        for c, d in seen:
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                raise ValidationError(f"Cartan matrix {cm} is not of finite type")
            root = tuple(sum(c[j] * self.simple_roots[j][k] for j in range(r))
                         for k in range(self.character_lattice_rank))
            coroot = tuple(sum(d[j] * self.simple_coroots[j][k] for j in range(r))
                           for k in range(self.character_lattice_rank))
            out.append(Root(root, coroot, c))
        pos = sorted((x for x in out if x.positive), key=lambda x: (x.height, tuple(-y for y in x.coeffs)))
        neg = [Root(tuple(-y for y in x.root), tuple(-y for y in x.coroot),
                    tuple(-y for y in x.coeffs)) for x in pos]
        if len(pos) * 2 != len(out) or set(neg) != {x for x in out if not x.positive}:
            raise ValidationError(f"root system of {cm} is not closed under negation")
        return tuple(pos) + tuple(neg)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(x for x in self.roots if x.positive)

    @cached_property
    def _root_index(self) -> dict[IntVec, Root]:
        return {x.root: x for x in self.roots}

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self._root_index

    def is_positive_root(self, v: Sequence) -> bool:
        x = self._root_index.get(tuple(v))
        return x is not None and x.positive

    def to_json_dict(self) -> dict:
        return {
            "version": JSON_VERSION,
            "name": self.name,
            "rank": self.character_lattice_rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(c) for c in self.simple_coroots],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: str | dict) -> RootDatum:
        d = json.loads(doc) if isinstance(doc, str) else dict(doc)
        if d.get("version", JSON_VERSION) != JSON_VERSION:
            raise ValidationError(f"unsupported root datum document version {d.get('version')!r}")
        unknown = set(d) - {"version", "name", "rank", "simple_roots", "simple_coroots"}
        if unknown:
            raise ValidationError(f"unknown root datum keys: {sorted(unknown)}")
        try:
            return cls(int(d["rank"]), tuple(map(tuple, d["simple_roots"])),
                       tuple(map(tuple, d["simple_coroots"])), d.get("name"))
        except KeyError as exc:
            raise ValidationError(f"root datum document is missing {exc}") from None


def _unit(n: int, i: int) -> IntVec:
    return tuple(int(k == i) for k in range(n))


# ---------------------------------------------------------------- named types

def cartan_matrix_of_type(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix with the convention ``C[i][j] = <alpha_i, alpha_j^vee>``."""
    if n < 1:
        raise ValidationError(f"type {letter}{n} needs rank at least 1")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if letter == "A":
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
    elif letter in "BC":
        if n < 2:
            return cartan_matrix_of_type("A", 1)
        for i in range(n - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        # B: last root short, C: last root long.
        if letter == "B":
            c[n - 2][n - 1] = -2
        else:
            c[n - 1][n - 2] = -2
    elif letter == "D":
        if n < 2:
            raise ValidationError("type D needs rank at least 2")
        if n == 2:
            return c
        for i in range(n - 2):
            c[i][i + 1] = c[i + 1][i] = -1
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    elif letter == "G":
        if n != 2:
            raise ValidationError("type G exists only in rank 2")
        c = [[2, -1], [-3, 2]]
    else:
        raise ValidationError(f"unsupported Cartan type {letter}{n}")
    return c


def simply_connected(letter: str, n: int) -> RootDatum:
    c = cartan_matrix_of_type(letter, n)
    return RootDatum(n, tuple(tuple(row) for row in c), identity(n), f"{letter}{n}")


def general_linear(n: int) -> RootDatum:
    roots = tuple(tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1))
    return RootDatum(n, roots, roots, f"GL{n}")


def special_orthogonal(N: int) -> RootDatum:
    """SO(N) in the standard coordinates ``e_1..e_m`` of its diagonal torus."""
    m = N // 2
    if N < 2:
        raise ValidationError("SO(N) needs N >= 2")
    e = lambda i: _unit(m, i)  # noqa: E731
    sub = lambda a, b: tuple(x - y for x, y in zip(a, b))  # noqa: E731
    roots = [sub(e(i), e(i + 1)) for i in range(m - 1)]
    coroots = list(roots)
    if N % 2 == 1:
        roots.append(e(m - 1))
        coroots.append(tuple(2 * x for x in e(m - 1)))
    elif m >= 2:
        last = tuple(x + y for x, y in zip(e(m - 2), e(m - 1)))
        roots.append(last)
        coroots.append(last)
    return RootDatum(m, tuple(roots), tuple(coroots), f"SO{N}")


def torus(n: int) -> RootDatum:
    return RootDatum(n, (), (), f"T{n}")


def product(*data: RootDatum) -> RootDatum:
    """Direct product: lattices and simple roots concatenated block-diagonally."""
    total = sum(d.character_lattice_rank for d in data)
    roots, coroots, off = [], [], 0
    for d in data:
        n = d.character_lattice_rank
        pad = lambda v: (0,) * off + tuple(v) + (0,) * (total - off - n)  # noqa: E731
        roots += [pad(a) for a in d.simple_roots]
        coroots += [pad(c) for c in d.simple_coroots]
        off += n
    name = "×".join(d.name or "?" for d in data)
    return RootDatum(total, tuple(roots), tuple(coroots), name)


_FACTOR = re.compile(r"^(GL|SO|SL|T|[ABCDG])(\d+)$")


def _build_factor(tok: str) -> RootDatum:
    m = _FACTOR.match(tok.strip().upper())
    if not m:
        raise ValidationError(f"unsupported Cartan type {tok!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "GL":
        if n < 1:
            raise ValidationError("GL_n needs n >= 1")
        return general_linear(n)
    if kind == "SO":
        return special_orthogonal(n)
    if kind == "SL":
        if n < 2:
            raise ValidationError("SL_n needs n >= 2")
        d = simply_connected("A", n - 1)
        return RootDatum(d.character_lattice_rank, d.simple_roots, d.simple_coroots, f"SL{n}")
    if kind == "T":
        return torus(n)
    return simply_connected(kind, n)


def build_root_datum(label) -> RootDatum:
    """Build a root datum from a type label (``"A2"``, ``"A1xA1"``, ``"GL2"``,
    ``"SO5"``, ``"T1"``), a JSON-style dict, or an existing datum."""
    if isinstance(label, RootDatum):
        return label
    if isinstance(label, dict):
        return RootDatum.from_json(label)
    if not isinstance(label, str) or not label.strip():
        raise ValidationError(f"cannot build a root datum from {label!r}")
    parts = re.split(r"\s*[x×*]\s*", label.strip(), flags=re.IGNORECASE)
    factors = [_build_factor(p) for p in parts]
    if len(factors) == 1:
        return factors[0]
    return product(*factors)


# ---------------------------------------------------------------- Weyl group

@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: IntMat  # action on cocharacters
    char_matrix: IntMat  # action on characters (inverse transpose)

    @property
    def length(self) -> int:
        return len(self.word)

    def act_coweight(self, v: Sequence) -> tuple:
        return mat_vec(self.matrix, v)

    def act_weight(self, v: Sequence) -> tuple:
        return mat_vec(self.char_matrix, v)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


@dataclass(frozen=True)
class WeylGroup:
    elements: tuple[WeylElement, ...]
    long_element: WeylElement

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def by_matrix(self) -> dict[IntMat, WeylElement]:
        return {w.matrix: w for w in self.elements}

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.by_matrix[_mul(a.matrix, b.matrix)]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self.by_matrix[_mul_word_inverse(a)]


def _mul(a: IntMat, b: IntMat) -> IntMat:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _mul_word_inverse(a: WeylElement) -> IntMat:
    # For a Weyl element the coweight action is inverse-transpose of the weight action.
    return tuple(zip(*a.char_matrix))


def reflection_matrix(rd: RootDatum, i: int) -> IntMat:
    """Matrix of ``s_i`` on cocharacters: ``y -> y - <alpha_i, y> alpha_i^vee``."""
    a, c = rd.simple_roots[i], rd.simple_coroots[i]
    n = rd.character_lattice_rank
    return tuple(tuple(int(p == q) - c[p] * a[q] for q in range(n)) for p in range(n))


def weyl_group(rd: RootDatum, cap: int = DEFAULT_WEYL_CAP) -> WeylGroup:
    """Enumerate W ordered by length, then lexicographically by reduced word.

    Each element carries its lexicographically smallest reduced word.
    """
    return _weyl_group_cached(rd, cap)


@lru_cache(maxsize=64)
def _weyl_group_cached(rd: RootDatum, cap: int) -> WeylGroup:
    n = rd.character_lattice_rank
    gens = [reflection_matrix(rd, i) for i in range(rd.rank)]
    gens_t = [tuple(zip(*g)) for g in gens]
    e = WeylElement((), identity(n), identity(n))
    seen = {e.matrix}
    elements = [e]
    layer = [e]
    while layer:
        nxt = []
        for w in layer:
            for i, g in enumerate(gens):
                m = _mul(w.matrix, g)
                if m in seen:
                    continue
                if len(seen) >= cap:
                    raise ResourceError(f"Weyl group of {rd.name or 'datum'} exceeds cap of {cap} elements")
                seen.add(m)
                nxt.append(WeylElement(w.word + (i,), m, _mul(w.char_matrix, gens_t[i])))
        elements.extend(nxt)
        layer = nxt
    return WeylGroup(tuple(elements), elements[-1])


def weyl_length(rd: RootDatum, w: WeylElement) -> int:
    """Inversion count ``#{alpha > 0 : w alpha < 0}``."""
    return sum(1 for a in rd.positive_roots if not rd.is_positive_root(w.act_weight(a.root)))


# ---------------------------------------------------------------- rho and norms

@lru_cache(maxsize=64)
def rho(rd: RootDatum) -> tuple[Fraction, ...]:
    n = rd.character_lattice_rank
    return tuple(Fraction(sum(a.root[k] for a in rd.positive_roots), 2) for k in range(n))


@lru_cache(maxsize=64)
def _rho_orbit(rd: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    r = rho(rd)
    return tuple(sorted({w.act_weight(r) for w in weyl_group(rd).elements}))


def _coweight(rd: RootDatum, mu: Sequence) -> tuple[Fraction, ...]:
    v = tuple(Fraction(x) for x in mu)
    if len(v) != rd.character_lattice_rank:
        raise ValidationError(
            f"coweight {list(mu)} has length {len(v)}, expected {rd.character_lattice_rank}"
        )
    return v


def pairing(weight: Sequence, coweight: Sequence):
    return dot(weight, coweight)


@lru_cache(maxsize=64)
def _rho_orbit_scaled(rd: RootDatum) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """The rho-orbit times a common denominator L, as integer vectors."""
    orbit = _rho_orbit(rd)
    L = 1
    for x in orbit:
        for c in x:
            L = L * c.denominator // gcd(L, c.denominator)
    return L, tuple(tuple(int(c * L) for c in x) for x in orbit)


def norm_star(rd: RootDatum, mu: Sequence) -> Fraction:
    """``max_{w in W} <w mu, rho>`` by brute force over the Weyl orbit of rho."""
    v = _coweight(rd, mu)
    # <w mu, rho> = <mu, w^{-1} rho>, so scan the rho-orbit once.
    if all(c.denominator == 1 for c in v):
        L, orbit = _rho_orbit_scaled(rd)
        iv = [int(c) for c in v]
        return Fraction(max((sum(a * b for a, b in zip(x, iv)) for x in orbit), default=0), L)
    return max((dot(x, v) for x in _rho_orbit(rd)), default=Fraction(0))


def norm_star_adjoint(rd: RootDatum, mu: Sequence) -> Fraction:
    """Half the sum of the positive values ``<alpha, mu>`` over all roots."""
    v = _coweight(rd, mu)
    return Fraction(sum(max(dot(a.root, v), 0) for a in rd.roots), 2)


def dominant_representative(rd: RootDatum, mu: Sequence) -> tuple[Fraction, ...]:
    """The dominant element of the Weyl orbit of ``mu``."""
    v = list(_coweight(rd, mu))
    while True:
        for a, c in zip(rd.simple_roots, rd.simple_coroots):
            p = dot(a, v)
            if p < 0:
                v = [x - p * y for x, y in zip(v, c)]
                break
        else:
            return tuple(v)


def is_dominant(rd: RootDatum, mu: Sequence) -> bool:
    return all(dot(a, mu) >= 0 for a in rd.simple_roots)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def fundamental_coweight(rd: RootDatum, i: int) -> tuple[Fraction, ...]:
    """Rational coweight in the coroot span with ``<alpha_j, w_i> = delta_ij``."""
    r = rd.rank
    if not 0 <= i < r:
        raise ValidationError(f"simple root index {i} out of range for rank {r}")
    d = solve(rd.cartan_matrix, [int(j == i) for j in range(r)])
    n = rd.character_lattice_rank
    return tuple(sum(d[j] * rd.simple_coroots[j][k] for j in range(r)) for k in range(n))


def weyl_orbit(rd: RootDatum, mu: Sequence) -> list[tuple]:
    v = _coweight(rd, mu)
    return sorted({w.act_coweight(v) for w in weyl_group(rd).elements})
