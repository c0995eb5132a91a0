"""Exact scalars and dense linear algebra over prime fields and the rationals.

Polynomial code elsewhere in the package stores prime-field coefficients as
plain ``int`` residues for speed; :class:`PrimeFieldScalar` is the checked,
user-facing wrapper.  Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

RationalScalar = Fraction

MAX_PRIME = 1 << 16


class ModulusMismatch(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic must be a prime, got {p!r}")
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} is too large (limit is 2^16)")
    return p


class PrimeFieldScalar:
    """An element of F_p, always stored fully reduced."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldScalar is immutable")

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldScalar):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.value + b, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.value - b, self.p)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(b - self.value, self.p)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.value * b, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldScalar(-self.value, self.p)

    def inverse(self) -> PrimeFieldScalar:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return PrimeFieldScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * PrimeFieldScalar(b, self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldScalar(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"PrimeFieldScalar({self.value}, {self.p})"


# --- fields used by the linear algebra -------------------------------------


class Field:
    """Arithmetic on raw field elements (ints mod p, or Fractions)."""

    p: int | None = None

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0


class GF(Field):
    def __init__(self, p: int):
        self.p = check_prime(p)

    def coerce(self, x):
        if isinstance(x, PrimeFieldScalar):
            if x.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{x.p}")
            return x.value
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Rationals(Field):
    def coerce(self, x):
        if isinstance(x, PrimeFieldScalar):
            raise TypeError("cannot coerce a prime-field scalar into Q")
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def field_for(base) -> Field:
    """``"Q"``/``None`` gives QQ, an integer gives GF(p)."""
    if base is None or base == "Q" or isinstance(base, Rationals):
        return QQ
    if isinstance(base, GF):
        return base
    return GF(int(base))


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    field: Field
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, ncols: int | None = None) -> ExactMatrix:
        field = field_for(field)
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("all rows must have the same length")
        return cls(rows, field, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, vec: Sequence) -> tuple:
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, vec):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def rank(self) -> int:
        return len(rref(self.rows, self.field, self.ncols)[1])


def rref(rows, field: Field, ncols: int):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    F = field
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        row = [F.mul(x, inv) for x in mat[r]]
        mat[r] = row
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(x) for x in mat[:r]], pivots


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of the right null space, itself in reduced echelon form."""
    F = m.field
    red, pivots = rref(m.rows, F, m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = F.coerce(1)
        for row, pc in zip(red, pivots):
            if row[f] != 0:
                v[pc] = F.neg(row[f])
        basis.append(v)
    if not basis:
        return []
    red_basis, _ = rref(basis, F, m.ncols)
    return red_basis


class EchelonSpan:
    """Incrementally maintained span of vectors, used to test membership and
    extend bases greedily."""

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec) -> list:
        F = self.field
        v = list(vec)
        for c in range(self.ncols):
            if v[c] != 0 and c in self._rows:
                f = v[c]
                row = self._rows[c]
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Add a vector; return True iff it was independent of the span."""
        F = self.field
        v = self.reduce(vec)
        piv = next((c for c in range(self.ncols) if v[c] != 0), None)
        if piv is None:
            return False
        inv = F.inv(v[piv])
        v = [F.mul(x, inv) for x in v]
        for c, row in self._rows.items():
            if row[piv] != 0:
                f = row[piv]
                self._rows[c] = [F.sub(a, F.mul(f, b)) for a, b in zip(row, v)]
        self._rows[piv] = v
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))


@lru_cache(maxsize=4096)
def _weighted_monomials(weights: tuple, degree: int) -> tuple:
    if not weights:
        return ((),) if degree == 0 else ()
    w, rest = weights[0], weights[1:]
    out = []
    for e in range(degree // w, -1, -1):
        for tail in _weighted_monomials(rest, degree - e * w):
            out.append((e,) + tail)
    return tuple(out)


def weighted_monomials(weights: Sequence[int], degree: int) -> list[tuple]:
    """Exponent vectors e with sum(e_i * w_i) == degree, lexicographically
    descending (largest first exponent first)."""
    weights = tuple(int(w) for w in weights)
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    if degree < 0:
        return []
    return list(_weighted_monomials(weights, degree))


def count_weighted_monomials(weights: Sequence[int], hi: int) -> list[int]:
    """Counts of weighted monomials in degrees 0..hi (coefficients of
    prod 1/(1 - t^w))."""
    counts = [1] + [0] * hi
    for w in weights:
        for n in range(w, hi + 1):
            counts[n] += counts[n - w]
    return counts
