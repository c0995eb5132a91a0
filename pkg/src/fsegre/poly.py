"""Weighted polynomials over F_p, Groebner bases and ideal operations.

Monomial order: weighted degree first, then reverse lexicographic (the last
variable is the smallest).  Rings built for elimination put the eliminated
block first and order it before anything else.

Polynomial text grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom [('^' | '**') INT]
    atom   := INT | NAME | '(' expr ')'

Integer coefficients are reduced mod p.  Whitespace is ignored.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import check_prime
from .errors import ParseError


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    weights: tuple
    p: int
    elim: int = 0  # number of leading variables in the elimination block

    def __post_init__(self):
        check_prime(self.p)
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated variable name in {self.names}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "_keys", {})

    @classmethod
    def make(cls, names: Sequence[str], weights: Sequence[int] | None = None, p: int = 2, elim: int = 0):
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return cls(names, tuple(int(w) for w in weights), int(p), elim)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def wdeg(self, exp: tuple) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def key(self, exp: tuple):
        cache = self._keys
        k = cache.get(exp)
        if k is None:
            if self.elim:
                head, tail = exp[: self.elim], exp[self.elim:]
                k = (sum(head), tuple(-x for x in reversed(head)),
                     sum(e * w for e, w in zip(tail, self.weights[self.elim:])),
                     tuple(-x for x in reversed(tail)))
            else:
                k = (self.wdeg(exp), tuple(-x for x in reversed(exp)))
            cache[exp] = k
        return k

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name_or_index) -> Poly:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list[Poly]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp: Sequence[int], c: int = 1) -> Poly:
        return Poly(self, {tuple(exp): c})

    def parse(self, text: str) -> Poly:
        return _Parser(self, text).parse()

    def __call__(self, text) -> Poly:
        if isinstance(text, Poly):
            return text
        if isinstance(text, int):
            return self.const(text)
        return self.parse(text)


class Poly:
    """Immutable polynomial: a dict from exponent tuples to residues mod p."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        p = ring.p
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                clean[e] = c
        self.ring = ring
        self.terms = clean
        self._lm = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._lm = None
        return obj

    # -- structure --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def lm(self) -> tuple:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self) -> int:
        return self.terms[self.lm()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def degrees(self) -> set:
        return {self.ring.wdeg(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Weighted degree (maximum over terms)."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: tuple, c: int) -> Poly:
        p = self.ring.p
        return Poly._raw(self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c % p
                                     for e, v in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(pow(self.lc(), -1, self.ring.p))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def change_ring(self, ring: PolyRing, positions: Sequence[int] | None = None) -> Poly:
        """Re-embed into ``ring``; variable i goes to ``positions[i]``."""
        if positions is None:
            positions = [ring.names.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    ne[positions[i]] += x
            out[tuple(ne)] = c
        return Poly(ring, out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, p={self.ring.p})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.names
    pieces = []
    for e, c in f.sorted_terms():
        neg = c > p // 2 and p > 2
        mag = p - c if neg else c
        factors = []
        for n, x in zip(names, e):
            if x == 1:
                factors.append(n)
            elif x > 1:
                factors.append(f"{n}^{x}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        pieces.append(("-" if neg else "+", "*".join(factors)))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|\S))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("int", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3)))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in polynomial {self.text!r}")

    def parse(self) -> Poly:
        if not self.toks:
            self.fail("empty input")
        f = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            kind, val = self.take()
            if kind != "int":
                self.fail("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring.names:
                self.fail(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail(f"unexpected token {val!r}" if kind else "unexpected end of input")


def infer_variables(text: str) -> list[str]:
    """Variable names in order of first appearance."""
    seen = []
    for m in _TOKEN.finditer(text):
        n = m.group(2)
        if n and n not in seen:
            seen.append(n)
    return seen


# --- Groebner bases ----------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def reduce_poly(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Full reduction of f by a list of monic polynomials."""
    if not f.terms or not basis:
        return f
    ring = f.ring
    p = ring.p
    key = ring.key
    lms = [g.lm() for g in basis]
    work = dict(f.terms)
    rem = {}
    # max-heap of candidate monomials; stale entries are skipped
    heap = [(_neg_key(key(e)), e) for e in work]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, 0)
        if not c:
            continue
        for g, m in zip(basis, lms):
            if _divides(m, e):
                shift = tuple(a - b for a, b in zip(e, m))
                for ge, gc in g.terms.items():
                    if ge == m:
                        continue
                    ne = tuple(a + b for a, b in zip(ge, shift))
                    old = work.get(ne)
                    v = ((old or 0) - c * gc) % p
                    if v:
                        work[ne] = v
                        if old is None:
                            heapq.heappush(heap, (_neg_key(key(ne)), ne))
                    elif old is not None:
                        del work[ne]
                break
        else:
            rem[e] = c
    return Poly._raw(ring, rem)


class _Rev:
    """Reverses comparison so heapq gives the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _neg_key(k):
    return _Rev(k)


def _spoly(f: Poly, g: Poly) -> Poly:
    m = _lcm(f.lm(), g.lm())
    a = tuple(x - y for x, y in zip(m, f.lm()))
    b = tuple(x - y for x, y in zip(m, g.lm()))
    return f.mul_term(a, 1) - g.mul_term(b, 1)


def buchberger(gens: Iterable[Poly]) -> list[Poly]:
    """Reduced Groebner basis, with the product and chain criteria."""
    G: list[Poly] = []
    for f in gens:
        if f:
            G.append(f.monic())
    if not G:
        return []
    ring = G[0].ring
    key = ring.key
    pending: set = set()
    heap: list = []

    def push(i, j):
        pending.add((i, j))
        heapq.heappush(heap, (key(_lcm(G[i].lm(), G[j].lm())), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        mi, mj = G[i].lm(), G[j].lm()
        if _coprime(mi, mj):
            continue
        m = _lcm(mi, mj)
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(G[k].lm(), m):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        h = reduce_poly(_spoly(G[i], G[j]), G)
        if h:
            G.append(h.monic())
            n = len(G) - 1
            for k in range(n):
                push(k, n)
    return interreduce(G)


def interreduce(G: Sequence[Poly]) -> list[Poly]:
    G = [g.monic() for g in G if g]
    minimal = []
    for i, g in enumerate(G):
        m = g.lm()
        dominated = False
        for j, h in enumerate(G):
            if j == i:
                continue
            hm = h.lm()
            if _divides(hm, m) and (hm != m or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lead = Poly._raw(g.ring, {g.lm(): g.lc()})
        tail = Poly._raw(g.ring, {e: c for e, c in g.terms.items() if e != g.lm()})
        out.append((lead + reduce_poly(tail, others)).monic())
    return sorted(out, key=lambda g: g.ring.key(g.lm()))


class Ideal:
    """Ideal of a polynomial ring, with a write-once cached Groebner basis."""

    def __init__(self, gens: Iterable, ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens or not isinstance(gens[0], Poly):
                raise ValueError("ring is required when generators are not Poly objects")
            ring = gens[0].ring
        self.ring = ring
        polys = []
        for g in gens:
            g = ring(g)
            if g.ring != ring:
                raise ValueError("generators must share one ring")
            if g:
                polys.append(g)
        self.gens = tuple(polys)
        self._gb = None

    def groebner_basis(self) -> list[Poly]:
        if self._gb is None:
            self._gb = tuple(buchberger(self.gens))
        return list(self._gb)

    def normal_form(self, f) -> Poly:
        return reduce_poly(self.ring(f), self.groebner_basis())

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal(self.gens + other.gens, self.ring)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner_basis())

    def leading_monomials(self) -> list[tuple]:
        return [g.lm() for g in self.groebner_basis()]

    def standard_monomials(self, degree: int) -> list[tuple]:
        from .arith import weighted_monomials
        lms = self.leading_monomials()
        return [e for e in weighted_monomials(self.ring.weights, degree)
                if not any(_divides(m, e) for m in lms)]

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}, p={self.ring.p})"


def groebner(ideal: Ideal) -> list[Poly]:
    return ideal.groebner_basis()


def normal_form(f, ideal: Ideal) -> Poly:
    return ideal.normal_form(f)


def ideal_member(f, ideal: Ideal) -> bool:
    return ideal.contains(f)


def is_power_of(q: int, p: int) -> int | None:
    """Return e with q == p**e, or None."""
    if q < 1:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


def bracket_power(ideal: Ideal, q: int) -> Ideal:
    if is_power_of(q, ideal.ring.p) is None:
        raise ValueError(f"{q} is not a power of the characteristic {ideal.ring.p}")
    if q == 1:
        return ideal
    return Ideal([g ** q for g in ideal.gens], ideal.ring)


def frobenius_power(f: Poly, e: int) -> Poly:
    """f^(p^e) via the freshman's dream."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    q = f.ring.p ** e
    p = f.ring.p
    return Poly._raw(f.ring, {tuple(x * q for x in exp): pow(c, q, p) for exp, c in f.terms.items()})


def divide_exact(f: Poly, h: Poly) -> Poly:
    """Quotient f / h; raises if h does not divide f."""
    if not h:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    p = ring.p
    hm, hc = h.lm(), h.lc()
    inv = pow(hc, -1, p)
    q: dict = {}
    r = f
    while r:
        m = r.lm()
        if not _divides(hm, m):
            raise ArithmeticError(f"{h} does not divide {f}")
        shift = tuple(a - b for a, b in zip(m, hm))
        c = r.lc() * inv % p
        q[shift] = c
        r = r - h.mul_term(shift, c)
    return Poly(ring, q)


def _tagged_ring(ring: PolyRing) -> PolyRing:
    tag = "_t"
    while tag in ring.names:
        tag += "_"
    return PolyRing((tag,) + ring.names, (0,) + ring.weights, ring.p, elim=1)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    ring = I.ring
    big = _tagged_ring(ring)
    pos = list(range(1, ring.nvars + 1))
    t = big.gen(0)
    gens = [t * g.change_ring(big, pos) for g in I.gens]
    gens += [(1 - t) * g.change_ring(big, pos) for g in J.gens]
    out = []
    for g in buchberger(gens):
        if all(e[0] == 0 for e in g.terms):
            out.append(Poly(ring, {e[1:]: c for e, c in g.terms.items()}))
    return Ideal(out, ring)


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J, as the intersection of the single-generator colons
    I : (h) = (I ∩ (h)) / h."""
    ring = I.ring
    if not J.gens:
        return Ideal([ring.one()], ring)
    result = None
    for h in J.gens:
        inter = intersect(I, Ideal([h], ring))
        part = Ideal([divide_exact(g, h) for g in inter.gens], ring)
        result = part if result is None else intersect(result, part)
    return Ideal(result.groebner_basis(), ring)


def frobenius_bracket_maximal(ring: PolyRing, q: int) -> Ideal:
    """(x_1^q, ..., x_n^q)."""
    return Ideal([g ** q for g in ring.gens()], ring)
