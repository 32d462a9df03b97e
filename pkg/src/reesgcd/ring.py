"""Sparse multivariate polynomial arithmetic over a prime field.

Every computation runs inside F_p[x1..x{d+1}, T1..T{d+1}, t].  The x-block
and the T-block carry the bigrading deg x_i = (1, 0), deg T_i = (0, 1);
the trailing variable t is reserved for elimination constructions and does
not count toward the bigrading.

A polynomial is an immutable tuple of terms (key, exponent vector, coeff),
sorted strictly decreasing under graded reverse-lexicographic order on all
variables.  Coefficients are integers in [1, p); the zero polynomial is
the empty tuple.  Monomial orders are encoded as integer weight vectors so
that the sort key of a product is the sum of the factors' keys.
"""

from __future__ import annotations

import re
from collections import namedtuple

DEFAULT_PRIME = 32003

# Packed-field base for order keys.  Every field of a key is a signed
# integer bounded by the total degree, so 2^24 leaves ample headroom and
# keeps key comparison equivalent to field-by-field comparison.
_FIELD_BITS = 24
_BASE = 1 << _FIELD_BITS

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in _MR_BASES:
        y = pow(a, r, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


class MonomialOrder:
    """A total order on exponent vectors given by an additive integer key.

    key(e) = sum_i e_i * weights[i], with the weights packed so that
    integer comparison of keys realizes a block order that is graded
    reverse-lexicographic inside each block.  Keys add under monomial
    multiplication.
    """

    __slots__ = ("name", "weights", "_cache")

    def __init__(self, name, weights):
        self.name = name
        self.weights = tuple(weights)
        self._cache = {}

    def key(self, exp):
        k = self._cache.get(exp)
        if k is None:
            k = 0
            for e, w in zip(exp, self.weights):
                if e:
                    k += e * w
            self._cache[exp] = k
        return k

    def __repr__(self):
        return "MonomialOrder(%r)" % (self.name,)


def _block_weights(blocks, nslots):
    """Weight vector for a block elimination order.

    blocks lists variable slots by decreasing priority; within a block the
    comparison is graded reverse-lexicographic with respect to the given
    slot sequence.
    """
    nfields = sum(len(b) + 1 for b in blocks)
    w = [0] * nslots
    pos = nfields
    for block in blocks:
        pos -= 1
        deg_w = _BASE ** pos
        for v in block:
            w[v] += deg_w
        for v in reversed(block):
            pos -= 1
            w[v] -= _BASE ** pos
    return w


BiDegree = namedtuple("BiDegree", ["x", "t"])

# Marker returned by Polynomial.bidegree() for the zero polynomial, which
# is bihomogeneous of every bidegree.
ZERO_BIDEGREE = object()


class ParseError(ValueError):
    """Raised on malformed polynomial input; .pos is the source offset."""

    def __init__(self, message, pos):
        super().__init__("%s (at offset %d)" % (message, pos))
        self.pos = pos


_TOKEN_RE = re.compile(r"\d+|[A-Za-z_][A-Za-z0-9_]*|[*^+\-]|\S")


class PolyRing:
    """F_p[x1..x{d+1}, T1..T{d+1}, t] for a fixed prime p and integer d >= 0."""

    __slots__ = (
        "p", "d", "n", "nvars", "names", "slot_of", "x_slots", "t_slots",
        "aux_slot", "grevlex", "elim_aux", "elim_x", "zero", "one",
        "_half", "_vars",
    )

    _cache = {}

    def __init__(self, p=DEFAULT_PRIME, d=4):
        if not is_prime(p):
            raise ValueError("modulus %d is not prime" % p)
        if d < 0:
            raise ValueError("d must be nonnegative")
        self.p = p
        self.d = d
        n = d + 1
        self.n = n
        self.nvars = 2 * n + 1
        self.names = tuple(
            ["x%d" % i for i in range(1, n + 1)]
            + ["T%d" % i for i in range(1, n + 1)]
            + ["t"]
        )
        self.slot_of = {name: i for i, name in enumerate(self.names)}
        self.x_slots = tuple(range(n))
        self.t_slots = tuple(range(n, 2 * n))
        self.aux_slot = 2 * n
        all_slots = list(range(self.nvars))
        self.grevlex = MonomialOrder(
            "grevlex", _block_weights([all_slots], self.nvars))
        self.elim_aux = MonomialOrder(
            "elim-aux", _block_weights([[self.aux_slot], all_slots[:-1]],
                                       self.nvars))
        self.elim_x = MonomialOrder(
            "elim-x", _block_weights([list(self.x_slots),
                                      list(self.t_slots) + [self.aux_slot]],
                                     self.nvars))
        self.zero = Polynomial(self, ())
        e0 = (0,) * self.nvars
        self.one = Polynomial(self, ((0, e0, 1),))
        self._half = p // 2
        self._vars = None

    @classmethod
    def get(cls, p=DEFAULT_PRIME, d=4):
        ring = cls._cache.get((p, d))
        if ring is None:
            ring = cls(p, d)
            cls._cache[(p, d)] = ring
        return ring

    def __repr__(self):
        return "PolyRing(p=%d, d=%d)" % (self.p, self.d)

    def compatible(self, other):
        return self.p == other.p and self.d == other.d

    def _unit_exp(self, slot, e=1):
        exp = [0] * self.nvars
        exp[slot] = e
        return tuple(exp)

    def term(self, coeff, exp):
        c = coeff % self.p
        if c == 0:
            return self.zero
        exp = tuple(exp)
        return Polynomial(self, ((self.grevlex.key(exp), exp, c),))

    def monomial(self, exp):
        return self.term(1, exp)

    def const(self, c):
        return self.term(c, (0,) * self.nvars)

    def variable(self, slot):
        return self.monomial(self._unit_exp(slot))

    def x(self, i):
        """The variable x_i, 1-based, 1 <= i <= d+1."""
        if not 1 <= i <= self.n:
            raise IndexError("x index out of range: %d" % i)
        return self.variable(i - 1)

    def T(self, i):
        """The variable T_i, 1-based, 1 <= i <= d+1."""
        if not 1 <= i <= self.n:
            raise IndexError("T index out of range: %d" % i)
        return self.variable(self.n + i - 1)

    @property
    def aux(self):
        return self.variable(self.aux_slot)

    def variables(self):
        if self._vars is None:
            self._vars = tuple(self.variable(i) for i in range(self.nvars))
        return self._vars

    def from_dict(self, coeffs):
        """Polynomial from a map exponent tuple -> integer coefficient."""
        key = self.grevlex.key
        terms = []
        for exp, c in coeffs.items():
            c %= self.p
            if c:
                exp = tuple(exp)
                terms.append((key(exp), exp, c))
        terms.sort(reverse=True)
        return Polynomial(self, tuple(terms))

    def poly(self, value):
        """Coerce a string, integer, or Polynomial into this ring."""
        if isinstance(value, Polynomial):
            if value.ring is self:
                return value
            if not self.compatible(value.ring):
                raise ValueError("polynomial from incompatible ring")
            return Polynomial(self, value.terms)
        if isinstance(value, int):
            return self.const(value)
        return self.parse(value)

    def parse(self, src):
        """Parse a signed sum of terms ``c*v1^e1*...*vk^ek``.

        Whitespace is insignificant; '^' takes a nonnegative integer
        exponent; unknown variable names are rejected.
        """
        tokens = []
        for mo in _TOKEN_RE.finditer(src):
            tokens.append((mo.group(0), mo.start()))
        if not tokens:
            raise ParseError("empty input", 0)
        coeffs = {}
        i = 0
        ntok = len(tokens)
        while i < ntok:
            sign = 1
            tok, pos = tokens[i]
            if tok in "+-":
                if tok == "-":
                    sign = -1
                i += 1
                if i >= ntok:
                    raise ParseError("dangling sign", pos)
            coeff = sign
            exp = [0] * self.nvars
            while True:
                tok, pos = tokens[i]
                if tok.isdigit():
                    coeff *= int(tok)
                    i += 1
                elif tok in self.slot_of:
                    slot = self.slot_of[tok]
                    i += 1
                    e = 1
                    if i < ntok and tokens[i][0] == "^":
                        i += 1
                        if i >= ntok or not tokens[i][0].isdigit():
                            raise ParseError("malformed exponent", pos)
                        e = int(tokens[i][0])
                        i += 1
                    exp[slot] += e
                elif tok[0].isalpha() or tok[0] == "_":
                    raise ParseError("unknown variable %r" % tok, pos)
                elif tok == "^":
                    raise ParseError(
                        "exponent allowed only on a variable", pos)
                else:
                    raise ParseError("unexpected token %r" % tok, pos)
                if i < ntok and tokens[i][0] == "*":
                    i += 1
                    if i >= ntok:
                        raise ParseError("dangling '*'", pos)
                    continue
                break
            if i < ntok and tokens[i][0] not in "+-":
                raise ParseError(
                    "unexpected token %r" % tokens[i][0], tokens[i][1])
            exp = tuple(exp)
            coeffs[exp] = coeffs.get(exp, 0) + coeff
        return self.from_dict(coeffs)

    def format_exp(self, exp):
        factors = []
        for slot, e in enumerate(exp):
            if e == 1:
                factors.append(self.names[slot])
            elif e > 1:
                factors.append("%s^%d" % (self.names[slot], e))
        return "*".join(factors)

    def with_prime(self, q):
        return PolyRing.get(q, self.d)

    def xdeg(self, exp):
        n = self.n
        return sum(exp[:n])

    def tdeg(self, exp):
        n = self.n
        return sum(exp[n:2 * n])


def _merge(a, b, mod):
    """Sum of two term tuples sorted decreasing by key."""
    if not a:
        return b
    if not b:
        return a
    out = []
    append = out.append
    ia = ib = 0
    la, lb = len(a), len(b)
    ta, tb = a[ia], b[ib]
    while True:
        if ta[0] > tb[0]:
            append(ta)
            ia += 1
            if ia == la:
                out.extend(b[ib:])
                return tuple(out)
            ta = a[ia]
        elif ta[0] < tb[0]:
            append(tb)
            ib += 1
            if ib == lb:
                out.extend(a[ia:])
                return tuple(out)
            tb = b[ib]
        else:
            c = (ta[2] + tb[2]) % mod
            if c:
                append((ta[0], ta[1], c))
            ia += 1
            ib += 1
            if ia == la:
                out.extend(b[ib:])
                return tuple(out)
            if ib == lb:
                out.extend(a[ia:])
                return tuple(out)
            ta = a[ia]
            tb = b[ib]


def _shift(terms, dkey, dexp, c, mod):
    """terms multiplied by the monomial dexp and the scalar c."""
    c %= mod
    if c == 0:
        return ()
    if c == 1 and dkey == 0:
        return terms
    out = []
    for k, e, co in terms:
        out.append((k + dkey,
                    tuple(x + y for x, y in zip(e, dexp)),
                    co * c % mod))
    return tuple(out)


def _scale(terms, c, mod):
    c %= mod
    if c == 0:
        return ()
    if c == 1:
        return terms
    return tuple((k, e, co * c % mod) for k, e, co in terms)


class Polynomial:
    """Immutable element of a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- structure ---------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lead_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        return self.terms[0]

    def lead_exp(self):
        return self.lead_term()[1]

    def lead_coeff(self):
        return self.lead_term()[2]

    def coeff(self, exp):
        exp = tuple(exp)
        for _, e, c in self.terms:
            if e == exp:
                return c
        return 0

    def support(self):
        """Set of variable slots appearing in some term."""
        used = set()
        for _, e, _ in self.terms:
            for slot, x in enumerate(e):
                if x:
                    used.add(slot)
        return used

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for _, e, _ in self.terms)

    def bidegree(self):
        """Common (x-degree, T-degree) of all terms.

        Returns ZERO_BIDEGREE for the zero polynomial and None when the
        terms do not share a single bidegree.  The helper variable t is
        ignored by the bigrading.
        """
        if not self.terms:
            return ZERO_BIDEGREE
        n = self.ring.n
        deg = None
        for _, e, _ in self.terms:
            bd = (sum(e[:n]), sum(e[n:2 * n]))
            if deg is None:
                deg = bd
            elif deg != bd:
                return None
        return BiDegree(*deg)

    def x_degree(self):
        n = self.ring.n
        return max((sum(e[:n]) for _, e, _ in self.terms), default=-1)

    def t_degree(self):
        ring = self.ring
        return max((sum(e[ring.n:2 * ring.n]) for _, e, _ in self.terms),
                   default=-1)

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is self.ring:
                return other
            if not self.ring.compatible(other.ring):
                raise ValueError("operands from incompatible rings")
            return Polynomial(self.ring, other.terms)
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial(self.ring,
                          _merge(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, _scale(self.terms, -1, self.ring.p))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        return Polynomial(self.ring,
                          _merge(self.terms, _scale(other.terms, -1, p), p))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        mod = self.ring.p
        if len(a) == 1:
            k, e, c = a[0]
            return Polynomial(self.ring, _shift(b, k, e, c, mod))
        if len(b) == 1:
            k, e, c = b[0]
            return Polynomial(self.ring, _shift(a, k, e, c, mod))
        acc = {}
        for k1, e1, c1 in a:
            for k2, e2, c2 in b:
                k = k1 + k2
                slot = acc.get(k)
                if slot is None:
                    acc[k] = [tuple(x + y for x, y in zip(e1, e2)),
                              c1 * c2 % mod]
                else:
                    slot[1] = (slot[1] + c1 * c2) % mod
        terms = tuple((k, e, c)
                      for k, (e, c) in sorted(acc.items(), reverse=True)
                      if c)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c):
        return Polynomial(self.ring, _scale(self.terms, c, self.ring.p))

    def monic(self):
        """Scale so the grevlex lead coefficient is 1."""
        if not self.terms:
            return self
        lc = self.terms[0][2]
        if lc == 1:
            return self
        return self.scale(pow(lc, self.ring.p - 2, self.ring.p))

    def exact_div(self, divisor):
        """Quotient q with self == q * divisor, or None if no such q."""
        divisor = self._coerce(divisor)
        if divisor is NotImplemented:
            raise TypeError("cannot divide by %r" % (divisor,))
        if divisor.is_zero:
            raise ZeroDivisionError("exact_div by zero polynomial")
        if self.is_zero:
            return self
        mod = self.ring.p
        dterms = divisor.terms
        dk, de, dc = dterms[0]
        dinv = pow(dc, mod - 2, mod)
        q = []
        rem = self.terms
        while rem:
            k, e, c = rem[0]
            qe = []
            for xe, ye in zip(e, de):
                if xe < ye:
                    return None
                qe.append(xe - ye)
            qc = c * dinv % mod
            q.append((k - dk, tuple(qe), qc))
            rem = _merge(rem, _shift(dterms, k - dk, tuple(qe), -qc, mod),
                         mod)
        return Polynomial(self.ring, tuple(q))

    def divides(self, other):
        return other.exact_div(self) is not None

    # -- comparison and display --------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.ring.p == other.ring.p
                    and self.ring.d == other.ring.d
                    and self.terms == other.terms)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.p, self.ring.d, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        half = ring._half
        parts = []
        for k, e, c in self.terms:
            cc = c if c <= half else c - ring.p
            mono = ring.format_exp(e)
            mag = abs(cc)
            if mag != 1 or not mono:
                body = str(mag) if not mono else "%d*%s" % (mag, mono)
            else:
                body = mono
            if not parts:
                parts.append("-" + body if cc < 0 else body)
            else:
                parts.append(("- " if cc < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % (self,)


def partial_column(f, rule="min"):
    """Split f in (x1..x{d+1}) into a column C with [x1..x{d+1}] . C == f.

    Every term is divided by one x-variable it contains and assigned to
    that variable's row: rule 'min' picks the smallest-index x-variable of
    the term, rule 'max' the largest.  Requires f bihomogeneous with
    positive x-degree, or zero; the zero polynomial yields a zero column.
    Entries of the result drop the bidegree by exactly (1, 0).
    """
    if rule not in ("min", "max"):
        raise ValueError("unknown splitting rule %r" % (rule,))
    ring = f.ring
    n = ring.n
    if f.is_zero:
        return [ring.zero] * n
    if f.bidegree() is None:
        raise ValueError("cannot split a non-bihomogeneous polynomial")
    rows = [{} for _ in range(n)]
    xrange = range(n) if rule == "min" else range(n - 1, -1, -1)
    for _, e, c in f.terms:
        for i in xrange:
            if e[i]:
                reduced = list(e)
                reduced[i] -= 1
                rows[i][tuple(reduced)] = c
                break
        else:
            raise ValueError(
                "polynomial is not in the ideal (x1..x%d)" % n)
    return [ring.from_dict(r) for r in rows]
