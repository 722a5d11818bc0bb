"""Exact arithmetic: sparse multivariate polynomials over arbitrary-precision
rationals, normalized rational functions, gcd/squarefree machinery, and
fraction-free linear algebra over the rational-function field.

Everything here is immutable and pure; all the operator algebra upstairs is
built on these coefficients.
"""
from __future__ import annotations

import heapq
import math
import random
from fractions import Fraction

from .errors import ZeroPolynomial

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PolyRing:
    """Q[x1,...,xm], identified (and interned) by its ordered variable names."""

    _interned: dict = {}

    def __new__(cls, names):
        names = tuple(names)
        ring = cls._interned.get(names)
        if ring is not None:
            return ring
        ring = super().__new__(cls)
        ring.names = names
        ring.index = {n: i for i, n in enumerate(names)}
        ring.nvars = len(names)
        ring._zero_exp = (0,) * len(names)
        ring._zero = None
        ring._one = None
        cls._interned[names] = ring
        return ring

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(self.names)

    @property
    def zero(self) -> "MPoly":
        if self._zero is None:
            self._zero = MPoly(self, {})
        return self._zero

    @property
    def one(self) -> "MPoly":
        if self._one is None:
            self._one = MPoly(self, {self._zero_exp: _ONE})
        return self._one

    def const(self, c) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return self.zero
        return MPoly(self, {self._zero_exp: c})

    def var(self, name) -> "MPoly":
        i = self.index[name]
        exp = [0] * self.nvars
        exp[i] = 1
        return MPoly(self, {tuple(exp): _ONE})

    def monomial(self, exp, coeff=_ONE) -> "MPoly":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero
        return MPoly(self, {tuple(exp): coeff})


def _grevlex_key(exp):
    # graded reverse lexicographic; max() of keys picks the leading exponent
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MPoly:
    """Sparse multivariate polynomial: map exponent vector -> Fraction.

    Invariants: no zero coefficients are stored, and all exponent vectors
    have the ring's arity, so equal polynomials have identical term maps.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_terms(ring, items) -> "MPoly":
        terms = {}
        for exp, c in items:
            if c == 0:
                continue
            cur = terms.get(exp)
            if cur is None:
                terms[exp] = c
            else:
                cur = cur + c
                if cur:
                    terms[exp] = cur
                else:
                    del terms[exp]
        return MPoly(ring, terms)

    # -- predicates and inspection --------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        return self.terms.get(self.ring._zero_exp, _ZERO)

    def is_one(self) -> bool:
        return self.terms.get(self.ring._zero_exp) == 1 and len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var_indices) -> int:
        """Total degree in the given subset of variables (-1 for zero)."""
        if not self.terms:
            return -1
        return max(sum(e[i] for i in var_indices) for e in self.terms)

    def degree_var(self, i) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self):
        """Indices of variables that actually occur."""
        seen = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    seen.add(i)
        return seen

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        if not self.terms:
            raise ZeroPolynomial("leading term of zero polynomial")
        exp = max(self.terms, key=_grevlex_key)
        return exp, self.terms[exp]

    def leading_coeff(self) -> Fraction:
        return self.leading()[1]

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = self.ring.const(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            if cur is None:
                terms[e] = c
            else:
                cur = cur + c
                if cur:
                    terms[e] = cur
                else:
                    del terms[e]
        return MPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero
            return MPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                cur = out.get(e)
                if cur is None:
                    out[e] = ca * cb
                else:
                    cur = cur + ca * cb
                    if cur:
                        out[e] = cur
                    else:
                        del out[e]
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                return self.is_constant() and self.constant_value() == other
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus / substitution ------------------------------------------------

    def derivative(self, i) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MPoly(self.ring, out)

    def shift_var(self, i, offset) -> "MPoly":
        """Substitute x_i -> x_i + offset (offset a rational constant)."""
        if offset == 0:
            return self
        offset = Fraction(offset)
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            if d == 0:
                _acc(out, e, c)
                continue
            # (x+t)^d expanded over binomials
            for j in range(d + 1):
                ne = list(e)
                ne[i] = j
                _acc(out, tuple(ne), c * math.comb(d, j) * offset ** (d - j))
        return MPoly(self.ring, out)

    def scale_var(self, i, factor_index=None, factor=None) -> "MPoly":
        """Substitute x_i -> q*x_i where q is the variable at factor_index,
        or x_i -> factor*x_i for a rational factor."""
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            if factor_index is not None and d:
                ne = list(e)
                ne[factor_index] += d
                e = tuple(ne)
            if factor is not None and d:
                c = c * Fraction(factor) ** d
            _acc(out, e, c)
        return MPoly(self.ring, out)

    def power_var(self, i, b) -> "MPoly":
        """Substitute x_i -> x_i**b (Mahler substitution)."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] *= b
            _acc(out, tuple(ne), c)
        return MPoly(self.ring, out)

    def eval_var(self, i, value: "RatFunc") -> "RatFunc":
        """Substitute a rational function for x_i, by Horner in x_i."""
        groups = {}
        for e, c in self.terms.items():
            ne = list(e)
            d = ne[i]
            ne[i] = 0
            g = groups.setdefault(d, {})
            _acc(g, tuple(ne), c)
        if not groups:
            return RatFunc.zero(self.ring)
        result = RatFunc.zero(self.ring)
        prev = None
        for d in sorted(groups, reverse=True):
            if prev is not None:
                result = result * value ** (prev - d)
            result = result + RatFunc.from_poly(MPoly(self.ring, groups[d]))
            prev = d
        if prev:
            result = result * value ** prev
        return result

    def eval_point(self, values) -> Fraction:
        """Evaluate at a full rational point (sequence indexed like the ring)."""
        total = _ZERO
        for e, c in self.terms.items():
            v = c
            for i, p in enumerate(e):
                if p:
                    v *= Fraction(values[i]) ** p
            total += v
        return total

    def eval_partial(self, assignment: dict) -> "MPoly":
        """Evaluate a subset of variables at rational values."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            v = c
            for i, val in assignment.items():
                if ne[i]:
                    v *= Fraction(val) ** ne[i]
                    ne[i] = 0
            if v:
                _acc(out, tuple(ne), v)
        return MPoly(self.ring, out)

    # -- normalization ----------------------------------------------------------

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient and primitive."""
        if not self.terms:
            return _ONE
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MPoly":
        c = self.rational_content()
        if c == 1:
            return self
        return self * (1 / c)

    def monic(self) -> "MPoly":
        """Divide by the grevlex leading coefficient."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self * (1 / lc)

    def coeffs_in_var(self, i) -> dict:
        """Map degree-in-x_i -> MPoly coefficient (with x_i cleared)."""
        groups = {}
        for e, c in self.terms.items():
            ne = list(e)
            d = ne[i]
            ne[i] = 0
            key = tuple(ne)
            g = groups.setdefault(d, {})
            _acc(g, key, c)
        return {d: MPoly(self.ring, t) for d, t in groups.items()}

    def __repr__(self):
        return "MPoly(%s)" % format_poly(self)

    def __str__(self):
        return format_poly(self)


def _acc(d, e, c):
    cur = d.get(e)
    if cur is None:
        if c:
            d[e] = c
    else:
        cur = cur + c
        if cur:
            d[e] = cur
        else:
            del d[e]


# -- pretty printing -----------------------------------------------------------

def format_poly(p: MPoly) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    bits = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            names[i] if d == 1 else "%s^%d" % (names[i], d)
            for i, d in enumerate(e) if d
        )
        if mono:
            if c == 1:
                text = mono
            elif c == -1:
                text = "-" + mono
            else:
                text = "%s*%s" % (_fmt_coeff(c), mono)
        else:
            text = _fmt_coeff(c)
        bits.append(text)
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


# -- exact division and gcd ------------------------------------------------------

def _heap_key(exp):
    # negated grevlex key: heapq pops the order-largest exponent first
    return (-sum(exp), tuple(x for x in reversed(exp)))


def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Exact polynomial division; raises ValueError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return f
    if g.is_one():
        return f
    if g.is_constant():
        return f * (1 / g.constant_value())
    ring = f.ring
    ge, gc = g.leading()
    rem = dict(f.terms)
    heap = [(_heap_key(e), e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    gitems = [(e, c) for e, c in g.terms.items() if e != ge]
    while heap:
        _, fe = heapq.heappop(heap)
        fc = rem.get(fe)
        if fc is None:
            continue
        del rem[fe]
        qe = tuple(a - b for a, b in zip(fe, ge))
        if any(x < 0 for x in qe):
            raise ValueError("not divisible")
        qc = fc / gc
        quo[qe] = qc
        for e, c in gitems:
            te = tuple(a + b for a, b in zip(qe, e))
            fresh = te not in rem
            _acc(rem, te, -qc * c)
            if fresh and te in rem:
                heapq.heappush(heap, (_heap_key(te), te))
    if rem:
        raise ValueError("not divisible")
    return MPoly(ring, quo)


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ValueError:
        return False


_gcd_rng = random.Random(0x5eed)


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd; poly_gcd(0, b) is the monic normalization of b."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.ring.one
    if a.terms == b.terms:
        return a.monic()
    ap, bp = a.primitive(), b.primitive()
    g = _modular_gcd(ap, bp)
    if g is None:
        g = _gcd_inner(ap, bp)
    return g.monic()


def _gcd_inner(a: MPoly, b: MPoly) -> MPoly:
    # both nonzero, primitive
    if a.is_constant() or b.is_constant():
        return a.ring.one
    if len(a.terms) == 1 or len(b.terms) == 1:
        return _gcd_with_monomial(a, b)
    common = a.variables() & b.variables()
    if not common:
        return a.ring.one
    # main variable: smallest max-degree keeps the PRS short
    v = min(common, key=lambda i: (min(a.degree_var(i), b.degree_var(i)), i))
    if _gcd_free_of(a, b, v):
        return _gcd_inner(_content_in(a, v), _content_in(b, v))
    if a.degree_var(v) < b.degree_var(v):
        a, b = b, a
    # quick win: one argument dividing the other is common (lcm chains)
    da, db = a.degree_var(v), b.degree_var(v)
    if da >= db and divides(b, a):
        return b
    if db >= da and divides(a, b):
        return a
    ca, pa = _split_content(a, v)
    cb, pb = _split_content(b, v)
    cont = _gcd_inner(ca, cb) if not (ca.is_constant() and cb.is_constant()) else a.ring.one
    prim = _primitive_prs(pa, pb, v)
    return cont * prim


def _gcd_with_monomial(a: MPoly, b: MPoly) -> MPoly:
    if len(b.terms) == 1:
        a, b = b, a
    (me,) = a.terms  # a is the monomial
    lo = list(me)
    for e in b.terms:
        lo = [min(x, y) for x, y in zip(lo, e)]
        if not any(lo):
            break
    return a.ring.monomial(tuple(lo))


def _content_in(f: MPoly, v) -> MPoly:
    coeffs = list(f.coeffs_in_var(v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, c)
    return g.monic() if not g.is_constant() else f.ring.one


def _split_content(f: MPoly, v):
    cont = _content_in(f, v)
    if cont.is_one() or cont.is_constant():
        return f.ring.one, f
    return cont, exact_div(f, cont)


_GCD_PRIME = 2 ** 61 - 1


def _gcd_free_of(a: MPoly, b: MPoly, v) -> bool:
    """Certify deg_v gcd(a, b) == 0 via a random specialization mod p.

    Sound when the specialized leading coefficient of `a` in v survives:
    any common divisor then keeps its v-degree under the specialization,
    and its modular image divides the modular gcd.
    """
    p = _GCD_PRIME
    others = (a.variables() | b.variables()) - {v}
    for _ in range(4):
        point = {i: _gcd_rng.randint(2, p - 2) for i in others}
        try:
            ua = _specialize_univariate_modp(a, v, point, p)
            ub = _specialize_univariate_modp(b, v, point, p)
        except ZeroDivisionError:  # denominator divisible by p: retry
            continue
        if not ua or not ub:
            continue
        if len(ua) - 1 != a.degree_var(v):  # lc vanished: unlucky point
            continue
        if _univ_gcd_degree_modp(ua, ub, p) == 0:
            return True
        return False
    return False


def _specialize_univariate_modp(f: MPoly, v, point, p):
    coeffs = [0] * (f.degree_var(v) + 1)
    for e, c in f.terms.items():
        val = c.numerator % p * pow(c.denominator, -1, p) % p
        for i, pt in point.items():
            if e[i]:
                val = val * pow(pt, e[i], p) % p
        coeffs[e[v]] = (coeffs[e[v]] + val) % p
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _univ_gcd_degree_modp(a, b, p) -> int:
    while b:
        r = a[:]
        db = len(b) - 1
        inv_lb = pow(b[-1], -1, p)
        while r and len(r) - 1 >= db:
            q = r[-1] * inv_lb % p
            shift = len(r) - 1 - db
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - q * c) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1


def _primitive_prs(f: MPoly, g: MPoly, v) -> MPoly:
    """Gcd of v-primitive f, g by the primitive pseudo-remainder sequence.

    Each remainder is reduced to its primitive part (rational and
    polynomial content), which keeps coefficient growth minimal at the
    cost of content gcds per step.
    """
    if f.degree_var(v) < g.degree_var(v):
        f, g = g, f
    f, g = f.primitive(), g.primitive()
    while True:
        r = _pseudo_rem(f, g, v)
        if r.is_zero():
            _, pp = _split_content(g, v)
            return pp
        if r.degree_var(v) == 0:
            return f.ring.one
        r = r.primitive()
        _, r = _split_content(r, v)
        f, g = g, r


def _lead_coeff_in(f: MPoly, v) -> MPoly:
    d = f.degree_var(v)
    out = {}
    for e, c in f.terms.items():
        if e[v] == d:
            ne = list(e)
            ne[v] = 0
            _acc(out, tuple(ne), c)
    return MPoly(f.ring, out)


def _pseudo_rem(f: MPoly, g: MPoly, v) -> MPoly:
    dg = g.degree_var(v)
    lg = _lead_coeff_in(g, v)
    r = f
    delta = f.degree_var(v) - dg
    steps = delta + 1
    while not r.is_zero() and r.degree_var(v) >= dg:
        dr = r.degree_var(v)
        lr = _lead_coeff_in(r, v)
        xshift = [0] * f.ring.nvars
        xshift[v] = dr - dg
        r = lg * r - f.ring.monomial(tuple(xshift)) * lr * g
        steps -= 1
    if steps > 0:
        r = lg ** steps * r
    return r


def poly_lcm(a: MPoly, b: MPoly) -> MPoly:
    if a.is_zero() or b.is_zero():
        return a.ring.zero
    return exact_div(a * b, poly_gcd(a, b)).monic()


# -- modular gcd (Brown-style dense interpolation, division-verified) -------------

# Mersenne primes large enough that verified lifts virtually never retry
_GCD_PRIMES = (2 ** 61 - 1, 2 ** 89 - 1, 2 ** 107 - 1)


def _modular_gcd(a: MPoly, b: MPoly):
    """Gcd of integer-primitive a, b via gcd mod p plus interpolation.

    A nontrivial candidate is accepted only after exact trial division, so
    the only soundness obligation kept internally is the "gcd is 1" path,
    which the leading-coefficient checks certify.  Returns None when every
    prime fails (caller falls back to the pseudo-remainder sequence).
    """
    active = sorted(a.variables() | b.variables())
    one = a.ring.one
    for p in _GCD_PRIMES:
        la = a.leading_coeff()
        lb = b.leading_coeff()
        if la.numerator % p == 0 or lb.numerator % p == 0:
            continue
        fp = {e: c.numerator % p for e, c in a.terms.items() if c.numerator % p}
        gp = {e: c.numerator % p for e, c in b.terms.items() if c.numerator % p}
        res = _modp_gcd(fp, gp, active, p)
        if res is None:
            continue
        if _modp_is_constant(res):
            return one
        # rescale so the lift carries integer coefficients: lc(gcd) divides
        # gcd of the integer leading coefficients
        gamma = math.gcd(la.numerator, lb.numerator)
        lead = max(res, key=_grevlex_key)
        res = _modp_scale(res, gamma % p * pow(res[lead], -1, p) % p, p)
        cand = _modp_lift(res, a.ring, p).primitive()
        if divides(cand, a) and divides(cand, b):
            return cand
    return None


def _modp_is_constant(f):
    return len(f) == 1 and not any(next(iter(f)))


def _modp_deg(f, v):
    return max((e[v] for e in f), default=-1)


def _modp_eval(f, v, alpha, p):
    out = {}
    for e, c in f.items():
        if e[v]:
            c = c * pow(alpha, e[v], p) % p
            ne = list(e)
            ne[v] = 0
            e = tuple(ne)
        cur = out.get(e, 0)
        cur = (cur + c) % p
        if cur:
            out[e] = cur
        elif e in out:
            del out[e]
    return out


def _modp_mul(f, g, p):
    out = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            cur = (out.get(e, 0) + ca * cb) % p
            if cur:
                out[e] = cur
            elif e in out:
                del out[e]
    return out


def _modp_sub(f, g, p):
    out = dict(f)
    for e, c in g.items():
        cur = (out.get(e, 0) - c) % p
        if cur:
            out[e] = cur
        elif e in out:
            del out[e]
    return out


def _modp_scale(f, c, p):
    return {e: v * c % p for e, v in f.items()}


def _modp_exact_div(f, g, p):
    """Division of modp term dicts; assumes exactness (used for contents)."""
    if _modp_is_constant(g):
        inv = pow(next(iter(g.values())), -1, p)
        return _modp_scale(f, inv, p)
    ge = max(g, key=_grevlex_key)
    ginv = pow(g[ge], -1, p)
    rem = dict(f)
    heap = [(_heap_key(e), e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    gitems = [(e, c) for e, c in g.items() if e != ge]
    while heap:
        _, fe = heapq.heappop(heap)
        fc = rem.get(fe)
        if fc is None:
            continue
        del rem[fe]
        qe = tuple(x - y for x, y in zip(fe, ge))
        if any(x < 0 for x in qe):
            raise ValueError("modp division not exact")
        qc = fc * ginv % p
        quo[qe] = qc
        for e, c in gitems:
            te = tuple(x + y for x, y in zip(qe, e))
            fresh = te not in rem
            cur = (rem.get(te, 0) - qc * c) % p
            if cur:
                rem[te] = cur
                if fresh:
                    heapq.heappush(heap, (_heap_key(te), te))
            elif te in rem:
                del rem[te]
    return quo


def _modp_univ_gcd(a, b, p):
    """Monic gcd of two dense int coefficient lists over GF(p)."""
    while b:
        r = a[:]
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        while r and len(r) - 1 >= db:
            q = r[-1] * inv % p
            shift = len(r) - 1 - db
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - q * c) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _modp_dense_in(f, v, p):
    coeffs = [0] * (_modp_deg(f, v) + 1)
    for e, c in f.items():
        coeffs[e[v]] = (coeffs[e[v]] + c) % p
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _modp_rest_lead(f, rest):
    """Grevlex-leading monomial of f projected to the rest variables."""
    return max((tuple(e[i] for i in rest) for e in f),
               key=_grevlex_key)


def _modp_lc_univ(f, rest, lead, xe):
    """Coefficient (as dense list in xe) of the rest-leading monomial."""
    coeffs = {}
    for e, c in f.items():
        if tuple(e[i] for i in rest) == lead:
            coeffs[e[xe]] = (coeffs.get(e[xe], 0) + c)
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return out


def _modp_univ_content(f, xe, p):
    """Gcd over Zp[xe] of the xe-coefficient lists grouped by the other
    variables' monomials; a dense list in xe."""
    groups = {}
    for e, c in f.items():
        ne = list(e)
        d = ne[xe]
        ne[xe] = 0
        groups.setdefault(tuple(ne), {})[d] = c
    cont = None
    for part in groups.values():
        dense = [0] * (max(part) + 1)
        for d, c in part.items():
            dense[d] = c
        cont = dense if cont is None else _modp_univ_gcd(cont, dense, p)
        if len(cont) == 1:
            break
    return cont


def _modp_univ_to_dict(coeffs, xe, nvars):
    out = {}
    for d, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[xe] = d
            out[tuple(e)] = c
    return out


def _modp_content_wrt(f, xe, rest, p):
    """Content of f as a polynomial in xe: gcd of the xe-coefficients."""
    groups = {}
    for e, c in f.items():
        ne = list(e)
        d = ne[xe]
        ne[xe] = 0
        g = groups.setdefault(d, {})
        te = tuple(ne)
        cur = (g.get(te, 0) + c) % p
        if cur:
            g[te] = cur
        elif te in g:
            del g[te]
    cont = None
    for part in groups.values():
        if not part:
            continue
        cont = part if cont is None else _modp_gcd(cont, part, rest, p)
        if cont is None:
            return None
        if _modp_is_constant(cont):
            break
    return cont


def _modp_gcd(f, g, active, p):
    """Gcd over GF(p) by dense interpolation in the last active variable.

    Result is normalized only up to a unit; may return None on persistent
    bad luck (caller retries with another prime or falls back)."""
    if not f or not g:
        return f or g or None
    active = [v for v in active if _modp_deg(f, v) > 0 or _modp_deg(g, v) > 0]
    if not active:
        return {(0,) * len(next(iter(f))): 1}
    nvars = len(next(iter(f)))
    if len(active) == 1:
        v = active[0]
        da, db = _modp_dense_in(f, v, p), _modp_dense_in(g, v, p)
        if not da or not db:
            return None
        u = _modp_univ_gcd(da, db, p)
        out = {}
        for d, c in enumerate(u):
            if c:
                e = [0] * nvars
                e[v] = d
                out[tuple(e)] = c
        return out
    xe = active[-1]
    rest = active[:-1]
    if _modp_deg(f, xe) == 0 or _modp_deg(g, xe) == 0:
        # gcd cannot involve xe: strip it from whichever side has it
        cf = _modp_content_wrt(f, xe, rest, p) if _modp_deg(f, xe) else f
        cg = _modp_content_wrt(g, xe, rest, p) if _modp_deg(g, xe) else g
        if cf is None or cg is None:
            return None
        return _modp_gcd(cf, cg, rest, p)
    # split off factors living purely in Zp[xe]; the monic normalization of
    # the interpolation images would silently drop them otherwise
    wf = _modp_univ_content(f, xe, p)
    if len(wf) > 1:
        f = _modp_exact_div(f, _modp_univ_to_dict(wf, xe, nvars), p)
    wg = _modp_univ_content(g, xe, p)
    if len(wg) > 1:
        g = _modp_exact_div(g, _modp_univ_to_dict(wg, xe, nvars), p)
    w = _modp_univ_gcd(wf, wg, p)
    cf = _modp_content_wrt(f, xe, rest, p)
    cg = _modp_content_wrt(g, xe, rest, p)
    if cf is None or cg is None:
        return None
    if not _modp_is_constant(cf):
        f = _modp_exact_div(f, cf, p)
    if not _modp_is_constant(cg):
        g = _modp_exact_div(g, cg, p)
    cont = _modp_gcd(cf, cg, rest, p)
    if cont is None:
        return None
    if len(w) > 1:
        cont = _modp_mul(cont, _modp_univ_to_dict(w, xe, nvars), p)
    lead_f = _modp_rest_lead(f, rest)
    lead_g = _modp_rest_lead(g, rest)
    lcf = _modp_lc_univ(f, rest, lead_f, xe)
    lcg = _modp_lc_univ(g, rest, lead_g, xe)
    gamma = _modp_univ_gcd(lcf, lcg, p)
    bound = min(_modp_deg(f, xe), _modp_deg(g, xe)) + len(gamma) - 1
    rng = random.Random(p ^ 0xB0B)
    interp = None     # accumulating interpolant
    basis = None      # prod (xe - alpha_j), dense list in xe
    best_lead = None
    npoints = 0
    attempts = 0
    seen = set()
    while npoints <= bound:
        attempts += 1
        if attempts > 8 * (bound + 3):
            return None
        alpha = rng.randrange(1, p - 1)
        if alpha in seen:
            continue
        seen.add(alpha)
        if _univ_eval(lcf, alpha, p) == 0 or _univ_eval(lcg, alpha, p) == 0:
            continue
        fa = _modp_eval(f, xe, alpha, p)
        ga = _modp_eval(g, xe, alpha, p)
        img = _modp_gcd(fa, ga, rest, p)
        if img is None:
            continue
        ilead = _modp_rest_lead(img, rest)
        if best_lead is None or _grevlex_key(ilead) < _grevlex_key(best_lead):
            # everything collected so far was unlucky (too large): restart
            best_lead = ilead
            interp = None
            basis = [1]
            npoints = 0
        elif _grevlex_key(ilead) > _grevlex_key(best_lead):
            continue
        full_lead = next(e for e in img
                         if tuple(e[i] for i in rest) == ilead and e[xe] == 0)
        scale = _univ_eval(gamma, alpha, p) * pow(img[full_lead], -1, p) % p
        img = _modp_scale(img, scale, p)
        if interp is None:
            interp = img
            basis = [(-alpha) % p, 1]
            npoints = 1
            continue
        cur = _modp_eval(interp, xe, alpha, p)
        diff = _modp_sub(img, cur, p)
        if diff:
            binv = pow(_univ_eval(basis, alpha, p), -1, p)
            add = {}
            for e, c in diff.items():
                c = c * binv % p
                for d, bc in enumerate(basis):
                    if bc:
                        ne = list(e)
                        ne[xe] = d
                        te = tuple(ne)
                        cur2 = (add.get(te, 0) + c * bc) % p
                        if cur2:
                            add[te] = cur2
                        elif te in add:
                            del add[te]
            for e, c in add.items():
                cur2 = (interp.get(e, 0) + c) % p
                if cur2:
                    interp[e] = cur2
                elif e in interp:
                    del interp[e]
        # basis *= (xe - alpha)
        nb = [0] * (len(basis) + 1)
        for d, bc in enumerate(basis):
            nb[d + 1] = (nb[d + 1] + bc) % p
            nb[d] = (nb[d] - bc * alpha) % p
        basis = nb
        npoints += 1
    if not interp:
        return None
    # remove the gamma/lc(G) residue, a factor purely in Zp[xe]
    icont = _modp_univ_content(interp, xe, p)
    if len(icont) > 1:
        interp = _modp_exact_div(interp, _modp_univ_to_dict(icont, xe, nvars), p)
    return _modp_mul(cont, interp, p) if not _modp_is_constant(cont) else interp


def _univ_eval(coeffs, alpha, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * alpha + c) % p
    return acc


def _modp_lift(f, ring, p):
    """Symmetric lift of a modp dict to an integer-coefficient MPoly."""
    half = p // 2
    terms = {}
    for e, c in f.items():
        v = c - p if c > half else c
        if v:
            terms[e] = Fraction(v)
    return MPoly(ring, terms)


# factored polynomials: {monic factor: multiplicity} with pairwise-coprime
# factors; products, lcms, and degree reads stay cheap on the shifted-factor
# products this engine generates, where the expanded forms explode


def _mult_of(b: MPoly, f: MPoly) -> int:
    """Multiplicity of b in f (b from a coprime base: divides or is coprime)."""
    count = 0
    while divides(b, f):
        f = exact_div(f, b)
        count += 1
    return count


def _coprime_insert(base: list, q: MPoly) -> None:
    """Refine a pairwise-coprime list of monic polys so it also covers q.

    Splitting pieces re-enter the worklist, so partial overlaps between a
    gcd and its cofactors resolve fully; total degree strictly drops at
    every split, which bounds the loop."""
    stack = [q.monic()]
    while stack:
        x = stack.pop()
        if x.is_constant():
            continue
        hit = None
        for i, f in enumerate(base):
            g = poly_gcd(f, x)
            if not g.is_constant():
                hit = (i, f, g)
                break
        if hit is None:
            base.append(x)
            continue
        i, f, g = hit
        if g == f:
            if g == x:
                continue  # fully covered
            xr = x
            while divides(g, xr):
                xr = exact_div(xr, g)
            stack.append(xr.monic() if not xr.is_constant() else xr)
            continue
        del base[i]
        stack.append(g)
        fr = f
        while divides(g, fr):
            fr = exact_div(fr, g)
        if not fr.is_constant():
            stack.append(fr.monic())
        xr = x
        while divides(g, xr):
            xr = exact_div(xr, g)
        if not xr.is_constant():
            stack.append(xr.monic())


def factored_merge(A: dict, q: MPoly, m: int, combine) -> None:
    """A := A (combine) q^m in place; combine is max (lcm) or add (product).

    Keys stay pairwise coprime: the base refines itself against q and the
    old entries are re-expressed over the refined base when needed."""
    if m <= 0:
        return
    q = q.monic()
    if q.is_constant():
        return
    base = list(A.keys())
    _coprime_insert(base, q)
    if set(base) != set(A.keys()):
        old = dict(A)
        A.clear()
        for b in base:
            s = 0
            for f, mf in old.items():
                if f is b or f == b:
                    s += mf
                else:
                    s += mf * _mult_of(b, f)
            if s:
                A[b] = s
    for b in base:
        j = _mult_of(b, q)
        if j:
            A[b] = combine(A.get(b, 0), m * j)


def factored_expand(A: dict, ring) -> MPoly:
    out = ring.one
    for f, m in sorted(A.items(), key=lambda t: sorted(t[0].terms)):
        out = out * f ** m
    return out.monic()


def squarefree_part(a: MPoly, var_indices) -> MPoly:
    """Product of the distinct irreducible factors of `a` involving the
    given variables: a / gcd(a, all partials); result divides a."""
    if a.is_zero():
        raise ZeroPolynomial("squarefree part of zero")
    g = a
    for v in var_indices:
        d = a.derivative(v)
        if d.is_zero():
            continue
        g = poly_gcd(g, d)
        if g.is_constant():
            break
    if g.is_constant():
        return a.monic()
    return exact_div(a, g).monic()


# -- rational functions -----------------------------------------------------------


class RatFunc:
    """Normalized fraction of two MPoly: gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num.ring.zero
            self.den = num.ring.one
            return
        if not den.is_one():
            if den.is_constant():
                num = num * (1 / den.constant_value())
                den = den.ring.one
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = exact_div(num, g)
                    den = exact_div(den, g)
                lc = den.leading_coeff()
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        self.num = num
        self.den = den

    # trusted constructor: used where coprimality/monicity is already known
    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        return self

    @classmethod
    def zero(cls, ring) -> "RatFunc":
        return cls._raw(ring.zero, ring.one)

    @classmethod
    def one(cls, ring) -> "RatFunc":
        return cls._raw(ring.one, ring.one)

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFunc":
        return cls._raw(p, p.ring.one)

    @classmethod
    def const(cls, ring, c) -> "RatFunc":
        return cls._raw(ring.const(c), ring.one)

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.terms == other.den.terms:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n):
        if n == 0:
            return RatFunc.one(self.ring)
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n) if self.den.is_one() \
            else RatFunc(self.num ** n, self.den ** n)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.ring, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def derivative(self, i) -> "RatFunc":
        n, d = self.num, self.den
        if d.is_one():
            return RatFunc.from_poly(n.derivative(i))
        return RatFunc(n.derivative(i) * d - n * d.derivative(i), d * d)

    def shift_var(self, i, offset) -> "RatFunc":
        # field automorphism: preserves coprimality, may break monicity
        num = self.num.shift_var(i, offset)
        den = self.den.shift_var(i, offset)
        lc = den.leading_coeff()
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        return RatFunc._raw(num, den)

    def eval_var(self, i, value: "RatFunc") -> "RatFunc":
        return self.num.eval_var(i, value) / self.den.eval_var(i, value)

    def eval_point(self, values) -> Fraction:
        d = self.den.eval_point(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.eval_point(values) / d

    def __repr__(self):
        return "RatFunc(%s)" % self.__str__()

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        ns = format_poly(self.num)
        ds = format_poly(self.den)
        if len(self.num.terms) > 1:
            ns = "(%s)" % ns
        if len(self.den.terms) > 1:
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)


# -- linear algebra ---------------------------------------------------------------


def nullspace(rows) -> list:
    """Basis of the right nullspace of a matrix of RatFunc entries.

    Exact fraction-free elimination with lowest-degree pivoting; returned
    vectors have polynomial entries, cleared of denominators and
    content-reduced, with a deterministic sign.
    """
    rows = list(rows)
    if not rows:
        return []
    ncols = len(rows[0])
    ring = None
    for row in rows:
        for x in row:
            ring = x.ring if isinstance(x, RatFunc) else x.ring
            break
        if ring:
            break
    if ring is None:
        return []
    poly_rows = [_clear_row(row, ring) for row in rows]
    return nullspace_poly(poly_rows, ncols, ring)


def _clear_row(row, ring):
    den = ring.one
    vals = []
    for x in row:
        if isinstance(x, MPoly):
            x = RatFunc.from_poly(x)
        vals.append(x)
        if not x.den.is_one():
            den = poly_lcm(den, x.den)
    out = [v.num * exact_div(den, v.den) if not v.is_zero() else ring.zero for v in vals]
    return _strip_row_content(out, ring)


def _strip_row_content(row, ring):
    g = ring.zero
    for x in row:
        if x.is_zero():
            continue
        g = poly_gcd(g, x)
        if g.is_one():
            break
    if g.is_zero() or g.is_one():
        # still strip the rational content for compactness
        c = _rows_rational_content(row)
        if c not in (0, 1):
            row = [x * (1 / c) for x in row]
        return row
    return [exact_div(x, g) if not x.is_zero() else x for x in row]


def _rows_rational_content(row):
    num, den = 0, 1
    for x in row:
        for c in x.terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den) if num else _ONE


def nullspace_poly(rows, ncols, ring) -> list:
    """Right nullspace basis for rows of MPoly entries.

    Forward fraction-free elimination with fill-aware (Markowitz-style)
    pivot selection, then rational back-substitution; pivot rows stay
    sparse, which keeps both the elimination and the kernel extraction
    small on the structured, mostly-sparse systems the engine produces.
    """
    m = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    pivots = []  # (row, col) in elimination order
    used_rows = set()
    while True:
        pivot = _pick_pivot(m, used_rows, {c for _, c in pivots})
        if pivot is None:
            break
        pr, pc = pivot
        used_rows.add(pr)
        pivots.append((pr, pc))
        pv = m[pr][pc]
        for i, row in enumerate(m):
            if i in used_rows or row[pc].is_zero():
                continue
            f = row[pc]
            raw = [pv * row[j] - f * m[pr][j]
                   if not (row[j].is_zero() and m[pr][j].is_zero()) else row[j]
                   for j in range(ncols)]
            # primitive scheme: content stripping subsumes Bareiss division
            m[i] = _strip_row_content(raw, ring)
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [RatFunc.zero(ring)] * ncols
        vec[fc] = RatFunc.one(ring)
        for pr, pc in reversed(pivots):
            s = RatFunc.zero(ring)
            row = m[pr]
            for j in range(ncols):
                if j != pc and not row[j].is_zero() and not vec[j].is_zero():
                    s = s + RatFunc.from_poly(row[j]) * vec[j]
            vec[pc] = -s / RatFunc.from_poly(row[pc])
        basis.append(_finalize_ratfunc_vector_rat(vec, ring))
    return basis


def _pick_pivot(m, used_rows, used_cols):
    col_load = {}
    row_load = {}
    for i, row in enumerate(m):
        if i in used_rows:
            continue
        cnt = 0
        for j, x in enumerate(row):
            if j in used_cols or x.is_zero():
                continue
            cnt += 1
            col_load[j] = col_load.get(j, 0) + 1
        row_load[i] = cnt
    best = None
    best_key = None
    for i, row in enumerate(m):
        if i in used_rows:
            continue
        for j, x in enumerate(row):
            if j in used_cols or x.is_zero():
                continue
            fill = (row_load[i] - 1) * (col_load[j] - 1)
            key = (fill, x.total_degree(), len(x.terms), i, j)
            if best_key is None or key < best_key:
                best_key = key
                best = (i, j)
    return best


def _finalize_ratfunc_vector_rat(vec, ring):
    den = ring.one
    for x in vec:
        if not x.is_zero() and not x.den.is_one():
            den = poly_lcm(den, x.den)
    polys = [x.num * exact_div(den, x.den) if not x.is_zero() else ring.zero
             for x in vec]
    polys = _strip_row_content(polys, ring)
    first = next((p for p in polys if not p.is_zero()), None)
    if first is not None and first.leading_coeff() < 0:
        polys = [-p for p in polys]
    return [RatFunc.from_poly(p) for p in polys]


def nullspace_selected(rows, ncols, ring, rng=None) -> list:
    """Nullspace of an MPoly matrix using a specialized row preselection.

    A random integer specialization identifies a maximal independent row
    set; the exact kernel of those rows is computed and then verified
    against every remaining row, pulling in violated rows and repeating.
    Sound: specialization rank is a lower bound on generic rank, and the
    final kernel is checked exactly.
    """
    rng = rng or random.Random(0x9A7)
    rows = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not rows:
        return [[RatFunc.one(ring) if i == j else RatFunc.zero(ring)
                 for i in range(ncols)] for j in range(ncols)]
    point = [Fraction(rng.randint(11, 10 ** 6)) for _ in ring.names]
    rank, selected = _row_basis_at_point(rows, ncols, point)
    if rank == ncols:
        return []
    sub = [rows[i] for i in selected]
    rest = [rows[i] for i in range(len(rows)) if i not in set(selected)]
    while True:
        kernel = nullspace_poly(sub, ncols, ring)
        if not kernel:
            return []
        bad = None
        for row in rest:
            for vec in kernel:
                s = ring.zero
                for x, v in zip(row, vec):
                    if not x.is_zero() and not v.is_zero():
                        s = s + x * v.num
                if not s.is_zero():
                    bad = row
                    break
            if bad is not None:
                break
        if bad is None:
            return kernel
        sub.append(bad)
        rest = [r for r in rest if r is not bad]


def _row_basis_at_point(rows, ncols, point):
    spec = [[x.eval_point(point) for x in row] for row in rows]
    rank = 0
    selected = []
    cols_used = set()
    rows_left = list(range(len(spec)))
    for c in range(ncols):
        pr = next((r for r in rows_left if spec[r][c] != 0), None)
        if pr is None:
            continue
        rows_left.remove(pr)
        selected.append(pr)
        cols_used.add(c)
        rank += 1
        pv = spec[pr][c]
        for r in rows_left:
            f = spec[r][c]
            if f:
                spec[r] = [a - f / pv * b for a, b in zip(spec[r], spec[pr])]
    return rank, selected


def matrix_rank_at_point(rows, ncols, point) -> int:
    """Rank of an MPoly matrix specialized at an integer point (may be a
    lower bound on the generic rank; equality holds generically)."""
    spec = []
    for row in rows:
        srow = [x.eval_point(point) for x in row]
        spec.append(srow)
    rank = 0
    cols = list(range(ncols))
    rows_left = list(range(len(spec)))
    for c in cols:
        pr = next((r for r in rows_left if spec[r][c] != 0), None)
        if pr is None:
            continue
        rows_left.remove(pr)
        rank += 1
        pv = spec[pr][c]
        for r in rows_left:
            f = spec[r][c]
            if f:
                spec[r] = [a - f / pv * b for a, b in zip(spec[r], spec[pr])]
    return rank
