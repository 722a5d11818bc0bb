"""Ore algebras and skew polynomials.

An algebra is declared over a rational-function coefficient field together
with a list of generators from the operator catalog; each generator carries
the pair (sigma, delta) that drives the commutation rule

    d * a  =  sigma(a) * d + delta(a).

Skew polynomials (OrePoly) multiply by repeated application of that rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arith import MPoly, PolyRing, RatFunc, format_poly, _grevlex_key
from .errors import AlgebraMismatch, KindMismatch, UnknownVariable


class OreKind(Enum):
    DIFFERENTIATION = "diff"
    SHIFT = "shift"
    DIFFERENCE = "difference"
    Q_DILATION = "qdilation"
    CONT_Q_DIFFERENCE = "cqdifference"
    Q_DIFFERENTIATION = "qdiff"
    Q_SHIFT = "qshift"
    DISCRETE_Q_DIFFERENCE = "dqdifference"
    EULER = "euler"
    MAHLER = "mahler"
    DIVIDED_DIFFERENCE = "divdiff"


# kinds whose action on a function module is sigma itself (lambda = 1);
# for the others the action is delta (lambda = 0)
_SIGMA_ACTION_KINDS = frozenset({
    OreKind.SHIFT, OreKind.Q_DILATION, OreKind.Q_SHIFT, OreKind.MAHLER,
})

_Q_KINDS = frozenset({
    OreKind.Q_DILATION, OreKind.CONT_Q_DIFFERENCE, OreKind.Q_DIFFERENTIATION,
    OreKind.Q_SHIFT, OreKind.DISCRETE_Q_DIFFERENCE,
})


@dataclass(frozen=True)
class OreGenerator:
    """One catalog generator attached to a single ground variable."""

    name: str
    kind: OreKind
    var: str
    param: str = None            # q, for the q-kinds
    mahler_base: int = None      # b >= 2
    eval_point: object = None    # RatFunc, for divided differences

    def __post_init__(self):
        if self.kind in _Q_KINDS and self.param is None:
            raise KindMismatch("%s generator %r needs a parameter"
                               % (self.kind.value, self.name))
        if self.kind is OreKind.MAHLER:
            if self.mahler_base is None or self.mahler_base < 2:
                raise KindMismatch("Mahler generator needs integer base >= 2")
        if self.kind is OreKind.DIVIDED_DIFFERENCE and self.eval_point is None:
            raise KindMismatch("divided difference needs an evaluation point")


class OreAlgebra:
    """C(x1..xm)<d1..dn> with the declared commutation data.

    `ground_vars` and `params` together span the coefficient field;
    `telescopers` optionally marks the default candidates for telescoping.
    """

    def __init__(self, ground_vars, gens, params=(), telescopers=()):
        self.ground_vars = tuple(ground_vars)
        self.params = tuple(params)
        self.gens = tuple(gens)
        self.telescopers = tuple(telescopers)
        names = self.ground_vars + self.params
        if len(set(names) | {g.name for g in self.gens}) != len(names) + len(self.gens):
            raise AlgebraMismatch("generator, variable, and parameter names must be distinct")
        self.field = PolyRing(names)
        self.gen_index = {g.name: i for i, g in enumerate(self.gens)}
        for g in self.gens:
            if g.var not in self.field.index:
                raise UnknownVariable("ground variable %r of generator %r not declared"
                                      % (g.var, g.name))
            if g.param is not None and g.param not in self.field.index:
                raise UnknownVariable("parameter %r not declared" % g.param)
        for t in self.telescopers:
            if t not in self.gen_index:
                raise UnknownVariable("telescoper %r is not a generator" % t)
        self.ngens = len(self.gens)
        self._zero_exp = (0,) * self.ngens
        self._check_commutation()

    # -- identity ---------------------------------------------------------------

    def _key(self):
        return (self.ground_vars, self.params,
                tuple((g.name, g.kind, g.var, g.param, g.mahler_base,
                       str(g.eval_point) if g.eval_point is not None else None)
                      for g in self.gens))

    def __eq__(self, other):
        return isinstance(other, OreAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join("%s:%s(%s)" % (g.name, g.kind.value, g.var) for g in self.gens)
        return "OreAlgebra(Q(%s)<%s>)" % (", ".join(self.ground_vars), gens)

    # -- sigma / delta ----------------------------------------------------------

    def _var_index(self, g: OreGenerator) -> int:
        return self.field.index[g.var]

    def sigma(self, i, a: RatFunc) -> RatFunc:
        g = self.gens[i]
        v = self._var_index(g)
        kind = g.kind
        if kind in (OreKind.DIFFERENTIATION, OreKind.EULER):
            return a
        if kind in (OreKind.SHIFT, OreKind.DIFFERENCE):
            return a.shift_var(v, 1)
        if kind in (OreKind.Q_DILATION, OreKind.CONT_Q_DIFFERENCE,
                    OreKind.Q_DIFFERENTIATION, OreKind.Q_SHIFT,
                    OreKind.DISCRETE_Q_DIFFERENCE):
            # x -> q*x is not a polynomial-ring automorphism (images can
            # pick up common powers of q), so renormalize fully
            q = self.field.index[g.param]
            return RatFunc(a.num.scale_var(v, factor_index=q),
                           a.den.scale_var(v, factor_index=q))
        if kind is OreKind.MAHLER:
            return RatFunc(a.num.power_var(v, g.mahler_base),
                           a.den.power_var(v, g.mahler_base))
        if kind is OreKind.DIVIDED_DIFFERENCE:
            return a.eval_var(v, g.eval_point)
        raise KindMismatch("unknown kind %r" % kind)

    def delta(self, i, a: RatFunc) -> RatFunc:
        g = self.gens[i]
        v = self._var_index(g)
        kind = g.kind
        if kind in (OreKind.SHIFT, OreKind.Q_DILATION, OreKind.Q_SHIFT,
                    OreKind.MAHLER):
            return RatFunc.zero(self.field)
        if kind is OreKind.DIFFERENTIATION:
            return a.derivative(v)
        if kind is OreKind.EULER:
            return a.derivative(v) * RatFunc.from_poly(self.field.var(g.var))
        if kind in (OreKind.DIFFERENCE, OreKind.CONT_Q_DIFFERENCE,
                    OreKind.DISCRETE_Q_DIFFERENCE):
            return self.sigma(i, a) - a
        if kind is OreKind.Q_DIFFERENTIATION:
            q = RatFunc.from_poly(self.field.var(g.param))
            x = RatFunc.from_poly(self.field.var(g.var))
            return (self.sigma(i, a) - a) / ((q - 1) * x)
        if kind is OreKind.DIVIDED_DIFFERENCE:
            x = RatFunc.from_poly(self.field.var(g.var))
            return (a - self.sigma(i, a)) / (x - g.eval_point)
        raise KindMismatch("unknown kind %r" % kind)

    def apply_sigma_delta(self, gen_name, a: RatFunc):
        """(sigma(a), delta(a)) for the named generator."""
        i = self.gen_index[gen_name]
        bad = a.num.variables() | a.den.variables()
        if any(v >= len(self.field.names) for v in bad):
            raise UnknownVariable("coefficient uses a foreign variable")
        return self.sigma(i, a), self.delta(i, a)

    def sigma_pow(self, i, a: RatFunc, e: int) -> RatFunc:
        """sigma_i applied e times; negative e where sigma is invertible."""
        if e == 0:
            return a
        g = self.gens[i]
        kind = g.kind
        v = self._var_index(g)
        if kind in (OreKind.DIFFERENTIATION, OreKind.EULER):
            return a
        if kind in (OreKind.SHIFT, OreKind.DIFFERENCE):
            return a.shift_var(v, e)
        if e > 0:
            for _ in range(e):
                a = self.sigma(i, a)
            return a
        if kind in (OreKind.Q_DILATION, OreKind.CONT_Q_DIFFERENCE,
                    OreKind.Q_DIFFERENTIATION, OreKind.Q_SHIFT,
                    OreKind.DISCRETE_Q_DIFFERENCE):
            q = RatFunc.from_poly(self.field.var(g.param))
            x = RatFunc.from_poly(self.field.var(g.var))
            for _ in range(-e):
                a = a.eval_var(v, x / q)
            return a
        raise KindMismatch("sigma of %s is not invertible" % kind.value)

    def module_action(self, i, a: RatFunc) -> RatFunc:
        """Action of generator i on the coefficient field as a left module."""
        if self.gens[i].kind in _SIGMA_ACTION_KINDS:
            return self.sigma(i, a)
        return self.delta(i, a)

    def linearization(self, i):
        """(a_sigma, b_sigma, a_delta, b_delta, lam): the module operators
        sigma = a_sigma*d + b_sigma, delta = a_delta*d + b_delta, and the
        action d = lam*sigma + delta; every catalog kind is linear."""
        g = self.gens[i]
        K = self.field
        zero, one = RatFunc.zero(K), RatFunc.one(K)
        kind = g.kind
        if kind in (OreKind.DIFFERENTIATION, OreKind.EULER):
            return zero, one, one, zero, zero
        if kind in (OreKind.SHIFT, OreKind.Q_DILATION, OreKind.Q_SHIFT,
                    OreKind.MAHLER):
            return one, zero, zero, zero, one
        if kind in (OreKind.DIFFERENCE, OreKind.CONT_Q_DIFFERENCE,
                    OreKind.DISCRETE_Q_DIFFERENCE):
            return one, one, one, zero, zero
        if kind is OreKind.Q_DIFFERENTIATION:
            q = RatFunc.from_poly(K.var(g.param))
            x = RatFunc.from_poly(K.var(g.var))
            return (q - 1) * x, one, one, zero, zero
        if kind is OreKind.DIVIDED_DIFFERENCE:
            x = RatFunc.from_poly(K.var(g.var))
            return -(x - g.eval_point), one, one, zero, zero
        raise KindMismatch("unknown kind %r" % kind)

    def _check_commutation(self):
        """Generators on distinct variables commute structurally; pairs that
        share a ground variable must be checked on sample inputs."""
        shared = {}
        for i, g in enumerate(self.gens):
            shared.setdefault(g.var, []).append(i)
        probes = None
        for var, idxs in shared.items():
            if len(idxs) < 2:
                continue
            if probes is None:
                v = self.field.var(var)
                probes = [RatFunc.from_poly(v),
                          RatFunc.from_poly(v * v + 1),
                          RatFunc(self.field.one, v + 2)]
            for a in range(len(idxs)):
                for b in range(a + 1, len(idxs)):
                    i, j = idxs[a], idxs[b]
                    for r in probes:
                        ok = (self.sigma(i, self.sigma(j, r)) == self.sigma(j, self.sigma(i, r))
                              and self.delta(i, self.delta(j, r)) == self.delta(j, self.delta(i, r))
                              and self.delta(i, self.sigma(j, r)) == self.sigma(j, self.delta(i, r))
                              and self.delta(j, self.sigma(i, r)) == self.sigma(i, self.delta(j, r)))
                        if not ok:
                            raise AlgebraMismatch(
                                "generators %s and %s on %s do not commute"
                                % (self.gens[i].name, self.gens[j].name, var))

    # -- element constructors -----------------------------------------------------

    @property
    def zero(self) -> "OrePoly":
        return OrePoly(self, {})

    @property
    def one(self) -> "OrePoly":
        return OrePoly(self, {self._zero_exp: RatFunc.one(self.field)})

    def gen(self, name) -> "OrePoly":
        i = self.gen_index[name]
        e = [0] * self.ngens
        e[i] = 1
        return OrePoly(self, {tuple(e): RatFunc.one(self.field)})

    def scalar(self, c) -> "OrePoly":
        if isinstance(c, MPoly):
            c = RatFunc.from_poly(c)
        elif not isinstance(c, RatFunc):
            c = RatFunc.const(self.field, c)
        if c.is_zero():
            return self.zero
        return OrePoly(self, {self._zero_exp: c})

    def var(self, name) -> "OrePoly":
        return self.scalar(RatFunc.from_poly(self.field.var(name)))


class OrePoly:
    """Skew polynomial: sparse map generator-exponent vector -> RatFunc."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_gen(self, i) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def support(self):
        return set(self.terms)

    def _require_same(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("operands live in different Ore algebras")

    def __add__(self, other):
        if not isinstance(other, OrePoly):
            other = self.algebra.scalar(other)
        self._require_same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            if cur is None:
                terms[e] = c
            else:
                cur = cur + c
                if cur.is_zero():
                    del terms[e]
                else:
                    terms[e] = cur
        return OrePoly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OrePoly):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RatFunc) -> "OrePoly":
        """Left multiplication by a coefficient-field element."""
        if not isinstance(c, RatFunc):
            c = RatFunc.const(self.algebra.field, c)
        if c.is_zero():
            return self.algebra.zero
        return OrePoly(self.algebra, {e: c * v for e, v in self.terms.items()})

    def lmul_gen(self, i) -> "OrePoly":
        """Left multiplication by generator i via the commutation rule."""
        alg = self.algebra
        out = {}
        for e, c in self.terms.items():
            s = alg.sigma(i, c)
            if not s.is_zero():
                ne = list(e)
                ne[i] += 1
                _opacc(out, tuple(ne), s)
            d = alg.delta(i, c)
            if not d.is_zero():
                _opacc(out, e, d)
        return OrePoly(alg, out)

    def lmul_monomial(self, exp) -> "OrePoly":
        h = self
        for i, e in enumerate(exp):
            for _ in range(e):
                h = h.lmul_gen(i)
        return h

    def __mul__(self, other):
        if not isinstance(other, OrePoly):
            # right multiplication by a scalar is a genuine skew product
            other = self.algebra.scalar(other)
        self._require_same(other)
        alg = self.algebra
        cache = {alg._zero_exp: other}

        def monomial_times_other(exp):
            h = cache.get(exp)
            if h is not None:
                return h
            i = max(j for j, x in enumerate(exp) if x)
            prev = list(exp)
            prev[i] -= 1
            h = monomial_times_other(tuple(prev)).lmul_gen(i)
            cache[exp] = h
            return h

        out = {}
        for e, c in sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0])):
            part = monomial_times_other(e)
            for pe, pc in part.terms.items():
                _opacc(out, pe, c * pc)
        return OrePoly(alg, out)

    def __rmul__(self, other):
        # scalar * OrePoly; scalars commute into the coefficient only from the left
        if isinstance(other, (int, Fraction, RatFunc, MPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of an operator")
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn) -> "OrePoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[e] = v
        return OrePoly(self.algebra, out)

    def apply_to_ratfunc(self, r: RatFunc) -> RatFunc:
        """Act on an element of the coefficient field (the natural module)."""
        alg = self.algebra
        cache = {alg._zero_exp: r}

        def act(exp):
            v = cache.get(exp)
            if v is not None:
                return v
            i = max(j for j, x in enumerate(exp) if x)
            prev = list(exp)
            prev[i] -= 1
            v = alg.module_action(i, act(tuple(prev)))
            cache[exp] = v
            return v

        total = RatFunc.zero(alg.field)
        for e, c in self.terms.items():
            total = total + c * act(e)
        return total

    def __repr__(self):
        return "OrePoly(%s)" % self.__str__()

    def __str__(self):
        return format_opoly(self)


def _opacc(d, e, c):
    cur = d.get(e)
    if cur is None:
        if not c.is_zero():
            d[e] = c
    else:
        cur = cur + c
        if cur.is_zero():
            del d[e]
        else:
            d[e] = cur


def format_opoly(f: OrePoly) -> str:
    if not f.terms:
        return "0"
    names = [g.name for g in f.algebra.gens]
    bits = []
    for e in sorted(f.terms, key=_grevlex_key, reverse=True):
        c = f.terms[e]
        mono = "*".join(names[i] if d == 1 else "%s^%d" % (names[i], d)
                        for i, d in enumerate(e) if d)
        cs = str(c)
        if mono:
            if c.is_one():
                text = mono
            elif (-c).is_one():
                text = "-" + mono
            else:
                if ("+" in cs[1:] or "-" in cs[1:] or "/" in cs) and not (
                        cs.startswith("(") and cs.endswith(")")):
                    cs = "(%s)" % cs
                text = "%s*%s" % (cs, mono)
        else:
            text = cs
        bits.append(text)
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out


# -- telescoping witnesses ---------------------------------------------------------

_TELESCOPABLE = frozenset({
    OreKind.DIFFERENTIATION, OreKind.DIFFERENCE, OreKind.Q_DIFFERENTIATION,
})


def telescopable_witness(algebra: OreAlgebra, gen_name: str):
    """(a, b) with delta(a) = b a nonzero t-free constant, or None.

    Differentiation, difference, and q-differentiation admit a = t with
    b = 1; the pure-substitution kinds have delta = 0 and admit nothing.
    """
    i = algebra.gen_index[gen_name]
    g = algebra.gens[i]
    if g.kind not in _TELESCOPABLE:
        return None
    a = RatFunc.from_poly(algebra.field.var(g.var))
    b = algebra.delta(i, a)
    return a, b


# -- the shift <-> difference transport ---------------------------------------------


def _converted_algebra(algebra: OreAlgebra, gen_names, from_kind, to_kind):
    gens = []
    for g in algebra.gens:
        if g.name in gen_names:
            if g.kind is not from_kind:
                raise KindMismatch("generator %s has kind %s, expected %s"
                                   % (g.name, g.kind.value, from_kind.value))
            gens.append(OreGenerator(g.name, to_kind, g.var, g.param,
                                     g.mahler_base, g.eval_point))
        else:
            gens.append(g)
    return OreAlgebra(algebra.ground_vars, gens, algebra.params,
                      algebra.telescopers)


def _transport(f: OrePoly, target: OreAlgebra, gen_idx, offset: int) -> OrePoly:
    """Left-linear substitution d_i -> d_i + offset for i in gen_idx."""
    out = {}
    for e, c in f.terms.items():
        parts = [(e, Fraction(1))]
        for i in gen_idx:
            d = e[i]
            if d == 0:
                continue
            new_parts = []
            for (pe, pc) in parts:
                for j in range(d + 1):
                    ne = list(pe)
                    ne[i] = j
                    new_parts.append((tuple(ne),
                                      pc * math.comb(d, j) * Fraction(offset) ** (d - j)))
            parts = new_parts
        for pe, pc in parts:
            cur = out.get(pe)
            add = c * pc
            if cur is None:
                if not add.is_zero():
                    out[pe] = add
            else:
                cur = cur + add
                if cur.is_zero():
                    del out[pe]
                else:
                    out[pe] = cur
    return OrePoly(target, out)


def shift_to_difference(f: OrePoly, gen_names) -> OrePoly:
    """Rewrite shift generators as difference generators: S = Delta + 1."""
    target = _converted_algebra(f.algebra, set(gen_names), OreKind.SHIFT,
                                OreKind.DIFFERENCE)
    idx = [f.algebra.gen_index[n] for n in gen_names]
    return _transport(f, target, idx, 1)


def difference_to_shift(f: OrePoly, gen_names) -> OrePoly:
    """Inverse of shift_to_difference: Delta = S - 1."""
    target = _converted_algebra(f.algebra, set(gen_names), OreKind.DIFFERENCE,
                                OreKind.SHIFT)
    idx = [f.algebra.gen_index[n] for n in gen_names]
    return _transport(f, target, idx, -1)
