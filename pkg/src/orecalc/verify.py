"""Numeric oracle: exact evaluation of the corpus sequences, application of
shift operators to tabulated data, and end-to-end identity checks of
telescopers against brute-force definite sums.

All arithmetic is Fraction-exact; failures are report entries rather than
exceptions so a whole box can be swept in one call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .errors import NonDiscreteAlgebra, OutOfDomain
from .ore import OreKind, OrePoly, difference_to_shift

# -- builtin sequences --------------------------------------------------------

_stirling2_memo = {(0, 0): Fraction(1)}
_eulerian1_memo = {(0, 0): Fraction(1)}
_bernoulli_memo = {0: Fraction(1), 1: Fraction(-1, 2)}


def binomial(n, k) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def stirling2(n, k) -> Fraction:
    """Stirling numbers of the second kind, S2(n,k) = S2(n-1,k-1) + k*S2(n-1,k)."""
    if k < 0 or k > n or n < 0:
        return Fraction(0)
    v = _stirling2_memo.get((n, k))
    if v is None:
        v = stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)
        _stirling2_memo[(n, k)] = v
    return v


def eulerian1(n, m) -> Fraction:
    """Eulerian numbers of the first kind (ascent counts of permutations)."""
    if m < 0 or n < 0 or (n == 0 and m > 0) or (n > 0 and m >= n):
        return Fraction(0)
    v = _eulerian1_memo.get((n, m))
    if v is None:
        v = (m + 1) * eulerian1(n - 1, m) + (n - m) * eulerian1(n - 1, m - 1)
        _eulerian1_memo[(n, m)] = v
    return v


def bernoulli(n) -> Fraction:
    """First Bernoulli numbers: B1 = -1/2."""
    if n < 0:
        raise OutOfDomain("Bernoulli number of negative index")
    v = _bernoulli_memo.get(n)
    if v is None:
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * bernoulli(j)
        v = -acc / (n + 1)
        _bernoulli_memo[n] = v
    return v


def factorial(n) -> Fraction:
    if n < 0:
        raise OutOfDomain("factorial of negative integer")
    return Fraction(math.factorial(n))


# -- oracle expressions ---------------------------------------------------------


@dataclass(frozen=True)
class LinExpr:
    """Integer-linear index expression: sum of coeff*var plus a constant."""

    coeffs: tuple = ()  # ((var, coeff), ...)
    const: int = 0

    @staticmethod
    def of(const=0, **coeffs):
        return LinExpr(tuple(sorted(coeffs.items())), const)

    def eval(self, env) -> int:
        total = self.const
        for v, c in self.coeffs:
            total += c * env[v]
        return total

    def variables(self):
        return {v for v, _ in self.coeffs}

    def __str__(self):
        bits = []
        for v, c in self.coeffs:
            if c == 1:
                bits.append(v)
            elif c == -1:
                bits.append("-" + v)
            else:
                bits.append("%d*%s" % (c, v))
        if self.const or not bits:
            bits.append(str(self.const))
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out


_BUILTINS = {
    "binomial": (2, binomial, True),
    "stirling2": (2, stirling2, True),
    "eulerian1": (2, eulerian1, True),
    "bernoulli": (1, bernoulli, False),
    "factorial": (1, factorial, False),
}


class SequenceOracle:
    """Base for exact sequence expressions; eval(env) -> Fraction."""

    def eval(self, env) -> Fraction:
        raise NotImplementedError

    def variables(self):
        raise NotImplementedError

    def has_finite_support(self) -> bool:
        return False


@dataclass(frozen=True)
class Builtin(SequenceOracle):
    name: str
    args: tuple  # of LinExpr

    def __post_init__(self):
        arity, _, _ = _BUILTINS[self.name]
        if len(self.args) != arity:
            raise OutOfDomain("%s takes %d arguments" % (self.name, arity))

    def eval(self, env):
        _, fn, _ = _BUILTINS[self.name]
        return fn(*(a.eval(env) for a in self.args))

    def variables(self):
        out = set()
        for a in self.args:
            out |= a.variables()
        return out

    def has_finite_support(self):
        return _BUILTINS[self.name][2]

    def __str__(self):
        return "%s(%s)" % (self.name, ", ".join(str(a) for a in self.args))


@dataclass(frozen=True)
class Const(SequenceOracle):
    value: Fraction

    def eval(self, env):
        return self.value

    def variables(self):
        return set()

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Pow(SequenceOracle):
    """base^exp with integer-linear base and exponent; 0^0 = 1."""

    base: LinExpr
    exp: LinExpr

    def eval(self, env):
        b = self.base.eval(env)
        e = self.exp.eval(env)
        if b == 0:
            if e == 0:
                return Fraction(1)
            if e < 0:
                raise OutOfDomain("0 raised to a negative power")
            return Fraction(0)
        return Fraction(b) ** e

    def variables(self):
        return self.base.variables() | self.exp.variables()

    def __str__(self):
        return "pow(%s, %s)" % (self.base, self.exp)


@dataclass(frozen=True)
class Lin(SequenceOracle):
    expr: LinExpr

    def eval(self, env):
        return Fraction(self.expr.eval(env))

    def variables(self):
        return self.expr.variables()

    def __str__(self):
        text = str(self.expr)
        if len(self.expr.coeffs) + (1 if self.expr.const else 0) > 1:
            return "(%s)" % text
        return text


@dataclass(frozen=True)
class Product(SequenceOracle):
    factors: tuple

    def eval(self, env):
        # bounded-support factors first: a zero there suppresses factors
        # that would be out of domain outside the window (e.g. Bernoulli)
        ordered = sorted(self.factors,
                         key=lambda f: not f.has_finite_support())
        total = Fraction(1)
        for f in ordered:
            v = f.eval(env)
            if v == 0:
                return Fraction(0)
            total *= v
        return total

    def variables(self):
        out = set()
        for f in self.factors:
            out |= f.variables()
        return out

    def has_finite_support(self):
        return any(f.has_finite_support() for f in self.factors)

    def __str__(self):
        return " * ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Add(SequenceOracle):
    terms: tuple

    def eval(self, env):
        return sum((t.eval(env) for t in self.terms), Fraction(0))

    def variables(self):
        out = set()
        for t in self.terms:
            out |= t.variables()
        return out

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


class DefiniteSum(SequenceOracle):
    """Sum over the natural (finite) support of the body in one variable.

    The window is found by scanning outward until `margin` consecutive
    zeros flank the nonzero core; a summand that never dies out raises."""

    def __init__(self, var, body, margin=8, cap=600):
        self.var = var
        self.body = body
        self.margin = margin
        self.cap = cap
        self._memo = {}

    def eval(self, env):
        key = tuple(sorted((v, env[v]) for v in self.variables()))
        v = self._memo.get(key)
        if v is None:
            v = self._sum(dict(env))
            self._memo[key] = v
        return v

    def _sum(self, env):
        forward = self._values(env)
        total = Fraction(0)
        for x in forward:
            total += x
        # reversed accumulation must agree exactly
        rtotal = Fraction(0)
        for x in reversed(forward):
            rtotal += x
        if total != rtotal:
            raise AssertionError("accumulation order changed an exact sum")
        return total

    def _values(self, env):
        # window sized from the outer indices: the corpus supports all sit
        # inside +-(sum of |outer|) up to a constant
        w = self.margin + 4 + sum(abs(env[v]) for v in self.variables())
        w = min(w, self.cap)
        vals = []
        for x in range(-w, w + 1):
            env[self.var] = x
            vals.append(self.body.eval(env))
        if any(v != 0 for v in vals[:self.margin]) or \
                any(v != 0 for v in vals[-self.margin:]):
            raise OutOfDomain("summand does not vanish (no natural boundary)")
        return vals

    def variables(self):
        return self.body.variables() - {self.var}

    def __str__(self):
        return "sum(%s, %s)" % (self.var, self.body)


def eval_sequence(oracle: SequenceOracle, env) -> Fraction:
    """Exact value of an oracle expression at an integer point."""
    return oracle.eval(env)


# -- operators acting on sequences -----------------------------------------------


def _as_shift_form(L: OrePoly) -> OrePoly:
    alg = L.algebra
    diff_gens = [g.name for g in alg.gens if g.kind is OreKind.DIFFERENCE]
    if diff_gens:
        L = difference_to_shift(L, diff_gens)
        alg = L.algebra
    for g in alg.gens:
        if g.kind is not OreKind.SHIFT:
            raise NonDiscreteAlgebra(
                "numeric application needs shift/difference generators, got %s"
                % g.kind.value)
    return L


def apply_operator_numeric(L: OrePoly, oracle: SequenceOracle, points):
    """(L . h) evaluated at integer points, h given by the oracle.

    Returns a list of (env, value-or-None, note); a vanishing coefficient
    denominator skips the sample with a note.
    """
    L = _as_shift_form(L)
    alg = L.algebra
    gvars = [g.var for g in alg.gens]
    names = alg.field.names
    needed = set()
    for exp, coeff in L.terms.items():
        for i in coeff.num.variables() | coeff.den.variables():
            needed.add(names[i])
        for i, e in enumerate(exp):
            if e:
                needed.add(gvars[i])
    out = []
    for env in points:
        missing = needed - set(env)
        if missing:
            raise KeyError("operator involves %s but the sample point does not"
                           % ", ".join(sorted(missing)))
        point = [Fraction(env.get(v, 0)) for v in names]
        total = Fraction(0)
        skipped = None
        for exp, coeff in L.terms.items():
            if coeff.den.eval_point(point) == 0:
                skipped = "denominator vanishes at %r" % (env,)
                break
            c = coeff.eval_point(point)
            shifted = dict(env)
            for i, e in enumerate(exp):
                if e:
                    shifted[gvars[i]] += e
            total += c * oracle.eval(shifted)
        if skipped:
            out.append((dict(env), None, skipped))
        else:
            out.append((dict(env), total, ""))
    return out


def box_points(ranges):
    """Cartesian product of {var: (lo, hi)} inclusive ranges."""
    names = list(ranges)
    out = [{}]
    for v in names:
        lo, hi = ranges[v]
        out = [dict(e, **{v: x}) for e in out for x in range(lo, hi + 1)]
    return out


@dataclass
class IdentityReport:
    passed: bool
    checked: int = 0
    counterexamples: list = dataclass_field(default_factory=list)
    skipped: list = dataclass_field(default_factory=list)
    notes: list = dataclass_field(default_factory=list)

    def fail(self, env, what):
        self.passed = False
        self.counterexamples.append((dict(env), what))


def check_identity(summand: SequenceOracle, telescoper: OrePoly,
                   closed_form: SequenceOracle, sum_var: str,
                   outer_ranges: dict, initial_slice: dict = None) -> IdentityReport:
    """Verify a definite-sum identity witnessed by a telescoper.

    Checks that the telescoper annihilates (i) the brute-force sum and
    (ii) the closed form over the box, and (iii) that the two sides agree
    on the initial slice (by default the whole box).  Purely finite-box
    evidence: for positive-dimensional annihilators the infinite family of
    initial conditions is out of reach, and the report says so.
    """
    report = IdentityReport(passed=True)
    margin = max((sum(e) for e in telescoper.terms), default=0) + 4
    lhs = DefiniteSum(sum_var, summand, margin=margin)
    points = box_points(outer_ranges)
    for env, value, note in apply_operator_numeric(telescoper, lhs, points):
        report.checked += 1
        if value is None:
            report.skipped.append((env, note))
        elif value != 0:
            report.fail(env, "telescoper does not annihilate the sum")
    for env, value, note in apply_operator_numeric(telescoper, closed_form, points):
        if value is None:
            report.skipped.append((env, note))
        elif value != 0:
            report.fail(env, "telescoper does not annihilate the closed form")
    if initial_slice is None:
        slice_points = points
    else:
        slice_points = [dict(env, **initial_slice) for env in points]
        seen = set()
        uniq = []
        for env in slice_points:
            key = tuple(sorted(env.items()))
            if key not in seen:
                seen.add(key)
                uniq.append(env)
        slice_points = uniq
    for env in slice_points:
        if lhs.eval(env) != closed_form.eval(env):
            report.fail(env, "initial values differ")
    report.notes.append("verified on a finite box only")
    return report
