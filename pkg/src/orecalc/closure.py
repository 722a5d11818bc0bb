"""Closure properties: annihilating ideals of d.f, f1+f2, and f1*f2.

Rewrites d^alpha applied to the derived function as a coordinate vector
over normal-form monomials (pairs of monomials for products), then takes
the kernel of the resulting matrix of rational functions, degree by
degree.  The dimension bounds are: apply <= dim I1, sum <= max of the
dimensions, product <= their sum (the latter needs a linear algebra,
which every catalog kind provides).
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import RatFunc, nullspace
from .dimension import UNIT_IDEAL, hilbert_dimension
from .errors import AlgebraMismatch, NonlinearAlgebra
from .groebner import GREVLEX, GroebnerBasis, LeftIdeal, MonomialOrder
from .ore import OrePoly


@dataclass
class ClosureResult:
    """Output ideal plus how the run went against the dimension bound."""

    ideal: LeftIdeal
    bound: object          # int, or None when trivially satisfied
    bound_met: bool
    used_degree: int
    dimension: object

    def __iter__(self):  # allow: ideal, met = result
        yield self.ideal
        yield self.bound_met


def _monomials_up_to(n, s):
    out = []
    exp = [0] * n

    def rec(pos, budget):
        if pos == n:
            out.append(tuple(exp))
            return
        for d in range(budget + 1):
            exp[pos] = d
            rec(pos + 1, budget - d)
        exp[pos] = 0

    rec(0, s)
    out.sort(key=lambda e: (sum(e), e))
    return out


def _acc(d, key, val):
    cur = d.get(key)
    if cur is None:
        if not val.is_zero():
            d[key] = val
    else:
        cur = cur + val
        if cur.is_zero():
            del d[key]
        else:
            d[key] = cur


def _check_linear(alg):
    for i in range(alg.ngens):
        try:
            alg.linearization(i)
        except Exception:
            raise NonlinearAlgebra(
                "generator %s has no linear extension" % alg.gens[i].name)


class _ProductFrame:
    """Expansion table for d^alpha . (f1*f2) over coordinate pairs."""

    def __init__(self, gb1: GroebnerBasis, gb2: GroebnerBasis):
        self.alg = gb1.algebra
        self.gb1 = gb1
        self.gb2 = gb2
        zero = (0,) * self.alg.ngens
        one = RatFunc.one(self.alg.field)
        self.states = {zero: {(zero, zero): one}}

    def state(self, alpha):
        st = self.states.get(alpha)
        if st is not None:
            return st
        i = max(j for j, x in enumerate(alpha) if x)
        prev = list(alpha)
        prev[i] -= 1
        st = self._apply_gen(i, self.state(tuple(prev)))
        self.states[alpha] = st
        return st

    def _apply_gen(self, i, state):
        alg = self.alg
        asig, bsig, adel, bdel, lam = alg.linearization(i)
        c_dd = lam * asig * asig + asig * adel       # (dF)(dG)
        c_d0 = lam * asig * bsig + asig * bdel + adel  # (dF)(G)
        c_0d = lam * bsig * asig + bsig * adel       # (F)(dG)
        c_00 = lam * bsig * bsig + bsig * bdel + bdel  # (F)(G)
        out = {}
        for (beta, gamma), u in state.items():
            su = alg.sigma(i, u)
            du = alg.delta(i, u)
            if not su.is_zero():
                dF = self.gb1.table(i, beta) if (not c_dd.is_zero() or not c_d0.is_zero()) else {}
                dG = self.gb2.table(i, gamma) if (not c_dd.is_zero() or not c_0d.is_zero()) else {}
                if not c_dd.is_zero():
                    for b2, vb in dF.items():
                        svb = su * c_dd * vb
                        for g2, vg in dG.items():
                            _acc(out, (b2, g2), svb * vg)
                if not c_d0.is_zero():
                    for b2, vb in dF.items():
                        _acc(out, (b2, gamma), su * c_d0 * vb)
                if not c_0d.is_zero():
                    for g2, vg in dG.items():
                        _acc(out, (beta, g2), su * c_0d * vg)
                if not c_00.is_zero():
                    _acc(out, (beta, gamma), su * c_00)
            if not du.is_zero():
                _acc(out, (beta, gamma), du)
        return out


class _SumFrame:
    """Expansion of d^alpha . (f1+f2): two independent coordinate blocks."""

    def __init__(self, gb1, gb2):
        self.alg = gb1.algebra
        self.gbs = (gb1, gb2)
        zero = (0,) * self.alg.ngens
        one = RatFunc.one(self.alg.field)
        self.states = {zero: {(0, zero): one, (1, zero): one}}

    def state(self, alpha):
        st = self.states.get(alpha)
        if st is not None:
            return st
        i = max(j for j, x in enumerate(alpha) if x)
        prev = list(alpha)
        prev[i] -= 1
        st = self._apply_gen(i, self.state(tuple(prev)))
        self.states[alpha] = st
        return st

    def _apply_gen(self, i, state):
        alg = self.alg
        out = {}
        for (side, gamma), u in state.items():
            su = alg.sigma(i, u)
            du = alg.delta(i, u)
            if not su.is_zero():
                for g2, v in self.gbs[side].table(i, gamma).items():
                    _acc(out, (side, g2), su * v)
            if not du.is_zero():
                _acc(out, (side, gamma), du)
        return out


class _ApplyFrame:
    """Expansion of d^alpha . (g . f): plain normal forms of d^alpha * g."""

    def __init__(self, gb: GroebnerBasis, gen_index: int):
        self.alg = gb.algebra
        self.gb = gb
        e = [0] * self.alg.ngens
        e[gen_index] = 1
        zero = (0,) * self.alg.ngens
        self.states = {zero: dict(gb.phi(tuple(e)))}

    def state(self, alpha):
        st = self.states.get(alpha)
        if st is not None:
            return st
        i = max(j for j, x in enumerate(alpha) if x)
        prev = list(alpha)
        prev[i] -= 1
        st = self.gb.apply_gen_to_nf(i, self.state(tuple(prev)))
        self.states[alpha] = st
        return st


def _numeric_dim(d):
    return None if d is UNIT_IDEAL else d


def _kernel_relations(frame, monomials, alg, order):
    coords = set()
    cols = []
    for m in monomials:
        st = frame.state(m)
        coords |= set(st)
        cols.append(st)
    coord_list = sorted(coords, key=repr)
    rows = []
    zero = RatFunc.zero(alg.field)
    for c in coord_list:
        rows.append([st.get(c, zero) for st in cols])
    if not rows:
        # everything annihilates: the derived function is zero
        return [alg.one]
    kernel = nullspace(rows)
    rels = []
    for vec in kernel:
        terms = {m: v for m, v in zip(monomials, vec) if not v.is_zero()}
        if terms:
            rels.append(OrePoly(alg, terms))
    return rels


def _autoreduce(rels, order, alg):
    """Light interreduction of a generator list (not a full basis)."""
    rels = [r for r in rels if not r.is_zero()]
    rels.sort(key=lambda r: order.key(order.leading_exp(r)))
    out = []
    for r in rels:
        if out:
            helper = GroebnerBasis(alg, order, out)
            r = helper.normal_form(r)
        if not r.is_zero():
            lead = order.leading_exp(r)
            lc = r.terms[lead]
            if not lc.is_one():
                r = r.scale(lc.inverse())
            out.append(r)
    return out


def _closure_run(make_frame, bound, I_args, max_degree, order):
    alg = I_args[0].algebra
    frame = make_frame()
    relations = []
    used = 0
    dim = None
    for s in range(1, max_degree + 1):
        used = s
        monomials = _monomials_up_to(alg.ngens, s)
        rels = _kernel_relations(frame, monomials, alg, order)
        rels = _autoreduce(rels, order, alg)
        if not rels:
            continue
        relations = rels
        J = LeftIdeal(alg, relations)
        dim = hilbert_dimension(J, order)
        if bound is None or _numeric_dim(dim) is None or dim <= bound:
            return ClosureResult(J, bound, True, s, dim)
    J = LeftIdeal(alg, relations)
    dim = hilbert_dimension(J, order) if relations else alg.ngens
    met = bound is None or (relations and (_numeric_dim(dim) is None or dim <= bound))
    return ClosureResult(J, bound, bool(met), used, dim)


def closure_product(I1: LeftIdeal, I2: LeftIdeal, max_degree: int,
                    order: MonomialOrder = GREVLEX) -> ClosureResult:
    """Annihilator (subideal) of f1*f2 from annihilators of f1 and f2."""
    if I1.algebra != I2.algebra:
        raise AlgebraMismatch("closure operands in different algebras")
    _check_linear(I1.algebra)
    d1 = _numeric_dim(hilbert_dimension(I1, order))
    d2 = _numeric_dim(hilbert_dimension(I2, order))
    bound = None if d1 is None or d2 is None else d1 + d2
    gb1, gb2 = I1.groebner_basis(order), I2.groebner_basis(order)
    return _closure_run(lambda: _ProductFrame(gb1, gb2), bound,
                        (I1, I2), max_degree, order)


def closure_sum(I1: LeftIdeal, I2: LeftIdeal, max_degree: int,
                order: MonomialOrder = GREVLEX) -> ClosureResult:
    """Annihilator (subideal) of f1 + f2."""
    if I1.algebra != I2.algebra:
        raise AlgebraMismatch("closure operands in different algebras")
    d1 = _numeric_dim(hilbert_dimension(I1, order))
    d2 = _numeric_dim(hilbert_dimension(I2, order))
    if d1 is None:
        bound = d2
    elif d2 is None:
        bound = d1
    else:
        bound = max(d1, d2)
    gb1, gb2 = I1.groebner_basis(order), I2.groebner_basis(order)
    return _closure_run(lambda: _SumFrame(gb1, gb2), bound,
                        (I1, I2), max_degree, order)


def closure_apply(gen_name: str, I: LeftIdeal, max_degree: int,
                  order: MonomialOrder = GREVLEX) -> ClosureResult:
    """Annihilator (subideal) of d.f for a single generator d."""
    bound = _numeric_dim(hilbert_dimension(I, order))
    gb = I.groebner_basis(order)
    gi = I.algebra.gen_index[gen_name]
    return _closure_run(lambda: _ApplyFrame(gb, gi), bound,
                        (I,), max_degree, order)
