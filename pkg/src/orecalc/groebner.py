"""Left Groebner bases in Ore algebras.

Exponent arithmetic is commutative (the noncommutativity lives in the
coefficients), so the Buchberger loop parallels the commutative one; the
only twists are that left-multiplying by a monomial twists coefficients
through sigma, and that basis elements are kept monic so reduction never
divides.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import RatFunc
from .errors import AlgebraMismatch
from .ore import OreAlgebra, OrePoly


@dataclass(frozen=True)
class MonomialOrder:
    """Graded order on generator exponents: grevlex or grlex, after an
    optional permutation of the generators."""

    kind: str = "grevlex"
    perm: tuple = None

    def key(self, exp):
        e = exp if self.perm is None else tuple(exp[i] for i in self.perm)
        if self.kind == "grevlex":
            return (sum(e), tuple(-x for x in reversed(e)))
        if self.kind == "grlex":
            return (sum(e), e)
        raise ValueError("unknown order kind %r" % self.kind)

    def leading_exp(self, f: OrePoly):
        return max(f.terms, key=self.key)


GREVLEX = MonomialOrder("grevlex")
GRLEX = MonomialOrder("grlex")


def _divides_exp(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monic(f: OrePoly, order: MonomialOrder) -> OrePoly:
    lead = order.leading_exp(f)
    lc = f.terms[lead]
    if lc.is_one():
        return f
    inv = lc.inverse()
    return OrePoly(f.algebra, {e: inv * c for e, c in f.terms.items()})


class GroebnerBasis:
    """Reduced left Groebner basis with memoized reduction machinery."""

    def __init__(self, algebra: OreAlgebra, order: MonomialOrder, elements):
        self.algebra = algebra
        self.order = order
        self.elements = tuple(sorted(elements,
                                     key=lambda g: order.key(order.leading_exp(g)),
                                     reverse=True))
        self.leads = tuple(order.leading_exp(g) for g in self.elements)
        self.corners = frozenset(self.leads)
        self._shift_cache = {}
        self._table_cache = {}
        self._phi_cache = {}

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_reduced_exp(self, exp) -> bool:
        return not any(_divides_exp(le, exp) for le in self.corners)

    def reduced_monomials(self, max_degree):
        """Staircase-complement exponents of total degree <= max_degree."""
        out = []
        n = self.algebra.ngens
        exp = [0] * n

        def rec(pos, budget):
            if pos == n:
                e = tuple(exp)
                if self.is_reduced_exp(e):
                    out.append(e)
                return
            for d in range(budget + 1):
                exp[pos] = d
                rec(pos + 1, budget - d)
            exp[pos] = 0

        rec(0, max_degree)
        return sorted(out, key=self.order.key)

    def _shift_multiple(self, gi, delta):
        """d^delta * g_i, cached; leading coefficient stays 1."""
        key = (gi, delta)
        h = self._shift_cache.get(key)
        if h is not None:
            return h
        if not any(delta):
            h = self.elements[gi]
        else:
            i = max(j for j, x in enumerate(delta) if x)
            prev = list(delta)
            prev[i] -= 1
            h = self._shift_multiple(gi, tuple(prev)).lmul_gen(i)
        self._shift_cache[key] = h
        return h

    def _find_reducer(self, exp):
        for gi, le in enumerate(self.leads):
            if _divides_exp(le, exp):
                return gi
        return None

    def normal_form(self, f: OrePoly) -> OrePoly:
        """Full left normal form; no term of the result is reducible."""
        if f.algebra != self.algebra:
            raise AlgebraMismatch("operand algebra differs from basis algebra")
        return self._normal_form_terms(f.terms)

    def _normal_form_terms(self, terms) -> OrePoly:
        work = dict(terms)
        done = {}
        key = self.order.key
        while work:
            exp = max(work, key=key)
            coeff = work.pop(exp)
            if coeff.is_zero():
                continue
            gi = self._find_reducer(exp)
            if gi is None:
                done[exp] = coeff
                continue
            delta = tuple(a - b for a, b in zip(exp, self.leads[gi]))
            red = self._shift_multiple(gi, delta)
            for e, c in red.terms.items():
                if e == exp:
                    continue
                cur = work.get(e)
                if cur is None:
                    v = -(coeff * c)
                    if not v.is_zero():
                        work[e] = v
                else:
                    cur = cur - coeff * c
                    if cur.is_zero():
                        del work[e]
                    else:
                        work[e] = cur
        return OrePoly(self.algebra, done)

    # -- memoized quotient-space machinery (closure, growth, telescoping) ------

    def table(self, i, gamma):
        """NF of d_i * d^gamma for a staircase exponent gamma, as a
        coefficient dict over staircase exponents."""
        key = (i, gamma)
        t = self._table_cache.get(key)
        if t is not None:
            return t
        exp = list(gamma)
        exp[i] += 1
        exp = tuple(exp)
        if self.is_reduced_exp(exp):
            t = {exp: RatFunc.one(self.algebra.field)}
        else:
            nf = self._normal_form_terms(
                {exp: RatFunc.one(self.algebra.field)})
            t = dict(nf.terms)
        self._table_cache[key] = t
        return t

    def apply_gen_to_nf(self, i, nf: dict) -> dict:
        """NF of d_i * (a reduced coefficient dict)."""
        alg = self.algebra
        out = {}
        for gamma, c in nf.items():
            s = alg.sigma(i, c)
            if not s.is_zero():
                for e, v in self.table(i, gamma).items():
                    _acc_rf(out, e, s * v)
            d = alg.delta(i, c)
            if not d.is_zero():
                _acc_rf(out, gamma, d)
        return out

    def phi(self, alpha) -> dict:
        """NF of the monomial d^alpha as a coefficient dict, memoized."""
        t = self._phi_cache.get(alpha)
        if t is not None:
            return t
        if not any(alpha):
            t = {alpha: RatFunc.one(self.algebra.field)}
        elif self.is_reduced_exp(alpha):
            t = {alpha: RatFunc.one(self.algebra.field)}
        else:
            i = max(j for j, x in enumerate(alpha) if x)
            prev = list(alpha)
            prev[i] -= 1
            t = self.apply_gen_to_nf(i, self.phi(tuple(prev)))
        self._phi_cache[alpha] = t
        return t


def _acc_rf(d, e, c):
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


def normal_form(f: OrePoly, gb: GroebnerBasis) -> OrePoly:
    return gb.normal_form(f)


def buchberger(generators, order: MonomialOrder = GREVLEX,
               algebra: OreAlgebra = None) -> GroebnerBasis:
    """Reduced left Groebner basis by Buchberger's procedure.

    Normal pair-selection strategy; pairs with coprime leading exponents
    are skipped (valid here since exponents are commutative).  The output
    is the unique reduced basis for the order: monic, fully interreduced,
    canonically sorted.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        if algebra is None:
            raise ValueError("empty generating set needs an explicit algebra")
        return GroebnerBasis(algebra, order, [])
    algebra = gens[0].algebra
    basis = []
    for g in gens:
        basis.append(_monic(g, order))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}

    def lcm_exp(a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    scratch = GroebnerBasis(algebra, order, basis)  # reduction helper

    def rebuild():
        nonlocal scratch
        scratch = GroebnerBasis(algebra, order, basis)

    rebuild()
    while pairs:
        i, j = min(pairs, key=lambda p: order.key(
            lcm_exp(scratch.order.leading_exp(basis[p[0]]),
                    scratch.order.leading_exp(basis[p[1]]))))
        pairs.discard((i, j))
        ei = order.leading_exp(basis[i])
        ej = order.leading_exp(basis[j])
        g = lcm_exp(ei, ej)
        if all(x + y == z for x, y, z in zip(ei, ej, g)):
            continue  # coprime leading exponents: S-pair reduces to zero
        si = basis[i].lmul_monomial(tuple(a - b for a, b in zip(g, ei)))
        sj = basis[j].lmul_monomial(tuple(a - b for a, b in zip(g, ej)))
        s = si - sj
        r = scratch.normal_form(s)
        if r.is_zero():
            continue
        r = _monic(r, order)
        basis.append(r)
        new = len(basis) - 1
        for t in range(new):
            pairs.add((new, t))
        rebuild()
    reduced = _interreduce(basis, order, algebra)
    return GroebnerBasis(algebra, order, reduced)


def _interreduce(basis, order, algebra):
    basis = [g for g in basis if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        # drop elements whose lead is divisible by another element's lead
        keep = []
        leads = [order.leading_exp(g) for g in basis]
        for i, g in enumerate(basis):
            dominated = any(
                j != i and _divides_exp(leads[j], leads[i]) and
                (order.key(leads[j]) != order.key(leads[i]) or j < i)
                for j in range(len(basis)))
            if not dominated:
                keep.append(g)
        if len(keep) != len(basis):
            basis = keep
            changed = True
            continue
        # reduce each element by the others
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            if not others:
                continue
            helper = GroebnerBasis(algebra, order, others)
            r = helper.normal_form(basis[i])
            if r.is_zero():
                basis = others
                changed = True
                break
            r = _monic(r, order)
            if r != basis[i]:
                basis[i] = r
                changed = True
                break
    return basis


class LeftIdeal:
    """Finitely generated left ideal with cached Groebner bases per order."""

    def __init__(self, algebra: OreAlgebra, generators):
        self.algebra = algebra
        self.generators = tuple(g for g in generators if not g.is_zero())
        for g in self.generators:
            if g.algebra != algebra:
                raise AlgebraMismatch("generator algebra differs")
        self._gbs = {}

    @classmethod
    def of(cls, *generators):
        if not generators:
            raise ValueError("need at least one generator")
        return cls(generators[0].algebra, generators)

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        gb = self._gbs.get(order)
        if gb is None:
            gb = buchberger(self.generators, order, algebra=self.algebra)
            self._gbs[order] = gb
        return gb

    def normal_form(self, f: OrePoly, order: MonomialOrder = GREVLEX) -> OrePoly:
        return self.groebner_basis(order).normal_form(f)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self, order: MonomialOrder = GREVLEX) -> bool:
        gb = self.groebner_basis(order)
        return len(gb) == 1 and set(gb.leads) == {self.algebra._zero_exp}

    def __repr__(self):
        return "LeftIdeal(%d generators in %r)" % (len(self.generators), self.algebra)


def is_member(f: OrePoly, ideal: LeftIdeal, order: MonomialOrder = GREVLEX) -> bool:
    """Ideal membership through the reduced basis: NF(f) == 0."""
    if ideal.is_zero_ideal():
        return f.is_zero()
    return ideal.normal_form(f, order).is_zero()


def same_ideal(a: LeftIdeal, b: LeftIdeal, order: MonomialOrder = GREVLEX) -> bool:
    """Mutual membership of the generators (hence equality of ideals)."""
    return (all(is_member(g, b, order) for g in a.generators)
            and all(is_member(g, a, order) for g in b.generators))
