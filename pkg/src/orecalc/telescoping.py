"""Creative telescoping: telescoper/certificate pairs A + sum d_t Q_t in I.

Searches run over the user's (shift) algebra; the decomposition targets
difference operators, where the telescoped identity sums naturally.  Every
returned result carries an exact membership witness: the combination
A + sum d_{t_i} Q_i reduces to zero modulo the ideal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    MPoly,
    RatFunc,
    exact_div,
    factored_expand,
    factored_merge,
    matrix_rank_at_point,
    nullspace,
    nullspace_selected,
    poly_gcd,
    poly_lcm,
    squarefree_part,
)
from .dimension import UNIT_IDEAL, hilbert_dimension
from .errors import MultipleTelescopingVars, NoTelescopableVariable
from .groebner import GREVLEX, LeftIdeal, MonomialOrder, is_member
from .ore import (
    OreAlgebra,
    OreKind,
    OrePoly,
    shift_to_difference,
    telescopable_witness,
)

import random as _random


def telescoping_bound(d: int, p: int, t_count: int, x_count: int):
    """Telescoped-ideal dimension bound d + (p-1)*|t|; nontrivial when it
    stays below the number of surviving generators."""
    bound = d + (p - 1) * t_count
    return bound, 0 <= bound < x_count


@dataclass
class TelescopingResult:
    telescoper: OrePoly          # in C(x)<d_x>, embedded in the work algebra
    certificates: dict           # t-generator name -> OrePoly
    provenance: str              # "Fasenmyer" | "Zeilberger"
    degree: int
    t_gens: tuple
    membership_checked: bool = False

    def witness(self) -> OrePoly:
        """A + sum d_t . Q_t in the work algebra."""
        alg = self.telescoper.algebra
        total = self.telescoper
        for name, cert in self.certificates.items():
            total = total + alg.gen(name) * cert
        return total

    def __str__(self):
        return "telescoper %s  [%s, degree %d]" % (
            self.telescoper, self.provenance, self.degree)


@dataclass
class SearchOutcome:
    results: list
    budget_exhausted: bool
    target_dim: object
    achieved_dim: object
    work_ideal: LeftIdeal        # the ideal in difference form the search ran on
    trivial: bool = False        # unit ideal encountered


@dataclass
class CoupledSystem:
    """First-order coupled system from the Zeilberger ansatz, reported with
    the square part (equations at staircase monomials within the B degree)
    separated from the extraneous constraint part."""

    square_shape: tuple
    constraint_shape: tuple
    a_monomials: list
    b_monomials: list
    denominator: MPoly
    solved: bool = False


# -- working form -------------------------------------------------------------


def _difference_form(I: LeftIdeal, t_names):
    """Convert shift t-generators to difference kind; other telescopable
    kinds pass through unchanged."""
    alg = I.algebra
    shift_t = [n for n in t_names
               if alg.gens[alg.gen_index[n]].kind is OreKind.SHIFT]
    if not shift_t:
        return I, t_names
    gens = [shift_to_difference(g, shift_t) for g in I.generators]
    if gens:
        new_alg = gens[0].algebra
    else:
        new_alg = shift_to_difference(alg.one, shift_t).algebra
    return LeftIdeal(new_alg, gens), t_names


def _t_data(alg: OreAlgebra, t_names):
    t_idx = []
    t_vars = []
    for n in t_names:
        i = alg.gen_index[n]
        t_idx.append(i)
        t_vars.append(alg.gens[i].var)
    t_var_idx = tuple(alg.field.index[v] for v in t_vars)
    return tuple(t_idx), tuple(t_vars), t_var_idx


def _is_t_free(c: RatFunc, t_var_idx) -> bool:
    vs = c.num.variables() | c.den.variables()
    return not (vs & set(t_var_idx))


def x_subalgebra(alg: OreAlgebra, t_names):
    """C(x)<d_x>: drop the t-generators and their ground variables."""
    t_idx, t_vars, _ = _t_data(alg, t_names)
    gens = [g for i, g in enumerate(alg.gens) if i not in t_idx]
    ground = [v for v in alg.ground_vars if v not in t_vars]
    return OreAlgebra(ground, gens, alg.params)


def restrict_to_x(f: OrePoly, t_names) -> OrePoly:
    """Rebuild a t-free, d_t-free operator inside the x-subalgebra."""
    alg = f.algebra
    t_idx, t_vars, t_var_idx = _t_data(alg, t_names)
    target = x_subalgebra(alg, t_names)
    old_names = alg.field.names
    remap = {old_names.index(n): target.field.index[n]
             for n in target.field.names}
    gen_map = {i: target.gen_index[g.name] for i, g in enumerate(alg.gens)
               if i not in t_idx}
    out = {}
    for e, c in f.terms.items():
        if any(e[i] for i in t_idx):
            raise ValueError("operator involves a t-generator")
        if not _is_t_free(c, t_var_idx):
            raise ValueError("operator coefficient involves t")
        ne = [0] * target.ngens
        for i, d in enumerate(e):
            if d:
                ne[gen_map[i]] = d
        out[tuple(ne)] = RatFunc(_remap_poly(c.num, remap, target.field),
                                 _remap_poly(c.den, remap, target.field))
    return OrePoly(target, out)


def _remap_poly(p: MPoly, remap, ring) -> MPoly:
    terms = {}
    for e, c in p.terms.items():
        ne = [0] * ring.nvars
        for i, d in enumerate(e):
            if d:
                ne[remap[i]] = d
        terms[tuple(ne)] = c
    return MPoly(ring, terms)


# -- telescoper extraction ------------------------------------------------------


def _monomial_split(Q: OrePoly, t_idx):
    """Q = R + sum d_{t_i} C_i for t-free-coefficient Q; pure bookkeeping
    since the t-generators commute with t-free coefficients."""
    alg = Q.algebra
    R = {}
    certs = {i: {} for i in t_idx}
    for e, c in Q.terms.items():
        hit = next((i for i in t_idx if e[i]), None)
        if hit is None:
            R[e] = c
        else:
            ne = list(e)
            ne[hit] -= 1
            cur = certs[hit]
            key = tuple(ne)
            cur[key] = cur.get(key, RatFunc.zero(alg.field)) + c
    return (OrePoly(alg, R),
            {i: OrePoly(alg, {e: c for e, c in t.items() if not c.is_zero()})
             for i, t in certs.items()})


def extract_telescoper(Q: OrePoly, I: LeftIdeal, t_names,
                       order: MonomialOrder = GREVLEX,
                       provenance="Fasenmyer", degree=None) -> TelescopingResult:
    """Split a t-free operator of I into telescoper plus certificates.

    When the direct split has zero remainder, one multiplication by
    sigma(a) for the least nonzero certificate (a the telescopable
    witness) recovers a nonzero telescoper, exactly as in the dimension
    bound's proof; deeper degeneracies go through a bounded certificate
    ansatz instead."""
    alg = Q.algebra
    t_idx, t_vars, t_var_idx = _t_data(alg, t_names)
    for e, c in Q.terms.items():
        if not _is_t_free(c, t_var_idx):
            raise ValueError("input operator must have t-free coefficients")
    if degree is None:
        degree = Q.total_degree()
    R, certs = _monomial_split(Q, t_idx)
    if not R.is_zero():
        result = TelescopingResult(
            telescoper=R,
            certificates={alg.gens[i].name: certs[i] for i in t_idx},
            provenance=provenance, degree=degree,
            t_gens=tuple(t_names))
        result.membership_checked = is_member(result.witness(), I, order)
        return result
    live = [i for i in t_idx if not certs[i].is_zero()]
    if not live:
        raise ValueError("zero operator has no telescoper")
    picked = None
    for i in live:
        w = telescopable_witness(alg, alg.gens[i].name)
        if w is not None:
            picked = (i, w)
            break
    if picked is None:
        raise NoTelescopableVariable(
            "no designated generator admits a telescoping witness")
    i, (a, b) = picked
    # sigma(a) * Q = -b*C_i + sum_j d_{t_j} (adjusted certificates)
    C = certs[i]
    R2, certs2 = _monomial_split(C, t_idx)
    if not R2.is_zero():
        # A = -b*R2; certificates: j == i: a*C_i - b*C2_i ... plus the
        # sigma(a)-scaled other piles
        sa = alg.sigma(i, a)
        new_certs = {}
        for j in t_idx:
            part = certs[j].scale(sa) if j != i else C.scale(a)
            part = part - certs2[j].scale(b)
            new_certs[alg.gens[j].name] = part
        result = TelescopingResult(
            telescoper=R2.scale(-b),
            certificates=new_certs,
            provenance=provenance, degree=degree,
            t_gens=tuple(t_names))
        result.membership_checked = is_member(result.witness(), I, order)
        return result
    # deeper degeneracy: chase the t-free core chain for a candidate A,
    # then solve for a certificate by bounded ansatz
    core = C
    guard = 0
    while True:
        guard += 1
        if guard > 50 or core.is_zero():
            raise NoTelescopableVariable(
                "could not recover a nonzero telescoper from the split chain")
        Rj, certsj = _monomial_split(core, t_idx)
        if not Rj.is_zero():
            candidate = Rj
            break
        core = next((certsj[j] for j in t_idx if not certsj[j].is_zero()), alg.zero)
    res = _certificate_by_ansatz(candidate, I, t_names, order,
                                 provenance=provenance, degree=degree)
    if res is None:
        raise NoTelescopableVariable(
            "candidate telescoper admits no bounded certificate")
    return res


def _certificate_by_ansatz(A: OrePoly, I: LeftIdeal, t_names, order,
                           provenance, degree, max_cert_degree=4):
    """Solve NF(A + sum d_t W_t) = 0 for W with rational t-coefficients."""
    alg = A.algebra
    t_idx, _, t_var_idx = _t_data(alg, t_names)
    gb = I.groebner_basis(order)
    for cert_deg in range(1, max_cert_degree + 1):
        sol = _solve_certificate(A, gb, t_idx, t_var_idx, cert_deg, order)
        if sol is not None:
            result = TelescopingResult(
                telescoper=A, certificates={alg.gens[i].name: sol[i] for i in t_idx},
                provenance=provenance, degree=degree, t_gens=tuple(t_names))
            result.membership_checked = is_member(result.witness(), I, order)
            if result.membership_checked:
                return result
    return None


def _solve_certificate(A, gb, t_idx, t_var_idx, cert_deg, order):
    """Inhomogeneous bounded solve for certificates of a fixed candidate;
    implemented for a single telescoping variable."""
    if len(t_var_idx) != 1:
        return None
    alg = A.algebra
    K = alg.field
    tv = t_var_idx[0]
    denom = _denominator_ansatz(gb, t_var_idx, 1)
    mons = [e for e in gb.reduced_monomials(cert_deg)]
    if not mons:
        mons = [(0,) * alg.ngens]
    unknowns = []
    for i in t_idx:
        for ge in mons:
            for d in range(denom.degree_in(t_var_idx) + 2):
                unknowns.append((i, ge, d))
    nf_A = gb.normal_form(A)
    target = {e: c for e, c in nf_A.terms.items()}
    columns = []
    for (i, ge, d) in unknowns:
        tpow = K.monomial(tuple(d if j == tv else 0 for j in range(K.nvars)))
        coeff = RatFunc(tpow, denom)
        op = OrePoly(alg, {ge: coeff})
        contrib = gb.normal_form(alg.gen(alg.gens[i].name) * op)
        columns.append(dict(contrib.terms))
    support = set(target)
    for col in columns:
        support |= set(col)
    support = sorted(support)
    rows = []
    rhs_col = []
    for wexp in support:
        row = [col.get(wexp, RatFunc.zero(K)) for col in columns]
        row.append(target.get(wexp, RatFunc.zero(K)))
        rows.append(row)
    # expand in t-powers and solve the combined homogeneous system where
    # the last column is forced to 1 (scale-normalized inhomogeneous solve)
    poly_rows = _t_expanded_rows(rows, K, t_var_idx)
    kernel = nullspace(poly_rows)
    for vec in kernel:
        lam = vec[-1]
        if lam.is_zero():
            continue
        out = {i: alg.zero for i in t_idx}
        for (u, val) in zip(unknowns, vec[:-1]):
            if val.is_zero():
                continue
            i, ge, d = u
            tv = t_var_idx[0]
            tpow = K.monomial(tuple(d if j == tv else 0 for j in range(K.nvars)))
            coeff = RatFunc(tpow, denom) * (val / lam)
            out[i] = out[i] + OrePoly(alg, {ge: coeff})
        return {i: -out[i] for i in t_idx}
    return None


def _t_expanded_rows(rows, K, t_var_idx):
    """Clear each row's denominators and compare t-coefficients.

    The row lcm is accumulated in factored form: denominators here are
    products of shifted factors whose expanded lcm chains would otherwise
    dominate the runtime."""
    out = []
    tset = set(t_var_idx)
    for row in rows:
        fact = {}
        seen = set()
        for x in row:
            if not x.is_zero() and not x.den.is_one():
                key = frozenset(x.den.terms.items())
                if key not in seen:
                    seen.add(key)
                    factored_merge(fact, x.den, 1, max)
        den = factored_expand(fact, K)
        quotients = {}
        cleared = []
        for x in row:
            if x.is_zero():
                cleared.append(K.zero)
            elif x.den.is_one():
                cleared.append(x.num * den if not den.is_one() else x.num)
            else:
                key = frozenset(x.den.terms.items())
                q = quotients.get(key)
                if q is None:
                    q = exact_div(den, x.den)
                    quotients[key] = q
                cleared.append(x.num * q)
        groups = {}
        for ci, p in enumerate(cleared):
            for e, c in p.terms.items():
                tkey = tuple(e[j] for j in t_var_idx)
                xe = tuple(0 if j in tset else d for j, d in enumerate(e))
                g = groups.setdefault(tkey, [dict() for _ in row])
                cur = g[ci]
                cur[xe] = cur.get(xe, Fraction(0)) + c
        for tkey, polys in sorted(groups.items()):
            out.append([MPoly(K, {e: c for e, c in p.items() if c})
                        for p in polys])
    return out


# -- Fasenmyer-style search -----------------------------------------------------


_spec_rng = _random.Random(0xFA5E)


def fasenmyer_search(I: LeftIdeal, t_names, max_degree: int,
                     target_dim=None, order: MonomialOrder = GREVLEX,
                     collect_all: bool = False) -> SearchOutcome:
    """Search for t-free operators of I by increasing total degree.

    Each t-free kernel element is decomposed into telescoper plus
    certificates; the search stops once the telescopers generate an ideal
    of dimension at most target_dim (when given), else runs the budget."""
    work, t_names = _difference_form(I, t_names)
    alg = work.algebra
    t_idx, t_vars, t_var_idx = _t_data(alg, t_names)
    gb = work.groebner_basis(order)
    if work.is_unit_ideal(order):
        res = TelescopingResult(telescoper=alg.one, certificates={},
                                provenance="Fasenmyer", degree=0,
                                t_gens=tuple(t_names), membership_checked=True)
        return SearchOutcome([res], False, target_dim, UNIT_IDEAL,
                             work, trivial=True)
    K = alg.field
    results = []
    found_keys = set()
    xalg = x_subalgebra(alg, t_names)
    achieved = None
    for deg in range(1, max_degree + 1):
        monomials = _monomials_up_to(alg.ngens, deg)
        rows = _fasenmyer_rows(gb, monomials, K, t_var_idx)
        ncols = len(monomials)
        if not rows:
            continue
        point = _good_point(rows, K, ncols)
        if matrix_rank_at_point(rows, ncols, point) == ncols:
            continue  # full column rank at a random point: no solution here
        kernel = nullspace_selected(rows, ncols, K)
        for vec in kernel:
            terms = {m: c for m, c in zip(monomials, vec) if not c.is_zero()}
            if not terms:
                continue
            Q = OrePoly(alg, terms)
            try:
                res = extract_telescoper(Q, work, t_names, order,
                                         provenance="Fasenmyer", degree=deg)
            except NoTelescopableVariable:
                continue
            if not res.membership_checked:
                continue
            key = _canonical_key(res.telescoper, order)
            if key in found_keys:
                continue
            found_keys.add(key)
            results.append(res)
        if results:
            xgens = [restrict_to_x(r.telescoper, t_names) for r in results]
            achieved = hilbert_dimension(LeftIdeal(xalg, xgens), order)
            if target_dim is None and not collect_all:
                return SearchOutcome(results, False, target_dim, achieved, work)
            if target_dim is not None and (
                    achieved is UNIT_IDEAL or achieved <= target_dim):
                return SearchOutcome(results, False, target_dim, achieved, work)
    return SearchOutcome(results, True, target_dim, achieved, work)


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


def _fasenmyer_rows(gb, monomials, K, t_var_idx):
    """Rows over C(x): per staircase monomial, per t-power."""
    states = [gb.phi(m) for m in monomials]
    support = set()
    for st in states:
        support |= set(st)
    support = sorted(support)
    zero = RatFunc.zero(K)
    rat_rows = []
    for gamma in support:
        rat_rows.append([st.get(gamma, zero) for st in states])
    return _t_expanded_rows([r for r in rat_rows], K, t_var_idx)


def _good_point(rows, K, ncols):
    return [Fraction(_spec_rng.randint(7, 997)) for _ in K.names]


def _canonical_key(f: OrePoly, order):
    inv = f.terms[order.leading_exp(f)].inverse()
    return frozenset((e, inv * c) for e, c in f.terms.items())


# -- Zeilberger-style search ------------------------------------------------------


def _denominator_ansatz(gb, t_var_idx, denom_bound):
    """Product over t-shifts of the squarefree t-parts of the cleared
    leading coefficients of the basis."""
    alg = gb.algebra
    K = alg.field
    factors = {}
    for g in gb.elements:
        den = K.one
        for c in g.terms.values():
            if not c.den.is_one():
                den = poly_lcm(den, c.den)
        if den.is_constant():
            continue
        sf = squarefree_part(den, t_var_idx)
        if sf.is_constant() or sf.degree_in(t_var_idx) == 0:
            continue
        factors[frozenset(sf.terms.items())] = sf
    D = K.one
    shifts = {}
    for sf in factors.values():
        for j in range(-denom_bound, denom_bound + 1):
            img = sf
            for tv in t_var_idx:
                img = img.shift_var(tv, j)
            img = img.monic()
            shifts[frozenset(img.terms.items())] = img
    for img in shifts.values():
        g = poly_gcd(D, img)
        extra = img if g.is_one() else exact_div(img, g)
        D = D * extra
    return D.monic()


def zeilberger_search(I: LeftIdeal, t_name: str, degA: int, degB: int,
                      denom_bound: int = 1, order: MonomialOrder = GREVLEX):
    """Ansatz A + Delta_t*B with A over C(x)<d_x> and B over the staircase.

    Returns (TelescopingResult or None, CoupledSystem).  The system rows
    coming from staircase monomials within the B-degree form the square
    coupled part and are solved first; the higher extraneous rows are
    intersected afterwards as linear constraints."""
    if isinstance(t_name, (list, tuple)):
        if len(t_name) != 1:
            raise MultipleTelescopingVars(
                "the fast algorithm handles a single telescoping variable")
        t_name = t_name[0]
    work, _ = _difference_form(I, [t_name])
    alg = work.algebra
    (ti,), (tv_name,), t_var_idx = _t_data(alg, [t_name])
    tv = t_var_idx[0]
    gb = work.groebner_basis(order)
    K = alg.field
    Dt = alg.gen(t_name)

    # ansatz monomial lists: A over all d_x-monomials (its reducible ones
    # matter: the reduced rewriting would drag t into the coefficients),
    # B over the d_t-free staircase monomials
    a_mons = [e for e in _monomials_up_to(alg.ngens, degA) if e[ti] == 0]
    b_mons = [ge for ge in gb.reduced_monomials(degB) if ge[ti] == 0]
    D = _denominator_ansatz(gb, t_var_idx, denom_bound)
    degN = D.degree_in(t_var_idx) + denom_bound
    unknowns = [("A", e) for e in a_mons] + \
               [("B", ge, d) for ge in b_mons for d in range(degN + 1)]

    # normal-form columns
    columns = []
    for u in unknowns:
        if u[0] == "A":
            op = OrePoly(alg, {u[1]: RatFunc.one(K)})
        else:
            _, ge, d = u
            tpow = K.monomial(tuple(d if j == tv else 0 for j in range(K.nvars)))
            op = Dt * OrePoly(alg, {ge: RatFunc(tpow, D)})
        columns.append(dict(gb.normal_form(op).terms))
    support = set()
    for col in columns:
        support |= set(col)
    support |= set(gb.reduced_monomials(degB))  # square block counted fully
    support = sorted(support, key=order.key)
    zero = RatFunc.zero(K)
    square_rows_rat, constraint_rows_rat = [], []
    for w in support:
        row = [col.get(w, zero) for col in columns]
        if sum(w) <= degB:
            square_rows_rat.append(row)
        else:
            constraint_rows_rat.append(row)
    system = CoupledSystem(
        square_shape=(len(square_rows_rat), len(a_mons) + len(b_mons)),
        constraint_shape=(len(constraint_rows_rat), len(a_mons) + len(b_mons)),
        a_monomials=a_mons, b_monomials=b_mons, denominator=D)

    square_rows = _t_expanded_rows(square_rows_rat, K, t_var_idx)
    constraint_rows = _t_expanded_rows(constraint_rows_rat, K, t_var_idx)
    k1 = nullspace_selected(square_rows, len(unknowns), K)
    if not k1:
        return None, system
    # intersect with the constraint block: second nullspace over the
    # combination coefficients
    if constraint_rows:
        m2 = []
        for crow in constraint_rows:
            m2.append([
                _dot(crow, vec, K) for vec in k1
            ])
        lam = nullspace([[x for x in r] for r in m2]) if any(
            any(not x.is_zero() for x in r) for r in m2) else [
                [RatFunc.one(K) if i == j else RatFunc.zero(K)
                 for i in range(len(k1))] for j in range(len(k1))]
        finals = []
        for lvec in lam:
            combo = [RatFunc.zero(K)] * len(unknowns)
            for lj, vec in zip(lvec, k1):
                if lj.is_zero():
                    continue
                for c in range(len(unknowns)):
                    if not vec[c].is_zero():
                        combo[c] = combo[c] + lj * vec[c]
            finals.append(combo)
    else:
        finals = k1
    candidates = []
    for vec in finals:
        a_terms = {}
        for (u, val) in zip(unknowns, vec):
            if u[0] == "A" and not val.is_zero():
                a_terms[u[1]] = val
        if not a_terms:
            continue
        A = OrePoly(alg, a_terms)
        B = alg.zero
        for (u, val) in zip(unknowns, vec):
            if u[0] == "B" and not val.is_zero():
                _, ge, d = u
                tpow = K.monomial(tuple(d if j == tv else 0
                                        for j in range(K.nvars)))
                B = B + OrePoly(alg, {ge: RatFunc(tpow, D) * val})
        if not gb.normal_form(A + Dt * B).is_zero():
            continue
        candidates.append((A, B))
    if not candidates:
        return None, system
    A, B = min(candidates, key=lambda ab: _tiebreak_key(ab[0], order))
    A, B = _normalize_pair(A, B, order)
    result = TelescopingResult(
        telescoper=A, certificates={t_name: B}, provenance="Zeilberger",
        degree=degA, t_gens=(t_name,))
    result.membership_checked = is_member(result.witness(), work, order)
    system.solved = True
    return result, system


def _dot(row, vec, K):
    s = RatFunc.zero(K)
    for x, y in zip((RatFunc.from_poly(p) for p in row), vec):
        if not y.is_zero() and not x.is_zero():
            s = s + x * y
    return s


def _tiebreak_key(A: OrePoly, order):
    return (A.total_degree(), len(A.terms),
            tuple(sorted(order.key(e) for e in A.terms)))


def _normalize_pair(A, B, order):
    # clear to content-free polynomial coefficients with positive lead
    K = A.algebra.field
    den = K.one
    for c in A.terms.values():
        if not c.den.is_one():
            den = poly_lcm(den, c.den)
    scale = RatFunc.from_poly(den)
    nums = [(c * scale).num for c in A.terms.values()]
    g = nums[0]
    for p in nums[1:]:
        if g.is_one():
            break
        g = poly_gcd(g, p)
    if not g.is_one():
        scale = scale / RatFunc.from_poly(g)
    newA = A.scale(scale)
    lead_c = newA.terms[order.leading_exp(newA)]
    if lead_c.num.leading_coeff() < 0:
        scale = -scale
        newA = newA.scale(RatFunc.const(K, -1))
    return newA, B.scale(scale)
