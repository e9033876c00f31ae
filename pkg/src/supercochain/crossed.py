"""Crossed homomorphisms g -> h over an action: checks, bracket, cohomology.

A degree-0 map D: g -> h is crossed for the action rho when

    D([x,y]) = rho(x) D(y) - (-1)^{|x||y|} rho(y) D(x) + [D(x), D(y)]

on homogeneous x, y.  Three equivalent characterizations are implemented and
cross-validated: the defining identity, the graph being a subalgebra of the
semidirect product, and D being a Maurer-Cartan element of the graded Lie
algebra on C^* = Hom(wedge^* g, h) with bracket

    [[f1, f2]] = (-1)^(m-1) [[mu, f1], f2]        (m = arity of f1)

and differential f -> [pi + rho, f], everything computed inside the big
algebra on g + h through the hat embedding.  The bracket also has a closed
shuffle form, kept as a second code path and asserted equal in the tests:

    [[f1, f2]](X) = sum over (m,n)-shuffles of
        koszul_sign * (-1)^(s * parity of the first m shuffled entries)
        * mu(f1(shuffled head), f2(shuffled tail)),         s = parity of f2.

Cochains here are blocks with no h slots: ``BlockCochain(g, h, m, 0, "h")``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .cochains import BlockCochain, hat_extend, nr_bracket, project_block
from .errors import ShapeMismatch, ValidationError
from .exact_linalg import Matrix, cohomology_dims, rank
from .graded import direct_sum, koszul_sign, shuffles, wedge_basis
from .superalgebra import CheckReport, Failure, LinearMap, is_homomorphism, _semidirect_table
from .triple import LieSupActTriple, mu_block, pi_block
from .util import parallel_map, vec_add, vec_is_zero, vec_scale


@dataclass(frozen=True)
class CrossedHom:
    """Candidate crossed homomorphism; ``verified`` records its check status."""

    triple: LieSupActTriple
    linmap: LinearMap
    verified: bool = None

    def __post_init__(self):
        if (
            self.linmap.source != self.triple.g.space
            or self.linmap.target != self.triple.h.space
        ):
            raise ShapeMismatch("map does not go from g to h")
        if self.linmap.parity() not in (0,):
            raise ValidationError("crossed homomorphism candidates must have degree 0")

    def as_block(self) -> BlockCochain:
        coeffs = {}
        for i, col in enumerate(self.linmap.cols):
            if not vec_is_zero(col):
                coeffs[((i,), ())] = col
        return BlockCochain(
            self.triple.g.space, self.triple.h.space, 1, 0, "h", coeffs
        )


def verify(D: CrossedHom) -> CrossedHom:
    return replace(D, verified=check_crossed(D).ok)


def check_crossed(D: CrossedHom) -> CheckReport:
    """Defining identity on all ordered basis pairs of g."""
    t = D.triple
    g, h, rho = t.g, t.h, t.rho
    failures = []
    labels = g.space.labels
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = D.linmap.apply(g.bracket_basis(i, j))
            di, dj = D.linmap.cols[i], D.linmap.cols[j]
            term1 = rho.operator(i).apply(dj)
            term2 = rho.operator(j).apply(di)
            sign = Fraction(1 if (g.space.parity(i) * g.space.parity(j)) % 2 else -1)
            rhs = vec_add(vec_add(term1, vec_scale(term2, sign)), h.bracket_eval(di, dj))
            if lhs != rhs:
                failures.append(Failure("crossed", (labels[i], labels[j]), lhs, rhs))
    return CheckReport("crossed", tuple(failures))


def graph_failures(D: CrossedHom):
    """Basis pairs where the graph fails to close in the semidirect product."""
    t = D.triple
    ds = direct_sum(t.g.space, t.h.space)
    sd = _semidirect_table(t.g, t.h, t.rho, ds)
    failures = []
    labels = t.g.space.labels
    for i in range(t.g.dim):
        xi = ds.embed_left(_basis_vec(t.g.dim, i))
        lifted_i = vec_add(xi, ds.embed_right(D.linmap.cols[i]))
        for j in range(t.g.dim):
            xj = ds.embed_left(_basis_vec(t.g.dim, j))
            lifted_j = vec_add(xj, ds.embed_right(D.linmap.cols[j]))
            got = sd.bracket_eval(lifted_i, lifted_j)
            bracket = t.g.bracket_basis(i, j)
            want = vec_add(ds.embed_left(bracket), ds.embed_right(D.linmap.apply(bracket)))
            if got != want:
                failures.append(Failure("graph", (labels[i], labels[j]), got, want))
    return tuple(failures)


def graph_check(D: CrossedHom) -> bool:
    """True iff the graph {(x, D x)} is closed under the semidirect bracket."""
    return not graph_failures(D)


def _basis_vec(dim, i):
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


class ChComplex:
    """Cached hat embeddings for one triple's crossed-homomorphism complex."""

    def __init__(self, t: LieSupActTriple):
        self.triple = t
        self.ds = direct_sum(t.g.space, t.h.space)
        self.mu_hat = hat_extend(mu_block(t.g.space, t.h))
        self.pr_hat = hat_extend(pi_block(t.g, t.h.space)).add(hat_extend(t.rho.as_block()))

    def bracket(self, f1: BlockCochain, f2: BlockCochain) -> BlockCochain:
        """[[f1, f2]] through the double bracket in the big algebra."""
        m = f1.g_arity
        inner = nr_bracket(self.mu_hat, hat_extend(f1))
        outer = nr_bracket(inner, hat_extend(f2))
        sign = Fraction(1 if (m - 1) % 2 == 0 else -1)
        return project_block(outer.scale(sign), self.ds, m + f2.g_arity, 0, "h")

    def bracket_closed(self, f1: BlockCochain, f2: BlockCochain) -> BlockCochain:
        """The same bracket from the closed double-shuffle formula."""
        t = self.triple
        gspace, h = t.g.space, t.h
        m, n = f1.g_arity, f2.g_arity
        shs = shuffles((m, n))
        pars = gspace.parities
        out = {}
        for f2p, s in f2.parity_parts():
            for X in wedge_basis(gspace, m + n):
                px = tuple(pars[i] for i in X)
                acc = None
                for sigma in shs:
                    sign = koszul_sign(sigma, px)
                    if s and sum(px[sigma[i]] for i in range(m)) % 2:
                        sign = -sign
                    head = tuple(X[sigma[i]] for i in range(m))
                    tail = tuple(X[sigma[i]] for i in range(m, m + n))
                    v1 = f1.eval(head, ())
                    if vec_is_zero(v1):
                        continue
                    v2 = f2p.eval(tail, ())
                    if vec_is_zero(v2):
                        continue
                    term = vec_scale(h.bracket_eval(v1, v2), Fraction(sign))
                    acc = term if acc is None else vec_add(acc, term)
                if acc is not None and not vec_is_zero(acc):
                    cur = out.get((X, ()))
                    out[(X, ())] = vec_add(cur, acc) if cur is not None else acc
        return BlockCochain(gspace, h.space, m + n, 0, "h", out)

    def coboundary(self, f: BlockCochain) -> BlockCochain:
        """f -> [pi + rho, f], one degree up."""
        result = nr_bracket(self.pr_hat, hat_extend(f))
        return project_block(result, self.ds, f.g_arity + 1, 0, "h")

    def d_D(self, D_block: BlockCochain, f: BlockCochain) -> BlockCochain:
        return self.coboundary(f).add(self.bracket(D_block, f))


def ch_bracket(t: LieSupActTriple, f1: BlockCochain, f2: BlockCochain) -> BlockCochain:
    return ChComplex(t).bracket(f1, f2)


def ch_bracket_closed(t: LieSupActTriple, f1: BlockCochain, f2: BlockCochain) -> BlockCochain:
    return ChComplex(t).bracket_closed(f1, f2)


def del_pi_rho(t: LieSupActTriple, f: BlockCochain) -> BlockCochain:
    return ChComplex(t).coboundary(f)


def ch_mc_residual(D: CrossedHom) -> BlockCochain:
    """Maurer-Cartan defect of D: coboundary of D plus half its self-bracket."""
    cc = ChComplex(D.triple)
    block = D.as_block()
    return cc.coboundary(block).add(cc.bracket(block, block).scale(Fraction(1, 2)))


def ch_units(g_space, h_space, n: int, parity=None):
    """Coordinate basis of Hom(wedge^n g, h): (g key, target, map parity)."""
    units = []
    for gk in wedge_basis(g_space, n):
        kp = sum(g_space.parities_of(gk))
        for t in range(h_space.dim):
            up = (kp + h_space.parity(t)) % 2
            if parity is None or up == parity % 2:
                units.append((gk, t, up))
    return units


def _unit_block(g_space, h_space, n, unit) -> BlockCochain:
    gk, t, _ = unit
    vec = [Fraction(0)] * h_space.dim
    vec[t] = Fraction(1)
    return BlockCochain(g_space, h_space, n, 0, "h", {(gk, ()): tuple(vec)})


def block_vector(block: BlockCochain, units):
    out = []
    for gk, t, _ in units:
        vec = block.coeffs.get((gk, ()))
        out.append(vec[t] if vec is not None else Fraction(0))
    return tuple(out)


def block_from_vector(g_space, h_space, n, units, vec) -> BlockCochain:
    table = {}
    for (gk, t, _), x in zip(units, vec):
        if x == 0:
            continue
        cur = table.setdefault((gk, ()), [Fraction(0)] * h_space.dim)
        cur[t] += Fraction(x)
    return BlockCochain(g_space, h_space, n, 0, "h", {k: tuple(v) for k, v in table.items()})


def _require_verified(D: CrossedHom) -> CrossedHom:
    if D.verified is True:
        return D
    report = check_crossed(D)
    if not report.ok:
        raise ValidationError(
            f"map is not a crossed homomorphism ({len(report.failures)} failing pairs)"
        )
    return replace(D, verified=True)


def d_D_matrix(D: CrossedHom, n: int, parity=None) -> Matrix:
    """Matrix of f -> [pi+rho, f] + [[D, f]] from degree n to n + 1."""
    D = _require_verified(D)
    t = D.triple
    gs, hs = t.g.space, t.h.space
    cc = ChComplex(t)
    D_block = D.as_block()
    cols_units = ch_units(gs, hs, n, parity)
    rows_units = ch_units(gs, hs, n + 1, parity)

    def one_column(unit):
        image = cc.d_D(D_block, _unit_block(gs, hs, n, unit))
        return block_vector(image, rows_units)

    columns = parallel_map(one_column, cols_units)
    return Matrix.from_cols(columns, len(rows_units))


def ch_cohomology(D: CrossedHom, n: int):
    """(even, odd) cohomology dimensions of the crossed homomorphism complex."""
    if n < 1:
        raise ValidationError("cohomology degree must be >= 1")
    D = _require_verified(D)
    gs, hs = D.triple.g.space, D.triple.h.space
    dims = []
    for parity in (0, 1):
        d_out = d_D_matrix(D, n, parity)
        if n == 1:
            d_in = Matrix.zeros(len(ch_units(gs, hs, 1, parity)), 0)
        else:
            d_in = d_D_matrix(D, n - 1, parity)
        dims.append(cohomology_dims(d_in, d_out))
    return tuple(dims)


@dataclass(frozen=True)
class CHMorphism:
    """Pair of degree-0 maps (phi1 on g, phi2 on h)."""

    phi1: LinearMap
    phi2: LinearMap

    @property
    def is_isomorphism(self) -> bool:
        return (
            rank(Matrix.from_cols(self.phi1.cols, self.phi1.target.dim)) == self.phi1.source.dim
            and rank(Matrix.from_cols(self.phi2.cols, self.phi2.target.dim)) == self.phi2.source.dim
        )


def identity_morphism(t: LieSupActTriple) -> CHMorphism:
    return CHMorphism(LinearMap.identity(t.g.space), LinearMap.identity(t.h.space))


def compose_morphisms(m1: CHMorphism, m2: CHMorphism) -> CHMorphism:
    """Componentwise composite (m1 after m2)."""
    return CHMorphism(m1.phi1.compose(m2.phi1), m1.phi2.compose(m2.phi2))


def check_morphism(D: CrossedHom, D2: CrossedHom, m: CHMorphism) -> bool:
    """phi pair intertwining D with D2 over the shared triple.

    Requires both components to be degree-0 algebra endomorphisms, the square
    D2 . phi1 == phi2 . D to commute, and phi2 rho(x) u == rho(phi1 x)(phi2 u).
    """
    t = D.triple
    if D2.triple != t:
        raise ShapeMismatch("morphisms are defined between crossed homomorphisms of one triple")
    if m.phi1.parity() not in (0,) or m.phi2.parity() not in (0,):
        return False
    if not is_homomorphism(m.phi1, t.g, t.g) or not is_homomorphism(m.phi2, t.h, t.h):
        return False
    lhs = D2.linmap.compose(m.phi1)
    rhs = m.phi2.compose(D.linmap)
    if lhs.cols != rhs.cols:
        return False
    for i in range(t.g.dim):
        phi_x = m.phi1.cols[i]
        for j in range(t.h.dim):
            left = m.phi2.apply(t.rho.value(i, j))
            right = t.rho.operator_of(phi_x).apply(m.phi2.cols[j])
            if left != right:
                return False
    return True
