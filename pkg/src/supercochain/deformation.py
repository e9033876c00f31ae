"""Truncated formal deformations and their order-by-order obstructions.

A deformation of a triple replaces each structure map by a polynomial in a
formal parameter, truncated at a chosen order N (series mod t^{N+1}); the
zeroth coefficients are the base structure by construction.  Validity at each
order n is four equations over basis tuples:

  (1) sum_{i+j=n} [pi_i, pi_j] = 0                       on wedge^3 g
  (2) sum_{i+j=n} [mu_i, mu_j] = 0                       on wedge^3 h
  (3) sum_{i+j=n} rho_i(pi_j(u,v)) x
        = sum_{i+j=n} rho_i(u) rho_j(v) x - (-1)^{|u||v|} rho_i(v) rho_j(u) x
  (4) sum_{i+j=n} rho_i(u) mu_j(x,y)
        = sum_{i+j=n} mu_i(rho_j(u) x, y) + (-1)^{|u||x|} mu_i(x, rho_j(u) y)

The residual of one order is returned as the four defect blocks (left minus
right); a deformation is valid through its order iff all of them vanish.  The
order-1 coefficients of a valid deformation form a cocycle of the triple
complex, and conversely every such cocycle gives a linear deformation, so the
two code paths are asserted to agree.

Crossed homomorphism deformations follow the same pattern with the single
defining identity, and the order-1 statement couples to the twisted
differential d_D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochains import BlockCochain, Cochain, nr_bracket
from .errors import ShapeMismatch, ValidationError
from .exact_linalg import kernel_basis
from .graded import wedge_basis
from .superalgebra import LinearMap
from .triple import (
    ActionMap,
    LieSupActTriple,
    triple_blocks,
    triple_coboundary_matrix,
    triple_cochain_from_vector,
    triple_cochain_vector,
    triple_units,
    TripleCochain,
    coboundary_of,
)
from .crossed import ChComplex, CrossedHom, block_vector, ch_units, d_D_matrix
from .util import vec_add, vec_is_zero, vec_scale, zero_vec


def _require_even_cochain(c: Cochain, what: str):
    if c.parity() not in (0,):
        raise ValidationError(f"{what} coefficient must have degree 0")


def _require_even_action(a: ActionMap, what: str):
    for i in range(a.g_space.dim):
        pi = a.g_space.parity(i)
        for j in range(a.h_space.dim):
            want = (pi + a.h_space.parity(j)) % 2
            for k, x in enumerate(a.value(i, j)):
                if x != 0 and a.h_space.parity(k) != want:
                    raise ValidationError(f"{what} coefficient must have degree 0")


@dataclass(frozen=True)
class TripleDeformation:
    """Coefficient lists (pi_k, rho_k, mu_k), k = 0..order, with base at k=0."""

    triple: LieSupActTriple
    order: int
    pis: tuple   # Cochain on g, arity 2
    rhos: tuple  # ActionMap
    mus: tuple   # Cochain on h, arity 2

    @classmethod
    def build(cls, triple: LieSupActTriple, pi_terms=(), rho_terms=(), mu_terms=(), order=None):
        """Assemble from higher-order terms; zeroth coefficients come from the base."""
        pi_terms, rho_terms, mu_terms = list(pi_terms), list(rho_terms), list(mu_terms)
        if order is None:
            order = max(1, len(pi_terms), len(rho_terms), len(mu_terms))
        if order < 1:
            raise ValidationError("deformation order must be >= 1")
        gs, hs = triple.g.space, triple.h.space
        while len(pi_terms) < order:
            pi_terms.append(Cochain.zero(gs, gs, 2))
        while len(mu_terms) < order:
            mu_terms.append(Cochain.zero(hs, hs, 2))
        while len(rho_terms) < order:
            rho_terms.append(ActionMap.zero(gs, hs))
        for c in pi_terms:
            if c.source != gs or c.target != gs or c.arity != 2:
                raise ShapeMismatch("pi coefficient has the wrong shape")
            _require_even_cochain(c, "pi")
        for c in mu_terms:
            if c.source != hs or c.target != hs or c.arity != 2:
                raise ShapeMismatch("mu coefficient has the wrong shape")
            _require_even_cochain(c, "mu")
        for a in rho_terms:
            if a.g_space != gs or a.h_space != hs:
                raise ShapeMismatch("rho coefficient has the wrong shape")
            _require_even_action(a, "rho")
        return cls(
            triple,
            order,
            (triple.g.as_cochain(),) + tuple(pi_terms[:order]),
            (triple.rho,) + tuple(rho_terms[:order]),
            (triple.h.as_cochain(),) + tuple(mu_terms[:order]),
        )


@dataclass(frozen=True)
class TripleOrderResidual:
    """Defects of the four order-n equations, as blocks of C^3 shape."""

    order: int
    ggg: BlockCochain
    ggh: BlockCochain
    ghh: BlockCochain
    hhh: BlockCochain

    @property
    def is_zero(self) -> bool:
        return all(b.is_zero() for b in (self.ggg, self.ggh, self.ghh, self.hhh))

    def components(self):
        return {"ggg": self.ggg, "ggh": self.ggh, "ghh": self.ghh, "hhh": self.hhh}


def triple_deformation_residual(d: TripleDeformation, n: int) -> TripleOrderResidual:
    """Evaluate the four order-n equations on every basis tuple."""
    if not 0 <= n <= d.order:
        raise ValidationError(f"order {n} outside 0..{d.order}")
    t = d.triple
    gs, hs = t.g.space, t.h.space
    pairs = [(i, n - i) for i in range(n + 1)]

    eq1 = Cochain.zero(gs, gs, 3)
    eq2 = Cochain.zero(hs, hs, 3)
    for i, j in pairs:
        eq1 = eq1.add(nr_bracket(d.pis[i], d.pis[j]))
        eq2 = eq2.add(nr_bracket(d.mus[i], d.mus[j]))

    ggg = BlockCochain(gs, hs, 3, 0, "g", {(k, ()): v for k, v in eq1.coeffs.items()})
    hhh = BlockCochain(gs, hs, 0, 3, "h", {((), k): v for k, v in eq2.coeffs.items()})

    ggh_coeffs = {}
    for gk in wedge_basis(gs, 2):
        u, v = gk
        # (-1)^{|u||v|} on the swapped composite
        swap_sign = Fraction(-1 if (gs.parity(u) * gs.parity(v)) % 2 else 1)
        for x in range(hs.dim):
            xvec = _basis(hs.dim, x)
            acc = zero_vec(hs.dim)
            for i, j in pairs:
                rho_i, rho_j = d.rhos[i], d.rhos[j]
                lhs = rho_i.operator_of(d.pis[j].eval((u, v))).apply(xvec)
                r1 = rho_i.operator(u).apply(rho_j.operator(v).apply(xvec))
                r2 = rho_i.operator(v).apply(rho_j.operator(u).apply(xvec))
                acc = vec_add(acc, lhs)
                acc = vec_add(acc, vec_scale(r1, Fraction(-1)))
                acc = vec_add(acc, vec_scale(r2, swap_sign))
            if not vec_is_zero(acc):
                ggh_coeffs[(gk, (x,))] = acc
    ggh = BlockCochain(gs, hs, 2, 1, "h", ggh_coeffs)

    ghh_coeffs = {}
    for u in range(gs.dim):
        pu = gs.parity(u)
        for hk in wedge_basis(hs, 2):
            x, y = hk
            # (-1)^{|u||x|} on the second Leibniz term
            leib_sign = Fraction(-1 if (pu * hs.parity(x)) % 2 else 1)
            acc = zero_vec(hs.dim)
            for i, j in pairs:
                rho_i = d.rhos[i]
                mu_i, mu_j = d.mus[i], d.mus[j]
                lhs = rho_i.operator(u).apply(mu_j.eval((x, y)))
                r1 = _bilinear(mu_i, d.rhos[j].operator(u).apply(_basis(hs.dim, x)), _basis(hs.dim, y))
                r2 = _bilinear(mu_i, _basis(hs.dim, x), d.rhos[j].operator(u).apply(_basis(hs.dim, y)))
                acc = vec_add(acc, lhs)
                acc = vec_add(acc, vec_scale(r1, Fraction(-1)))
                acc = vec_add(acc, vec_scale(r2, -leib_sign))
            if not vec_is_zero(acc):
                ghh_coeffs[((u,), hk)] = acc
    ghh = BlockCochain(gs, hs, 1, 2, "h", ghh_coeffs)

    return TripleOrderResidual(n, ggg, ggh, ghh, hhh)


def _bilinear(c: Cochain, xvec, yvec):
    """Bilinear evaluation of an arity-2 cochain on coordinate vectors."""
    out = list(zero_vec(c.target.dim))
    for i, a in enumerate(xvec):
        if a == 0:
            continue
        for j, b in enumerate(yvec):
            if b == 0:
                continue
            val = c.eval((i, j))
            coef = a * b
            for k, v in enumerate(val):
                if v != 0:
                    out[k] += coef * v
    return tuple(out)


def _basis(dim, i):
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


@dataclass(frozen=True)
class InfinitesimalReport:
    order: int          # None when all higher coefficients vanish
    cochain: TripleCochain
    is_cocycle: bool


def triple_infinitesimal(d: TripleDeformation):
    """First nonzero coefficient triple, as a degree-2 cochain, plus its verdict.

    The cochain complex of the base triple houses (pi_k, rho_k, mu_k) in
    degree 2; for a deformation that is valid through order k the first
    nonzero triple is closed under the differential.
    """
    t = d.triple
    gs, hs = t.g.space, t.h.space
    for k in range(1, d.order + 1):
        c = _coefficient_cochain(d, k)
        if not c.is_zero():
            image = coboundary_of(t, c)
            return InfinitesimalReport(k, c, image.is_zero())
    return InfinitesimalReport(None, TripleCochain.zero(gs, hs, 2), True)


def _coefficient_cochain(d: TripleDeformation, k: int) -> TripleCochain:
    t = d.triple
    gs, hs = t.g.space, t.h.space
    pi_b = BlockCochain(gs, hs, 2, 0, "g", {(key, ()): v for key, v in d.pis[k].coeffs.items()})
    rho_b = d.rhos[k].as_block()
    mu_b = BlockCochain(gs, hs, 0, 2, "h", {((), key): v for key, v in d.mus[k].coeffs.items()})
    return TripleCochain.from_blocks(
        gs, hs, 2, {(2, 0, "g"): pi_b, (1, 1, "h"): rho_b, (0, 2, "h"): mu_b}
    )


def linear_triple_check(t: LieSupActTriple, pi1: Cochain, rho1: ActionMap, mu1: Cochain) -> bool:
    """Residual test for the order-1 truncation, cross-checked as a cocycle test."""
    d = TripleDeformation.build(t, [pi1], [rho1], [mu1], order=1)
    residual_ok = triple_deformation_residual(d, 1).is_zero
    c = _coefficient_cochain(d, 1)
    units = triple_units(t.g.space, t.h.space, 2, parity=0)
    mat = triple_coboundary_matrix(t, 2, parity=0)
    vec = triple_cochain_vector(c, units)
    cocycle_ok = vec_is_zero(mat.apply(vec))
    if residual_ok != cocycle_ok:
        from .errors import InternalInvariantError

        raise InternalInvariantError("order-1 residual disagrees with the cocycle test")
    return residual_ok


def triple_cocycle_deformations(t: LieSupActTriple):
    """One linear deformation per kernel vector of the even degree-2 differential."""
    gs, hs = t.g.space, t.h.space
    units = triple_units(gs, hs, 2, parity=0)
    mat = triple_coboundary_matrix(t, 2, parity=0)
    out = []
    for vec in kernel_basis(mat):
        c = triple_cochain_from_vector(gs, hs, 2, units, vec)
        sigs = triple_blocks(2)
        pi1 = Cochain(gs, gs, 2, {gk: v for (gk, hk), v in c.blocks[0].coeffs.items()})
        rho_block = c.blocks[sigs.index((1, 1, "h"))]
        table = [[zero_vec(hs.dim) for _ in range(hs.dim)] for _ in range(gs.dim)]
        for (gk, hk), v in rho_block.coeffs.items():
            table[gk[0]][hk[0]] = v
        rho1 = ActionMap(gs, hs, table)
        mu_blockc = c.blocks[sigs.index((0, 2, "h"))]
        mu1 = Cochain(hs, hs, 2, {hk: v for (gk, hk), v in mu_blockc.coeffs.items()})
        out.append(TripleDeformation.build(t, [pi1], [rho1], [mu1], order=1))
    return out


@dataclass(frozen=True)
class CrossedHomDeformation:
    """Coefficient list (D_0..D_N) of degree-0 maps g -> h with D_0 = D."""

    crossed: CrossedHom
    order: int
    maps: tuple

    @classmethod
    def build(cls, crossed: CrossedHom, terms=(), order=None):
        terms = list(terms)
        if order is None:
            order = max(1, len(terms))
        if order < 1:
            raise ValidationError("deformation order must be >= 1")
        t = crossed.triple
        while len(terms) < order:
            terms.append(LinearMap.zero(t.g.space, t.h.space))
        for m in terms:
            if m.source != t.g.space or m.target != t.h.space:
                raise ShapeMismatch("deformation coefficient has the wrong shape")
            if m.parity() not in (0,):
                raise ValidationError("deformation coefficients must have degree 0")
        return cls(crossed, order, (crossed.linmap,) + tuple(terms[:order]))


def ch_deformation_residual(d: CrossedHomDeformation, n: int) -> BlockCochain:
    """Order-n defect (right minus left) of the deformed crossed identity."""
    if not 0 <= n <= d.order:
        raise ValidationError(f"order {n} outside 0..{d.order}")
    t = d.crossed.triple
    g, h, rho = t.g, t.h, t.rho
    gs, hs = g.space, h.space
    Dn = d.maps[n]
    coeffs = {}
    for gk in wedge_basis(gs, 2):
        x, y = gk
        sgn = Fraction(1 if (gs.parity(x) * gs.parity(y)) % 2 else -1)
        acc = vec_scale(Dn.apply(g.bracket_basis(x, y)), Fraction(-1))
        acc = vec_add(acc, rho.operator(x).apply(Dn.cols[y]))
        acc = vec_add(acc, vec_scale(rho.operator(y).apply(Dn.cols[x]), sgn))
        for i in range(n + 1):
            acc = vec_add(acc, h.bracket_eval(d.maps[i].cols[x], d.maps[n - i].cols[y]))
        if not vec_is_zero(acc):
            coeffs[(gk, ())] = acc
    return BlockCochain(gs, hs, 2, 0, "h", coeffs)


@dataclass(frozen=True)
class ChInfinitesimalReport:
    order: int  # None when no nonzero higher coefficient exists
    map: LinearMap
    is_cocycle: bool


def ch_infinitesimal(d: CrossedHomDeformation):
    t = d.crossed.triple
    cc = ChComplex(t)
    D_block = d.crossed.as_block()
    for k in range(1, d.order + 1):
        if not d.maps[k].is_zero():
            block = CrossedHom(t, d.maps[k]).as_block()
            image = cc.d_D(D_block, block)
            return ChInfinitesimalReport(k, d.maps[k], image.is_zero())
    return ChInfinitesimalReport(None, LinearMap.zero(t.g.space, t.h.space), True)


def linear_ch_check(D: CrossedHom, D1: LinearMap) -> bool:
    """Residual test at order 1, cross-checked against d_D(D1) = 0."""
    d = CrossedHomDeformation.build(D, [D1], order=1)
    residual_ok = ch_deformation_residual(d, 1).is_zero()
    units1 = ch_units(D.triple.g.space, D.triple.h.space, 1, parity=0)
    mat = d_D_matrix(D, 1, parity=0)
    vec = block_vector(CrossedHom(D.triple, D1).as_block(), units1)
    cocycle_ok = vec_is_zero(mat.apply(vec))
    if residual_ok != cocycle_ok:
        from .errors import InternalInvariantError

        raise InternalInvariantError("order-1 residual disagrees with the cocycle test")
    return residual_ok
