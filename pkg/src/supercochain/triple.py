"""Paired superalgebras with an action: axioms, Maurer-Cartan data, cohomology.

The structure of a pair (g, h) with a degree-0 action of g on h is carried by
one even element Pi of the graded Lie algebra on g + h, the sum of the two
brackets and the action block.  Its self-bracket splits into four block
components whose joint vanishing is equivalent to the axioms, and bracketing
with Pi is the differential of the associated cochain complex

    C^n = Hom(wedge^n g, g)  +  sum_{i=0}^{n-1} Hom(wedge^i g x wedge^{n-i} h, h),

which starts at n = 1.  The differential preserves map parity, so cohomology
is reported per parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochains import BlockCochain, Cochain, f_membership, hat_extend, nr_bracket, project_block
from .errors import (
    DimensionMismatch,
    InternalInvariantError,
    ShapeMismatch,
    ValidationError,
)
from .exact_linalg import Matrix, cohomology_dims
from .graded import GradedSpace, direct_sum, wedge_basis
from .superalgebra import CheckReport, Failure, LinearMap, SuperAlgebra
from .util import parallel_map, vec_add, vec_is_zero, vec_scale, zero_vec


class ActionMap:
    """Bilinear degree-0 table rho: value(i, j) = rho(g_i)(h_j) in h coordinates."""

    __slots__ = ("g_space", "h_space", "table")

    def __init__(self, g_space: GradedSpace, h_space: GradedSpace, table):
        rows = []
        for i in range(g_space.dim):
            row = []
            for j in range(h_space.dim):
                vec = tuple(Fraction(x) for x in table[i][j])
                if len(vec) != h_space.dim:
                    raise DimensionMismatch("action value has wrong length")
                row.append(vec)
            rows.append(tuple(row))
        self.g_space = g_space
        self.h_space = h_space
        self.table = tuple(rows)

    @classmethod
    def zero(cls, g_space: GradedSpace, h_space: GradedSpace) -> "ActionMap":
        z = zero_vec(h_space.dim)
        return cls(g_space, h_space, [[z] * h_space.dim for _ in range(g_space.dim)])

    @classmethod
    def from_operators(cls, g_space: GradedSpace, operators) -> "ActionMap":
        """Build from one LinearMap on h per g basis vector."""
        h_space = operators[0].source
        return cls(g_space, h_space, [[op.cols[j] for j in range(h_space.dim)] for op in operators])

    def value(self, i: int, j: int):
        return self.table[i][j]

    def operator(self, i: int) -> LinearMap:
        return LinearMap(self.h_space, self.h_space, self.table[i])

    def operator_of(self, xvec) -> LinearMap:
        """rho(x) for an arbitrary coordinate vector x."""
        cols = [list(zero_vec(self.h_space.dim)) for _ in range(self.h_space.dim)]
        for i, c in enumerate(xvec):
            if c == 0:
                continue
            for j in range(self.h_space.dim):
                for k, v in enumerate(self.table[i][j]):
                    if v != 0:
                        cols[j][k] += c * v
        return LinearMap(self.h_space, self.h_space, tuple(tuple(c) for c in cols))

    def apply(self, xvec, uvec):
        out = list(zero_vec(self.h_space.dim))
        for i, c in enumerate(xvec):
            if c == 0:
                continue
            for j, d in enumerate(uvec):
                if d == 0:
                    continue
                for k, v in enumerate(self.table[i][j]):
                    if v != 0:
                        out[k] += c * d * v
        return tuple(out)

    def as_block(self) -> BlockCochain:
        coeffs = {}
        for i in range(self.g_space.dim):
            for j in range(self.h_space.dim):
                vec = self.table[i][j]
                if not vec_is_zero(vec):
                    coeffs[((i,), (j,))] = vec
        return BlockCochain(self.g_space, self.h_space, 1, 1, "h", coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ActionMap)
            and self.g_space == other.g_space
            and self.h_space == other.h_space
            and self.table == other.table
        )


@dataclass(frozen=True)
class LieSupActTriple:
    """Two superalgebras and an action table; validity is checked, not assumed."""

    g: SuperAlgebra
    h: SuperAlgebra
    rho: ActionMap

    def __post_init__(self):
        if self.rho.g_space != self.g.space or self.rho.h_space != self.h.space:
            raise ShapeMismatch("action table does not match the algebra spaces")

    def check(self) -> CheckReport:
        failures = []
        for rep in (
            _prefixed(self.g, "g"),
            _prefixed(self.h, "h"),
            (check_action(self.g, self.h, self.rho),),
        ):
            for r in rep:
                failures.extend(r.failures)
        return CheckReport("triple", tuple(failures))


def _prefixed(A: SuperAlgebra, tag: str):
    from .superalgebra import check_jacobi, check_super_skew

    skew = check_super_skew(A)
    jac = check_jacobi(A)
    return (
        CheckReport(f"{tag}_super_skew", tuple(
            Failure(f"{tag}_{f.axiom}", f.where, f.lhs, f.rhs) for f in skew.failures
        )),
        CheckReport(f"{tag}_jacobi", tuple(
            Failure(f"{tag}_{f.axiom}", f.where, f.lhs, f.rhs) for f in jac.failures
        )),
    )


def check_action(g: SuperAlgebra, h: SuperAlgebra, rho: ActionMap) -> CheckReport:
    """Degree 0, derivation property, and compatibility with the g bracket.

    (a) parity(rho(x)u) = |x| + |u| entry by entry;
    (b) each rho(x) is a degree-|x| derivation of h;
    (c) rho([x,y]) = rho(x) rho(y) - (-1)^{|x||y|} rho(y) rho(x) as operators.
    """
    if rho.g_space != g.space or rho.h_space != h.space:
        raise ShapeMismatch("action table does not match the algebra spaces")
    failures = []
    glab, hlab = g.space.labels, h.space.labels
    for i in range(g.dim):
        pi = g.space.parity(i)
        for j in range(h.dim):
            want = (pi + h.space.parity(j)) % 2
            vec = rho.value(i, j)
            for k, x in enumerate(vec):
                if x != 0 and h.space.parity(k) != want:
                    failures.append(
                        Failure("action_degree", (glab[i], hlab[j], hlab[k]), (x,), (Fraction(0),))
                    )
    hbasis = [
        tuple(Fraction(1 if t == j else 0) for t in range(h.dim)) for j in range(h.dim)
    ]
    for i in range(g.dim):
        op = rho.operator(i)
        sgn = Fraction(-1 if g.space.parity(i) else 1)
        for a in range(h.dim):
            for b in range(h.dim):
                lhs = op.apply(h.bracket_basis(a, b))
                first = h.bracket_eval(op.apply(hbasis[a]), hbasis[b])
                second = h.bracket_eval(hbasis[a], op.apply(hbasis[b]))
                if h.space.parity(a):
                    second = vec_scale(second, sgn)
                rhs = vec_add(first, second)
                if lhs != rhs:
                    failures.append(Failure("action_derivation", (glab[i], hlab[a], hlab[b]), lhs, rhs))
    for i in range(g.dim):
        for j in range(g.dim):
            lhs_op = rho.operator_of(g.bracket_basis(i, j))
            # rho([x,y]) = rho(x) rho(y) - (-1)^{|x||y|} rho(y) rho(x)
            sign = Fraction(1 if (g.space.parity(i) * g.space.parity(j)) % 2 else -1)
            rhs_op = rho.operator(i).compose(rho.operator(j)).add(
                rho.operator(j).compose(rho.operator(i)).scale(sign)
            )
            if lhs_op.cols != rhs_op.cols:
                for j2 in range(h.dim):
                    if lhs_op.cols[j2] != rhs_op.cols[j2]:
                        failures.append(
                            Failure(
                                "action_morphism",
                                (glab[i], glab[j], hlab[j2]),
                                lhs_op.cols[j2],
                                rhs_op.cols[j2],
                            )
                        )
    return CheckReport("action", tuple(failures))


def pi_block(g: SuperAlgebra, h_space: GradedSpace) -> BlockCochain:
    """The g bracket as a (2,0) block targeting g."""
    coeffs = {}
    for key in wedge_basis(g.space, 2):
        v = g.bracket_basis(key[0], key[1])
        if not vec_is_zero(v):
            coeffs[(key, ())] = v
    return BlockCochain(g.space, h_space, 2, 0, "g", coeffs)


def mu_block(g_space: GradedSpace, h: SuperAlgebra) -> BlockCochain:
    coeffs = {}
    for key in wedge_basis(h.space, 2):
        v = h.bracket_basis(key[0], key[1])
        if not vec_is_zero(v):
            coeffs[((), key)] = v
    return BlockCochain(g_space, h.space, 0, 2, "h", coeffs)


def _blocks_of(g: SuperAlgebra, h: SuperAlgebra, rho: ActionMap):
    return pi_block(g, h.space), rho.as_block(), mu_block(g.space, h)


def mc_element(t: LieSupActTriple) -> Cochain:
    """Pi = pi + rho + mu, extended to one arity-2 cochain on g + h."""
    pi, rho_b, mu = _blocks_of(t.g, t.h, t.rho)
    return hat_extend(pi).add(hat_extend(rho_b)).add(hat_extend(mu))


@dataclass(frozen=True)
class McResidual:
    """The four block components of the self-bracket of candidate data."""

    ggg: BlockCochain  # wedge^3 g -> g
    ggh: BlockCochain  # wedge^2 g x h -> h
    ghh: BlockCochain  # g x wedge^2 h -> h
    hhh: BlockCochain  # wedge^3 h -> h

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in (self.ggg, self.ggh, self.ghh, self.hhh))

    def components(self):
        return {"ggg": self.ggg, "ggh": self.ggh, "ghh": self.ghh, "hhh": self.hhh}


def mc_residual(g: SuperAlgebra, h: SuperAlgebra, rho: ActionMap) -> McResidual:
    """Component-wise self-bracket obstruction of candidate (pi, rho, mu).

    Computed in the big algebra on g + h from the displayed combinations
    ([pi,pi]; 2 rho.pi + [rho,rho]; 2[rho,mu]; [mu,mu]) and cross-checked
    against the projections of [Pi, Pi]; a mismatch would be a bug in the
    bracket plumbing, not in the candidate data.
    """
    from .cochains import circ

    if rho.g_space != g.space or rho.h_space != h.space:
        raise ShapeMismatch("candidate data shapes do not match")
    pi_b, rho_b, mu_b = _blocks_of(g, h, rho)
    P, R, M = hat_extend(pi_b), hat_extend(rho_b), hat_extend(mu_b)
    ds = direct_sum(g.space, h.space)
    comp_ggg = project_block(nr_bracket(P, P), ds, 3, 0, "g")
    comp_ggh = project_block(circ(R, P).scale(2).add(nr_bracket(R, R)), ds, 2, 1, "h")
    comp_ghh = project_block(nr_bracket(R, M).scale(2), ds, 1, 2, "h")
    comp_hhh = project_block(nr_bracket(M, M), ds, 0, 3, "h")
    full = nr_bracket(P.add(R).add(M), P.add(R).add(M))
    for (ga, ha, side), comp in (
        ((3, 0, "g"), comp_ggg),
        ((2, 1, "h"), comp_ggh),
        ((1, 2, "h"), comp_ghh),
        ((0, 3, "h"), comp_hhh),
    ):
        if project_block(full, ds, ga, ha, side) != comp:
            raise InternalInvariantError(
                "component form of the self-bracket disagrees with its projection"
            )
    return McResidual(comp_ggg, comp_ggh, comp_ghh, comp_hhh)


def triple_blocks(n: int):
    """Block signatures of C^n in matrix order: g target first, then h blocks."""
    if n < 1:
        raise ValidationError("cochain degree must be >= 1")
    sigs = [(n, 0, "g")]
    for i in range(n):
        sigs.append((i, n - i, "h"))
    return sigs


@dataclass(frozen=True)
class TripleCochain:
    """One element of C^n: a g-target block plus h-target mixed blocks."""

    g_space: GradedSpace
    h_space: GradedSpace
    degree: int
    blocks: tuple  # aligned with triple_blocks(degree)

    @classmethod
    def zero(cls, g_space, h_space, n) -> "TripleCochain":
        blocks = tuple(
            BlockCochain.zero(g_space, h_space, ga, ha, side) for ga, ha, side in triple_blocks(n)
        )
        return cls(g_space, h_space, n, blocks)

    @classmethod
    def from_blocks(cls, g_space, h_space, n, by_sig) -> "TripleCochain":
        blocks = []
        for sig in triple_blocks(n):
            blocks.append(by_sig.get(sig) or BlockCochain.zero(g_space, h_space, *sig))
        return cls(g_space, h_space, n, tuple(blocks))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)


def triple_units(g_space: GradedSpace, h_space: GradedSpace, n: int, parity=None):
    """Deterministic coordinate basis of C^n: (block index, g key, h key, target).

    Order: blocks as in ``triple_blocks``, then g key lexicographic, h key
    lexicographic, target position; optionally filtered to one map parity.
    """
    units = []
    for b, (ga, ha, side) in enumerate(triple_blocks(n)):
        tspace = g_space if side == "g" else h_space
        for gk in wedge_basis(g_space, ga):
            gp = sum(g_space.parities_of(gk))
            for hk in wedge_basis(h_space, ha):
                kp = gp + sum(h_space.parities_of(hk))
                for t in range(tspace.dim):
                    up = (kp + tspace.parity(t)) % 2
                    if parity is None or up == parity % 2:
                        units.append((b, gk, hk, t, up))
    return units


def triple_cochain_dim(g_space, h_space, n: int, parity=None) -> int:
    return len(triple_units(g_space, h_space, n, parity))


def unit_triple_cochain(g_space, h_space, n, unit) -> TripleCochain:
    b, gk, hk, t, _ = unit
    sigs = triple_blocks(n)
    ga, ha, side = sigs[b]
    tdim = (g_space if side == "g" else h_space).dim
    vec = [Fraction(0)] * tdim
    vec[t] = Fraction(1)
    block = BlockCochain(g_space, h_space, ga, ha, side, {(gk, hk): tuple(vec)})
    return TripleCochain.from_blocks(g_space, h_space, n, {sigs[b]: block})


def triple_cochain_vector(c: TripleCochain, units):
    out = []
    for b, gk, hk, t, _ in units:
        vec = c.blocks[b].coeffs.get((gk, hk))
        out.append(vec[t] if vec is not None else Fraction(0))
    return tuple(out)


def triple_cochain_from_vector(g_space, h_space, n, units, vec) -> TripleCochain:
    sigs = triple_blocks(n)
    data = {sig: {} for sig in sigs}
    for (b, gk, hk, t, _), x in zip(units, vec):
        if x == 0:
            continue
        sig = sigs[b]
        tdim = (g_space if sig[2] == "g" else h_space).dim
        cur = data[sig].setdefault((gk, hk), [Fraction(0)] * tdim)
        cur[t] += Fraction(x)
    by_sig = {
        sig: BlockCochain(g_space, h_space, *sig, {k: tuple(v) for k, v in table.items()})
        for sig, table in data.items()
    }
    return TripleCochain.from_blocks(g_space, h_space, n, by_sig)


def triple_cochain_to_sum(c: TripleCochain) -> Cochain:
    out = None
    for block in c.blocks:
        ext = hat_extend(block)
        out = ext if out is None else out.add(ext)
    return out


def triple_cochain_from_sum(g_space, h_space, n, F: Cochain) -> TripleCochain:
    ds = direct_sum(g_space, h_space)
    by_sig = {
        sig: project_block(F, ds, *sig) for sig in triple_blocks(n)
    }
    return TripleCochain.from_blocks(g_space, h_space, n, by_sig)


def coboundary_of(t: LieSupActTriple, c: TripleCochain, Pi: Cochain = None) -> TripleCochain:
    """[Pi, c] pushed back into block coordinates of degree + 1."""
    if Pi is None:
        Pi = mc_element(t)
    result = nr_bracket(Pi, triple_cochain_to_sum(c))
    return triple_cochain_from_sum(t.g.space, t.h.space, c.degree + 1, result)


def triple_coboundary_matrix(t: LieSupActTriple, n: int, parity=None) -> Matrix:
    """Matrix of the degree-n differential on the deterministic unit basis.

    Columns follow ``triple_units(g, h, n, parity)``, rows
    ``triple_units(g, h, n+1, parity)``.  With ``parity=None`` both parities
    appear; the matrix is block diagonal across them because the structure
    element is even.
    """
    gs, hs = t.g.space, t.h.space
    cols_units = triple_units(gs, hs, n, parity)
    rows_units = triple_units(gs, hs, n + 1, parity)
    Pi = mc_element(t)

    def one_column(unit):
        image = coboundary_of(t, unit_triple_cochain(gs, hs, n, unit), Pi)
        return triple_cochain_vector(image, rows_units)

    columns = parallel_map(one_column, cols_units)
    return Matrix.from_cols(columns, len(rows_units))


def triple_cohomology(t: LieSupActTriple, n: int):
    """(even, odd) dimensions of the degree-n cohomology; complex starts at 1."""
    if n < 1:
        raise ValidationError("cohomology degree must be >= 1")
    dims = []
    for parity in (0, 1):
        d_out = triple_coboundary_matrix(t, n, parity)
        if n == 1:
            d_in = Matrix.zeros(triple_cochain_dim(t.g.space, t.h.space, 1, parity), 0)
        else:
            d_in = triple_coboundary_matrix(t, n - 1, parity)
        dims.append(cohomology_dims(d_in, d_out))
    return tuple(dims)


def f_membership_of_triple_cochain(c: TripleCochain) -> bool:
    ds = direct_sum(c.g_space, c.h_space)
    return f_membership(triple_cochain_to_sum(c), ds)
