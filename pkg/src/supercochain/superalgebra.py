"""Lie superalgebras given by structure constants, and maps between them.

A ``SuperAlgebra`` stores its bracket sparsely on pairs ``i <= j`` of basis
positions; the ``i > j`` values are derived by super-skew-symmetry, so that
half of the axiom surface is structural.  The constructor enforces only the
degree-0 pattern of the bracket; the axioms themselves are checked by
``check_super_skew`` and ``check_jacobi``, which report violations instead of
raising (candidate tables are first-class inputs elsewhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochains import Cochain
from .errors import (
    DimensionMismatch,
    InternalInvariantError,
    InvalidAction,
    ValidationError,
)
from .graded import DirectSum, GradedSpace, direct_sum
from .util import vec_add, vec_is_zero, vec_scale, zero_vec


@dataclass(frozen=True)
class Failure:
    """One axiom violation: which rule, at which basis labels, both sides."""

    axiom: str
    where: tuple
    lhs: tuple
    rhs: tuple

    def to_dict(self, fmt=str):
        return {
            "axiom": self.axiom,
            "where": list(self.where),
            "lhs": [fmt(x) for x in self.lhs],
            "rhs": [fmt(x) for x in self.rhs],
        }


@dataclass(frozen=True)
class CheckReport:
    name: str
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


class SuperAlgebra:
    """Structure-constant table for a degree-0 bracket on a graded space."""

    __slots__ = ("space", "sc")

    def __init__(self, space: GradedSpace, sc):
        table = {}
        dim = space.dim
        for (i, j), vec in sc.items():
            if not (0 <= i <= j < dim):
                raise ValidationError(f"bracket key ({i},{j}) out of order or range")
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != dim:
                raise DimensionMismatch("bracket value has wrong length")
            if vec_is_zero(vec):
                continue
            want = (space.parity(i) + space.parity(j)) % 2
            for k, x in enumerate(vec):
                if x != 0 and space.parity(k) != want:
                    raise ValidationError(
                        f"bracket [{space.labels[i]},{space.labels[j]}] has a component on "
                        f"{space.labels[k]} of the wrong parity"
                    )
            table[(i, j)] = vec
        self.space = space
        self.sc = table

    @property
    def dim(self) -> int:
        return self.space.dim

    def bracket_basis(self, i: int, j: int):
        """[b_i, b_j], with i > j derived by super-skew-symmetry."""
        dim = self.space.dim
        if i <= j:
            return self.sc.get((i, j), zero_vec(dim))
        base = self.sc.get((j, i))
        if base is None:
            return zero_vec(dim)
        sign = -1 if (self.space.parity(i) * self.space.parity(j)) % 2 == 0 else 1
        # [b_i,b_j] = -(-1)^{p_i p_j} [b_j,b_i]
        return vec_scale(base, Fraction(sign))

    def bracket_eval(self, x, y):
        """Bilinear extension of the table to coordinate vectors."""
        dim = self.space.dim
        x = tuple(x)
        y = tuple(y)
        if len(x) != dim or len(y) != dim:
            raise DimensionMismatch("vector length != algebra dimension")
        out = list(zero_vec(dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                vec = self.bracket_basis(i, j)
                c = xi * yj
                for k, v in enumerate(vec):
                    if v != 0:
                        out[k] += c * v
        return tuple(out)

    def as_cochain(self) -> Cochain:
        """The bracket as an arity-2 cochain on the underlying space."""
        from .graded import wedge_basis

        coeffs = {}
        for key in wedge_basis(self.space, 2):
            v = self.bracket_basis(key[0], key[1])
            if not vec_is_zero(v):
                coeffs[key] = v
        return Cochain(self.space, self.space, 2, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, SuperAlgebra)
            and self.space == other.space
            and self.sc == other.sc
        )

    def __repr__(self):
        p, q = self.space.dims
        return f"SuperAlgebra(dims=({p}|{q}), entries={len(self.sc)})"


def check_super_skew(A: SuperAlgebra) -> CheckReport:
    """[a,b] = -(-1)^{|a||b|}[b,a] on all basis pairs, including a = b."""
    failures = []
    labels = A.space.labels
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.bracket_basis(i, j)
            sign = -1 if (A.space.parity(i) * A.space.parity(j)) % 2 == 0 else 1
            rhs = vec_scale(A.bracket_basis(j, i), Fraction(sign))
            if lhs != rhs:
                failures.append(Failure("super_skew", (labels[i], labels[j]), lhs, rhs))
    return CheckReport("super_skew", tuple(failures))


def check_jacobi(A: SuperAlgebra) -> CheckReport:
    """[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]] on all basis triples."""
    failures = []
    labels = A.space.labels
    basis = [tuple(Fraction(1 if k == i else 0) for k in range(A.dim)) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            sign = Fraction(-1 if (A.space.parity(i) * A.space.parity(j)) % 2 else 1)
            for k in range(A.dim):
                lhs = A.bracket_eval(basis[i], A.bracket_eval(basis[j], basis[k]))
                rhs = vec_add(
                    A.bracket_eval(A.bracket_eval(basis[i], basis[j]), basis[k]),
                    vec_scale(A.bracket_eval(basis[j], A.bracket_eval(basis[i], basis[k])), sign),
                )
                if lhs != rhs:
                    failures.append(Failure("jacobi", (labels[i], labels[j], labels[k]), lhs, rhs))
    return CheckReport("jacobi", tuple(failures))


def gl(m: int, n: int) -> SuperAlgebra:
    """Endomorphisms of an (m|n)-dimensional space under the super-commutator.

    Basis: elementary matrices E_pq, even when p and q sit on the same side of
    the (m|n) split, odd otherwise.
    """
    if m + n < 1:
        raise ValidationError("gl(m,n) needs m+n >= 1")
    d = m + n

    def side(p):
        return 0 if p < m else 1

    def label(p, q):
        if d <= 9:
            return f"E{p + 1}{q + 1}"
        return f"E{p + 1}_{q + 1}"

    even, odd = [], []
    for p in range(d):
        for q in range(d):
            (even if side(p) == side(q) else odd).append((p, q))
    space = GradedSpace(
        tuple(label(p, q) for p, q in even),
        tuple(label(p, q) for p, q in odd),
    )
    order = even + odd
    pos = {pq: idx for idx, pq in enumerate(order)}
    sc = {}
    for i, (p, q) in enumerate(order):
        for j, (r, s) in enumerate(order):
            if i > j:
                continue
            vec = [Fraction(0)] * (d * d)
            if q == r:
                vec[pos[(p, s)]] += 1
            par = (side(p) ^ side(q)) * (side(r) ^ side(s))
            sgn = -1 if par % 2 == 0 else 1
            if s == p:
                vec[pos[(r, q)]] += sgn
            if any(vec):
                sc[(i, j)] = tuple(vec)
    return SuperAlgebra(space, sc)


def abelian(p: int, q: int, even_prefix: str = "x", odd_prefix: str = "y") -> SuperAlgebra:
    space = GradedSpace(
        tuple(f"{even_prefix}{i + 1}" for i in range(p)),
        tuple(f"{odd_prefix}{i + 1}" for i in range(q)),
    )
    return SuperAlgebra(space, {})


@dataclass(frozen=True)
class LinearMap:
    """Linear map stored column-wise: cols[j] is the image of source basis j."""

    source: GradedSpace
    target: GradedSpace
    cols: tuple

    def __post_init__(self):
        cols = tuple(tuple(Fraction(x) for x in c) for c in self.cols)
        if len(cols) != self.source.dim or any(len(c) != self.target.dim for c in cols):
            raise DimensionMismatch("column shape does not match spaces")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def zero(cls, source: GradedSpace, target: GradedSpace) -> "LinearMap":
        return cls(source, target, tuple(zero_vec(target.dim) for _ in range(source.dim)))

    @classmethod
    def identity(cls, space: GradedSpace) -> "LinearMap":
        return cls(
            space,
            space,
            tuple(
                tuple(Fraction(1 if i == j else 0) for i in range(space.dim))
                for j in range(space.dim)
            ),
        )

    def apply(self, vec):
        vec = tuple(vec)
        if len(vec) != self.source.dim:
            raise DimensionMismatch("vector length != source dimension")
        out = list(zero_vec(self.target.dim))
        for j, c in enumerate(vec):
            if c == 0:
                continue
            col = self.cols[j]
            for k, v in enumerate(col):
                if v != 0:
                    out[k] += c * v
        return tuple(out)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatch("composition spaces do not match")
        return LinearMap(other.source, self.target, tuple(self.apply(c) for c in other.cols))

    def parity_component(self, s: int) -> "LinearMap":
        """Keep only entries shifting parity by s, zero the rest."""
        cols = []
        for j, col in enumerate(self.cols):
            pj = self.source.parity(j)
            cols.append(
                tuple(
                    v if (self.target.parity(k) - pj) % 2 == s % 2 else Fraction(0)
                    for k, v in enumerate(col)
                )
            )
        return LinearMap(self.source, self.target, tuple(cols))

    def parity(self):
        """0 or 1 for homogeneous maps, None for mixed, 0 for the zero map."""
        seen = set()
        for j, col in enumerate(self.cols):
            pj = self.source.parity(j)
            for k, v in enumerate(col):
                if v != 0:
                    seen.add((self.target.parity(k) - pj) % 2)
        if not seen:
            return 0
        if len(seen) == 1:
            return seen.pop()
        return None

    def is_zero(self) -> bool:
        return all(vec_is_zero(c) for c in self.cols)

    def add(self, other: "LinearMap") -> "LinearMap":
        if other.source != self.source or other.target != self.target:
            raise DimensionMismatch("sum spaces do not match")
        return LinearMap(
            self.source, self.target, tuple(vec_add(a, b) for a, b in zip(self.cols, other.cols))
        )

    def scale(self, c) -> "LinearMap":
        c = Fraction(c)
        return LinearMap(self.source, self.target, tuple(vec_scale(col, c) for col in self.cols))

    def super_commutator(self, other: "LinearMap") -> "LinearMap":
        """[f, g] = f g - (-1)^{|f||g|} g f; requires homogeneous factors."""
        pf, pg = self.parity(), other.parity()
        if pf is None or pg is None:
            raise ValidationError("super commutator needs homogeneous maps")
        sign = Fraction(-1 if (pf * pg) % 2 == 0 else 1)
        return self.compose(other).add(other.compose(self).scale(sign))


def is_homomorphism(f: LinearMap, A: SuperAlgebra, B: SuperAlgebra) -> bool:
    """f([a,b]) == [f(a), f(b)] on all basis pairs."""
    if f.source != A.space or f.target != B.space:
        raise DimensionMismatch("map does not connect the given algebras")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f.apply(A.bracket_basis(i, j))
            rhs = B.bracket_eval(f.cols[i], f.cols[j])
            if lhs != rhs:
                return False
    return True


def derivation_space(A: SuperAlgebra):
    """Exact bases of the even and odd derivations of A.

    A degree-s endomorphism D is a derivation when
    D[a,b] = [D a, b] + (-1)^{s |a|} [a, D b] on all basis pairs; the
    conditions form a linear system in the matrix entries of D, solved exactly.
    """
    from .exact_linalg import Matrix, kernel_basis

    out = []
    dim = A.dim
    basis = [tuple(Fraction(1 if k == i else 0) for k in range(dim)) for i in range(dim)]
    for s in (0, 1):
        slots = [
            (k, j)
            for j in range(dim)
            for k in range(dim)
            if (A.space.parity(k) - A.space.parity(j)) % 2 == s
        ]
        index = {kj: t for t, kj in enumerate(slots)}
        rows = []
        for i in range(dim):
            pi = A.space.parity(i)
            sign = Fraction(-1 if (s * pi) % 2 else 1)
            for j in range(dim):
                bracket = A.bracket_basis(i, j)
                for comp in range(dim):
                    row = [Fraction(0)] * len(slots)
                    # D applied to [b_i, b_j], component `comp`
                    for k, c in enumerate(bracket):
                        if c != 0 and (comp, k) in index:
                            row[index[(comp, k)]] += c
                    # minus [D b_i, b_j]
                    for k in range(dim):
                        if (k, i) in index:
                            v = A.bracket_basis(k, j)[comp]
                            if v != 0:
                                row[index[(k, i)]] -= v
                    # minus (-1)^{s|b_i|} [b_i, D b_j]
                    for k in range(dim):
                        if (k, j) in index:
                            v = A.bracket_basis(i, k)[comp]
                            if v != 0:
                                row[index[(k, j)]] -= sign * v
                    if any(row):
                        rows.append(row)
        if rows:
            mat = Matrix.from_rows(rows)
            kernel = kernel_basis(mat)
        else:
            kernel = [
                tuple(Fraction(1 if t == u else 0) for t in range(len(slots)))
                for u in range(len(slots))
            ]
        maps = []
        for vec in kernel:
            cols = [[Fraction(0)] * dim for _ in range(dim)]
            for t, (k, j) in enumerate(slots):
                cols[j][k] = vec[t]
            maps.append(LinearMap(A.space, A.space, tuple(tuple(c) for c in cols)))
        out.append(maps)
    return out[0], out[1]


def ad(A: SuperAlgebra, i: int) -> LinearMap:
    """Adjoint map of the i-th basis vector."""
    return LinearMap(
        A.space, A.space, tuple(A.bracket_basis(i, j) for j in range(A.dim))
    )


def semidirect(g: SuperAlgebra, h: SuperAlgebra, rho) -> SuperAlgebra:
    """Semidirect product on g + h, twisting the h part by the action.

    The action must pass ``check_action``; the resulting table is re-verified
    with ``check_jacobi`` rather than trusted.
    """
    from .triple import check_action

    report = check_action(g, h, rho)
    if not report.ok:
        raise InvalidAction(f"action fails {len(report.failures)} axiom checks")
    ds = direct_sum(g.space, h.space)
    return _semidirect_table(g, h, rho, ds)


def _semidirect_table(g: SuperAlgebra, h: SuperAlgebra, rho, ds: DirectSum) -> SuperAlgebra:
    dim = ds.space.dim
    sc = {}
    for i in range(dim):
        side_i, li = ds.side_of[i]
        for j in range(i, dim):
            side_j, lj = ds.side_of[j]
            if side_i == "g" and side_j == "g":
                vec = ds.embed_left(g.bracket_basis(li, lj))
            elif side_i == "h" and side_j == "h":
                vec = ds.embed_right(h.bracket_basis(li, lj))
            elif side_i == "g" and side_j == "h":
                vec = ds.embed_right(rho.value(li, lj))
            else:
                sign = -1 if (ds.space.parity(i) * ds.space.parity(j)) % 2 == 0 else 1
                vec = ds.embed_right(vec_scale(rho.value(lj, li), Fraction(sign)))
            if not vec_is_zero(vec):
                sc[(i, j)] = vec
    result = SuperAlgebra(ds.space, sc)
    jac = check_jacobi(result)
    if not jac.ok:
        raise InternalInvariantError(
            f"semidirect product violates the super Jacobi identity at {jac.failures[0].where}"
        )
    return result
