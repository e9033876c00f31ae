"""Super-antisymmetric multilinear maps and their graded Lie algebra.

A ``Cochain`` of arity n stores coefficients only on wedge normal-form keys;
its value at an arbitrary basis tuple is defined through ``normalize_tuple``,
so invariance under the signed symmetric-group action holds by construction.

On cochains with equal source and target the insertion product ``circ`` and
the graded commutator ``nr_bracket`` make arity-(n+1) maps a Z x Z2-graded Lie
algebra: the bidegree of an arity-(n+1), parity-f cochain is (n, f), the
product of (n, f) and (n', f') pieces has bidegree (n+n', f+f'), and

    [F, G] = circ(F, G) - (-1)^(n n' + f f') circ(G, F).

Formulas are stated for homogeneous parities, so every product here first
splits its operands into parity components and treats them separately;
non-homogeneous cochains are just containers for such sums.

``BlockCochain`` and ``hat_extend`` tie a two-space world (g, h) to the single
space g + h: a block map on wedge(g)^i x wedge(h)^j extends to the direct sum
by summing over the block shuffles with Koszul signs, and ``project_block``
recovers the block from the extension.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArityMismatch, DimensionMismatch, ShapeMismatch, SpaceMismatch, ValidationError
from .graded import (
    DirectSum,
    GradedSpace,
    direct_sum,
    koszul_sign,
    normalize_tuple,
    shuffles,
    wedge_basis,
)
from .util import vec_add, vec_is_zero, vec_scale, zero_vec


def _require_normal_key(space, key, what):
    nk, sign = normalize_tuple(space, key)
    if nk != tuple(key) or sign != 1:
        raise ValidationError(f"{what} key {key} is not in wedge normal form")


class Cochain:
    """n-linear super-antisymmetric map, coefficients on wedge normal forms."""

    __slots__ = ("source", "target", "arity", "coeffs", "_parts")

    def __init__(self, source: GradedSpace, target: GradedSpace, arity: int, coeffs):
        if arity < 1:
            raise ArityMismatch("cochain arity must be >= 1")
        clean = {}
        tdim = target.dim
        for key, vec in coeffs.items():
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != tdim:
                raise DimensionMismatch("coefficient vector has wrong length")
            if len(key) != arity:
                raise ArityMismatch("key arity mismatch")
            _require_normal_key(source, key, "cochain")
            if not vec_is_zero(vec):
                clean[tuple(key)] = vec
        self.source = source
        self.target = target
        self.arity = arity
        self.coeffs = clean
        self._parts = None

    @classmethod
    def zero(cls, source: GradedSpace, target: GradedSpace, arity: int) -> "Cochain":
        return cls(source, target, arity, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, slots):
        """Value at an arbitrary tuple of basis positions."""
        if len(slots) != self.arity:
            raise ArityMismatch(f"expected {self.arity} slots, got {len(slots)}")
        key, sign = normalize_tuple(self.source, slots)
        if sign == 0:
            return zero_vec(self.target.dim)
        vec = self.coeffs.get(key)
        if vec is None:
            return zero_vec(self.target.dim)
        return vec if sign == 1 else vec_scale(vec, Fraction(sign))

    def key_parity(self, key) -> int:
        return sum(self.source.parities_of(key)) % 2

    def parity_parts(self):
        """[(component, parity)] with mixed coefficients split by map parity."""
        if self._parts is None:
            split = {0: {}, 1: {}}
            for key, vec in self.coeffs.items():
                kp = self.key_parity(key)
                buckets = {0: [Fraction(0)] * self.target.dim, 1: [Fraction(0)] * self.target.dim}
                for k, x in enumerate(vec):
                    if x != 0:
                        buckets[(self.target.parity(k) + kp) % 2][k] = x
                for par, bucket in buckets.items():
                    if any(bucket):
                        split[par][key] = tuple(bucket)
            parts = []
            for par in (0, 1):
                if split[par]:
                    parts.append(
                        (Cochain(self.source, self.target, self.arity, split[par]), par)
                    )
            self._parts = tuple(parts)
        return self._parts

    def parity(self):
        """Map parity if homogeneous (zero counts as even), else None."""
        parts = self.parity_parts()
        if not parts:
            return 0
        if len(parts) == 1:
            return parts[0][1]
        return None

    def add(self, other: "Cochain") -> "Cochain":
        self._require_same_shape(other)
        coeffs = dict(self.coeffs)
        for key, vec in other.coeffs.items():
            cur = coeffs.get(key)
            coeffs[key] = vec_add(cur, vec) if cur is not None else vec
        return Cochain(self.source, self.target, self.arity, coeffs)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        if c == 0:
            return Cochain.zero(self.source, self.target, self.arity)
        return Cochain(
            self.source,
            self.target,
            self.arity,
            {k: vec_scale(v, c) for k, v in self.coeffs.items()},
        )

    def _require_same_shape(self, other: "Cochain"):
        if (
            self.source != other.source
            or self.target != other.target
            or self.arity != other.arity
        ):
            raise ShapeMismatch("cochain shapes differ")

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.source == other.source
            and self.target == other.target
            and self.arity == other.arity
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"Cochain(arity={self.arity}, keys={len(self.coeffs)})"


def _require_endo_pair(F: Cochain, G: Cochain):
    if F.source != F.target or G.source != G.target or F.source != G.source:
        raise SpaceMismatch("insertion product needs cochains on one space V -> V")


def circ(F: Cochain, G: Cochain) -> Cochain:
    """Insertion product: shuffle-sum over G plugged into the last slot of F.

    For homogeneous G of parity g the summand on an argument tuple Y is
    (-1)^(g * (parity of the first weight-of-F entries)) F(Y_head, G(Y_tail));
    summing over the (weight, arity-of-G) shuffles with Koszul signs lands back
    in the wedge-invariant maps.  Mixed G is handled per parity part.
    """
    _require_endo_pair(F, G)
    V = F.source
    nF = F.arity - 1
    N = F.arity + G.arity - 1
    out = {}
    if F.is_zero() or G.is_zero():
        return Cochain.zero(V, V, N)
    shs = shuffles((nF, G.arity))
    pars = V.parities
    keys = wedge_basis(V, N)
    for Gpart, gpar in G.parity_parts():
        for X in keys:
            px = tuple(pars[i] for i in X)
            acc = None
            for sigma in shs:
                sign = koszul_sign(sigma, px)
                Y = tuple(X[sigma[i]] for i in range(N))
                if gpar and sum(px[sigma[i]] for i in range(nF)) % 2:
                    sign = -sign
                inner = Gpart.eval(Y[nF:])
                head = Y[:nF]
                for k, c in enumerate(inner):
                    if c == 0:
                        continue
                    fv = F.eval(head + (k,))
                    if vec_is_zero(fv):
                        continue
                    term = vec_scale(fv, sign * c)
                    acc = term if acc is None else vec_add(acc, term)
            if acc is not None and not vec_is_zero(acc):
                cur = out.get(X)
                out[X] = vec_add(cur, acc) if cur is not None else acc
    return Cochain(V, V, N, out)


def nr_bracket(F: Cochain, G: Cochain) -> Cochain:
    """Graded commutator of the insertion product, bilinear over parity parts."""
    _require_endo_pair(F, G)
    V = F.source
    nF, nG = F.arity - 1, G.arity - 1
    N = F.arity + G.arity - 1
    total = Cochain.zero(V, V, N)
    for Gpart, g in G.parity_parts():
        total = total.add(circ(F, Gpart))
        for Fpart, f in F.parity_parts():
            sign = Fraction(-1 if (nF * nG + f * g) % 2 == 0 else 1)
            total = total.add(circ(Gpart, Fpart).scale(sign))
    return total


class BlockCochain:
    """Map on wedge(g)^gn x wedge(h)^hn into g or into h.

    Super-antisymmetric separately in the g slots and in the h slots;
    coefficients are stored on pairs of normal-form keys.
    """

    __slots__ = ("g_space", "h_space", "g_arity", "h_arity", "target_side", "coeffs")

    def __init__(self, g_space, h_space, g_arity, h_arity, target_side, coeffs):
        if g_arity < 0 or h_arity < 0 or g_arity + h_arity < 1:
            raise ArityMismatch("block arities must be >= 0 and sum to >= 1")
        if target_side not in ("g", "h"):
            raise ShapeMismatch("target side must be 'g' or 'h'")
        tdim = (g_space if target_side == "g" else h_space).dim
        clean = {}
        for (gk, hk), vec in coeffs.items():
            if len(gk) != g_arity or len(hk) != h_arity:
                raise ArityMismatch("block key arity mismatch")
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != tdim:
                raise DimensionMismatch("block value has wrong length")
            _require_normal_key(g_space, gk, "block g")
            _require_normal_key(h_space, hk, "block h")
            if not vec_is_zero(vec):
                clean[(tuple(gk), tuple(hk))] = vec
        self.g_space = g_space
        self.h_space = h_space
        self.g_arity = g_arity
        self.h_arity = h_arity
        self.target_side = target_side
        self.coeffs = clean

    @property
    def target_space(self) -> GradedSpace:
        return self.g_space if self.target_side == "g" else self.h_space

    @classmethod
    def zero(cls, g_space, h_space, g_arity, h_arity, target_side) -> "BlockCochain":
        return cls(g_space, h_space, g_arity, h_arity, target_side, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, g_slots, h_slots):
        gk, gs = normalize_tuple(self.g_space, tuple(g_slots))
        if gs == 0:
            return zero_vec(self.target_space.dim)
        hk, hs = normalize_tuple(self.h_space, tuple(h_slots))
        if hs == 0:
            return zero_vec(self.target_space.dim)
        vec = self.coeffs.get((gk, hk))
        if vec is None:
            return zero_vec(self.target_space.dim)
        s = gs * hs
        return vec if s == 1 else vec_scale(vec, Fraction(s))

    def add(self, other: "BlockCochain") -> "BlockCochain":
        if (
            self.g_space != other.g_space
            or self.h_space != other.h_space
            or (self.g_arity, self.h_arity, self.target_side)
            != (other.g_arity, other.h_arity, other.target_side)
        ):
            raise ShapeMismatch("block shapes differ")
        coeffs = dict(self.coeffs)
        for key, vec in other.coeffs.items():
            cur = coeffs.get(key)
            coeffs[key] = vec_add(cur, vec) if cur is not None else vec
        return BlockCochain(
            self.g_space, self.h_space, self.g_arity, self.h_arity, self.target_side, coeffs
        )

    def scale(self, c) -> "BlockCochain":
        c = Fraction(c)
        return BlockCochain(
            self.g_space,
            self.h_space,
            self.g_arity,
            self.h_arity,
            self.target_side,
            {} if c == 0 else {k: vec_scale(v, c) for k, v in self.coeffs.items()},
        )

    def unit_parity(self, gk, hk, t) -> int:
        kp = sum(self.g_space.parities_of(gk)) + sum(self.h_space.parities_of(hk))
        return (self.target_space.parity(t) + kp) % 2

    def parity_parts(self):
        split = {0: {}, 1: {}}
        tdim = self.target_space.dim
        for (gk, hk), vec in self.coeffs.items():
            kp = sum(self.g_space.parities_of(gk)) + sum(self.h_space.parities_of(hk))
            buckets = {0: [Fraction(0)] * tdim, 1: [Fraction(0)] * tdim}
            for k, x in enumerate(vec):
                if x != 0:
                    buckets[(self.target_space.parity(k) + kp) % 2][k] = x
            for par, bucket in buckets.items():
                if any(bucket):
                    split[par][(gk, hk)] = tuple(bucket)
        return tuple(
            (
                BlockCochain(
                    self.g_space, self.h_space, self.g_arity, self.h_arity,
                    self.target_side, split[par],
                ),
                par,
            )
            for par in (0, 1)
            if split[par]
        )

    def parity(self):
        parts = self.parity_parts()
        if not parts:
            return 0
        if len(parts) == 1:
            return parts[0][1]
        return None

    def __eq__(self, other):
        return (
            isinstance(other, BlockCochain)
            and self.g_space == other.g_space
            and self.h_space == other.h_space
            and (self.g_arity, self.h_arity, self.target_side)
            == (other.g_arity, other.h_arity, other.target_side)
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return (
            f"BlockCochain(({self.g_arity},{self.h_arity})->{self.target_side}, "
            f"keys={len(self.coeffs)})"
        )


def hat_extend(block: BlockCochain) -> Cochain:
    """Extend a block map to the direct sum g + h.

    On a basis tuple of the sum the value is zero unless the tuple carries
    exactly (g_arity, h_arity) entries from the two sides; otherwise exactly
    one block shuffle survives: the one pulling the g entries to the front in
    order.  Its Koszul sign multiplies the block value.
    """
    ds = direct_sum(block.g_space, block.h_space)
    V = ds.space
    N = block.g_arity + block.h_arity
    pars = V.parities
    embed = ds.embed_left if block.target_side == "g" else ds.embed_right
    out = {}
    for X in wedge_basis(V, N):
        g_sub, h_sub, g_idx, h_idx = [], [], [], []
        for idx, pos in enumerate(X):
            side, local = ds.side_of[pos]
            if side == "g":
                g_sub.append(local)
                g_idx.append(idx)
            else:
                h_sub.append(local)
                h_idx.append(idx)
        if len(g_sub) != block.g_arity:
            continue
        vec = block.coeffs.get((tuple(g_sub), tuple(h_sub)))
        if vec is None:
            continue
        sigma = tuple(g_idx + h_idx)
        sign = koszul_sign(sigma, tuple(pars[i] for i in X))
        out[X] = embed(vec_scale(vec, Fraction(sign)))
    return Cochain(V, V, N, out)


def project_block(F: Cochain, ds: DirectSum, g_arity: int, h_arity: int, target_side: str) -> BlockCochain:
    """Read one (g_arity, h_arity) block back out of a cochain on g + h."""
    if F.source != ds.space or F.target != ds.space:
        raise SpaceMismatch("cochain does not live on the given direct sum")
    if g_arity + h_arity != F.arity:
        raise ArityMismatch("block arities do not sum to the cochain arity")
    coeffs = {}
    for gk in wedge_basis(ds.left, g_arity):
        g_slots = tuple(ds.left_pos[i] for i in gk)
        for hk in wedge_basis(ds.right, h_arity):
            slots = g_slots + tuple(ds.right_pos[j] for j in hk)
            value = F.eval(slots)
            part = ds.split(value)[0 if target_side == "g" else 1]
            if not vec_is_zero(part):
                coeffs[(gk, hk)] = part
    return BlockCochain(ds.left, ds.right, g_arity, h_arity, target_side, coeffs)


def f_membership(F: Cochain, ds: DirectSum) -> bool:
    """Support test for the subalgebra of structure-carrying maps on g + h.

    True when every all-g tuple maps into g and every tuple containing at
    least one h entry maps into h.
    """
    if F.source != ds.space or F.target != ds.space:
        raise SpaceMismatch("cochain does not live on the given direct sum")
    for key, vec in F.coeffs.items():
        n_h = sum(1 for pos in key if ds.side_of[pos][0] == "h")
        gpart, hpart = ds.split(vec)
        if n_h == 0:
            if not vec_is_zero(hpart):
                return False
        else:
            if not vec_is_zero(gpart):
                return False
    return True
