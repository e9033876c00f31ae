"""Z2-graded spaces, Koszul signs, super-wedge bases and shuffles.

Conventions, fixed once and property-tested:

* A permutation ``sigma`` is a tuple of 0-based images: ``sigma[i]`` is where
  position ``i`` is sent.  ``compose(s, t)[i] == s[t[i]]`` (apply ``t`` first).
* A permutation acts on an argument tuple by ``(sigma . X)[i] = X[inv(sigma)[i]]``,
  so ``inverse_act(sigma, X)[i] = X[sigma[i]]`` is the tuple the multiplicativity
  law feeds to the second factor.
* ``koszul_K(sigma, parities)`` counts inversions of ``sigma`` whose two moved
  entries are both odd; ``koszul_sign`` is the signature times ``(-1)**K``.
  The composition law ``koszul_sign(s*t, X) == koszul_sign(s, X) *
  koszul_sign(t, inverse_act(s, X))`` is what makes the symmetric group act on
  multilinear maps, and the test suite pins it exhaustively for small n.

The canonical total order on a basis puts every even vector before every odd
one.  A wedge key is then a weakly increasing tuple of basis positions with no
even position repeated: strictly increasing on the even block, weakly
increasing on the odd block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import ArityMismatch, ValidationError

_ZERO = Fraction(0)

Perm = tuple  # tuple[int, ...], 0-based images
WedgeKey = tuple  # tuple[int, ...], normal-form basis positions


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional Z2-graded vector space with a named, ordered basis."""

    even_basis: tuple
    odd_basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "even_basis", tuple(self.even_basis))
        object.__setattr__(self, "odd_basis", tuple(self.odd_basis))
        labels = self.even_basis + self.odd_basis
        if len(set(labels)) != len(labels):
            raise ValidationError(f"duplicate basis labels in {labels}")

    @property
    def dim(self) -> int:
        return len(self.even_basis) + len(self.odd_basis)

    @property
    def dims(self):
        """(even dimension, odd dimension)."""
        return (len(self.even_basis), len(self.odd_basis))

    @property
    def labels(self):
        return self.even_basis + self.odd_basis

    def parity(self, position: int) -> int:
        if not 0 <= position < self.dim:
            raise ValidationError(f"basis position {position} out of range")
        return 0 if position < len(self.even_basis) else 1

    @property
    def parities(self):
        return (0,) * len(self.even_basis) + (1,) * len(self.odd_basis)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown basis label {label!r}") from None

    def parities_of(self, slots):
        p = len(self.even_basis)
        return tuple(0 if s < p else 1 for s in slots)

    def to_dict(self):
        return {"even_basis": list(self.even_basis), "odd_basis": list(self.odd_basis)}


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(outer: Perm, inner: Perm) -> Perm:
    """Composite permutation applying ``inner`` first, then ``outer``."""
    if len(outer) != len(inner):
        raise ArityMismatch("permutation degrees differ")
    return tuple(outer[inner[i]] for i in range(len(inner)))


def invert(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma):
        inv[v] = i
    return tuple(inv)


def act(sigma: Perm, values):
    """sigma . X, the tuple with X[i] moved to slot sigma[i]."""
    inv = invert(sigma)
    return tuple(values[inv[i]] for i in range(len(sigma)))


def inverse_act(sigma: Perm, values):
    """inverse(sigma) . X, i.e. slot i receives X[sigma[i]]."""
    return tuple(values[sigma[i]] for i in range(len(sigma)))


@lru_cache(maxsize=None)
def perm_signature(sigma: Perm) -> int:
    n = len(sigma)
    inv = 0
    for i in range(n):
        si = sigma[i]
        for j in range(i + 1, n):
            if sigma[j] < si:
                inv += 1
    return -1 if inv & 1 else 1


def koszul_K(sigma: Perm, parities) -> int:
    """Number of inversions of sigma moving two odd entries past each other."""
    parities = tuple(parities)
    if len(sigma) != len(parities):
        raise ArityMismatch(f"permutation degree {len(sigma)} != parity vector length {len(parities)}")
    count = 0
    n = len(sigma)
    for i in range(n):
        si = sigma[i]
        if parities[si] == 0:
            continue
        for j in range(i + 1, n):
            sj = sigma[j]
            if sj < si and parities[sj] == 1:
                count += 1
    return count


@lru_cache(maxsize=None)
def _koszul_sign_cached(sigma: Perm, parities: tuple) -> int:
    k = koszul_K(sigma, parities)
    return perm_signature(sigma) * (-1 if k & 1 else 1)


def koszul_sign(sigma: Perm, parities) -> int:
    parities = tuple(parities)
    if len(sigma) != len(parities):
        raise ArityMismatch(f"permutation degree {len(sigma)} != parity vector length {len(parities)}")
    return _koszul_sign_cached(tuple(sigma), parities)


@lru_cache(maxsize=None)
def shuffles(block_sizes: tuple):
    """All permutations increasing within each consecutive block, lex order.

    Returned permutations are images tuples; the count is the multinomial
    coefficient of ``block_sizes``.
    """
    blocks = tuple(int(b) for b in block_sizes)
    if any(b < 0 for b in blocks):
        raise ValidationError("block sizes must be >= 0")
    n = sum(blocks)
    results = []

    def assign(remaining, blocks_left, acc):
        if not blocks_left:
            results.append(tuple(acc))
            return
        size = blocks_left[0]
        for chosen in combinations(remaining, size):
            rest = tuple(x for x in remaining if x not in chosen)
            assign(rest, blocks_left[1:], acc + list(chosen))
        return

    assign(tuple(range(n)), blocks, [])
    return tuple(results)


def _multiset_count(q: int, j: int) -> int:
    if j == 0:
        return 1
    if q == 0:
        return 0
    return comb(q + j - 1, j)


def wedge_dim(space: GradedSpace, n: int) -> int:
    p, q = space.dims
    return sum(comb(p, k) * _multiset_count(q, n - k) for k in range(min(p, n) + 1))


@lru_cache(maxsize=None)
def wedge_basis(space: GradedSpace, n: int):
    """Normal-form keys of the n-th super-wedge power, lexicographic.

    Even positions appear at most once, odd positions may repeat; entries are
    weakly increasing, which under the canonical order lists the even block
    before the odd block.
    """
    if n < 0:
        raise ValidationError("wedge arity must be >= 0")
    if n == 0:
        return ((),)
    p = len(space.even_basis)
    dim = space.dim
    out = []

    def extend(prefix, last):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        start = last if last >= p else last + 1
        if last < 0:
            start = 0
        for nxt in range(start, dim):
            prefix.append(nxt)
            extend(prefix, nxt)
            prefix.pop()

    extend([], -1)
    assert len(out) == wedge_dim(space, n)
    return tuple(out)


@lru_cache(maxsize=None)
def _normalize_cached(slots: tuple, parities: tuple):
    order = sorted(range(len(slots)), key=lambda i: slots[i])
    key = tuple(slots[i] for i in order)
    # a repeated even position kills the wedge
    for idx in range(len(key) - 1):
        if key[idx] == key[idx + 1] and parities[order[idx]] == 0:
            return key, 0
    sign = _koszul_sign_cached(tuple(order), parities)
    return key, sign


def normalize_tuple(space: GradedSpace, slots):
    """Sort ``slots`` into wedge normal form with its Koszul sign.

    Returns ``(key, sign)``; ``sign == 0`` marks a repeated even position (the
    zero element of the wedge power).  Evaluation of a super-antisymmetric map
    at an arbitrary tuple is the stored normal-form value times ``sign``.
    """
    slots = tuple(slots)
    return _normalize_cached(slots, space.parities_of(slots))


class DirectSum:
    """A direct sum of two graded spaces with position translation tables.

    The summands keep their own canonical orders; the sum interleaves them as
    (left evens, right evens, left odds, right odds).  Labels are prefixed
    only when the two summands collide.
    """

    __slots__ = ("left", "right", "space", "left_pos", "right_pos", "side_of")

    def __init__(self, left: GradedSpace, right: GradedSpace):
        collide = set(left.labels) & set(right.labels)
        if collide:
            lmap = {lab: f"g.{lab}" for lab in left.labels}
            rmap = {lab: f"h.{lab}" for lab in right.labels}
        else:
            lmap = {lab: lab for lab in left.labels}
            rmap = {lab: lab for lab in right.labels}
        even = [lmap[l] for l in left.even_basis] + [rmap[l] for l in right.even_basis]
        odd = [lmap[l] for l in left.odd_basis] + [rmap[l] for l in right.odd_basis]
        space = GradedSpace(tuple(even), tuple(odd))
        pl, ql = left.dims
        pr, qr = right.dims
        left_pos = tuple(range(pl)) + tuple(pl + pr + i for i in range(ql))
        right_pos = tuple(pl + i for i in range(pr)) + tuple(pl + pr + ql + i for i in range(qr))
        side_of = [None] * space.dim
        for i, pos in enumerate(left_pos):
            side_of[pos] = ("g", i)
        for i, pos in enumerate(right_pos):
            side_of[pos] = ("h", i)
        self.left = left
        self.right = right
        self.space = space
        self.left_pos = left_pos
        self.right_pos = right_pos
        self.side_of = tuple(side_of)

    def embed_left(self, vec):
        out = [_ZERO] * self.space.dim
        for i, pos in enumerate(self.left_pos):
            out[pos] = vec[i]
        return tuple(out)

    def embed_right(self, vec):
        out = [_ZERO] * self.space.dim
        for i, pos in enumerate(self.right_pos):
            out[pos] = vec[i]
        return tuple(out)

    def split(self, vec):
        lvec = tuple(vec[pos] for pos in self.left_pos)
        rvec = tuple(vec[pos] for pos in self.right_pos)
        return lvec, rvec


@lru_cache(maxsize=None)
def direct_sum(left: GradedSpace, right: GradedSpace) -> DirectSum:
    return DirectSum(left, right)
