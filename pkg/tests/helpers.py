"""Shared builders for the test suite: example algebras, triples, random data."""

from fractions import Fraction as F

from supercochain.cochains import BlockCochain, Cochain
from supercochain.graded import GradedSpace, wedge_basis
from supercochain.superalgebra import LinearMap, SuperAlgebra, abelian, gl
from supercochain.triple import ActionMap, LieSupActTriple
from supercochain.util import zero_vec

__all__ = [
    "aff11",
    "adjoint_action",
    "adjoint_triple",
    "solvable_triple",
    "defining_triple",
    "mixed21_triple",
    "random_cochain",
    "random_homogeneous_cochain",
    "random_block",
    "random_parity_zero_map",
    "random_valid_triple",
    "perturb_triple_data",
    "scaling_semidirect",
    "triple_axioms_ok",
    "SMALL_SPACES",
]


def aff11(labels=("e", "f")) -> SuperAlgebra:
    """One even, one odd generator with [e, f] = f."""
    space = GradedSpace((labels[0],), (labels[1],))
    return SuperAlgebra(space, {(0, 1): (F(0), F(1))})


def adjoint_action(A: SuperAlgebra) -> ActionMap:
    return ActionMap(
        A.space, A.space, [[A.bracket_basis(i, j) for j in range(A.dim)] for i in range(A.dim)]
    )


def adjoint_triple(A: SuperAlgebra) -> LieSupActTriple:
    return LieSupActTriple(A, A, adjoint_action(A))


def solvable_triple() -> LieSupActTriple:
    """g = <x> abelian acting on h = <u> by rho(x)u = u."""
    g = abelian(1, 0, even_prefix="x")
    h = abelian(1, 0, even_prefix="u")
    return LieSupActTriple(g, h, ActionMap(g.space, h.space, [[(F(1),)]]))


def defining_triple(m: int, n: int) -> LieSupActTriple:
    """gl(m,n) acting on the abelian (m|n)-dimensional space it is built on."""
    G = gl(m, n)
    V = abelian(m, n, even_prefix="p", odd_prefix="q")
    d = m + n

    def side(p):
        return 0 if p < m else 1

    pairs = [(p, q) for p in range(d) for q in range(d) if side(p) == side(q)]
    pairs += [(p, q) for p in range(d) for q in range(d) if side(p) != side(q)]
    table = []
    for (p, q) in pairs:
        row = []
        for j in range(d):
            vec = list(zero_vec(d))
            if j == q:
                vec[p] = F(1)
            row.append(tuple(vec))
        table.append(row)
    return LieSupActTriple(G, V, ActionMap(G.space, V.space, table))


def mixed21_triple() -> LieSupActTriple:
    """(2|1)-dimensional solvable algebra acting on gl(1,1) through E11, E12."""
    gspace = GradedSpace(("e", "w"), ("z",))
    g = SuperAlgebra(
        gspace,
        {(0, 1): (F(0), F(1), F(0)), (0, 2): (F(0), F(0), F(1))},
    )
    h = gl(1, 1)
    phi = {0: h.space.index("E11"), 2: h.space.index("E12")}
    table = []
    for i in range(g.dim):
        if i in phi:
            table.append([h.bracket_basis(phi[i], j) for j in range(h.dim)])
        else:
            table.append([zero_vec(h.dim)] * h.dim)
    return LieSupActTriple(g, h, ActionMap(g.space, h.space, table))


def random_cochain(space, arity, rng, max_keys=2, bound=2) -> Cochain:
    """Sparse random cochain with entries in [-bound, bound]."""
    keys = list(wedge_basis(space, arity))
    rng.shuffle(keys)
    coeffs = {}
    for key in keys[: max_keys if keys else 0]:
        vec = tuple(F(rng.randint(-bound, bound)) for _ in range(space.dim))
        coeffs[key] = vec
    return Cochain(space, space, arity, coeffs)


def random_homogeneous_cochain(space, arity, parity, rng, max_keys=2, bound=2) -> Cochain:
    keys = list(wedge_basis(space, arity))
    rng.shuffle(keys)
    coeffs = {}
    for key in keys[:max_keys]:
        kp = sum(space.parities_of(key)) % 2
        vec = [F(0)] * space.dim
        hits = 0
        for k in range(space.dim):
            if (space.parity(k) + kp) % 2 == parity % 2:
                vec[k] = F(rng.randint(-bound, bound))
                hits += 1
        if hits:
            coeffs[key] = tuple(vec)
    return Cochain(space, space, arity, coeffs)


def random_block(g_space, h_space, g_arity, h_arity, side, rng, max_keys=2, bound=2) -> BlockCochain:
    gkeys = list(wedge_basis(g_space, g_arity))
    hkeys = list(wedge_basis(h_space, h_arity))
    pairs = [(gk, hk) for gk in gkeys for hk in hkeys]
    rng.shuffle(pairs)
    tdim = (g_space if side == "g" else h_space).dim
    coeffs = {}
    for key in pairs[:max_keys]:
        coeffs[key] = tuple(F(rng.randint(-bound, bound)) for _ in range(tdim))
    return BlockCochain(g_space, h_space, g_arity, h_arity, side, coeffs)


def random_parity_zero_map(source, target, rng, bound=2) -> LinearMap:
    cols = []
    for j in range(source.dim):
        pj = source.parity(j)
        cols.append(
            tuple(
                F(rng.randint(-bound, bound)) if target.parity(k) == pj else F(0)
                for k in range(target.dim)
            )
        )
    return LinearMap(source, target, tuple(cols))


SMALL_SPACES = (
    GradedSpace(("a",), ("b",)),
    GradedSpace(("a", "c"), ("b",)),
    GradedSpace(("a",), ("b", "d")),
    GradedSpace(("a", "c"), ("b", "d")),
)


def scaling_semidirect(p: int, q: int) -> SuperAlgebra:
    """gl(1,0) twisted onto abelian(p,q) by the identity action."""
    from supercochain.superalgebra import semidirect

    g = gl(1, 0)
    h = abelian(p, q, even_prefix="m", odd_prefix="n")
    table = [
        [
            tuple(F(1 if k == j else 0) for k in range(h.dim))
            for j in range(h.dim)
        ]
    ]
    return semidirect(g, h, ActionMap(g.space, h.space, table))


def random_valid_triple(rng) -> LieSupActTriple:
    """Valid triples drawn from the stock constructions."""
    kind = rng.randrange(6)
    if kind == 0:
        g = rng.choice((gl(1, 1), abelian(2, 1), aff11()))
        h = rng.choice((abelian(1, 1, even_prefix="u", odd_prefix="v"), gl(1, 1)))
        return LieSupActTriple(g, h, ActionMap.zero(g.space, h.space))
    if kind == 1:
        return adjoint_triple(rng.choice((aff11(), gl(1, 1))))
    if kind == 2:
        return defining_triple(*rng.choice(((1, 1), (1, 0), (0, 1))))
    if kind == 3:
        # one even generator acting diagonally on an abelian target
        g = abelian(1, 0, even_prefix="s")
        h = abelian(1, 1, even_prefix="u", odd_prefix="v")
        op = [
            tuple(F(rng.randint(-2, 2)) if k == j else F(0) for k in range(h.dim))
            for j in range(h.dim)
        ]
        return LieSupActTriple(g, h, ActionMap(g.space, h.space, [op]))
    if kind == 4:
        return adjoint_triple(scaling_semidirect(*rng.choice(((1, 1), (1, 0)))))
    return mixed21_triple()


def perturb_triple_data(t: LieSupActTriple, rng):
    """One parity-legal single-entry change in a bracket or action table.

    Only wedge-visible slots are touched (no even diagonal), so both the axiom
    checkers and the residual computation see the same candidate structure.
    """
    which = rng.randrange(3)
    if which in (0, 1):
        A = t.g if which == 0 else t.h
        keys = [
            (i, j)
            for i in range(A.dim)
            for j in range(i, A.dim)
            if not (i == j and A.space.parity(i) == 0)
        ]
        if not keys:
            return None
        i, j = rng.choice(keys)
        parity = (A.space.parity(i) + A.space.parity(j)) % 2
        slots = [k for k in range(A.dim) if A.space.parity(k) == parity]
        if not slots:
            return None
        slot = rng.choice(slots)
        sc = {k: list(v) for k, v in A.sc.items()}
        vec = sc.setdefault((i, j), [F(0)] * A.dim)
        vec[slot] += rng.choice((F(1), F(-1), F(2)))
        B = SuperAlgebra(A.space, {k: tuple(v) for k, v in sc.items()})
        return (B, t.h, t.rho) if which == 0 else (t.g, B, t.rho)
    g, h = t.g, t.h
    i = rng.randrange(g.dim)
    j = rng.randrange(h.dim)
    parity = (g.space.parity(i) + h.space.parity(j)) % 2
    slots = [k for k in range(h.dim) if h.space.parity(k) == parity]
    if not slots:
        return None
    slot = rng.choice(slots)
    table = [[list(v) for v in row] for row in t.rho.table]
    table[i][j][slot] += rng.choice((F(1), F(-1), F(2)))
    rho = ActionMap(g.space, h.space, [[tuple(v) for v in row] for row in table])
    return (g, h, rho)


def triple_axioms_ok(g, h, rho) -> bool:
    from supercochain.superalgebra import check_jacobi, check_super_skew
    from supercochain.triple import check_action

    return (
        check_super_skew(g).ok
        and check_jacobi(g).ok
        and check_super_skew(h).ok
        and check_jacobi(h).ok
        and check_action(g, h, rho).ok
    )
