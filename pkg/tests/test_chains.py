"""Controlled tuple bases, boundaries, coarse homology, pushforwards."""

import random

import pytest

from coarsehom.chains import (
    ControlledChain,
    CoarseChainComplex,
    basis_chain,
    boundary,
    boundary_of_chain,
    chain_pushforward,
    controlled_tuple_basis,
    pushforward_matrix,
    xh,
)
from coarsehom.groups import cyclic_group, trivial_group
from coarsehom.linalg import GF, QQ, ZZ, Matrix
from coarsehom.spaces import GBornCoarseSpace, SpaceMap, g_can_min, point_space


def single_component(k):
    """k points, trivial group, everything coarsely related."""
    gens = [(0, i) for i in range(1, k)]
    return GBornCoarseSpace(list(range(k)), gens, trivial_group(), [list(range(k))])


def test_point_bases_and_homology():
    pt = point_space()
    for n in range(4):
        assert controlled_tuple_basis(pt, n, invariant=False) == [(0,) * (n + 1)]
    assert xh(pt, 0).betti == 1 and xh(pt, 0).torsion == ()
    for n in range(1, 3):
        assert xh(pt, n).betti == 0 and xh(pt, n).torsion == ()


def test_two_point_component_tuple_count():
    x = single_component(2)
    assert len(controlled_tuple_basis(x, 1, invariant=False)) == 4


def test_boundary_of_edge():
    x = single_component(2)
    d1 = boundary(x, 1, invariant=False, domain=ZZ)
    # columns: (0,0), (0,1), (1,0), (1,1); rows: (0,), (1,)
    assert d1.to_dense() == [[0, -1, 1, 0], [0, 1, -1, 0]]


def test_unrelated_tuple_excluded_and_rejected():
    x = GBornCoarseSpace(["a", "b"], [], trivial_group(), [[0, 1]])
    assert controlled_tuple_basis(x, 1, invariant=False) == [(0, 0), (1, 1)]
    with pytest.raises(ValueError, match="controlled"):
        ControlledChain(x, 1, {(0, 1): 1}, ZZ)


def test_invariant_basis_of_z2_on_itself():
    x = g_can_min(cyclic_group(2))
    assert controlled_tuple_basis(x, 0, invariant=True) == [(0,)]
    assert len(controlled_tuple_basis(x, 1, invariant=True)) == 2


def test_invariant_xh_of_z2_canmin():
    x = g_can_min(cyclic_group(2))
    h0 = xh(x, 0, domain=ZZ, invariant=True)
    assert h0.betti == 1 and h0.torsion == ()
    h1 = xh(x, 1, domain=ZZ, invariant=True)
    # group homology of Z/2 shows up in the invariant complex
    assert h1.betti == 0 and h1.torsion == (2,)
    assert xh(x, 0, domain=QQ, invariant=True).betti == 1


def test_plain_xh_counts_components():
    two = GBornCoarseSpace(["a", "b"], [], trivial_group(), [[0, 1]])
    assert xh(two, 0, invariant=False).betti == 2
    assert xh(single_component(3), 0, invariant=False).betti == 1


def cone_homotopy(space, n):
    """H_n: C_n -> C_(n+1), prepend the least point of the single component."""
    basis_n = controlled_tuple_basis(space, n, invariant=False)
    basis_up = controlled_tuple_basis(space, n + 1, invariant=False)
    index = {t: i for i, t in enumerate(basis_up)}
    p = 0
    cols = [{index[(p,) + tup]: 1} for tup in basis_n]
    return Matrix.from_columns(cols, len(basis_up), ZZ)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_single_component_contractible_with_certificate(k):
    x = single_component(k)
    for n in range(1, 3):
        h = xh(x, n, invariant=False)
        assert h.betti == 0 and h.torsion == ()
        lhs = boundary(x, n + 1, False, ZZ) @ cone_homotopy(x, n) + cone_homotopy(x, n - 1) @ boundary(x, n, False, ZZ)
        dim = len(controlled_tuple_basis(x, n, invariant=False))
        assert lhs == Matrix.identity(dim, ZZ)


def test_complex_builder_checks_d_squared():
    cx = CoarseChainComplex(single_component(3), max_degree=3, domain=ZZ, invariant=False)
    assert cx.dims == [3, 9, 27, 81]
    assert cx.homology(0).betti == 1
    with pytest.raises(ValueError, match="out of range"):
        cx.homology(3)


def test_random_spaces_have_square_zero_boundary():
    rng = random.Random(7)
    for _ in range(10):
        npts = rng.randint(1, 5)
        gens = [(rng.randrange(npts), rng.randrange(npts)) for _ in range(rng.randint(0, 3))]
        x = GBornCoarseSpace(list(range(npts)), gens, trivial_group(), [list(range(npts))])
        CoarseChainComplex(x, max_degree=3, domain=ZZ, invariant=False)
        CoarseChainComplex(x, max_degree=3, domain=QQ, invariant=True)


def test_basis_chain_matches_boundary_matrix():
    x = g_can_min(cyclic_group(3))
    basis1 = controlled_tuple_basis(x, 1, invariant=True)
    basis0 = controlled_tuple_basis(x, 0, invariant=True)
    d1 = boundary(x, 1, invariant=True, domain=ZZ)
    for j, rep in enumerate(basis1):
        via_chain = boundary_of_chain(basis_chain(x, rep, ZZ, invariant=True))
        from_matrix = ControlledChain(x, 0, {}, ZZ)
        for i, val in d1.column(j).items():
            from_matrix = from_matrix + basis_chain(x, basis0[i], ZZ, invariant=True).scale(val)
        assert via_chain == from_matrix


def test_pushforward_identity_and_collapse():
    x = single_component(2)
    ident = SpaceMap.identity(x)
    c = ControlledChain(x, 1, {(0, 1): 2, (1, 0): -1}, ZZ)
    assert chain_pushforward(ident, c) == c
    pt = point_space()
    f = SpaceMap(x, pt, [0, 0])
    pushed = chain_pushforward(f, c)
    assert pushed.coefficients == {(0, 0): 1}


def test_pushforward_is_a_chain_map():
    x = single_component(3)
    pt = point_space()
    f = SpaceMap(x, pt, [0, 0, 0])
    rng = random.Random(3)
    basis2 = controlled_tuple_basis(x, 2, invariant=False)
    coeffs = {tup: rng.randint(-3, 3) for tup in rng.sample(basis2, 5)}
    c = ControlledChain(x, 2, coeffs, ZZ)
    assert chain_pushforward(f, boundary_of_chain(c)) == boundary_of_chain(chain_pushforward(f, c))


def test_equivariant_pushforward_preserves_invariance():
    g = cyclic_group(2)
    x = g_can_min(g)
    y = point_space(g)
    f = SpaceMap(x, y, [0, 0])
    c = basis_chain(x, (0, 1), ZZ, invariant=True) + basis_chain(x, (0, 0), ZZ, invariant=True)
    assert c.is_invariant()
    pushed = chain_pushforward(f, c)
    assert pushed.is_invariant()
    assert pushed.coefficients == {(0, 0): 4}


def test_pushforward_matrix_mod_two_collapse():
    g = cyclic_group(2)
    f = SpaceMap(g_can_min(g), point_space(g), [0, 0])
    m = pushforward_matrix(f, 0, domain=GF(2), invariant=True)
    assert m.is_zero()  # the orbit sum has two members, and 2 = 0 in F_2
    m_q = pushforward_matrix(f, 0, domain=QQ, invariant=True)
    assert m_q.to_dense() == [[2]]


def test_pushforward_needs_morphism():
    src = single_component(2)
    tgt = GBornCoarseSpace(["a", "b"], [], trivial_group(), [[0, 1]])
    f = SpaceMap(src, tgt, [0, 1])
    with pytest.raises(ValueError, match="morphism"):
        chain_pushforward(f, ControlledChain(src, 0, {(0,): 1}, ZZ))


def test_degree_guard():
    with pytest.raises(ValueError, match="out of range"):
        xh(point_space(), 4)
