import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import coarsehom.linalg as la
from coarsehom.linalg import GF, QQ, ZZ, Matrix, homology_at, invariant_factors, kernel_basis, rank, smith_normal_form


def test_rank_hand_examples():
    assert rank(Matrix.from_dense([[1, 2], [2, 4]], QQ)) == 1
    assert rank(Matrix.from_dense([[1, 2], [3, 4]], QQ)) == 2
    assert rank(Matrix.zeros(3, 5, QQ)) == 0
    assert rank(Matrix.zeros(0, 4, ZZ)) == 0
    assert rank(Matrix.identity(7, GF(3))) == 7
    # rank over Z is the rank over Q, not anything mod-2
    assert rank(Matrix.from_dense([[2, 0], [0, 2]], ZZ)) == 2


def test_kernel_basis_rationals():
    m = Matrix.from_dense([[1, 2], [2, 4]], QQ)
    assert kernel_basis(m) == [{1: Fraction(1), 0: Fraction(-2)}]
    full = Matrix.zeros(2, 3, QQ)
    assert kernel_basis(full) == [{0: Fraction(1)}, {1: Fraction(1)}, {2: Fraction(1)}]
    assert kernel_basis(Matrix.identity(4, QQ)) == []


def test_kernel_basis_mod_p():
    m = Matrix.from_dense([[1, 1]], GF(2))
    assert kernel_basis(m) == [{1: 1, 0: 1}]
    m3 = Matrix.from_dense([[1, 2, 0], [0, 1, 1]], GF(3))
    for vec in kernel_basis(m3):
        assert m3.mat_vec(vec) == {}


def test_kernel_basis_rejects_integers():
    with pytest.raises(ValueError):
        kernel_basis(Matrix.from_dense([[2]], ZZ))


def _random_matrix(rng, domain, nrows, ncols, lo=-4, hi=4):
    m = Matrix(nrows, ncols, domain)
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < 0.6:
                m.set(i, j, rng.randint(lo, hi))
    return m


def test_rank_against_sympy():
    from sympy import Matrix as SymMatrix

    rng = random.Random(7)
    for _ in range(40):
        nrows, ncols = rng.randint(0, 6), rng.randint(0, 6)
        m = _random_matrix(rng, QQ, nrows, ncols)
        sym = SymMatrix(nrows, ncols, lambda i, j: m.get(i, j))
        assert rank(m) == sym.rank()


def test_rank_mod_p_against_sympy():
    from sympy import GF as SymGF
    from sympy.polys.matrices import DomainMatrix

    rng = random.Random(11)
    for p in (2, 3, 5, 97):
        for _ in range(10):
            nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
            dense = [[rng.randint(0, p - 1) for _ in range(ncols)] for _ in range(nrows)]
            m = Matrix.from_dense(dense, GF(p))
            dm = DomainMatrix.from_list(dense, SymGF(p))
            assert rank(m) == dm.rank()


def test_rank_gf_sparse_path_agrees(monkeypatch):
    rng = random.Random(3)
    mats = [_random_matrix(rng, GF(5), rng.randint(1, 8), rng.randint(1, 8), 0, 4) for _ in range(15)]
    dense_ranks = [rank(m) for m in mats]
    monkeypatch.setattr(la, "_DENSE_RANK_CAP", 0)
    assert [rank(m) for m in mats] == dense_ranks


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_kernel_vectors_annihilate(data):
    nrows = data.draw(st.integers(0, 5))
    ncols = data.draw(st.integers(0, 5))
    entries = data.draw(st.lists(st.integers(-5, 5), min_size=nrows * ncols, max_size=nrows * ncols))
    m = Matrix(nrows, ncols, QQ)
    for idx, v in enumerate(entries):
        m.set(idx // ncols if ncols else 0, idx % ncols if ncols else 0, v)
    basis = kernel_basis(m)
    assert len(basis) == ncols - rank(m)
    for vec in basis:
        assert m.mat_vec(vec) == {}


def test_smith_normal_form_hand():
    s, u, v = smith_normal_form(Matrix.from_dense([[2, 0], [0, 3]], ZZ))
    assert s.to_dense() == [[1, 0], [0, 6]]
    assert invariant_factors(Matrix.from_dense([[1, 1, -1, 1], [0, 0, 2, 0]], ZZ)) == [1, 2]
    assert invariant_factors(Matrix.zeros(3, 2, ZZ)) == []
    assert invariant_factors(Matrix.identity(3, ZZ)) == [1, 1, 1]


def test_smith_normal_form_transforms():
    rng = random.Random(23)
    for _ in range(25):
        m = _random_matrix(rng, ZZ, rng.randint(0, 5), rng.randint(0, 5), -6, 6)
        s, u, v = smith_normal_form(m)
        assert (u @ m @ v) == s
        # unimodular: all invariant factors are 1
        assert invariant_factors(u) == [1] * m.nrows
        assert invariant_factors(v) == [1] * m.ncols
        diag = [s.get(i, i) for i in range(min(s.nrows, s.ncols))]
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a != 0 and b % a == 0


def test_smith_normal_form_against_sympy():
    from sympy import Matrix as SymMatrix
    from sympy.matrices.normalforms import smith_normal_form as sym_snf

    rng = random.Random(5)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, ZZ, nrows, ncols, -7, 7)
        ours, _, _ = smith_normal_form(m)
        theirs = sym_snf(SymMatrix(nrows, ncols, lambda i, j: m.get(i, j)))
        mine = [ours.get(i, i) for i in range(min(nrows, ncols))]
        other = [abs(theirs[i, i]) for i in range(min(nrows, ncols))]
        assert mine == other


def test_smith_rejects_field_matrices():
    with pytest.raises(ValueError):
        smith_normal_form(Matrix.identity(2, QQ))


def test_homology_triangle_circle():
    # triangle boundary: three vertices, three edges glued in a cycle
    d1 = Matrix.from_dense([[-1, 0, 1], [1, -1, 0], [0, 1, -1]], ZZ)
    h0 = homology_at(Matrix.zeros(0, 3, ZZ), d1, degree=0)
    assert (h0.betti, h0.torsion) == (1, ())
    h1 = homology_at(d1, Matrix.zeros(3, 0, ZZ), degree=1)
    assert (h1.betti, h1.torsion) == (1, ())


def test_homology_torsion_example():
    # 1 -> Z --2--> Z: H = Z/2
    d_out = Matrix.zeros(0, 1, ZZ)
    d_in = Matrix.from_dense([[2]], ZZ)
    h = homology_at(d_out, d_in, degree=0)
    assert h.betti == 0
    assert h.torsion == (2,)


def test_homology_rejects_bad_composition():
    d_out = Matrix.from_dense([[1]], QQ)
    d_in = Matrix.from_dense([[1]], QQ)
    with pytest.raises(ValueError):
        homology_at(d_out, d_in)


def test_domain_coercions():
    assert QQ.coerce(3) == Fraction(3)
    assert ZZ.coerce(Fraction(4, 2)) == 2
    with pytest.raises(TypeError):
        ZZ.coerce(Fraction(1, 2))
    f5 = GF(5)
    assert f5.coerce(-1) == 4
    assert f5.coerce(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5
    assert f5.div(1, 3) == 2
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(2**31 + 11)
    assert GF(5) is GF(5)


def test_matrix_block_and_product():
    a = Matrix.from_dense([[1, 2], [3, 4]], QQ)
    b = Matrix.from_dense([[5], [6]], QQ)
    blk = Matrix.block([[a, b], [None, Matrix.identity(1, QQ)]], QQ)
    assert blk.to_dense() == [
        [1, 2, 5],
        [3, 4, 6],
        [0, 0, 1],
    ]
    prod = a @ b
    assert prod.to_dense() == [[17], [39]]
    assert (a - a).is_zero()
    assert a.transpose().to_dense() == [[1, 3], [2, 4]]
    with pytest.raises(ValueError):
        Matrix.block([[None]], QQ)


def test_matrix_entry_rules():
    m = Matrix(2, 2, QQ)
    m.set(0, 0, 1)
    m.set(0, 0, 0)
    assert m.is_zero()
    m.add_at(1, 1, Fraction(1, 2))
    m.add_at(1, 1, Fraction(1, 2))
    assert m.get(1, 1) == 1
    with pytest.raises(IndexError):
        m.set(2, 0, 1)


def test_modp_backends_agree():
    import numpy as np

    from coarsehom import _modp

    rng = np.random.default_rng(0)
    for p in (2, 3, 101):
        for _ in range(8):
            a = rng.integers(-20, 20, size=(rng.integers(1, 12), rng.integers(1, 12)))
            expect = _modp._rank_mod_numpy(np.array(a, dtype=np.int64) % p, p)
            assert _modp.rank_mod(a, p) == expect
