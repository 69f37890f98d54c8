"""Finite and banded module layer: validation, defect, Casimir, constructions."""

from fractions import Fraction

import pytest

from hch.gkmodules import (
    BandModule,
    EmptyWindowError,
    FiniteModule,
    UnsupportedAlgebraError,
    casimir_matrix,
    check_hc,
    contragredient,
    direct_sum,
    kron,
    restrict_module,
    tensor,
    trivial_module,
)
from hch.linalg import Matrix, kernel_basis
from hch.scalars import Scalar
from hch.sl2 import (
    diagonal_torus_subpair,
    finite_irrep,
    finite_irrep_so2,
    so2_pair,
    so2_subpair,
    sl2,
    torus_pair,
    trivial_k_pair,
)


def casimir_value(m):
    return Scalar(Fraction(m * (m + 2), 2))


def test_finite_irrep_validates():
    for m in range(5):
        M = finite_irrep(m)
        assert M.dim == m + 1
        assert M.validate().ok
        assert M.is_genuine()


def test_adjoint_module_defect_shift():
    # adjoint rep of sl2 over the torus pair
    P = torus_pair()
    adj = FiniteModule(
        P,
        [P.K.character([2]), P.K.character([0]), P.K.character([-2])],
        [P.g.ad((Scalar(1), Scalar(0), Scalar(0))),
         P.g.ad((Scalar(0), Scalar(1), Scalar(0))),
         P.g.ad((Scalar(0), Scalar(0), Scalar(1)))],
    )
    assert adj.validate().ok
    assert adj.is_genuine()
    # shifting every K-weight by +2 makes the defect -... d(rho) gains +2
    shifted = FiniteModule(P, [P.K.character([c.torus[0] + 2]) for c in adj.k_weights],
                           adj.g_action)
    w = shifted.defect().maps[0]
    assert w == Matrix.identity(3).scale(Scalar(2))
    assert shifted.defect().commutes_with_action()


def test_trivial_module():
    M = trivial_module(torus_pair())
    assert M.validate().ok and M.is_genuine()
    assert M.defect().is_zero()


def test_bracket_violation_detected():
    P = torus_pair()
    M = finite_irrep(2)
    tampered = FiniteModule(P, M.k_weights, [M.g_action[0], M.g_action[1], M.g_action[0]])
    assert not tampered.validate().ok


def test_casimir_finite_irreps():
    for m in range(5):
        rep = check_hc(finite_irrep(m))
        assert rep.ok
        assert rep.eigenvalues == [casimir_value(m)]


def test_casimir_direct_sum():
    M = direct_sum(finite_irrep(1), finite_irrep(3))
    assert M.validate().ok
    rep = check_hc(M)
    assert rep.ok
    assert rep.eigenvalues == [casimir_value(1), casimir_value(3)]


def test_casimir_unsupported_algebra():
    from hch.liepairs import DiagGroup, LieAlgebra, Pair
    ab = Pair(LieAlgebra(1, ["x"]), DiagGroup(), [DiagGroup().zero_char()])
    with pytest.raises(UnsupportedAlgebraError):
        casimir_matrix(trivial_module(ab))


def test_tensor_unit_and_clebsch_gordan():
    M = finite_irrep(2)
    unit = tensor(M, trivial_module(M.pair))
    assert unit.k_weights == M.k_weights
    assert unit.g_action == M.g_action

    T = tensor(finite_irrep(1), finite_irrep(1))
    assert T.validate().ok
    rep = check_hc(T)
    assert rep.ok
    assert rep.eigenvalues == [casimir_value(0), casimir_value(2)]
    assert sorted(ch.torus[0] for ch in T.k_weights) == [-2, 0, 0, 2]


def test_contragredient():
    M = finite_irrep(3)
    D = contragredient(M)
    assert D.validate().ok
    assert check_hc(D).eigenvalues == [casimir_value(3)]
    DD = contragredient(D)
    assert DD.k_weights == M.k_weights
    assert DD.g_action == M.g_action


def test_kron_mixed_shapes():
    a = Matrix.from_rows([[1, 2]])
    b = Matrix.from_rows([[0, 1], [1, 0]])
    k = kron(a, b)
    assert (k.rows, k.cols) == (2, 4)
    assert k[(0, 1)] == Scalar(1) and k[(0, 3)] == Scalar(2)


def test_finite_irrep_so2_and_basis_change_oracle():
    """The rotation-basis irrep agrees with conjugating the standard one."""
    m = 3
    M = finite_irrep_so2(m)
    assert M.validate().ok and M.is_genuine()
    assert check_hc(M).eigenvalues == [casimir_value(m)]

    # independent route: take the standard irrep, form the matrices of
    # u+ = h + i(e+f), k0 = -i(e-f), u- = h - i(e+f), and read dims of
    # k0-eigenspaces; they must match the multiplicity-one weight ladder.
    std = finite_irrep(m)
    i = Scalar(0, 1)
    e_m, h_m, f_m = std.g_action
    k0 = (e_m - f_m).scale(-i)
    for w in range(-m, m + 1, 2):
        eig = kernel_basis(k0 - Matrix.identity(m + 1).scale(Scalar(w)))
        assert len(eig) == 1
    # and u+ maps the w-eigenspace into the (w+2)-eigenspace
    u_plus = h_m + (e_m + f_m).scale(i)
    v = kernel_basis(k0 - Matrix.identity(m + 1).scale(Scalar(-m)))[0]
    img = u_plus.apply(v)
    chk = k0.apply(img)
    assert chk == tuple(Scalar(2 - m) * x for x in img)


def test_restrict_module_to_diagonal_torus():
    emb = diagonal_torus_subpair()
    assert emb.validate().ok
    M = restrict_module(emb, finite_irrep_so2(2))
    assert M.validate().ok
    # mu2 acts trivially on every vector of an even irrep
    assert all(ch.finite == (0,) for ch in M.k_weights)
    M1 = restrict_module(emb, finite_irrep_so2(1))
    assert [ch.finite for ch in M1.k_weights] == [(1,), (1,)]


def test_restrict_module_so2_identityish():
    emb = so2_subpair()
    assert emb.validate().ok
    M = restrict_module(emb, finite_irrep_so2(2))
    assert M.validate().ok
    assert [ch.torus[0] for ch in M.k_weights] == [2, 0, -2]
    assert M.is_genuine()


def test_whitehead_pair_is_valid():
    P = trivial_k_pair()
    assert P.validate().ok
    M = finite_irrep(2, P)
    assert M.validate().ok
    assert sl2().check_jacobi().ok
