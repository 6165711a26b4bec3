from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from precartier.constructions import (
    CapExceeded,
    LieAlgebraData,
    NotBialgebraMap,
    NotSurjective,
    UnknownBuiltin,
    builtin,
    group_algebra_Z2,
    group_algebra_Z2_R,
    lie_check,
    pushforward,
    sl2,
    sl2_r,
    sweedler,
    sweedler_inf,
    sweedler_qt,
    sweedler_to_Z2,
    tensor_product_bialgebra,
    tensor_product_precartier,
)
from precartier.core.bialgebra import trivial_bialgebra, validate_bialgebra
from precartier.core.linalg import LinearMap
from precartier.core.tensors import element, flip_op, one, zero
from precartier.quasitri import (
    InfRMatrix,
    QTStructure,
    check_cartier,
    check_inf_rmatrix,
    classify_inf_rmatrices,
    precartier_suite,
)

F = Fraction
H = sweedler()
coef = st.fractions(-3, 3, max_denominator=4)


# tensor products


@pytest.fixture(scope="module")
def product_structure():
    return tensor_product_precartier(sweedler_inf(1, 2, H), sweedler_inf(2, 3, H))


def test_tensor_product_shape(product_structure):
    ps = product_structure
    assert ps.H.dim == 16
    assert validate_bialgebra(ps.H).ok
    assert ps.H.labels[:3] == ["1⊗1", "1⊗g", "1⊗x"]
    assert ps.chi_left == element(ps.H, {("xg⊗1", "x⊗1"): 2})
    assert ps.chi_right == element(ps.H, {("1⊗xg", "1⊗x"): 3})
    assert ps.qt.is_triangular


def test_tensor_product_suites(product_structure):
    for inf in product_structure.infs.values():
        assert precartier_suite(inf).ok


@given(coef, coef)
def test_tensor_product_combinations(product_structure, a, b):
    ps = product_structure
    chi = ps.chi_left.scaled(a) + ps.chi_right.scaled(b)
    assert check_inf_rmatrix(ps.qt, chi).ok


@pytest.mark.slow
def test_tensor_product_classification(product_structure):
    space = classify_inf_rmatrices(product_structure.qt)
    assert space.dim == 2
    assert [str(b) for b in space.basis] == ["1⊗xg⊗1⊗x", "xg⊗1⊗x⊗1"]


def test_tensor_with_trivial():
    k = trivial_bialgebra()
    ps = tensor_product_precartier(sweedler_inf(1, 1, H), QTStructure(k, one(k, 2)))
    assert ps.H.dim == 4
    assert classify_inf_rmatrices(ps.qt).dim == 1
    assert ps.chi_left.coeffs == sweedler_inf(1, 1, H).chi.coeffs


def test_tensor_of_cartier_factors():
    a = InfRMatrix(sweedler_qt(0, H), zero(H, 2))
    Z = group_algebra_Z2()
    b = InfRMatrix(QTStructure(Z, group_algebra_Z2_R(Z)), zero(Z, 2))
    ps = tensor_product_precartier(a, b)
    assert all(check_cartier(inf) for inf in ps.infs.values())


def test_tensor_cap():
    with pytest.raises(CapExceeded):
        tensor_product_bialgebra(H, H, cap=15)


# pushforward


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0, 1, 5])
def test_projection_to_group_algebra(lam, alpha):
    Z = group_algebra_Z2()
    out = pushforward(sweedler_to_Z2(H, Z), sweedler_inf(lam, alpha, H), Z)
    assert out.chi.is_zero()
    assert out.qt.R == group_algebra_Z2_R(Z)


def test_identity_pushforward():
    inf = sweedler_inf(1, 2, H)
    out = pushforward(LinearMap.identity(4, F(1)), inf, H)
    assert out.qt.R == inf.R and out.chi == inf.chi


def test_broken_map():
    f = sweedler_to_Z2(H)
    cols = [dict(c) for c in f.cols]
    cols[2] = {1: F(1)}  # x ↦ g breaks Δ and the product
    with pytest.raises(NotBialgebraMap):
        pushforward(LinearMap(4, 2, cols), sweedler_inf(0, 1, H), group_algebra_Z2())


def test_non_surjective():
    Z = group_algebra_Z2()
    incl = LinearMap(2, 4, [{0: F(1)}, {1: F(1)}])
    with pytest.raises(NotSurjective):
        pushforward(incl, QTStructure(Z, group_algebra_Z2_R(Z)), H)


# Lie level


def test_sl2_r():
    g, r = sl2_r()
    v = {x.name: x.passed for x in lie_check(g, r).verdicts}
    assert v == {"cybe": True, "symmetrization_invariant": True, "skew": False}


def test_zero_r():
    v = {x.name: x.passed for x in lie_check(sl2(), {}).verdicts}
    assert all(v.values())


@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coef, max_size=9))
def test_abelian_any_r(r):
    g = LieAlgebraData(["a", "b", "c"], {})
    v = {x.name: x.passed for x in lie_check(g, r).verdicts}
    assert v["cybe"] and v["symmetrization_invariant"]


def test_skew_r_detected():
    r = {(0, 2): F(1), (2, 0): F(-1)}
    v = {x.name: x.passed for x in lie_check(sl2(), r).verdicts}
    assert v["skew"] and v["symmetrization_invariant"]
    assert not v["cybe"]


def test_invalid_bracket():
    g = LieAlgebraData(["a", "b"], {(0, 1): {0: F(1)}})
    with pytest.raises(ValueError):
        lie_check(g, {})


# builtins


def test_builtin_R_expansion():
    R = builtin("sweedler_R", lam=1)
    h = F(1, 2)
    assert R == element(R.H, {
        ("1", "1"): h, ("g", "1"): h, ("1", "g"): h, ("g", "g"): -h,
        ("x", "x"): h, ("xg", "x"): -h, ("x", "xg"): h, ("xg", "xg"): h,
    })  # fmt: skip
    assert flip_op(R) != R


def test_builtin_misc():
    chi = builtin("sweedler_chi", alpha=1)
    assert str(chi) == "xg⊗x"
    assert builtin("trivial").dim == 1
    assert builtin("sweedler_twist", t=2) == element(chi.H, {("1", "1"): 1, ("xg", "x"): 1})
    with pytest.raises(UnknownBuiltin):
        builtin("nope")
