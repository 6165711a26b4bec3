from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from precartier.constructions import (
    group_algebra_Z2,
    group_algebra_Z2_R,
    sweedler,
    sweedler_chi,
    sweedler_inf,
    sweedler_qt,
    sweedler_R,
    tensor_product_bialgebra,
)
from precartier.core.bialgebra import trivial_bialgebra
from precartier.core.tensors import (
    apply_counit_leg,
    apply_coproduct_leg,
    element,
    one,
    zero,
)
from precartier.quasitri import (
    InfRMatrix,
    InvalidStructure,
    QTStructure,
    TriangularRequired,
    balanced_sides,
    casimir_element,
    check_antipode_identities,
    check_balanced,
    check_cartier,
    check_casimir,
    check_coactions,
    check_inf_qyb,
    check_inf_rmatrix,
    check_q_commutation,
    check_quasitriangular,
    check_two_cocycle,
    classify_inf_rmatrices,
    cobar_apply,
    cobar_differential,
    cohomology_dim,
    is_coboundary,
    precartier_suite,
    triangle_coaction_left,
    triangle_coaction_right,
)

F = Fraction
H = sweedler()
scalars = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def klein_nontriangular():
    """k[Z2×Z2] with R = Σ β(φ,ψ) e_φ⊗e_ψ for the non-symmetric bicharacter β((a,b),(c,d)) = (-1)^{ad}."""
    K = tensor_product_bialgebra(group_algebra_Z2(), group_algebra_Z2())
    idem = {}
    for a in (0, 1):
        for b in (0, 1):
            idem[(a, b)] = {2 * i + j: F((-1) ** (a * i + b * j), 4) for i in (0, 1) for j in (0, 1)}
    terms: dict = {}
    for (a, b), u in idem.items():
        for (c, d), v in idem.items():
            sign = (-1) ** (a * d)
            for p, x in u.items():
                for q, y in v.items():
                    terms[(p, q)] = terms.get((p, q), 0) + sign * x * y
    return K, element(K, terms)


# quasitriangular structures


@pytest.mark.parametrize("lam", [0, 1, 5])
def test_sweedler_family_quasitriangular(lam):
    rep = check_quasitriangular(H, sweedler_R(lam, H))
    assert rep.ok
    assert {v.name: v.passed for v in rep.verdicts}["triangular"]


def test_trivial_R_on_sweedler_fails_qtr1():
    rep = check_quasitriangular(H, one(H, 2))
    bad = {v.name: v for v in rep.failures()}
    assert "qtr1" in bad and bad["qtr1"].witness["at"] == "x"


def test_group_algebra_R():
    Z = group_algebra_Z2()
    rep = check_quasitriangular(Z, group_algebra_Z2_R(Z))
    assert rep.ok and all(v.passed for v in rep.verdicts)


def test_klein_example_is_quasitriangular_not_triangular():
    K, R = klein_nontriangular()
    rep = check_quasitriangular(K, R)
    verdicts = {v.name: v.passed for v in rep.verdicts}
    assert rep.ok and not verdicts["triangular"]
    assert not QTStructure(K, R).is_triangular


@given(scalars, st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), scalars, max_size=3))
def test_qtr_implies_consequences(lam, noise):
    R = sweedler_R(lam, H) + element(H, noise)
    rep = check_quasitriangular(H, R)
    v = {x.name: x.passed for x in rep.verdicts}
    if v["invertible"] and v["qtr1"] and v["qtr2"] and v["qtr3"]:
        assert v["QYB"]
        assert apply_counit_leg(R, 1) == one(H, 1) == apply_counit_leg(R, 2)
    if not noise:
        assert rep.ok


# classification


@pytest.mark.parametrize("lam", [0, 1, 2, F(-7, 3)])
def test_sweedler_classification(lam):
    space = classify_inf_rmatrices(sweedler_qt(lam, H))
    assert space.dim == 1
    assert space.basis[0] == element(H, {("xg", "x"): 1})
    assert space.labels[space.vectors[0].popitem()[0]] == "xg⊗x"


def test_group_algebra_and_trivial_classification():
    Z = group_algebra_Z2()
    assert classify_inf_rmatrices(QTStructure(Z, group_algebra_Z2_R(Z))).dim == 0
    k = trivial_bialgebra()
    assert classify_inf_rmatrices(QTStructure(k, one(k, 2))).dim == 0
    K, R = klein_nontriangular()
    assert classify_inf_rmatrices(QTStructure(K, R)).dim == 0


@given(scalars, scalars)
def test_classified_chi_is_cocycle_qyb_and_balanced(lam, alpha):
    qt = sweedler_qt(lam, H)
    (b,) = classify_inf_rmatrices(qt).basis
    inf = InfRMatrix(qt, b.scaled(alpha))
    assert check_inf_qyb(inf) and check_balanced(inf)
    assert check_two_cocycle(inf).ok
    assert cobar_apply(inf.chi).is_zero()
    assert precartier_suite(inf).ok


def test_non_solution_chi():
    qt = sweedler_qt(0, H)
    chi = element(H, {("x", "x"): 1})
    assert not check_inf_rmatrix(qt, chi).ok
    with pytest.raises(InvalidStructure):
        InfRMatrix(qt, chi)
    bad = InfRMatrix(qt, chi, check=False)
    fails = [v.name for v in check_inf_rmatrix(qt, chi).failures()]
    assert fails == ["cqtr3"]
    assert not cobar_apply(chi).is_zero()
    assert not check_two_cocycle(bad).ok
    # conjugating x by R₀ on either side gives x⊗g, so both balanced sides equal x⊗g⊗x
    lhs, rhs = balanced_sides(bad)
    assert lhs == rhs == element(H, {("x", "g", "x"): 1})
    assert check_balanced(bad) and check_inf_qyb(bad)


# Cartier


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("alpha", [1, 2, F(-1, 3)])
def test_cartier_no_go(lam, alpha):
    inf = sweedler_inf(lam, alpha, H)
    assert not check_cartier(inf)
    assert check_q_commutation(inf, -1)
    assert not check_q_commutation(inf, 2)


def test_zero_chi_is_cartier():
    inf = InfRMatrix(sweedler_qt(1, H), zero(H, 2))
    assert check_cartier(inf)
    assert check_inf_qyb(inf) and check_balanced(inf)


# cobar cohomology


def test_cobar_on_grouplike():
    g = element(H, {("g",): 1}, 1)
    assert cobar_apply(g) == element(H, {("1", "g"): 1, ("g", "g"): -1, ("g", "1"): 1})


def test_sweedler_second_cohomology():
    d = cohomology_dim(H, 2)
    assert d.as_tuple() == (5, 4, 1)
    assert d.complex_ok
    xgx = element(H, {("xg", "x"): 1})
    assert cobar_apply(xgx).is_zero()
    assert not is_coboundary(xgx)
    assert is_coboundary(cobar_apply(element(H, {("x",): 1}, 1)))


def test_cobar_squares_to_zero():
    for n in (0, 1, 2):
        assert (cobar_differential(H, n + 1) @ cobar_differential(H, n)).is_zero()
    assert cohomology_dim(H, 1).as_tuple() == (0, 0, 0)


# Casimir element


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0, 1, 3])
def test_casimir(lam, alpha):
    inf = sweedler_inf(lam, alpha, H)
    assert casimir_element(inf).is_zero()
    v = {x.name: x.passed for x in check_casimir(inf).verdicts}
    assert v["central"] and v["b1_gamma_eq_chi_plus_flipSS"]
    assert v["b1_gamma_eq_2chi"] == (alpha == 0)


# triangle coactions


def test_coaction_of_trivial_R():
    Z = group_algebra_Z2()
    qt = QTStructure(Z, one(Z, 2))
    for i in range(Z.dim):
        a = element(Z, {(i,): 1}, 1)
        assert triangle_coaction_right(qt, a) == element(Z, {(i, 0): 1})
        assert triangle_coaction_left(qt, a) == element(Z, {(0, i): 1})


@pytest.mark.parametrize("lam", [0, 1])
def test_coaction_axioms(lam):
    inf = sweedler_inf(lam, 1, H)
    rep = check_coactions(inf.qt, inf.chi)
    assert rep.ok
    assert {v.name for v in rep.verdicts} >= {"right_counit", "right_coassoc", "coproduct_right_leg", "coproduct_left_leg"}
    for i in range(4):
        a = element(H, {(i,): 1}, 1)
        assert apply_counit_leg(triangle_coaction_right(inf.qt, a), 2) == a


def test_rewritten_coproduct_identity():
    qt = sweedler_qt(0, H)
    chi = sweedler_chi(2, H)
    rhs_terms = {}
    for (i, j), c in chi.coeffs.items():
        rho = triangle_coaction_right(qt, element(H, {(i,): 1}, 1))
        for (p, q), d in rho.coeffs.items():
            rhs_terms[(p, q, j)] = rhs_terms.get((p, q, j), 0) + c * d
    rhs = element(H, {(i, j, 0): c for (i, j), c in chi.coeffs.items()}) + element(H, rhs_terms, 3)
    assert apply_coproduct_leg(chi, 2) == rhs


# antipode identities


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_antipode_identities(lam, alpha):
    v = {x.name: x.passed for x in check_antipode_identities(sweedler_inf(lam, alpha, H)).verdicts}
    assert v["Striang2"] and v["chiS2"]
    # τ(S⊗S)(χ_α) = -χ_α, so the Cartier-only identity fails for α ≠ 0
    assert v["chiSS2"] == (alpha == 0)


def test_antipode_identities_need_triangular():
    K, R = klein_nontriangular()
    inf = InfRMatrix(QTStructure(K, R), zero(K, 2))
    with pytest.raises(TriangularRequired):
        check_antipode_identities(inf)
