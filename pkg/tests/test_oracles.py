"""The package against the dense references in oracles.py."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import (
    Dense,
    classify_chi_dense,
    cohomology_dims_dense,
    cybe_in_rep,
    invariance_in_rep,
    sweedler_chi_dense,
    sweedler_dense,
    sweedler_R_dense,
    tensor_terms,
    SW_LABELS,
    zeros,
)
from precartier.constructions import sl2_r, sweedler, sweedler_inf, sweedler_R, tensor_product_bialgebra
from precartier.coquasitri import finite_dual
from precartier.quasitri import classify_inf_rmatrices, cohomology_dim
from precartier.twist_deform import DrinfeldTwist, twist_inf

F = Fraction
H = sweedler()
DH = Dense(*sweedler_dense())


def as_terms(a):
    return {"⊗".join(a.H.labels[i] for i in k): c for k, c in a.coeffs.items()}


def test_dense_structure_matches_package():
    M, u, D, eps, S = sweedler_dense()
    for i, j in product(range(4), repeat=2):
        assert {k: M[i, j, k] for k in range(4) if M[i, j, k]} == H.mul.get((i, j), {})
    for i in range(4):
        assert {k: S[i, k] for k in range(4) if S[i, k]} == H.antipode.get(i, {})
        assert {(a, b): D[i, a, b] for a, b in product(range(4), repeat=2) if D[i, a, b]} == H.comul[i]
    assert tuple(eps) == tuple(H.counit)


def test_dense_antipode_axiom():
    M, u, D, eps, S = sweedler_dense()
    for i in range(4):
        left = np.einsum("ab,ak,kbc->c", D[i], S, M)
        right = np.einsum("ab,bk,akc->c", D[i], S, M)
        assert (left == eps[i] * u).all() and (right == eps[i] * u).all()


@pytest.mark.parametrize("lam", [0, 1, 2, F(-7, 3)])
def test_classification_two_routes(lam):
    dense = classify_chi_dense(DH, sweedler_R_dense(DH, lam))
    qt = sweedler_inf(lam, 0, H).qt
    kernel = [as_terms(b) for b in classify_inf_rmatrices(qt).basis]
    assert dense == kernel == [{"xg⊗x": 1}]


@pytest.mark.parametrize("k", [1, 2])
def test_cohomology_two_routes(k):
    M, u, D, eps, S = sweedler_dense()
    assert cohomology_dims_dense(D, u, k) == cohomology_dim(H, k).as_tuple()


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("alpha", [1, F(3, 7)])
def test_twist_by_R_two_routes(lam, alpha):
    R = sweedler_R_dense(DH, lam)
    chi = sweedler_chi_dense(DH, alpha)
    dense = DH.mul(DH.mul(R, chi), DH.inverse2(R))
    kernel = twist_inf(DrinfeldTwist(H, sweedler_R(lam, H)), sweedler_inf(lam, alpha, H)).chi
    assert tensor_terms(dense, SW_LABELS) == as_terms(kernel) == {"x⊗xg": -alpha}


def test_sl2_r_in_representation():
    g, r = sl2_r()
    terms = {(g.labels[a], g.labels[b]): sympy.Rational(c.numerator, c.denominator) for (a, b), c in r.items()}
    assert cybe_in_rep(terms) == sympy.zeros(8, 8)
    gens, t = invariance_in_rep(terms)
    for x in gens:
        assert x * t - t * x == sympy.zeros(4, 4)


def test_skew_part_violates_cybe_in_representation():
    terms = {("e", "f"): 1, ("f", "e"): -1}
    assert cybe_in_rep(terms) != sympy.zeros(8, 8)


def test_dual_is_transpose():
    D = finite_dual(H)
    for i, j in product(range(4), repeat=2):
        for k, c in D.mul.get((i, j), {}).items():
            assert H.comul[k].get((i, j)) == c
    for k in range(4):
        for (i, j), c in H.comul[k].items():
            assert D.mul[(i, j)][k] == c
    for i, j in product(range(4), repeat=2):
        for k, c in H.mul.get((i, j), {}).items():
            assert D.comul[k][(i, j)] == c
    assert [D.unit.get(i, 0) for i in range(4)] == list(H.counit)


def test_tensor_product_is_kronecker():
    T = tensor_product_bialgebra(H, H)
    M = sweedler_dense()[0]
    MM = zeros(16, 16, 16)
    for i, j, k, l in product(range(4), repeat=4):
        MM[4 * i + j, 4 * k + l] = np.multiply.outer(M[i, k], M[j, l]).ravel()
    for a, b in product(range(16), repeat=2):
        assert {c: MM[a, b, c] for c in range(16) if MM[a, b, c]} == T.mul.get((a, b), {})


@given(st.fractions(-4, 4, max_denominator=5), st.fractions(-4, 4, max_denominator=5))
def test_R_chi_product_two_routes(lam, alpha):
    inf = sweedler_inf(lam, alpha, H)
    dense = DH.mul(sweedler_R_dense(DH, lam), sweedler_chi_dense(DH, alpha))
    assert tensor_terms(dense, SW_LABELS) == as_terms(inf.R * inf.chi)
