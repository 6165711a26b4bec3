"""Drinfel'd twists and formal ℏ-deformations over truncated polynomial rings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .core.bialgebra import FinBialgebra
from .core.report import AxiomReport
from .core.scalars import QQ, TruncPoly, truncated
from .core.tensors import (
    NotInvertible,
    TensorElement,
    apply_antipode_leg,
    apply_coproduct_leg,
    apply_counit_leg,
    flip_op,
    invert_in_tensor_algebra,
    leg_embed,
    multiply_legs,
    mul_all,
    one,
    tensor_mul,
    truncated_part,
)
from .quasitri import (
    InfRMatrix,
    InvalidStructure,
    QTStructure,
    check_inf_rmatrix,
    check_quasitriangular,
    compare,
    first_failures,
    quasitriangular_sides,
)


def check_twist(H: FinBialgebra, F: TensorElement) -> AxiomReport:
    rep = AxiomReport(f"Drinfel'd twist on {H.name}")
    try:
        invert_in_tensor_algebra(F)
        rep.add("invertible", True)
    except NotInvertible as exc:
        rep.add("invertible", False, {"reason": str(exc)})
    lhs = tensor_mul(leg_embed(F, 3, (1, 2)), apply_coproduct_leg(F, 1))
    rhs = tensor_mul(leg_embed(F, 3, (2, 3)), apply_coproduct_leg(F, 2))
    compare(rep, "2-cocycle", lhs, rhs)
    u = one(H, 1)
    left, right = apply_counit_leg(F, 1), apply_counit_leg(F, 2)
    if left != u:
        compare(rep, "normalized", left, u, at="(ε⊗Id)F")
    else:
        compare(rep, "normalized", right, u, at="(Id⊗ε)F")
    return rep


class DrinfeldTwist:
    def __init__(self, H: FinBialgebra, F: TensorElement, check: bool = True):
        self.H = H
        self.F = F
        if check:
            rep = check_twist(H, F)
            if not rep.ok:
                raise InvalidStructure(rep)
        self.F_inv = invert_in_tensor_algebra(F)
        self._twisted: FinBialgebra | None = None

    @property
    def U(self) -> TensorElement:
        """U = F^i S(F_i)."""
        return multiply_legs(apply_antipode_leg(self.F, 2), 1)


def _reparent(a: TensorElement, H: FinBialgebra) -> TensorElement:
    return TensorElement(H, a.order, a.coeffs)


def twist_bialgebra(tw: DrinfeldTwist) -> FinBialgebra:
    """H_F: same algebra, Δ_F = FΔ(·)F^{-1}, S_F = U S(·) U^{-1}."""
    if tw._twisted is not None:
        return tw._twisted
    H = tw.H
    comul = {}
    for i in range(H.dim):
        d = TensorElement._raw(H, 2, dict(H.comul.get(i, {})))
        comul[i] = dict(mul_all(tw.F, d, tw.F_inv).coeffs)
    anti = None
    if H.has_antipode:
        U = tw.U
        U_inv = invert_in_tensor_algebra(U)
        anti = {}
        for i in range(H.dim):
            e = TensorElement._raw(H, 1, {(i,): H.field.one})
            img = mul_all(U, apply_antipode_leg(e, 1), U_inv)
            anti[i] = {t[0]: c for t, c in img.coeffs.items()}
    HF = FinBialgebra(H.field, H.labels, H.mul, H.unit, comul, H.counit, anti, f"{H.name}_F")
    HF.ensure_valid()
    tw._twisted = HF
    return HF


def twist_qt(tw: DrinfeldTwist, qt: QTStructure) -> QTStructure:
    """R_F = F^op R F^{-1} on H_F."""
    HF = twist_bialgebra(tw)
    R = mul_all(flip_op(tw.F), qt.R, tw.F_inv)
    R_inv = mul_all(tw.F, qt.R_inv, flip_op(tw.F_inv))
    return QTStructure(HF, _reparent(R, HF), _reparent(R_inv, HF))


def twist_inf(tw: DrinfeldTwist, inf: InfRMatrix) -> InfRMatrix:
    """χ_F = F χ F^{-1}, paired with R_F."""
    qtF = twist_qt(tw, inf.qt)
    chi = mul_all(tw.F, inf.chi, tw.F_inv)
    return InfRMatrix(qtF, _reparent(chi, qtF.H))


def inverse_twist(tw: DrinfeldTwist) -> DrinfeldTwist:
    """F^{-1} as a twist of H_F; twisting back recovers H."""
    HF = twist_bialgebra(tw)
    return DrinfeldTwist(HF, _reparent(tw.F_inv, HF))


# ℏ-deformation


@dataclass
class HbarDeformation:
    base: FinBialgebra
    H: FinBialgebra
    R_tilde: TensorElement


def lift_element(a: TensorElement, Hh: FinBialgebra) -> TensorElement:
    return TensorElement(Hh, a.order, a.coeffs)


def hbar_deform(qt: QTStructure, inf: InfRMatrix | None, truncation: int = 3, variable: str = "h") -> HbarDeformation:
    """R̃ = R·exp(ℏχ) = R·Σ_k ℏ^k χ^k / k!, truncated at ℏ^truncation."""
    if truncation < 2:
        raise ValueError("truncation order must be at least 2")
    if qt.H.field.spec != QQ.spec:
        raise ValueError("ℏ-deformation lifts a bialgebra defined over Q")
    T = truncated(variable, truncation)
    Hh = qt.H.lift(T)
    R = lift_element(qt.R, Hh)
    if inf is None:
        return HbarDeformation(qt.H, Hh, R)
    hchi = lift_element(inf.chi, Hh).scaled(T.gen())
    series = one(Hh, 2)
    power = one(Hh, 2)
    for k in range(1, truncation):
        power = tensor_mul(power, hchi)
        if not power:
            break
        series = series + power.scaled(Fraction(1, factorial(k)))
    return HbarDeformation(qt.H, Hh, tensor_mul(R, series))


def _hbar_order(lhs: TensorElement, rhs: TensorElement) -> int:
    d = lhs - rhs
    best = None
    for c in d.coeffs.values():
        if isinstance(c, TruncPoly):
            k = next(i for i, x in enumerate(c.c) if x)
        else:
            k = 0
        best = k if best is None else min(best, k)
    return best if best is not None else -1


def check_hbar_quasitriangular(Hh: FinBialgebra, R_tilde: TensorElement) -> AxiomReport:
    """qtr1-qtr3 and invertibility over the truncated ring; witnesses carry the ℏ-order."""
    rep = AxiomReport(f"quasitriangular structure on {Hh.name} over {Hh.field.describe()}")
    try:
        invert_in_tensor_algebra(R_tilde)
        rep.add("invertible", True)
    except NotInvertible as exc:
        rep.add("invertible", False, {"reason": str(exc)})
    fails = first_failures(quasitriangular_sides(Hh, R_tilde))
    for name in ("qtr1", "qtr2", "qtr3", "QYB"):
        f = fails[name]
        if f is None:
            rep.add(name, True)
            continue
        at, lhs, rhs = f
        v = compare(AxiomReport(""), name, lhs, rhs, at)
        w = dict(v.witness)
        w["hbar_order"] = _hbar_order(lhs, rhs)
        rep.add(name, False, w)
    return rep


@dataclass
class FirstOrder:
    R: TensorElement
    chi: TensorElement
    qt: QTStructure
    report: AxiomReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def extract_first_order(R_tilde: TensorElement, base: FinBialgebra | None = None) -> FirstOrder:
    """R = order-0 part, χ = R^{-1}·(order-1 part); then verify (H, R, χ)."""
    Hh = R_tilde.H
    H = base if base is not None else Hh.lift(QQ)
    R = TensorElement(H, 2, {t: c.c[0] for t, c in truncated_part(R_tilde, 0).coeffs.items()})
    R1 = TensorElement(H, 2, {t: c.c[0] for t, c in truncated_part(R_tilde, 1).coeffs.items()})
    R_inv = invert_in_tensor_algebra(R)
    chi = tensor_mul(R_inv, R1)
    qt = QTStructure(H, R, R_inv, check=False)
    rep = AxiomReport(f"first-order data of {Hh.name}")
    rep.extend(check_quasitriangular(H, R, R_inv))
    rep.extend(check_inf_rmatrix(qt, chi))
    return FirstOrder(R, chi, qt, rep)
