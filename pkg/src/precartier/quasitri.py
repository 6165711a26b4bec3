"""Quasitriangular structures and infinitesimal R-matrices on finite bialgebras."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core.bialgebra import FinBialgebra, MissingAntipode
from .core.linalg import LinearMap, SolutionSpace, nullspace_vectors, solve
from .core.report import AxiomReport
from .core.tensors import (
    NotInvertible,
    TensorElement,
    apply_antipode_leg,
    apply_coproduct_leg,
    apply_counit_leg,
    element,
    flip_op,
    invert_in_tensor_algebra,
    leg_embed,
    multiply_legs,
    mul_all,
    one,
    tensor_mul,
    zero,
)

WITNESS_TERMS = 64


class InvalidStructure(ValueError):
    def __init__(self, report: AxiomReport):
        bad = ", ".join(v.name for v in report.failures())
        super().__init__(f"{report.title}: {bad} failed")
        self.report = report


class TriangularRequired(ValueError):
    pass


def compare(rep: AxiomReport, name: str, lhs: TensorElement, rhs: TensorElement, at: str | None = None, flag=False):
    """Record lhs == rhs, with the first differing basis tuple as witness."""
    if lhs == rhs:
        return rep.add(name, True, flag=flag)
    return rep.add(name, False, witness(lhs, rhs, at), flag=flag)


def witness(lhs: TensorElement, rhs: TensorElement, at: str | None = None) -> dict:
    H = lhs.H
    t = min((lhs - rhs).coeffs)
    w = {}
    if at is not None:
        w["at"] = at
    w["tuple"] = H.label(t) if t else "1"
    w["lhs_coefficient"] = str(lhs[t])
    w["rhs_coefficient"] = str(rhs[t])
    if len(lhs.coeffs) <= WITNESS_TERMS and len(rhs.coeffs) <= WITNESS_TERMS:
        w["lhs"] = str(lhs)
        w["rhs"] = str(rhs)
    return w


def coproduct(H: FinBialgebra, i: int) -> TensorElement:
    return TensorElement._raw(H, 2, dict(H.comul.get(i, {})))


class QTStructure:
    """(H, R) with R invertible and quasitriangular; R_inv is cached."""

    def __init__(self, H: FinBialgebra, R: TensorElement, R_inv: TensorElement | None = None, check: bool = True):
        if R.order != 2 or (R.H is not H and R.H != H):
            raise ValueError("R must be an order-2 element of H⊗H")
        self.H = H
        self.R = R
        if R_inv is None:
            R_inv = invert_in_tensor_algebra(R)
        else:
            u = one(H, 2)
            if tensor_mul(R, R_inv) != u or tensor_mul(R_inv, R) != u:
                raise NotInvertible("supplied inverse is not a two-sided inverse of R")
        self.R_inv = R_inv
        self._legs: dict = {}
        self._rho: dict = {}
        if check:
            H.ensure_valid()
            rep = check_quasitriangular(H, R, R_inv)
            if not rep.ok:
                raise InvalidStructure(rep)

    def leg(self, which: str, legs: tuple[int, int], k: int = 3) -> TensorElement:
        """R_{pq} or R^{-1}_{pq} inside H^{⊗k}."""
        key = (which, legs, k)
        if key not in self._legs:
            src = self.R if which == "R" else self.R_inv
            self._legs[key] = leg_embed(src, k, legs)
        return self._legs[key]

    @property
    def is_triangular(self) -> bool:
        return self.R_inv == flip_op(self.R)


def quasitriangular_sides(H: FinBialgebra, R: TensorElement):
    """(name, at, lhs, rhs) for qtr1 (per basis element), qtr2, qtr3 and QYB."""
    out = []
    for i in range(H.dim):
        d = coproduct(H, i)
        out.append(("qtr1", H.labels[i], tensor_mul(R, d), tensor_mul(flip_op(d), R)))
    R12, R13, R23 = leg_embed(R, 3, (1, 2)), leg_embed(R, 3, (1, 3)), leg_embed(R, 3, (2, 3))
    out.append(("qtr2", None, apply_coproduct_leg(R, 2), tensor_mul(R13, R12)))
    out.append(("qtr3", None, apply_coproduct_leg(R, 1), tensor_mul(R13, R23)))
    out.append(("QYB", None, mul_all(R12, R13, R23), mul_all(R23, R13, R12)))
    return out


def first_failures(sides) -> dict:
    """Keep the first failing (at, lhs, rhs) per axiom name; passing names map to None."""
    out: dict = {}
    for name, at, lhs, rhs in sides:
        if out.get(name) is None:
            out[name] = (at, lhs, rhs) if lhs != rhs else None
    return out


def check_quasitriangular(H: FinBialgebra, R: TensorElement, R_inv: TensorElement | None = None) -> AxiomReport:
    rep = AxiomReport(f"quasitriangular structure on {H.name}")
    if R_inv is None:
        try:
            R_inv = invert_in_tensor_algebra(R)
            rep.add("invertible", True)
        except NotInvertible as exc:
            rep.add("invertible", False, {"reason": str(exc)})
    else:
        rep.add("invertible", True)
    fails = first_failures(quasitriangular_sides(H, R))
    for name in ("qtr1", "qtr2", "qtr3"):
        _record(rep, name, fails[name])
    if R_inv is not None:
        compare(rep, "triangular", R_inv, flip_op(R), flag=True)
    else:
        rep.add("triangular", False, {"reason": "R is not invertible"}, flag=True)
    _record(rep, "QYB", fails["QYB"])
    return rep


def _record(rep: AxiomReport, name: str, failure) -> None:
    if failure is None:
        rep.add(name, True)
    else:
        at, lhs, rhs = failure
        compare(rep, name, lhs, rhs, at)


def check_quasitriangular_consequences(qt: QTStructure) -> AxiomReport:
    rep = AxiomReport("consequences of quasitriangularity")
    u = one(qt.H, 1)
    for name, src in (("R", qt.R), ("R_inv", qt.R_inv)):
        compare(rep, f"eps_left_{name}", apply_counit_leg(src, 1), u)
        compare(rep, f"eps_right_{name}", apply_counit_leg(src, 2), u)
    if qt.H.has_antipode:
        compare(rep, "S_left_R", apply_antipode_leg(qt.R, 1), qt.R_inv)
    return rep


# infinitesimal R-matrices


def _cqtr_residuals(qt: QTStructure, chi: TensorElement):
    """Residual tensors of cqtr1 (one per basis element), cqtr2, cqtr3."""
    H = qt.H
    out = []
    for i in range(H.dim):
        d = coproduct(H, i)
        out.append(("cqtr1", H.labels[i], tensor_mul(chi, d), tensor_mul(d, chi)))
    c12, c13, c23 = leg_embed(chi, 3, (1, 2)), leg_embed(chi, 3, (1, 3)), leg_embed(chi, 3, (2, 3))
    out.append(
        ("cqtr2", None, apply_coproduct_leg(chi, 2), c12 + mul_all(qt.leg("Rinv", (1, 2)), c13, qt.leg("R", (1, 2))))
    )
    out.append(
        ("cqtr3", None, apply_coproduct_leg(chi, 1), c23 + mul_all(qt.leg("Rinv", (2, 3)), c13, qt.leg("R", (2, 3))))
    )
    return out


class InfRMatrix:
    """(H, R, χ) with χ satisfying cqtr1-cqtr3."""

    def __init__(self, qt: QTStructure, chi: TensorElement, check: bool = True):
        if chi.order != 2 or (chi.H is not qt.H and chi.H != qt.H):
            raise ValueError("χ must be an order-2 element of H⊗H")
        self.qt = qt
        self.chi = chi
        if check:
            rep = check_inf_rmatrix(qt, chi)
            if not rep.ok:
                raise InvalidStructure(rep)

    @property
    def H(self) -> FinBialgebra:
        return self.qt.H

    @property
    def R(self) -> TensorElement:
        return self.qt.R


def check_inf_rmatrix(qt: QTStructure, chi: TensorElement) -> AxiomReport:
    rep = AxiomReport(f"infinitesimal R-matrix on {qt.H.name}")
    fails = first_failures(_cqtr_residuals(qt, chi))
    for name in ("cqtr1", "cqtr2", "cqtr3"):
        _record(rep, name, fails[name])
    z = zero(qt.H, 1)
    compare(rep, "eps_left", apply_counit_leg(chi, 1), z)
    compare(rep, "eps_right", apply_counit_leg(chi, 2), z)
    return rep


def _tuple_index(t, n):
    r = 0
    for i in t:
        r = r * n + i
    return r


def classify_inf_rmatrices(qt: QTStructure) -> SolutionSpace:
    """All χ with cqtr1-cqtr3, as a reduced-echelon basis over the n² unknowns."""
    H = qt.H
    n = H.dim
    cols = []
    for i, j in product(range(n), repeat=2):
        E = TensorElement._raw(H, 2, {(i, j): H.field.one})
        col: dict = {}
        offset = 0
        for _, _, lhs, rhs in _cqtr_residuals(qt, E):
            k = lhs.order
            for t, c in (lhs - rhs).coeffs.items():
                col[offset + _tuple_index(t, n)] = c
            offset += n**k
        cols.append(col)
    rows: dict[int, dict] = {}
    for j, col in enumerate(cols):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = v
    vecs = nullspace_vectors(rows.values(), n * n)
    basis = [TensorElement(H, 2, {divmod(k, n): c for k, c in v.items()}) for v in vecs]
    labels = [H.label(t) for t in product(range(n), repeat=2)]
    return SolutionSpace(n * n, vecs, basis, labels)


def check_cartier(inf: InfRMatrix) -> bool:
    return cartier_report(inf).ok


def check_q_commutation(inf: InfRMatrix, q) -> bool:
    return cartier_report(inf, q).ok


def cartier_report(inf: InfRMatrix, q=None) -> AxiomReport:
    """Rχ = q·χ^op R (q = 1 is the Cartier condition)."""
    R, chi = inf.R, inf.chi
    lhs = tensor_mul(R, chi)
    rhs = tensor_mul(flip_op(chi), R)
    name = "cartier"
    if q is not None:
        rhs = rhs.scaled(q)
        name = "q_commutation"
    rep = AxiomReport(f"{name} on {inf.H.name}")
    compare(rep, name, lhs, rhs)
    return rep


# cobar complex


def cobar_apply(a: TensorElement) -> TensorElement:
    """b^n(a) = 1⊗a + Σ_i (-1)^i Δ_i(a) + (-1)^{n+1} a⊗1; b^0 = 0."""
    H, n = a.H, a.order
    if n == 0:
        return zero(H, 1)
    u = one(H, 1)
    out = _kron(u, a) + _kron(a, u).scaled((-1) ** (n + 1))
    for i in range(1, n + 1):
        out = out + apply_coproduct_leg(a, i).scaled((-1) ** i)
    return out


def _kron(a: TensorElement, b: TensorElement) -> TensorElement:
    out: dict = {}
    for I, x in a.coeffs.items():
        for J, y in b.coeffs.items():
            out[I + J] = out.get(I + J, 0) + x * y
    return TensorElement(a.H, a.order + b.order, out)


def cobar_differential(H: FinBialgebra, n: int) -> LinearMap:
    """Matrix of b^n : H^{⊗n} -> H^{⊗(n+1)} in lexicographic tuple bases."""
    if not 0 <= n <= 3:
        raise ValueError("cobar differential supported for n = 0..3")
    dom = H.dim**n
    cod = H.dim ** (n + 1)
    cols = []
    for t in product(range(H.dim), repeat=n):
        a = TensorElement._raw(H, n, {t: H.field.one})
        cols.append({_tuple_index(s, H.dim): c for s, c in cobar_apply(a).coeffs.items()})
    return LinearMap(dom, cod, cols)


@dataclass(frozen=True)
class CohomologyDims:
    degree: int
    cocycles: int
    coboundaries: int
    cohomology: int
    complex_ok: bool

    def as_tuple(self):
        return (self.cocycles, self.coboundaries, self.cohomology)


def cohomology_dim(H: FinBialgebra, n: int) -> CohomologyDims:
    """(dim Z^n, dim B^n, dim H^n) for the cobar complex, n = 1, 2."""
    if n not in (1, 2):
        raise ValueError("cohomology supported for n = 1, 2")
    bn = cobar_differential(H, n)
    bprev = cobar_differential(H, n - 1)
    bnext = cobar_differential(H, n + 1)
    ok = (bn @ bprev).is_zero() and (bnext @ bn).is_zero()
    z = H.dim**n - bn.rank()
    b = bprev.rank()
    return CohomologyDims(n, z, b, z - b, ok)


def is_coboundary(a: TensorElement) -> bool:
    """Whether a = b^{n-1}(y) for some y."""
    H, n = a.H, a.order
    d = cobar_differential(H, n - 1)
    rhs = [0] * d.codomain_dim
    for t, c in a.coeffs.items():
        rhs[_tuple_index(t, H.dim)] = c
    x, _ = solve(d.rows(), rhs, d.domain_dim)
    return x is not None


def check_two_cocycle(inf: InfRMatrix) -> AxiomReport:
    """χ₁₂ + (Δ⊗Id)χ = χ₂₃ + (Id⊗Δ)χ, i.e. b²(χ) = 0."""
    chi = inf.chi
    rep = AxiomReport("2-cocycle")
    lhs = leg_embed(chi, 3, (1, 2)) + apply_coproduct_leg(chi, 1)
    rhs = leg_embed(chi, 3, (2, 3)) + apply_coproduct_leg(chi, 2)
    compare(rep, "two_cocycle", lhs, rhs)
    return rep


def inf_qyb_sides(inf: InfRMatrix):
    qt, chi = inf.qt, inf.chi
    R12, R13, R23 = qt.leg("R", (1, 2)), qt.leg("R", (1, 3)), qt.leg("R", (2, 3))
    c12, c13, c23 = (leg_embed(chi, 3, p) for p in ((1, 2), (1, 3), (2, 3)))
    lhs = mul_all(R12, c12, R13, R23) + mul_all(R12, R13, c13, R23) + mul_all(R12, R13, R23, c23)
    rhs = mul_all(R23, c23, R13, R12) + mul_all(R23, R13, c13, R12) + mul_all(R23, R13, R12, c12)
    return lhs, rhs


def check_inf_qyb(inf: InfRMatrix) -> bool:
    lhs, rhs = inf_qyb_sides(inf)
    return lhs == rhs


def balanced_sides(inf: InfRMatrix):
    qt = inf.qt
    c13 = leg_embed(inf.chi, 3, (1, 3))
    lhs = mul_all(qt.leg("Rinv", (1, 2)), c13, qt.leg("R", (1, 2)))
    rhs = mul_all(qt.leg("Rinv", (2, 3)), c13, qt.leg("R", (2, 3)))
    return lhs, rhs


def check_balanced(inf: InfRMatrix) -> bool:
    lhs, rhs = balanced_sides(inf)
    return lhs == rhs


# Casimir element


def casimir_element(inf: InfRMatrix) -> TensorElement:
    """γ = m(S⊗Id)(χ)."""
    if not inf.H.has_antipode:
        raise MissingAntipode(f"{inf.H.name} has no antipode")
    return multiply_legs(apply_antipode_leg(inf.chi, 1), 1)


def check_casimir(inf: InfRMatrix) -> AxiomReport:
    H = inf.H
    gamma = casimir_element(inf)
    rep = AxiomReport(f"Casimir element on {H.name}")
    for i in range(H.dim):
        e = element(H, {(i,): 1}, 1)
        lhs, rhs = tensor_mul(gamma, e), tensor_mul(e, gamma)
        if lhs != rhs:
            compare(rep, "central", lhs, rhs, at=H.labels[i])
            break
    else:
        rep.add("central", True)
    b1 = cobar_apply(gamma)
    chi = inf.chi
    compare(rep, "b1_gamma_eq_chi_plus_flipSS", b1, chi + flip_op(apply_antipode_leg(apply_antipode_leg(chi, 1), 2)))
    compare(rep, "b1_gamma_eq_2chi", b1, chi.scaled(2), flag=True)
    return rep


# triangle coactions


def triangle_coaction_right(qt: QTStructure, a: TensorElement) -> TensorElement:
    """ρ^r(a) = R^{-1}(a⊗1)R."""
    return mul_all(qt.R_inv, _kron(a, one(qt.H, 1)), qt.R)


def triangle_coaction_left(qt: QTStructure, a: TensorElement) -> TensorElement:
    """ρ^l(a) = R^{-1}(1⊗a)R."""
    return mul_all(qt.R_inv, _kron(one(qt.H, 1), a), qt.R)


def _rho_basis(qt: QTStructure, side: str, i: int) -> TensorElement:
    key = (side, i)
    if key not in qt._rho:
        e = TensorElement._raw(qt.H, 1, {(i,): qt.H.field.one})
        fn = triangle_coaction_right if side == "r" else triangle_coaction_left
        qt._rho[key] = fn(qt, e)
    return qt._rho[key]


def apply_coaction_leg(qt: QTStructure, a: TensorElement, leg: int, side: str) -> TensorElement:
    """Replace leg `leg` of a by ρ^r or ρ^l of that factor (order goes up by one)."""
    p = leg - 1
    out: dict = {}
    for I, x in a.coeffs.items():
        for t, c in _rho_basis(qt, side, I[p]).coeffs.items():
            key = I[:p] + t + I[p + 1:]
            w = out.get(key, 0) + x * c
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return TensorElement._raw(qt.H, a.order + 1, out)


def check_coactions(qt: QTStructure, chi: TensorElement | None = None) -> AxiomReport:
    """Coaction axioms of ρ^r, ρ^l and, given χ, the rewritten cqtr2/cqtr3."""
    H = qt.H
    rep = AxiomReport(f"triangle coactions on {H.name}")
    checks = {"right_counit": [], "right_coassoc": [], "left_counit": [], "left_coassoc": []}
    for i in range(H.dim):
        e = TensorElement._raw(H, 1, {(i,): H.field.one})
        r, l = _rho_basis(qt, "r", i), _rho_basis(qt, "l", i)
        checks["right_counit"].append((H.labels[i], apply_counit_leg(r, 2), e))
        checks["right_coassoc"].append((H.labels[i], apply_coproduct_leg(r, 2), apply_coaction_leg(qt, r, 1, "r")))
        checks["left_counit"].append((H.labels[i], apply_counit_leg(l, 1), e))
        checks["left_coassoc"].append((H.labels[i], apply_coproduct_leg(l, 1), apply_coaction_leg(qt, l, 2, "l")))
    for name, cases in checks.items():
        for at, lhs, rhs in cases:
            if lhs != rhs:
                compare(rep, name, lhs, rhs, at)
                break
        else:
            rep.add(name, True)
    if chi is not None:
        u = one(H, 1)
        compare(rep, "coproduct_right_leg", apply_coproduct_leg(chi, 2), _kron(chi, u) + apply_coaction_leg(qt, chi, 1, "r"))
        compare(rep, "coproduct_left_leg", apply_coproduct_leg(chi, 1), _kron(u, chi) + apply_coaction_leg(qt, chi, 2, "l"))
    return rep


def _SS_flip(a: TensorElement) -> TensorElement:
    return flip_op(apply_antipode_leg(apply_antipode_leg(a, 1), 2))


def check_antipode_identities(inf: InfRMatrix) -> AxiomReport:
    """Antipode identities of a pre-Cartier triangular structure."""
    qt, H, chi = inf.qt, inf.H, inf.chi
    if not H.has_antipode:
        raise MissingAntipode(f"{H.name} has no antipode")
    if not qt.is_triangular:
        raise TriangularRequired("antipode identities need R^{-1} = R^op")
    rep = AxiomReport(f"antipode identities on {H.name}")
    for i in range(H.dim):
        e = TensorElement._raw(H, 1, {(i,): H.field.one})
        lhs = triangle_coaction_left(qt, apply_antipode_leg(e, 1))
        rhs = _SS_flip(triangle_coaction_right(qt, e))
        if lhs != rhs:
            compare(rep, "Striang2", lhs, rhs, at=H.labels[i])
            break
    else:
        rep.add("Striang2", True)
    lhs = multiply_legs(apply_coaction_leg(qt, apply_antipode_leg(chi, 1), 2, "l"), 1)
    compare(rep, "chiS2", lhs, -chi)
    compare(rep, "chiSS2", _SS_flip(chi), chi, flag=True)
    return rep


def precartier_suite(inf: InfRMatrix) -> AxiomReport:
    """Every identity a pre-Cartier quasitriangular triple must satisfy."""
    qt = inf.qt
    rep = AxiomReport(f"pre-Cartier suite on {inf.H.name}")
    rep.extend(check_quasitriangular(qt.H, qt.R, qt.R_inv))
    rep.extend(check_quasitriangular_consequences(qt))
    rep.extend(check_inf_rmatrix(qt, inf.chi))
    rep.extend(check_two_cocycle(inf))
    lhs, rhs = inf_qyb_sides(inf)
    compare(rep, "inf_QYB", lhs, rhs)
    lhs, rhs = balanced_sides(inf)
    compare(rep, "balanced", lhs, rhs)
    if inf.H.has_antipode:
        rep.extend(check_casimir(inf))
    return rep


def solution_elements(space: SolutionSpace) -> list[TensorElement]:
    return list(space.basis)


def is_symmetric(a: TensorElement) -> bool:
    return flip_op(a) == a

