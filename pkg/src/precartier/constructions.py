"""Tensor products, pushforwards, Lie-level checks and the built-in examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .core.bialgebra import FinBialgebra, trivial_bialgebra
from .core.linalg import LinearMap, rank
from .core.report import AxiomReport
from .core.scalars import QQ, FieldSpec, make_field
from .core.tensors import TensorElement, element, map_legs
from .quasitri import InfRMatrix, QTStructure

DEFAULT_DIM_CAP = 64


class CapExceeded(RuntimeError):
    pass


class NotBialgebraMap(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotSurjective(ValueError):
    pass


class UnknownBuiltin(KeyError):
    pass


# Sweedler's four-dimensional Hopf algebra and friends

SWEEDLER_LABELS = ["1", "g", "x", "xg"]


def sweedler(field=QQ) -> FinBialgebra:
    """H₄: g² = 1, x² = 0, gx = -xg; Δg = g⊗g, Δx = x⊗1 + g⊗x."""
    one, neg = field.one, -field.one
    mul = {
        (0, 0): {0: one}, (0, 1): {1: one}, (0, 2): {2: one}, (0, 3): {3: one},
        (1, 0): {1: one}, (1, 1): {0: one}, (1, 2): {3: neg}, (1, 3): {2: neg},
        (2, 0): {2: one}, (2, 1): {3: one},
        (3, 0): {3: one}, (3, 1): {2: one},
    }  # fmt: skip
    comul = {
        0: {(0, 0): one},
        1: {(1, 1): one},
        2: {(2, 0): one, (1, 2): one},
        3: {(3, 1): one, (0, 3): one},
    }
    antipode = {0: {0: one}, 1: {1: one}, 2: {3: one}, 3: {2: neg}}
    return FinBialgebra(field, SWEEDLER_LABELS, mul, {0: one}, comul, [one, one, 0, 0], antipode, "sweedler")


def _scalar(H, v):
    return H.field.coerce(v)


def sweedler_R(lam=0, H: FinBialgebra | None = None) -> TensorElement:
    """R_λ = ½(1⊗1+g⊗1+1⊗g−g⊗g) + (λ/2)(x⊗x − xg⊗x + x⊗xg + xg⊗xg)."""
    H = H or sweedler()
    h = Fraction(1, 2)
    lam = _scalar(H, lam)
    return element(
        H,
        {
            ("1", "1"): h, ("g", "1"): h, ("1", "g"): h, ("g", "g"): -h,
            ("x", "x"): lam * h, ("xg", "x"): -lam * h, ("x", "xg"): lam * h, ("xg", "xg"): lam * h,
        },
    )  # fmt: skip


def sweedler_chi(alpha=1, H: FinBialgebra | None = None) -> TensorElement:
    """χ_α = α xg⊗x."""
    H = H or sweedler()
    return element(H, {("xg", "x"): _scalar(H, alpha)})


def sweedler_twist(t=1, H: FinBialgebra | None = None) -> TensorElement:
    """F_t = 1⊗1 + (t/2) xg⊗x."""
    H = H or sweedler()
    return element(H, {("1", "1"): 1, ("xg", "x"): _scalar(H, t) * Fraction(1, 2)})


def sweedler_qt(lam=0, H: FinBialgebra | None = None) -> QTStructure:
    from .core.tensors import flip_op

    H = H or sweedler()
    R = sweedler_R(lam, H)
    return QTStructure(H, R, flip_op(R))


def sweedler_inf(lam=0, alpha=1, H: FinBialgebra | None = None) -> InfRMatrix:
    qt = sweedler_qt(lam, H)
    return InfRMatrix(qt, sweedler_chi(alpha, qt.H))


def group_algebra_Z2(field=QQ) -> FinBialgebra:
    one = field.one
    mul = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {0: one}}
    comul = {0: {(0, 0): one}, 1: {(1, 1): one}}
    return FinBialgebra(field, ["1", "g"], mul, {0: one}, comul, [one, one], {0: {0: one}, 1: {1: one}}, "group_algebra_Z2")


def group_algebra_Z2_R(H: FinBialgebra | None = None) -> TensorElement:
    """½(1⊗1 + 1⊗g + g⊗1 − g⊗g)."""
    H = H or group_algebra_Z2()
    h = Fraction(1, 2)
    return element(H, {("1", "1"): h, ("1", "g"): h, ("g", "1"): h, ("g", "g"): -h})


def sweedler_to_Z2(H: FinBialgebra | None = None, L: FinBialgebra | None = None) -> LinearMap:
    """π: 1 ↦ 1, g ↦ g, x ↦ 0, xg ↦ 0."""
    H = H or sweedler()
    one = H.field.one
    return LinearMap(4, 2, [{0: one}, {1: one}, {}, {}])


# tensor products


def tensor_product_bialgebra(A: FinBialgebra, B: FinBialgebra, cap: int = DEFAULT_DIM_CAP) -> FinBialgebra:
    """A⊗B with basis index i·dim B + j and labels "a⊗b"."""
    if A.field.spec != B.field.spec:
        raise ValueError("factors must share a scalar field")
    n, m = A.dim, B.dim
    if n * m > cap:
        raise CapExceeded(f"tensor product dimension {n * m} exceeds cap {cap}")

    def ix(i, j):
        return i * m + j

    mul = {}
    for (i, k), u in A.mul.items():
        for (j, l), v in B.mul.items():
            d = {}
            for a, x in u.items():
                for b, y in v.items():
                    d[ix(a, b)] = x * y
            mul[(ix(i, j), ix(k, l))] = d
    unit = {ix(a, b): x * y for a, x in A.unit.items() for b, y in B.unit.items()}
    comul = {}
    for i, u in A.comul.items():
        for j, v in B.comul.items():
            d: dict = {}
            for (a1, a2), x in u.items():
                for (b1, b2), y in v.items():
                    key = (ix(a1, b1), ix(a2, b2))
                    d[key] = d.get(key, 0) + x * y
            comul[ix(i, j)] = d
    counit = [A.counit[i] * B.counit[j] for i in range(n) for j in range(m)]
    anti = None
    if A.antipode is not None and B.antipode is not None:
        anti = {}
        for i, u in A.antipode.items():
            for j, v in B.antipode.items():
                anti[ix(i, j)] = {ix(a, b): x * y for a, x in u.items() for b, y in v.items()}
    labels = [f"{a}⊗{b}" for a in A.labels for b in B.labels]
    return FinBialgebra(A.field, labels, mul, unit, comul, counit, anti, f"{A.name}⊗{B.name}")


def _shuffle(P: FinBialgebra, a: TensorElement, b: TensorElement) -> TensorElement:
    """(Id⊗τ⊗Id)(a⊗b): Σ (a^i⊗b^j)⊗(a_i⊗b_j)."""
    m = b.H.dim
    out: dict = {}
    for (i, k), x in a.coeffs.items():
        for (j, l), y in b.coeffs.items():
            key = (i * m + j, k * m + l)
            out[key] = out.get(key, 0) + x * y
    return TensorElement(P, 2, out)


def _unit_tensor(H: FinBialgebra) -> TensorElement:
    from .core.tensors import one

    return one(H, 2)


@dataclass
class ProductStructure:
    H: FinBialgebra
    qt: QTStructure
    chi_left: TensorElement | None = None
    chi_right: TensorElement | None = None
    infs: dict = field(default_factory=dict)


def tensor_product_precartier(A, B, cap: int = DEFAULT_DIM_CAP) -> ProductStructure:
    """Pre-Cartier structure on H⊗H' from (H,R,χ) and (H',R',χ') (either χ optional).

    χ̃ = χ^i⊗1⊗χ_i⊗1 comes from the left factor, χ̂ = 1⊗χ'^m⊗1⊗χ'_m from the
    right; both are returned separately and each is re-verified.
    """
    qa = A.qt if isinstance(A, InfRMatrix) else A
    qb = B.qt if isinstance(B, InfRMatrix) else B
    P = tensor_product_bialgebra(qa.H, qb.H, cap)
    R = _shuffle(P, qa.R, qb.R)
    R_inv = _shuffle(P, qa.R_inv, qb.R_inv)
    qt = QTStructure(P, R, R_inv)
    out = ProductStructure(P, qt)
    if isinstance(A, InfRMatrix):
        out.chi_left = _shuffle(P, A.chi, _unit_tensor(qb.H))
        out.infs["left"] = InfRMatrix(qt, out.chi_left)
    if isinstance(B, InfRMatrix):
        out.chi_right = _shuffle(P, _unit_tensor(qa.H), B.chi)
        out.infs["right"] = InfRMatrix(qt, out.chi_right)
    return out


# pushforward along bialgebra maps


def check_bialgebra_map(f: LinearMap, H: FinBialgebra, K: FinBialgebra) -> None:
    if f.domain_dim != H.dim or f.codomain_dim != K.dim:
        raise NotBialgebraMap("map dimensions do not match the bialgebras")

    def img(vec):
        return f.apply(vec)

    for i, j in product(range(H.dim), repeat=2):
        lhs = img(H.product(H.basis_vec(i), H.basis_vec(j)))
        rhs = K.product(img(H.basis_vec(i)), img(H.basis_vec(j)))
        if lhs != rhs:
            raise NotBialgebraMap(
                "not multiplicative",
                {"at": H.label((i, j)), "lhs": K.format(lhs), "rhs": K.format(rhs)},
            )
    if img(H.one()) != K.one():
        raise NotBialgebraMap("unit not preserved", {"at": "1"})
    for i in range(H.dim):
        d = H.coproduct(H.basis_vec(i))
        lhs: dict = {}
        for (a, b), x in d.items():
            for p, y in f.cols[a].items():
                for q, z in f.cols[b].items():
                    w = lhs.get((p, q), 0) + x * y * z
                    if w:
                        lhs[(p, q)] = w
                    else:
                        lhs.pop((p, q), None)
        rhs = K.coproduct(img(H.basis_vec(i)))
        if lhs != rhs:
            raise NotBialgebraMap(
                "not comultiplicative",
                {"at": H.labels[i], "lhs": K.format(lhs), "rhs": K.format(rhs)},
            )
        if K.eps(img(H.basis_vec(i))) != H.counit[i]:
            raise NotBialgebraMap("counit not preserved", {"at": H.labels[i]})


@dataclass
class Pushforward:
    H: FinBialgebra
    qt: QTStructure
    inf: InfRMatrix | None
    chi: TensorElement | None


def pushforward(f: LinearMap, src, codomain: FinBialgebra) -> Pushforward:
    """(H', (f⊗f)R, (f⊗f)χ) along a surjective bialgebra map f: H -> H'."""
    qt = src.qt if isinstance(src, InfRMatrix) else src
    check_bialgebra_map(f, qt.H, codomain)
    if rank(f.cols) != codomain.dim:
        raise NotSurjective(f"image has dimension {rank(f.cols)} < {codomain.dim}")
    R = map_legs(qt.R, f, codomain)
    R_inv = map_legs(qt.R_inv, f, codomain)
    new_qt = QTStructure(codomain, R, R_inv)
    if isinstance(src, InfRMatrix):
        chi = map_legs(src.chi, f, codomain)
        return Pushforward(codomain, new_qt, InfRMatrix(new_qt, chi), chi)
    return Pushforward(codomain, new_qt, None, None)


# Lie level


@dataclass
class LieAlgebraData:
    labels: list[str]
    bracket: dict  # (i, j) -> {k: c}, [e_i, e_j] = Σ c e_k
    field: object = QQ

    @property
    def dim(self) -> int:
        return len(self.labels)

    def br(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket.get((i, j), {}).items():
                    w = out.get(k, 0) + a * b * c
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def validate(self) -> AxiomReport:
        rep = AxiomReport("Lie algebra")
        n = self.dim
        e = [{i: self.field.one} for i in range(n)]
        bad = None
        for i, j in product(range(n), repeat=2):
            lhs = self.br(e[i], e[j])
            rhs = {k: -c for k, c in self.br(e[j], e[i]).items()}
            if lhs != rhs:
                bad = {"at": f"{self.labels[i]},{self.labels[j]}"}
                break
        rep.add("antisymmetry", bad is None, bad)
        bad = None
        for i, j, k in product(range(n), repeat=3):
            acc: dict = {}
            for term in (
                self.br(e[i], self.br(e[j], e[k])),
                self.br(e[j], self.br(e[k], e[i])),
                self.br(e[k], self.br(e[i], e[j])),
            ):
                for key, c in term.items():
                    w = acc.get(key, 0) + c
                    if w:
                        acc[key] = w
                    else:
                        acc.pop(key, None)
            if acc:
                bad = {"at": f"{self.labels[i]},{self.labels[j]},{self.labels[k]}"}
                break
        rep.add("jacobi", bad is None, bad)
        return rep


def _add(out, key, val):
    w = out.get(key, 0) + val
    if w:
        out[key] = w
    else:
        out.pop(key, None)


def cybe_tensor(g: LieAlgebraData, r: dict) -> dict:
    """[r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃] as a sparse map on index triples."""
    out: dict = {}
    terms = list(r.items())
    for (a, b), x in terms:
        for (c, d), y in terms:
            xy = x * y
            for k, z in g.bracket.get((a, c), {}).items():
                _add(out, (k, b, d), xy * z)
            for k, z in g.bracket.get((b, c), {}).items():
                _add(out, (a, k, d), xy * z)
            for k, z in g.bracket.get((b, d), {}).items():
                _add(out, (a, c, k), xy * z)
    return out


def lie_check(g: LieAlgebraData, r: dict) -> AxiomReport:
    """Classical Yang-Baxter equation, invariance of r + r^op, skewness."""
    if not g.validate().ok:
        raise ValueError("bracket is not a Lie bracket")
    r = {tuple(k): c for k, c in r.items() if c}
    rep = AxiomReport("Lie bialgebra r-matrix")
    cy = cybe_tensor(g, r)
    rep.add("cybe", not cy, {"tuple": ",".join(g.labels[i] for i in min(cy))} if cy else None)
    s: dict = dict(r)
    for (a, b), c in r.items():
        _add(s, (b, a), c)
    bad = None
    for x in range(g.dim):
        acc: dict = {}
        for (a, b), c in s.items():
            for k, z in g.bracket.get((x, a), {}).items():
                _add(acc, (k, b), c * z)
            for k, z in g.bracket.get((x, b), {}).items():
                _add(acc, (a, k), c * z)
        if acc:
            bad = {"at": g.labels[x]}
            break
    rep.add("symmetrization_invariant", bad is None, bad)
    skew = all(r.get((b, a), 0) == -c for (a, b), c in r.items())
    rep.add("skew", skew, None if skew else {"reason": "r^op != -r"}, flag=True)
    return rep


def sl2() -> LieAlgebraData:
    """Basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    F = Fraction
    br = {
        (1, 0): {0: F(2)}, (0, 1): {0: F(-2)},
        (1, 2): {2: F(-2)}, (2, 1): {2: F(2)},
        (0, 2): {1: F(1)}, (2, 0): {1: F(-1)},
    }  # fmt: skip
    return LieAlgebraData(["e", "h", "f"], br)


def sl2_r() -> tuple[LieAlgebraData, dict]:
    """(sl₂, r = e⊗f + ¼ h⊗h)."""
    return sl2(), {(0, 2): Fraction(1), (1, 1): Fraction(1, 4)}


# builtins

BUILTINS = (
    "sweedler",
    "sweedler_R",
    "sweedler_chi",
    "sweedler_twist",
    "group_algebra_Z2",
    "group_algebra_Z2_R",
    "trivial",
    "sl2_r",
    "sweedler_to_Z2",
    "mq2",
    "flip",
)


def _field_from_param(k):
    if k is None:
        return QQ
    if isinstance(k, FieldSpec):
        return make_field(k)
    if hasattr(k, "spec"):
        return k
    if k in ("Q", "QQ", "rationals"):
        return QQ
    raise ValueError(f"unsupported field {k!r}")


def builtin(name: str, **params):
    """Prebuilt example objects by name; parameters mirror the formulas (lam, alpha, t, k, q)."""
    if name == "sweedler":
        return sweedler()
    if name == "sweedler_R":
        return sweedler_R(params.get("lam", 0))
    if name == "sweedler_chi":
        return sweedler_chi(params.get("alpha", 1))
    if name == "sweedler_twist":
        return sweedler_twist(params.get("t", 1))
    if name == "group_algebra_Z2":
        return group_algebra_Z2()
    if name == "group_algebra_Z2_R":
        return group_algebra_Z2_R()
    if name == "trivial":
        return trivial_bialgebra(_field_from_param(params.get("k")))
    if name == "sl2_r":
        return sl2_r()
    if name == "sweedler_to_Z2":
        return sweedler_to_Z2()
    if name == "mq2":
        from .frt import mq2_braiding

        return mq2_braiding(params.get("q"), params.get("lam"))
    if name == "flip":
        from .frt import flip_braiding

        return flip_braiding(params.get("N", 2))
    raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTINS)}")
