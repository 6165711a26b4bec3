"""Braided and infinitesimally braided vector spaces and the graded FRT bialgebra.

Generators T_i^j of the free algebra are indexed 1..N in the public word type;
internally a word is a pair of 0-based index tuples (I, K) standing for
T_{I_1}^{K_1}⋯T_{I_d}^{K_d}. The coproduct on words is the matrix coproduct
Δ(T_I^K) = Σ_P T_I^P ⊗ T_P^K and ε(T_I^K) = δ_I^K.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .core.linalg import Echelon, LinearMap, SolutionSpace, nullspace_vectors, solve
from .core.report import AxiomReport
from .core.scalars import QQ, RatFunc, rational_functions
from .core.tensors import NotInvertible

DEFAULT_COMPONENT_CAP = 4**6


class NotBraided(ValueError):
    pass


class NotInfinitesimallyBraided(ValueError):
    def __init__(self, report: AxiomReport):
        bad = ", ".join(v.name for v in report.failures())
        super().__init__(f"(c, t) is not infinitesimally braided: {bad} failed")
        self.report = report


class ComponentCapExceeded(RuntimeError):
    pass


class InvalidCoaction(ValueError):
    pass


# operators on V⊗V and V⊗V⊗V


def _clean(d: Mapping) -> dict:
    out = {}
    for key, vec in d.items():
        v = {k: c for k, c in vec.items() if c}
        if v:
            out[key] = v
    return out


def _pair_op(op: Mapping, N: int) -> LinearMap:
    cols = []
    for i, j in product(range(N), repeat=2):
        cols.append({k * N + l: c for (k, l), c in op.get((i, j), {}).items()})
    return LinearMap(N * N, N * N, cols)


def _from_pair_map(M: LinearMap, N: int) -> dict:
    out = {}
    for col, vec in enumerate(M.cols):
        if vec:
            out[divmod(col, N)] = {divmod(r, N): c for r, c in vec.items()}
    return out


def _invert_op(op: Mapping, N: int, field) -> dict:
    M = _pair_op(op, N)
    rows = M.rows()
    cols = []
    for k in range(N * N):
        rhs = [field.one if r == k else field.zero for r in range(N * N)]
        x, rk = solve(rows, rhs, N * N)
        if x is None or rk < N * N:
            raise NotInvertible("c is not invertible")
        cols.append(x)
    return _from_pair_map(LinearMap(N * N, N * N, cols), N)


def _leg3(op: Mapping, legs: tuple[int, int], N: int) -> LinearMap:
    """op acting on the legs (1,2), (2,3) or (1,3) of V^{⊗3}."""
    p, q = legs[0] - 1, legs[1] - 1
    cols = []
    for idx in product(range(N), repeat=3):
        col: dict = {}
        for (a, b), c in op.get((idx[p], idx[q]), {}).items():
            out = list(idx)
            out[p], out[q] = a, b
            r = (out[0] * N + out[1]) * N + out[2]
            col[r] = col.get(r, 0) + c
        cols.append(col)
    return LinearMap(N**3, N**3, cols)


def _flip_op(N: int, one) -> dict:
    return {(i, j): {(j, i): one} for i, j in product(range(N), repeat=2)}


def _compose_pair(a: Mapping, b: Mapping, N: int) -> dict:
    """a∘b on V⊗V."""
    return _from_pair_map(_pair_op(a, N) @ _pair_op(b, N), N)


def _vlabel(r: int, N: int, k: int) -> str:
    idx = []
    for _ in range(k):
        r, x = divmod(r, N)
        idx.append(x)
    return "⊗".join(f"v{i + 1}" for i in reversed(idx))


def _fmt_vec(vec: dict, N: int, k: int) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({c})*{_vlabel(r, N, k)}" for r, c in sorted(vec.items()))


def _compare_ops(rep: AxiomReport, name: str, lhs: LinearMap, rhs: LinearMap, N: int) -> None:
    for col, (u, v) in enumerate(zip(lhs.cols, rhs.cols)):
        if u != v:
            rep.add(
                name,
                False,
                {"at": _vlabel(col, N, 3), "lhs": _fmt_vec(u, N, 3), "rhs": _fmt_vec(v, N, 3)},
            )
            return
    rep.add(name, True)


class BraidedVS:
    """(V, c) with optional t; c[(i, j)] = {(k, l): c_{ij}^{kl}} on 0-based indices."""

    def __init__(self, dim: int, c: Mapping, t: Mapping | None = None, field=QQ, name: str = "V"):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.field = field
        self.name = name
        self.c = self._coerce(c, "c")
        self.t = self._coerce(t, "t") if t is not None else None
        self.c_inv = _invert_op(self.c, dim, field)
        self._legs: dict = {}
        self._ev: FRTEvaluator | None = None
        self._ibv: bool | None = None

    def _coerce(self, op: Mapping, what: str) -> dict:
        N = self.dim
        out: dict = {}
        for key, vec in op.items():
            i, j = key
            for (k, l), c in vec.items():
                if not all(0 <= x < N for x in (i, j, k, l)):
                    raise ValueError(f"{what}: index out of range in ({i},{j},{k},{l})")
                if isinstance(c, str):
                    c = self.field.parse(c)
                c = self.field.coerce(c)
                if c:
                    out.setdefault((i, j), {})[(k, l)] = c
        return out

    def coefficient(self, which: str, i, j, k, l):
        """c_{ij}^{kl}, t_{ij}^{kl} or the c^{-1} coefficient, 0-based."""
        op = {"c": self.c, "t": self.t or {}, "c_inv": self.c_inv}[which]
        return op.get((i, j), {}).get((k, l), self.field.zero)

    def leg(self, which: str, legs: tuple[int, int]) -> LinearMap:
        key = (which, legs)
        if key not in self._legs:
            op = {"c": self.c, "t": self.t or {}, "c_inv": self.c_inv}[which]
            self._legs[key] = _leg3(op, legs, self.dim)
        return self._legs[key]

    def with_t(self, t: Mapping | None) -> BraidedVS:
        return BraidedVS(self.dim, self.c, t, self.field, self.name)

    @property
    def evaluator(self) -> FRTEvaluator:
        if self._ev is None:
            self._ev = FRTEvaluator(self)
        return self._ev

    def __repr__(self):
        return f"BraidedVS(dim={self.dim}, over {self.field.describe()}, t={'yes' if self.t is not None else 'no'})"


# constructors


def flip_braiding(N: int = 2, field=QQ) -> BraidedVS:
    return BraidedVS(N, _flip_op(N, field.one), None, field, f"flip_{N}")


def identity_t(N: int, lam=1, field=QQ) -> dict:
    lam = field.coerce(lam)
    if not lam:
        return {}
    return {(i, j): {(i, j): lam} for i, j in product(range(N), repeat=2)}


def diagonal_braiding(q: Sequence[Sequence], p: Sequence[Sequence] | None = None, field=QQ) -> BraidedVS:
    """c(v_i⊗v_j) = q_{ij} v_j⊗v_i; t(v_i⊗v_j) = p_{ij} v_i⊗v_j when p is given."""
    N = len(q)
    qv = [[field.parse(x) if isinstance(x, str) else field.coerce(x) for x in row] for row in q]
    if any(not x for row in qv for x in row):
        raise ValueError("diagonal braiding needs nonzero q_ij")
    c = {(i, j): {(j, i): qv[i][j]} for i, j in product(range(N), repeat=2)}
    t = None
    if p is not None:
        pv = [[field.parse(x) if isinstance(x, str) else field.coerce(x) for x in row] for row in p]
        t = {(i, j): {(i, j): pv[i][j]} for i, j in product(range(N), repeat=2) if pv[i][j]}
    return BraidedVS(N, c, t, field, "diagonal")


def _sqrt_rational(q) -> Fraction | None:
    q = Fraction(q)
    if q <= 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def mq2_braiding(q=None, lam=None) -> BraidedVS:
    """The braiding whose FRT algebra is M_q(2): c(v1v1) = s v11, c(v2v2) = s v22,
    c(v1v2) = s^{-1} v21, c(v2v1) = s^{-1} v12 + s^{-1}(q - q^{-1}) v21, q = s².

    With q omitted the field is Q(s). A numeric q must be a rational square.
    lam, when given, attaches t = lam·Id.
    """
    if q is None:
        F = rational_functions("s")
        s = F.gen()
    else:
        root = _sqrt_rational(q)
        if root is None:
            raise ValueError(f"q = {q} has no rational square root; omit q to work over Q(s)")
        F = QQ
        s = root
    qq = s * s
    si = F.one / s
    c = {
        (0, 0): {(0, 0): s},
        (1, 1): {(1, 1): s},
        (0, 1): {(1, 0): si},
        (1, 0): {(0, 1): si, (1, 0): si * (qq - F.one / qq)},
    }
    t = identity_t(2, lam, F) if lam is not None else None
    return BraidedVS(2, c, t, F, "M_q(2)")


def mq2_scaled_braiding(q) -> BraidedVS:
    """q^{1/2}·c for M_q(2): entries in the field of q, same relations, same R^{-1}·R products."""
    if isinstance(q, RatFunc):
        F = rational_functions(q.var)
        qq = q
    else:
        F = QQ
        qq = Fraction(q)
    if not qq:
        raise ValueError("q must be nonzero")
    one = F.one
    c = {
        (0, 0): {(0, 0): qq},
        (1, 1): {(1, 1): qq},
        (0, 1): {(1, 0): one},
        (1, 0): {(0, 1): one, (1, 0): qq - one / qq},
    }
    return BraidedVS(2, c, None, F, "M_q(2) rescaled")


# braid and YBE checks


def braid_report(bvs: BraidedVS) -> AxiomReport:
    rep = AxiomReport(f"braid equation on {bvs.name}")
    c12, c23 = bvs.leg("c", (1, 2)), bvs.leg("c", (2, 3))
    _compare_ops(rep, "braid", c12 @ c23 @ c12, c23 @ c12 @ c23, bvs.dim)
    return rep


def qyb_report(r: Mapping, N: int, name: str = "r") -> AxiomReport:
    rep = AxiomReport(f"quantum Yang-Baxter equation for {name}")
    r12, r13, r23 = (_leg3(r, p, N) for p in ((1, 2), (1, 3), (2, 3)))
    _compare_ops(rep, "QYB", r12 @ r13 @ r23, r23 @ r13 @ r12, N)
    return rep


def check_qyb_matrix(r: Mapping, N: int) -> bool:
    return qyb_report(r, N).ok


def check_braid(bvs: BraidedVS) -> bool:
    """Braid equation for c; cross-checked against the QYB for τ∘c."""
    braid = braid_report(bvs).ok
    tc = _compose_pair(_flip_op(bvs.dim, bvs.field.one), bvs.c, bvs.dim)
    qyb = check_qyb_matrix(tc, bvs.dim)
    if braid != qyb:
        raise AssertionError("braid equation for c and QYB for τ∘c disagree")
    return braid


# infinitesimal braidings


def _commutator(x: LinearMap, y: LinearMap) -> LinearMap:
    xy, yx = x @ y, y @ x
    cols = []
    for a, b in zip(xy.cols, yx.cols):
        col = dict(a)
        for k, v in b.items():
            col[k] = col.get(k, 0) - v
        cols.append(col)
    return LinearMap(x.domain_dim, x.codomain_dim, cols)


def ibv_report(bvs: BraidedVS) -> AxiomReport:
    if not check_braid(bvs):
        raise NotBraided("c does not satisfy the braid equation")
    N = bvs.dim
    L = bvs.leg
    c12, c23, ci12, ci23 = L("c", (1, 2)), L("c", (2, 3)), L("c_inv", (1, 2)), L("c_inv", (2, 3))
    t12, t23 = L("t", (1, 2)), L("t", (2, 3))
    rep = AxiomReport(f"infinitesimal braiding on {bvs.name}")
    _compare_ops(rep, "t1", c12 @ c23 @ t12, t23 @ c12 @ c23, N)
    _compare_ops(rep, "t2", t12 @ c23 @ c12, c23 @ c12 @ t23, N)
    A = c23 @ t12 @ ci23
    B = ci12 @ t23 @ c12
    C = ci23 @ t12 @ c23
    D = c12 @ t23 @ ci12
    _compare_ops(rep, "t3", A, D, N)
    for (x, y), nm in (((A, B), "ibv1"), ((B, C), "ibv1"), ((C, D), "ibv1")):
        if x != y:
            _compare_ops(rep, nm, x, y, N)
            break
    else:
        rep.add("ibv1", True)
    lhs = _commutator(t23, D)
    mid = _commutator(t12, t23)
    rhs = _commutator(A, t12)
    if lhs != mid:
        _compare_ops(rep, "t5&6", lhs, mid, N)
    else:
        _compare_ops(rep, "t5&6", mid, rhs, N)
    return rep


def check_ibv(bvs: BraidedVS) -> AxiomReport:
    rep = ibv_report(bvs)
    bvs._ibv = rep.ok
    return rep


def check_diagonal_ibv(q: Sequence[Sequence], t: Mapping, field=QQ) -> bool:
    """The scalar conditions for (diagonal c, t), evaluated index by index."""
    N = len(q)
    qv = [[field.coerce(x) for x in row] for row in q]
    if any(not x for row in qv for x in row):
        raise ValueError("zero entry in q")
    iq = [[field.one / x for x in row] for row in qv]

    def T(i, j, k, l):
        return t.get((i, j), {}).get((k, l), 0)

    R = range(N)
    for i, j, k, a, b in product(R, repeat=5):
        x = T(i, k, a, b)
        if not x:
            continue
        vals = (
            iq[k][j] * qv[b][j] * x,
            qv[i][j] * iq[a][j] * x,
            qv[j][k] * iq[j][b] * x,
            iq[j][i] * qv[j][a] * x,
        )
        if any(v != vals[0] for v in vals[1:]):
            return False
    for i, j, k, a, u, v in product(R, repeat=6):
        left = sum((iq[j][i] * qv[j][a] * T(i, k, a, b) * T(j, b, u, v) for b in R), 0) - sum(
            (iq[u][i] * qv[u][a] * T(i, b, a, v) * T(j, k, u, b) for b in R), 0
        )
        mid = sum((T(j, k, b, v) * T(i, b, a, u) - T(i, j, a, b) * T(b, k, u, v) for b in R), 0)
        right = sum(
            (qv[v][u] * iq[k][u] * T(b, k, a, v) * T(i, j, b, u) - qv[v][j] * iq[k][j] * T(i, k, b, v) * T(b, j, a, u) for b in R),
            0,
        )
        if left != mid or mid != right:
            return False
    return True


# words


_GREEK = {"α": (1, 1), "β": (1, 2), "γ": (2, 1), "δ": (2, 2)}
_LATIN = {"a": (1, 1), "b": (1, 2), "c": (2, 1), "d": (2, 2)}
_TOKEN = re.compile(r"T_?(\d+)\^?(\d+)|([αβγδ])|(alpha|beta|gamma|delta)")


@dataclass(frozen=True)
class FRTWord:
    """T_{i₁}^{j₁}⋯T_{i_d}^{j_d}, indices 1..N."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for p in self.letters:
            if len(p) != 2 or min(p) < 1:
                raise ValueError(f"generator indices must be positive pairs, got {p!r}")

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FRTWord) -> FRTWord:
        return FRTWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    @classmethod
    def parse(cls, text: str) -> FRTWord:
        """"1", "T11 T22", "T_1^2", "αδ", "alpha delta"; the 2×2 names mean T_1^1, T_1^2, T_2^1, T_2^2."""
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        out = []
        pos = 0
        for m in _TOKEN.finditer(text):
            if text[pos : m.start()].strip(" *·"):
                raise ValueError(f"cannot parse word {text!r}")
            pos = m.end()
            if m.group(1):
                out.append((int(m.group(1)), int(m.group(2))))
            elif m.group(3):
                out.append(_GREEK[m.group(3)])
            else:
                out.append(_GREEK["αβγδ"[("alpha", "beta", "gamma", "delta").index(m.group(4))]])
        if text[pos:].strip(" *·"):
            raise ValueError(f"cannot parse word {text!r}")
        return cls(tuple(out))

    def ik(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(i - 1 for i, _ in self.letters), tuple(j - 1 for _, j in self.letters)

    @classmethod
    def from_ik(cls, I, K) -> FRTWord:
        return cls(tuple((i + 1, k + 1) for i, k in zip(I, K)))

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(f"T{i}^{j}" for i, j in self.letters)


def word(spec) -> FRTWord:
    if isinstance(spec, FRTWord):
        return spec
    if isinstance(spec, str):
        return FRTWord.parse(spec)
    return FRTWord(tuple(tuple(p) for p in spec))


def words_of_degree(N: int, d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (I, K) of length d in degree-lex order on flattened (i, k) letters."""
    out = []
    for letters in product(product(range(N), repeat=2), repeat=d):
        out.append((tuple(a for a, _ in letters), tuple(b for _, b in letters)))
    return out


def _eps_word(I, K) -> int:
    return 1 if I == K else 0


# evaluation of R, R^{-1}, χ on words


class FRTEvaluator:
    """Memoized recursive evaluation on the free algebra."""

    def __init__(self, bvs: BraidedVS):
        self.bvs = bvs
        self.N = bvs.dim
        self.zero = bvs.field.zero
        self._R: dict = {}
        self._Ri: dict = {}
        self._chi: dict = {}
        self._chi1: dict = {}
        self._right: dict = {}
        self._left: dict = {}

    # bicharacter

    def R(self, I, K, J, L, order: str = "right"):
        key = (I, K, J, L, order)
        memo = self._R
        if key in memo:
            return memo[key]
        m, n = len(I), len(J)
        N = self.N
        if m == 0:
            v = self.bvs.field.one * _eps_word(J, L)
        elif n == 0:
            v = self.bvs.field.one * _eps_word(I, K)
        elif m == 1 and n == 1:
            v = self.bvs.coefficient("c", J[0], I[0], K[0], L[0])
        elif (order == "right" and n >= 2) or (order == "left" and m == 1):
            # R(a⊗bc) = R(a₁⊗c) R(a₂⊗b), b the first letter
            v = self.zero
            for P in product(range(N), repeat=m):
                x = self.R(I, P, J[1:], L[1:], order)
                if x:
                    y = self.R(P, K, J[:1], L[:1], order)
                    if y:
                        v = v + x * y
        else:
            # R(ab⊗c) = R(a⊗c₁) R(b⊗c₂), a the first letter
            v = self.zero
            for P in product(range(N), repeat=n):
                x = self.R(I[:1], K[:1], J, P, order)
                if x:
                    y = self.R(I[1:], K[1:], P, L, order)
                    if y:
                        v = v + x * y
        memo[key] = v
        return v

    def R_inv(self, I, K, J, L):
        key = (I, K, J, L)
        memo = self._Ri
        if key in memo:
            return memo[key]
        m, n = len(I), len(J)
        N = self.N
        if m == 0:
            v = self.bvs.field.one * _eps_word(J, L)
        elif n == 0:
            v = self.bvs.field.one * _eps_word(I, K)
        elif m == 1 and n == 1:
            v = self.bvs.coefficient("c_inv", I[0], J[0], L[0], K[0])
        elif n >= 2:
            # R^{-1}(a⊗bc) = R^{-1}(a₁⊗b) R^{-1}(a₂⊗c)
            v = self.zero
            for P in product(range(N), repeat=m):
                x = self.R_inv(I, P, J[:1], L[:1])
                if x:
                    y = self.R_inv(P, K, J[1:], L[1:])
                    if y:
                        v = v + x * y
        else:
            # R^{-1}(ab⊗c) = R^{-1}(b⊗c₁) R^{-1}(a⊗c₂)
            v = self.zero
            for P in product(range(N), repeat=n):
                x = self.R_inv(I[1:], K[1:], J, P)
                if x:
                    y = self.R_inv(I[:1], K[:1], P, L)
                    if y:
                        v = v + x * y
        memo[key] = v
        return v

    # triangle actions, on single words; results are {(P, Q): coeff}

    def right_action(self, I, K, J, L) -> dict:
        """T_I^K ◁ T_J^L = R^{-1}(a₁⊗b₁) a₂ R(a₃⊗b₂)."""
        key = (I, K, J, L)
        if key in self._right:
            return self._right[key]
        N, m, n = self.N, len(I), len(J)
        out: dict = {}
        if n == 0:
            out = {(I, K): self.bvs.field.one}
        else:
            for U in product(range(N), repeat=n):
                for P in product(range(N), repeat=m):
                    x = self.R_inv(I, P, J, U)
                    if not x:
                        continue
                    for Q in product(range(N), repeat=m):
                        y = self.R(Q, K, U, L)
                        if y:
                            out[(P, Q)] = out.get((P, Q), 0) + x * y
            out = {k: v for k, v in out.items() if v}
        self._right[key] = out
        return out

    def left_action(self, J, L, I, K) -> dict:
        """T_J^L ▷ T_I^K = R^{-1}(b₁⊗a₁) a₂ R(b₂⊗a₃)."""
        key = (J, L, I, K)
        if key in self._left:
            return self._left[key]
        N, m, n = self.N, len(I), len(J)
        out: dict = {}
        if n == 0:
            out = {(I, K): self.bvs.field.one}
        else:
            for U in product(range(N), repeat=n):
                for P in product(range(N), repeat=m):
                    x = self.R_inv(J, U, I, P)
                    if not x:
                        continue
                    for Q in product(range(N), repeat=m):
                        y = self.R(U, L, Q, K)
                        if y:
                            out[(P, Q)] = out.get((P, Q), 0) + x * y
            out = {k: v for k, v in out.items() if v}
        self._left[key] = out
        return out

    # infinitesimal form

    def _t(self, i, k, j, l):
        return self.bvs.coefficient("t", i, j, k, l)

    def chi1(self, i, k, J, L):
        """χ_{1n}(T_i^k ⊗ b¹⋯bⁿ) = Σ_r χ₁₁(a◁b¹⋯b^{r-1} ⊗ b^r) ε(b^{r+1}⋯bⁿ)."""
        key = (i, k, J, L)
        if key in self._chi1:
            return self._chi1[key]
        v = self.zero
        n = len(J)
        for r in range(n):
            if not _eps_word(J[r + 1 :], L[r + 1 :]):
                continue
            act = self.right_action((i,), (k,), J[:r], L[:r])
            for (P, Q), x in act.items():
                y = self._t(P[0], Q[0], J[r], L[r])
                if y:
                    v = v + x * y
        self._chi1[key] = v
        return v

    def chi(self, I, K, J, L):
        """χ(w⊗c) = Σ_j ε(w_1⋯w_{j-1}) χ_{1n}(w_j ⊗ (w_{j+1}⋯w_m) ▷ c)."""
        key = (I, K, J, L)
        if key in self._chi:
            return self._chi[key]
        v = self.zero
        m = len(I)
        if m and J:
            for j in range(m):
                if not _eps_word(I[:j], K[:j]):
                    continue
                act = self.left_action(I[j + 1 :], K[j + 1 :], J, L)
                for (P, Q), x in act.items():
                    y = self.chi1(I[j], K[j], P, Q)
                    if y:
                        v = v + x * y
        self._chi[key] = v
        return v

    def pair(self, form: str, u: Mapping, v: Mapping):
        """Bilinear extension of R, R_inv or chi to linear combinations of words."""
        f = {"R": self.R, "R_inv": self.R_inv, "chi": self.chi}[form]
        s = self.zero
        for (I, K), a in u.items():
            for (J, L), b in v.items():
                x = f(I, K, J, L)
                if x:
                    s = s + a * b * x
        return s


def _ik(w) -> tuple:
    return word(w).ik()


def eval_R(bvs: BraidedVS, w1, w2, order: str = "right"):
    (I, K), (J, L) = _ik(w1), _ik(w2)
    _check_indices(bvs, I + K + J + L)
    return bvs.evaluator.R(I, K, J, L, order)


def eval_R_inv(bvs: BraidedVS, w1, w2):
    (I, K), (J, L) = _ik(w1), _ik(w2)
    _check_indices(bvs, I + K + J + L)
    return bvs.evaluator.R_inv(I, K, J, L)


def eval_chi(bvs: BraidedVS, w1, w2, require_ibv: bool = True):
    if bvs.t is None:
        raise NotInfinitesimallyBraided(AxiomReport("no t attached", []))
    if require_ibv:
        if bvs._ibv is None:
            check_ibv(bvs)
        if not bvs._ibv:
            raise NotInfinitesimallyBraided(ibv_report(bvs))
    (I, K), (J, L) = _ik(w1), _ik(w2)
    _check_indices(bvs, I + K + J + L)
    return bvs.evaluator.chi(I, K, J, L)


def _check_indices(bvs, idx):
    if any(i >= bvs.dim for i in idx):
        raise ValueError(f"generator index exceeds N = {bvs.dim}")


def triangle_right(bvs: BraidedVS, a, b) -> dict:
    """a ◁ b as {FRTWord: coeff}."""
    (I, K), (J, L) = _ik(a), _ik(b)
    return {FRTWord.from_ik(P, Q): c for (P, Q), c in bvs.evaluator.right_action(I, K, J, L).items()}


def triangle_left(bvs: BraidedVS, b, a) -> dict:
    """b ▷ a as {FRTWord: coeff}."""
    (J, L), (I, K) = _ik(b), _ik(a)
    return {FRTWord.from_ik(P, Q): c for (P, Q), c in bvs.evaluator.left_action(J, L, I, K).items()}


def _scalar_t(bvs: BraidedVS):
    """λ if t = λ·Id, else None."""
    N = bvs.dim
    t = bvs.t or {}
    lam = t.get((0, 0), {}).get((0, 0), bvs.field.zero)
    return lam if t == identity_t(N, lam, bvs.field) else None


def canonical_chi(bvs: BraidedVS, w1, w2):
    """λ·|w1|·|w2|·ε(w1 w2) for t = λ·Id, cross-checked against the recursion."""
    lam = _scalar_t(bvs)
    if lam is None or bvs.t is None:
        raise ValueError("canonical χ needs t = λ·Id")
    (I, K), (J, L) = _ik(w1), _ik(w2)
    v = lam * len(I) * len(J) * _eps_word(I + J, K + L)
    if bvs.evaluator.chi(I, K, J, L) != v:
        raise AssertionError("closed form and recursive χ disagree")
    return v


# graded FRT components


def _letter(i, k, N):
    return i * N + k


def word_index(I, K, N) -> int:
    r = 0
    for i, k in zip(I, K):
        r = r * N * N + _letter(i, k, N)
    return r


def word_from_index(r: int, d: int, N: int):
    I, K = [], []
    for _ in range(d):
        r, x = divmod(r, N * N)
        i, k = divmod(x, N)
        I.append(i)
        K.append(k)
    return tuple(reversed(I)), tuple(reversed(K))


def relation_vectors(bvs: BraidedVS, kind: str) -> dict:
    """C_{ij}^{kl} (kind "C") or D_{ij}^{kl} (kind "D") as {(i,j,k,l): {(I, K): coeff}}."""
    op = bvs.c if kind == "C" else (bvs.t or {})
    N = bvs.dim
    out = {}
    for i, j, k, l in product(range(N), repeat=4):
        v: dict = {}
        # op_{ij}^{mn} T_m^k T_n^l
        for (m, n), c in op.get((i, j), {}).items():
            key = ((m, n), (k, l))
            v[key] = v.get(key, 0) + c
        # - T_i^m T_j^n op_{mn}^{kl}
        for (m, n), vec in op.items():
            c = vec.get((k, l))
            if c:
                key = ((i, j), (m, n))
                v[key] = v.get(key, 0) - c
        v = {a: b for a, b in v.items() if b}
        if v:
            out[(i, j, k, l)] = v
    return out


def embedded_relations(bvs: BraidedVS, d: int, kinds=("C", "D")) -> Iterable[tuple[str, tuple, dict]]:
    """u·G·v for every relation G and words u, v with |u| + |v| = d - 2."""
    N = bvs.dim
    for kind in kinds:
        if kind == "D" and bvs.t is None:
            continue
        rels = relation_vectors(bvs, kind)
        for p in range(d - 1):
            for U in words_of_degree(N, p):
                for V in words_of_degree(N, d - 2 - p):
                    for idx, g in rels.items():
                        vec = {(U[0] + I + V[0], U[1] + K + V[1]): c for (I, K), c in g.items()}
                        yield kind, (U, idx, V), vec


@dataclass
class FRTComponent:
    degree: int
    N: int
    ideal: Echelon
    ideal_dim: int
    basis: list  # standard monomials (I, K)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Mapping) -> dict:
        """Normal form modulo J_d, on words (I, K)."""
        N = self.N
        row = {word_index(I, K, N): c for (I, K), c in vec.items() if c}
        red = self.ideal.reduce(row)
        return {word_from_index(r, self.degree, N): c for r, c in red.items()}

    def basis_words(self) -> list[FRTWord]:
        return [FRTWord.from_ik(I, K) for I, K in self.basis]


def frt_component(bvs: BraidedVS, d: int, cap: int = DEFAULT_COMPONENT_CAP) -> FRTComponent:
    """Degree-d part of A(c, t) (A(c) if t is absent) as C^{⊗d} modulo J_d."""
    N = bvs.dim
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if N ** (2 * d) > cap:
        raise ComponentCapExceeded(f"N^(2d) = {N ** (2 * d)} exceeds the cap {cap}")
    key = ("component", d)
    cache = bvs._legs
    if key in cache:
        return cache[key]
    e = Echelon()
    if d >= 2:
        for _, _, vec in embedded_relations(bvs, d):
            e.add({word_index(I, K, N): c for (I, K), c in vec.items()})
    e.finalize()
    piv = set(e.pivots())
    basis = [word_from_index(r, d, N) for r in range(N ** (2 * d)) if r not in piv]
    comp = FRTComponent(d, N, e, e.rank, basis)
    cache[key] = comp
    return comp


@dataclass
class GradedFRT:
    source: BraidedVS
    components: list[FRTComponent] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [c.dim for c in self.components]


def graded_frt(bvs: BraidedVS, max_degree: int, cap: int = DEFAULT_COMPONENT_CAP) -> GradedFRT:
    return GradedFRT(bvs, [frt_component(bvs, d, cap) for d in range(max_degree + 1)])


# descent


def _fmt_word_vec(vec: Mapping) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({c})*{FRTWord.from_ik(I, K)}" for (I, K), c in sorted(vec.items()))


def _cc1_word_residual(bvs: BraidedVS, form: str, i, k, j, l) -> dict:
    """For χ (form "chi"): χ(a₁⊗b₁)a₂b₂ - a₁b₁χ(a₂⊗b₂); for R (form "R"): R(a₁⊗b₁)a₂b₂ - b₁a₁R(a₂⊗b₂).

    a = T_i^k, b = T_j^l; the result is a degree-2 combination of words.
    """
    ev = bvs.evaluator
    f = ev.chi if form == "chi" else ev.R
    N = bvs.dim
    out: dict = {}
    for p, q in product(range(N), repeat=2):
        x = f((i,), (p,), (j,), (q,))
        if x:
            key = ((p, q), (k, l))
            out[key] = out.get(key, 0) + x
        y = f((p,), (k,), (q,), (l,))
        if y:
            key = ((i, j), (p, q)) if form == "chi" else ((j, i), (q, p))
            out[key] = out.get(key, 0) - y
    return {a: b for a, b in out.items() if b}


def check_descent(bvs: BraidedVS, max_degree: int = 3) -> AxiomReport:
    """R, R^{-1} and χ vanish on the relation ideal paired with words; CC1 and the R-form
    commutation relation hold on generators modulo the degree-2 relations."""
    if max_degree < 2:
        raise ValueError("descent needs max_degree ≥ 2")
    N = bvs.dim
    ev = bvs.evaluator
    rep = AxiomReport(f"descent of the FRT forms for {bvs.name}")
    forms = ["R", "R_inv"] + (["chi"] if bvs.t is not None else [])
    test_words = [w for m in range(1, max_degree + 1) for w in words_of_degree(N, m)]
    for form in forms:
        bad = None
        for d in range(2, max_degree + 1):
            for kind, where, vec in embedded_relations(bvs, d):
                for w in test_words:
                    wv = {w: 1}
                    for side, val in (("left", ev.pair(form, wv, vec)), ("right", ev.pair(form, vec, wv))):
                        if val:
                            U, idx, V = where
                            bad = {
                                "relation": f"{kind}_{{{idx[0] + 1}{idx[1] + 1}}}^{{{idx[2] + 1}{idx[3] + 1}}}",
                                "embedded_as": f"{FRTWord.from_ik(*U)}·{kind}·{FRTWord.from_ik(*V)}",
                                "word": str(FRTWord.from_ik(*w)),
                                "side": "word⊗relation" if side == "left" else "relation⊗word",
                                "value": str(val),
                            }
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        rep.add(form, bad is None, bad)
    comp = frt_component(bvs, 2)
    for name, form in (("ct1", "R"), ("CC1", "chi")):
        if form == "chi" and bvs.t is None:
            continue
        bad = None
        for i, k, j, l in product(range(N), repeat=4):
            red = comp.reduce(_cc1_word_residual(bvs, form, i, k, j, l))
            if red:
                bad = {
                    "at": f"{FRTWord(((i + 1, k + 1),))}⊗{FRTWord(((j + 1, l + 1),))}",
                    "normal_form": _fmt_word_vec(red),
                }
                break
        rep.add(name, bad is None, bad)
    return rep


# word-level identities


def _words_upto(N, D, start=0):
    return [w for m in range(start, D + 1) for w in words_of_degree(N, m)]


def _mul(*ws):
    I, K = (), ()
    for a, b in ws:
        I, K = I + a, K + b
    return I, K


def _coproduct_word(w, N):
    I, K = w
    for P in product(range(N), repeat=len(I)):
        yield (I, P), (P, K)


def check_word_identities(bvs: BraidedVS, max_total_degree: int = 4) -> AxiomReport:
    """Peeling-order independence, R*R^{-1} = ε⊗ε, CC2', CC3' and the 2-cocycle identity on words."""
    N = bvs.dim
    ev = bvs.evaluator
    one = bvs.field.one
    rep = AxiomReport(f"word-level identities for {bvs.name}")
    D = max_total_degree

    def first(name, cases):
        for at, lhs, rhs in cases:
            if lhs != rhs:
                rep.add(name, False, {"at": at, "lhs": str(lhs), "rhs": str(rhs)})
                return
        rep.add(name, True)

    pairs = [(a, b) for a in _words_upto(N, D) for b in _words_upto(N, D - len(a[0]))]

    def lbl(*ws):
        return "⊗".join(str(FRTWord.from_ik(*w)) for w in ws)

    first("peeling_order", ((lbl(a, b), ev.R(*a, *b, "right"), ev.R(*a, *b, "left")) for a, b in pairs))

    def conv(a, b):
        s = bvs.field.zero
        for a1, a2 in _coproduct_word(a, N):
            for b1, b2 in _coproduct_word(b, N):
                x = ev.R(*a1, *b1)
                if x:
                    y = ev.R_inv(*a2, *b2)
                    if y:
                        s = s + x * y
        return s

    first(
        "R_conv_R_inv",
        ((lbl(a, b), conv(a, b), one * _eps_word(*a) * _eps_word(*b)) for a, b in pairs if len(a[0]) + len(b[0]) <= min(D, 3)),
    )
    if bvs.t is None:
        return rep

    triples = [
        (a, b, c)
        for a in _words_upto(N, D, 1)
        for b in _words_upto(N, D - len(a[0]))
        for c in _words_upto(N, D - len(a[0]) - len(b[0]))
    ]

    def cc2p(a, b, c):
        lhs = ev.chi(*a, *_mul(b, c))
        rhs = ev.chi(*a, *b) * _eps_word(*c) + ev.pair("chi", ev.right_action(*a, *b), {c: one})
        return lhs, rhs

    def cc3p(a, b, c):
        lhs = ev.chi(*_mul(a, b), *c)
        rhs = _eps_word(*a) * ev.chi(*b, *c) + ev.pair("chi", {a: one}, ev.left_action(*b, *c))
        return lhs, rhs

    def cocycle(a, b, c):
        lhs = ev.chi(*a, *b) * _eps_word(*c) + ev.chi(*_mul(a, b), *c)
        rhs = _eps_word(*a) * ev.chi(*b, *c) + ev.chi(*a, *_mul(b, c))
        return lhs, rhs

    first("CC2'", ((lbl(a, b, c),) + cc2p(a, b, c) for a, b, c in triples))
    first("CC3'", ((lbl(a, b, c),) + cc3p(a, b, c) for a, b, c in triples))
    first("two_cocycle", ((lbl(a, b, c),) + cocycle(a, b, c) for a, b, c in triples))
    return rep


def check_cc4_words(bvs: BraidedVS, max_degree: int = 2) -> AxiomReport:
    """R*χ = χ^op*R on word pairs with |w1|, |w2| ≤ max_degree."""
    N = bvs.dim
    ev = bvs.evaluator
    rep = AxiomReport(f"CC4 on words for {bvs.name}")
    ws = _words_upto(N, max_degree)
    for a in ws:
        for b in ws:
            lhs = rhs = bvs.field.zero
            for a1, a2 in _coproduct_word(a, N):
                for b1, b2 in _coproduct_word(b, N):
                    x = ev.R(*a1, *b1)
                    if x:
                        lhs = lhs + x * ev.chi(*a2, *b2)
                    y = ev.chi(*b1, *a1)
                    if y:
                        rhs = rhs + y * ev.R(*a2, *b2)
            if lhs != rhs:
                at = f"{FRTWord.from_ik(*a)}⊗{FRTWord.from_ik(*b)}"
                rep.add("CC4", False, {"at": at, "lhs": str(lhs), "rhs": str(rhs)})
                return rep
    rep.add("CC4", True)
    return rep


# SL_q(2)

MQ2_NAMES = ("α", "β", "γ", "δ")


def _gen_pairs():
    return list(product(range(4), repeat=2))


def _g(x):
    return divmod(x, 2)


def slq2_cc1_system(q):
    """Rows (over the 16 unknowns χ(x⊗y), x, y ∈ α, β, γ, δ) of CC1 on generator pairs,
    reduced modulo the degree-2 relations."""
    bvs = mq2_scaled_braiding(q)
    comp = frt_component(bvs, 2)
    unknowns = _gen_pairs()
    pos = {u: n for n, u in enumerate(unknowns)}
    rows: dict = {}
    for (x, y) in unknowns:
        (i, k), (j, l) = _g(x), _g(y)
        # χ(a₁⊗b₁)a₂b₂ - a₁b₁χ(a₂⊗b₂), with the χ values left as unknowns
        for p, r in product(range(2), repeat=2):
            terms = [
                (pos[(i * 2 + p, j * 2 + r)], ((p, r), (k, l)), 1),
                (pos[(p * 2 + k, r * 2 + l)], ((i, j), (p, r)), -1),
            ]
            for u, w, sgn in terms:
                red = comp.reduce({w: bvs.field.one})
                for wr, c in red.items():
                    rows.setdefault(((x, y), wr), {})
                    row = rows[((x, y), wr)]
                    row[u] = row.get(u, 0) + sgn * c
    return bvs, [{k: v for k, v in r.items() if v} for r in rows.values()]


def slq2_cc1_pattern(q) -> SolutionSpace:
    """Generator values allowed by CC1 alone (two parameters for generic q)."""
    bvs, rows = slq2_cc1_system(q)
    vecs = nullspace_vectors(rows, 16)
    return SolutionSpace(16, vecs, vecs, [f"{MQ2_NAMES[a]}⊗{MQ2_NAMES[b]}" for a, b in _gen_pairs()])


def slq2_chi_obstruction(q) -> SolutionSpace:
    """CC1 on generators plus χ(a⊗det_q) = 0 = χ(det_q⊗a), det_q = αδ - q^{-1}βγ, both
    expanded through CC2/CC3 on generator values."""
    bvs, rows = slq2_cc1_system(q)
    ev = bvs.evaluator
    F = bvs.field
    qi = F.one / F.coerce(q)
    pos = {u: n for n, u in enumerate(_gen_pairs())}
    # det_q as (coefficient, first generator, second generator), generators 0..3 = α β γ δ
    det = [(F.one, 0, 3), (-qi, 1, 2)]

    def cc2_row(a, b, c):
        """χ(a⊗bc) = χ(a⊗b)ε(c) + Σ R^{-1}(a₁⊗b₁)χ(a₂⊗c)R(a₃⊗b₂)."""
        (i, k), (j, l) = _g(a), _g(b)
        row: dict = {}
        if _g(c)[0] == _g(c)[1]:
            row[pos[(a, b)]] = F.one
        for p, r, u in product(range(2), repeat=3):
            x = ev.R_inv((i,), (p,), (j,), (u,))
            y = ev.R((r,), (k,), (u,), (l,))
            if x and y:
                key = pos[(p * 2 + r, c)]
                row[key] = row.get(key, 0) + x * y
        return row

    def cc3_row(b, c, a):
        """χ(bc⊗a) = ε(b)χ(c⊗a) + Σ R^{-1}(c₁⊗a₁)χ(b⊗a₂)R(c₂⊗a₃)."""
        (j, l), (m, n) = _g(c), _g(a)
        row: dict = {}
        if _g(b)[0] == _g(b)[1]:
            row[pos[(c, a)]] = F.one
        for p, u, v in product(range(2), repeat=3):
            x = ev.R_inv((j,), (p,), (m,), (u,))
            y = ev.R((p,), (l,), (v,), (n,))
            if x and y:
                key = pos[(b, u * 2 + v)]
                row[key] = row.get(key, 0) + x * y
        return row

    for a in range(4):
        for builder, args in ((cc2_row, lambda s, t: (a, s, t)), (cc3_row, lambda s, t: (s, t, a))):
            total: dict = {}
            for coef, s, t in det:
                for k, v in builder(*args(s, t)).items():
                    total[k] = total.get(k, 0) + coef * v
            total = {k: v for k, v in total.items() if v}
            if total:
                rows.append(total)
    vecs = nullspace_vectors(rows, 16)
    return SolutionSpace(16, vecs, vecs, [f"{MQ2_NAMES[a]}⊗{MQ2_NAMES[b]}" for a, b in _gen_pairs()])


# braidings from comodules over pre-Cartier coquasitriangular bialgebras


def regular_coaction(H) -> dict:
    """V = H with ρ = Δ: v_i ↦ Σ Δ(e_i)."""
    return {i: dict(H.comul.get(i, {})) for i in range(H.dim)}


def trivial_coaction(H) -> dict:
    """V = k with ρ(v) = 1⊗v."""
    return {0: {(u, 0): c for u, c in H.unit.items()}}


def check_coaction(H, rho: Mapping, dim: int) -> None:
    """(Δ⊗Id)ρ = (Id⊗ρ)ρ and (ε⊗Id)ρ = Id."""
    for i in range(dim):
        lhs: dict = {}
        rhs: dict = {}
        for (a, k), c in rho.get(i, {}).items():
            for (x, y), d in H.comul.get(a, {}).items():
                key = (x, y, k)
                lhs[key] = lhs.get(key, 0) + c * d
            for (b, l), d in rho.get(k, {}).items():
                key = (a, b, l)
                rhs[key] = rhs.get(key, 0) + c * d
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            raise InvalidCoaction(f"coassociativity fails at v{i + 1}")
        cu: dict = {}
        for (a, k), c in rho.get(i, {}).items():
            e = H.counit[a]
            if e:
                cu[k] = cu.get(k, 0) + c * e
        if {k: v for k, v in cu.items() if v} != {i: H.field.one}:
            raise InvalidCoaction(f"counit fails at v{i + 1}")


def ibv_from_precartier(inf, coaction: Mapping | None = None, dim: int | None = None, check: bool = True) -> BraidedVS:
    """c(v⊗v') = R(v'₋₁⊗v₋₁) v'₀⊗v₀ and t(v⊗v') = χ(v₋₁⊗v'₋₁) v₀⊗v'₀ on a left comodule V."""
    from .coquasitri import InfRForm, dualize_inf

    if not isinstance(inf, InfRForm):
        inf = dualize_inf(inf)
    H = inf.H
    R, chi = inf.cqt.Rform.coeffs, inf.chi.coeffs
    if coaction is None:
        coaction = regular_coaction(H)
        dim = H.dim
    if dim is None:
        dim = 1 + max((k for vec in coaction.values() for (_, k) in vec), default=0)
    check_coaction(H, coaction, dim)
    c: dict = {}
    t: dict = {}
    for i, j in product(range(dim), repeat=2):
        for (a, k), x in coaction.get(i, {}).items():
            for (b, l), y in coaction.get(j, {}).items():
                r = R.get((b, a))
                if r:
                    vec = c.setdefault((i, j), {})
                    vec[(l, k)] = vec.get((l, k), 0) + x * y * r
                h = chi.get((a, b))
                if h:
                    vec = t.setdefault((i, j), {})
                    vec[(k, l)] = vec.get((k, l), 0) + x * y * h
    bvs = BraidedVS(dim, _clean(c), _clean(t), H.field, f"comodule over {H.name}")
    if check:
        rep = check_ibv(bvs)
        if not rep.ok:
            raise NotInfinitesimallyBraided(rep)
    return bvs
