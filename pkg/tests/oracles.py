"""Independent dense reference computations.

Nothing here imports the package's algebra code: structure constants are
rebuilt from defining relations, products are numpy einsums over object
arrays of Fractions, and linear algebra goes through sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np
import sympy

F = Fraction


def zeros(*shape):
    return np.full(shape, F(0), dtype=object)


# Sweedler's algebra from words in g, x


SW_LABELS = ["1", "g", "x", "xg"]


def _sw_normal(word: str):
    """Normal form x^b g^a of a word in g, x: (sign, b, a) or None when it vanishes."""
    sign, b, a = 1, 0, 0
    for ch in word:
        if ch == "g":
            a ^= 1
        else:
            # x moves left past g^a, picking up (-1)^a
            if a:
                sign = -sign
            b += 1
            if b > 1:
                return None
    return sign, b, a


def _sw_index(b, a):
    return {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}[(b, a)]


SW_WORDS = ["", "g", "x", "xg"]


def sweedler_dense():
    """(M, u, D, eps, S) with M[i,j,k] = coeff of e_k in e_i e_j and D[i,j,k] = coeff of e_j⊗e_k in Δ(e_i)."""
    n = 4
    M = zeros(n, n, n)
    for i, j in product(range(n), repeat=2):
        nf = _sw_normal(SW_WORDS[i] + SW_WORDS[j])
        if nf:
            s, b, a = nf
            M[i, j, _sw_index(b, a)] = F(s)
    u = zeros(n)
    u[0] = F(1)

    def mul1(x, y):
        return np.einsum("i,j,ijk->k", x, y, M)

    def mul2(X, Y):
        return np.einsum("ij,pq,ipk,jql->kl", X, Y, M, M)

    dg = zeros(n, n)
    dg[1, 1] = F(1)
    dx = zeros(n, n)
    dx[2, 0] = F(1)
    dx[1, 2] = F(1)
    one2 = zeros(n, n)
    one2[0, 0] = F(1)
    D = zeros(n, n, n)
    D[0] = one2
    D[1] = dg
    D[2] = dx
    D[3] = mul2(dx, dg)
    eps = np.array([F(1), F(1), F(0), F(0)], dtype=object)
    S = zeros(n, n)  # S[i, j]: coefficient of e_j in S(e_i)
    # S(g) = g, S(x) = -gx = xg, S is an anti-homomorphism
    S[0, 0] = F(1)
    S[1, 1] = F(1)
    S[2, 3] = F(1)
    S[3] = mul1(S[1], S[2])
    return M, u, D, eps, S


class Dense:
    """Elements of H^{⊗k} as k-dimensional arrays."""

    def __init__(self, M, u, D, eps, S=None):
        self.M, self.u, self.D, self.eps, self.S = M, u, D, eps, S
        self.n = len(u)

    def el(self, terms: dict, k=2):
        A = zeros(*([self.n] * k))
        for key, c in terms.items():
            A[key] += F(c)
        return A

    def mul(self, X, Y):
        """Componentwise product in H^{⊗k}: Σ X_I Y_J ⊗_r (e_{I_r} e_{J_r})."""
        out = zeros(*X.shape)
        xs = [(I, X[I]) for I in zip(*np.nonzero(X != 0))]
        ys = [(J, Y[J]) for J in zip(*np.nonzero(Y != 0))]
        for I, a in xs:
            for J, b in ys:
                t = self.M[I[0], J[0]]
                for r in range(1, len(I)):
                    t = np.multiply.outer(t, self.M[I[r], J[r]])
                out += (a * b) * t
        return out

    def one(self, k):
        A = self.u
        for _ in range(k - 1):
            A = np.multiply.outer(A, self.u)
        return A

    def legs(self, X, legs, k=3):
        """Embed a 2-tensor into legs of a k-tensor, filling with 1."""
        out = zeros(*([self.n] * k))
        others = [i for i in range(k) if i not in legs]
        for idx in product(range(self.n), repeat=2):
            c = X[idx]
            if not c:
                continue
            for rest in product(range(self.n), repeat=k - 2):
                w = F(1)
                full = [0] * k
                full[legs[0]], full[legs[1]] = idx
                for pos, r in zip(others, rest):
                    full[pos] = r
                    w *= self.u[r]
                if w:
                    out[tuple(full)] += c * w
        return out

    def delta(self, X, leg):
        """Δ applied on one leg (0-based) of a 2-tensor, giving a 3-tensor."""
        if leg == 0:
            return np.einsum("ij,iab->abj", X, self.D)
        return np.einsum("ij,jab->iab", X, self.D)

    def flip(self, X):
        return X.T.copy()

    def inverse2(self, X):
        """Right inverse in H⊗H by a sympy linear solve; checked to be two-sided."""
        n = self.n
        basis = list(product(range(n), repeat=2))
        cols = []
        for idx in basis:
            E = zeros(n, n)
            E[idx] = F(1)
            cols.append([_sym(c) for c in self.mul(X, E).ravel()])
        L = sympy.Matrix(cols).T
        rhs = sympy.Matrix([_sym(c) for c in self.one(2).ravel()])
        y = L.LUsolve(rhs)
        out = zeros(n, n)
        for idx, v in zip(basis, y):
            out[idx] = F(int(v.p), int(v.q))
        one = self.one(2)
        assert (self.mul(X, out) == one).all() and (self.mul(out, X) == one).all()
        return out


def _sym(c):
    return sympy.Rational(c.numerator, c.denominator)


def sweedler_R_dense(H: Dense, lam):
    lam = F(lam)
    half = F(1, 2)
    R = H.el({(0, 0): half, (1, 0): half, (0, 1): half, (1, 1): -half})
    for key, s in (((2, 2), 1), ((3, 2), -1), ((2, 3), 1), ((3, 3), 1)):
        R[key] += lam * half * s
    return R


def sweedler_chi_dense(H: Dense, alpha):
    return H.el({(3, 2): alpha})


def tensor_terms(X, labels, k=2):
    """{label-tuple: coefficient} of the nonzero entries, for comparisons."""
    out = {}
    for idx in product(range(len(labels)), repeat=k):
        c = X[idx]
        if c:
            out["⊗".join(labels[i] for i in idx)] = c
    return out


# classification of χ by sympy nullspace


def classify_chi_dense(H: Dense, R):
    """Basis (reduced row echelon, as label dicts) of all χ with the three defining identities."""
    n = H.n
    R_inv = H.inverse2(R)
    cols = []
    for i, j in product(range(n), repeat=2):
        E = zeros(n, n)
        E[i, j] = F(1)
        # Δ(a)χ = χΔ(a) for every basis a
        parts = []
        for a in range(n):
            Da = H.D[a]
            parts.append(H.mul(Da, E) - H.mul(E, Da))
        # (id⊗Δ)χ = χ12 + R^{-1}_{12} χ13 R_{12}
        c13 = H.legs(E, (0, 2))
        parts.append(H.delta(E, 1) - H.legs(E, (0, 1)) - H.mul(H.mul(H.legs(R_inv, (0, 1)), c13), H.legs(R, (0, 1))))
        # (Δ⊗id)χ = χ23 + R^{-1}_{23} χ13 R_{23}
        parts.append(H.delta(E, 0) - H.legs(E, (1, 2)) - H.mul(H.mul(H.legs(R_inv, (1, 2)), c13), H.legs(R, (1, 2))))
        cols.append(np.concatenate([p.ravel() for p in parts]))
    A = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in col] for col in cols]).T
    ns = A.nullspace()
    if not ns:
        return []
    B = sympy.Matrix.hstack(*ns).T.rref()[0]
    out = []
    for r in range(B.rows):
        row = {}
        for idx in range(n * n):
            v = B[r, idx]
            if v != 0:
                i, j = divmod(idx, n)
                row[f"{SW_LABELS[i]}⊗{SW_LABELS[j]}"] = F(int(v.p), int(v.q))
        if row:
            out.append(row)
    return out


# cobar complex


def cobar_matrix_dense(D, u, n_deg):
    """b^k : H^{⊗k} → H^{⊗(k+1)} as a sympy matrix, from dense coproduct D."""
    n = len(u)
    dom = list(product(range(n), repeat=n_deg))
    cod = list(product(range(n), repeat=n_deg + 1))
    pos = {t: r for r, t in enumerate(cod)}
    A = sympy.zeros(len(cod), len(dom))
    one = [i for i in range(n) if u[i]]
    for c, t in enumerate(dom):
        if n_deg == 0:
            continue
        for i in one:
            A[pos[(i,) + t], c] += u[i]
            A[pos[t + (i,)], c] += (-1) ** (n_deg + 1) * u[i]
        for leg in range(n_deg):
            for a, b in product(range(n), repeat=2):
                v = D[t[leg], a, b]
                if v:
                    s = t[:leg] + (a, b) + t[leg + 1 :]
                    A[pos[s], c] += (-1) ** (leg + 1) * sympy.Rational(v.numerator, v.denominator)
    return A


def cohomology_dims_dense(D, u, k):
    bk = cobar_matrix_dense(D, u, k)
    prev = cobar_matrix_dense(D, u, k - 1)
    z = bk.cols - bk.rank()
    b = prev.rank()
    return z, b, z - b


# sl₂ in its defining representation


def sl2_matrices():
    e = sympy.Matrix([[0, 1], [0, 0]])
    h = sympy.Matrix([[1, 0], [0, -1]])
    f = sympy.Matrix([[0, 0], [1, 0]])
    return {"e": e, "h": h, "f": f}


def kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = sympy.kronecker_product(out, m)
    return out


def cybe_in_rep(r_terms):
    """[r12,r13] + [r12,r23] + [r13,r23] evaluated in V⊗V⊗V for the defining representation."""
    mats = sl2_matrices()
    I = sympy.eye(2)

    def leg(pair, a, b):
        ms = [I, I, I]
        ms[pair[0]], ms[pair[1]] = mats[a], mats[b]
        return kron(*ms)

    def r(pair):
        return sum((c * leg(pair, a, b) for (a, b), c in r_terms.items()), sympy.zeros(8, 8))

    r12, r13, r23 = r((0, 1)), r((0, 2)), r((1, 2))

    def br(x, y):
        return x * y - y * x

    return br(r12, r13) + br(r12, r23) + br(r13, r23)


def invariance_in_rep(r_terms):
    """[x⊗1 + 1⊗x, r + r^op] for x ∈ {e, h, f} in V⊗V."""
    mats = sl2_matrices()
    I = sympy.eye(2)
    t = sympy.zeros(4, 4)
    for (a, b), c in r_terms.items():
        t += c * (kron(mats[a], mats[b]) + kron(mats[b], mats[a]))
    return [kron(m, I) + kron(I, m) for m in mats.values()], t


# FRT oracles


def frt_block_R(r_of, I, K, J, L, N):
    """R(T_I^K ⊗ T_J^L) as the matrix entry of Π_a Π_{b descending} r_{a, m+b} on V^{⊗(m+n)}.

    r_of(i, j, k, l) is the generator value R(T_i^k ⊗ T_j^l); the ordered product is
    assembled densely with numpy.
    """
    m, n = len(I), len(J)
    legs = m + n
    dim = N**legs
    r = zeros(N * N, N * N)
    for i, j, k, l in product(range(N), repeat=4):
        r[i * N + j, k * N + l] = r_of(i, j, k, l)

    def leg_op(p, q):
        op = zeros(dim, dim)
        for row in product(range(N), repeat=legs):
            for k, l in product(range(N), repeat=2):
                c = r[row[p] * N + row[q], k * N + l]
                if c:
                    col = list(row)
                    col[p], col[q] = k, l
                    op[_flat(row, N), _flat(col, N)] += c
        return op

    X = np.eye(dim, dtype=int).astype(object) * F(1)
    for a in range(m):
        for b in reversed(range(n)):
            X = X.dot(leg_op(a, m + b))
    return X[_flat(tuple(I) + tuple(J), N), _flat(tuple(K) + tuple(L), N)]


def _flat(idx, N):
    r = 0
    for x in idx:
        r = r * N + x
    return r


MANIN = "αβγδ"


def manin_relations(q):
    """The six quadratic relations of M_q(2) as {word: coeff} over letters α, β, γ, δ."""
    q = F(q)
    return [
        {"βα": F(1), "αβ": -q},
        {"γα": F(1), "αγ": -q},
        {"δβ": F(1), "βδ": -q},
        {"δγ": F(1), "γδ": -q},
        {"γβ": F(1), "βγ": F(-1)},
        {"αδ": F(1), "δα": F(-1), "βγ": -(1 / q - q)},
    ]


def manin_component_dim(q, d):
    """dim of the degree-d part of k<α,β,γ,δ>/(Manin relations), by a sympy rank."""
    if d < 2:
        return 4**d
    words = ["".join(w) for w in product(MANIN, repeat=d)]
    pos = {w: k for k, w in enumerate(words)}
    rows = []
    for rel in manin_relations(q):
        for p in range(d - 1):
            for u in product(MANIN, repeat=p):
                for v in product(MANIN, repeat=d - 2 - p):
                    row = [0] * len(words)
                    for w, c in rel.items():
                        row[pos["".join(u) + w + "".join(v)]] += sympy.Rational(c.numerator, c.denominator)
                    rows.append(row)
    return len(words) - sympy.Matrix(rows).rank()
