"""Sparse exact linear algebra over the scalar domains.

Vectors are ``dict[int, scalar]`` with zero entries pruned.  Elimination
picks the smallest column as pivot, which requires pivots to be units; over
a field that is automatic, over the truncated ring callers only eliminate
systems with constant (hence unit-or-zero) entries.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, pruning zeros."""
    for k, v in x.items():
        w = y.get(k)
        w = a * v if w is None else w + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scale(x: dict, a) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incrementally maintained echelon basis of a row space."""

    def __init__(self):
        self.rows: dict[int, dict] = {}
        self._final = True

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        heap = [c for c in row if c in self.rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = row.get(c)
            if a is None:
                continue
            piv = self.rows[c]
            for k, v in piv.items():
                w = row.get(k)
                w = -a * v if w is None else w - a * v
                if w:
                    if k not in row and k in self.rows:
                        heapq.heappush(heap, k)
                    row[k] = w
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns False when it was already in the span."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        lead = r[c]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        self.rows[c] = {k: v * inv for k, v in r.items()}
        self._final = False
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def finalize(self) -> list[dict]:
        """Back-substitute to reduced row echelon form; rows sorted by pivot."""
        if not self._final:
            piv = sorted(self.rows, reverse=True)
            for c in piv:
                rc = self.rows[c]
                for d in piv:
                    if d >= c:
                        continue
                    rd = self.rows[d]
                    a = rd.get(c)
                    if a:
                        axpy(rd, -a, rc)
            self._final = True
        return [self.rows[c] for c in sorted(self.rows)]


def rref(rows: Iterable[dict]) -> tuple[list[dict], list[int]]:
    e = Echelon()
    for r in rows:
        e.add(r)
    out = e.finalize()
    return out, e.pivots()


def rank(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def canonical_basis(vectors: Iterable[dict]) -> list[dict]:
    """Reduced echelon basis of the span: unique, leading coefficient 1."""
    return rref(vectors)[0]


def nullspace_vectors(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Canonical basis of {x : row.x = 0 for every row}."""
    red, piv = rref(rows)
    pivset = set(piv)
    by_free: dict[int, dict] = {f: {f: Fraction(1)} for f in range(ncols) if f not in pivset}
    for p, r in zip(piv, red):
        for f, v in r.items():
            if f != p:
                by_free[f][p] = -v
    return canonical_basis(by_free.values())


def solve(rows: Sequence[dict], rhs: Sequence, ncols: int):
    """One solution x of rows.x = rhs (None if inconsistent) and the rank."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        aug.append(row)
    red, piv = rref(aug)
    if ncols in piv:
        return None, len(piv)
    x = {}
    for p, r in zip(piv, red):
        b = r.get(ncols)
        if b:
            x[p] = b
    return x, len(piv)


def transpose(vectors: Sequence[dict]) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for j, col in enumerate(vectors):
        for i, v in col.items():
            out.setdefault(i, {})[j] = v
    return out


def dot(u: dict, v: dict):
    if len(u) > len(v):
        u, v = v, u
    s = 0
    for k, a in u.items():
        b = v.get(k)
        if b is not None:
            s = s + a * b
    return s


class LinearMap:
    """Sparse matrix stored by columns: ``cols[j]`` is the image of e_j."""

    __slots__ = ("domain_dim", "codomain_dim", "cols")

    def __init__(self, domain_dim: int, codomain_dim: int, cols: Sequence[dict]):
        if len(cols) != domain_dim:
            raise ValueError("column count must equal the domain dimension")
        for c in cols:
            for i in c:
                if not 0 <= i < codomain_dim:
                    raise ValueError(f"row index {i} out of range")
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim
        self.cols = tuple({i: v for i, v in c.items() if v} for c in cols)

    @classmethod
    def identity(cls, n: int, one=1) -> LinearMap:
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def zero(cls, m: int, n: int) -> LinearMap:
        return cls(m, n, [{} for _ in range(m)])

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> LinearMap:
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        cols = [{i: matrix[i][j] for i in range(m) if matrix[i][j]} for j in range(n)]
        return cls(n, m, cols)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            axpy(out, a, self.cols[j])
        return out

    def compose(self, other: LinearMap) -> LinearMap:
        """self ∘ other."""
        if other.codomain_dim != self.domain_dim:
            raise ValueError("dimension mismatch in composition")
        return LinearMap(other.domain_dim, self.codomain_dim, [self.apply(c) for c in other.cols])

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return self.compose(other)

    def rows(self) -> list[dict]:
        t = transpose(self.cols)
        return [t.get(i, {}) for i in range(self.codomain_dim)]

    def rank(self) -> int:
        return rank(self.cols)

    def kernel(self) -> list[dict]:
        return nullspace_vectors(self.rows(), self.domain_dim)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def to_dense(self, zero=0) -> list[list]:
        out = [[zero] * self.domain_dim for _ in range(self.codomain_dim)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain_dim, self.codomain_dim, self.cols) == (other.domain_dim, other.codomain_dim, other.cols)

    def __hash__(self):
        return hash((self.domain_dim, self.codomain_dim))

    def __repr__(self):
        return f"LinearMap({self.domain_dim} -> {self.codomain_dim}, nnz={sum(map(len, self.cols))})"


@dataclass
class SolutionSpace:
    """Solutions of a homogeneous system, basis in reduced echelon form."""

    ambient_dim: int
    vectors: list[dict]
    basis: list[Any] = field(default_factory=list)
    labels: list[str] | None = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return self.dim


def nullspace(system: Sequence[LinearMap]) -> SolutionSpace:
    """Common kernel of stacked maps sharing a domain."""
    if not system:
        raise ValueError("empty system")
    n = system[0].domain_dim
    rows = []
    for m in system:
        if m.domain_dim != n:
            raise ValueError("all maps must share the unknown space")
        rows.extend(r for r in m.rows() if r)
    vecs = nullspace_vectors(rows, n)
    return SolutionSpace(n, vecs, list(vecs))
