"""Elements of H^{⊗k}, linear forms on H^{⊗k}, and the leg calculus on them.

Legs are numbered from 1 in the public functions (matching T_{13} style
notation) and from 0 internally.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

from .bialgebra import FinBialgebra, MissingAntipode
from .linalg import solve
from .scalars import TruncatedPolynomials, TruncPoly


class NotInvertible(ArithmeticError):
    pass


class NotConvInvertible(ArithmeticError):
    pass


class OrderMismatch(ValueError):
    pass


def _add(out: dict, key, val):
    w = out.get(key, 0) + val
    if w:
        out[key] = w
    else:
        out.pop(key, None)


class _Sparse:
    """Shared storage: sparse map from k-tuples of basis indices to scalars."""

    __slots__ = ("H", "order", "coeffs")

    def __init__(self, H: FinBialgebra, order: int, coeffs: Mapping | None = None):
        self.H = H
        self.order = order
        f = H.field
        out = {}
        for t, c in (coeffs or {}).items():
            t = tuple(t)
            if len(t) != order or not all(0 <= i < H.dim for i in t):
                raise ValueError(f"bad index tuple {t} for order {order} on {H.name}")
            c = f.coerce(c)
            if c:
                out[t] = out[t] + c if t in out else c
                if not out[t]:
                    del out[t]
        self.coeffs = out

    @classmethod
    def _raw(cls, H, order, coeffs):
        obj = cls.__new__(cls)
        obj.H, obj.order, obj.coeffs = H, order, coeffs
        return obj

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"expected {type(self).__name__}")
        if other.order != self.order:
            raise OrderMismatch(f"order {self.order} vs {other.order}")
        if other.H is not self.H and other.H != self.H:
            raise ValueError("operands live on different bialgebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            _add(out, t, c)
        return self._raw(self.H, self.order, out)

    def __neg__(self):
        return self._raw(self.H, self.order, {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, a):
        a = self.H.field.coerce(a)
        if not a:
            return self._raw(self.H, self.order, {})
        return self._raw(self.H, self.order, {t: a * c for t, c in self.coeffs.items()})

    def __rmul__(self, a):
        return self.scaled(a)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs and (self.H is other.H or self.H == other.H)

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, t):
        return self.coeffs.get(tuple(t), self.H.field.zero)

    def items(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        return self.H.format(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}[{self.order}]({self})"


class TensorElement(_Sparse):
    """Element of H^{⊗order}."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        return self.scaled(other)


class MultiForm(_Sparse):
    """Linear functional on H^{⊗order}: value on e_{i1}⊗...⊗e_{ik}."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, MultiForm):
            return convolution_mul(self, other)
        return self.scaled(other)

    def __call__(self, a: TensorElement):
        return evaluate(self, a)


# construction helpers


def element(H: FinBialgebra, terms: Mapping | Iterable = (), order: int | None = None) -> TensorElement:
    """Build from {("xg","x"): c} or {(3, 2): c}; labels are resolved via H."""
    if not isinstance(terms, Mapping):
        terms = dict(terms)
    coeffs = {}
    for key, c in terms.items():
        if isinstance(key, (str, int)):
            key = (key,)
        t = tuple(H.index(k) if isinstance(k, str) else k for k in key)
        coeffs[t] = coeffs[t] + H.field.coerce(c) if t in coeffs else c
        if order is None:
            order = len(t)
    return TensorElement(H, order if order is not None else 2, coeffs)


def form(H: FinBialgebra, terms: Mapping | Iterable = (), order: int | None = None) -> MultiForm:
    t = element(H, terms, order)
    return MultiForm(H, t.order, t.coeffs)


def one(H: FinBialgebra, k: int) -> TensorElement:
    """1_H^{⊗k}."""
    out: dict = {}
    for combo in product(sorted(H.unit.items()), repeat=k):
        c = H.field.one
        for _, x in combo:
            c = c * x
        _add(out, tuple(i for i, _ in combo), c)
    return TensorElement._raw(H, k, out)


def zero(H: FinBialgebra, k: int) -> TensorElement:
    return TensorElement._raw(H, k, {})


def counit_form(H: FinBialgebra, k: int) -> MultiForm:
    """ε^{⊗k}, the unit for convolution."""
    nz = [(i, c) for i, c in enumerate(H.counit) if c]
    out: dict = {}
    for combo in product(nz, repeat=k):
        c = H.field.one
        for _, x in combo:
            c = c * x
        out[tuple(i for i, _ in combo)] = c
    return MultiForm._raw(H, k, out)


def zero_form(H: FinBialgebra, k: int) -> MultiForm:
    return MultiForm._raw(H, k, {})


# algebra structure of H^{⊗k}


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """Componentwise product in the algebra H^{⊗k}."""
    a._same(b)
    H = a.H
    mul = H.mul
    out: dict = {}
    for I, x in a.coeffs.items():
        for J, y in b.coeffs.items():
            legs = []
            for i, j in zip(I, J):
                m = mul.get((i, j))
                if m is None:
                    break
                legs.append(m.items())
            else:
                xy = x * y
                for combo in product(*legs):
                    c = xy
                    for _, w in combo:
                        c = c * w
                    _add(out, tuple(k for k, _ in combo), c)
    return TensorElement._raw(H, a.order, out)


def mul_all(*factors: TensorElement) -> TensorElement:
    out = factors[0]
    for f in factors[1:]:
        out = tensor_mul(out, f)
    return out


def kron(a: TensorElement, b: TensorElement) -> TensorElement:
    """Outer tensor product a⊗b of orders p and q, giving order p+q."""
    if a.H is not b.H and a.H != b.H:
        raise ValueError("operands live on different bialgebras")
    out = {I + J: x * y for I, x in a.coeffs.items() for J, y in b.coeffs.items()}
    return TensorElement._raw(a.H, a.order + b.order, {t: c for t, c in out.items() if c})


def leg_embed(a: TensorElement, target_order: int, legs: tuple[int, ...]) -> TensorElement:
    """Place the factors of a at the given (1-based, increasing) legs, 1_H elsewhere."""
    legs = tuple(legs)
    if len(legs) != a.order:
        raise ValueError(f"need {a.order} leg positions, got {legs}")
    if any(p < 1 or p > target_order for p in legs) or any(p >= q for p, q in zip(legs, legs[1:])):
        raise ValueError(f"invalid leg positions {legs} for order {target_order}")
    H = a.H
    pos = [p - 1 for p in legs]
    others = [r for r in range(target_order) if r not in pos]
    units = sorted(H.unit.items())
    out: dict = {}
    for I, x in a.coeffs.items():
        for combo in product(units, repeat=len(others)):
            t = [0] * target_order
            c = x
            for r, i in zip(pos, I):
                t[r] = i
            for r, (u, y) in zip(others, combo):
                t[r] = u
                c = c * y
            _add(out, tuple(t), c)
    return TensorElement._raw(H, target_order, out)


def permute_legs(a: _Sparse, perm: tuple[int, ...]) -> _Sparse:
    """New leg r carries old leg perm[r] (0-based)."""
    if sorted(perm) != list(range(a.order)):
        raise ValueError(f"{perm} is not a permutation of the legs")
    out = {tuple(I[p] for p in perm): c for I, c in a.coeffs.items()}
    return type(a)._raw(a.H, a.order, out)


def flip_op(a: _Sparse) -> _Sparse:
    """a^op: swap the two tensor factors."""
    if a.order != 2:
        raise OrderMismatch("flip needs order 2")
    return permute_legs(a, (1, 0))


def _apply_leg(a: TensorElement, leg: int, images, new_order: int) -> TensorElement:
    if not 1 <= leg <= a.order:
        raise ValueError(f"invalid leg {leg} for order {a.order}")
    p = leg - 1
    out: dict = {}
    for I, x in a.coeffs.items():
        for img, c in images(I[p]):
            _add(out, I[:p] + img + I[p + 1:], x * c)
    return TensorElement._raw(a.H, new_order, out)


def apply_coproduct_leg(a: TensorElement, leg: int) -> TensorElement:
    H = a.H
    return _apply_leg(a, leg, lambda i: H.comul.get(i, {}).items(), a.order + 1)


def apply_counit_leg(a: TensorElement, leg: int) -> TensorElement:
    H = a.H
    return _apply_leg(a, leg, lambda i: [((), H.counit[i])] if H.counit[i] else [], a.order - 1)


def apply_antipode_leg(a: TensorElement, leg: int) -> TensorElement:
    H = a.H
    if H.antipode is None:
        raise MissingAntipode(f"{H.name} has no antipode")
    return _apply_leg(a, leg, lambda i: [((j,), c) for j, c in H.antipode.get(i, {}).items()], a.order)


def multiply_legs(a: TensorElement, leg: int) -> TensorElement:
    """Apply m to legs (leg, leg+1), lowering the order by one."""
    if not 1 <= leg < a.order:
        raise ValueError(f"invalid leg {leg} for order {a.order}")
    H = a.H
    p = leg - 1
    out: dict = {}
    for I, x in a.coeffs.items():
        for k, c in H.mul_items(I[p], I[p + 1]):
            _add(out, I[:p] + (k,) + I[p + 2:], x * c)
    return TensorElement._raw(H, a.order - 1, out)


def map_legs(a: TensorElement, f, codomain: FinBialgebra) -> TensorElement:
    """Apply a LinearMap H -> H' on every leg."""
    out: dict = {}
    for I, x in a.coeffs.items():
        for combo in product(*(f.cols[i].items() for i in I)):
            c = x
            for _, w in combo:
                c = c * w
            _add(out, tuple(k for k, _ in combo), c)
    return TensorElement(codomain, a.order, out)


def _index(t, n):
    r = 0
    for i in t:
        r = r * n + i
    return r


def _tuple(r, n, k):
    out = []
    for _ in range(k):
        r, i = divmod(r, n)
        out.append(i)
    return tuple(reversed(out))


def _basis_tuples(n, k):
    return product(range(n), repeat=k)


def _split_constant(a: _Sparse):
    """Split coefficients over Q[h]/(h^N) into the h^0 part and the rest."""
    f = a.H.field
    lo, hi = {}, {}
    for t, c in a.coeffs.items():
        c0 = f.coerce(c.c[0])
        if c0:
            lo[t] = c0
        rest = c - c0
        if rest:
            hi[t] = rest
    return type(a)._raw(a.H, a.order, lo), type(a)._raw(a.H, a.order, hi)


def _left_mul_system(a: TensorElement):
    H, k = a.H, a.order
    n = H.dim
    N = n**k
    cols = []
    for J in _basis_tuples(n, k):
        e = TensorElement._raw(H, k, {J: H.field.one})
        cols.append({_index(t, n): c for t, c in tensor_mul(a, e).coeffs.items()})
    rows: list[dict] = [dict() for _ in range(N)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return rows, N


def invert_in_tensor_algebra(a: TensorElement) -> TensorElement:
    """Two-sided inverse in H^{⊗k}, by solving with the left-multiplication matrix."""
    H, k = a.H, a.order
    if isinstance(H.field, TruncatedPolynomials) and any(any(c.c[1:]) for c in a.coeffs.values()):
        # a = a0 + n with n divisible by the variable: geometric series.
        a0, nil = _split_constant(a)
        b0 = invert_in_tensor_algebra(a0)
        step = -tensor_mul(b0, nil)
        term = b0
        out = b0
        for _ in range(1, H.field.order):
            term = tensor_mul(step, term)
            out = out + term
        b = out
    else:
        rows, N = _left_mul_system(a)
        target = one(H, k)
        rhs = [target.coeffs.get(_tuple(i, H.dim, k), 0) for i in range(N)]
        try:
            x, r = solve(rows, rhs, N)
        except ZeroDivisionError as exc:
            raise NotInvertible("pivot is not a unit") from exc
        if x is None or r < N:
            raise NotInvertible(f"left multiplication by the element is singular (rank {r} < {N})")
        b = TensorElement(H, k, {_tuple(j, H.dim, k): v for j, v in x.items()})
    u = one(H, k)
    if tensor_mul(a, b) != u or tensor_mul(b, a) != u:
        raise NotInvertible("one-sided inverse is not two-sided")
    return b


# forms


def evaluate(f: MultiForm, a: TensorElement):
    if f.order != a.order:
        raise OrderMismatch("form and element orders differ")
    s = f.H.field.zero
    small, big = (f.coeffs, a.coeffs) if len(f.coeffs) <= len(a.coeffs) else (a.coeffs, f.coeffs)
    for t, x in small.items():
        y = big.get(t)
        if y is not None:
            s = s + x * y
    return s


def tensor_coproduct_pairs(H: FinBialgebra, k: int):
    """Δ on the coalgebra H^{⊗k}: I -> list of (I1, I2, c)."""
    key = ("copairs", k)
    cache = H._cache
    if key not in cache:
        table = {}
        for I in _basis_tuples(H.dim, k):
            acc: dict = {}
            for combo in product(*(H.comul.get(i, {}).items() for i in I)):
                c = H.field.one
                for _, w in combo:
                    c = c * w
                I1 = tuple(p[0] for p, _ in combo)
                I2 = tuple(p[1] for p, _ in combo)
                _add(acc, (I1, I2), c)
            table[I] = [(I1, I2, c) for (I1, I2), c in acc.items()]
        cache[key] = table
    return cache[key]


def convolution_mul(f: MultiForm, g: MultiForm) -> MultiForm:
    """(f*g)(c) = f(c₁)g(c₂) on the tensor-product coalgebra."""
    f._same(g)
    H, k = f.H, f.order
    out: dict = {}
    fc, gc = f.coeffs, g.coeffs
    for I, pairs in tensor_coproduct_pairs(H, k).items():
        s = 0
        for I1, I2, c in pairs:
            x = fc.get(I1)
            if x is None:
                continue
            y = gc.get(I2)
            if y is None:
                continue
            s = s + x * y * c
        if s:
            out[I] = s
    return MultiForm._raw(H, k, out)


def conv_all(*factors: MultiForm) -> MultiForm:
    out = factors[0]
    for f in factors[1:]:
        out = convolution_mul(out, f)
    return out


def convolution_invert(f: MultiForm) -> MultiForm:
    """Two-sided convolution inverse, by an exact linear solve."""
    H, k = f.H, f.order
    if isinstance(H.field, TruncatedPolynomials) and any(any(c.c[1:]) for c in f.coeffs.values()):
        f0, nil = _split_constant(f)
        g0 = convolution_invert(f0)
        step = -convolution_mul(g0, nil)
        term = out = g0
        for _ in range(1, H.field.order):
            term = convolution_mul(step, term)
            out = out + term
        g = out
    else:
        n = H.dim
        N = n**k
        rows: list[dict] = [dict() for _ in range(N)]
        # (f*x)(I) = Σ f(I1) c x(I2)
        for I, pairs in tensor_coproduct_pairs(H, k).items():
            r = rows[_index(I, n)]
            for I1, I2, c in pairs:
                x = f.coeffs.get(I1)
                if x is not None:
                    _add(r, _index(I2, n), x * c)
        unit = counit_form(H, k)
        rhs = [unit.coeffs.get(_tuple(i, n, k), 0) for i in range(N)]
        try:
            x, _ = solve(rows, rhs, N)
        except ZeroDivisionError as exc:
            raise NotConvInvertible("pivot is not a unit") from exc
        if x is None:
            raise NotConvInvertible("the convolution system f*x = ε is inconsistent")
        g = MultiForm(H, k, {_tuple(j, n, k): v for j, v in x.items()})
    unit = counit_form(H, k)
    if convolution_mul(f, g) != unit or convolution_mul(g, f) != unit:
        raise NotConvInvertible("no two-sided convolution inverse")
    return g


def form_leg_embed(f: MultiForm, target_order: int, legs: tuple[int, ...]) -> MultiForm:
    """f placed on the given legs, ε on the others: f₁₃(a⊗b⊗c) = ε(b) f(a⊗c)."""
    legs = tuple(legs)
    if len(legs) != f.order or any(p < 1 or p > target_order for p in legs) or any(p >= q for p, q in zip(legs, legs[1:])):
        raise ValueError(f"invalid leg positions {legs}")
    H = f.H
    pos = [p - 1 for p in legs]
    others = [r for r in range(target_order) if r not in pos]
    nz = [(i, c) for i, c in enumerate(H.counit) if c]
    out: dict = {}
    for I, x in f.coeffs.items():
        for combo in product(nz, repeat=len(others)):
            t = [0] * target_order
            c = x
            for r, i in zip(pos, I):
                t[r] = i
            for r, (u, y) in zip(others, combo):
                t[r] = u
                c = c * y
            t = tuple(t)
            out[t] = out.get(t, 0) + c
    return MultiForm._raw(H, target_order, {t: c for t, c in out.items() if c})


def precompose_multiply(f: MultiForm, leg: int) -> MultiForm:
    """f∘(Id⊗..⊗m⊗..⊗Id) with m acting on legs (leg, leg+1): order goes up by one."""
    H = f.H
    if not 1 <= leg <= f.order:
        raise ValueError(f"invalid leg {leg}")
    p = leg - 1
    out: dict = {}
    n = H.dim
    for I in _basis_tuples(n, f.order + 1):
        s = 0
        for k, c in H.mul_items(I[p], I[p + 1]):
            x = f.coeffs.get(I[:p] + (k,) + I[p + 2:])
            if x is not None:
                s = s + x * c
        if s:
            out[I] = s
    return MultiForm._raw(H, f.order + 1, out)


def precompose_antipode(f: MultiForm, legs: Iterable[int]) -> MultiForm:
    """f∘(S on the given legs)."""
    H = f.H
    if H.antipode is None:
        raise MissingAntipode(f"{H.name} has no antipode")
    # (f∘S_p)(e_I) = Σ_j S[I_p][j] f(I with j at p)
    cur = f
    for leg in legs:
        p = leg - 1
        out: dict = {}
        for I in _basis_tuples(H.dim, f.order):
            s = 0
            for j, c in H.antipode.get(I[p], {}).items():
                x = cur.coeffs.get(I[:p] + (j,) + I[p + 1:])
                if x is not None:
                    s = s + x * c
            if s:
                out[I] = s
        cur = MultiForm._raw(H, f.order, out)
    return cur


def form_as_vector(f: _Sparse) -> dict:
    n = f.H.dim
    return {_index(t, n): c for t, c in f.coeffs.items()}


def vector_as(kind, H: FinBialgebra, k: int, vec: Mapping):
    n = H.dim
    return kind(H, k, {_tuple(i, n, k): c for i, c in vec.items()})


def truncated_part(a: _Sparse, degree: int) -> _Sparse:
    """Coefficient of var^degree, read back as a constant in the same ring."""
    f = a.H.field
    out = {}
    for t, c in a.coeffs.items():
        if isinstance(c, TruncPoly):
            x = c.c[degree] if degree < len(c.c) else 0
        else:
            x = c if degree == 0 else 0
        if x:
            out[t] = f.coerce(x)
    return type(a)._raw(a.H, a.order, out)
