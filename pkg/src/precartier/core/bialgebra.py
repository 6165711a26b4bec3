"""Finite-dimensional bialgebras given by sparse structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .report import AxiomReport
from .scalars import QQ, RatFunc, TruncPoly, _Domain

TENSOR = "⊗"


class StructureError(ValueError):
    """Malformed structure constants (bad index, wrong scalar type, ...)."""


class InvalidBialgebra(ValueError):
    def __init__(self, report: AxiomReport):
        bad = ", ".join(v.name for v in report.failures())
        super().__init__(f"bialgebra axioms fail: {bad}")
        self.report = report


class MissingAntipode(ValueError):
    pass


def _negative(c) -> bool:
    if isinstance(c, Fraction):
        return c < 0
    if isinstance(c, RatFunc):
        return c.is_constant() and c.constant() < 0
    if isinstance(c, TruncPoly):
        return not any(c.c[1:]) and c.c[0] < 0
    return False


def format_combination(terms: Iterable[tuple[str, object]]) -> str:
    """Render Σ c·label with exact coefficients, e.g. ``1/2*1⊗1 - xg⊗x``."""
    out = []
    for label, c in terms:
        if not c:
            continue
        sign = "-" if _negative(c) else "+"
        mag = -c if sign == "-" else c
        if not label:
            body = str(mag)
        elif mag == 1:
            body = label
        else:
            s = str(mag)
            if " " in s:
                s = f"({s})"
            body = f"{s}*{label}"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


class FinBialgebra:
    """Bialgebra with basis e_0..e_{n-1}.

    mul[(i, j)] = {k: c} means e_i e_j = Σ c e_k; comul[i] = {(j, k): c}
    means Δ(e_i) = Σ c e_j⊗e_k; antipode[i] = {j: c} means S(e_i) = Σ c e_j.
    """

    def __init__(
        self,
        field: _Domain,
        labels: list[str],
        mul: Mapping,
        unit: Mapping,
        comul: Mapping,
        counit,
        antipode: Mapping | None = None,
        name: str = "H",
    ):
        self.field = field
        labels = list(labels)
        if not labels:
            raise StructureError("basis must be nonempty")
        if len(set(labels)) != len(labels) or not all(isinstance(s, str) and s for s in labels):
            raise StructureError("basis labels must be distinct nonempty strings")
        self.labels = labels
        self.dim = n = len(labels)
        self.name = name

        def idx(i, where):
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
                raise StructureError(f"{where}: index {i!r} out of range 0..{n - 1}")
            return i

        def coef(c, where):
            try:
                if isinstance(c, str):
                    return field.parse(c)
                if not (field.contains(c) or isinstance(c, (int, Fraction))) or isinstance(c, bool):
                    raise TypeError
                return field.coerce(c)
            except (TypeError, ValueError) as exc:
                raise StructureError(f"{where}: coefficient {c!r} is not in {field.describe()}") from exc

        self.mul: dict[tuple[int, int], dict[int, object]] = {}
        for key, vec in mul.items():
            i, j = key
            key = (idx(i, "mul"), idx(j, "mul"))
            d = {idx(k, "mul"): coef(c, f"mul[{i},{j},{k}]") for k, c in vec.items()}
            d = {k: c for k, c in d.items() if c}
            if d:
                self.mul[key] = d
        self.unit = {idx(k, "unit"): coef(c, f"unit[{k}]") for k, c in unit.items()}
        self.unit = {k: c for k, c in self.unit.items() if c}
        self.comul: dict[int, dict[tuple[int, int], object]] = {}
        for i, vec in comul.items():
            idx(i, "comul")
            d = {}
            for (j, k), c in vec.items():
                d[(idx(j, "comul"), idx(k, "comul"))] = coef(c, f"comul[{i},{j},{k}]")
            d = {p: c for p, c in d.items() if c}
            if d:
                self.comul[i] = d
        counit = list(counit)
        if len(counit) != n:
            raise StructureError(f"counit must have {n} entries")
        self.counit = tuple(coef(c, f"counit[{k}]") for k, c in enumerate(counit))
        self.antipode = None
        if antipode is not None:
            self.antipode = {}
            for i, vec in antipode.items():
                idx(i, "antipode")
                d = {idx(j, "antipode"): coef(c, f"antipode[{i},{j}]") for j, c in vec.items()}
                d = {j: c for j, c in d.items() if c}
                if d:
                    self.antipode[i] = d
        self._index = {s: i for i, s in enumerate(labels)}
        self._valid: AxiomReport | None = None
        self._cache: dict = {}

    @classmethod
    def from_triples(cls, field, labels, mul, unit, comul, counit, antipode=None, name="H") -> FinBialgebra:
        """Build from [i, j, k, c] lists as used by the file format."""
        m: dict = {}
        for entry in mul:
            i, j, k, c = _unpack(entry, 4, "mul")
            m.setdefault((i, j), {})[k] = c
        d: dict = {}
        for entry in comul:
            i, j, k, c = _unpack(entry, 4, "comul")
            d.setdefault(i, {})[(j, k)] = c
        s = None
        if antipode is not None:
            s = {}
            for entry in antipode:
                i, j, c = _unpack(entry, 3, "antipode")
                s.setdefault(i, {})[j] = c
        unit = list(unit)
        if len(unit) != len(labels):
            raise StructureError(f"unit must have {len(labels)} entries")
        return cls(field, labels, m, dict(enumerate(unit)), d, counit, s, name)

    # basic evaluation

    @property
    def has_antipode(self) -> bool:
        return self.antipode is not None

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no basis element {label!r} in {self.name}") from None

    def label(self, tup) -> str:
        return TENSOR.join(self.labels[i] for i in tup)

    def format(self, vec: Mapping) -> str:
        """Render a sparse vector keyed by ints or index tuples."""
        items = []
        for key in sorted(vec):
            tup = key if isinstance(key, tuple) else (key,)
            items.append((self.label(tup), vec[key]))
        return format_combination(items)

    def mul_items(self, i: int, j: int):
        return self.mul.get((i, j), {}).items()

    def product(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in self.mul_items(i, j):
                    w = out.get(k, 0) + ab * c
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def coproduct(self, u: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for p, c in self.comul.get(i, {}).items():
                w = out.get(p, 0) + a * c
                if w:
                    out[p] = w
                else:
                    out.pop(p, None)
        return out

    def eps(self, u: Mapping):
        s = self.field.zero
        for i, a in u.items():
            s = s + a * self.counit[i]
        return s

    def apply_S(self, u: Mapping) -> dict:
        if self.antipode is None:
            raise MissingAntipode(f"{self.name} has no antipode")
        out: dict = {}
        for i, a in u.items():
            for j, c in self.antipode.get(i, {}).items():
                w = out.get(j, 0) + a * c
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
        return out

    def one(self) -> dict:
        return dict(self.unit)

    def basis_vec(self, i: int) -> dict:
        return {i: self.field.one}

    # validity

    def ensure_valid(self) -> FinBialgebra:
        if self._valid is None:
            self._valid = validate_bialgebra(self)
        if not self._valid.ok:
            raise InvalidBialgebra(self._valid)
        return self

    def lift(self, field: _Domain, name: str | None = None) -> FinBialgebra:
        """Same structure constants read in a larger scalar domain."""
        s = None
        if self.antipode is not None:
            s = {i: {j: field.coerce(_const(c)) for j, c in v.items()} for i, v in self.antipode.items()}
        return FinBialgebra(
            field,
            self.labels,
            {p: {k: field.coerce(_const(c)) for k, c in v.items()} for p, v in self.mul.items()},
            {k: field.coerce(_const(c)) for k, c in self.unit.items()},
            {i: {p: field.coerce(_const(c)) for p, c in v.items()} for i, v in self.comul.items()},
            [field.coerce(_const(c)) for c in self.counit],
            s,
            name or self.name,
        )

    def _key(self):
        return (
            self.field.spec,
            tuple(self.labels),
            self.name,
            sorted(self.mul.items()),
            sorted(self.unit.items()),
            sorted((i, sorted(v.items())) for i, v in self.comul.items()),
            self.counit,
            None if self.antipode is None else sorted((i, sorted(v.items())) for i, v in self.antipode.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, FinBialgebra):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.dim, tuple(self.labels)))

    def __repr__(self):
        return f"FinBialgebra({self.name!r}, dim={self.dim}, field={self.field.describe()})"


def _const(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, RatFunc):
        return c.constant()
    if isinstance(c, TruncPoly):
        if any(c.c[1:]):
            raise ValueError("cannot lift a non-constant coefficient")
        return c.c[0]
    return c


def _unpack(entry, n, where):
    if not isinstance(entry, (list, tuple)) or len(entry) != n:
        raise StructureError(f"{where}: entries must have {n} components, got {entry!r}")
    return entry


# tensor-level helpers over index tuples, used by the validator


def _add(out: dict, key, val):
    w = out.get(key, 0) + val
    if w:
        out[key] = w
    else:
        out.pop(key, None)


def _on_leg(H, vec: dict, leg: int, fn) -> dict:
    """Apply a linear map (basis index -> {tuple: c}) to one leg of a tuple vector."""
    out: dict = {}
    for t, a in vec.items():
        for img, c in fn(t[leg]).items():
            _add(out, t[:leg] + img + t[leg + 1:], a * c)
    return out


def _delta(H):
    return lambda i: H.comul.get(i, {})


def _eps(H):
    return lambda i: {(): H.counit[i]} if H.counit[i] else {}


def _fmt_pair(H, lhs: dict, rhs: dict, at: str) -> dict:
    return {"at": at, "lhs": H.format(lhs), "rhs": H.format(rhs)}


def validate_bialgebra(H: FinBialgebra) -> AxiomReport:
    """Check every bialgebra axiom on all basis tuples."""
    rep = AxiomReport(f"bialgebra {H.name}")
    n = H.dim
    e = H.basis_vec
    one = H.one()

    def first(name, cases):
        for at, lhs, rhs in cases:
            if lhs != rhs:
                return rep.add(name, False, _fmt_pair(H, lhs, rhs, at))
        return rep.add(name, True)

    def assoc():
        for i, j, k in product(range(n), repeat=3):
            yield (
                H.label((i, j, k)),
                H.product(H.product(e(i), e(j)), e(k)),
                H.product(e(i), H.product(e(j), e(k))),
            )

    def unit():
        for i in range(n):
            yield H.labels[i], H.product(one, e(i)), e(i)
            yield H.labels[i], H.product(e(i), one), e(i)

    def tup(vec):
        return {(k,): c for k, c in vec.items()}

    def coassoc():
        for i in range(n):
            d = H.coproduct(e(i))
            yield H.labels[i], _on_leg(H, d, 0, _delta(H)), _on_leg(H, d, 1, _delta(H))

    def counit():
        for i in range(n):
            d = H.coproduct(e(i))
            yield H.labels[i], _on_leg(H, d, 0, _eps(H)), tup(e(i))
            yield H.labels[i], _on_leg(H, d, 1, _eps(H)), tup(e(i))

    def pair_product(u: dict, v: dict) -> dict:
        out: dict = {}
        for (a, b), x in u.items():
            for (c, d), y in v.items():
                for k1, c1 in H.mul_items(a, c):
                    for k2, c2 in H.mul_items(b, d):
                        _add(out, (k1, k2), x * y * c1 * c2)
        return out

    def compat():
        for i, j in product(range(n), repeat=2):
            yield (
                H.label((i, j)),
                H.coproduct(H.product(e(i), e(j))),
                pair_product(H.coproduct(e(i)), H.coproduct(e(j))),
            )

    def counit_mult():
        for i, j in product(range(n), repeat=2):
            lhs = H.eps(H.product(e(i), e(j)))
            rhs = H.counit[i] * H.counit[j]
            yield H.label((i, j)), {(): lhs} if lhs else {}, {(): rhs} if rhs else {}

    def unit_coproduct():
        yield "1", H.coproduct(one), {(a, b): x * y for a, x in one.items() for b, y in one.items() if x * y}
        u = H.eps(one)
        yield "1", {(): u} if u else {}, {(): H.field.one}

    first("assoc", assoc())
    first("unit", unit())
    first("coassoc", coassoc())
    first("counit", counit())
    first("compat", compat())
    first("counit_mult", counit_mult())
    first("unit_coproduct", unit_coproduct())
    if H.antipode is not None:

        def antipode():
            for i in range(n):
                d = H.coproduct(e(i))
                target = {k: H.counit[i] * c for k, c in one.items() if H.counit[i] * c}
                left: dict = {}
                right: dict = {}
                for (a, b), x in d.items():
                    for k, c in H.product(H.apply_S(e(a)), e(b)).items():
                        _add(left, k, x * c)
                    for k, c in H.product(e(a), H.apply_S(e(b))).items():
                        _add(right, k, x * c)
                yield H.labels[i], left, target
                yield H.labels[i], right, target

        first("antipode", antipode())
    return rep


def trivial_bialgebra(field=QQ, name="k") -> FinBialgebra:
    one = field.one
    return FinBialgebra(field, ["1"], {(0, 0): {0: one}}, {0: one}, {0: {(0, 0): one}}, [one], {0: {0: one}}, name)
