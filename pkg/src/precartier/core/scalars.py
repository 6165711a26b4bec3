"""Exact scalars: rationals, rational functions in one variable, truncated polynomials.

Every scalar type supports +, -, *, / against its own kind and against
``int``/``Fraction``, compares equal to those when constant, hashes
consistently with them, and is falsy exactly when zero.  Generic code in
the rest of the package relies only on that protocol plus the methods of
the domain objects below.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import flint

RATIONALS = "rationals"
RATFUNC = "rational-functions-in-one-variable"
TRUNCATED = "truncated-polynomials"
KINDS = (RATIONALS, RATFUNC, TRUNCATED)

_MAX_EXPONENT = 4096


class ScalarParseError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    variable_name: str | None = None
    truncation_order: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == RATIONALS:
            if self.variable_name is not None or self.truncation_order is not None:
                raise ValueError("rationals take no variable or truncation order")
            return
        if not self.variable_name or not self.variable_name.isidentifier():
            raise ValueError(f"bad variable name {self.variable_name!r}")
        if self.kind == TRUNCATED:
            if not isinstance(self.truncation_order, int) or self.truncation_order < 1:
                raise ValueError("truncation order must be a positive integer")
        elif self.truncation_order is not None:
            raise ValueError("rational functions take no truncation order")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.variable_name is not None:
            out["variable"] = self.variable_name
        if self.truncation_order is not None:
            out["truncation"] = self.truncation_order
        return out

    @classmethod
    def from_json(cls, data) -> FieldSpec:
        if not isinstance(data, dict) or "kind" not in data:
            raise ValueError("field must be an object with a 'kind'")
        extra = set(data) - {"kind", "variable", "truncation"}
        if extra:
            raise ValueError(f"unexpected field keys {sorted(extra)}")
        return cls(data["kind"], data.get("variable"), data.get("truncation"))


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _poly_terms(coeffs, var, descending):
    """Render (degree, Fraction) pairs as a signed sum, e.g. ``3*s^2 - s + 1/2``."""
    items = [(k, c) for k, c in enumerate(coeffs) if c]
    if descending:
        items.reverse()
    if not items:
        return "0", 0
    parts = []
    for n, (k, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        if n == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts), len(items)


class RatFunc:
    """Element of Q(var), kept as num/den with gcd 1 and den monic."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var="s", _reduced=False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([_fmpq(num)])
        if den is None:
            den = flint.fmpq_poly([1])
        elif not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly([_fmpq(den)])
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                den = flint.fmpq_poly([1])
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num // g
                        den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    inv = 1 / lc
                    num = num * inv
                    den = den * inv
        self.num = num
        self.den = den
        self.var = var

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(other, var=self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.var)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.var, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc(0, var=self.var)
            return RatFunc(self.num * _fmpq(other), self.den, self.var, _reduced=True)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den, self.var)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, self.var, _reduced=True)

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _frac(self.num.coeffs()[0]) if not self.num.is_zero() else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash((tuple(map(_frac, self.num.coeffs())), tuple(map(_frac, self.den.coeffs()))))

    def evaluate(self, point) -> Fraction:
        p = _fmpq(point)
        d = self.den(p)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {point}")
        return _frac(self.num(p) / d)

    def __str__(self):
        n, nterms = _poly_terms([_frac(c) for c in self.num.coeffs()], self.var, True)
        if self.den.degree() == 0:
            return n
        d, dterms = _poly_terms([_frac(c) for c in self.den.coeffs()], self.var, True)
        if nterms > 1:
            n = f"({n})"
        if dterms > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


class TruncPoly:
    """Element of Q[var]/(var^N) as a coefficient tuple of length N."""

    __slots__ = ("c", "var")

    def __init__(self, coeffs, var="h"):
        self.c = tuple(coeffs)
        self.var = var

    @property
    def order(self) -> int:
        return len(self.c)

    def _lift(self, other):
        if isinstance(other, TruncPoly):
            if len(other.c) != len(self.c):
                raise ValueError("mixing truncation orders")
            return other.c
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.c) - 1)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncPoly(tuple(a + b for a, b in zip(self.c, o)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(tuple(-a for a in self.c), self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncPoly(tuple(a - b for a, b in zip(self.c, o)), self.var)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncPoly(tuple(a * other for a in self.c), self.var)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        o = self._lift(other)
        n = len(self.c)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.c):
            if a:
                for j in range(n - i):
                    if o[j]:
                        out[i + j] += a * o[j]
        return TruncPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.c[0] != 0

    def inverse(self) -> TruncPoly:
        if not self.c[0]:
            raise ZeroDivisionError("not a unit in the truncated ring")
        n = len(self.c)
        inv = [Fraction(0)] * n
        inv[0] = 1 / self.c[0]
        for k in range(1, n):
            s = sum((self.c[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s * inv[0]
        return TruncPoly(tuple(inv), self.var)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * TruncPoly(o, self.var).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncPoly(o, self.var) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncPoly((Fraction(1),) + (Fraction(0),) * (len(self.c) - 1), self.var)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def coefficient(self, k: int) -> Fraction:
        return self.c[k]

    def __str__(self):
        return _poly_terms(self.c, self.var, False)[0]

    def __repr__(self):
        return f"TruncPoly({self})"


class _Domain:
    """Shared parsing front end; subclasses supply the arithmetic."""

    spec: FieldSpec
    is_field = True

    def gen(self):
        raise ScalarParseError(f"{self.spec.kind} have no variable")

    def parse(self, text: str):
        if not isinstance(text, str):
            if isinstance(text, int) and not isinstance(text, bool):
                return self.coerce(text)
            raise ScalarParseError(f"coefficient must be a string, got {type(text).__name__}")
        src = text.strip().replace("^", "**")
        if not src:
            raise ScalarParseError("empty coefficient")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ScalarParseError(f"cannot parse {text!r}") from exc
        try:
            return self._eval(tree.body)
        except ZeroDivisionError as exc:
            raise ScalarParseError(f"division by a non-invertible value in {text!r} over {self.describe()}") from exc

    def _eval(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return self.coerce(node.value)
            raise ScalarParseError(f"only integer literals are allowed, got {node.value!r}")
        if isinstance(node, ast.Name):
            if node.id != self.spec.variable_name:
                raise ScalarParseError(f"unknown symbol {node.id!r} over {self.describe()}")
            return self.gen()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = self._exponent(node.right)
                base = self._eval(node.left)
                if k < 0:
                    return self.inv(base) ** (-k)
                return base**k
            a, b = self._eval(node.left), self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a * self.inv(b)
        raise ScalarParseError(f"unsupported syntax {ast.dump(node)[:40]}")

    def _exponent(self, node) -> int:
        neg = False
        while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            neg ^= isinstance(node.op, ast.USub)
            node = node.operand
        if not (isinstance(node, ast.Constant) and type(node.value) is int):
            raise ScalarParseError("exponents must be integer literals")
        if node.value > _MAX_EXPONENT:
            raise ScalarParseError("exponent too large")
        return -node.value if neg else node.value

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError("not invertible")
        return self.one / x

    def describe(self) -> str:
        return self.spec.kind

    def fmt(self, x) -> str:
        return str(self.coerce(x))

    def __repr__(self):
        return f"<{self.describe()}>"


class Rationals(_Domain):
    def __init__(self):
        self.spec = FieldSpec(RATIONALS)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, RatFunc) and x.is_constant():
            return x.constant()
        if isinstance(x, TruncPoly) and x == x.c[0]:
            return x.c[0]
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def is_unit(self, x) -> bool:
        return x != 0

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)


class RationalFunctions(_Domain):
    def __init__(self, var: str):
        self.spec = FieldSpec(RATFUNC, var)
        self.var = var
        self.zero = RatFunc(0, var=var)
        self.one = RatFunc(1, var=var)
        self._gen = RatFunc(flint.fmpq_poly([0, 1]), var=var)

    def gen(self):
        return self._gen

    def coerce(self, x):
        if isinstance(x, RatFunc):
            if x.var != self.var:
                raise TypeError(f"variable mismatch: {x.var} vs {self.var}")
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return RatFunc(x, var=self.var)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} to Q({self.var})")

    def is_unit(self, x) -> bool:
        return bool(x)

    def contains(self, x) -> bool:
        return isinstance(x, RatFunc) and x.var == self.var

    def describe(self) -> str:
        return f"Q({self.var})"


class TruncatedPolynomials(_Domain):
    is_field = False

    def __init__(self, var: str, order: int):
        self.spec = FieldSpec(TRUNCATED, var, order)
        self.var = var
        self.order = order
        zeros = (Fraction(0),) * order
        self.zero = TruncPoly(zeros, var)
        self.one = TruncPoly((Fraction(1),) + zeros[1:], var)
        self._gen = TruncPoly((Fraction(0), Fraction(1)) + zeros[2:], var) if order > 1 else self.zero

    def gen(self):
        return self._gen

    def coerce(self, x):
        if isinstance(x, TruncPoly):
            if len(x.c) != self.order or x.var != self.var:
                raise TypeError("truncated ring mismatch")
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return TruncPoly((Fraction(x),) + (Fraction(0),) * (self.order - 1), self.var)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} to Q[{self.var}]/({self.var}^{self.order})")

    def from_coefficients(self, coeffs) -> TruncPoly:
        coeffs = [Fraction(c) for c in coeffs][: self.order]
        coeffs += [Fraction(0)] * (self.order - len(coeffs))
        return TruncPoly(tuple(coeffs), self.var)

    def is_unit(self, x) -> bool:
        return self.coerce(x).is_unit()

    def contains(self, x) -> bool:
        return isinstance(x, TruncPoly) and len(x.c) == self.order and x.var == self.var

    def describe(self) -> str:
        return f"Q[{self.var}]/({self.var}^{self.order})"


@lru_cache(maxsize=None)
def make_field(spec: FieldSpec = FieldSpec()):
    if spec.kind == RATIONALS:
        return Rationals()
    if spec.kind == RATFUNC:
        return RationalFunctions(spec.variable_name)
    return TruncatedPolynomials(spec.variable_name, spec.truncation_order)


QQ = make_field(FieldSpec())


def rational_functions(var: str = "s") -> RationalFunctions:
    return make_field(FieldSpec(RATFUNC, var))


def truncated(var: str = "h", order: int = 3) -> TruncatedPolynomials:
    return make_field(FieldSpec(TRUNCATED, var, order))
