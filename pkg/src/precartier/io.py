"""JSON documents for bialgebras, elements, forms, maps, braided vector spaces and Lie data.

Every document carries ``format`` and ``version``. Coefficients are exact
strings; indices are 0-based. Element and form terms may name basis elements
by label instead of index.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .constructions import LieAlgebraData
from .core.bialgebra import FinBialgebra, StructureError
from .core.linalg import LinearMap
from .core.scalars import QQ, FieldSpec, ScalarParseError, make_field
from .core.tensors import MultiForm, TensorElement
from .frt import BraidedVS, diagonal_braiding

VERSION = 1
KINDS = ("bialgebra", "element", "form", "map", "braided", "lie")


class InputError(ValueError):
    """Malformed document: names the offending field."""


def _fmt(c) -> str:
    return str(c)


def _header(kind: str) -> dict:
    return {"format": f"precartier/{kind}", "version": VERSION}


def document_kind(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    fmt = doc.get("format")
    if not isinstance(fmt, str) or not fmt.startswith("precartier/"):
        raise InputError("missing or unknown 'format' (expected precartier/<kind>)")
    kind = fmt.split("/", 1)[1]
    if kind not in KINDS:
        raise InputError(f"unknown document kind {kind!r}")
    v = doc.get("version")
    if v != VERSION:
        raise InputError(f"unsupported version {v!r} (supported: {VERSION})")
    return kind


def _field(doc: dict):
    try:
        return make_field(FieldSpec.from_json(doc.get("field", {"kind": "rationals"})))
    except ValueError as exc:
        raise InputError(f"field: {exc}") from exc


def _req(doc: dict, key: str, typ=list):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, typ):
        raise InputError(f"field {key!r} must be a {typ.__name__}")
    return val


def _coef(F, text, where: str):
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise InputError(f"{where}: coefficient must be a string")
    try:
        return F.parse(text)
    except (ScalarParseError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from exc


# bialgebras


def bialgebra_to_json(H: FinBialgebra) -> dict:
    doc = _header("bialgebra")
    doc["name"] = H.name
    doc["field"] = H.field.spec.to_json()
    doc["basis"] = list(H.labels)
    doc["mul"] = [[i, j, k, _fmt(c)] for (i, j), v in sorted(H.mul.items()) for k, c in sorted(v.items())]
    doc["unit"] = [_fmt(H.unit.get(k, H.field.zero)) for k in range(H.dim)]
    doc["comul"] = [[i, j, k, _fmt(c)] for i, v in sorted(H.comul.items()) for (j, k), c in sorted(v.items())]
    doc["counit"] = [_fmt(c) for c in H.counit]
    if H.antipode is not None:
        doc["antipode"] = [[i, j, _fmt(c)] for i, v in sorted(H.antipode.items()) for j, c in sorted(v.items())]
    return doc


def _entries(doc, key, n, F):
    out = []
    for pos, entry in enumerate(_req(doc, key)):
        where = f"{key}[{pos}]"
        if not isinstance(entry, list) or len(entry) != n:
            raise InputError(f"{where}: expected a list of {n - 1} indices and a coefficient")
        idx = entry[:-1]
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise InputError(f"{where}: indices must be integers")
        out.append((*idx, _coef(F, entry[-1], where)))
    return out


def bialgebra_from_json(doc: dict) -> FinBialgebra:
    if document_kind(doc) != "bialgebra":
        raise InputError("expected a bialgebra document")
    F = _field(doc)
    labels = _req(doc, "basis")
    n = len(labels)
    unit = [_coef(F, c, f"unit[{k}]") for k, c in enumerate(_req(doc, "unit"))]
    counit = [_coef(F, c, f"counit[{k}]") for k, c in enumerate(_req(doc, "counit"))]
    if len(unit) != n or len(counit) != n:
        raise InputError(f"unit and counit must have {n} entries")
    anti = _entries(doc, "antipode", 3, F) if "antipode" in doc else None
    try:
        return FinBialgebra.from_triples(
            F,
            labels,
            _entries(doc, "mul", 4, F),
            unit,
            _entries(doc, "comul", 4, F),
            counit,
            anti,
            doc.get("name", "H"),
        )
    except StructureError as exc:
        raise InputError(str(exc)) from exc


# elements and forms


def _tensor_to_json(a, kind: str) -> dict:
    doc = _header(kind)
    doc["order"] = a.order
    doc["terms"] = [[*t, _fmt(c)] for t, c in a.items()]
    return doc


def element_to_json(a: TensorElement) -> dict:
    return _tensor_to_json(a, "element")


def form_to_json(f: MultiForm) -> dict:
    return _tensor_to_json(f, "form")


def _tensor_from_json(doc: dict, H: FinBialgebra, kind: str):
    if document_kind(doc) != kind:
        raise InputError(f"expected a {kind} document")
    order = _req(doc, "order", int)
    coeffs: dict = {}
    for pos, entry in enumerate(_req(doc, "terms")):
        where = f"terms[{pos}]"
        if not isinstance(entry, list) or len(entry) != order + 1:
            raise InputError(f"{where}: expected {order} indices and a coefficient")
        key = []
        for i in entry[:-1]:
            if isinstance(i, str):
                try:
                    i = H.index(i)
                except KeyError as exc:
                    raise InputError(f"{where}: {exc.args[0]}") from None
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < H.dim:
                raise InputError(f"{where}: index {i!r} out of range 0..{H.dim - 1}")
            key.append(i)
        c = _coef(H.field, entry[-1], where)
        t = tuple(key)
        coeffs[t] = coeffs.get(t, H.field.zero) + c
    cls = TensorElement if kind == "element" else MultiForm
    return cls(H, order, coeffs)


def element_from_json(doc: dict, H: FinBialgebra) -> TensorElement:
    return _tensor_from_json(doc, H, "element")


def form_from_json(doc: dict, H: FinBialgebra) -> MultiForm:
    return _tensor_from_json(doc, H, "form")


# linear maps between bialgebras


def map_to_json(f: LinearMap, field=QQ) -> dict:
    doc = _header("map")
    doc["field"] = field.spec.to_json()
    doc["domain_dim"] = f.domain_dim
    doc["codomain_dim"] = f.codomain_dim
    doc["entries"] = [[j, i, _fmt(c)] for j, col in enumerate(f.cols) for i, c in sorted(col.items())]
    return doc


def map_from_json(doc: dict) -> LinearMap:
    """entries [j, i, c]: e_j ↦ … + c e_i."""
    if document_kind(doc) != "map":
        raise InputError("expected a map document")
    F = _field(doc)
    m, n = _req(doc, "domain_dim", int), _req(doc, "codomain_dim", int)
    cols: list[dict] = [{} for _ in range(m)]
    for j, i, c in _entries(doc, "entries", 3, F):
        if not (0 <= j < m and 0 <= i < n):
            raise InputError(f"entries: index ({j}, {i}) out of range")
        cols[j][i] = cols[j].get(i, F.zero) + c
    return LinearMap(m, n, cols)


# braided vector spaces


def braided_to_json(bvs: BraidedVS) -> dict:
    doc = _header("braided")
    doc["name"] = bvs.name
    doc["field"] = bvs.field.spec.to_json()
    doc["dim"] = bvs.dim

    def flat(op):
        return [[i, j, k, l, _fmt(c)] for (i, j), v in sorted(op.items()) for (k, l), c in sorted(v.items())]

    doc["c"] = flat(bvs.c)
    if bvs.t is not None:
        doc["t"] = flat(bvs.t)
    return doc


def _op(doc, key, F, N):
    op: dict = {}
    for i, j, k, l, c in _entries(doc, key, 5, F):
        if not all(0 <= x < N for x in (i, j, k, l)):
            raise InputError(f"{key}: index ({i},{j},{k},{l}) out of range 0..{N - 1}")
        vec = op.setdefault((i, j), {})
        vec[(k, l)] = vec.get((k, l), F.zero) + c
    return op


def braided_from_json(doc: dict) -> BraidedVS:
    if document_kind(doc) != "braided":
        raise InputError("expected a braided document")
    F = _field(doc)
    name = doc.get("name", "V")
    try:
        if "q_matrix" in doc:
            if "c" in doc:
                raise InputError("give either 'c' or 'q_matrix', not both")
            q = _matrix(doc, "q_matrix", F)
            N = len(q)
            if doc.get("dim", N) != N:
                raise InputError("dim does not match q_matrix")
            p = _matrix(doc, "p_matrix", F) if "p_matrix" in doc else None
            if p is not None and len(p) != N:
                raise InputError("p_matrix must have the size of q_matrix")
            bvs = diagonal_braiding(q, p, F)
            if "t" in doc:
                if p is not None:
                    raise InputError("give either 't' or 'p_matrix', not both")
                bvs = bvs.with_t(_op(doc, "t", F, N))
            bvs.name = name
            return bvs
        N = _req(doc, "dim", int)
        if N < 1:
            raise InputError("dim must be positive")
        t = _op(doc, "t", F, N) if "t" in doc else None
        return BraidedVS(N, _op(doc, "c", F, N), t, F, name)
    except InputError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from exc


def _matrix(doc, key, F):
    rows = _req(doc, key)
    if not rows or not all(isinstance(r, list) and len(r) == len(rows) for r in rows):
        raise InputError(f"{key} must be a square list of lists")
    return [[_coef(F, c, f"{key}[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(rows)]


# Lie data


def lie_to_json(g: LieAlgebraData, r: dict | None = None) -> dict:
    doc = _header("lie")
    doc["field"] = g.field.spec.to_json()
    doc["basis"] = list(g.labels)
    doc["bracket"] = [[i, j, k, _fmt(c)] for (i, j), v in sorted(g.bracket.items()) for k, c in sorted(v.items())]
    if r is not None:
        doc["r"] = [[i, j, _fmt(c)] for (i, j), c in sorted(r.items())]
    return doc


def lie_from_json(doc: dict) -> tuple[LieAlgebraData, dict | None]:
    if document_kind(doc) != "lie":
        raise InputError("expected a lie document")
    F = _field(doc)
    labels = _req(doc, "basis")
    n = len(labels)
    br: dict = {}
    for i, j, k, c in _entries(doc, "bracket", 4, F):
        if not all(0 <= x < n for x in (i, j, k)):
            raise InputError(f"bracket: index ({i},{j},{k}) out of range")
        if c:
            br.setdefault((i, j), {})[k] = c
    r = None
    if "r" in doc:
        r = {}
        for i, j, c in _entries(doc, "r", 3, F):
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"r: index ({i},{j}) out of range")
            if c:
                r[(i, j)] = r.get((i, j), F.zero) + c
    return LieAlgebraData(list(labels), br, F), r


# files


def _compact(x) -> str:
    return json.dumps(x, ensure_ascii=False)


def dumps(doc: dict) -> str:
    """One key per line; lists of entries get one entry per line."""
    lines = ["{"]
    items = list(doc.items())
    for n, (k, v) in enumerate(items):
        tail = "," if n < len(items) - 1 else ""
        if isinstance(v, list) and v and all(isinstance(e, list) for e in v):
            lines.append(f"  {_compact(k)}: [")
            lines.extend(f"    {_compact(e)}{',' if m < len(v) - 1 else ''}" for m, e in enumerate(v))
            lines.append(f"  ]{tail}")
        else:
            lines.append(f"  {_compact(k)}: {_compact(v)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def write_document(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def fixture_text(name: str) -> str:
    return resources.files("precartier").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> dict:
    return json.loads(fixture_text(name))
