"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 bad input, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import io as pio
from .constructions import (
    CapExceeded,
    NotBialgebraMap,
    NotSurjective,
    UnknownBuiltin,
    builtin,
    group_algebra_Z2,
    group_algebra_Z2_R,
    lie_check,
    pushforward,
    sl2_r,
    sweedler,
    sweedler_chi,
    sweedler_R,
    sweedler_to_Z2,
    sweedler_twist,
    tensor_product_precartier,
)
from .coquasitri import (
    bar_apply,
    bar_cohomology_dim,
    classify_inf_rforms,
    co_precartier_suite,
    dualize_form_to_element,
    dualize_inf,
    dualize_qt,
    finite_dual,
)
from .core.bialgebra import FinBialgebra, InvalidBialgebra, StructureError, trivial_bialgebra, validate_bialgebra
from .core.report import AxiomReport
from .core.scalars import QQ, ScalarParseError, truncated
from .core.tensors import MultiForm, NotInvertible, TensorElement, one
from .frt import (
    ComponentCapExceeded,
    FRTWord,
    NotBraided,
    NotInfinitesimallyBraided,
    braid_report,
    check_descent,
    eval_chi,
    eval_R,
    eval_R_inv,
    flip_braiding,
    graded_frt,
    ibv_report,
    mq2_braiding,
    slq2_chi_obstruction,
)
from .quasitri import (
    InfRMatrix,
    InvalidStructure,
    QTStructure,
    cartier_report,
    check_antipode_identities,
    check_coactions,
    check_inf_rmatrix,
    check_quasitriangular,
    classify_inf_rmatrices,
    cobar_apply,
    cohomology_dim,
    is_coboundary,
    precartier_suite,
)
from .twist_deform import (
    DrinfeldTwist,
    check_hbar_quasitriangular,
    check_twist,
    extract_first_order,
    hbar_deform,
    twist_bialgebra,
    twist_inf,
    twist_qt,
)

REPORT_FORMAT = "precartier/report"

OK, CHECK_FAILED, INPUT_ERROR, CAP_EXCEEDED = 0, 1, 2, 3

ALGEBRA_BUILTINS = ("sweedler", "group_algebra_Z2", "trivial")
BRAIDED_BUILTINS = ("mq2", "flip")
AXIOMS = (
    "quasitriangular",
    "inf",
    "cartier",
    "q-commutation",
    "coactions",
    "antipode",
    "suite",
    "all",
)


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: list[str]
    verb: str
    exit_code: int = OK
    checks: list[AxiomReport] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "format": REPORT_FORMAT,
            "version": pio.VERSION,
            "command": list(self.command),
            "verb": self.verb,
            "exit_code": self.exit_code,
            "checks": [r.to_json() for r in self.checks],
            "results": self.results,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_json(cls, doc: dict) -> RunReport:
        if doc.get("format") != REPORT_FORMAT:
            raise pio.InputError("not a report document")
        return cls(
            list(doc["command"]),
            doc["verb"],
            doc["exit_code"],
            [AxiomReport.from_json(r) for r in doc["checks"]],
            doc["results"],
            doc.get("error"),
        )

    def render_text(self) -> str:
        lines = []
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for r in self.checks:
            lines.append(r.render())
        hidden = {"summary", "dim", "basis"} if "summary" in self.results else set()
        for key, val in self.results.items():
            if key in hidden:
                continue
            if isinstance(val, (dict, list)):
                val = json.dumps(val, ensure_ascii=False)
            lines.append(f"{key}: {val}")
        if "summary" in self.results:
            lines.append(self.results["summary"])
        return "\n".join(lines)


# argument parsing


def _scalar(text: str):
    try:
        return QQ.parse(text)
    except (ScalarParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_source(p: argparse.ArgumentParser, suffix: str = "", with_params: bool = True) -> None:
    p.add_argument(f"--builtin{suffix}", metavar="NAME", help="builtin structure: " + ", ".join(ALGEBRA_BUILTINS))
    p.add_argument(f"--algebra{suffix}", metavar="FILE", help="bialgebra document")
    p.add_argument(f"--R{suffix}", metavar="FILE", dest=f"R{suffix.replace('-', '_')}", help="R-matrix element document")
    p.add_argument(f"--chi{suffix}", metavar="FILE", dest=f"chi{suffix.replace('-', '_')}", help="χ element document")
    if with_params:
        p.add_argument("--lambda", dest="lam", type=_scalar, help="λ in R_λ (Sweedler)")
        p.add_argument("--alpha", type=_scalar, help="α in χ_α (Sweedler)")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="precartier", description="Exact checks for pre-Cartier (co)quasitriangular bialgebras.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="parse and validate a document")
    p.add_argument("file")
    p.add_argument("--algebra", metavar="FILE", help="bialgebra for element/form documents")
    p.add_argument("--domain", metavar="FILE")
    p.add_argument("--codomain", metavar="FILE")

    p = sub.add_parser("classify-chi", help="all infinitesimal R-matrices (or R-forms) for a given R")
    _add_source(p)
    p.add_argument("--forms", action="store_true", help="classify R-forms on the finite dual")
    p.add_argument("--write-basis", metavar="PREFIX", help="write basis vectors to PREFIX<k>.json")

    p = sub.add_parser("check", help="verify axioms of (H, R, χ)")
    _add_source(p)
    p.add_argument("--axiom", choices=AXIOMS, default="all")
    p.add_argument("--q", type=_scalar, help="q for q-commutation")

    p = sub.add_parser("twist", help="Drinfel'd twist of (H, R, χ)")
    _add_source(p)
    p.add_argument("--t", type=_scalar, help="twist by F_t = 1⊗1 + (t/2) xg⊗x")
    p.add_argument("--F", metavar="FILE", help="twist element document")
    p.add_argument("--by-R", action="store_true", help="twist by F = R")
    p.add_argument("--output", metavar="DIR", help="write H_F, R_F, χ_F documents here")

    p = sub.add_parser("hbar-check", help="quasitriangularity of R(1 + ℏχ + …) over Q[ℏ]/(ℏ^N)")
    _add_source(p)
    p.add_argument("--truncation", type=int, default=3, metavar="N")
    p.add_argument("--variable", default="h")
    p.add_argument("--R-tilde", metavar="FILE", dest="R_tilde", help="check this element instead of R·exp(ℏχ)")

    p = sub.add_parser("tensor-product", help="pre-Cartier structure on H⊗H'")
    _add_source(p)
    _add_source(p, "2", with_params=False)
    p.add_argument("--mu", type=_scalar, help="μ in R_μ for a Sweedler second factor")
    p.add_argument("--beta", type=_scalar, help="α for a χ on a Sweedler second factor")

    p = sub.add_parser("pushforward", help="push (R, χ) along a surjective bialgebra map")
    _add_source(p)
    p.add_argument("--map", metavar="FILE")
    p.add_argument("--codomain", metavar="FILE")

    p = sub.add_parser("dualize", help="pass to the finite dual and back")
    _add_source(p)
    p.add_argument("--output", metavar="DIR")

    p = sub.add_parser("cohomology", help="cobar (or bar, with --dual) cohomology in degree 1 or 2")
    _add_source(p)
    p.add_argument("--degree", type=int, choices=(1, 2), default=2)
    p.add_argument("--dual", action="store_true", help="bar complex of the finite dual")

    p = sub.add_parser("frt", help="graded FRT bialgebra of a braided vector space")
    p.add_argument("--builtin", choices=BRAIDED_BUILTINS)
    p.add_argument("--braided", metavar="FILE")
    p.add_argument("--q", help="numeric q for mq2 (must be a rational square); default works over Q(s)")
    p.add_argument("--lambda", dest="lam", type=_scalar, help="attach t = λ·Id")
    p.add_argument("--N", type=int, default=2, help="dimension for the flip builtin")
    p.add_argument("--degree", type=int, default=3, metavar="D")
    p.add_argument("--descent", action="store_true")
    p.add_argument("--eval", nargs=3, metavar=("FORM", "W1", "W2"), help="FORM in R, R_inv, chi")
    p.add_argument("--slq2", type=_scalar, metavar="Q", help="solution space of the SL_q(2) constraints")
    p.add_argument("--cap", type=int, default=4**6)

    p = sub.add_parser("lie-check", help="classical Yang-Baxter equation and invariance")
    p.add_argument("--builtin", choices=("sl2_r",))
    p.add_argument("--lie", metavar="FILE")

    p = sub.add_parser("builtin", help="print a builtin structure as a document")
    p.add_argument("name")
    p.add_argument("--lambda", dest="lam", type=_scalar)
    p.add_argument("--alpha", type=_scalar)
    p.add_argument("--t", type=_scalar)
    p.add_argument("--q")
    p.add_argument("--N", type=int)
    p.add_argument("--output", metavar="FILE")
    return ap


# sources


def _load_algebra(path: str) -> FinBialgebra:
    return pio.bialgebra_from_json(pio.read_document(path))


def _algebra_source(args, suffix: str = ""):
    """(H, R or None, χ or None) from --builtin or files."""
    name = getattr(args, f"builtin{suffix}")
    alg = getattr(args, f"algebra{suffix}")
    Rf, chif = getattr(args, f"R{suffix}"), getattr(args, f"chi{suffix}")
    if name and alg:
        raise UsageError("give either --builtin or --algebra")
    R = chi = None
    if name:
        if name not in ALGEBRA_BUILTINS:
            raise UsageError(f"unknown algebra builtin {name!r}; known: {', '.join(ALGEBRA_BUILTINS)}")
        if name == "sweedler":
            H = sweedler()
            lam = args.mu if suffix else args.lam
            alpha = args.beta if suffix else args.alpha
            R = sweedler_R(lam if lam is not None else 0, H)
            if alpha is not None:
                chi = sweedler_chi(alpha, H)
        elif name == "group_algebra_Z2":
            H = group_algebra_Z2()
            R = group_algebra_Z2_R(H)
        else:
            H = trivial_bialgebra()
            R = one(H, 2)
    elif alg:
        H = _load_algebra(alg)
    else:
        raise UsageError("no structure given: use --builtin or --algebra")
    if Rf:
        R = pio.element_from_json(pio.read_document(Rf), H)
    if chif:
        chi = pio.element_from_json(pio.read_document(chif), H)
    return H, R, chi


def _qt(H, R, check: bool = True) -> QTStructure:
    if R is None:
        raise UsageError("this command needs an R-matrix (--R or a builtin)")
    H.ensure_valid()
    return QTStructure(H, R, check=check)


def _need_chi(chi):
    if chi is None:
        raise UsageError("this command needs χ (--chi, or --alpha with a builtin)")
    return chi


def _triple(args, suffix=""):
    H, R, chi = _algebra_source(args, suffix)
    qt = _qt(H, R)
    inf = InfRMatrix(qt, chi) if chi is not None else None
    return qt, inf


# verbs


def _validate(args, rep: RunReport):
    doc = pio.read_document(args.file)
    kind = pio.document_kind(doc)
    rep.results["kind"] = kind
    if kind == "bialgebra":
        H = pio.bialgebra_from_json(doc)
        rep.checks.append(validate_bialgebra(H))
        rep.results["dim"] = H.dim
    elif kind in ("element", "form"):
        if not args.algebra:
            raise UsageError(f"{kind} documents need --algebra")
        H = _load_algebra(args.algebra)
        a = (pio.element_from_json if kind == "element" else pio.form_from_json)(doc, H)
        rep.results["value"] = str(a)
    elif kind == "map":
        f = pio.map_from_json(doc)
        rep.results["shape"] = [f.codomain_dim, f.domain_dim]
        if args.domain and args.codomain:
            from .constructions import check_bialgebra_map

            chk = AxiomReport("bialgebra map")
            try:
                check_bialgebra_map(f, _load_algebra(args.domain), _load_algebra(args.codomain))
                chk.add("bialgebra_map", True)
            except NotBialgebraMap as exc:
                chk.add("bialgebra_map", False, exc.args[1] if len(exc.args) > 1 else {"reason": exc.args[0]})
            rep.checks.append(chk)
    elif kind == "braided":
        bvs = pio.braided_from_json(doc)
        rep.results["dim"] = bvs.dim
        rep.checks.append(braid_report(bvs))
        if bvs.t is not None and rep.checks[-1].ok:
            rep.checks.append(ibv_report(bvs))
    else:
        g, r = pio.lie_from_json(doc)
        rep.checks.append(g.validate())
        if r is not None:
            rep.checks.append(lie_check(g, r))


def _basis_summary(labels: list[str]) -> str:
    return f"dim = {len(labels)}, basis = [ {', '.join(labels)} ]" if labels else "dim = 0, basis = [ ]"


def _classify(args, rep: RunReport):
    H, R, _ = _algebra_source(args)
    qt = _qt(H, R)
    if args.forms:
        cqt = dualize_qt(qt)
        space = classify_inf_rforms(cqt)
        to_doc = pio.form_to_json
    else:
        space = classify_inf_rmatrices(qt)
        to_doc = pio.element_to_json
    shown = [str(b) for b in space.basis]
    rep.results["dim"] = space.dim
    rep.results["basis"] = shown
    rep.results["summary"] = _basis_summary(shown)
    if args.write_basis:
        paths = []
        for k, b in enumerate(space.basis):
            path = f"{args.write_basis}{k}.json"
            pio.write_document(path, to_doc(b))
            paths.append(path)
        rep.results["written"] = paths
    return OK


def _check(args, rep: RunReport):
    H, R, chi = _algebra_source(args)
    if R is None:
        raise UsageError("check needs an R-matrix")
    H.ensure_valid()
    ax = args.axiom
    qrep = check_quasitriangular(H, R)
    if ax == "quasitriangular":
        rep.checks.append(qrep)
        return
    if not qrep.ok:
        rep.checks.append(qrep)
        return
    qt = QTStructure(H, R, check=False)
    if ax == "coactions":
        rep.checks.append(check_coactions(qt, chi))
        return
    chi = _need_chi(chi)
    irep = check_inf_rmatrix(qt, chi)
    if ax == "inf" or not irep.ok:
        rep.checks.append(irep)
        return
    inf = InfRMatrix(qt, chi, check=False)
    if ax == "cartier":
        rep.checks.append(cartier_report(inf))
    elif ax == "q-commutation":
        if args.q is None:
            raise UsageError("q-commutation needs --q")
        rep.checks.append(cartier_report(inf, args.q))
    elif ax == "antipode":
        if not qt.is_triangular:
            raise UsageError("antipode identities need a triangular R")
        rep.checks.append(check_antipode_identities(inf))
    elif ax == "suite":
        rep.checks.append(precartier_suite(inf))
    else:
        rep.checks.append(precartier_suite(inf))
        rep.checks.append(check_coactions(qt, chi))
        if H.has_antipode and qt.is_triangular:
            rep.checks.append(check_antipode_identities(inf))
        rep.results["triangular"] = qt.is_triangular


def _write_all(outdir, docs: dict):
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        pio.write_document(d / f"{name}.json", doc)
    return [str(d / f"{n}.json") for n in docs]


def _twist(args, rep: RunReport):
    H, R, chi = _algebra_source(args)
    qt = _qt(H, R)
    chosen = [args.t is not None, args.F is not None, args.by_R]
    if sum(chosen) != 1:
        raise UsageError("choose exactly one of --t, --F, --by-R")
    if args.t is not None:
        if args.builtin != "sweedler":
            raise UsageError("--t is the Sweedler twist F_t; use --F for other algebras")
        F = sweedler_twist(args.t, H)
    elif args.F:
        F = pio.element_from_json(pio.read_document(args.F), H)
    else:
        F = R
    trep = check_twist(H, F)
    rep.checks.append(trep)
    if not trep.ok:
        return
    tw = DrinfeldTwist(H, F, check=False)
    HF = twist_bialgebra(tw)
    qtF = twist_qt(tw, qt)
    rep.checks.append(check_quasitriangular(HF, qtF.R, qtF.R_inv))
    rep.results["R_F"] = str(qtF.R)
    docs = {"H_F": pio.bialgebra_to_json(HF), "R_F": pio.element_to_json(qtF.R)}
    if chi is not None:
        infF = twist_inf(tw, InfRMatrix(qt, chi))
        rep.checks.append(check_inf_rmatrix(infF.qt, infF.chi))
        rep.results["chi_F"] = str(infF.chi)
        docs["chi_F"] = pio.element_to_json(infF.chi)
    if args.output:
        rep.results["written"] = _write_all(args.output, docs)


def _hbar(args, rep: RunReport):
    H, R, chi = _algebra_source(args)
    if args.truncation < 2:
        raise UsageError("--truncation must be at least 2")
    if args.R_tilde:
        T = truncated(args.variable, args.truncation)
        Hh = H.lift(T)
        Rt = pio.element_from_json(pio.read_document(args.R_tilde), Hh)
    else:
        qt = _qt(H, R)
        inf = InfRMatrix(qt, chi) if chi is not None else None
        d = hbar_deform(qt, inf, args.truncation, args.variable)
        Hh, Rt = d.H, d.R_tilde
    rep.checks.append(check_hbar_quasitriangular(Hh, Rt))
    rep.results["R_tilde"] = str(Rt)
    if rep.checks[-1].ok:
        fo = extract_first_order(Rt, H)
        rep.checks.append(fo.report)
        rep.results["R"] = str(fo.R)
        rep.results["chi"] = str(fo.chi)


def _tensor(args, rep: RunReport):
    qa, infa = _triple(args)
    if not (args.builtin2 or args.algebra2):
        raise UsageError("second factor missing: use --builtin2 or --algebra2")
    qb, infb = _triple(args, "2")
    prod = tensor_product_precartier(infa or qa, infb or qb)
    rep.results["dim"] = prod.H.dim
    for side, inf in prod.infs.items():
        r = precartier_suite(inf)
        r.title += f" ({side} χ)"
        rep.checks.append(r)
        rep.results[f"chi_{side}"] = str(inf.chi)
    if not prod.infs:
        rep.checks.append(check_quasitriangular(prod.H, prod.qt.R, prod.qt.R_inv))


def _pushforward(args, rep: RunReport):
    qt, inf = _triple(args)
    if args.map or args.codomain:
        if not (args.map and args.codomain):
            raise UsageError("--map and --codomain go together")
        f = pio.map_from_json(pio.read_document(args.map))
        K = _load_algebra(args.codomain)
    elif args.builtin == "sweedler":
        K = group_algebra_Z2()
        f = sweedler_to_Z2(qt.H, K)
    else:
        raise UsageError("pushforward needs --map and --codomain")
    try:
        pf = pushforward(f, inf or qt, K)
    except (NotBialgebraMap, NotSurjective) as exc:
        chk = AxiomReport("pushforward map")
        w = exc.args[1] if len(exc.args) > 1 else {"reason": exc.args[0]}
        chk.add("surjective_bialgebra_map", False, w)
        rep.checks.append(chk)
        return
    rep.checks.append(check_quasitriangular(pf.H, pf.qt.R, pf.qt.R_inv))
    rep.results["R"] = str(pf.qt.R)
    if pf.chi is not None:
        rep.checks.append(check_inf_rmatrix(pf.qt, pf.chi))
        rep.results["chi"] = str(pf.chi)


def _dualize(args, rep: RunReport):
    qt, inf = _triple(args)
    inf = InfRMatrix(qt, _need_chi(inf.chi if inf else None), check=False)
    D = finite_dual(qt.H)
    form = dualize_inf(inf, D)
    rep.checks.append(co_precartier_suite(form))
    back = dualize_form_to_element(form, finite_dual(D))
    rt = AxiomReport("duality roundtrip")
    same_H = back.H == qt.H
    rt.add("bialgebra", same_H, None if same_H else {"reason": "double dual differs"})
    for name, a, b in (("R", back.R, qt.R), ("chi", back.chi, inf.chi)):
        ok = a.coeffs == b.coeffs
        rt.add(name, ok, None if ok else {"lhs": str(a), "rhs": str(b)})
    rep.checks.append(rt)
    rep.results["R_form"] = str(form.cqt.Rform)
    rep.results["chi_form"] = str(form.chi)
    if args.output:
        rep.results["written"] = _write_all(
            args.output,
            {"dual": pio.bialgebra_to_json(D), "R_form": pio.form_to_json(form.cqt.Rform), "chi_form": pio.form_to_json(form.chi)},
        )


def _cohomology(args, rep: RunReport):
    H, _, chi = _algebra_source(args)
    H.ensure_valid()
    n = args.degree
    if args.dual:
        D = finite_dual(H)
        dims = bar_cohomology_dim(D, n)
    else:
        dims = cohomology_dim(H, n)
    rep.results.update(
        {"degree": n, "cocycles": dims.cocycles, "coboundaries": dims.coboundaries, "cohomology": dims.cohomology}
    )
    chk = AxiomReport("complex")
    chk.add("b∘b = 0", dims.complex_ok)
    rep.checks.append(chk)
    if chi is not None and n == 2:
        c = AxiomReport(f"class of {chi}")
        if args.dual:
            img = bar_apply(MultiForm(finite_dual(H), 2, chi.coeffs))
            c.add("cocycle", img.is_zero(), None if img.is_zero() else {"b2": str(img)})
        else:
            img = cobar_apply(chi)
            c.add("cocycle", img.is_zero(), None if img.is_zero() else {"b2": str(img)})
            rep.results["coboundary"] = is_coboundary(chi)
        rep.checks.append(c)
    rep.results["summary"] = f"dim H^{n} = {dims.cohomology}"


def _frt(args, rep: RunReport):
    if bool(args.builtin) == bool(args.braided):
        raise UsageError("give exactly one of --builtin and --braided")
    if args.builtin == "mq2":
        bvs = mq2_braiding(Fraction(args.q) if args.q else None, args.lam)
    elif args.builtin == "flip":
        bvs = flip_braiding(args.N)
        if args.lam is not None:
            from .frt import identity_t

            bvs = bvs.with_t(identity_t(args.N, args.lam, bvs.field))
    else:
        bvs = pio.braided_from_json(pio.read_document(args.braided))
    brep = braid_report(bvs)
    rep.checks.append(brep)
    if not brep.ok:
        return
    if bvs.t is not None:
        rep.checks.append(ibv_report(bvs))
    if args.degree is not None:
        g = graded_frt(bvs, args.degree, args.cap)
        rep.results["dims"] = g.dims
    if args.descent:
        rep.checks.append(check_descent(bvs, max(args.degree, 2)))
    if args.eval:
        form, w1, w2 = args.eval
        fn = {"R": eval_R, "R_inv": eval_R_inv, "chi": eval_chi}.get(form)
        if fn is None:
            raise UsageError("--eval FORM must be R, R_inv or chi")
        try:
            a, b = FRTWord.parse(w1), FRTWord.parse(w2)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        rep.results["value"] = str(fn(bvs, a, b))
    if args.slq2 is not None:
        if not args.slq2:
            raise UsageError("q must be nonzero")
        sp = slq2_chi_obstruction(args.slq2)
        rep.results["slq2_dim"] = sp.dim
        rep.results["slq2_basis"] = [
            " + ".join(f"({c})*χ({sp.labels[k]})" for k, c in sorted(v.items())) for v in sp.vectors
        ]


def _lie(args, rep: RunReport):
    if bool(args.builtin) == bool(args.lie):
        raise UsageError("give exactly one of --builtin and --lie")
    if args.builtin:
        g, r = sl2_r()
    else:
        g, r = pio.lie_from_json(pio.read_document(args.lie))
        if r is None:
            raise UsageError("lie document has no r")
    rep.checks.append(g.validate())
    rep.checks.append(lie_check(g, r))


def builtin_document(name: str, lam=None, alpha=None, t=None, q=None, N=None) -> dict:
    """Serialized builtin; the shipped fixtures are exactly these documents at default parameters."""
    params = {}
    if lam is not None:
        params["lam"] = lam
    if alpha is not None:
        params["alpha"] = alpha
    if t is not None:
        params["t"] = t
    if q is not None:
        params["q"] = Fraction(q)
    if N is not None:
        params["N"] = N
    obj = builtin(name, **params)
    if isinstance(obj, FinBialgebra):
        return pio.bialgebra_to_json(obj)
    if isinstance(obj, TensorElement):
        return pio.element_to_json(obj)
    if isinstance(obj, tuple):
        return pio.lie_to_json(*obj)
    from .core.linalg import LinearMap
    from .frt import BraidedVS

    if isinstance(obj, BraidedVS):
        return pio.braided_to_json(obj)
    if isinstance(obj, LinearMap):
        return pio.map_to_json(obj)
    raise UsageError(f"builtin {name!r} has no document form")


def _builtin(args, rep: RunReport):
    doc = builtin_document(args.name, args.lam, args.alpha, args.t, args.q, args.N)
    text = pio.dumps(doc)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        rep.results["written"] = args.output
    else:
        rep.results["document"] = doc


VERBS = {
    "validate": _validate,
    "classify-chi": _classify,
    "check": _check,
    "twist": _twist,
    "hbar-check": _hbar,
    "tensor-product": _tensor,
    "pushforward": _pushforward,
    "dualize": _dualize,
    "cohomology": _cohomology,
    "frt": _frt,
    "lie-check": _lie,
    "builtin": _builtin,
}
CLASSIFIERS = {"classify-chi", "cohomology", "builtin"}


def run(argv: Sequence[str]) -> tuple[int, RunReport, str]:
    """Exit code, report and output format for one invocation."""
    argv = list(argv)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = INPUT_ERROR if exc.code else OK
        return code, RunReport(argv, "", code, error="invalid command line" if code else None), "text"
    rep = RunReport(argv, args.verb)
    try:
        code = VERBS[args.verb](args, rep)
        if code is None:
            code = OK if all(r.ok for r in rep.checks) else CHECK_FAILED
        if args.verb in CLASSIFIERS and all(r.ok for r in rep.checks):
            code = OK
    except (InvalidStructure, NotInfinitesimallyBraided, InvalidBialgebra) as exc:
        rep.checks.append(exc.report)
        rep.error = str(exc)
        code = CHECK_FAILED
    except (CapExceeded, ComponentCapExceeded) as exc:
        rep.error = str(exc)
        code = CAP_EXCEEDED
    except (
        pio.InputError,
        UsageError,
        StructureError,
        ScalarParseError,
        UnknownBuiltin,
        NotBraided,
        NotInvertible,
        ValueError,
        KeyError,
    ) as exc:
        rep.error = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        code = INPUT_ERROR
    rep.exit_code = code
    return code, rep, args.format


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, rep, fmt = run(argv)
    if fmt == "json":
        sys.stdout.write(json.dumps(rep.to_json(), indent=2, ensure_ascii=False) + "\n")
    else:
        text = rep.render_text()
        if text:
            print(text, file=sys.stderr if rep.error and not rep.checks else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
