"""Command line: ``artinlab {inspect,resolve,invariants,audit} WORKSPACE [flags]``.

Exit codes: 0 success, 2 parse error, 3 certification failure,
4 internal inconsistency (an audit reported REFUTATION).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import AlgebraError
from .gorenstein import (
    CertificationError,
    audit_dominant_dimension,
    audit_double_dual,
    audit_generalized_gorenstein,
    audit_gorenstein,
    audit_injective_dimensions,
    audit_transfer,
    dominant_dimension,
    injective_resolution_of_u,
    u_dominant_dimension,
    verify_wakamatsu,
)
from .context import hom_into_gamma
from .homological import InvariantValue, grade_wrt, homdim, minimal_resolution
from .modules import standard_modules
from .report import build_document, render_json, render_text
from .sampling import SampleFamily
from .workspace import WorkspaceError, WorkspaceFile, check_workspace, parse_workspace

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CERTIFICATION = 3
EXIT_REFUTATION = 4

COMMANDS = ("inspect", "resolve", "invariants", "audit")
THEOREMS = ("1", "2", "dd", "gen", "transfer", "injdim")


@dataclass
class RunOptions:
    depth: int = 8
    cap: int = 8
    k: Optional[int] = None
    m: int = 1
    seed: int = 0
    sample_size: int = 40
    override_hypotheses: bool = False
    theorem: Optional[str] = None
    modules: tuple = ()
    kind: str = "both"
    terms: int = 3
    timing: bool = False

    def parameters(self, command: str) -> dict:
        out = {"depth": self.depth, "cap": self.cap, "seed": self.seed}
        if command == "invariants":
            out["terms"] = self.terms
        if command == "resolve":
            out["kind"] = self.kind
        if command == "audit":
            out.update(
                {
                    "theorem": self.theorem,
                    "k": self.k,
                    "sample_size": self.sample_size,
                    "override_hypotheses": self.override_hypotheses,
                }
            )
            if self.theorem == "transfer":
                out["m"] = self.m
        return out


def _val(v: InvariantValue) -> dict:
    out = v.to_json()
    out["text"] = str(v)
    return out


def _mod(m) -> dict:
    return {"name": m.name, "dim": m.dim, "dimension_vector": list(m.dimension_vector()) if m.dim else []}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _named_modules(ws: WorkspaceFile) -> dict:
    A = ws.algebra()
    simples, projectives, injectives = standard_modules(A)
    out = {}
    for m in simples + projectives + injectives:
        out[m.name] = m
    for name in ws.modules:
        out[name] = ws.module(name)
    out["U"] = ws.context().u
    return out


def cmd_inspect(ws: WorkspaceFile, opts: RunOptions) -> list:
    A = ws.algebra()
    res = [
        {
            "operation": "build_path_algebra",
            "label": "algebra",
            "name": A.name,
            "field": str(ws.field_spec),
            "convention": ws.convention,
            "dim": A.dim,
            "vertices": len(ws.vertices),
            "arrows": len(ws.arrows),
            "radical_dim": int(A.radical().shape[1]),
            "semisimple": A.is_semisimple(),
        }
    ]
    simples, projectives, injectives = standard_modules(A)
    for lab, s, p, i in zip(A.basic_labels(), simples, projectives, injectives):
        res.append(
            {
                "operation": "standard_modules",
                "label": f"vertex {lab}",
                "simple": list(s.dimension_vector()),
                "projective": list(p.dimension_vector()),
                "injective": list(i.dimension_vector()),
            }
        )
    for name in ws.modules:
        res.append({"operation": "module_from_representation", "label": f"module {name}", **_mod(ws.module(name))})
    ctx = ws.context()
    w = verify_wakamatsu(ctx, min(opts.depth, opts.cap))
    res.append(
        {
            "operation": "end_algebra",
            "label": "U",
            "designation": " ".join(ws.u),
            "dim": ctx.u.dim,
            "dim_End": ctx.S.dim,
        }
    )
    res.append({"operation": "verify_wakamatsu", "label": "certification", **w.to_json()})
    return res


def _resolution_record(res, A) -> dict:
    labels = A.basic_labels()
    prefix = "P" if res.kind == "projective" else "I"
    terms = []
    for i, t in enumerate(res.terms):
        terms.append(
            {
                "dim": t.dim,
                "dimension_vector": list(t.dimension_vector()) if t.dim else [],
                "summands": [f"{prefix}({labels[j]})" for j in res.term_classes(i)],
            }
        )
    return {
        "operation": f"minimal_resolution[{res.kind}]",
        "label": f"{res.kind} resolution of {res.subject.name}",
        "terms": terms,
        "terminated": res.terminated,
        "length": res.length,
        "depth": res.depth,
    }


def cmd_resolve(ws: WorkspaceFile, opts: RunOptions) -> list:
    A = ws.algebra()
    named = _named_modules(ws)
    if opts.modules:
        missing = [n for n in opts.modules if n not in named]
        if missing:
            raise WorkspaceError(0, f"unknown module(s): {', '.join(missing)}; known: {', '.join(sorted(named))}")
        targets = [named[n] for n in opts.modules]
    else:
        targets = standard_modules(A)[0] + [ws.module(n) for n in ws.modules]
    kinds = ("projective", "injective") if opts.kind == "both" else (opts.kind,)
    out = []
    for m in targets:
        for kind in kinds:
            out.append(_resolution_record(minimal_resolution(m, kind, opts.depth), A))
    return out


def cmd_invariants(ws: WorkspaceFile, opts: RunOptions) -> list:
    A = ws.algebra()
    ctx = ws.context()
    cap = opts.cap
    regular = ws.u == ("regular",)
    out = []
    simples, projectives, injectives = standard_modules(A)
    for m in simples + projectives + injectives + [ws.module(n) for n in ws.modules]:
        out.append({"operation": "homdim[projective]", "label": f"pd {m.name}", "value": _val(homdim(m, "projective", cap))})
        out.append({"operation": "homdim[injective]", "label": f"id {m.name}", "value": _val(homdim(m, "injective", cap))})
    for s in simples:
        out.append({"operation": "grade_wrt", "label": f"grade {s.name}", "value": _val(grade_wrt(s, ctx, cap))})
    for side, prefix, c in (("left", "l", ctx), ("right", "r", ctx.op())):
        res = injective_resolution_of_u(ctx, side, opts.terms)
        for i, E in enumerate(res.terms[: opts.terms]):
            term = f"I_{i}" if side == "left" else f"I'_{i}"
            if not regular:
                term = f"Hom(U,E_{i})" if side == "left" else f"Hom(U,E'_{i})"
            out.append(
                {
                    "operation": "homdim[flat] of hom_into_gamma",
                    "label": f"{prefix}.fd({term})",
                    "subject": f"{prefix} injective term {i} of U",
                    "term_dim": E.dim,
                    "value": _val(homdim(hom_into_gamma(c, E), "flat", cap)),
                }
            )
        out.append({"operation": "homdim[injective]", "label": f"{prefix}.id(U)", "value": _val(homdim(c.u, "injective", cap))})
        out.append({"operation": "homdim[projective]", "label": f"{prefix}.pd(U)", "value": _val(homdim(c.u, "projective", cap))})
        out.append({"operation": "u_dominant_dimension", "label": f"{prefix}.U-dom.dim", "value": _val(u_dominant_dimension(ctx, side, cap))})
        out.append({"operation": "dominant_dimension", "label": f"{prefix}.dom.dim", "value": _val(dominant_dimension(A, side, cap))})
    return out


def cmd_audit(ws: WorkspaceFile, opts: RunOptions) -> list:
    ctx = ws.context()
    fam = SampleFamily(seed=opts.seed, size=opts.sample_size)
    k = opts.k if opts.k is not None else 1
    kw = dict(cap=opts.cap, override=opts.override_hypotheses)
    t = opts.theorem
    if t == "1":
        rep = audit_dominant_dimension(ctx, k, fam, **kw)
    elif t == "2":
        rep = audit_gorenstein(ctx, k, fam, **kw)
    elif t == "dd":
        rep = audit_double_dual(ctx, fam, **kw)
    elif t == "gen":
        rep = audit_generalized_gorenstein(ctx, k, fam, **kw)
    elif t == "transfer":
        rep = audit_transfer(ctx, opts.m, k, **kw)
    elif t == "injdim":
        rep = audit_injective_dimensions(ctx, **kw)
    else:
        raise ValueError(f"unknown theorem {t!r}")
    return [rep]


def run(command: str, ws: WorkspaceFile, opts: RunOptions, text: str = "") -> dict:
    """Run one command on a parsed workspace and return the report document."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    check_workspace(ws)
    t0 = time.perf_counter()
    results, audits = [], []
    if command == "inspect":
        results = cmd_inspect(ws, opts)
    elif command == "resolve":
        results = cmd_resolve(ws, opts)
    elif command == "invariants":
        results = cmd_invariants(ws, opts)
    else:
        audits = [r.to_json() for r in cmd_audit(ws, opts)]
    timing = {command: time.perf_counter() - t0} if opts.timing else None
    return build_document(command, text or ws.serialize(), opts.parameters(command), results, audits, timing)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("workspace", help="workspace file")
    common.add_argument("--depth", type=_positive, default=8, help="resolution depth (default 8)")
    common.add_argument("--cap", type=_positive, default=8, help="cap for homological dimensions (default 8)")
    common.add_argument("--k", type=_positive, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sample-size", type=_positive, default=40)
    common.add_argument("--override-hypotheses", action="store_true", help="run audits on uncertified contexts")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="embed wall-clock timing (breaks byte identity)")

    parser = argparse.ArgumentParser(prog="artinlab", description="Exact homological computations over bound quiver algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inspect", parents=[common], help="algebra dimensions and standard modules")
    p = sub.add_parser("resolve", parents=[common], help="minimal resolutions")
    p.add_argument("--module", action="append", default=[], help="module to resolve (repeatable); default: simples and declared modules")
    p.add_argument("--kind", choices=("projective", "injective", "both"), default="both")
    p = sub.add_parser("invariants", parents=[common], help="pd/id/fd/grade/dominant dimension tables")
    p.add_argument("--terms", type=_positive, default=3, help="injective terms of U to profile (default 3)")
    p = sub.add_parser("audit", parents=[common], help="run an audit")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--m", type=int, default=1, help="offset m for the transfer audit")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = RunOptions(
        depth=args.depth,
        cap=args.cap,
        k=args.k,
        seed=args.seed,
        sample_size=args.sample_size,
        override_hypotheses=args.override_hypotheses,
        theorem=getattr(args, "theorem", None),
        m=getattr(args, "m", 1),
        modules=tuple(getattr(args, "module", ()) or ()),
        kind=getattr(args, "kind", "both"),
        terms=getattr(args, "terms", 3),
        timing=args.timing,
    )
    try:
        with open(args.workspace, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"artinlab: cannot read {args.workspace}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        ws = parse_workspace(text)
        check_workspace(ws)
        doc = run(args.command, ws, opts, text)
    except (WorkspaceError, AlgebraError) as exc:
        print(f"artinlab: {args.workspace}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CertificationError as exc:
        print(f"artinlab: {exc} (use --override-hypotheses to run out of hypothesis)", file=sys.stderr)
        return EXIT_CERTIFICATION
    sys.stdout.write(render_json(doc) if args.format == "json" else render_text(doc))
    if any(a["consistency"] == "REFUTATION" for a in doc["audits"]):
        print("artinlab: REFUTATION: conditions declared equivalent disagree", file=sys.stderr)
        return EXIT_REFUTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
