"""Wakamatsu tilting checks, U-dominant dimension, U-lim.dim and the audits.

An audit evaluates each condition of an equivalence statement on its own
route and then polices consistency: when two conditions declared
equivalent come out one ``holds`` and one ``fails``, the report is flagged
``REFUTATION`` and carries both witnesses.

Verdicts:

* ``holds`` / ``fails``: decided exactly (fails carries a witness).
* ``sampled_consistent``: a universally quantified condition with no
  counterexample in the sample family; never upgraded to ``holds``.
* ``fails`` from a sampled condition means a counterexample was found.
* ``undetermined``: the cap or the search strategy left the value open.
* ``vacuous``: a hypothesis of an implication is not met.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .algebra import FDAlgebra
from .context import BimoduleContext, ContextError, end_algebra, hom_into_gamma, regular_context, dual_regular_context
from .homological import (
    InvariantValue,
    add_u_resolution,
    double_dual_map,
    evaluation_map,
    ext_dims,
    ext_map,
    ext_map_kernel_dim,
    ext_module,
    ext_module_data,
    grade_wrt,
    homdim,
    injective_resolution,
    projective_cover,
    strong_grade_bruteforce,
    torsionfree_index,
    u_syzygy_search,
)
from .modules import (
    DEFAULT_ENUMERATION_BOUND,
    FDModule,
    ModuleError,
    Morphism,
    cokernel,
    direct_sum,
    hom_dim,
    in_add,
    is_cogenerated_by,
    k_dual,
    regular_module,
    standard_modules,
)
from .sampling import SampleFamily, random_extension

DEFAULT_CAP = 8


class CertificationError(ValueError):
    """Raised when an audit is asked to run on a context that is not certified."""


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def describe_module(m: FDModule, label: str = "") -> dict:
    out = {"name": m.name, "algebra": m.algebra.name, "dim": m.dim}
    if label:
        out["label"] = label
    if m.dim:
        out["dimension_vector"] = list(m.dimension_vector())
    return out


def describe_morphism(fm: Morphism, label: str = "") -> dict:
    return {
        "label": label,
        "source": describe_module(fm.source),
        "target": describe_module(fm.target),
        "rank": fm.rank(),
    }


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


@dataclass
class WakamatsuReport:
    context: str
    depth: int
    ext_vanishing_left: list
    ext_vanishing_right: list
    natural_maps: dict
    coresolution_found: bool
    coresolution_note: str

    @property
    def self_orthogonal_left(self) -> bool:
        return all(d == 0 for d in self.ext_vanishing_left)

    @property
    def self_orthogonal_right(self) -> bool:
        return all(d == 0 for d in self.ext_vanishing_right)

    @property
    def faithfully_balanced(self) -> bool:
        return bool(self.natural_maps["R_to_End_S(U)"] and self.natural_maps["S_to_End_R(U)"])

    @property
    def certified(self) -> bool:
        return self.self_orthogonal_left and self.self_orthogonal_right and self.faithfully_balanced

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "depth": self.depth,
            "ext_dims_left": self.ext_vanishing_left,
            "ext_dims_right": self.ext_vanishing_right,
            "natural_maps": self.natural_maps,
            "faithfully_balanced": self.faithfully_balanced,
            "coresolution_found": self.coresolution_found,
            "coresolution_note": self.coresolution_note,
            "certified": self.certified,
        }


def verify_wakamatsu(ctx: BimoduleContext, depth: int) -> WakamatsuReport:
    """Self-orthogonality on both sides up to ``depth`` plus the natural-map checks.

    The add-U coresolution of the base algebra is searched greedily as
    corroboration; its outcome does not enter the certification.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    key = ("wakamatsu", depth)
    if key in ctx._cache:
        return ctx._cache[key]
    left = ext_dims(ctx.u, ctx.u, depth)[1:]
    right = ext_dims(ctx.u_s, ctx.u_s, depth)[1:]
    chain = u_syzygy_search(regular_module(ctx.R), ctx, depth)
    rep = WakamatsuReport(
        context=ctx.name,
        depth=depth,
        ext_vanishing_left=left,
        ext_vanishing_right=right,
        natural_maps=dict(ctx.natural_maps()),
        coresolution_found=chain.found,
        coresolution_note=chain.reason or f"chain of length {len(chain.terms)}",
    )
    ctx._cache[key] = rep
    return rep


def _gate(ctx: BimoduleContext, depth: int, override: bool) -> str:
    rep = verify_wakamatsu(ctx, max(depth, 1))
    if rep.certified:
        return "certified"
    if not override:
        raise CertificationError(f"context not certified: {ctx.name}")
    return "out of hypothesis"


def _side(ctx: BimoduleContext, side: str) -> BimoduleContext:
    if side == "left":
        return ctx
    if side == "right":
        return ctx.op()
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def injective_terms(ctx: BimoduleContext, side: str, n: int) -> list:
    """E_0, ..., E_{n-1} of a minimal injective resolution of U on the given side (fewer if it stops)."""
    c = _side(ctx, side)
    key = ("injres", side)
    res = ctx._cache.get(key)
    if res is None or (not res.terminated and res.depth < n):
        res = injective_resolution(c.u, max(n, 1))
        ctx._cache[key] = res
    return list(res.terms[:n])


def injective_resolution_of_u(ctx: BimoduleContext, side: str, n: int):
    injective_terms(ctx, side, n)
    return ctx._cache[("injres", side)]


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------


@dataclass
class DominantDimension:
    value: InvariantValue
    add_profile: list
    cogeneration_profile: list

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "text": str(self.value),
            "in_add_U": self.add_profile,
            "cogenerated_by_U": self.cogeneration_profile,
        }


def u_dominant_dimension_data(ctx: BimoduleContext, side: str, cap: int) -> DominantDimension:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    c = _side(ctx, side)
    res = injective_resolution_of_u(ctx, side, cap)
    adds, cogs = [], []
    value = None
    for i, E in enumerate(res.terms[:cap]):
        a = in_add(E, c.u)
        adds.append(a)
        cogs.append(is_cogenerated_by(E, c.u))
        if not a and value is None:
            value = InvariantValue.exact(i)
            break
    if value is None:
        if res.terminated and len(res.terms) <= cap:
            value = InvariantValue.infinite(cap)
        else:
            value = InvariantValue.at_least(cap)
    return DominantDimension(value, adds, cogs)


def u_dominant_dimension(ctx: BimoduleContext, side: str = "left", cap: int = DEFAULT_CAP) -> InvariantValue:
    """Number of leading terms of the minimal injective resolution of U lying in add U."""
    return u_dominant_dimension_data(ctx, side, cap).value


def dominant_dimension(A: FDAlgebra, side: str = "left", cap: int = DEFAULT_CAP) -> InvariantValue:
    """Classical dominant dimension: the U = A case of :func:`u_dominant_dimension`."""
    ctx = A._cache.get("regular_context")
    if ctx is None:
        ctx = regular_context(A)
        A._cache["regular_context"] = ctx
    return u_dominant_dimension(ctx, side, cap)


def is_injective(m: FDModule) -> bool:
    if m.dim == 0:
        return True
    P, _eps = projective_cover(k_dual(m))
    return P.module.dim == m.dim


def is_projective(m: FDModule) -> bool:
    if m.dim == 0:
        return True
    P, _eps = projective_cover(m)
    return P.module.dim == m.dim


@dataclass
class LimDim:
    """U-lim.dim of an injective: flat dimension of Hom(U, E) and the explicit add-U chain."""

    value: InvariantValue
    chain_length: Optional[int]
    chain_terms: list

    @property
    def consistent(self) -> Optional[bool]:
        if self.chain_length is None or not self.value.is_exact:
            return None
        return self.chain_length == self.value.n

    @property
    def refutes(self) -> bool:
        """An explicit chain strictly shorter than the flat dimension."""
        if self.chain_length is None:
            return False
        if self.value.is_exact:
            return self.chain_length < self.value.n
        if self.value.kind == "at_least":
            return self.chain_length < self.value.n
        return False

    def to_json(self) -> dict:
        return {
            "flat_dimension": self.value.to_json(),
            "text": str(self.value),
            "chain_length": self.chain_length,
            "chain_dims": [t.dim for t in self.chain_terms],
            "consistent": self.consistent,
        }


def u_lim_dim_injective_data(ctx: BimoduleContext, e: FDModule, cap: int = DEFAULT_CAP, side: str = "left") -> LimDim:
    c = _side(ctx, side)
    if e.algebra is not c.R:
        raise ContextError("module is not over the context's base algebra")
    if not is_injective(e):
        raise ModuleError("module not injective")
    if e.dim == 0:
        return LimDim(InvariantValue.zero(), 0, [])
    value = homdim(hom_into_gamma(c, e), "flat", cap)
    length, terms = add_u_resolution(e, c, cap)
    return LimDim(value, length, terms)


def u_lim_dim_injective(ctx: BimoduleContext, e: FDModule, cap: int = DEFAULT_CAP, side: str = "left") -> InvariantValue:
    """l.fd of Hom(U, e) over Gamma for an injective e (U-lim.dim of e)."""
    return u_lim_dim_injective_data(ctx, e, cap, side).value


def _lim_profile(ctx: BimoduleContext, side: str, n: int, cap: int) -> list:
    key = ("limprofile", side, cap)
    cached = ctx._cache.get(key, [])
    if len(cached) >= n:
        return cached[:n]
    terms = injective_terms(ctx, side, n)
    out = list(cached)
    for E in terms[len(out) :]:
        out.append(u_lim_dim_injective_data(ctx, E, cap, side))
    ctx._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# audit report
# ---------------------------------------------------------------------------


@dataclass
class ConditionResult:
    label: str
    verdict: str
    description: str
    exact: bool
    evidence: dict = dc_field(default_factory=dict)
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "verdict": self.verdict,
            "description": self.description,
            "exact": self.exact,
            "evidence": self.evidence,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AuditReport:
    context: str
    audit: str
    parameters: dict
    hypothesis: str
    conditions: list = dc_field(default_factory=list)
    equivalences: list = dc_field(default_factory=list)
    implications: list = dc_field(default_factory=list)
    invariants: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    conflicts: list = dc_field(default_factory=list)
    consistency: str = "consistent"

    def add(self, cond: ConditionResult) -> ConditionResult:
        self.conditions.append(cond)
        return cond

    def condition(self, label: str) -> ConditionResult:
        for c in self.conditions:
            if c.label == label:
                return c
        raise KeyError(label)

    def verdicts(self) -> dict:
        return {c.label: c.verdict for c in self.conditions}

    def finalize(self) -> "AuditReport":
        self.conditions.sort(key=lambda c: c.label)
        by = {c.label: c for c in self.conditions}
        conflicts = []
        for group in self.equivalences:
            present = [by[l] for l in group if l in by]
            holders = [c for c in present if c.verdict == "holds"]
            failers = [c for c in present if c.verdict == "fails"]
            for h in holders[:1]:
                for fl in failers[:1]:
                    conflicts.append(
                        {
                            "kind": "equivalence",
                            "holds": h.label,
                            "fails": fl.label,
                            "witnesses": [h.witness, fl.witness],
                        }
                    )
        for premises, conclusion in self.implications:
            if conclusion not in by:
                continue
            if all(p in by and by[p].verdict == "holds" for p in premises) and by[conclusion].verdict == "fails":
                conflicts.append(
                    {"kind": "implication", "premises": list(premises), "fails": conclusion, "witnesses": [by[conclusion].witness]}
                )
        for label in self.invariants:
            if label in by and by[label].verdict == "fails":
                conflicts.append({"kind": "invariant", "fails": label, "witnesses": [by[label].witness]})
        self.conflicts = conflicts
        self.consistency = "REFUTATION" if conflicts else "consistent"
        return self

    @property
    def refuted(self) -> bool:
        return self.consistency == "REFUTATION"

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "audit": self.audit,
            "parameters": self.parameters,
            "hypothesis": self.hypothesis,
            "conditions": [c.to_json() for c in self.conditions],
            "equivalences": [sorted(g) for g in self.equivalences],
            "implications": [{"premises": list(p), "conclusion": c} for p, c in self.implications],
            "invariants": sorted(self.invariants),
            "notes": self.notes,
            "conflicts": self.conflicts,
            "consistency": self.consistency,
        }

    def to_text(self) -> str:
        lines = [f"audit {self.audit} on {self.context} ({self.hypothesis})"]
        for k in sorted(self.parameters):
            lines.append(f"  {k} = {self.parameters[k]}")
        width = max((len(c.label) for c in self.conditions), default=10)
        for c in self.conditions:
            lines.append(f"  {c.label.ljust(width)}  {c.verdict:<19} {c.description}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  consistency: {self.consistency}")
        for cf in self.conflicts:
            lines.append(f"  conflict: {cf}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# reusable condition evaluators
# ---------------------------------------------------------------------------


def _exact_verdict(flag: Optional[bool]) -> str:
    if flag is None:
        return "undetermined"
    return "holds" if flag else "fails"


def _sampled(label, description, checked, skipped, failure) -> ConditionResult:
    if failure is not None:
        return ConditionResult(label, "fails", description, False, {"checked": checked, "skipped": skipped}, failure)
    return ConditionResult(label, "sampled_consistent", description, False, {"sample_size": checked, "skipped": skipped})


def _strong_grade_condition(ctx: BimoduleContext, side: str, family: SampleFamily, degrees: Sequence[int], bound, label, description, use_strong=True):
    """For sampled M on ``side``: (s.)grade of Ext^i(M, U) >= bound(i) for i in degrees.

    Ext^i(M, U) is a module over the other algebra; grades are taken against
    U over that algebra.
    """
    c = _side(ctx, side)
    f = c.field
    checked = skipped = 0
    failure = None
    for mlabel, M in family.modules(c.R):
        for i in degrees:
            X = ext_module(M, c.u, i, c.u_s)
            need = bound(i)
            if need <= 0 or X.dim == 0:
                checked += 1
                continue
            if use_strong:
                if not f.is_finite or X.dim > DEFAULT_ENUMERATION_BOUND:
                    skipped += 1
                    continue
                val = strong_grade_bruteforce(X, c.op(), need + 1, DEFAULT_ENUMERATION_BOUND)
            else:
                val = grade_wrt(X, c.op(), need + 1)
            checked += 1
            if val.ge(need) is False:
                failure = {
                    "module": describe_module(M, mlabel),
                    "degree": i,
                    "ext_dim": X.dim,
                    "grade": str(val),
                    "required": need,
                }
                break
        if failure is not None:
            break
    return _sampled(label, description, checked, skipped, failure)


def _double_ext_monos(ctx: BimoduleContext, side: str, family: SampleFamily, degrees: Sequence[int], label, description, torsionless_only=False):
    """Ext^i_other(Ext^i(-, U), U) applied to sampled monos must be injective."""
    c = _side(ctx, side)
    checked = 0
    failure = None
    inj_cache: dict = {}
    for mlabel, mono in family.monomorphisms(c.R):
        if torsionless_only:
            if not evaluation_map(mono.source, c).torsionless or not evaluation_map(mono.target, c).torsionless:
                continue
        for i in degrees:
            g, ex, ey = ext_map(mono, c.u, i, c.u_s)
            if i not in inj_cache:
                inj_cache[i] = injective_resolution(c.u_s, i + 1)
            kd = ext_map_kernel_dim(g, c.u_s, i, inj_cache[i])
            checked += 1
            if kd:
                failure = {"mono": describe_morphism(mono, mlabel), "degree": i, "kernel_dim": kd}
                break
        if failure is not None:
            break
    return _sampled(label, description, checked, 0, failure)


def _fd_profile_condition(ctx, side, k, cap, offset, label, description):
    """fd of Hom(U, E_i) <= i + offset for 0 <= i < k, exactly."""
    prof = _lim_profile(ctx, side, k, cap)
    values = [p.value for p in prof]
    flags = []
    witness = None
    terms = injective_terms(ctx, side, k)
    for i, v in enumerate(values):
        fl = v.le(i + offset)
        flags.append(fl)
        if fl is False and witness is None:
            witness = {"term": i, "module": describe_module(terms[i], f"E_{i}"), "flat_dimension": str(v), "bound": i + offset}
    verdict = "fails" if witness else ("holds" if all(fl for fl in flags) else "undetermined")
    ev = {"profile": [str(v) for v in values], "bound_offset": offset}
    return ConditionResult(label, verdict, description, True, ev, witness)


def _flat_prefix_condition(ctx, side, k, cap):
    """Hom(U, E_i) flat (flat dimension 0) for 0 <= i < k."""
    prof = _lim_profile(ctx, side, k, cap)
    terms = injective_terms(ctx, side, k)
    wit = None
    for i, p in enumerate(prof):
        if not (p.value.is_exact and p.value.n == 0):
            wit = {"term": i, "module": describe_module(terms[i], f"E_{i}"), "flat_dimension": str(p.value)}
            break
    return ConditionResult(
        f"hom_from_u_flat_{side}",
        "fails" if wit else "holds",
        f"Hom(U, E_i) flat for i < {k} ({side})",
        True,
        {"profile": [str(p.value) for p in prof]},
        wit,
    )


def _chain_profile_condition(ctx, side, k, cap, offset, label, description):
    """Explicit add-U chain length of E_i <= i + offset, exactly where the chain is found."""
    prof = _lim_profile(ctx, side, k, cap)
    terms = injective_terms(ctx, side, k)
    witness = None
    undetermined = False
    lengths = []
    for i, p in enumerate(prof):
        lengths.append(p.chain_length)
        if p.chain_length is None:
            undetermined = True
            continue
        if p.chain_length > i + offset and witness is None:
            witness = {"term": i, "module": describe_module(terms[i], f"E_{i}"), "chain_length": p.chain_length, "bound": i + offset}
    verdict = "fails" if witness else ("undetermined" if undetermined else "holds")
    return ConditionResult(label, verdict, description, True, {"chain_lengths": lengths, "bound_offset": offset}, witness)


def _lim_identity_condition(ctx, side, k, cap, label):
    prof = _lim_profile(ctx, side, k, cap)
    bad = None
    compared = 0
    for i, p in enumerate(prof):
        if p.consistent is not None:
            compared += 1
        if p.refutes or p.consistent is False:
            bad = {"term": i, "flat_dimension": str(p.value), "chain_length": p.chain_length}
            break
    verdict = "fails" if bad else "holds"
    return ConditionResult(
        label,
        verdict,
        "explicit add-U chain length equals flat dimension of Hom(U, E_i)",
        True,
        {"compared_terms": compared, "profile": [p.to_json() for p in prof]},
        bad,
    )


def _context_id(ctx: BimoduleContext) -> str:
    return f"{ctx.R.name}|{ctx.name}"


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------


def audit_dominant_dimension(ctx: BimoduleContext, k: int, family: SampleFamily, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """U-dominant dimension >= k, flatness of Hom(U, E_i) and strong grades of Ext^1, both sides."""
    if k < 1:
        raise ValueError("k must be at least 1")
    hyp = _gate(ctx, k, override)
    rep = AuditReport(_context_id(ctx), "dominant_dimension", {"k": k, "cap": cap, "family": family.to_json()}, hyp)
    for side in ("left", "right"):
        dd = u_dominant_dimension_data(ctx, side, max(k, 1))
        flag = dd.value.ge(k)
        terms = injective_terms(ctx, side, k)
        wit = None
        if flag is False:
            i = dd.value.n
            wit = {"term": i, "module": describe_module(terms[i], f"E_{i}")}
        rep.add(ConditionResult(f"u_dominant_dimension_{side}", _exact_verdict(flag), f"U-dom.dim on the {side} >= {k}", True, dd.to_json(), wit))
        rep.add(_flat_prefix_condition(ctx, side, k, cap))
        rep.add(
            _strong_grade_condition(
                ctx, side, family, [1], lambda i: k, f"strong_grade_ext1_{side}", f"s.grade Ext^1(M, U) >= {k} on sampled modules ({side})"
            )
        )
        # add-membership implies cogeneration, term by term
        bad = [i for i, (a, cg) in enumerate(zip(dd.add_profile, dd.cogeneration_profile)) if a and not cg]
        rep.add(
            ConditionResult(
                f"add_implies_cogenerated_{side}",
                "fails" if bad else "holds",
                "every term counted in add U is cogenerated by U",
                True,
                {"in_add_U": dd.add_profile, "cogenerated": dd.cogeneration_profile},
                {"terms": bad} if bad else None,
            )
        )
    # flatness of Hom(U, E_0) is symmetric
    for side in ("left", "right"):
        p0 = _lim_profile(ctx, side, 1, cap)[0]
        flag = p0.value.is_exact and p0.value.n == 0
        rep.add(ConditionResult(f"hom_from_u_e0_flat_{side}", "holds" if flag else "fails", f"Hom(U, E_0) flat ({side})", True, {"flat_dimension": str(p0.value)}, None if flag else {"flat_dimension": str(p0.value)}))
    rep.equivalences.append(
        [
            "u_dominant_dimension_left",
            "u_dominant_dimension_right",
            "hom_from_u_flat_left",
            "hom_from_u_flat_right",
            "strong_grade_ext1_left",
            "strong_grade_ext1_right",
        ]
    )
    rep.equivalences.append(["hom_from_u_e0_flat_left", "hom_from_u_e0_flat_right"])
    rep.invariants.extend(["add_implies_cogenerated_left", "add_implies_cogenerated_right"])
    return rep.finalize()


def audit_gorenstein(ctx: BimoduleContext, k: int, family: SampleFamily, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """k-Gorenstein conditions: strong grades, U-lim.dim and flat-dimension profiles, double-Ext monos."""
    if k < 1:
        raise ValueError("k must be at least 1")
    hyp = _gate(ctx, k, override)
    rep = AuditReport(_context_id(ctx), "gorenstein", {"k": k, "cap": cap, "family": family.to_json()}, hyp)
    for side in ("left", "right"):
        rep.add(
            _strong_grade_condition(
                ctx,
                side,
                family,
                list(range(1, k + 1)),
                lambda i: i,
                f"strong_grade_ext_{side}",
                f"s.grade Ext^i(M, U) >= i for 1 <= i <= {k} on sampled modules ({side})",
            )
        )
        rep.add(_chain_profile_condition(ctx, side, k, cap, 0, f"u_lim_dim_{side}", f"U-lim.dim(E_i) <= i for i < {k} via explicit add-U chains ({side})"))
        rep.add(_fd_profile_condition(ctx, side, k, cap, 0, f"flat_dimension_{side}", f"fd Hom(U, E_i) <= i for i < {k} ({side})"))
        rep.add(
            _double_ext_monos(
                ctx, side, family, list(range(k)), f"double_ext_monos_{side}", f"Ext^i(Ext^i(-, U), U) preserves sampled monos for i < {k} ({side})"
            )
        )
        rep.add(_lim_identity_condition(ctx, side, k, cap, f"lim_dim_identity_{side}"))
    rep.notes.append("k-Gorenstein on one side is by definition the strong-grade condition on the other side")
    if ctx.R.dim == ctx.u.dim and in_add(regular_module(ctx.R), ctx.u):
        rep.notes.append("U is the regular module: the flat-dimension profiles are those of the injective terms of the algebra")
    rep.equivalences.append(
        [
            "strong_grade_ext_left",
            "strong_grade_ext_right",
            "u_lim_dim_left",
            "u_lim_dim_right",
            "flat_dimension_left",
            "flat_dimension_right",
            "double_ext_monos_left",
            "double_ext_monos_right",
        ]
    )
    rep.invariants.extend(["lim_dim_identity_left", "lim_dim_identity_right"])
    return rep.finalize()


def _double_dual_checks(ctx: BimoduleContext, side: str, family: SampleFamily):
    """Sampled mono preservation, left exactness and torsionless-target mono preservation of (-)**."""
    c = _side(ctx, side)
    f = c.field
    mono_fail = lex_fail = tl_fail = None
    n_mono = n_lex = n_tl = 0
    for label, mono in family.monomorphisms(c.R):
        fss, ddx, ddy = double_dual_map(c, mono)
        injective = fss.rank() == ddx.module.dim
        n_mono += 1
        if not injective and mono_fail is None:
            mono_fail = {"mono": describe_morphism(mono, label)}
        tl_target = evaluation_map(mono.target, c).torsionless
        if tl_target:
            n_tl += 1
            if not injective and tl_fail is None:
                tl_fail = {"mono": describe_morphism(mono, label)}
        # left exactness on 0 -> X -> Y -> Z -> 0
        Z, epi = cokernel(mono)
        gss, _dy2, ddz = double_dual_map(c, epi)
        n_lex += 1
        ok = injective
        if ok:
            # ker g** = im f**
            ker_dim = ddy.module.dim - (gss.rank() if gss.matrix.size else 0)
            comp = f.matmul(gss.matrix, fss.matrix) if gss.matrix.size and fss.matrix.size else None
            ok = (comp is None or f.is_zero(comp)) and ker_dim == fss.rank()
        if not ok and lex_fail is None:
            lex_fail = {"sequence": describe_morphism(mono, label), "cokernel": describe_module(Z)}
    return (n_mono, mono_fail), (n_lex, lex_fail), (n_tl, tl_fail)


def audit_double_dual(ctx: BimoduleContext, family: SampleFamily, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """Mono preservation and left exactness of (-)** against U-dominant dimension >= 1 and >= 2."""
    hyp = _gate(ctx, 2, override)
    rep = AuditReport(_context_id(ctx), "double_dual", {"cap": cap, "family": family.to_json()}, hyp)
    for side in ("left", "right"):
        c = _side(ctx, side)
        dd = u_dominant_dimension_data(ctx, side, 2)
        for bound in (1, 2):
            flag = dd.value.ge(bound)
            rep.add(ConditionResult(f"u_dominant_dimension_ge{bound}_{side}", _exact_verdict(flag), f"U-dom.dim >= {bound} ({side})", True, dd.to_json()))
        (n_mono, mono_fail), (n_lex, lex_fail), (n_tl, tl_fail) = _double_dual_checks(ctx, side, family)
        rep.add(_sampled(f"double_dual_preserves_monos_{side}", f"(-)** preserves sampled monos ({side})", n_mono, 0, mono_fail))
        rep.add(_sampled(f"double_dual_left_exact_{side}", f"(-)** left exact on sampled short exact sequences ({side})", n_lex, 0, lex_fail))
        rep.add(
            _strong_grade_condition(ctx, side, family, [1], lambda i: 1, f"strong_grade_ext1_ge1_{side}", f"s.grade Ext^1(M, U) >= 1 on sampled modules ({side})")
        )
        # Ext^1(Ext^1(X, U), U) = 0 together with mono preservation
        checked = 0
        vanish_fail = None
        for label, M in family.modules(c.R):
            X = ext_module(M, c.u, 1, c.u_s)
            checked += 1
            if X.dim and ext_dims(X, c.u_s, 1)[1]:
                vanish_fail = {"module": describe_module(M, label)}
                break
        combined = mono_fail or vanish_fail
        rep.add(
            _sampled(
                f"monos_and_double_ext1_vanishing_{side}",
                f"(-)** preserves monos and Ext^1(Ext^1(X, U), U) = 0 on samples ({side})",
                checked,
                0,
                combined,
            )
        )
        if side == "left":
            p0 = _lim_profile(ctx, side, 1, cap)[0]
            flag = p0.value.le(1)
            rep.add(ConditionResult("u_lim_dim_e0_le1_left", _exact_verdict(flag), "U-lim.dim(E_0) <= 1", True, p0.to_json()))
            rep.add(_sampled("torsionless_target_monos_left", "f** mono for sampled monos with U-torsionless target", n_tl, 0, tl_fail))
            rep.add(
                _strong_grade_condition(ctx, side, family, [1], lambda i: 1, "grade_ext1_ge1_left", "grade Ext^1(X, U) >= 1 on sampled modules", use_strong=False)
            )
            rep.add(
                _strong_grade_condition(ctx, "right", family, [2], lambda i: 1, "strong_grade_ext2_ge1_right", "s.grade Ext^2(N, U) >= 1 on sampled modules (right)")
            )
    rep.equivalences.append(
        [
            "u_dominant_dimension_ge1_left",
            "u_dominant_dimension_ge1_right",
            "double_dual_preserves_monos_left",
            "double_dual_preserves_monos_right",
            "strong_grade_ext1_ge1_left",
            "strong_grade_ext1_ge1_right",
        ]
    )
    rep.equivalences.append(
        [
            "u_dominant_dimension_ge2_left",
            "u_dominant_dimension_ge2_right",
            "double_dual_left_exact_left",
            "double_dual_left_exact_right",
            "monos_and_double_ext1_vanishing_left",
            "monos_and_double_ext1_vanishing_right",
        ]
    )
    rep.equivalences.append(["u_lim_dim_e0_le1_left", "torsionless_target_monos_left", "grade_ext1_ge1_left", "strong_grade_ext2_ge1_right"])
    return rep.finalize()


def audit_generalized_gorenstein(ctx: BimoduleContext, k: int, family: SampleFamily, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """Shifted bounds: U-lim.dim(E_i) <= i + 1, grades of Ext^i >= i, and extension closure of U-syzygy classes."""
    if k < 1:
        raise ValueError("k must be at least 1")
    hyp = _gate(ctx, k + 1, override)
    rep = AuditReport(_context_id(ctx), "generalized_gorenstein", {"k": k, "cap": cap, "family": family.to_json()}, hyp)
    rep.add(
        _strong_grade_condition(
            ctx,
            "right",
            family,
            list(range(2, k + 2)),
            lambda d: d - 1,
            "strong_grade_shifted_ext_right",
            f"s.grade Ext^(i+1)(N, U) >= i for 1 <= i <= {k} on sampled modules (right)",
        )
    )
    rep.add(_chain_profile_condition(ctx, "left", k, cap, 1, "u_lim_dim_shifted_left", f"U-lim.dim(E_i) <= i+1 for i < {k} via explicit chains"))
    rep.add(_fd_profile_condition(ctx, "left", k, cap, 1, "flat_dimension_shifted_left", f"fd Hom(U, E_i) <= i+1 for i < {k}"))
    rep.add(
        _strong_grade_condition(
            ctx, "left", family, list(range(1, k + 1)), lambda i: i, "grade_ext_left", f"grade Ext^i(M, U) >= i for 1 <= i <= {k} on sampled modules", use_strong=False
        )
    )
    rep.add(
        _double_ext_monos(
            ctx,
            "left",
            family,
            list(range(k)),
            "double_ext_torsionless_monos_left",
            f"Ext^i(Ext^i(-, U), U) preserves sampled monos between U-torsionless modules for i < {k}",
            torsionless_only=True,
        )
    )
    rep.add(_extension_closure(ctx, family, k))
    rep.equivalences.append(
        [
            "strong_grade_shifted_ext_right",
            "u_lim_dim_shifted_left",
            "flat_dimension_shifted_left",
            "grade_ext_left",
            "double_ext_torsionless_monos_left",
        ]
    )
    rep.implications.append((["flat_dimension_shifted_left"], "syzygy_classes_extension_closed_right"))
    return rep.finalize()


def _extension_closure(ctx: BimoduleContext, family: SampleFamily, k: int) -> ConditionResult:
    """Spot check: U-i-torsionfree modules over the other algebra are closed under sampled extensions."""
    import random

    c = ctx.op()
    rng = random.Random(family.seed + 7)
    mods = [(l, m) for l, m in family.modules(c.R)]
    checked = 0
    failure = None
    indices = {}
    for l, m in mods:
        indices[l] = torsionfree_index(m, c, k)
    for i in range(1, k + 1):
        members = [(l, m) for l, m in mods if indices[l] >= i]
        for _ in range(family.extensions):
            if not members:
                break
            la, a = members[rng.randrange(len(members))]
            lb, b = members[rng.randrange(len(members))]
            if a.dim + b.dim > family.max_dim + 2:
                continue
            ext = random_extension(a, b, rng)
            if ext is None:
                continue
            checked += 1
            if torsionfree_index(ext[0], c, i) < i:
                failure = {"degree": i, "quotient": describe_module(a, la), "sub": describe_module(b, lb)}
                break
        if failure is not None:
            break
    return _sampled(
        "syzygy_classes_extension_closed_right",
        f"U-i-torsionfree modules (= U-i-syzygies here) closed under sampled extensions, 1 <= i <= {k} (right)",
        checked,
        0,
        failure,
    )


@dataclass
class TransferResult:
    hypotheses_met: bool
    conclusion_verified: Optional[bool]


def audit_transfer(ctx: BimoduleContext, m: int, k: int, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """Transfer of U-lim.dim bounds from the right injective terms to the left ones.

    Hypotheses: U-lim.dim(E_i) <= i+1 for i < m; U-lim.dim of E'_0 + ... + E'_m
    is <= m; U-lim.dim(E'_{m+j}) <= m+j for 1 <= j < k. Conclusion:
    U-lim.dim(E_{m+j}) <= m+j for 0 <= j < k.
    """
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    hyp = _gate(ctx, m + k, override)
    rep = AuditReport(_context_id(ctx), "transfer", {"m": m, "k": k, "cap": cap}, hyp)
    n = m + k
    left = _lim_profile(ctx, "left", n, cap)
    right_terms = injective_terms(ctx, "right", n)
    right = _lim_profile(ctx, "right", n, cap)
    # hypothesis 1
    # terms past the end of a terminated resolution are zero
    h1_flags = [left[i].value.le(i + 1) for i in range(min(m, len(left)))]
    h1 = _flag_all(h1_flags)
    rep.add(ConditionResult("hypothesis_left_prefix", _exact_verdict(h1), f"U-lim.dim(E_i) <= i+1 for i < {m}", True, {"profile": [str(left[i].value) for i in range(min(m, len(left)))]}))
    # hypothesis 2: the direct sum E'_0 + ... + E'_m
    c_op = ctx.op()
    head = right_terms[: m + 1]
    if head:
        total = direct_sum(head, c_op.R).module
        sum_val = homdim(hom_into_gamma(c_op, total), "flat", cap)
    else:
        sum_val = InvariantValue.zero()
    h2 = sum_val.le(m)
    rep.add(ConditionResult("hypothesis_right_sum", _exact_verdict(h2), f"U-lim.dim(E'_0 + ... + E'_{m}) <= {m}", True, {"value": str(sum_val)}))
    h3_flags = [right[m + j].value.le(m + j) for j in range(1, k) if m + j < len(right)]
    h3 = _flag_all(h3_flags)
    rep.add(
        ConditionResult(
            "hypothesis_right_tail",
            _exact_verdict(h3),
            f"U-lim.dim(E'_(m+j)) <= m+j for 1 <= j < {k}",
            True,
            {"profile": [str(right[m + j].value) for j in range(1, k) if m + j < len(right)]},
        )
    )
    met = h1 is True and h2 is True and h3 is True
    concl_flags = [left[m + j].value.le(m + j) if m + j < len(left) else True for j in range(k)]
    concl = _flag_all(concl_flags)
    evidence = {"profile": [str(left[m + j].value) if m + j < len(left) else "0 (resolution stopped)" for j in range(k)]}
    if met:
        verdict = _exact_verdict(concl)
        wit = None
        if concl is False:
            j = concl_flags.index(False)
            wit = {"term": m + j, "flat_dimension": str(left[m + j].value)}
        rep.add(ConditionResult("conclusion_left", verdict, f"U-lim.dim(E_(m+j)) <= m+j for 0 <= j < {k}", True, evidence, wit))
    else:
        rep.add(ConditionResult("conclusion_left", "vacuous", "hypotheses not met", True, evidence))
    rep.implications.append((["hypothesis_left_prefix", "hypothesis_right_sum", "hypothesis_right_tail"], "conclusion_left"))
    rep.parameters["hypotheses_met"] = met
    rep.parameters["conclusion_verified"] = bool(met and concl is True)
    return rep.finalize()


def _flag_all(flags) -> Optional[bool]:
    if any(fl is False for fl in flags):
        return False
    if any(fl is None for fl in flags):
        return None
    return True


def audit_injective_dimensions(ctx: BimoduleContext, *, cap: int = DEFAULT_CAP, override: bool = False) -> AuditReport:
    """Injective dimensions of U on both sides, directly and through flat dimensions of Hom(U, Q)."""
    hyp = _gate(ctx, 2, override)
    rep = AuditReport(_context_id(ctx), "injective_dimensions", {"cap": cap}, hyp)
    c_op = ctx.op()
    l_id = homdim(ctx.u, "injective", cap)
    r_id = homdim(ctx.u_s, "injective", cap)
    _s, _p, inj_r = standard_modules(ctx.R)
    _s2, _p2, inj_s = standard_modules(ctx.S)
    Q = direct_sum(inj_r, ctx.R).module
    Qp = direct_sum(inj_s, ctx.S).module
    r_id_via = homdim(hom_into_gamma(ctx, Q), "flat", cap)
    l_id_via = homdim(hom_into_gamma(c_op, Qp), "flat", cap)
    same_r = _same(r_id, r_id_via)
    same_l = _same(l_id, l_id_via)
    rep.add(ConditionResult("right_injective_dimension_two_routes", _exact_verdict(same_r), "id(U over Gamma) equals fd Hom(U, Q) over Gamma", True, {"direct": str(r_id), "via_hom": str(r_id_via)}, None if same_r is not False else {"direct": str(r_id), "via_hom": str(r_id_via)}))
    rep.add(ConditionResult("left_injective_dimension_two_routes", _exact_verdict(same_l), "id(U over Lambda) equals fd Hom(U, Q') over Lambda^op", True, {"direct": str(l_id), "via_hom": str(l_id_via)}, None if same_l is not False else {"direct": str(l_id), "via_hom": str(l_id_via)}))
    # cogenerator from the first n+1 injective terms
    if r_id.is_exact:
        n = r_id.n
        terms = injective_terms(ctx, "left", n + 1)
        V = direct_sum(terms, ctx.R).module
        simples, _p, _i = standard_modules(ctx.R)
        missing = [s.name for s in simples if hom_dim(s, V) == 0]
        rep.add(
            ConditionResult(
                "injective_terms_cogenerate",
                "fails" if missing else "holds",
                f"E_0 + ... + E_{n} receives a nonzero map from every simple",
                True,
                {"terms": n + 1, "injective": is_injective(V)},
                {"simples": missing} if missing else None,
            )
        )
    else:
        rep.add(ConditionResult("injective_terms_cogenerate", "vacuous", "id(U over Gamma) not finite within cap", True, {"value": str(r_id)}))
    # projective dimensions (tilting case)
    l_pd = homdim(ctx.u, "projective", cap)
    r_pd = homdim(ctx.u_s, "projective", cap)
    if l_pd.is_exact and r_pd.is_exact:
        rep.add(ConditionResult("projective_dimensions_equal", "holds" if l_pd.n == r_pd.n else "fails", "finite pd of U on both sides agree", True, {"left": str(l_pd), "right": str(r_pd)}, None if l_pd.n == r_pd.n else {"left": l_pd.n, "right": r_pd.n}))
    else:
        rep.add(ConditionResult("projective_dimensions_equal", "vacuous", "a projective dimension is not finite within cap", True, {"left": str(l_pd), "right": str(r_pd)}))
    # Gorenstein up to cap with both ids finite
    gl = [p.value.le(i) for i, p in enumerate(_lim_profile(ctx, "left", cap, cap))]
    gr = [p.value.le(i) for i, p in enumerate(_lim_profile(ctx, "right", cap, cap))]
    gor = _flag_all(gl + gr)
    if gor is True and l_id.is_exact and r_id.is_exact:
        rep.add(ConditionResult("injective_dimensions_equal", "holds" if l_id.n == r_id.n else "fails", f"Gorenstein up to cap {cap}: id of U agree on both sides", True, {"left": str(l_id), "right": str(r_id)}, None if l_id.n == r_id.n else {"left": l_id.n, "right": r_id.n}))
    else:
        rep.add(ConditionResult("injective_dimensions_equal", "vacuous", "not Gorenstein up to cap or an id is not finite", True, {"left": str(l_id), "right": str(r_id), "gorenstein_up_to_cap": gor}))
    rep.parameters["left_injective_dimension"] = str(l_id)
    rep.parameters["right_injective_dimension"] = str(r_id)
    rep.invariants.extend(
        [
            "right_injective_dimension_two_routes",
            "left_injective_dimension_two_routes",
            "injective_terms_cogenerate",
            "projective_dimensions_equal",
            "injective_dimensions_equal",
        ]
    )
    return rep.finalize()


def _same(a: InvariantValue, b: InvariantValue) -> Optional[bool]:
    if a.is_exact and b.is_exact:
        return a.n == b.n
    if a.kind == b.kind == "zero_module":
        return True
    if a.is_exact != b.is_exact:
        # one finite, the other only bounded below by the same cap
        finite = a if a.is_exact else b
        other = b if a.is_exact else a
        if other.kind == "at_least" and finite.n < other.n:
            return False
        return None
    return None
