"""Line-oriented workspace files describing a bound quiver, modules and U.

Example::

    # KQ/(b*a) on 1 -> 2 -> 3
    field: GF(2)
    vertices: 1 2 3
    arrows:
      a: 1 -> 2
      b: 2 -> 3
    relations:
      b*a
    module M:
      dim: 1 1 0
      arrow a: 1
    U: regular

Relations are K-linear combinations of ``*``-composed arrow names in
function order (``b*a`` travels a first). A leading numeric factor is the
coefficient (``2*b*a``, ``1/2*b*a``). Matrix rows are separated by ``;``.

Optional keys: ``name`` (algebra name), ``nilpotency`` (cap used by the
admissibility check) and ``convention``. With ``convention: contravariant``
left modules are representations of the opposite quiver, so the matrix of
an arrow ``a: i -> j`` in a module block maps the space at j to the space
at i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraError, FDAlgebra, PathAlgebraPresentation, Quiver, build_path_algebra
from .context import BimoduleContext, dual_regular_context, end_algebra, regular_context
from .exactfield import Field, field_from_spec
from .modules import FDModule, ModuleError, module_from_representation

TOP_KEYS = ("name", "field", "convention", "nilpotency", "vertices", "arrows", "relations", "module", "U")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_VERTEX = re.compile(r"^[A-Za-z0-9_']+$")
_NUMBER = re.compile(r"^-?\d+(/\d+)?$")


class WorkspaceError(ValueError):
    """Syntax or consistency error, positioned at a line of the input."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class ModuleSpec:
    name: str
    dims: dict
    arrows: dict  # arrow name -> list of rows (Fractions)
    line: int = dc_field(default=0, compare=False)


@dataclass
class WorkspaceFile:
    field_spec: str
    vertices: list
    arrows: list  # (name, source, target)
    relations: list  # list of [(Fraction, word tuple)]
    modules: dict = dc_field(default_factory=dict)
    u: tuple = ("regular",)
    name: str = "Lambda"
    convention: str = "covariant"
    nilpotency: int = 6
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    # -- construction ----------------------------------------------------------
    @property
    def field(self) -> Field:
        return field_from_spec(self.field_spec)

    def presentation(self) -> PathAlgebraPresentation:
        q = Quiver(tuple(self.vertices), tuple(tuple(a) for a in self.arrows))
        rels = [[(c, w) for c, w in rel] for rel in self.relations]
        return PathAlgebraPresentation(q, rels, self.field, self.nilpotency, self.convention)

    def algebra(self) -> FDAlgebra:
        if "algebra" not in self._cache:
            self._cache["algebra"] = build_path_algebra(self.presentation(), name=self.name)
        return self._cache["algebra"]

    def module(self, name: str) -> FDModule:
        key = ("module", name)
        if key not in self._cache:
            spec = self.modules.get(name)
            if spec is None:
                raise WorkspaceError(0, f"unknown module {name!r}")
            A = self.algebra()
            try:
                m = module_from_representation(A, spec.dims, spec.arrows, name=name)
            except ModuleError as exc:
                raise WorkspaceError(spec.line, f"module {name}: {exc}") from exc
            self._cache[key] = m
        return self._cache[key]

    def context(self) -> BimoduleContext:
        if "context" not in self._cache:
            A = self.algebra()
            kind = self.u[0]
            if kind == "regular":
                ctx = regular_context(A)
            elif kind == "dual-regular":
                ctx = dual_regular_context(A)
            else:
                ctx = end_algebra(self.module(self.u[1]), name=self.u[1])
            self._cache["context"] = ctx
        return self._cache["context"]

    # -- output ----------------------------------------------------------------
    def serialize(self) -> str:
        lines = [f"name: {self.name}", f"field: {self.field_spec}"]
        if self.convention != "covariant":
            lines.append(f"convention: {self.convention}")
        if self.nilpotency != 6:
            lines.append(f"nilpotency: {self.nilpotency}")
        lines.append("vertices: " + " ".join(self.vertices))
        lines.append("arrows:")
        for n, s, t in self.arrows:
            lines.append(f"  {n}: {s} -> {t}")
        lines.append("relations:")
        for rel in self.relations:
            lines.append("  " + _format_relation(rel))
        for name, spec in self.modules.items():
            lines.append(f"module {name}:")
            lines.append("  dim: " + " ".join(str(spec.dims.get(v, 0)) for v in self.vertices))
            for a, rows in spec.arrows.items():
                lines.append(f"  arrow {a}: " + "; ".join(" ".join(str(x) for x in r) for r in rows))
        lines.append("U: " + (self.u[0] if len(self.u) == 1 else f"module {self.u[1]}"))
        return "\n".join(lines) + "\n"


def _format_relation(rel) -> str:
    parts = []
    for k, (c, word) in enumerate(rel):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = "*".join(word) if mag == 1 else f"{mag}*" + "*".join(word)
        if k == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _number(tok: str, line: int) -> Fraction:
    if not _NUMBER.match(tok):
        raise WorkspaceError(line, f"expected a number, got {tok!r}")
    return Fraction(tok)


def _parse_relation(text: str, arrows: set, line: int) -> list:
    s = text.replace(" ", "")
    if not s:
        raise WorkspaceError(line, "empty relation")
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"([+-])([^+-]*)", s)
    if "".join(sg + body for sg, body in terms) != s:
        raise WorkspaceError(line, f"malformed relation {text!r}")
    out = []
    for sign, body in terms:
        if not body:
            raise WorkspaceError(line, f"malformed relation {text!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        factors = body.split("*")
        word = []
        for fac in factors:
            if not fac:
                raise WorkspaceError(line, f"malformed relation {text!r}")
            if _NUMBER.match(fac):
                if word:
                    raise WorkspaceError(line, "coefficients must precede arrow names")
                coeff *= Fraction(fac)
            elif fac in arrows:
                word.append(fac)
            else:
                raise WorkspaceError(line, f"unknown arrow {fac!r} in relation")
        if not word:
            raise WorkspaceError(line, "relation term without arrows")
        out.append((coeff, tuple(word)))
    return out


def _parse_matrix(text: str, line: int) -> list:
    text = text.strip()
    if not text:
        return []
    rows = []
    for r in text.split(";"):
        toks = r.split()
        rows.append([_number(t, line) for t in toks])
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise WorkspaceError(line, "matrix rows have different lengths")
    return rows


def parse_workspace(text: str) -> WorkspaceFile:
    """Parse a workspace file; raises :class:`WorkspaceError` with a line number."""
    seen: dict = {}
    field_spec = None
    vertices: Optional[list] = None
    arrows: list = []
    relations: list = []
    modules: dict = {}
    u = None
    name = "Lambda"
    convention = "covariant"
    nilpotency = 6
    block = None  # ("arrows",) | ("relations",) | ("module", name)
    arrow_names: set = set()
    pending_relations = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        indented = stripped[0] in " \t"
        body = stripped.strip()
        if indented:
            if block is None:
                raise WorkspaceError(lineno, "indented line outside a block")
            if block[0] == "arrows":
                m = re.match(r"^([^:\s]+)\s*:\s*(\S+)\s*->\s*(\S+)$", body)
                if not m:
                    raise WorkspaceError(lineno, f"malformed arrow {body!r} (expected 'name: src -> tgt')")
                a, s, t = m.groups()
                if not _IDENT.match(a):
                    raise WorkspaceError(lineno, f"bad arrow name {a!r}")
                if a in arrow_names:
                    raise WorkspaceError(lineno, f"duplicate arrow {a!r}")
                if vertices is None or s not in vertices or t not in vertices:
                    raise WorkspaceError(lineno, f"arrow {a} uses an undeclared vertex")
                arrows.append((a, s, t))
                arrow_names.add(a)
            elif block[0] == "relations":
                pending_relations.append((lineno, body))
            else:
                spec = modules[block[1]]
                m = re.match(r"^(dim|arrow\s+(\S+))\s*:(.*)$", body)
                if not m:
                    raise WorkspaceError(lineno, f"unknown module entry {body!r}")
                if m.group(1) == "dim":
                    if vertices is None:
                        raise WorkspaceError(lineno, "vertices must be declared before modules")
                    toks = m.group(3).split()
                    if len(toks) != len(vertices) or not all(t.isdigit() for t in toks):
                        raise WorkspaceError(lineno, f"dim needs one nonnegative integer per vertex ({len(vertices)})")
                    spec.dims = {v: int(t) for v, t in zip(vertices, toks)}
                else:
                    a = m.group(2)
                    if a not in arrow_names:
                        raise WorkspaceError(lineno, f"unknown arrow {a!r}")
                    if a in spec.arrows:
                        raise WorkspaceError(lineno, f"arrow {a} given twice")
                    spec.arrows[a] = _parse_matrix(m.group(3), lineno)
            continue

        block = None
        m = re.match(r"^module\s+(\S+)\s*:\s*$", body)
        if m:
            mname = m.group(1)
            if mname in modules:
                raise WorkspaceError(lineno, f"duplicate module {mname!r}")
            modules[mname] = ModuleSpec(mname, {}, {}, lineno)
            block = ("module", mname)
            continue
        m = re.match(r"^([A-Za-z_]+)\s*:(.*)$", body)
        if not m:
            raise WorkspaceError(lineno, f"expected 'key: value', got {body!r}")
        key, value = m.group(1), m.group(2).strip()
        if key not in TOP_KEYS or key == "module":
            raise WorkspaceError(lineno, f"unknown key {key!r}")
        if key in seen:
            raise WorkspaceError(lineno, f"key {key!r} repeated (first on line {seen[key]})")
        seen[key] = lineno
        if key == "field":
            try:
                field_from_spec(value)
            except ValueError as exc:
                raise WorkspaceError(lineno, str(exc)) from exc
            field_spec = value.replace(" ", "")
        elif key == "name":
            if not value:
                raise WorkspaceError(lineno, "empty name")
            name = value
        elif key == "convention":
            if value not in ("covariant", "contravariant"):
                raise WorkspaceError(lineno, f"convention must be covariant or contravariant, got {value!r}")
            convention = value
        elif key == "nilpotency":
            if not value.isdigit() or int(value) < 2:
                raise WorkspaceError(lineno, "nilpotency must be an integer >= 2")
            nilpotency = int(value)
        elif key == "vertices":
            toks = value.split()
            if not toks:
                raise WorkspaceError(lineno, "no vertices")
            for t in toks:
                if not _VERTEX.match(t):
                    raise WorkspaceError(lineno, f"bad vertex label {t!r}")
            if len(set(toks)) != len(toks):
                raise WorkspaceError(lineno, "duplicate vertex")
            vertices = toks
        elif key in ("arrows", "relations"):
            if value:
                raise WorkspaceError(lineno, f"'{key}:' takes its entries on the following indented lines")
            if key == "arrows" and vertices is None:
                raise WorkspaceError(lineno, "vertices must be declared before arrows")
            block = (key,)
        elif key == "U":
            if value in ("regular", "dual-regular"):
                u = (value,)
            else:
                mm = re.match(r"^module\s+(\S+)$", value)
                if not mm:
                    raise WorkspaceError(lineno, "U must be 'regular', 'dual-regular' or 'module <name>'")
                u = ("module", mm.group(1))
                seen["U_line"] = lineno

    if field_spec is None:
        raise WorkspaceError(0, "missing 'field:'")
    if vertices is None:
        raise WorkspaceError(0, "missing 'vertices:'")
    for lineno, body in pending_relations:
        relations.append(_parse_relation(body, arrow_names, lineno))
    for spec in modules.values():
        if not spec.dims:
            raise WorkspaceError(spec.line, f"module {spec.name} lacks 'dim:'")
        for a, rows in spec.arrows.items():
            _n, s, t = next(x for x in arrows if x[0] == a)
            if convention == "contravariant":
                s, t = t, s
            want = (spec.dims[t], spec.dims[s])
            ok = (len(rows), len(rows[0])) == want if rows else want[0] * want[1] == 0
            if not ok:
                raise WorkspaceError(spec.line, f"module {spec.name}: arrow {a} needs a {want[0]}x{want[1]} matrix")
    if u is None:
        u = ("regular",)
    if u[0] == "module" and u[1] not in modules:
        raise WorkspaceError(seen.get("U_line", 0), f"U refers to unknown module {u[1]!r}")
    ws = WorkspaceFile(field_spec, vertices, arrows, relations, modules, u, name, convention, nilpotency)
    return ws


def load_workspace(path) -> WorkspaceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


def check_workspace(ws: WorkspaceFile) -> FDAlgebra:
    """Build the algebra, surfacing admissibility failures as workspace errors."""
    try:
        return ws.algebra()
    except AlgebraError as exc:
        raise WorkspaceError(0, f"presentation rejected: {exc}") from exc
