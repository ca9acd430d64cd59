"""Finite-dimensional algebras given by structure constants.

An :class:`FDAlgebra` stores a basis ``b_0, ..., b_{n-1}`` and a table ``T``
with ``b_i * b_j = sum_k T[i, j, k] b_k``. Path algebras of bound quivers are
built by :func:`build_path_algebra`; endomorphism algebras reuse the same
class, so every downstream routine treats both kinds uniformly.

Paths compose like functions: for arrows ``a: i -> j`` and ``b: j -> k`` the
product ``b*a`` is the path that first travels ``a`` and then ``b``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from .exactfield import Field


class AlgebraError(ValueError):
    """Raised for malformed presentations and failed certifications."""


# ---------------------------------------------------------------------------
# quivers and presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow labels must be unique")
        if set(names) & set(map(str, self.vertices)):
            raise AlgebraError("arrow labels must differ from vertex labels")
        for name, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise AlgebraError(f"arrow {name} uses an undeclared vertex")

    def arrow(self, name):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise AlgebraError(f"unknown arrow {name!r}")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple((n, t, s) for n, s, t in self.arrows))


# A relation is a list of (coefficient, word) pairs. A word is a tuple of arrow
# names written in function order, so ("b", "a") means a then b.
Relation = list


@dataclass
class PathAlgebraPresentation:
    quiver: Quiver
    relations: list
    field: Field
    nilpotency_cap: int = 6
    # "covariant": a left module is a representation of the quiver (arrow
    # i -> j acts as M_i -> M_j). "contravariant": left modules are
    # representations of the opposite quiver, i.e. the built algebra is the
    # opposite of the covariant one.
    convention: str = "covariant"


def _travel(word: Sequence[str]) -> tuple:
    """Function-order word -> arrows in travel order."""
    return tuple(reversed(tuple(word)))


def path_label(start, travel: tuple) -> str:
    if not travel:
        return f"e{start}"
    return "*".join(reversed(travel))


def _paths_up_to(quiver: Quiver, n: int) -> list:
    """All paths of length <= n as (start, end, travel tuple)."""
    out = [(v, v, ()) for v in quiver.vertices]
    layer = list(out)
    for _ in range(n):
        nxt = []
        for s, t, w in layer:
            for name, a_s, a_t in quiver.arrows:
                if a_s == t:
                    nxt.append((s, a_t, w + (name,)))
        out.extend(nxt)
        layer = nxt
    return out


# ---------------------------------------------------------------------------
# the algebra class
# ---------------------------------------------------------------------------


class FDAlgebra:
    """An associative unital algebra with a chosen basis.

    ``idempotents`` may supply a complete set of primitive orthogonal
    idempotents, ``radical`` a basis (columns) of the Jacobson radical and
    ``generators`` a list of Peirce-homogeneous algebra generators
    ``(w, v, vector)`` with ``vector = e_w vector e_v``. Anything not supplied
    is computed on demand by the generic routines below.
    """

    def __init__(
        self,
        field: Field,
        table: np.ndarray,
        unit,
        labels: Optional[Sequence[str]] = None,
        *,
        name: str = "A",
        radical: Optional[np.ndarray] = None,
        idempotents: Optional[list] = None,
        generators: Optional[list] = None,
        idempotent_labels: Optional[list] = None,
        quiver: Optional[Quiver] = None,
        paths: Optional[list] = None,
        basic: Optional[bool] = None,
    ):
        self.field = field
        self.T = field.array(table)
        n = self.T.shape[0]
        if self.T.shape != (n, n, n):
            raise AlgebraError("structure constants must have shape (n, n, n)")
        self.dim = n
        self.unit = field.array(unit).reshape(n)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        self.name = name
        self._radical = radical
        self._idempotents = idempotents
        self._generators = generators
        self.idempotent_labels = idempotent_labels
        self.quiver = quiver
        self.paths = paths
        self._basic = basic
        self._opposite: Optional[FDAlgebra] = None
        self._classes = None
        self._cache: dict = {}

    def __repr__(self):
        return f"FDAlgebra({self.name}, dim={self.dim}, field={self.field!r})"

    # -- elements ----------------------------------------------------------
    def basis(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one()
        return v

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def mul(self, x, y) -> np.ndarray:
        f = self.field
        left = f.tensordot(x, self.T, (0, 0))  # [j, k]
        return f.tensordot(y, left, (0, 0))

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y in the basis."""
        return self.field.tensordot(x, self.T, (0, 0)).T.copy()

    def right_matrix(self, x) -> np.ndarray:
        """Matrix of y -> y*x in the basis."""
        return self.field.tensordot(self.T, x, (1, 0)).T.copy()

    def power(self, x, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = x.copy()
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def regular_action(self) -> np.ndarray:
        """Action array of the left regular module: entry i is left mult by b_i."""
        if "regular" not in self._cache:
            self._cache["regular"] = np.ascontiguousarray(np.transpose(self.T, (0, 2, 1)))
        return self._cache["regular"]

    # -- checks --------------------------------------------------------------
    def is_associative(self) -> bool:
        f = self.field
        lhs = f.tensordot(self.T, self.T, (2, 0))  # (i, j, k, m)
        rhs = f.tensordot(self.T, self.T, (2, 1))  # (j, k, i, m)
        rhs = np.transpose(rhs, (2, 0, 1, 3))
        return bool(np.all(lhs == rhs))

    def unit_is_two_sided(self) -> bool:
        f = self.field
        eye = f.eye(self.dim)
        return bool(np.all(self.left_matrix(self.unit) == eye) and np.all(self.right_matrix(self.unit) == eye))

    def is_commutative(self) -> bool:
        return bool(np.all(self.T == np.transpose(self.T, (1, 0, 2))))

    # -- opposite ------------------------------------------------------------
    def opposite(self) -> "FDAlgebra":
        if self._opposite is None:
            op = FDAlgebra(
                self.field,
                np.ascontiguousarray(np.transpose(self.T, (1, 0, 2))),
                self.unit,
                self.labels,
                name=self.name[:-3] if self.name.endswith("^op") else self.name + "^op",
                radical=self._radical,
                idempotents=self._idempotents,
                generators=None
                if self._generators is None
                else [(v, w, g) for (w, v, g) in self._generators],
                idempotent_labels=self.idempotent_labels,
                quiver=self.quiver.opposite() if self.quiver is not None else None,
                paths=None
                if self.paths is None
                else [(t, s, tuple(reversed(w))) for (s, t, w) in self.paths],
                basic=self._basic,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    # -- subspaces -----------------------------------------------------------
    def span_closure(self, vectors: np.ndarray, multipliers: list) -> np.ndarray:
        """Smallest subspace containing ``vectors`` and stable under left mult by ``multipliers``."""
        f = self.field
        cur = f.colspace(vectors) if vectors.shape[1] else vectors
        mats = [self.left_matrix(x) for x in multipliers]
        while True:
            new = f.hstack([cur] + [f.matmul(m, cur) for m in mats], self.dim)
            nxt = f.colspace(new)
            if nxt.shape[1] == cur.shape[1]:
                return cur
            cur = nxt

    def ideal_generated(self, vectors: np.ndarray) -> np.ndarray:
        """Two-sided ideal generated by the columns of ``vectors``."""
        f = self.field
        cur = f.colspace(vectors) if vectors.shape[1] else vectors
        if cur.shape[1] == 0:
            return cur
        L = [self.left_matrix(self.basis(i)) for i in range(self.dim)]
        R = [self.right_matrix(self.basis(i)) for i in range(self.dim)]
        while True:
            new = f.hstack([cur] + [f.matmul(m, cur) for m in L + R], self.dim)
            nxt = f.colspace(new)
            if nxt.shape[1] == cur.shape[1]:
                return cur
            cur = nxt

    def subalgebra(self, basis: np.ndarray, unit) -> tuple["FDAlgebra", np.ndarray]:
        """Algebra on the column span of ``basis`` (closed under products) with unit ``unit``.

        Returns the algebra and the embedding matrix (its columns are ``basis``).
        """
        f = self.field
        r = basis.shape[1]
        prods = f.zeros((self.dim, r * r))
        for i in range(r):
            li = self.left_matrix(basis[:, i])
            prods[:, i * r : (i + 1) * r] = f.matmul(li, basis)
        linv = f.left_inverse(basis)
        coords = f.matmul(linv, prods)
        if not np.all(f.matmul(basis, coords) == prods):
            raise AlgebraError("subspace is not closed under multiplication")
        table = coords.T.reshape(r, r, r)
        u = f.matmul(linv, f.array(unit).reshape(-1, 1)).reshape(r)
        sub = FDAlgebra(f, table, u, name=self.name + "_sub")
        return sub, basis

    def quotient(self, ideal: np.ndarray) -> tuple["FDAlgebra", np.ndarray]:
        """Quotient by a two-sided ideal; returns the algebra and lifting columns."""
        f = self.field
        comp = f.complement(ideal, self.dim)
        r = comp.shape[1]
        full = f.hstack([comp, ideal], self.dim)
        finv = f.inverse(full)
        prods = f.zeros((self.dim, r * r))
        for i in range(r):
            prods[:, i * r : (i + 1) * r] = f.matmul(self.left_matrix(comp[:, i]), comp)
        coords = f.matmul(finv, prods)[:r]
        table = coords.T.reshape(r, r, r)
        u = f.matmul(finv, self.unit.reshape(-1, 1))[:r].reshape(r)
        q = FDAlgebra(f, table, u, name=self.name + "_quot")
        q._cache["project"] = finv[:r]
        return q, comp

    def center(self) -> np.ndarray:
        """Columns spanning the center."""
        f = self.field
        n = self.dim
        rows = []
        for j in range(n):
            bj = self.basis(j)
            rows.append(f.sub(self.right_matrix(bj), self.left_matrix(bj)))
        return f.kernel(f.vstack(rows, n))

    def minimal_polynomial(self, x) -> list:
        """Monic minimal polynomial of ``x`` as coefficients c_0, ..., c_d (c_d = 1)."""
        f = self.field
        powers = [self.unit.copy()]
        while True:
            cur = self.mul(powers[-1], x)
            basis = np.stack(powers, axis=1)
            sol = f.solve(basis, cur.reshape(-1, 1))
            if sol is not None:
                coeffs = [f.neg(c) for c in sol.reshape(-1)]
                return coeffs + [f.one()]
            powers.append(cur)

    def eval_poly(self, coeffs_high_first: list, x) -> np.ndarray:
        f = self.field
        acc = self.zero()
        for c in coeffs_high_first:
            acc = f.add(self.mul(acc, x), f.scale(c, self.unit))
        return acc

    # -- radical -------------------------------------------------------------
    def radical(self) -> np.ndarray:
        """Columns spanning the Jacobson radical."""
        if self._radical is None:
            self._radical = self.generic_radical()
        return self._radical

    def generic_radical(self) -> np.ndarray:
        if "generic_radical" not in self._cache:
            if self.field.characteristic == 0:
                rad = _radical_trace_form(self)
            else:
                rad = _radical_frobenius(self)
            self._cache["generic_radical"] = rad
        return self._cache["generic_radical"]

    def in_radical(self, x) -> bool:
        rad = self.radical()
        if rad.shape[1] == 0:
            return self.field.is_zero(x)
        return self.field.in_span(rad, x.reshape(-1, 1))

    def is_semisimple(self) -> bool:
        return self.radical().shape[1] == 0

    # -- idempotents ---------------------------------------------------------
    def primitive_idempotents(self) -> list:
        """A complete list of primitive orthogonal idempotents summing to 1."""
        if self._idempotents is None:
            self._idempotents = self.generic_primitive_idempotents()
            self.idempotent_labels = [f"e{i}" for i in range(len(self._idempotents))]
        return self._idempotents

    def generic_primitive_idempotents(self, seed: int = 0) -> list:
        key = ("generic_idempotents", seed)
        if key not in self._cache:
            rng = random.Random(seed)
            self._cache[key] = _split_idempotent(self, self.unit.copy(), rng)
        return self._cache[key]

    def idempotent_classes(self) -> list:
        """Group the primitive idempotents by isomorphism class of A e.

        Returns a list of index lists; the first index of each group is the
        representative used for projective covers.
        """
        if self._classes is None:
            idem = self.primitive_idempotents()
            m = len(idem)
            if self._basic:
                self._classes = [[i] for i in range(m)]
                return self._classes
            parent = list(range(m))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for i in range(m):
                for j in range(i + 1, m):
                    if find(i) == find(j):
                        continue
                    if self._linked(idem[j], idem[i]):
                        parent[find(j)] = find(i)
            groups: dict = {}
            for i in range(m):
                groups.setdefault(find(i), []).append(i)
            self._classes = sorted(groups.values(), key=lambda g: g[0])
        return self._classes

    def _linked(self, ej, ei) -> bool:
        """True when e_j A e_i contains an element outside the radical."""
        f = self.field
        left = self.left_matrix(ej)
        right = self.right_matrix(ei)
        peirce = f.matmul(left, right)  # x -> e_j x e_i
        span = f.colspace(peirce)
        return any(not self.in_radical(span[:, c]) for c in range(span.shape[1]))

    def basic_idempotents(self) -> list:
        idem = self.primitive_idempotents()
        return [idem[g[0]] for g in self.idempotent_classes()]

    def basic_labels(self) -> list:
        labels = self.idempotent_labels or [f"e{i}" for i in range(len(self.primitive_idempotents()))]
        return [labels[g[0]] for g in self.idempotent_classes()]

    def peirce_generators(self) -> list:
        """Generators ``(w, v, g)`` with ``g = e_w g e_v``; with the idempotents they generate A."""
        if self._generators is None:
            self._generators = _peirce_generators(self)
        return self._generators

    def element_label(self, x) -> str:
        terms = []
        for i, c in enumerate(x):
            if c != 0:
                terms.append(self.labels[i] if c == 1 else f"{c}*{self.labels[i]}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# path algebra construction
# ---------------------------------------------------------------------------


def build_path_algebra(p: PathAlgebraPresentation, name: str = "Lambda") -> FDAlgebra:
    """Build KQ/I from a quiver, relations and a nilpotency cap N.

    The ideal is computed inside KQ modulo paths of length > N. Every path of
    length N must lie in it, which certifies that the arrow ideal is nilpotent
    modulo I and that the result is the full quotient.
    """
    f = p.field
    q = p.quiver
    N = p.nilpotency_cap
    if p.convention not in ("covariant", "contravariant"):
        raise AlgebraError(f"unknown module convention {p.convention!r}")
    if N < 2:
        raise AlgebraError("nilpotency cap must be at least 2")
    paths = _paths_up_to(q, N)
    index = {(s, w): i for i, (s, t, w) in enumerate(paths)}
    ends = {(s, w): t for (s, t, w) in paths}

    # relations -> (source, target, {travel: coeff})
    rels = []
    for rel in p.relations:
        terms: dict = {}
        src = tgt = None
        for coeff, word in rel:
            travel = _travel(word)
            if len(travel) < 2:
                raise AlgebraError(f"relation term {'*'.join(word)} has length < 2")
            s = q.arrow(travel[0])[1]
            pos = s
            for a in travel:
                name_, a_s, a_t = q.arrow(a)
                if a_s != pos:
                    raise AlgebraError(f"relation not composable: {'*'.join(word)}")
                pos = a_t
            if src is None:
                src, tgt = s, pos
            elif (s, pos) != (src, tgt):
                raise AlgebraError("relation not composable: terms have different endpoints")
            c = f.scalar(coeff)
            terms[travel] = f.reduce(np.array([terms.get(travel, f.zero()) + c], dtype=f.dtype))[0]
        rels.append((src, tgt, {w: c for w, c in terms.items() if c != 0}))

    # ideal generators p * r * q, truncated above length N
    by_start: dict = {}
    by_end: dict = {}
    for s, t, w in paths:
        by_start.setdefault(s, []).append((t, w))
        by_end.setdefault(t, []).append((s, w))
    rows = []
    for src, tgt, terms in rels:
        if not terms:
            continue
        for s0, pre in by_end.get(src, []):
            for t1, post in by_start.get(tgt, []):
                row = {}
                for w, c in terms.items():
                    full = pre + w + post
                    if len(full) <= N:
                        row[index[(s0, full)]] = c
                if row:
                    rows.append(row)

    # columns ordered longest first, so pivots land on long paths
    order = sorted(range(len(paths)), key=lambda i: (-len(paths[i][2]), i))
    colpos = {pi: c for c, pi in enumerate(order)}
    mat = f.zeros((len(rows), len(paths)))
    for r, row in enumerate(rows):
        for pi, c in row.items():
            mat[r, colpos[pi]] = c
    if rows:
        red, pivots = f.rref(mat)
        red = red[: len(pivots)]
    else:
        red, pivots = f.zeros((0, len(paths))), []
    pivot_set = set(pivots)
    for s, t, w in paths:
        if len(w) == N and colpos[index[(s, w)]] not in pivot_set:
            raise AlgebraError(f"ideal not admissible within cap: path {path_label(s, w)} survives")

    standard = [c for c in range(len(paths)) if c not in pivot_set]
    standard.sort(key=lambda c: (len(paths[order[c]][2]), order[c]))
    basis_paths = [paths[order[c]] for c in standard]
    n = len(basis_paths)
    std_pos = {c: k for k, c in enumerate(standard)}
    pivot_row = {c: r for r, c in enumerate(pivots)}

    def reduce_path(s, w) -> np.ndarray:
        v = f.zeros(n)
        if len(w) > N:
            return v
        c = colpos[index[(s, w)]]
        if c in std_pos:
            v[std_pos[c]] = f.one()
            return v
        row = red[pivot_row[c]]
        for c2, k in std_pos.items():
            if row[c2] != 0:
                v[k] = -row[c2]
        return f.reduce(v)

    table = f.zeros((n, n, n))
    for i, (si, ti, wi) in enumerate(basis_paths):
        for j, (sj, tj, wj) in enumerate(basis_paths):
            # b_i * b_j = b_j then b_i
            if tj == si:
                table[i, j] = reduce_path(sj, wj + wi)
    unit = f.zeros(n)
    idem = []
    idem_labels = []
    for k, (s, t, w) in enumerate(basis_paths):
        if not w:
            unit[k] = f.one()
            e = f.zeros(n)
            e[k] = f.one()
            idem.append(e)
            idem_labels.append(f"e{s}")
    labels = [path_label(s, w) for s, t, w in basis_paths]
    rad_idx = [k for k, (s, t, w) in enumerate(basis_paths) if w]
    radical = f.eye(n)[:, rad_idx]
    vidx = {v: k for k, v in enumerate(q.vertices)}
    gens = []
    for k, (s, t, w) in enumerate(basis_paths):
        if len(w) == 1:
            gens.append((vidx[t], vidx[s], f.eye(n)[:, k].copy()))
    alg = FDAlgebra(
        f,
        table,
        unit,
        labels,
        name=name,
        radical=radical,
        idempotents=idem,
        generators=gens,
        idempotent_labels=idem_labels,
        quiver=q,
        paths=[(s, t, w) for s, t, w in basis_paths],
        basic=True,
    )
    if p.convention == "contravariant":
        alg.name = name + "^op"
        alg = alg.opposite()
        alg.name = name
    return alg


def path_vertex_order(alg: FDAlgebra) -> list:
    return list(alg.quiver.vertices) if alg.quiver is not None else list(range(len(alg.primitive_idempotents())))


# ---------------------------------------------------------------------------
# generic radical
# ---------------------------------------------------------------------------


def _radical_trace_form(alg: FDAlgebra) -> np.ndarray:
    """rad A = {x : tr L_{xy} = 0 for all y} in characteristic zero."""
    f = alg.field
    n = alg.dim
    traces = f.array([np.trace(alg.left_matrix(alg.basis(k))) for k in range(n)])
    gram = f.tensordot(alg.T, traces, (2, 0))  # gram[i, j] = tr L_{b_i b_j}
    return f.kernel(gram.T)


def _frobenius_trace_value(mat: np.ndarray, p: int, i: int) -> int:
    """(Tr(lift(mat)^(p^i)) / p^i) mod p for an integer lift with entries in [0, p)."""
    mod = p ** (i + 1)
    n = mat.shape[0]
    safe = n * (mod - 1) ** 2 < (1 << 62)
    m = mat.astype(np.int64) if safe else np.array(mat.astype(object))
    result = None
    base = m % mod
    e = p**i
    while e:
        if e & 1:
            result = base if result is None else (result @ base) % mod
        e >>= 1
        if e:
            base = (base @ base) % mod
    tr = int(np.trace(result)) % mod
    q, r = divmod(tr, p**i)
    if r != 0:
        raise AlgebraError("Frobenius trace not divisible; radical computation inconsistent")
    return q % p


def _radical_frobenius(alg: FDAlgebra) -> np.ndarray:
    """Radical over F_p by the iterated Frobenius-trace filtration."""
    f = alg.field
    p = f.characteristic
    n = alg.dim
    lmats = [alg.left_matrix(alg.basis(j)) for j in range(n)]
    level = 0
    while p ** (level + 1) <= n:
        level += 1
    current = f.eye(n)
    for i in range(level + 1):
        r = current.shape[1]
        if r == 0:
            break
        vals = f.zeros((n, r))
        for k in range(r):
            lc = alg.left_matrix(current[:, k])
            for j in range(n):
                prod = f.matmul(lc, lmats[j])
                if i == 0:
                    vals[j, k] = f.scalar(int(np.trace(prod)))
                else:
                    vals[j, k] = _frobenius_trace_value(prod, p, i)
        current = f.matmul(current, f.kernel(vals)) if r else current
    return f.colspace(current) if current.shape[1] else current


# ---------------------------------------------------------------------------
# generic primitive idempotents
# ---------------------------------------------------------------------------


def _to_sympy_poly(alg: FDAlgebra, coeffs_low_first: list):
    X = sympy.Symbol("X")
    f = alg.field
    high = list(reversed(coeffs_low_first))
    if f.characteristic:
        return sympy.Poly([int(c) for c in high], X, modulus=f.characteristic), X
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in high], X, domain=sympy.QQ), X


def _from_sympy_coeffs(alg: FDAlgebra, poly) -> list:
    f = alg.field
    out = []
    for c in poly.all_coeffs():
        if f.characteristic:
            out.append(f.scalar(int(c)))
        else:
            c = sympy.Rational(c)
            out.append(Fraction(int(c.p), int(c.q)))
    return out


def _crt_idempotent(alg: FDAlgebra, x, minpoly: list):
    """A nontrivial idempotent in the subalgebra K[x], or None if minpoly is a prime power."""
    poly, X = _to_sympy_poly(alg, minpoly)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    fpart = factors[0][0] ** factors[0][1]
    g = poly.exquo(fpart)
    s, t, h = fpart.gcdex(g)
    if h.degree() != 0:
        raise AlgebraError("coprime factors expected")
    e_poly = (t * g).quo_ground(h.LC()) if h.LC() != 1 else t * g
    e = alg.eval_poly(_from_sympy_coeffs(alg, e_poly), x)
    return e


def _poly_is_irreducible(alg: FDAlgebra, minpoly: list) -> bool:
    poly, _ = _to_sympy_poly(alg, minpoly)
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


def _proper_factor_value(alg: FDAlgebra, x, minpoly: list):
    """f(x) for a proper factor f of minpoly (a zero divisor), or None if irreducible."""
    poly, X = _to_sympy_poly(alg, minpoly)
    _, factors = poly.factor_list()
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    fac = factors[0][0]
    return alg.eval_poly(_from_sympy_coeffs(alg, fac), x)


def _candidates(alg: FDAlgebra, basis: np.ndarray, rng: random.Random, tries: int):
    f = alg.field
    r = basis.shape[1]
    for i in range(r):
        yield basis[:, i]
    for i, j in itertools.combinations(range(r), 2):
        yield f.add(basis[:, i], basis[:, j])
    for _ in range(tries):
        coeffs = f.random_array(rng, (r,))
        yield f.matmul(basis, coeffs.reshape(-1, 1)).reshape(-1)


def _commutative_idempotent(S: FDAlgebra, Z: np.ndarray, rng: random.Random):
    """Nontrivial idempotent of the center Z of a semisimple S, or None if Z is a field."""
    f = S.field
    zalg, emb = S.subalgebra(Z, S.unit)
    d = zalg.dim
    if d == 1:
        return None
    if f.characteristic:
        p = f.characteristic
        frob = f.zeros((d, d))
        for i in range(d):
            frob[:, i] = zalg.power(zalg.basis(i), p)
        fixed = f.kernel(f.sub(frob, f.eye(d)))
        if fixed.shape[1] == 1:
            return None
        for k in range(fixed.shape[1]):
            b = fixed[:, k]
            mp = zalg.minimal_polynomial(b)
            if len(mp) > 2:
                e = _crt_idempotent(zalg, b, mp)
                if e is not None:
                    return f.matmul(emb, e.reshape(-1, 1)).reshape(-1)
        raise AlgebraError("Berlekamp subalgebra did not split")
    for z in _candidates(zalg, f.eye(d), rng, 200):
        mp = zalg.minimal_polynomial(z)
        e = _crt_idempotent(zalg, z, mp)
        if e is not None:
            return f.matmul(emb, e.reshape(-1, 1)).reshape(-1)
        if len(mp) - 1 == d:
            return None  # primitive element with irreducible minimal polynomial: Z is a field
    raise AlgebraError("could not decide whether the center is a field")


def _find_zero_divisor(S: FDAlgebra, rng: random.Random):
    f = S.field
    for x in _candidates(S, f.eye(S.dim), rng, 400):
        if f.is_zero(x):
            continue
        if f.rank(S.left_matrix(x)) < S.dim:
            return x
        mp = S.minimal_polynomial(x)
        y = _proper_factor_value(S, x, mp)
        if y is not None and not f.is_zero(y):
            return y
    return None


def _right_identity(S: FDAlgebra, x) -> np.ndarray:
    """Idempotent generator e of the left ideal S x (so S x = S e)."""
    f = S.field
    ideal = f.colspace(S.right_matrix(x))
    r = ideal.shape[1]
    blocks = [f.matmul(S.left_matrix(ideal[:, j]), ideal) for j in range(r)]
    a = f.vstack(blocks, r)
    b = f.array(ideal.T.reshape(-1, 1))
    c = f.solve(a, b)
    if c is None:
        raise AlgebraError("left ideal has no right identity; algebra not semisimple")
    return f.matmul(ideal, c).reshape(-1)


def _semisimple_idempotent(S: FDAlgebra, rng: random.Random):
    """A nontrivial idempotent of the semisimple algebra S, or None if S is a division algebra."""
    if S.dim == 1:
        return None
    Z = S.center()
    e = _commutative_idempotent(S, Z, rng)
    if e is not None:
        return e
    if Z.shape[1] == S.dim:
        return None  # S commutative and its center is a field
    x = _find_zero_divisor(S, rng)
    if x is None:
        if S.field.characteristic:
            raise AlgebraError("zero divisor search failed in a matrix algebra over a finite field")
        raise AlgebraError("cannot certify a noncommutative division algebra over Q")
    return _right_identity(S, x)


def _lift_idempotent(C: FDAlgebra, x) -> np.ndarray:
    f = C.field
    for _ in range(64):
        x2 = C.mul(x, x)
        if np.all(x2 == x):
            return x
        x3 = C.mul(x2, x)
        x = f.sub(f.scale(3, x2), f.scale(2, x3))
    raise AlgebraError("idempotent lifting did not converge")


def _split_idempotent(alg: FDAlgebra, e, rng: random.Random) -> list:
    f = alg.field
    corner_span = f.colspace(f.matmul(alg.left_matrix(e), alg.right_matrix(e)))
    C, emb = alg.subalgebra(corner_span, e)
    rad = C.generic_radical()
    if rad.shape[1] == 0:
        S, lift = C, f.eye(C.dim)
    else:
        S, lift = C.quotient(rad)
    fs = _semisimple_idempotent(S, rng)
    if fs is None:
        return [e]
    x = f.matmul(lift, fs.reshape(-1, 1)).reshape(-1)
    fc = _lift_idempotent(C, x)
    fa = f.matmul(emb, fc.reshape(-1, 1)).reshape(-1)
    return _split_idempotent(alg, fa, rng) + _split_idempotent(alg, f.sub(e, fa), rng)


def _peirce_generators(alg: FDAlgebra) -> list:
    f = alg.field
    idem = alg.primitive_idempotents()
    n = alg.dim
    base = f.hstack([alg.unit.reshape(-1, 1)] + [e.reshape(-1, 1) for e in idem], n)
    chosen = []
    span = alg.span_closure(base, list(idem))
    for i in range(n):
        if span.shape[1] == n:
            break
        b = alg.basis(i)
        if f.in_span(span, b.reshape(-1, 1)):
            continue
        chosen.append(b)
        span = alg.span_closure(f.hstack([span, b.reshape(-1, 1)], n), list(idem) + chosen)
    gens = []
    lefts = [alg.left_matrix(e) for e in idem]
    rights = [alg.right_matrix(e) for e in idem]
    for g in chosen:
        for w in range(len(idem)):
            gw = f.matmul(lefts[w], g.reshape(-1, 1))
            for v in range(len(idem)):
                comp = f.matmul(rights[v], gw).reshape(-1)
                if not f.is_zero(comp):
                    gens.append((w, v, comp))
    return gens


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------


def semisimple_algebra(field: Field, n: int) -> FDAlgebra:
    """K x ... x K (n copies) as the path algebra of n isolated vertices."""
    q = Quiver(tuple(str(i + 1) for i in range(n)), ())
    return build_path_algebra(PathAlgebraPresentation(q, [], field, 2), name=f"K^{n}")


def algebra_from_table(field: Field, table, unit, labels=None, name="A") -> FDAlgebra:
    return FDAlgebra(field, table, unit, labels, name=name)
