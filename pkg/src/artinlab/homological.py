"""Minimal resolutions, Ext, Tor and the invariants built from them.

Projective covers use the indecomposable projectives ``A e_j`` for one
representative ``e_j`` per isomorphism class of primitive idempotents.
Injective resolutions are K-duals of projective resolutions over the
opposite algebra.

``Hom(A e_j, N)`` is identified with ``e_j N`` (evaluate at ``e_j``), which
keeps every cochain complex small and avoids general Hom solves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .algebra import FDAlgebra
from .context import BimoduleContext
from .exactfield import Field
from .modules import (
    DirectSum,
    FDModule,
    Morphism,
    ModuleError,
    cokernel,
    direct_sum,
    enumerate_submodules,
    factorize,
    hom_dim,
    identity,
    in_add,
    indecomposable_projective_data,
    is_cogenerated_by,
    k_dual,
    kernel,
    power,
    quotient,
    radical_of_module,
    regular_module,
    submodule,
    zero_module,
)


# ---------------------------------------------------------------------------
# invariant values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantValue:
    """exact(n), at_least(n), infinite_within_cap(cap), or the zero-module sentinel."""

    kind: str
    n: int = 0

    @staticmethod
    def exact(n: int) -> "InvariantValue":
        return InvariantValue("exact", n)

    @staticmethod
    def at_least(n: int) -> "InvariantValue":
        return InvariantValue("at_least", n)

    @staticmethod
    def infinite(cap: int) -> "InvariantValue":
        return InvariantValue("infinite_within_cap", cap)

    @staticmethod
    def zero() -> "InvariantValue":
        return InvariantValue("zero_module", 0)

    def __str__(self):
        if self.kind == "exact":
            return str(self.n)
        if self.kind == "at_least":
            return f">={self.n}"
        if self.kind == "infinite_within_cap":
            return f"inf(cap {self.n})"
        return "-inf(zero module)"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def le(self, bound: int) -> Optional[bool]:
        """Is the value <= bound? None when the cap leaves it undetermined."""
        if self.kind == "exact":
            return self.n <= bound
        if self.kind == "zero_module":
            return True
        if self.kind == "infinite_within_cap":
            return False if self.n > bound else None
        return False if self.n > bound else None

    def ge(self, bound: int) -> Optional[bool]:
        """Is the value >= bound? None when undetermined."""
        if self.kind == "exact":
            return self.n >= bound
        if self.kind == "zero_module":
            return False
        if self.kind == "infinite_within_cap":
            return True if self.n >= bound else None
        return True if self.n >= bound else None

    def sort_key(self):
        order = {"zero_module": (-1, 0), "exact": (0, self.n), "at_least": (0, self.n + 0.5), "infinite_within_cap": (1, self.n)}
        return order[self.kind]


def min_value(values: Sequence[InvariantValue]) -> InvariantValue:
    vals = list(values)
    exact = [v for v in vals if v.kind in ("exact", "zero_module")]
    if exact:
        return min(exact, key=lambda v: v.sort_key())
    bounded = [v for v in vals if v.kind == "at_least"]
    if bounded:
        return min(bounded, key=lambda v: v.n)
    return vals[0]


# ---------------------------------------------------------------------------
# projective covers
# ---------------------------------------------------------------------------


class ProjectiveSum:
    """A direct sum of indecomposable projectives A e_j with chosen generators."""

    def __init__(self, algebra: FDAlgebra, classes: Sequence[int]):
        self.algebra = algebra
        f = algebra.field
        reps = algebra.basic_idempotents()
        self.classes = list(classes)
        self.components = []
        mods = []
        for j in self.classes:
            Y, mod = indecomposable_projective_data(algebra, j)
            self.components.append((j, Y))
            mods.append(mod)
        self.sum: DirectSum = direct_sum(mods, algebra)
        self.module = self.sum.module
        self.offsets = list(itertools.accumulate([0] + [Y.shape[1] for _j, Y in self.components]))
        self._gens = []
        for (j, Y) in self.components:
            c = f.solve(Y, reps[j].reshape(-1, 1))
            self._gens.append(c.reshape(-1))

    def generator(self, k: int) -> np.ndarray:
        f = self.algebra.field
        v = f.zeros(self.module.dim)
        v[self.offsets[k] : self.offsets[k + 1]] = self._gens[k]
        return v

    def component_element(self, vec, k: int) -> np.ndarray:
        """The algebra element (in A e_j) given by component k of a vector."""
        f = self.algebra.field
        _j, Y = self.components[k]
        return f.matmul(Y, vec[self.offsets[k] : self.offsets[k + 1]].reshape(-1, 1)).reshape(-1)

    def __len__(self):
        return len(self.components)


def projective_cover(m: FDModule) -> tuple[ProjectiveSum, Morphism]:
    """Minimal projective cover P -> m."""
    A = m.algebra
    f = m.field
    reps = A.basic_idempotents()
    current = radical_of_module(m)
    chosen = []
    if m.dim:
        for j, e in enumerate(reps):
            ej = f.colspace(m.act(e))
            for c in range(ej.shape[1]):
                v = ej[:, c]
                if current.shape[1] and f.in_span(current, v.reshape(-1, 1)):
                    continue
                chosen.append((j, v))
                imgs = f.tensordot(m.action, v, (2, 0)).T  # columns b_i v
                current = f.colspace(f.hstack([current, imgs], m.dim))
            if current.shape[1] == m.dim:
                break
    if current.shape[1] != m.dim:
        raise ModuleError("projective cover construction failed to generate the module")
    P = ProjectiveSum(A, [j for j, _v in chosen])
    blocks = []
    for k, (j, v) in enumerate(chosen):
        _j, Y = P.components[k]
        imgs = f.tensordot(m.action, v, (2, 0)).T  # (d, n): column i = b_i v
        blocks.append(f.matmul(imgs, Y))
    mat = f.hstack(blocks, m.dim) if blocks else f.zeros((m.dim, 0))
    return P, Morphism(P.module, m, mat)


def injective_envelope(m: FDModule) -> tuple[FDModule, Morphism]:
    P, eps = projective_cover(k_dual(m))
    E = k_dual(P.module)
    return E, Morphism(m, E, eps.matrix.T.copy())


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------


@dataclass
class Resolution:
    """A minimal projective or injective resolution.

    Projective: ``maps[0]: P_0 -> M`` and ``maps[i]: P_i -> P_{i-1}``;
    ``syzygies[i]`` is the i-th syzygy (``syzygies[0] = M``).
    Injective: ``maps[0]: M -> E_0`` and ``maps[i]: E_{i-1} -> E_i``;
    ``syzygies[i]`` is the i-th cosyzygy.
    ``terminated`` is True when the resolution reached 0 within ``depth``.
    """

    kind: str
    subject: FDModule
    terms: list
    maps: list
    syzygies: list
    depth: int
    terminated: bool
    covers: list = dc_field(default_factory=list)

    @property
    def length(self) -> Optional[int]:
        if not self.terminated:
            return None
        return len(self.terms) - 1

    def term_classes(self, i: int) -> list:
        return list(self.covers[i].classes) if i < len(self.covers) else []

    def is_exact(self) -> bool:
        f = self.subject.field
        mats = [m.matrix for m in self.maps]
        for a, b in zip(mats, mats[1:]):
            if self.kind == "projective":
                prod = f.matmul(a, b) if a.size and b.size else None
            else:
                prod = f.matmul(b, a) if a.size and b.size else None
            if prod is not None and not f.is_zero(prod):
                return False
        ranks = [f.rank(m) if m.size else 0 for m in mats]
        dims = [t.dim for t in self.terms]
        if self.kind == "projective":
            # exact at M: maps[0] onto; at P_i: dim P_i = rank d_i + rank d_{i+1}
            if ranks and ranks[0] != self.subject.dim:
                return False
            for i in range(len(dims)):
                nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
                if i == len(dims) - 1 and not self.terminated:
                    continue
                if dims[i] != ranks[i] + nxt:
                    return False
        else:
            if ranks and ranks[0] != self.subject.dim:
                return False
            for i in range(len(dims)):
                nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
                if i == len(dims) - 1 and not self.terminated:
                    continue
                if dims[i] != ranks[i] + nxt:
                    return False
        return True

    def is_minimal(self) -> bool:
        """Projective: each differential lands in the radical; injective: dual statement."""
        f = self.subject.field
        if self.kind == "projective":
            for i in range(1, len(self.maps)):
                rad = radical_of_module(self.terms[i - 1])
                img = self.maps[i].matrix
                if img.size and not f.in_span(rad, img) if rad.shape[1] else (img.size and not f.is_zero(img)):
                    return False
            return True
        dual = dualize_resolution(self)
        return dual.is_minimal()


def projective_resolution(m: FDModule, depth: int) -> Resolution:
    f = m.field
    terms, maps, syz, covers = [], [], [m], []
    cur = m
    inc = None  # inclusion of cur into previous term
    terminated = m.dim == 0
    for i in range(depth + 1):
        if cur.dim == 0:
            terminated = True
            break
        P, eps = projective_cover(cur)
        covers.append(P)
        terms.append(P.module)
        if inc is None:
            maps.append(eps)
        else:
            maps.append(Morphism(P.module, inc.target, f.matmul(inc.matrix, eps.matrix)))
        K, kinc = kernel(eps)
        syz.append(K)
        cur, inc = K, kinc
    else:
        terminated = cur.dim == 0
    return Resolution("projective", m, terms, maps, syz, depth, terminated, covers)


def dualize_resolution(res: Resolution) -> Resolution:
    """K-dual of a resolution: projective over A^op <-> injective over A."""
    kind = "injective" if res.kind == "projective" else "projective"
    subject = k_dual(res.subject)
    terms = [k_dual(t) for t in res.terms]
    syz = [k_dual(s) for s in res.syzygies]
    maps = []
    for i, mp in enumerate(res.maps):
        src = subject if (i == 0 and kind == "injective") else None
        if kind == "injective":
            # P_0 -> DM dualizes to M -> E_0; P_i -> P_{i-1} to E_{i-1} -> E_i
            s = subject if i == 0 else terms[i - 1]
            maps.append(Morphism(s, terms[i], mp.matrix.T.copy()))
        else:
            t = subject if i == 0 else terms[i - 1]
            maps.append(Morphism(terms[i], t, mp.matrix.T.copy()))
    return Resolution(kind, subject, terms, maps, syz, res.depth, res.terminated, res.covers)


def injective_resolution(m: FDModule, depth: int) -> Resolution:
    return dualize_resolution(projective_resolution(k_dual(m), depth))


def minimal_resolution(m: FDModule, kind: str, depth: int) -> Resolution:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if kind == "projective":
        return projective_resolution(m, depth)
    if kind == "injective":
        return injective_resolution(m, depth)
    raise ValueError(f"unknown resolution kind {kind!r}")


# ---------------------------------------------------------------------------
# Ext and Tor
# ---------------------------------------------------------------------------


def _peirce_spaces(P: ProjectiveSum, n: FDModule):
    """Bases B_k of e_{j_k} N and their left inverses."""
    f = n.field
    reps = n.algebra.basic_idempotents()
    bases, invs = [], []
    for (j, _Y) in P.components:
        B = f.colspace(n.act(reps[j])) if n.dim else f.zeros((0, 0))
        bases.append(B)
        invs.append(f.left_inverse(B) if B.shape[1] else f.zeros((0, n.dim)))
    return bases, invs


def _blocks_for_map(dmap: Morphism, Pdom: ProjectiveSum, Pcod: ProjectiveSum, n: FDModule, bd, bc):
    """Matrix of Hom(Pcod, N) -> Hom(Pdom, N), phi -> phi o d, in Peirce coordinates."""
    f = n.field
    Bd, Bd_inv = bd
    Bc, _ = bc
    rows = [B.shape[1] for B in Bd]
    cols = [B.shape[1] for B in Bc]
    out = f.zeros((sum(rows), sum(cols)))
    ro = list(itertools.accumulate([0] + rows))
    co = list(itertools.accumulate([0] + cols))
    for l in range(len(Pdom)):
        if rows[l] == 0:
            continue
        img = f.matmul(dmap.matrix, Pdom.generator(l).reshape(-1, 1)).reshape(-1)
        for k in range(len(Pcod)):
            if cols[k] == 0:
                continue
            a = Pcod.component_element(img, k)
            if f.is_zero(a):
                continue
            block = f.matmul(f.matmul(Bd_inv[l], n.act(a)), Bc[k])
            out[ro[l] : ro[l + 1], co[k] : co[k + 1]] = block
    return out


def ext_cochains(m: FDModule, n: FDModule, upto: int, res: Optional[Resolution] = None):
    """Cochain spaces Hom(P_i, N) and differentials delta^i for i <= upto."""
    if m.algebra is not n.algebra:
        raise ModuleError("algebra mismatch")
    res = res or projective_resolution(m, upto + 1)
    peirce = [_peirce_spaces(P, n) for P in res.covers]
    dims = [sum(B.shape[1] for B in pb[0]) for pb in peirce]
    deltas = []
    for i in range(len(res.covers) - 1):
        deltas.append(_blocks_for_map(res.maps[i + 1], res.covers[i + 1], res.covers[i], n, peirce[i + 1], peirce[i]))
    return res, peirce, dims, deltas


def ext_dim(m: FDModule, n: FDModule, i: int, res: Optional[Resolution] = None) -> int:
    """dim Ext^i(m, n) from a minimal projective resolution of m."""
    if i < 0:
        raise ValueError("i must be non-negative")
    f = m.field
    if res is None or res.depth < i + 1 and not res.terminated:
        res = projective_resolution(m, i + 1)
    res, peirce, dims, deltas = ext_cochains(m, n, i, res)
    if i >= len(dims):
        return 0
    rank_out = f.rank(deltas[i]) if i < len(deltas) and deltas[i].size else 0
    rank_in = f.rank(deltas[i - 1]) if i >= 1 and deltas[i - 1].size else 0
    return dims[i] - rank_out - rank_in


def ext_dims(m: FDModule, n: FDModule, upto: int, res: Optional[Resolution] = None) -> list:
    f = m.field
    res, peirce, dims, deltas = ext_cochains(m, n, upto, res if res is not None else None)
    ranks = [f.rank(d) if d.size else 0 for d in deltas]
    out = []
    for i in range(upto + 1):
        if i >= len(dims):
            out.append(0)
            continue
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i >= 1 else 0
        out.append(dims[i] - r_out - r_in)
    return out


def ext(m: FDModule, n: FDModule, i: int) -> int:
    return ext_dim(m, n, i)


@dataclass
class ExtModule:
    """Ext^i(m, n) as a module over a second algebra acting on n.

    ``representatives`` holds cocycles (columns, in the Peirce coordinates of
    Hom(P_i, n)) lifting the module basis; ``coords`` sends a cocycle to its
    class.
    """

    module: FDModule
    resolution: Resolution
    i: int
    representatives: np.ndarray
    coords_map: np.ndarray
    peirce: list

    def coords(self, cocycle) -> np.ndarray:
        f = self.module.field
        if self.module.dim == 0:
            return f.zeros(0)
        return f.matmul(self.coords_map, f.array(cocycle).reshape(-1, 1)).reshape(-1)


def ext_module_data(m: FDModule, n: FDModule, i: int, other: FDModule, res: Optional[Resolution] = None) -> ExtModule:
    f = m.field
    B = other.algebra
    if other.dim != n.dim:
        raise ModuleError("bimodule structures must share the underlying space")
    if res is None or (not res.terminated and res.depth < i + 1):
        res = projective_resolution(m, i + 1)
    res, peirce, dims, deltas = ext_cochains(m, n, i, res)
    if i >= len(dims) or dims[i] == 0:
        z = zero_module(B)
        return ExtModule(z, res, i, f.zeros((dims[i] if i < len(dims) else 0, 0)), f.zeros((0, dims[i] if i < len(dims) else 0)), peirce)
    bases, invs = peirce[i]
    total = dims[i]
    act = f.zeros((B.dim, total, total))
    off = 0
    for bb, binv in zip(bases, invs):
        s_ = bb.shape[1]
        if s_ == 0:
            continue
        act[:, off : off + s_, off : off + s_] = f.matmul(f.matmul(binv[None, :, :], other.action), bb[None, :, :])
        off += s_
    cochain = FDModule(B, act, check=False)
    if i < len(deltas) and deltas[i].shape[0] and deltas[i].size:
        Z = f.kernel(deltas[i])
    else:
        Z = f.eye(total)
    zmod, zinc = submodule(cochain, Z)
    if zmod.dim == 0:
        z = zero_module(B)
        return ExtModule(z, res, i, f.zeros((total, 0)), f.zeros((0, total)), peirce)
    zinv = f.left_inverse(zinc.matrix)
    if i >= 1 and deltas[i - 1].size:
        img = f.colspace(deltas[i - 1])
        img_in_z = f.matmul(zinv, img)
    else:
        img_in_z = f.zeros((zmod.dim, 0))
    q, proj = quotient(zmod, img_in_z)
    if q.dim == 0:
        return ExtModule(q, res, i, f.zeros((total, 0)), f.zeros((0, total)), peirce)
    # a section of the projection: solve proj @ s = I
    section = f.solve(proj.matrix, f.eye(q.dim))
    reps = f.matmul(zinc.matrix, section)
    return ExtModule(q, res, i, reps, f.matmul(proj.matrix, zinv), peirce)


def ext_module(m: FDModule, n: FDModule, i: int, other: FDModule, res: Optional[Resolution] = None) -> FDModule:
    """Ext^i(m, n) as a module over the algebra of ``other``.

    ``other`` has the same underlying space as ``n`` and an action commuting
    with that of n's algebra (a bimodule structure).
    """
    return ext_module_data(m, n, i, other, res).module


def _map_from_generators(P: ProjectiveSum, target: FDModule, images: Sequence) -> Morphism:
    """The homomorphism P -> target sending generator k to images[k]."""
    f = target.field
    blocks = []
    for k, (_j, Y) in enumerate(P.components):
        v = f.array(images[k]).reshape(-1)
        imgs = f.tensordot(target.action, v, (2, 0)).T
        blocks.append(f.matmul(imgs, Y))
    mat = f.hstack(blocks, target.dim) if blocks else f.zeros((target.dim, 0))
    return Morphism(P.module, target, mat)


def lift_to_resolutions(fm: Morphism, rx: Resolution, ry: Resolution, upto: int) -> list:
    """Chain map f_i: P_i(X) -> P_i(Y) over f: X -> Y, for i <= upto.

    Generators are sent into e_j P_i(Y) by solving a linear system, so the
    lifts respect the idempotent of each generator.
    """
    if rx.kind != "projective" or ry.kind != "projective":
        raise ValueError("lifting needs projective resolutions")
    f = fm.field
    A = fm.source.algebra
    reps = A.basic_idempotents()
    lifts = []
    for i in range(min(upto + 1, len(rx.covers))):
        Px = rx.covers[i]
        if i >= len(ry.covers):
            z = zero_module(A)
            lifts.append(Morphism(Px.module, z, f.zeros((0, Px.module.dim))))
            continue
        Py = ry.covers[i]
        down = ry.maps[i].matrix  # P_i(Y) -> (Y or P_{i-1}(Y))
        images = []
        for k, (j, _Y) in enumerate(Px.components):
            g = Px.generator(k).reshape(-1, 1)
            if i == 0:
                t = f.matmul(fm.matrix, f.matmul(rx.maps[0].matrix, g))
            else:
                prev = lifts[i - 1].matrix
                t = f.matmul(prev, f.matmul(rx.maps[i].matrix, g)) if prev.size else f.zeros((Py.module.dim, 1))
                if not prev.size:
                    t = f.zeros((down.shape[0], 1))
            Bj = f.colspace(Py.module.act(reps[j]))
            if f.is_zero(t) or Bj.shape[1] == 0:
                images.append(f.zeros(Py.module.dim))
                continue
            sol = f.solve(f.matmul(down, Bj), t)
            if sol is None:
                raise ModuleError("comparison map does not lift; resolution is not exact")
            images.append(f.matmul(Bj, sol).reshape(-1))
        lifts.append(_map_from_generators(Px, Py.module, images))
    return lifts


def ext_map(fm: Morphism, n: FDModule, i: int, other: FDModule, ex: Optional[ExtModule] = None, ey: Optional[ExtModule] = None):
    """Ext^i(f, n): Ext^i(Y, n) -> Ext^i(X, n) for f: X -> Y, as a map of modules over ``other``'s algebra.

    Returns (morphism, ext_x, ext_y).
    """
    f = fm.field
    ex = ex or ext_module_data(fm.source, n, i, other)
    ey = ey or ext_module_data(fm.target, n, i, other)
    if ex.module.dim == 0 or ey.module.dim == 0:
        return Morphism(ey.module, ex.module, f.zeros((ex.module.dim, ey.module.dim))), ex, ey
    lifts = lift_to_resolutions(fm, ex.resolution, ey.resolution, i)
    Px = ex.resolution.covers[i]
    Py = ey.resolution.covers[i]
    cmap = _blocks_for_map(lifts[i], Px, Py, n, ex.peirce[i], ey.peirce[i])
    mat = f.matmul(ex.coords_map, f.matmul(cmap, ey.representatives))
    return Morphism(ey.module, ex.module, mat), ex, ey


def ext_map_kernel_dim(g: Morphism, n: FDModule, i: int, inj: Optional[Resolution] = None) -> int:
    """dim Ker(Ext^i(g, n)) where g: A -> B and Ext^i(g, n): Ext^i(B, n) -> Ext^i(A, n).

    Computed from Hom(-, E^*) for a minimal injective resolution E^* of n, so
    functoriality is plain precomposition.
    """
    from .modules import HomSpace

    f = g.field
    inj = inj or injective_resolution(n, i + 1)
    terms = inj.terms
    if i >= len(terms):
        return 0

    def hom_data(x, idx):
        if idx < 0 or idx >= len(terms):
            return None
        return HomSpace(x, terms[idx])

    def delta(H_from, H_to, idx):
        # Hom(x, E_idx) -> Hom(x, E_{idx+1}) in coordinates
        if H_from is None or H_to is None or H_from.dim == 0:
            return f.zeros((H_to.dim if H_to is not None else 0, H_from.dim if H_from is not None else 0))
        d = inj.maps[idx + 1].matrix
        L = H_to.coordinate_map() if H_to.dim else None
        cols = []
        for mat in H_from.matrices():
            img = f.matmul(d, mat)
            cols.append(f.matmul(L, img.reshape(-1, 1)).reshape(-1) if L is not None else f.zeros(0))
        return f.array(np.stack(cols, axis=1)) if H_to.dim else f.zeros((0, H_from.dim))

    A_, B_ = g.source, g.target
    HB = [hom_data(B_, i - 1), hom_data(B_, i), hom_data(B_, i + 1)]
    HA = [hom_data(A_, i - 1), hom_data(A_, i), hom_data(A_, i + 1)]
    if HB[1].dim == 0:
        return 0
    # cocycles of Hom(B, E_i)
    if HB[2] is not None and HB[2].dim:
        ZB = f.kernel(delta(HB[1], HB[2], i))
    else:
        ZB = f.eye(HB[1].dim)
    if ZB.shape[1] == 0:
        return 0
    # coboundaries
    bB = f.colspace(delta(HB[0], HB[1], i - 1)) if HB[0] is not None and HB[0].dim else f.zeros((HB[1].dim, 0))
    bA = f.colspace(delta(HA[0], HA[1], i - 1)) if HA[0] is not None and HA[0].dim and HA[1].dim else f.zeros((HA[1].dim, 0))
    # g^*: Hom(B, E_i) -> Hom(A, E_i)
    if HA[1].dim == 0:
        pulled = f.zeros((0, ZB.shape[1]))
    else:
        LA = HA[1].coordinate_map()
        mats = HB[1].matrices()
        cols = []
        for c in range(ZB.shape[1]):
            phi = f.tensordot(ZB[:, c], np.stack(mats), (0, 0))
            cols.append(f.matmul(LA, f.matmul(phi, g.matrix).reshape(-1, 1)).reshape(-1))
        pulled = f.array(np.stack(cols, axis=1))
    # {z in Z_B : g^* z in B_A}: kernel of [pulled | -bA] projected to z-part
    if bA.shape[1]:
        big = f.hstack([pulled, f.neg(bA)], pulled.shape[0])
    else:
        big = pulled
    if big.shape[0] == 0:
        sol_dim = ZB.shape[1]
    else:
        K = f.kernel(big)
        sol_dim = f.rank(K[: ZB.shape[1], :]) if K.shape[1] else 0
    return sol_dim - bB.shape[1]


def tor_dim(b: FDModule, m: FDModule, i: int) -> int:
    """dim Tor_i(b, m) for b a right module (left module over the opposite algebra)."""
    f = m.field
    if b.algebra is not m.algebra.opposite():
        raise ModuleError("first argument must be a module over the opposite algebra")
    res = projective_resolution(b, i + 1)
    peirce = [_peirce_spaces(P, m) for P in res.covers]
    dims = [sum(B.shape[1] for B in pb[0]) for pb in peirce]
    if i >= len(dims):
        return 0

    def boundary(idx):
        # d_idx: C_idx -> C_{idx-1}, blocks B_k^+ rho_M(y_lk) B_l
        if idx < 1 or idx >= len(dims):
            return None
        Pdom, Pcod = res.covers[idx], res.covers[idx - 1]
        Bd, _ = peirce[idx]
        Bc, Bc_inv = peirce[idx - 1]
        rows = [B.shape[1] for B in Bc]
        cols = [B.shape[1] for B in Bd]
        out = f.zeros((sum(rows), sum(cols)))
        ro = list(itertools.accumulate([0] + rows))
        co = list(itertools.accumulate([0] + cols))
        for l in range(len(Pdom)):
            if cols[l] == 0:
                continue
            img = f.matmul(res.maps[idx].matrix, Pdom.generator(l).reshape(-1, 1)).reshape(-1)
            for k in range(len(Pcod)):
                if rows[k] == 0:
                    continue
                y = Pcod.component_element(img, k)
                if f.is_zero(y):
                    continue
                out[ro[k] : ro[k + 1], co[l] : co[l + 1]] = f.matmul(f.matmul(Bc_inv[k], m.act(y)), Bd[l])
        return out

    d_i = boundary(i)
    d_next = boundary(i + 1)
    r_i = f.rank(d_i) if d_i is not None and d_i.size else 0
    r_n = f.rank(d_next) if d_next is not None and d_next.size else 0
    return dims[i] - r_i - r_n


def tor(b: FDModule, m: FDModule, i: int) -> int:
    return tor_dim(b, m, i)


def ext_dim_injective_side(m: FDModule, n: FDModule, i: int) -> int:
    """dim Ext^i(m, n) from Hom(m, E^*) with E^* a minimal injective resolution of n."""
    from .modules import HomSpace

    f = m.field
    res = injective_resolution(n, i + 1)
    terms = res.terms
    if i >= len(terms):
        return 0

    def hom_rank(idx):
        # rank of Hom(m, E_idx) -> Hom(m, E_{idx+1})
        if idx < 0 or idx + 1 >= len(terms):
            return 0
        H = HomSpace(m, terms[idx])
        if H.dim == 0:
            return 0
        d = res.maps[idx + 1].matrix
        imgs = [f.matmul(d, mat).reshape(-1) for mat in H.matrices()]
        return f.rank(f.array(np.stack(imgs, axis=1)))

    dim_i = HomSpace(m, terms[i]).dim
    return dim_i - hom_rank(i) - hom_rank(i - 1)


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------


def homdim(m: FDModule, kind: str, cap: int) -> InvariantValue:
    """Projective, injective or flat dimension, capped.

    Flat and projective dimension agree for finitely generated modules over a
    finite-dimensional algebra.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if m.dim == 0:
        return InvariantValue.zero()
    if kind in ("projective", "flat"):
        res = projective_resolution(m, cap)
    elif kind == "injective":
        res = injective_resolution(m, cap)
    else:
        raise ValueError(f"unknown dimension kind {kind!r}")
    if res.terminated:
        return InvariantValue.exact(len(res.terms) - 1)
    return InvariantValue.at_least(cap)


# ---------------------------------------------------------------------------
# context-dependent invariants
# ---------------------------------------------------------------------------


def transpose_wrt(m: FDModule, ctx: BimoduleContext) -> FDModule:
    """Tr_U m = Coker(f*) for a minimal presentation P_1 -f-> P_0 -> m -> 0."""
    res = projective_resolution(m, 1)
    if len(res.terms) == 0:
        return zero_module(ctx.S)
    p0 = res.terms[0]
    d0 = ctx.dual(p0)
    if len(res.terms) < 2:
        p1 = zero_module(ctx.R)
        fmap = Morphism(p1, p0, m.field.zeros((p0.dim, 0)))
    else:
        p1 = res.terms[1]
        fmap = res.maps[1]
    d1 = ctx.dual(p1)
    fstar = ctx.dual_map(fmap, d1, d0)
    cok, _ = cokernel(fstar)
    cok.name = f"Tr({m.name})" if m.name else "Tr"
    return cok


@dataclass
class Evaluation:
    sigma: Morphism
    torsionless: bool
    reflexive: bool


def double_dual(ctx: BimoduleContext, x: FDModule):
    """(X*, X**) as DualModule objects."""
    dx = ctx.dual(x)
    ddx = ctx.op().dual(dx.module)
    return dx, ddx


def evaluation_map(m: FDModule, ctx: BimoduleContext) -> Evaluation:
    """sigma: m -> m** with sigma(x)(f) = f(x)."""
    f = m.field
    dx, ddx = double_dual(ctx, m)
    fs = dx.hom.matrices()
    cols = []
    for c in range(m.dim):
        if fs:
            ev = f.hstack([f.matmul(phi, f.eye(m.dim)[:, c : c + 1]) for phi in fs], ctx.u.dim)
        else:
            ev = f.zeros((ctx.u.dim, 0))
        cols.append(ddx.coords(ev))
    dd = ddx.module
    mat = f.hstack([c.reshape(-1, 1) for c in cols], dd.dim) if cols else f.zeros((dd.dim, 0))
    sigma = Morphism(m, dd, mat)
    r = f.rank(mat) if mat.size else 0
    return Evaluation(sigma, r == m.dim, r == m.dim and dd.dim == m.dim)


def double_dual_map(ctx: BimoduleContext, fm: Morphism):
    """f**: X** -> Y** together with the double duals."""
    dx, ddx = double_dual(ctx, fm.source)
    dy, ddy = double_dual(ctx, fm.target)
    fstar = ctx.dual_map(fm, dx, dy)  # Y* -> X*
    fss = ctx.op().dual_map(fstar, ddy, ddx)  # X** -> Y**
    return fss, ddx, ddy


def grade_wrt(m: FDModule, ctx: BimoduleContext, cap: int) -> InvariantValue:
    """Least i with Ext^i(m, U) != 0 (searched for i < cap)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if m.dim == 0:
        return InvariantValue.infinite(cap)
    dims = ext_dims(m, ctx.u, cap - 1)
    for i, d in enumerate(dims):
        if d:
            return InvariantValue.exact(i)
    return InvariantValue.at_least(cap)


def strong_grade_bruteforce(m: FDModule, ctx: BimoduleContext, cap: int, max_dim: int = 6) -> InvariantValue:
    """Minimum grade over all nonzero submodules (enumerated exhaustively)."""
    if m.dim == 0:
        return InvariantValue.infinite(cap)
    subs = enumerate_submodules(m, max_dim=max_dim)
    vals = [grade_wrt(s, ctx, cap) for s, _inc in subs if s.dim]
    return min_value(vals)


def torsionfree_index(m: FDModule, ctx: BimoduleContext, k: int) -> int:
    """Largest j <= k with Ext^i(Tr_U m, U) = 0 for 1 <= i <= j."""
    if k < 1:
        raise ValueError("k must be at least 1")
    tr = transpose_wrt(m, ctx)
    if tr.dim == 0:
        return k
    dims = ext_dims(tr, ctx.u_s, k)
    j = 0
    for i in range(1, k + 1):
        if dims[i]:
            break
        j = i
    return j


# ---------------------------------------------------------------------------
# approximations and U-syzygy chains
# ---------------------------------------------------------------------------


def left_add_approximation(m: FDModule, ctx: BimoduleContext) -> Morphism:
    """Minimal left add-U approximation m -> X_0 built from S-generators of m*."""
    f = m.field
    dm = ctx.dual(m)
    if dm.module.dim == 0:
        z = zero_module(ctx.R)
        return Morphism(m, z, f.zeros((0, m.dim)))
    P, eps = projective_cover(dm.module)
    reps = ctx.S.basic_idempotents()
    parts = []
    mods = []
    mats = dm.hom.matrices()
    stack = np.stack(mats)
    for k, (j, _Y) in enumerate(P.components):
        g = f.matmul(eps.matrix, P.generator(k).reshape(-1, 1)).reshape(-1)  # coords in m*
        phi = f.tensordot(g, stack, (0, 0))  # m -> U, lands in e_j U
        img = f.colspace(ctx.u_s.act(reps[j]))
        summ, inc = submodule(ctx.u, img)
        mods.append(summ)
        parts.append(f.matmul(f.left_inverse(inc.matrix), phi))
    target = direct_sum(mods, ctx.R).module
    return Morphism(m, target, f.vstack(parts, m.dim))


def right_add_approximation(x: FDModule, ctx: BimoduleContext) -> Morphism:
    """Minimal right add-U approximation X_0 -> x from Gamma-generators of Hom(U, x)."""
    f = x.field
    hx = ctx.hom_from_u(x)
    if hx.module.dim == 0:
        z = zero_module(ctx.R)
        return Morphism(z, x, f.zeros((x.dim, 0)))
    P, eps = projective_cover(hx.module)
    reps = ctx.gamma.basic_idempotents()
    stack = np.stack(hx.hom.matrices())
    mods, parts = [], []
    for k, (j, _Y) in enumerate(P.components):
        g = f.matmul(eps.matrix, P.generator(k).reshape(-1, 1)).reshape(-1)
        phi = f.tensordot(g, stack, (0, 0))  # U -> x with phi = phi o e_j
        img = f.colspace(ctx.u_s.act(reps[j]))
        summ, inc = submodule(ctx.u, img)
        mods.append(summ)
        parts.append(f.matmul(phi, inc.matrix))
    source = direct_sum(mods, ctx.R).module
    return Morphism(source, x, f.hstack(parts, x.dim))


@dataclass
class SyzygyChain:
    found: bool
    terms: list
    maps: list
    reason: str = ""


def u_syzygy_search(m: FDModule, ctx: BimoduleContext, k: int) -> SyzygyChain:
    """Greedy search for 0 -> m -> X_0 -> ... -> X_{k-1} exact with X_i in add U."""
    if k < 1:
        raise ValueError("k must be at least 1")
    f = m.field
    terms, maps = [], []
    cur = m
    prev_epi = None
    for i in range(k):
        approx = left_add_approximation(cur, ctx)
        if approx.rank() != cur.dim:
            return SyzygyChain(False, terms, maps, f"not found within strategy: step {i} is not a monomorphism")
        X = approx.target
        if prev_epi is None:
            maps.append(approx)
        else:
            maps.append(Morphism(prev_epi.source, X, f.matmul(approx.matrix, prev_epi.matrix)))
        terms.append(X)
        cok, epi = cokernel(approx)
        cur, prev_epi = cok, epi
    for t in terms:
        if not in_add(t, ctx.u):
            return SyzygyChain(False, terms, maps, "term not in add U")
    return SyzygyChain(True, terms, maps)


def add_u_resolution(x: FDModule, ctx: BimoduleContext, cap: int):
    """Resolution ... -> X_1 -> X_0 -> x -> 0 by iterated minimal right add-U approximations.

    Returns (length or None, terms). The length is n when the n-th kernel is
    the first zero one; None when the chain stops being epimorphic or the cap
    is reached.
    """
    terms = []
    cur = x
    for i in range(cap + 1):
        if cur.dim == 0:
            return (i - 1 if i else 0), terms
        approx = right_add_approximation(cur, ctx)
        if approx.rank() != cur.dim:
            return None, terms
        terms.append(approx.source)
        cur, _ = kernel(approx)
    if cur.dim == 0:
        return cap, terms
    return None, terms
