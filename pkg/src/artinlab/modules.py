"""Finite-dimensional left modules, morphisms and basic constructions.

A module over an :class:`~artinlab.algebra.FDAlgebra` with basis
``b_0..b_{n-1}`` is an array ``action`` of shape ``(n, d, d)`` whose slice
``i`` is the matrix of ``b_i``. Morphisms are matrices ``f`` (target dim by
source dim) with ``f @ action_M[i] == action_N[i] @ f``.

Hom spaces are solved in an idempotent-adapted basis: with primitive
orthogonal idempotents ``e_v`` every homomorphism maps ``e_v M`` into
``e_v N``, so only the diagonal blocks are unknowns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import AlgebraError, FDAlgebra, _split_idempotent
from .exactfield import Field


class ModuleError(ValueError):
    pass


DEFAULT_ENUMERATION_BOUND = 6


class FDModule:
    def __init__(self, algebra: FDAlgebra, action, *, name: str = "", check: bool = True):
        self.algebra = algebra
        f = algebra.field
        action = f.array(action) if not isinstance(action, np.ndarray) else action
        if action.ndim != 3 or action.shape[0] != algebra.dim or action.shape[1] != action.shape[2]:
            raise ModuleError(f"action must have shape (n, d, d); got {action.shape}")
        self.action = action
        self.dim = action.shape[1]
        self.name = name
        self._frame = None
        self._gens = None
        if check:
            self.check()

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"FDModule{label}(dim={self.dim}, over {self.algebra.name})"

    def act(self, x) -> np.ndarray:
        if self.dim == 0:
            return self.field.zeros((0, 0))
        return self.field.tensordot(x, self.action, (0, 0))

    def generator_actions(self) -> list:
        """Action matrices of the primitive idempotents and Peirce generators (cached)."""
        if self._gens is None:
            A = self.algebra
            elems = list(A.primitive_idempotents()) + [g for (_w, _v, g) in A.peirce_generators()]
            if elems and self.dim:
                stack = self.field.tensordot(np.stack(elems), self.action, (1, 0))
                self._gens = list(stack)
            else:
                self._gens = [self.field.zeros((self.dim, self.dim)) for _ in elems]
        return self._gens

    def check(self) -> None:
        f = self.field
        A = self.algebra
        d = self.dim
        if not np.all(self.act(A.unit) == f.eye(d)):
            raise ModuleError("unit does not act as the identity")
        if d == 0:
            return
        flat = self.action.reshape(A.dim, d * d)
        for i in range(A.dim):
            lhs = f.matmul(self.action[i][None, :, :], self.action)  # (n, d, d): b_i b_j
            rhs = f.tensordot(A.T[i], flat, (1, 0)).reshape(A.dim, d, d)
            if not np.all(lhs == rhs):
                raise ModuleError(f"action does not respect multiplication at basis element {i}")

    def dimension_vector(self) -> tuple:
        f = self.field
        return tuple(f.rank(self.act(e)) if self.dim else 0 for e in self.algebra.primitive_idempotents())

    def top_vector(self) -> tuple:
        """Multiplicity of each basic simple in the top."""
        from .homological import projective_cover

        P, _ = projective_cover(self)
        counts = [0] * len(self.algebra.idempotent_classes())
        for j, _y in P.components:
            counts[j] += 1
        return tuple(counts)

    def frame(self):
        """Idempotent-adapted basis: (P, P^{-1}, sizes, offsets)."""
        if self._frame is None:
            f = self.field
            blocks = []
            for e in self.algebra.primitive_idempotents():
                if self.dim:
                    blocks.append(f.colspace(self.act(e)))
                else:
                    blocks.append(f.zeros((0, 0)))
            sizes = [b.shape[1] for b in blocks]
            P = f.hstack(blocks, self.dim)
            if P.shape[1] != self.dim:
                raise ModuleError("idempotents do not decompose the module")
            Pinv = f.inverse(P) if self.dim else f.zeros((0, 0))
            offsets = list(itertools.accumulate([0] + sizes))
            self._frame = (P, Pinv, sizes, offsets)
        return self._frame

    def is_zero(self) -> bool:
        return self.dim == 0


@dataclass
class Morphism:
    source: FDModule
    target: FDModule
    matrix: np.ndarray

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise ModuleError("algebra mismatch")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ModuleError(f"matrix shape {self.matrix.shape} does not match modules")
        if not is_intertwiner(self.source, self.target, self.matrix):
            raise ModuleError("matrix is not a module homomorphism")

    @property
    def field(self):
        return self.source.field

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        return Morphism(other.source, self.target, self.field.matmul(self.matrix, other.matrix))

    def rank(self) -> int:
        return self.field.rank(self.matrix) if self.matrix.size else 0

    def is_mono(self) -> bool:
        return self.rank() == self.source.dim

    def is_epi(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_mono()


def is_intertwiner(m: FDModule, n: FDModule, mat) -> bool:
    f = m.field
    if mat.size == 0:
        return True
    for gm, gn in zip(m.generator_actions(), n.generator_actions()):
        if not np.all(f.matmul(mat, gm) == f.matmul(gn, mat)):
            return False
    return True


def identity(m: FDModule) -> Morphism:
    return Morphism(m, m, m.field.eye(m.dim))


def zero_map(m: FDModule, n: FDModule) -> Morphism:
    return Morphism(m, n, m.field.zeros((n.dim, m.dim)))


def zero_module(A: FDAlgebra) -> FDModule:
    return FDModule(A, A.field.zeros((A.dim, 0, 0)), name="0", check=False)


def regular_module(A: FDAlgebra) -> FDModule:
    return FDModule(A, A.regular_action(), name=f"{A.name}", check=False)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


class HomSpace:
    """Basis of Hom(m, n) kept both as block vectors and as matrices."""

    def __init__(self, m: FDModule, n: FDModule):
        if m.algebra is not n.algebra:
            raise ModuleError("algebra mismatch")
        self.source = m
        self.target = n
        f = m.field
        A = m.algebra
        Pm, Pim, sm, om = m.frame()
        Pn, Pin, sn, on = n.frame()
        nv = len(sm)
        sizes = [sn[v] * sm[v] for v in range(nv)]
        offs = list(itertools.accumulate([0] + sizes))
        self.block_shapes = [(sn[v], sm[v]) for v in range(nv)]
        self.block_offsets = offs
        total = offs[-1]
        rows = []
        if total:
            for (w, v, g) in A.peirce_generators():
                if sn[w] * sm[v] == 0 or (sm[w] == 0 and sn[v] == 0):
                    continue
                gm = f.matmul(f.matmul(Pim, m.act(g)), Pm)[om[w] : om[w + 1], om[v] : om[v + 1]]
                gn = f.matmul(f.matmul(Pin, n.act(g)), Pn)[on[w] : on[w + 1], on[v] : on[v + 1]]
                block = f.zeros((sn[w] * sm[v], total))
                if sn[w] and sm[w]:
                    # X_w @ gm, X_w of shape (sn[w], sm[w])
                    block[:, offs[w] : offs[w + 1]] = f.kron(f.eye(sn[w]), gm.T)
                if sn[v] and sm[v]:
                    block[:, offs[v] : offs[v + 1]] = f.sub(
                        block[:, offs[v] : offs[v + 1]], f.kron(gn, f.eye(sm[v]))
                    )
                rows.append(block)
        if total:
            C = f.vstack(rows, total)
            K = f.kernel(C) if C.shape[0] else f.eye(total)
        else:
            K = f.zeros((0, 0))
        self.vectors = K  # columns: block coordinates
        self.dim = K.shape[1]
        self._matrices = None

    def blocks(self, vec) -> list:
        out = []
        for v, (r, c) in enumerate(self.block_shapes):
            out.append(vec[self.block_offsets[v] : self.block_offsets[v + 1]].reshape(r, c))
        return out

    def to_matrix(self, vec) -> np.ndarray:
        f = self.source.field
        Pm, Pim, _, _ = self.source.frame()
        Pn, _, _, _ = self.target.frame()
        X = f.block_diag(self.blocks(vec))
        if X.size == 0:
            return f.zeros((self.target.dim, self.source.dim))
        return f.matmul(f.matmul(Pn, X), Pim)

    def matrices(self) -> list:
        if self._matrices is None:
            self._matrices = [self.to_matrix(self.vectors[:, k]) for k in range(self.dim)]
        return self._matrices

    def morphisms(self) -> list:
        return [Morphism(self.source, self.target, mat) for mat in self.matrices()]

    def coordinates(self, mat) -> Optional[np.ndarray]:
        """Coordinates of a homomorphism in this basis (None if not a homomorphism)."""
        f = self.source.field
        if self.dim == 0:
            return f.zeros(0) if f.is_zero(mat) else None
        flat = f.array(np.stack([m.reshape(-1) for m in self.matrices()], axis=1))
        sol = f.solve(flat, f.array(mat).reshape(-1, 1))
        return None if sol is None else sol.reshape(-1)

    def coordinate_map(self):
        """Left inverse of the flattened basis: coords = L @ vec(mat)."""
        f = self.source.field
        flat = np.stack([m.reshape(-1) for m in self.matrices()], axis=1) if self.dim else f.zeros((self.target.dim * self.source.dim, 0))
        return f.left_inverse(f.array(flat))


def hom_space(m: FDModule, n: FDModule) -> list:
    """Basis of Hom(m, n) as a list of :class:`Morphism`."""
    return HomSpace(m, n).morphisms()


def hom_dim(m: FDModule, n: FDModule) -> int:
    return HomSpace(m, n).dim


def hom_matrices(m: FDModule, n: FDModule) -> list:
    return HomSpace(m, n).matrices()


# ---------------------------------------------------------------------------
# sub, quotient, factorization, sums
# ---------------------------------------------------------------------------


def submodule(m: FDModule, basis, name: str = "") -> tuple[FDModule, Morphism]:
    """Submodule spanned by the columns of ``basis`` (must be invariant)."""
    f = m.field
    W = f.colspace(f.array(basis).reshape(m.dim, -1)) if m.dim else f.zeros((0, 0))
    k = W.shape[1]
    if k == 0:
        z = zero_module(m.algebra)
        return z, Morphism(z, m, f.zeros((m.dim, 0)))
    L = f.left_inverse(W)
    act = f.matmul(f.matmul(L[None, :, :], m.action), W[None, :, :])
    if not np.all(f.matmul(m.action, W[None, :, :]) == f.matmul(W[None, :, :], act)):
        raise ModuleError("subspace is not a submodule")
    sub = FDModule(m.algebra, act, name=name, check=False)
    return sub, Morphism(sub, m, W)


def quotient(m: FDModule, basis, name: str = "") -> tuple[FDModule, Morphism]:
    """Quotient of ``m`` by the submodule spanned by the columns of ``basis``."""
    f = m.field
    W = f.colspace(f.array(basis).reshape(m.dim, -1)) if m.dim and np.size(basis) else f.zeros((m.dim, 0))
    C = f.complement(W, m.dim)
    k = C.shape[1]
    if k == 0:
        z = zero_module(m.algebra)
        return z, Morphism(m, z, f.zeros((0, m.dim)))
    full = f.hstack([C, W], m.dim)
    proj = f.inverse(full)[:k]
    act = f.matmul(f.matmul(proj[None, :, :], m.action), C[None, :, :])
    q = FDModule(m.algebra, act, name=name, check=False)
    return q, Morphism(m, q, proj)


@dataclass
class Factorization:
    kernel: FDModule
    kernel_mono: Morphism
    image: FDModule
    coimage_epi: Morphism  # source -> image
    image_mono: Morphism  # image -> target
    cokernel: FDModule
    cokernel_epi: Morphism


def factorize(fm: Morphism) -> Factorization:
    f = fm.field
    m, n = fm.source, fm.target
    K = f.kernel(fm.matrix) if m.dim else f.zeros((0, 0))
    if n.dim == 0:
        K = f.eye(m.dim)
    ker, kmono = submodule(m, K, name="ker")
    img_basis = f.colspace(fm.matrix) if (m.dim and n.dim) else f.zeros((n.dim, 0))
    img, imono = submodule(n, img_basis, name="im")
    if img.dim:
        coords = f.matmul(f.left_inverse(imono.matrix), fm.matrix)
    else:
        coords = f.zeros((0, m.dim))
    cepi = Morphism(m, img, coords)
    cok, cokepi = quotient(n, img_basis, name="coker")
    return Factorization(ker, kmono, img, cepi, imono, cok, cokepi)


def kernel(fm: Morphism) -> tuple[FDModule, Morphism]:
    f = fm.field
    m = fm.source
    if fm.target.dim == 0:
        return m, identity(m)
    K = f.kernel(fm.matrix) if m.dim else f.zeros((0, 0))
    return submodule(m, K, name="ker")


def cokernel(fm: Morphism) -> tuple[FDModule, Morphism]:
    f = fm.field
    n = fm.target
    img = f.colspace(fm.matrix) if (fm.source.dim and n.dim) else f.zeros((n.dim, 0))
    return quotient(n, img, name="coker")


@dataclass
class DirectSum:
    module: FDModule
    injections: list
    projections: list


def direct_sum(ms: Sequence[FDModule], algebra: Optional[FDAlgebra] = None) -> DirectSum:
    ms = list(ms)
    if not ms:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        return DirectSum(zero_module(algebra), [], [])
    A = ms[0].algebra
    for m in ms:
        if m.algebra is not A:
            raise ModuleError("algebra mismatch")
    f = A.field
    dims = [m.dim for m in ms]
    total = sum(dims)
    act = f.zeros((A.dim, total, total))
    off = 0
    for m in ms:
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    s = FDModule(A, act, name="+".join(m.name or "?" for m in ms), check=False)
    inj, proj = [], []
    off = 0
    eye = f.eye(total)
    for m in ms:
        inj.append(Morphism(m, s, eye[:, off : off + m.dim].copy()))
        proj.append(Morphism(s, m, eye[off : off + m.dim, :].copy()))
        off += m.dim
    return DirectSum(s, inj, proj)


def power(m: FDModule, k: int) -> FDModule:
    return direct_sum([m] * k, m.algebra).module


def change_basis(m: FDModule, P) -> FDModule:
    """The module with action P^{-1} rho P (isomorphic to m)."""
    f = m.field
    Pinv = f.inverse(P)
    act = f.matmul(f.matmul(Pinv[None, :, :], m.action), f.array(P)[None, :, :])
    return FDModule(m.algebra, act, name=m.name, check=False)


def k_dual(m: FDModule) -> FDModule:
    """Vector-space dual D m = Hom_K(m, K), a module over the opposite algebra."""
    op = m.algebra.opposite()
    act = np.ascontiguousarray(np.transpose(m.action, (0, 2, 1)))
    return FDModule(op, act, name=f"D({m.name})" if m.name else "", check=False)


def k_dual_map(fm: Morphism) -> Morphism:
    return Morphism(k_dual(fm.target), k_dual(fm.source), fm.matrix.T.copy())


# ---------------------------------------------------------------------------
# endomorphism algebras and decomposition
# ---------------------------------------------------------------------------


def endomorphism_algebra(m: FDModule) -> tuple[FDAlgebra, HomSpace]:
    """End(m) with product given by composition; basis = Hom(m, m) basis."""
    f = m.field
    H = HomSpace(m, m)
    k = H.dim
    if k == 0:
        raise ModuleError("zero module has no unital endomorphism algebra")
    mats = H.matrices()
    L = H.coordinate_map()
    stack = np.stack(mats)  # (k, d, d)
    table = f.zeros((k, k, k))
    for i in range(k):
        prods = f.matmul(mats[i][None, :, :], stack)  # (k, d, d)
        coords = f.matmul(L, prods.reshape(k, -1).T)  # (k, k)
        table[i] = coords.T
    unit = f.matmul(L, f.eye(m.dim).reshape(-1, 1)).reshape(-1)
    E = FDAlgebra(f, table, unit, name=f"End({m.name or 'M'})")
    return E, H


@dataclass
class Summand:
    module: FDModule
    inclusion: Morphism
    projection: Morphism


def decompose(m: FDModule, seed: int = 0) -> list:
    """Indecomposable direct summands of m with inclusions and projections."""
    f = m.field
    if m.dim == 0:
        return []
    E, H = endomorphism_algebra(m)
    if E.dim == 1:
        return [Summand(m, identity(m), identity(m))]
    import random as _random

    idems = _split_idempotent(E, E.unit.copy(), _random.Random(seed))
    if len(idems) == 1:
        return [Summand(m, identity(m), identity(m))]
    stack = np.stack(H.matrices())
    out = []
    for e in idems:
        eps = f.tensordot(e, stack, (0, 0))
        img = f.colspace(eps)
        sub, inc = submodule(m, img)
        proj = Morphism(m, sub, f.matmul(f.left_inverse(inc.matrix), eps))
        out.append(Summand(sub, inc, proj))
    return out


def is_indecomposable(m: FDModule) -> bool:
    return m.dim > 0 and len(decompose(m)) == 1


def _indecomposables_isomorphic(x: FDModule, y: FDModule) -> bool:
    if x.dim != y.dim:
        return False
    f = x.field
    F = hom_matrices(x, y)
    if not F:
        return False
    G = hom_matrices(y, x)
    for g in G:
        for fm in F:
            if f.rank(f.matmul(g, fm)) == x.dim:
                return True
    return False


def is_isomorphic(m: FDModule, n: FDModule) -> bool:
    """Krull-Schmidt comparison of indecomposable summands."""
    if m.algebra is not n.algebra:
        raise ModuleError("algebra mismatch")
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    if m.dimension_vector() != n.dimension_vector():
        return False
    xs = [s.module for s in decompose(m)]
    ys = [s.module for s in decompose(n)]
    if len(xs) != len(ys):
        return False
    used = [False] * len(ys)
    for x in xs:
        for j, y in enumerate(ys):
            if not used[j] and _indecomposables_isomorphic(x, y):
                used[j] = True
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# add, cogeneration, submodules
# ---------------------------------------------------------------------------


def in_add(x: FDModule, u: FDModule) -> bool:
    """True iff x is a direct summand of a finite direct sum of copies of u.

    Tested by whether the identity of x lies in the span of all composites
    g f with f in Hom(x, u) and g in Hom(u, x). Composites are formed on the
    diagonal blocks of the idempotent-adapted bases, where they are
    block-diagonal.
    """
    if x.algebra is not u.algebra:
        raise ModuleError("algebra mismatch")
    f = x.field
    if x.dim == 0:
        return True
    Hf = HomSpace(x, u)
    Hg = HomSpace(u, x)
    if Hf.dim == 0 or Hg.dim == 0:
        return False
    nv = len(Hf.block_shapes)
    cols = []
    for b in range(Hg.dim):
        gb = Hg.blocks(Hg.vectors[:, b])
        for a in range(Hf.dim):
            fa = Hf.blocks(Hf.vectors[:, a])
            parts = []
            for v in range(nv):
                if gb[v].shape[0]:
                    parts.append(f.matmul(gb[v], fa[v]).reshape(-1))
            cols.append(np.concatenate(parts))
    mat = f.array(np.stack(cols, axis=1))
    target = np.concatenate(
        [f.eye(s).reshape(-1) for (_r, s) in Hf.block_shapes if s]
    )
    return f.solve(mat, f.array(target).reshape(-1, 1)) is not None


def cogeneration_map(m: FDModule, u: FDModule) -> Morphism:
    """The map m -> u^s, s = dim Hom(m, u), stacking a Hom basis."""
    f = m.field
    mats = hom_matrices(m, u)
    target = power(u, len(mats))
    if mats:
        stacked = f.vstack(mats, m.dim)
    else:
        stacked = f.zeros((0, m.dim))
    return Morphism(m, target, stacked)


def is_cogenerated_by(m: FDModule, u: FDModule) -> bool:
    """True iff the common kernel of all maps m -> u is zero."""
    if m.algebra is not u.algebra:
        raise ModuleError("algebra mismatch")
    if m.dim == 0:
        return True
    mats = hom_matrices(m, u)
    if not mats:
        return False
    f = m.field
    return f.rank(f.vstack(mats, m.dim)) == m.dim


def cyclic_submodule(m: FDModule, v) -> np.ndarray:
    f = m.field
    imgs = f.tensordot(m.action, f.array(v).reshape(-1), (2, 0))  # (n, d)
    return f.colspace(imgs.T)


def _canonical(f: Field, basis: np.ndarray) -> tuple:
    if basis.shape[1] == 0:
        return ()
    rows = f.rowspace_canonical(basis.T)
    return tuple(tuple(int(x) for x in r) for r in rows)


def enumerate_submodules(m: FDModule, max_dim: int = DEFAULT_ENUMERATION_BOUND) -> list:
    """Every submodule of m exactly once, as (submodule, inclusion) pairs.

    Requires a finite prime field. Submodules are sorted by dimension and
    then by their canonical row-reduced basis.
    """
    f = m.field
    if not f.is_finite:
        raise ModuleError("field not finite")
    if m.dim > max_dim:
        raise ModuleError(f"dimension exceeds enumeration bound ({m.dim} > {max_dim})")
    d = m.dim
    p = f.characteristic
    found: dict = {(): f.zeros((d, 0))}
    cyclics: dict = {}
    for digits in itertools.product(range(p), repeat=d):
        nz = [x for x in digits if x]
        if not nz or nz[0] != 1:
            continue
        v = np.array(digits, dtype=np.int64)
        c = cyclic_submodule(m, v)
        key = _canonical(f, c)
        if key not in cyclics:
            cyclics[key] = c
    frontier = []
    for key, c in cyclics.items():
        if key not in found:
            found[key] = c
            frontier.append(c)
    cyc_list = list(cyclics.values())
    while frontier:
        nxt = []
        for W in frontier:
            for C in cyc_list:
                S = f.colspace(f.hstack([W, C], d))
                if S.shape[1] == W.shape[1]:
                    continue
                key = _canonical(f, S)
                if key not in found:
                    found[key] = S
                    nxt.append(S)
        frontier = nxt
    keys = sorted(found, key=lambda k: (len(k), k))
    return [submodule(m, found[k]) for k in keys]


# ---------------------------------------------------------------------------
# construction from representations
# ---------------------------------------------------------------------------


def module_from_representation(A: FDAlgebra, dims: dict, arrow_maps: dict, name: str = "") -> FDModule:
    """Module over a path algebra from vertex dimensions and arrow matrices.

    ``arrow_maps[a]`` is the matrix of arrow ``a: i -> j`` as a map from the
    space at ``i`` to the space at ``j`` (shape ``dims[j] x dims[i]``).
    Relations are verified through the module axioms.
    """
    if A.quiver is None or A.paths is None:
        raise ModuleError("representations need a path algebra")
    f = A.field
    q = A.quiver
    offs = {}
    total = 0
    for v in q.vertices:
        offs[v] = total
        total += int(dims.get(v, 0))
    maps = {}
    for name_, s, t in q.arrows:
        mat = arrow_maps.get(name_)
        ds, dt = int(dims.get(s, 0)), int(dims.get(t, 0))
        if mat is None:
            mat = f.zeros((dt, ds))
        mat = f.array(mat).reshape(dt, ds)
        maps[name_] = mat
    act = f.zeros((A.dim, total, total))
    for k, (s, t, w) in enumerate(A.paths):
        ds, dt = int(dims.get(s, 0)), int(dims.get(t, 0))
        block = f.eye(ds)
        for a in w:
            block = f.matmul(maps[a], block)
        act[k, offs[t] : offs[t] + dt, offs[s] : offs[s] + ds] = block
    return FDModule(A, act, name=name, check=True)


def representation_of(m: FDModule) -> tuple[dict, dict]:
    """Inverse of :func:`module_from_representation` in the idempotent-adapted basis."""
    A = m.algebra
    if A.quiver is None:
        raise ModuleError("representations need a path algebra")
    f = m.field
    P, Pinv, sizes, offs = m.frame()
    verts = list(A.quiver.vertices)
    vidx = {v: i for i, v in enumerate(verts)}
    dims = {v: sizes[vidx[v]] for v in verts}
    maps = {}
    for k, (s, t, w) in enumerate(A.paths):
        if len(w) == 1:
            full = f.matmul(f.matmul(Pinv, m.action[k]), P)
            i, j = vidx[s], vidx[t]
            maps[w[0]] = full[offs[j] : offs[j + 1], offs[i] : offs[i + 1]].copy()
    return dims, maps


def random_module(A: FDAlgebra, dims: dict, rng, tries: int = 50) -> Optional[FDModule]:
    """A random representation satisfying the relations, or None after ``tries`` attempts."""
    f = A.field
    q = A.quiver
    for _ in range(tries):
        maps = {}
        for name_, s, t in q.arrows:
            maps[name_] = f.random_array(rng, (int(dims.get(t, 0)), int(dims.get(s, 0))))
        try:
            return module_from_representation(A, dims, maps)
        except ModuleError:
            continue
    return None


# ---------------------------------------------------------------------------
# standard modules
# ---------------------------------------------------------------------------


def indecomposable_projective_data(A: FDAlgebra, j: int):
    """Basis Y (columns, as algebra elements) of A e_j and the module A e_j."""
    key = ("proj", j)
    if key not in A._cache:
        f = A.field
        e = A.basic_idempotents()[j]
        Y = f.colspace(A.right_matrix(e))
        L = f.left_inverse(Y)
        act = f.matmul(f.matmul(L[None, :, :], A.regular_action()), Y[None, :, :])
        label = A.basic_labels()[j]
        A._cache[key] = (Y, FDModule(A, act, name=f"P({label})", check=False))
    return A._cache[key]


def radical_of_module(m: FDModule) -> np.ndarray:
    f = m.field
    rad = m.algebra.radical()
    if m.dim == 0 or rad.shape[1] == 0:
        return f.zeros((m.dim, 0))
    imgs = [m.act(rad[:, k]) for k in range(rad.shape[1])]
    return f.colspace(f.hstack(imgs, m.dim))


def standard_modules(A: FDAlgebra) -> tuple[list, list, list]:
    """Simples, indecomposable projectives and indecomposable injectives.

    One of each per isomorphism class of primitive idempotents, in the order
    of ``A.basic_idempotents()``. Injectives are K-duals of the
    indecomposable projectives of the opposite algebra.
    """
    labels = A.basic_labels()
    simples, projectives, injectives = [], [], []
    for j, lab in enumerate(labels):
        _Y, P = indecomposable_projective_data(A, j)
        S, _ = quotient(P, radical_of_module(P), name=f"S({lab})")
        simples.append(S)
        projectives.append(P)
        _Yo, Po = indecomposable_projective_data(A.opposite(), j)
        I = k_dual(Po)
        I.name = f"I({lab})"
        injectives.append(I)
    return simples, projectives, injectives

