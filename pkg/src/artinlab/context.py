"""Bimodule contexts: a module U with its endomorphism algebra acting on it.

A context is a symmetric triple ``(R, S, U)``: U is simultaneously a left
R-module and a left S-module and the two actions commute. Built from a left
R-module U, ``S = End_R(U)`` with product given by composition, acting on U
through the endomorphism matrices themselves.

In right-module language Gamma = S^op acts on U from the right by
``u . g = g(u)``. Consequences used throughout:

* ``X* = Hom_R(X, U)`` is a left S-module via postcomposition.
* ``Hom_R(U, X)`` is a left Gamma-module via ``(g . phi) = phi o g``.
* ``Y* = Hom_S(Y, U)`` for a left S-module Y is a left R-module.

``ctx.op()`` swaps the roles of R and S, which is legitimate when the
natural map R -> End_S(U) is an isomorphism (faithfully balanced).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .algebra import FDAlgebra
from .modules import (
    FDModule,
    HomSpace,
    Morphism,
    endomorphism_algebra,
    k_dual,
    regular_module,
)


class ContextError(ValueError):
    pass


class BimoduleContext:
    def __init__(self, R: FDAlgebra, S: FDAlgebra, u_r: FDModule, u_s: FDModule, *, name: str = "U"):
        if u_r.algebra is not R or u_s.algebra is not S:
            raise ContextError("modules do not live over the stated algebras")
        if u_r.dim != u_s.dim:
            raise ContextError("the two structures must share one underlying space")
        self.R = R
        self.S = S
        self.u = u_r
        self.u_s = u_s
        self.name = name
        self._op: Optional[BimoduleContext] = None
        self._natural = None
        self._cache: dict = {}

    def __repr__(self):
        return f"BimoduleContext({self.name}: {self.R.name} | {self.S.name}, dim U={self.u.dim})"

    @property
    def field(self):
        return self.R.field

    @property
    def gamma(self) -> FDAlgebra:
        """Gamma = S^op, the algebra acting on U from the right."""
        return self.S.opposite()

    def actions_commute(self) -> bool:
        f = self.field
        for a in self.u.action:
            for b in self.u_s.action:
                if not np.all(f.matmul(a, b) == f.matmul(b, a)):
                    return False
        return True

    def op(self) -> "BimoduleContext":
        if self._op is None:
            o = BimoduleContext(self.S, self.R, self.u_s, self.u, name=self.name + "^op")
            o._op = self
            self._op = o
        return self._op

    # -- natural maps ------------------------------------------------------
    def natural_maps(self) -> dict:
        """Checks that R -> End_S(U) and S -> End_R(U) are isomorphisms."""
        if self._natural is None:
            f = self.field
            d = self.u.dim
            r_faithful = f.rank(self.u.action.reshape(self.R.dim, d * d).T) == self.R.dim if d else self.R.dim == 0
            s_faithful = f.rank(self.u_s.action.reshape(self.S.dim, d * d).T) == self.S.dim if d else self.S.dim == 0
            end_s = HomSpace(self.u_s, self.u_s).dim
            end_r = HomSpace(self.u, self.u).dim
            self._natural = {
                "R_to_End_S(U)": bool(r_faithful and end_s == self.R.dim),
                "S_to_End_R(U)": bool(s_faithful and end_r == self.S.dim),
                "dim_R": self.R.dim,
                "dim_End_S(U)": end_s,
                "dim_S": self.S.dim,
                "dim_End_R(U)": end_r,
            }
        return self._natural

    def faithfully_balanced(self) -> bool:
        nm = self.natural_maps()
        return nm["R_to_End_S(U)"] and nm["S_to_End_R(U)"]

    # -- dual functors -----------------------------------------------------
    def dual(self, x: FDModule) -> "DualModule":
        """X* = Hom_R(X, U) as a left S-module."""
        if x.algebra is not self.R:
            raise ContextError("module is not over the context's base algebra")
        return DualModule(self, x)

    def dual_map(self, fm: Morphism, dx: "DualModule" = None, dy: "DualModule" = None) -> Morphism:
        """f*: Y* -> X* for f: X -> Y (precomposition)."""
        f = self.field
        dx = dx or self.dual(fm.source)
        dy = dy or self.dual(fm.target)
        cols = []
        for phi in dy.hom.matrices():
            cols.append(dx.coords(f.matmul(phi, fm.matrix)))
        mat = f.hstack([c.reshape(-1, 1) for c in cols], dx.module.dim) if cols else f.zeros((dx.module.dim, 0))
        return Morphism(dy.module, dx.module, mat)

    def hom_from_u(self, x: FDModule) -> "HomFromU":
        """Hom_R(U, X) as a left Gamma-module."""
        if x.algebra is not self.R:
            raise ContextError("module is not over the context's base algebra")
        return HomFromU(self, x)


class DualModule:
    """Hom_R(X, U) with S acting by postcomposition."""

    def __init__(self, ctx: BimoduleContext, x: FDModule):
        f = ctx.field
        self.ctx = ctx
        self.source = x
        self.hom = HomSpace(x, ctx.u)
        mats = self.hom.matrices()
        k = len(mats)
        S = ctx.S
        act = f.zeros((S.dim, k, k))
        if k:
            self._L = self.hom.coordinate_map()
            stack = np.stack(mats)
            for s in range(S.dim):
                prods = f.matmul(ctx.u_s.action[s][None, :, :], stack)
                act[s] = f.matmul(self._L, prods.reshape(k, -1).T)
        self.module = FDModule(S, act, name=f"{x.name}*" if x.name else "", check=False)

    def coords(self, mat) -> np.ndarray:
        f = self.ctx.field
        if self.hom.dim == 0:
            return f.zeros(0)
        return f.matmul(self._L, f.array(mat).reshape(-1, 1)).reshape(-1)


class HomFromU:
    """Hom_R(U, X) with Gamma acting through precomposition by endomorphisms of U."""

    def __init__(self, ctx: BimoduleContext, x: FDModule):
        f = ctx.field
        self.ctx = ctx
        self.target = x
        self.hom = HomSpace(ctx.u, x)
        mats = self.hom.matrices()
        k = len(mats)
        G = ctx.gamma
        act = f.zeros((G.dim, k, k))
        if k:
            self._L = self.hom.coordinate_map()
            stack = np.stack(mats)
            for s in range(G.dim):
                prods = f.matmul(stack, ctx.u_s.action[s][None, :, :])
                act[s] = f.matmul(self._L, prods.reshape(k, -1).T)
        self.module = FDModule(G, act, name=f"Hom(U,{x.name})" if x.name else "", check=False)

    def coords(self, mat) -> np.ndarray:
        f = self.ctx.field
        if self.hom.dim == 0:
            return f.zeros(0)
        return f.matmul(self._L, f.array(mat).reshape(-1, 1)).reshape(-1)

    def map(self, fm: Morphism, other: "HomFromU") -> Morphism:
        """Hom(U, f): Hom(U, X) -> Hom(U, Y) for f: X -> Y, by postcomposition."""
        f = self.ctx.field
        cols = [other.coords(f.matmul(fm.matrix, phi)) for phi in self.hom.matrices()]
        mat = f.hstack([c.reshape(-1, 1) for c in cols], other.module.dim) if cols else f.zeros((other.module.dim, 0))
        return Morphism(self.module, other.module, mat)


def end_algebra(u: FDModule, name: str = "U") -> BimoduleContext:
    """Context (R, End_R(U), U) for a left R-module U."""
    if u.dim == 0:
        raise ContextError("U must be nonzero")
    S, H = endomorphism_algebra(u)
    S.name = f"End({name})"
    act = np.stack(H.matrices())
    u_s = FDModule(S, act, name=name, check=False)
    return BimoduleContext(u.algebra, S, u, u_s, name=name)


def regular_context(A: FDAlgebra) -> BimoduleContext:
    return end_algebra(regular_module(A), name=A.name)


def dual_regular_context(A: FDAlgebra) -> BimoduleContext:
    """U = D(A_A), the injective cogenerator, as a left A-module."""
    u = k_dual(regular_module(A.opposite()))
    u.name = f"D({A.name})"
    return end_algebra(u, name=u.name)


def hom_into_gamma(ctx: BimoduleContext, x: FDModule) -> FDModule:
    return ctx.hom_from_u(x).module
