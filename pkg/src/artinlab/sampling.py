"""Reproducible finite families of modules, monomorphisms and extensions.

Universally quantified statements ("for every module M") are checked on a
SampleFamily. Every recipe is deterministic given the seed, and the
resulting list is deduplicated up to isomorphism in recipe order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .algebra import FDAlgebra
from .modules import (
    FDModule,
    ModuleError,
    Morphism,
    cokernel,
    cyclic_submodule,
    direct_sum,
    enumerate_submodules,
    hom_space,
    is_isomorphic,
    kernel,
    quotient,
    radical_of_module,
    standard_modules,
    submodule,
)

RECIPES = ("simples", "projectives", "injectives", "radical_layers", "syzygies", "submodules", "quotients", "extensions")


@dataclass
class SampleFamily:
    """Recipe for a finite family of modules.

    ``max_dim`` bounds the module dimension, ``size`` the number of modules,
    ``syzygy_depth`` the depth of syzygies of simples, ``submodule_dim`` the
    dimension up to which all submodules are enumerated (finite fields only).
    """

    recipes: tuple = RECIPES
    seed: int = 0
    max_dim: int = 6
    size: int = 40
    syzygy_depth: int = 2
    submodule_dim: int = 4
    extensions: int = 8

    def to_json(self) -> dict:
        return {
            "recipes": list(self.recipes),
            "seed": self.seed,
            "max_dim": self.max_dim,
            "size": self.size,
            "syzygy_depth": self.syzygy_depth,
            "submodule_dim": self.submodule_dim,
            "extensions": self.extensions,
        }

    def modules(self, A: FDAlgebra) -> list:
        key = ("family", self._key())
        if key not in A._cache:
            A._cache[key] = _generate(self, A)
        return A._cache[key]

    def monomorphisms(self, A: FDAlgebra) -> list:
        """Sampled monomorphisms X -> Y, with Y drawn from the family."""
        key = ("monos", self._key())
        if key not in A._cache:
            A._cache[key] = _monos(self, A)
        return A._cache[key]

    def _key(self):
        return (tuple(self.recipes), self.seed, self.max_dim, self.size, self.syzygy_depth, self.submodule_dim, self.extensions)


def socle(m: FDModule) -> np.ndarray:
    """Basis (columns) of soc m = {x : r x = 0 for r in rad A}."""
    f = m.field
    rad = m.algebra.radical()
    if m.dim == 0:
        return f.zeros((0, 0))
    if rad.shape[1] == 0:
        return f.eye(m.dim)
    stacked = f.vstack([m.act(rad[:, k]) for k in range(rad.shape[1])], m.dim)
    return f.kernel(stacked)


def random_extension(n2: FDModule, n1: FDModule, rng: random.Random) -> Optional[tuple]:
    """A random extension 0 -> n1 -> E -> n2 -> 0 as a pushout of 0 -> K -> P -> n2 -> 0.

    Returns (E, mono n1 -> E, epi E -> n2) or None when Ext^1(n2, n1) is
    not reached (no nonzero map K -> n1).
    """
    from .homological import projective_cover

    f = n1.field
    A = n1.algebra
    P, eps = projective_cover(n2)
    K, kinc = kernel(eps)
    maps = hom_space(K, n1)
    if not maps:
        return None
    phi = f.zeros((n1.dim, K.dim))
    for h in maps:
        c = f.scalar(rng.randrange(f.characteristic if f.characteristic else 3))
        phi = f.add(phi, f.scale(c, h.matrix))
    ds = direct_sum([n1, P.module], A)
    # k -> (phi(k), -iota(k))
    mat = f.vstack([phi, f.neg(kinc.matrix)], K.dim)
    E, proj = cokernel(Morphism(K, ds.module, mat))
    mono = Morphism(n1, E, f.matmul(proj.matrix, ds.injections[0].matrix))
    # E -> n2: (x, p) -> eps(p)
    to_n2 = f.hstack([f.zeros((n2.dim, n1.dim)), eps.matrix], n2.dim)
    section = f.solve(proj.matrix, f.eye(E.dim)) if E.dim else f.zeros((ds.module.dim, 0))
    epi = Morphism(E, n2, f.matmul(to_n2, section))
    return E, mono, epi


def _generate(fam: SampleFamily, A: FDAlgebra) -> list:
    from .homological import projective_resolution

    f = A.field
    rng = random.Random(fam.seed)
    simples, projectives, injectives = standard_modules(A)
    pool: list = []

    def add(label, m):
        if m.dim == 0 or m.dim > fam.max_dim:
            return
        pool.append((label, m))

    if "simples" in fam.recipes:
        for s in simples:
            add(f"simple {s.name}", s)
    if "projectives" in fam.recipes:
        for p in projectives:
            add(f"projective {p.name}", p)
    if "injectives" in fam.recipes:
        for e in injectives:
            add(f"injective {e.name}", e)
    if "radical_layers" in fam.recipes:
        for base in projectives + injectives:
            k = 1
            while True:
                layer = _radical_power_basis(base, k)
                if layer.shape[1] == 0:
                    break
                q, _ = quotient(base, layer)
                add(f"{base.name}/rad^{k}", q)
                r, _ = submodule(base, layer)
                add(f"rad^{k} {base.name}", r)
                k += 1
    if "syzygies" in fam.recipes:
        for s in simples + injectives:
            res = projective_resolution(s, fam.syzygy_depth)
            for d, k in enumerate(res.syzygies[1:], start=1):
                add(f"syzygy^{d} {s.name}", k)
    if "quotients" in fam.recipes and f.is_finite:
        for p in projectives:
            for _ in range(3):
                v = f.random_array(rng, (p.dim,))
                if f.is_zero(v):
                    continue
                W = cyclic_submodule(p, v)
                q, _ = quotient(p, W)
                add(f"quotient of {p.name}", q)
                sub, _ = submodule(p, W)
                add(f"cyclic submodule of {p.name}", sub)
    if "submodules" in fam.recipes and f.is_finite:
        small = [(lab, m) for lab, m in list(pool) if m.dim <= fam.submodule_dim]
        for lab, m in small:
            for sub, inc in enumerate_submodules(m, max_dim=fam.submodule_dim):
                if 0 < sub.dim < m.dim:
                    add(f"submodule of [{lab}]", sub)
                    q, _ = cokernel(inc)
                    add(f"quotient of [{lab}]", q)
    if "extensions" in fam.recipes:
        mods = list(pool)
        for _ in range(fam.extensions):
            if not mods:
                break
            la, a = mods[rng.randrange(len(mods))]
            lb, b = mods[rng.randrange(len(mods))]
            if a.dim + b.dim > fam.max_dim:
                continue
            ext = random_extension(a, b, rng)
            if ext is not None:
                add(f"extension of [{la}] by [{lb}]", ext[0])

    # deduplicate up to isomorphism, keeping the first label
    unique: list = []
    for label, m in pool:
        if any(u.dim == m.dim and is_isomorphic(u, m) for _l, u in unique):
            continue
        unique.append((label, m))
        if len(unique) >= fam.size:
            break
    for k, (label, m) in enumerate(unique):
        if m.name in ("", "ker", "coker", "im"):
            m.name = f"M{k}"
    return unique


def _radical_power_basis(m: FDModule, k: int) -> np.ndarray:
    """Basis of rad^k m."""
    basis = m.field.eye(m.dim)
    for _ in range(k):
        if basis.shape[1] == 0:
            break
        sub, inc = submodule(m, basis)
        rad_sub = radical_of_module(sub)
        basis = m.field.matmul(inc.matrix, rad_sub) if rad_sub.shape[1] else m.field.zeros((m.dim, 0))
    return basis


def _monos(fam: SampleFamily, A: FDAlgebra) -> list:
    """(label, mono) pairs: radical and socle inclusions, syzygy inclusions, cyclic submodules."""
    from .homological import projective_cover

    f = A.field
    rng = random.Random(fam.seed + 1)
    out = []
    for label, m in fam.modules(A):
        rad = radical_of_module(m)
        if 0 < rad.shape[1] < m.dim:
            _s, inc = submodule(m, rad)
            out.append((f"rad {label} -> {label}", inc))
        soc = socle(m)
        if 0 < soc.shape[1] < m.dim:
            _s, inc = submodule(m, soc)
            out.append((f"soc {label} -> {label}", inc))
        P, eps = projective_cover(m)
        K, kinc = kernel(eps)
        if K.dim and P.module.dim <= fam.max_dim:
            out.append((f"syzygy of {label} -> cover", kinc))
        if f.is_finite and m.dim:
            v = f.random_array(rng, (m.dim,))
            if not f.is_zero(v):
                W = cyclic_submodule(m, v)
                if W.shape[1] < m.dim:
                    _s, inc = submodule(m, W)
                    out.append((f"cyclic submodule -> {label}", inc))
    return out
