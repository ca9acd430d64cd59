import random

import numpy as np
import pytest

from artinlab.modules import factorize, is_isomorphic, standard_modules
from artinlab.sampling import SampleFamily, random_extension, socle

from conftest import corpus


@pytest.mark.parametrize("name", ["a2", "ga_ba", "five_vertex"])
def test_family_is_reproducible(name):
    A1 = corpus(name).algebra()
    # a fresh algebra object, so that nothing is served from the cache
    from artinlab.workspace import load_workspace
    from conftest import corpus_path

    A2 = load_workspace(corpus_path(name)).algebra()
    fam = SampleFamily(seed=7, size=25)
    m1, m2 = fam.modules(A1), fam.modules(A2)
    assert [lab for lab, _ in m1] == [lab for lab, _ in m2]
    for (_l1, x), (_l2, y) in zip(m1, m2):
        assert np.array_equal(x.action, y.action)


@pytest.mark.parametrize("name", ["a2", "ga_ba", "nakayama_cyclic"])
def test_family_is_deduplicated_and_bounded(name):
    A = corpus(name).algebra()
    fam = SampleFamily(seed=3, size=30, max_dim=5)
    mods = [m for _l, m in fam.modules(A)]
    assert len(mods) <= 30
    assert all(0 < m.dim <= 5 for m in mods)
    for i, x in enumerate(mods):
        for y in mods[:i]:
            assert not (x.dim == y.dim and is_isomorphic(x, y))


@pytest.mark.parametrize("name", ["a2", "ga_ba", "five_vertex"])
def test_sampled_monos_are_monos(name):
    A = corpus(name).algebra()
    for _lab, g in SampleFamily(size=20).monomorphisms(A):
        assert g.is_mono()


@pytest.mark.parametrize("seed", range(5))
def test_random_extension_is_short_exact(seed):
    A = corpus("ga_ba").algebra()
    S, P, I = standard_modules(A)
    rng = random.Random(seed)
    mods = S + I
    for _ in range(6):
        a, b = rng.choice(mods), rng.choice(mods)
        out = random_extension(a, b, rng)
        if out is None:
            continue
        E, mono, epi = out
        assert mono.is_mono() and epi.is_epi()
        assert E.dim == a.dim + b.dim
        assert not epi.compose(mono).matrix.any()
        assert factorize(epi).kernel.dim == mono.rank()


def test_socle_of_projective():
    A = corpus("a2").algebra()
    S, P, _I = standard_modules(A)
    assert socle(P[0]).shape[1] == 1
    assert socle(S[0]).shape[1] == 1
