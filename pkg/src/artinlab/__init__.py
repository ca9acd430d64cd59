"""Exact homological computations over finite-dimensional algebras.

Layers, bottom up: ``exactfield`` (exact linear algebra over GF(p) and Q),
``algebra`` (structure constants, bound quivers), ``modules`` (modules,
Hom, decomposition), ``context`` (bimodules U with their endomorphism
algebras), ``homological`` (resolutions, Ext, Tor, grades), ``sampling``
(reproducible module families), ``gorenstein`` (Wakamatsu checks and audits)
and ``workspace``/``report``/``cli`` (file format and command line).
"""

__version__ = "0.1.0"
