"""Exact scalar fields and dense linear algebra over them.

Matrices are plain numpy arrays. Over a prime field the dtype is ``int64``
holding canonical residues in ``[0, p)``; over the rationals the dtype is
``object`` holding :class:`fractions.Fraction` values. Every routine here
returns canonical entries, so two equal matrices compare equal entrywise.

Nothing in this module ever rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

# int64 matmul stays exact while inner_dim * (p - 1)**2 < 2**63.
MAX_PRIME = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class for the two supported exact fields."""

    characteristic: int = 0
    dtype: object = object

    # -- scalars ---------------------------------------------------------
    def scalar(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    # -- construction ----------------------------------------------------
    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.scalar(1)
        return a

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    # -- arithmetic ------------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[-1:])
        return self.reduce(a @ b)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        return self.reduce(a * self.scalar(c))

    def tensordot(self, a, b, axes) -> np.ndarray:
        out = np.tensordot(a, b, axes=axes)
        if out.dtype != self.dtype:
            out = out.astype(self.dtype)
        return self.reduce(out)

    def kron(self, a, b) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    # -- elimination -----------------------------------------------------
    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns.

        Pivots are chosen as the first nonzero entry in each column scan,
        so the output is a deterministic function of the input.
        """
        a = self.array(a).copy()
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c] != 0)
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
            a[r] = self.reduce(a[r] * self.inv(a[r, c]))
            others = np.flatnonzero(a[:, c] != 0)
            others = others[others != r]
            if others.size:
                a[others] = self.reduce(a[others] - np.outer(a[others, c], a[r]))
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, a) -> int:
        a = self.array(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a) -> np.ndarray:
        """Columns spanning the right null space of ``a``."""
        a = self.array(a)
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols)
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        k = self.zeros((cols, len(free)))
        for j, f in enumerate(free):
            k[f, j] = self.one()
            for i, p in enumerate(pivots):
                k[p, j] = -r[i, f]
        return self.reduce(k)

    def rank_kernel(self, a) -> tuple[int, np.ndarray]:
        a = self.array(a)
        k = self.kernel(a)
        return a.shape[1] - k.shape[1], k

    def solve(self, a, b) -> Optional[np.ndarray]:
        """A particular solution ``x`` of ``a @ x == b``, or ``None``."""
        a = self.array(a)
        b = self.array(b)
        if a.shape[0] != b.shape[0]:
            raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
        rows, cols = a.shape
        nrhs = b.shape[1]
        if rows == 0:
            return self.zeros((cols, nrhs))
        r, pivots = self.rref(np.hstack([a, b]))
        if any(p >= cols for p in pivots):
            return None
        x = self.zeros((cols, nrhs))
        for i, p in enumerate(pivots):
            x[p] = r[i, cols:]
        return x

    def colspace(self, a) -> np.ndarray:
        """An independent set of columns of ``a`` spanning its column space."""
        a = self.array(a)
        if a.shape[1] == 0 or a.shape[0] == 0:
            return self.zeros((a.shape[0], 0))
        _, pivots = self.rref(a)
        return a[:, pivots].copy()

    def rowspace_canonical(self, a) -> np.ndarray:
        """The nonzero rows of the RREF: a unique basis for the row space."""
        a = self.array(a)
        if a.shape[0] == 0:
            return a
        r, pivots = self.rref(a)
        return r[: len(pivots)]

    def inverse(self, a) -> np.ndarray:
        a = self.array(a)
        n = a.shape[0]
        x = self.solve(a, self.eye(n))
        if x is None or self.rank(a) != n:
            raise ValueError("matrix is singular")
        return x

    def left_inverse(self, b) -> np.ndarray:
        """``L`` with ``L @ b == I`` for ``b`` of full column rank."""
        b = self.array(b)
        n, k = b.shape
        if k == 0:
            return self.zeros((0, n))
        _, rows = self.rref(b.T)
        if len(rows) != k:
            raise ValueError("matrix does not have full column rank")
        inv = self.inverse(b[rows, :])
        out = self.zeros((k, n))
        out[:, rows] = inv
        return out

    def complement(self, sub: np.ndarray, n: int) -> np.ndarray:
        """Standard basis vectors completing the columns of ``sub`` to a basis."""
        sub = self.array(sub)
        if n == 0 or sub.size == 0:
            return self.eye(n)
        _, pivots = self.rref(sub.T)
        free = [c for c in range(n) if c not in set(pivots)]
        return self.eye(n)[:, free]

    def in_span(self, basis: np.ndarray, v: np.ndarray) -> bool:
        basis = self.array(basis)
        if basis.shape[1] == 0:
            return self.is_zero(v)
        return self.solve(basis, self.array(v).reshape(-1, 1 if v.ndim == 1 else v.shape[1])) is not None

    def block_diag(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        out = self.zeros((rows, cols))
        r = c = 0
        for b in blocks:
            out[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    def hstack(self, mats: Sequence[np.ndarray], rows: int) -> np.ndarray:
        mats = [m for m in mats if m.shape[1]]
        if not mats:
            return self.zeros((rows, 0))
        return np.hstack(mats)

    def vstack(self, mats: Sequence[np.ndarray], cols: int) -> np.ndarray:
        mats = [m for m in mats if m.shape[0]]
        if not mats:
            return self.zeros((0, cols))
        return np.vstack(mats)

    def random_array(self, rng, shape) -> np.ndarray:
        raise NotImplementedError

    def to_python(self, a) -> list:
        """Nested lists of ints (F_p) or strings (Q) for serialization."""
        raise NotImplementedError

    def elements(self) -> Iterable:
        raise NotImplementedError


class PrimeField(Field):
    """The prime field F_p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} too large; supported range is p < {MAX_PRIME}")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def order(self) -> int:
        return self.p

    def scalar(self, x):
        if isinstance(x, Fraction):
            return np.int64(x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p)
        return np.int64(int(x) % self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return np.int64(pow(x, -1, self.p))

    def reduce(self, a):
        return a % self.p

    def array(self, data) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype == np.int64:
            return data % self.p
        a = np.array(data, dtype=object)
        if a.size:
            a = np.vectorize(self.scalar, otypes=[np.int64])(a)
        return a.astype(np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def random_array(self, rng, shape) -> np.ndarray:
        n = int(np.prod(shape)) if shape else 1
        vals = [rng.randrange(self.p) for _ in range(n)]
        return np.array(vals, dtype=np.int64).reshape(shape)

    def to_python(self, a) -> list:
        return np.asarray(a).astype(np.int64).tolist()

    def elements(self):
        return range(self.p)


_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)
_INT64_SAFE = 1 << 62


def _integer_form(a: np.ndarray):
    """(integer array, common denominator, max absolute entry) for a Fraction array."""
    if a.size == 0:
        return a.astype(object), 1, 0
    dens = _denominator(a)
    d = math.lcm(*set(dens.ravel().tolist()))
    if d == 1:
        ints = _numerator(a)
    else:
        ints = _numerator(a) * (d // dens)
    flat = ints.ravel().tolist()
    m = max(max(flat), -min(flat))
    return ints, d, m


def _int_product(ia, ib, ma, mb, inner, op):
    if ma * mb * inner < _INT64_SAFE:
        return op(ia.astype(np.int64), ib.astype(np.int64))
    return op(ia, ib)


def _from_integer_product(prod, d: int) -> np.ndarray:
    prod = np.asarray(prod)
    out = np.empty(prod.shape, dtype=object)
    if prod.size:
        vals = prod.ravel().tolist()
        if d == 1:
            out.ravel()[:] = [Fraction(v) for v in vals]
        else:
            out.ravel()[:] = [Fraction(v, d) for v in vals]
    return out


class Rationals(Field):
    """The rational numbers with exact normalized fractions."""

    characteristic = 0
    dtype = object

    def __repr__(self):
        return "Q"

    # Products are formed over the integers: each operand is scaled by the lcm
    # of its denominators, multiplied with int64 when the entries are small
    # enough to rule out overflow (Python ints otherwise), then divided back.
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[-1:])
        ia, da, ma = _integer_form(a)
        ib, db, mb = _integer_form(b)
        return _from_integer_product(_int_product(ia, ib, ma, mb, a.shape[-1], np.matmul), da * db)

    def tensordot(self, a, b, axes) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        ia, da, ma = _integer_form(a)
        ib, db, mb = _integer_form(b)
        if isinstance(axes, int):
            inner = int(np.prod(a.shape[a.ndim - axes :])) if axes else 1
        else:
            ax = axes[0] if isinstance(axes[0], (list, tuple)) else [axes[0]]
            inner = int(np.prod([a.shape[i] for i in ax])) if ax else 1
        prod = _int_product(ia, ib, ma, mb, max(inner, 1), lambda x, y: np.tensordot(x, y, axes=axes))
        return _from_integer_product(prod, da * db)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def scalar(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (float, np.floating)):
            raise TypeError("floating point values are not exact")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(int(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if a.size:
            flat = [self.scalar(x) for x in a.ravel()]
            out = np.empty(a.shape, dtype=object)
            out.ravel()[:] = flat
            return out
        return a

    def zeros(self, shape) -> np.ndarray:
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def random_array(self, rng, shape) -> np.ndarray:
        n = int(np.prod(shape)) if shape else 1
        vals = [Fraction(rng.randrange(-2, 3)) for _ in range(n)]
        out = np.empty(n, dtype=object)
        out[:] = vals
        return out.reshape(shape)

    def to_python(self, a) -> list:
        a = np.asarray(a, dtype=object)
        return np.vectorize(str, otypes=[object])(a).tolist() if a.size else a.tolist()

    def elements(self):
        raise ValueError("field not finite")


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(text: str) -> Field:
    """Parse ``GF(p)``, ``F_p`` or ``Q``."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "F_", "GF"):
        if t.startswith(prefix):
            num = t[len(prefix) :].rstrip(")")
            return PrimeField(int(num))
    raise ValueError(f"unknown field {text!r}")


def rank_kernel(field: Field, m) -> tuple[int, np.ndarray]:
    return field.rank_kernel(m)


def solve(field: Field, a, b) -> Optional[np.ndarray]:
    return field.solve(a, b)
