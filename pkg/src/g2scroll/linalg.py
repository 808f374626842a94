"""Dense linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays with entries reduced into ``[0, p)``.
Products of two reduced entries must fit in 63 bits, which holds for
``p < 3037000499``; larger moduli fall back to Python integers (object arrays).

Subspaces of F_p^n are kept in canonical reduced row-echelon form, so two
subspaces are equal exactly when their basis arrays are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch

_INT64_SAFE = 3037000499


def _dtype(p: int):
    return np.int64 if p < _INT64_SAFE else object


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    """Copy ``m`` into a reduced 2-d array; ``cols`` fixes the width of empty input."""
    if isinstance(m, np.ndarray) and m.ndim == 2:
        a = m.astype(_dtype(p), copy=True)
    else:
        rows = [list(r) for r in m]
        if not rows:
            if cols is None:
                raise ValueError("cols is required for an empty matrix")
            return np.zeros((0, cols), dtype=_dtype(p))
        a = np.array(rows, dtype=_dtype(p))
        if a.ndim != 2:
            raise ValueError("ragged matrix")
    a %= p
    return a


def _rref_inplace(a: np.ndarray, p: int) -> list[int]:
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m, p: int, cols: int | None = None) -> tuple[int, np.ndarray]:
    """Return ``(rank, r)`` with ``r`` the canonical RREF of ``m`` (same shape, zero rows last)."""
    a = as_matrix(m, p, cols)
    pivots = _rref_inplace(a, p)
    return len(pivots), a


def rref_pivots(m, p: int, cols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the RREF together with their pivot columns."""
    a = as_matrix(m, p, cols)
    pivots = _rref_inplace(a, p)
    return a[: len(pivots)], pivots


def rank(m, p: int, cols: int | None = None) -> int:
    return rref(m, p, cols)[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of F_p^n, stored by its canonical RREF basis."""

    ambient_dim: int
    basis: np.ndarray
    p: int

    def __post_init__(self):
        self.basis.flags.writeable = False

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int) -> "Subspace":
        r, _ = rref_pivots(vectors, p, cols=ambient_dim)
        if r.shape[1] != ambient_dim:
            raise DimensionMismatch(f"vectors of length {r.shape[1]}, expected {ambient_dim}")
        return cls(ambient_dim, r, p)

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=_dtype(p)), p)

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=_dtype(p)), p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, p={self.p})"

    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def contains(self, v) -> bool:
        return contains(self, v)

    def issubspace(self, other: "Subspace") -> bool:
        """True when every basis row of ``self`` lies in ``other``."""
        _check_compatible(self, other)
        return all(contains(other, row) for row in self.basis)


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionMismatch(
            f"ambient F_{a.p}^{a.ambient_dim} vs F_{b.p}^{b.ambient_dim}"
        )


def kernel_basis(m, p: int, cols: int | None = None) -> Subspace:
    """Null space ``{v : m v = 0}`` as a canonical subspace."""
    r, pivots = rref_pivots(m, p, cols)
    n = r.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    vecs = np.zeros((len(free), n), dtype=r.dtype)
    for k, fc in enumerate(free):
        vecs[k, fc] = 1
        for i, pc in enumerate(pivots):
            vecs[k, pc] = (-r[i, fc]) % p
    return Subspace.span(vecs, p, n)


def left_kernel(m, p: int, cols: int | None = None) -> Subspace:
    """``{w : w m = 0}``."""
    a = as_matrix(m, p, cols)
    return kernel_basis(a.T, p, cols=a.shape[0])


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    return Subspace.span(np.vstack([a.basis, b.basis]), a.p, a.ambient_dim)


def span_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.p, a.ambient_dim)
    # w = (x, y) with x A + y B = 0 gives x A in both spaces
    stacked = np.vstack([a.basis, b.basis])
    rel = left_kernel(stacked, a.p)
    if rel.dim == 0:
        return Subspace.zero(a.p, a.ambient_dim)
    xs = rel.basis[:, : a.dim]
    vecs = (xs @ a.basis) % a.p
    return Subspace.span(vecs, a.p, a.ambient_dim)


def contains(a: Subspace, v) -> bool:
    w = np.asarray(list(v) if not isinstance(v, np.ndarray) else v, dtype=a.basis.dtype)
    if w.shape != (a.ambient_dim,):
        raise DimensionMismatch(f"vector of length {w.shape}, ambient {a.ambient_dim}")
    w = w % a.p
    for row, pc in zip(a.basis, a.pivots()):
        c = w[pc]
        if c:
            w = (w - c * row) % a.p
    return not w.any()


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b``, or ``None`` when inconsistent."""
    A = as_matrix(a, p)
    rows, n = A.shape
    aug = np.hstack([A, np.asarray(b, dtype=A.dtype).reshape(rows, 1) % p])
    r, pivots = rref_pivots(aug, p)
    if pivots and pivots[-1] == n:
        return None
    x = np.zeros(n, dtype=A.dtype)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n]
    return x


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a) @ np.asarray(b)) % p


def independent(vectors: Sequence[Iterable[int]], p: int, cols: int | None = None) -> bool:
    vs = list(vectors)
    return rank(vs, p, cols) == len(vs)
