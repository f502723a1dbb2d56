"""Products of projective spaces and their multilinear embedding.

A point of P^{n_1} x ... x P^{n_m} is a tuple of coordinate vectors,
one per factor.  The embedding sends it to the iterated Kronecker
product of those vectors with the leftmost factor slowest: coordinate
(j_1, ..., j_m) of the image lives at flat index
j_1 * S_1 + ... + j_m * S_m with strides S_i = prod_{l > i} (n_l + 1).
This coordinate order is fixed once and recorded in every certificate
so that hyperplane vectors from different runs are comparable.

Tangent data comes in two flavors.  ``tangent_frame`` returns every
single-slot substitution q_1 x ... x e_j (slot i) x ... x q_m, one row
per (factor, basis slot): sum(n_i + 1) rows spanning a space of
dimension 1 + sum(n_i), with the embedded point inside the span
(contract the factor-i block with q_i to rebuild it).  The redundancy
keeps the tangency equations uniform.  ``affine_tangent_frame`` removes
it: the embedded point plus the partial derivatives of the affine
parametrization that freezes coordinate 0 of every factor, which is the
economical generating set the Terracini matrices stack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlin import SplitMix64, random_unit_vector

# One name for the Kronecker coordinate convention, embedded in certificates.
COORDINATE_ORDER = "lex-leftmost-slowest"

PointTuple = tuple  # tuple of per-factor coordinate vectors


@dataclass(frozen=True)
class ProductShape:
    """Factor dimensions (n_1, ..., n_m) of a product of projective spaces."""

    factor_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.factor_dims)
        object.__setattr__(self, "factor_dims", dims)
        if len(dims) < 2:
            raise ValueError("a product shape needs at least two factors")
        if any(n < 1 for n in dims):
            raise ValueError("every factor dimension must be >= 1")

    @classmethod
    def binary(cls, m: int) -> "ProductShape":
        """The m-fold product of projective lines."""
        if m < 2:
            raise ValueError("a product shape needs at least two factors")
        return cls((1,) * m)

    @property
    def num_factors(self) -> int:
        return len(self.factor_dims)

    @property
    def dim(self) -> int:
        """Dimension of the product variety itself."""
        return sum(self.factor_dims)

    @property
    def ambient_dim(self) -> int:
        """r with the embedding landing in P^r: prod(n_i + 1) - 1."""
        r = 1
        for n in self.factor_dims:
            r *= n + 1
        return r - 1

    @property
    def coord_sizes(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.factor_dims)

    @property
    def is_binary(self) -> bool:
        return all(n == 1 for n in self.factor_dims)


def coerce_point(shape: ProductShape, point, p: int) -> tuple[np.ndarray, ...]:
    """Validate a point against the shape and reduce its coordinates mod p."""
    factors = tuple(np.asarray(f, dtype=np.int64) % p for f in point)
    if len(factors) != shape.num_factors:
        raise ValueError(
            f"point has {len(factors)} factors, shape has {shape.num_factors}"
        )
    for i, (f, size) in enumerate(zip(factors, shape.coord_sizes)):
        if f.shape != (size,):
            raise ValueError(
                f"factor {i} has shape {f.shape}, expected ({size},)"
            )
    return factors


def random_point(shape: ProductShape, rng: SplitMix64, p: int) -> tuple[np.ndarray, ...]:
    """Point with every coordinate nonzero, so every chart is valid there."""
    return tuple(random_unit_vector(rng, n + 1, p) for n in shape.factor_dims)


def segre_embed(shape: ProductShape, point, p: int) -> np.ndarray:
    """Iterated Kronecker product of the factors, leftmost slowest."""
    q = coerce_point(shape, point, p)
    out = np.array([1], dtype=np.int64)
    for f in q:
        out = np.kron(out, f) % p
    return out


def _prefix_suffix(q: tuple[np.ndarray, ...], p: int):
    """Kronecker products of the factors before and after each slot."""
    m = len(q)
    pre = [np.array([1], dtype=np.int64)]
    for i in range(m):
        pre.append(np.kron(pre[-1], q[i]) % p)
    suf = [np.array([1], dtype=np.int64)] * (m + 1)
    for i in range(m - 1, -1, -1):
        suf[i] = np.kron(q[i], suf[i + 1]) % p
    return pre, suf


def substitution_vector(shape: ProductShape, point, i: int, j: int, p: int) -> np.ndarray:
    """q_1 x ... x e_j (slot i) x ... x q_m as a flat ambient vector."""
    q = coerce_point(shape, point, p)
    if not 0 <= i < shape.num_factors:
        raise ValueError(f"factor index {i} out of range")
    if not 0 <= j <= shape.factor_dims[i]:
        raise ValueError(f"basis index {j} out of range for factor {i}")
    pre, suf = _prefix_suffix(q, p)
    d = shape.coord_sizes[i]
    out = np.zeros(len(pre[i]) * d * len(suf[i + 1]), dtype=np.int64)
    out.reshape(len(pre[i]), d, len(suf[i + 1]))[:, j, :] = np.outer(pre[i], suf[i + 1]) % p
    return out


def tangent_frame(shape: ProductShape, point, p: int) -> np.ndarray:
    """All single-slot substitutions, one row per (factor, basis slot).

    sum(n_i + 1) rows.  Whenever every factor vector is nonzero the rows
    span a space of dimension exactly 1 + sum(n_i), and contracting the
    factor-i block with q_i rebuilds the embedded point, for every i.
    """
    q = coerce_point(shape, point, p)
    pre, suf = _prefix_suffix(q, p)
    rows = []
    for i, size in enumerate(shape.coord_sizes):
        ps = np.outer(pre[i], suf[i + 1]) % p
        for j in range(size):
            row = np.zeros(len(pre[i]) * size * len(suf[i + 1]), dtype=np.int64)
            row.reshape(len(pre[i]), size, len(suf[i + 1]))[:, j, :] = ps
            rows.append(row)
    return np.array(rows, dtype=np.int64)


def affine_tangent_frame(shape: ProductShape, point, p: int) -> np.ndarray:
    """Embedded point plus chart partials: 1 + sum(n_i) rows.

    The chart freezes coordinate 0 of every factor, so the partials are
    the substitutions with j >= 1.  Same span as ``tangent_frame`` when
    every frozen coordinate is nonzero (the slot-0 substitution is the
    point minus the others, scaled by the inverse frozen coordinate),
    with the redundancy removed.  Raises if some q_i[0] is 0 mod p.
    """
    q = coerce_point(shape, point, p)
    for i, f in enumerate(q):
        if f[0] % p == 0:
            raise ValueError(
                f"factor {i} has first coordinate 0 mod {p}: chart invalid at this point"
            )
    pre, suf = _prefix_suffix(q, p)
    rows = [segre_embed(shape, q, p)]
    for i, size in enumerate(shape.coord_sizes):
        ps = np.outer(pre[i], suf[i + 1]) % p
        for j in range(1, size):
            row = np.zeros(len(pre[i]) * size * len(suf[i + 1]), dtype=np.int64)
            row.reshape(len(pre[i]), size, len(suf[i + 1]))[:, j, :] = ps
            rows.append(row)
    return np.array(rows, dtype=np.int64)
