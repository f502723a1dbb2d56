"""Exact linear algebra over prime fields.

Matrices are plain numpy int64 arrays whose entries are residues in
``[0, p)``; the modulus travels as an explicit argument.  Every product
of two residues is reduced immediately, which is why the moduli are
capped below 2**31: ``a * b <= (p - 1)**2 < 2**62`` and
``a - b * c > -2**62`` both stay inside int64, so one reduction per
operation suffices and no intermediate ever overflows.

Elimination is plain Gaussian elimination over F_p with the first
nonzero entry as pivot.  No fraction-free or block tricks: the matrices
here top out around 1000 x 1024 and the vectorized row updates are fast
enough.
"""

from __future__ import annotations

import numpy as np

# The three largest primes below 2**31.  Results certified at one prime
# are cross-checked at the others; see DEFAULT description in the CLI.
DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587)

_U64 = (1 << 64) - 1


def check_prime(p: int) -> int:
    """Validate a modulus for the int64 reduction discipline.

    Requires 3 <= p < 2**31 and primality (Miller-Rabin with bases
    2, 3, 5, 7, which is exact for every integer below 3215031751 and
    in particular for the whole admissible range).
    """
    p = int(p)
    if not 3 <= p < 2**31:
        raise ValueError(f"modulus {p} out of range: need 3 <= p < 2**31")
    for a in (2, 3, 5, 7):
        if p == a:
            return p
        if p % a == 0:
            raise ValueError(f"modulus {p} is not prime")
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            raise ValueError(f"modulus {p} is not prime")
    return p


class SplitMix64:
    """SplitMix64 deterministic 64-bit generator (Steele, Lea, Flood 2014).

    A fixed-increment Weyl sequence with a two-round multiply-xorshift
    finalizer.  The stream is a pure function of the 64-bit seed and of
    nothing else, so any record carrying (generator="splitmix64", seed)
    replays bit for bit on any platform and library version.  That
    stability is the reason this lives here instead of reusing a numpy
    Generator, whose integer-sampling streams may change across
    releases.
    """

    name = "splitmix64"

    def __init__(self, seed: int):
        self.seed = int(seed) & _U64
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _U64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
        return z ^ (z >> 31)

    def residue(self, p: int) -> int:
        """Uniform element of F_p, by rejection from the top of the u64 range."""
        lim = (1 << 64) - ((1 << 64) % p)
        while True:
            u = self.next_u64()
            if u < lim:
                return u % p

    def nonzero_residue(self, p: int) -> int:
        """Uniform element of F_p minus zero."""
        return self.residue(p - 1) + 1


def random_unit_vector(rng: SplitMix64, length: int, p: int) -> np.ndarray:
    """Vector with every coordinate uniform in F_p minus zero.

    Nonzero coordinates keep every affine chart of a product of
    projective spaces valid at the sampled point, which the tangent
    frame constructions rely on.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    return np.array([rng.nonzero_residue(p) for _ in range(length)], dtype=np.int64)


def _as_matrix(mat, p: int) -> np.ndarray:
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    return a % p


def _echelon(mat, p: int, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Row echelon form; fully reduced above the pivots when asked.

    Pivot choice is the first nonzero entry of the column.  Each row
    update is one vectorized multiply-subtract with a single reduction,
    valid because entries stay below p < 2**31.
    """
    a = _as_matrix(mat, p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        if reduced:
            f = a[:, c].copy()
            f[r] = 0
        else:
            f = np.zeros(rows, dtype=np.int64)
            f[r + 1 :] = a[r + 1 :, c]
        hit = np.nonzero(f)[0]
        if hit.size:
            a[hit, c:] = (a[hit, c:] - f[hit, None] * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def ff_rank(mat, p: int) -> int:
    """Rank over F_p."""
    return len(_echelon(mat, p, reduced=False)[1])


def ff_kernel(mat, p: int) -> np.ndarray:
    """Basis of the right null space over F_p.

    Returns one basis vector per row of the result; the number of rows
    is always cols - ff_rank(mat) and ``mat @ v == 0 (mod p)`` holds
    exactly for each.  Free columns get a unit coordinate, so the basis
    is in reduced echelon shape itself.
    """
    a, pivots = _echelon(mat, p, reduced=True)
    cols = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-int(a[row, fc])) % p
    return basis


def ff_matvec(mat, vec, p: int) -> np.ndarray:
    """Exact matrix-vector product mod p (reduction per column)."""
    a = _as_matrix(mat, p)
    v = np.asarray(vec, dtype=np.int64) % p
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} @ {v.shape}")
    out = np.zeros(a.shape[0], dtype=np.int64)
    for j in range(a.shape[1]):
        out = (out + a[:, j] * int(v[j])) % p
    return out


def ff_matmul(a, b, p: int) -> np.ndarray:
    """Exact matrix product mod p (reduction per inner index)."""
    a = _as_matrix(a, p)
    b = _as_matrix(b, p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = (out + a[:, j, None] * b[None, j, :]) % p
    return out
