"""Linear algebra over prime fields F_p and over the rationals.

Modular routines work on ``numpy.int64`` arrays whose entries are reduced
residues in ``[0, p)``.  Rational routines work on lists of lists of
:class:`fractions.Fraction` and are used where coefficients outgrow a
machine word (the principal sl2 computations).

All echelon forms are *reduced* row-echelon forms, so two subspaces are equal
exactly when their echelon bases are equal entry for entry.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Largest modulus accepted by the modular routines.  Products of two residues
# must fit in a signed 64-bit word.
MAX_MODULUS = (1 << 31) - 1


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, adequate for moduli < 2**31)."""
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


def check_modulus(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p > MAX_MODULUS:
        raise ValueError(f"modulus {p} exceeds the supported word size")


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, -1, p)


def primitive_root(p: int) -> int:
    """Smallest generator of the cyclic group F_p^x."""
    if p == 2:
        return 1
    n = p - 1
    factors = []
    m, f = n, 2
    while f * f <= m:
        if m % f == 0:
            factors.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root modulo {p}")


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    k, x = 1, a
    while x != 1:
        x = x * a % p
        k += 1
    return k


def as_mod(a, p: int) -> np.ndarray:
    """Convert integer data (possibly negative, possibly Python objects) to residues."""
    arr = np.asarray(a)
    if arr.dtype == object:
        return np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(arr) if arr.size else arr.astype(np.int64)
    return np.mod(arr.astype(np.int64), p)


def _chunk(p: int) -> int:
    return max(1, ((1 << 63) - 1) // max(1, (p - 1) * (p - 1)))


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of residue matrices modulo p without int64 overflow."""
    k = a.shape[-1]
    step = _chunk(p)
    if k <= step:
        return np.mod(a @ b, p)
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for s in range(0, k, step):
        out = np.mod(out + np.mod(a[..., s:s + step] @ b[s:s + step], p), p)
    return out


def matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a.copy()
    while e:
        if e & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        e >>= 1
    return result


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``m`` modulo ``p``; returns (nonzero rows, pivots)."""
    a = np.mod(np.array(m, dtype=np.int64, copy=True), p)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
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
        a[r] = a[r] * inv_mod(int(a[r, c]), p) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = np.mod(a[nzr] - np.outer(col[nzr], a[r]) % p, p)
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def nullity(m: np.ndarray, p: int) -> int:
    return m.shape[1] - rank(m, p)


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows, in reduced echelon form) of {v : m v = 0}."""
    m = np.asarray(m)
    n = m.shape[1]
    r, piv = rref(m, p) if m.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return rref(basis, p)[0] if len(free) else basis


def left_nullspace(m: np.ndarray, p: int) -> np.ndarray:
    return nullspace(np.asarray(m).T, p)


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([np.mod(m, p), np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular modulo p")
    return r[:n, n:]


def solve_left(basis: np.ndarray, pivots: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Coordinates of ``v`` in a reduced echelon basis (no membership check)."""
    return np.asarray(v)[list(pivots)]


def span(vectors: Iterable, p: int, n: int | None = None) -> tuple[np.ndarray, list[int]]:
    rows = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not rows:
        if n is None:
            raise ValueError("dimension needed for an empty span")
        return np.zeros((0, n), dtype=np.int64), []
    return rref(np.vstack(rows), p)


def reduce_vector(v: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Remainder of ``v`` modulo the row space of a reduced echelon ``basis``."""
    if not len(pivots):
        return np.mod(v, p)
    coeff = np.asarray(v)[list(pivots)]
    return np.mod(v - matmul(coeff[None, :], basis, p)[0], p)


def contains(basis: np.ndarray, pivots: Sequence[int], v: np.ndarray, p: int) -> bool:
    return not np.any(reduce_vector(v, basis, pivots, p))


def intersect(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Echelon basis of the intersection of two row spaces."""
    n = a.shape[1] if a.size or a.ndim == 2 else b.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # Solve x a = y b ; kernel of [a; -b]^T gives (x, y).
    stacked = np.concatenate([a, np.mod(-b, p)], axis=0)
    ker = left_nullspace(stacked, p)
    if ker.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    vecs = matmul(ker[:, : a.shape[0]], a, p)
    return rref(vecs, p)[0]


def restrict(op: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Matrix of ``op`` (acting on column vectors) restricted to an invariant row space.

    Returns R with op(b_j) = sum_i R[i, j] b_i, where b_i are the echelon rows.
    Coordinates are read at the pivot columns.
    """
    images = matmul(op, basis.T, p)  # columns op(b_j)
    return images[list(pivots), :]


def is_invariant(op: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> bool:
    if basis.shape[0] == 0:
        return True
    images = matmul(op, basis.T, p).T
    coeff = images[:, list(pivots)]
    return not np.any(np.mod(images - matmul(coeff, basis, p), p))


# ---------------------------------------------------------------------------
# Exact rational arithmetic
# ---------------------------------------------------------------------------

def rref_q(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix with ``ncols`` columns."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    r, piv = rref_q(rows)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -r[i][f]
        basis.append(v)
    return basis


def solve_q(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` over Q, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, piv = rref_q(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = r[i][ncols]
    return x
