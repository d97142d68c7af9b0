"""Matrix models of the classical Lie algebras over F_l.

Bilinear forms are antidiagonal.  The symmetric form is
``x_1 y_N + x_2 y_{N-1} + ... + x_N y_1`` and the alternating form is
``x_1 y_N + ... + x_n y_{n+1} - x_{n+1} y_n - ... - x_N y_1``.  With these
conventions the diagonal matrices ``diag(t_1..t_n, [1,] t_n^-1..t_1^-1)`` form
a maximal torus and every elementary basis element below is a weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .lie import (
    AlgebraAutomorphism,
    LieAlgebra,
    conjugation_automorphism,
    conjugation_matrix,
    matrix_coordinates,
    matrix_lie_algebra,
)

KINDS = ("gl", "sl", "sp", "so")


def form_matrix(kind: str, size: int) -> np.ndarray:
    """Gram matrix J of the antidiagonal form (B(x, y) = x^T J y)."""
    j = np.zeros((size, size), dtype=np.int64)
    if kind == "so":
        for i in range(size):
            j[i, size - 1 - i] = 1
    elif kind == "sp":
        if size % 2:
            raise ValueError("alternating forms need even dimension")
        for i in range(size):
            j[i, size - 1 - i] = 1 if i < size // 2 else -1
    else:
        raise ValueError(f"no form attached to {kind!r}")
    return j


def preserves_form(g: np.ndarray, j: np.ndarray, p: int) -> bool:
    """g^T J g = J over F_p."""
    g = linalg.as_mod(g, p)
    lhs = linalg.matmul(linalg.matmul(g.T.copy(), linalg.as_mod(j, p), p), g, p)
    return bool(np.array_equal(lhs, linalg.as_mod(j, p)))


def _eps_index(i: int, size: int, kind: str) -> tuple[int, int]:
    """(coordinate, sign) of the diagonal entry i as a character of the torus."""
    if kind in ("gl", "sl"):
        return i, 1
    n = size // 2
    if i < n:
        return i, 1
    if size % 2 and i == n:
        return -1, 0
    return size - 1 - i, -1


def _weight(i: int, j: int, size: int, kind: str) -> tuple[int, ...]:
    """Torus weight of the matrix unit E_ij (epsilon coordinates)."""
    rank_dim = size if kind in ("gl", "sl") else size // 2
    w = [0] * rank_dim
    a, sa = _eps_index(i, size, kind)
    b, sb = _eps_index(j, size, kind)
    if sa:
        w[a] += sa
    if sb:
        w[b] -= sb
    return tuple(w)


@dataclass(frozen=True, eq=False)
class MatrixModel:
    """A classical matrix Lie algebra with a weight basis adapted to the diagonal torus."""

    kind: str
    size: int
    modulus: int
    basis: tuple[np.ndarray, ...]
    torus_indices: tuple[int, ...]
    weights: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @cached_property
    def algebra(self) -> LieAlgebra:
        return matrix_lie_algebra(
            self.basis, self.modulus, self.torus_indices, self.labels, name=f"{self.kind}{self.size}"
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def form(self) -> np.ndarray | None:
        return form_matrix(self.kind, self.size) if self.kind in ("sp", "so") else None

    def coords(self, m: np.ndarray) -> np.ndarray:
        return matrix_coordinates(self.basis, m, self.modulus)

    def matrix(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=np.int64)
        for c, b in zip(v, self.basis):
            out = np.mod(out + int(c) * b, self.modulus)
        return out

    def contains(self, m: np.ndarray) -> bool:
        p = self.modulus
        m = linalg.as_mod(m, p)
        if self.kind == "sl":
            return int(np.trace(m)) % p == 0
        if self.kind == "gl":
            return True
        j = linalg.as_mod(self.form, p)
        lhs = np.mod(linalg.matmul(m.T.copy(), j, p) + linalg.matmul(j, m, p), p)
        return not np.any(lhs)

    def root_indices(self) -> list[int]:
        return [i for i in range(self.dim) if i not in self.torus_indices]

    def weight_index(self, weight: Sequence[int]) -> int:
        w = tuple(weight)
        for i, x in enumerate(self.weights):
            if i not in self.torus_indices and x == w:
                return i
        raise KeyError(f"no root vector of weight {w}")

    def conj(self, g: np.ndarray, label: str = "Ad(g)") -> AlgebraAutomorphism:
        return conjugation_automorphism(self.algebra, self.basis, g, label)

    def conj_matrix(self, g: np.ndarray) -> np.ndarray:
        """Matrix of Ad(g) in the weight basis, without building the bracket."""
        return conjugation_matrix(self.basis, g, self.modulus)

    def fixed_root_vectors(self, g: np.ndarray, m: np.ndarray | None = None) -> int:
        """Number of basis root vectors fixed by Ad(g) (g must normalise the torus diagonally)."""
        if m is None:
            m = self.conj_matrix(g)
        return sum(
            1
            for i in self.root_indices()
            if int(m[i, i]) % self.modulus == 1 and not np.any(np.delete(m[:, i], i))
        )


def classical_model(kind: str, size: int, modulus: int) -> MatrixModel:
    """gl_N, sl_N, sp_N or so_N (antidiagonal forms) with a weight basis."""
    if kind not in KINDS:
        raise ValueError(f"unknown matrix algebra {kind!r}")
    linalg.check_modulus(modulus)
    p = modulus
    mats: list[np.ndarray] = []
    torus: list[int] = []
    weights: list[tuple[int, ...]] = []
    labels: list[str] = []

    def unit(i, j):
        e = np.zeros((size, size), dtype=np.int64)
        e[i, j] = 1
        return e

    if kind in ("gl", "sl"):
        diag = range(size) if kind == "gl" else range(size - 1)
        for i in diag:
            m = unit(i, i) if kind == "gl" else unit(i, i) - unit(i + 1, i + 1)
            torus.append(len(mats))
            mats.append(m)
            weights.append(tuple([0] * size))
            labels.append(f"E{i+1}{i+1}" if kind == "gl" else f"H{i+1}")
        for i in range(size):
            for j in range(size):
                if i != j:
                    mats.append(unit(i, j))
                    weights.append(_weight(i, j, size, kind))
                    labels.append(f"E{i+1}{j+1}")
    else:
        j = form_matrix(kind, size)
        jinv = np.rint(np.linalg.inv(j)).astype(np.int64)
        seen = set()
        for a in range(size):
            for b in range(a, size):
                if kind == "sp":
                    s = unit(a, b) + unit(b, a) if a != b else unit(a, a)
                else:
                    if a == b:
                        continue
                    s = unit(a, b) - unit(b, a)
                x = jinv @ s
                nz = list(zip(*np.nonzero(x)))
                key = tuple(sorted(nz))
                if key in seen:
                    continue
                seen.add(key)
                i0, j0 = nz[0]
                w = _weight(int(i0), int(j0), size, kind)
                if not any(w):
                    torus.append(len(mats))
                mats.append(x)
                weights.append(w)
                labels.append("X" + str(w))
        # order the torus first so torus_indices is an initial segment
        order = torus + [i for i in range(len(mats)) if i not in torus]
        mats = [mats[i] for i in order]
        weights = [weights[i] for i in order]
        labels = [f"H{k+1}" if k < len(torus) else labels[i] for k, i in enumerate(order)]
        torus = list(range(len(torus)))
    return MatrixModel(
        kind,
        size,
        p,
        tuple(np.mod(m, p) for m in mats),
        tuple(torus),
        tuple(weights),
        tuple(labels),
    )
