"""Finite-dimensional Lie algebras given by structure constants, their elements and automorphisms.

Structure constants are stored sparsely as four parallel arrays ``(a, b, k, c)``
meaning ``[e_a, e_b] = ... + c e_k + ...``.  Both orderings of every pair are
stored, so no antisymmetry bookkeeping is needed at bracket time.

``modulus`` is a prime ``p`` for arithmetic in F_p (numpy int64 residues) or
``0`` for exact arithmetic (numpy object arrays of ints/Fractions).

Linear maps act on column vectors: column ``j`` of a matrix is the image of the
basis vector ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import linalg


class ParentMismatch(ValueError):
    """Raised when elements of different algebras are combined."""


@dataclass(eq=False)
class LieAlgebra:
    """A Lie algebra with a distinguished Cartan subalgebra ``t`` spanned by basis vectors."""

    modulus: int
    dim: int
    sc_a: np.ndarray
    sc_b: np.ndarray
    sc_k: np.ndarray
    sc_c: np.ndarray
    torus_indices: tuple[int, ...]
    basis_labels: tuple[str, ...] = ()
    name: str = "lie"

    # -- scalars -----------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.modulus == 0

    @property
    def rank(self) -> int:
        return len(self.torus_indices)

    def scalar(self, x) -> object:
        if self.exact:
            return Fraction(x)
        return int(x) % self.modulus

    def inv(self, x):
        if self.exact:
            return 1 / Fraction(x)
        return linalg.inv_mod(int(x), self.modulus)

    def zeros(self, shape) -> np.ndarray:
        if self.exact:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self) -> np.ndarray:
        m = self.zeros((self.dim, self.dim))
        for i in range(self.dim):
            m[i, i] = 1
        return m

    def coerce(self, arr) -> np.ndarray:
        if self.exact:
            return np.array(arr, dtype=object)
        return linalg.as_mod(arr, self.modulus)

    def matmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.exact:
            return np.dot(x, y)
        return linalg.matmul(x, y, self.modulus)

    def is_zero(self, arr: np.ndarray) -> bool:
        return not np.any(arr != 0)

    # -- elements ----------------------------------------------------------

    def basis(self, i: int) -> "AlgebraElement":
        v = self.zeros(self.dim)
        v[i] = 1
        return AlgebraElement(self, v)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, self.coerce(coords))

    def bracket_vec(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = self.zeros(self.dim)
        vals = u[self.sc_a] * v[self.sc_b] * self.sc_c
        np.add.at(out, self.sc_k, vals)
        if not self.exact:
            out = np.mod(out, self.modulus)
        return out

    def ad(self, u: np.ndarray) -> np.ndarray:
        """Matrix of ad(u); column b holds [u, e_b]."""
        m = self.zeros((self.dim, self.dim))
        vals = u[self.sc_a] * self.sc_c
        np.add.at(m, (self.sc_k, self.sc_b), vals)
        if not self.exact:
            m = np.mod(m, self.modulus)
        return m

    def ad_basis(self, i: int) -> np.ndarray:
        return self.ad(self.basis(i).coords)

    def jacobi_defect(self, i: int, j: int, k: int) -> np.ndarray:
        ei, ej, ek = (self.basis(x).coords for x in (i, j, k))
        b = self.bracket_vec
        return b(ei, b(ej, ek)) + b(ej, b(ek, ei)) + b(ek, b(ei, ej))

    def jacobi_holds(self, i: int, j: int, k: int) -> bool:
        d = self.jacobi_defect(i, j, k)
        if not self.exact:
            d = np.mod(d, self.modulus)
        return self.is_zero(d)

    def killing_gram(self) -> np.ndarray:
        """Gram matrix of the trace form tr(ad a ad b) on the basis."""
        by_kb: dict[tuple[int, int], list[tuple[int, object]]] = {}
        for a, b, k, c in zip(self.sc_a.tolist(), self.sc_b.tolist(), self.sc_k.tolist(), self.sc_c.tolist()):
            by_kb.setdefault((k, b), []).append((a, c))
        g = self.zeros((self.dim, self.dim))
        for (k, b), lst in by_kb.items():
            other = by_kb.get((b, k))
            if not other:
                continue
            for a1, c1 in lst:
                for a2, c2 in other:
                    g[a1, a2] += c1 * c2
        if not self.exact:
            g = np.mod(g, self.modulus)
        return g

    def torus_span(self) -> np.ndarray:
        """Echelon basis (rows) of the standard Cartan subalgebra."""
        m = self.zeros((self.rank, self.dim))
        for r, i in enumerate(self.torus_indices):
            m[r, i] = 1
        return m


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    parent: LieAlgebra
    coords: np.ndarray

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise ValueError("coordinate vector has the wrong length")

    def _check(self, other: "AlgebraElement") -> None:
        if other.parent is not self.parent:
            raise ParentMismatch("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return self.parent.element(self.coords + other.coords)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return self.parent.element(self.coords - other.coords)

    def __rmul__(self, c) -> "AlgebraElement":
        return self.parent.element(self.coords * (self.parent.scalar(c)))

    def __neg__(self) -> "AlgebraElement":
        return self.parent.element(-self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement) or other.parent is not self.parent:
            return NotImplemented
        return self.parent.is_zero(self.parent.coerce(self.coords - other.coords))

    def is_zero(self) -> bool:
        return self.parent.is_zero(self.coords)


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    return AlgebraElement(a.parent, a.parent.bracket_vec(a.coords, b.coords))


@dataclass(frozen=True, eq=False)
class AlgebraAutomorphism:
    """A linear automorphism of an algebra (column j = image of e_j)."""

    algebra: LieAlgebra
    matrix: np.ndarray
    label: str = ""
    kind: str = "other"  # torus | weyl | involution | other

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.algebra.matmul(self.matrix, v)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.parent is not self.algebra:
            raise ParentMismatch("element and automorphism belong to different algebras")
        return AlgebraElement(self.algebra, self.apply(x.coords))

    def __matmul__(self, other: "AlgebraAutomorphism") -> "AlgebraAutomorphism":
        """Composition: (self @ other)(x) = self(other(x))."""
        if other.algebra is not self.algebra:
            raise ParentMismatch("automorphisms of different algebras")
        return AlgebraAutomorphism(
            self.algebra,
            self.algebra.matmul(self.matrix, other.matrix),
            label=f"{self.label}*{other.label}",
            kind=self.kind if self.kind == other.kind else "other",
        )

    def inverse(self) -> "AlgebraAutomorphism":
        alg = self.algebra
        if alg.exact:
            import sympy

            inv = sympy.Matrix(self.matrix.tolist()).inv()
            m = np.array([[Fraction(int(x.p), int(x.q)) for x in row] for row in inv.tolist()], dtype=object)
        else:
            m = linalg.inverse(self.matrix, alg.modulus)
        return AlgebraAutomorphism(alg, m, label=f"({self.label})^-1", kind=self.kind)

    def power(self, e: int) -> "AlgebraAutomorphism":
        result = AlgebraAutomorphism(self.algebra, self.algebra.eye(), label="id", kind=self.kind)
        for _ in range(e):
            result = self @ result
        return result

    def is_identity(self) -> bool:
        return self.algebra.is_zero(self.algebra.coerce(self.matrix - self.algebra.eye()))

    def is_invertible(self) -> bool:
        alg = self.algebra
        if alg.exact:
            import sympy

            return sympy.Matrix(self.matrix.tolist()).rank() == alg.dim
        return linalg.rank(self.matrix, alg.modulus) == alg.dim

    def preserves_bracket(self, pairs: Iterable[tuple[int, int]] | None = None) -> bool:
        """Check g[e_i, e_j] = [g e_i, g e_j] on the given basis pairs (default: all)."""
        alg = self.algebra
        if pairs is None:
            pairs = ((i, j) for i in range(alg.dim) for j in range(i + 1, alg.dim))
        cols = [self.matrix[:, i] for i in range(alg.dim)]
        for i, j in pairs:
            lhs = self.apply(alg.bracket_vec(alg.basis(i).coords, alg.basis(j).coords))
            rhs = alg.bracket_vec(cols[i], cols[j])
            if not alg.is_zero(alg.coerce(lhs - rhs)):
                return False
        return True

    def sample_pairs(self, count: int, seed: int) -> list[tuple[int, int]]:
        rng = np.random.default_rng(seed)
        d = self.algebra.dim
        return [(int(a), int(b)) for a, b in rng.integers(0, d, size=(count, 2))]

    def fixed_dim(self) -> int:
        alg = self.algebra
        return alg.dim - linalg.rank(np.mod(self.matrix - alg.eye(), alg.modulus), alg.modulus)


def exp_ad_nilpotent(x: AlgebraElement) -> AlgebraAutomorphism:
    """exp(ad x) for nilpotent ad x, truncated at the nilpotency degree."""
    alg = x.parent
    adx = alg.ad(x.coords)
    term = alg.eye()
    total = alg.eye()
    k = 0
    while True:
        k += 1
        term = alg.matmul(term, adx)
        if alg.is_zero(term):
            break
        if k >= alg.dim:
            raise ValueError("ad(x) is not nilpotent")
        if not alg.exact and k >= alg.modulus:
            raise ValueError(f"characteristic {alg.modulus} too small for exp of nilpotency degree > {k}")
        if alg.exact:
            fact = Fraction(1)
            for j in range(2, k + 1):
                fact *= j
            total = total + term * (1 / fact)
        else:
            fact = 1
            for j in range(2, k + 1):
                fact = fact * j % alg.modulus
            total = np.mod(total + term * linalg.inv_mod(fact, alg.modulus), alg.modulus)
    if alg.exact:
        total = np.array([[_normalise(v) for v in row] for row in total], dtype=object)
    return AlgebraAutomorphism(alg, total, label="exp(ad x)", kind="other")


def _normalise(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else v


def killing_pairing(a: AlgebraElement, b: AlgebraElement) -> object:
    a._check(b)
    alg = a.parent
    val = np.trace(alg.matmul(alg.ad(a.coords), alg.ad(b.coords)))
    return val if alg.exact else int(val) % alg.modulus


def matrix_lie_algebra(
    basis: Sequence[np.ndarray],
    modulus: int,
    torus_indices: Sequence[int],
    labels: Sequence[str] = (),
    name: str = "matrix",
) -> LieAlgebra:
    """Structure constants of a Lie algebra of matrices over F_p with the given basis."""
    mats = [linalg.as_mod(np.asarray(b), modulus) for b in basis]
    n = len(mats)
    flat = np.vstack([m.reshape(-1) for m in mats])  # n x N^2
    r, piv = linalg.rref(flat, modulus)
    if len(piv) != n:
        raise ValueError("matrices are linearly dependent")
    # flat = T @ r with T = flat[:, piv]; a vector v in the span equals v[piv] @ r.
    t = flat[:, piv]
    t_inv = linalg.inverse(t, modulus)
    a_list, b_list, k_list, c_list = [], [], [], []
    for i in range(n):
        for j in range(n):
            br = np.mod(linalg.matmul(mats[i], mats[j], modulus) - linalg.matmul(mats[j], mats[i], modulus), modulus)
            vec = br.reshape(-1)
            red = linalg.reduce_vector(vec, r, piv, modulus)
            if np.any(red):
                raise ValueError("basis does not span a Lie algebra (bracket escapes the span)")
            coords_r = vec[piv]
            coords = linalg.matmul(coords_r[None, :], t_inv, modulus)[0]
            for k in np.nonzero(coords)[0]:
                a_list.append(i)
                b_list.append(j)
                k_list.append(int(k))
                c_list.append(int(coords[k]))
    return LieAlgebra(
        modulus=modulus,
        dim=n,
        sc_a=np.array(a_list, dtype=np.int64),
        sc_b=np.array(b_list, dtype=np.int64),
        sc_k=np.array(k_list, dtype=np.int64),
        sc_c=np.array(c_list, dtype=np.int64),
        torus_indices=tuple(torus_indices),
        basis_labels=tuple(labels),
        name=name,
    )


def matrix_coordinates(basis: Sequence[np.ndarray], m: np.ndarray, modulus: int) -> np.ndarray:
    """Coordinates of the matrix ``m`` in a basis of matrices over F_p."""
    flat = np.vstack([linalg.as_mod(np.asarray(b), modulus).reshape(-1) for b in basis])
    vec = linalg.as_mod(np.asarray(m), modulus).reshape(-1)
    sol = linalg.left_nullspace(np.vstack([flat, np.mod(-vec[None, :], modulus)]), modulus)
    for row in sol:
        if row[-1]:
            return np.mod(row[:-1] * linalg.inv_mod(int(row[-1]), modulus), modulus)
    raise ValueError("matrix is not in the span of the basis")


def conjugation_matrix(basis: Sequence[np.ndarray], g: np.ndarray, modulus: int) -> np.ndarray:
    """Matrix of X -> g X g^{-1} in the coordinates of ``basis`` (columns are images)."""
    p = modulus
    flat = np.vstack([linalg.as_mod(np.asarray(b), p).reshape(-1) for b in basis])
    # coordinates are read off from len(basis) independent matrix entries
    _, cols = linalg.rref(flat, p)
    if len(cols) != len(basis):
        raise ValueError("basis matrices are linearly dependent")
    read = linalg.inverse(flat[:, cols], p)
    g = linalg.as_mod(g, p)
    ginv = linalg.inverse(g, p)
    images = []
    for b in basis:
        images.append(linalg.matmul(linalg.matmul(g, linalg.as_mod(b, p), p), ginv, p).reshape(-1))
    images = np.vstack(images)
    coords = linalg.matmul(images[:, cols].copy(), read, p)
    if not np.array_equal(linalg.matmul(coords, flat, p), images):
        raise ValueError("g does not normalise the span of the basis")
    return coords.T.copy()


def conjugation_automorphism(
    algebra: LieAlgebra, basis: Sequence[np.ndarray], g: np.ndarray, label: str = "Ad(g)"
) -> AlgebraAutomorphism:
    """Ad(g) X = g X g^{-1} on a matrix Lie algebra given by ``basis``."""
    m = conjugation_matrix(basis, g, algebra.modulus)
    return AlgebraAutomorphism(algebra, m, label=label, kind="other")
