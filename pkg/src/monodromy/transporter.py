"""Regular semisimple elements above Weyl elements and their primed root decompositions.

For an automorphism ``Sigma = Ad(n t)`` with ``n`` a Weyl lift and ``t`` a
torus element, ``t' = ker(Ad Sigma - 1)``.  When ``Sigma`` is regular
semisimple, ``t'`` is a Cartan subalgebra and ``ad(t')`` splits the algebra
into ``t'`` plus one line per root ("primed roots").  A primed root is stored
as its line together with its weight functional on the basis of ``t'``.

Around a primed root ``alpha'``:

* ``l_{alpha'} = [g_{alpha'}, g_{-alpha'}]``, a line inside ``t'``
* ``t'_{alpha'} = ker(alpha')`` inside ``t'``
* ``W = t'_{alpha'} + g_{alpha'}``

and ``g = t'_{alpha'} + l_{alpha'} + (sum of primed lines)`` is the
decomposition along which components are read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .chevalley import ChevalleyAlgebra
from .lie import AlgebraAutomorphism, LieAlgebra
from .modrep import Submodule, joint_eigenspaces, submodule_from_rows
from . import permgroup

SEARCH_BUDGET = 4096


class SearchExhausted(RuntimeError):
    def __init__(self, message: str, best_fixed_dim: int | None):
        super().__init__(message)
        self.best_fixed_dim = best_fixed_dim


class NonSplitSpectrum(ValueError):
    """ad(t') has eigenvalues outside F_l."""


@dataclass(frozen=True, eq=False)
class RegSSElement:
    automorphism: AlgebraAutomorphism
    weyl_image: tuple[int, ...] | None  # permutation of roots, when known
    witness: dict = field(default_factory=dict)
    order: int | None = None

    @property
    def algebra(self) -> LieAlgebra:
        return self.automorphism.algebra


@dataclass(frozen=True)
class PrimedRoot:
    index: int
    vector: np.ndarray  # normalised spanning vector of the line
    weight: tuple[int, ...]  # values on the rows of t'
    sigma_value: int  # eigenvalue of Ad(Sigma) on the line


@dataclass(frozen=True, eq=False)
class PrimedDecomposition:
    sigma: RegSSElement
    t_prime: Submodule
    roots: tuple[PrimedRoot, ...]

    @property
    def algebra(self) -> LieAlgebra:
        return self.t_prime.algebra

    @property
    def alpha_prime_values(self) -> tuple[int, ...]:
        return tuple(r.sigma_value for r in self.roots)

    def negative(self, i: int) -> int:
        p = self.algebra.modulus
        target = tuple((-w) % p for w in self.roots[i].weight)
        for r in self.roots:
            if r.weight == target:
                return r.index
        raise KeyError("no opposite primed root")

    def line(self, i: int) -> Submodule:
        return submodule_from_rows(self.algebra, self.roots[i].vector[None, :])

    def l_line(self, i: int) -> np.ndarray:
        """Spanning vector of l_{alpha'} = [g_{alpha'}, g_{-alpha'}]."""
        alg = self.algebra
        return alg.bracket_vec(self.roots[i].vector, self.roots[self.negative(i)].vector)

    def alpha_on(self, i: int, h: np.ndarray) -> int:
        """alpha'(h) for h in t' (ambient coordinates)."""
        p = self.algebra.modulus
        coords = h[list(self.t_prime.pivots)]
        return int(sum(int(c) * int(w) for c, w in zip(coords, self.roots[i].weight)) % p)

    def t_prime_kernel(self, i: int) -> Submodule:
        """t'_{alpha'}: the kernel of alpha' on t'."""
        p = self.algebra.modulus
        w = np.array(self.roots[i].weight, dtype=np.int64)[None, :]
        ker = linalg.nullspace(w, p)
        if ker.shape[0] == 0:
            return submodule_from_rows(self.algebra, [])
        return submodule_from_rows(self.algebra, linalg.matmul(ker, self.t_prime.basis, p))

    def W(self, i: int) -> Submodule:
        k = self.t_prime_kernel(i)
        rows = np.vstack([k.basis, self.roots[i].vector[None, :]]) if k.dim else self.roots[i].vector[None, :]
        return submodule_from_rows(self.algebra, rows)

    def coroot_killing(self, i: int) -> int:
        """kappa(h', h') for the coroot h' in l_{alpha'} normalised by alpha'(h') = 2."""
        alg = self.algebra
        p = alg.modulus
        h = self.l_line(i)
        val = self.alpha_on(i, h)
        if val == 0:
            raise ArithmeticError("alpha' vanishes on l_alpha'")
        h = np.mod(h * (2 * linalg.inv_mod(val, p)), p)
        return int(h @ linalg.matmul(self._gram, h, p) % p)

    @cached_property
    def _gram(self) -> np.ndarray:
        alg = self.algebra
        return alg.gram if isinstance(alg, ChevalleyAlgebra) else alg.killing_gram()

    def component_basis(self, i: int) -> tuple[np.ndarray, dict[str, slice]]:
        """Rows: t'_{alpha'} basis, l_{alpha'}, then every primed line; plus block slices."""
        k = self.t_prime_kernel(i)
        l_vec = self.l_line(i)
        rows = [k.basis, l_vec[None, :]] + [r.vector[None, :] for r in self.roots]
        mat = np.vstack([x for x in rows if x.shape[0]])
        nk = k.dim
        neg = self.negative(i)
        blocks = {
            "t_alpha": slice(0, nk),
            "l": slice(nk, nk + 1),
            "plus": slice(nk + 1 + i, nk + 2 + i),
            "minus": slice(nk + 1 + neg, nk + 2 + neg),
        }
        return mat, blocks


def _weyl_order(perm: Sequence[int]) -> int:
    return permgroup.perm_order(np.asarray(perm, dtype=np.int64))


def regss_from_automorphism(aut: AlgebraAutomorphism, weyl_image=None, witness=None) -> RegSSElement:
    alg = aut.algebra
    fd = aut.fixed_dim()
    if fd != alg.rank:
        raise ValueError(f"fixed space has dimension {fd}, expected the rank {alg.rank}")
    return RegSSElement(aut, weyl_image, dict(witness or {}), _finite_order(aut))


def _finite_order(aut: AlgebraAutomorphism) -> int | None:
    """Multiplicative order when it divides l - 1 (the split semisimple case), else None."""
    alg = aut.algebra
    p = alg.modulus
    n = p - 1
    if not np.array_equal(linalg.matpow(aut.matrix, n, p), np.eye(alg.dim, dtype=np.int64)):
        return None
    order = n
    for q in sorted({d for d in range(2, n + 1) if n % d == 0}):
        while order % q == 0 and np.array_equal(
            linalg.matpow(aut.matrix, order // q, p), np.eye(alg.dim, dtype=np.int64)
        ):
            order //= q
    return order


def find_regular_ss(
    algebra: ChevalleyAlgebra,
    w: Sequence[int],
    seed: int = 0,
    budget: int = SEARCH_BUDGET,
    require_split: bool = True,
) -> RegSSElement:
    """Search Sigma = Ad(n_w) Ad(t) with fixed space of dimension rank.

    ``w`` is a word of root indices (reflections applied left to right).
    Torus values are drawn as m-th powers, m the order of w, which keeps the
    Ad(Sigma)-eigenvalues inside F_l whenever l = 1 mod 2m.
    """
    s = algebra.root_system
    p = algebra.modulus
    perm = permgroup.identity(s.num_roots)
    for r in w:
        perm = permgroup.compose(perm, s.reflection(r))
    m = _weyl_order(perm)
    lift = algebra.weyl_word_lift(w) if len(w) else AlgebraAutomorphism(algebra, algebra.eye(), "id", "weyl")
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(1, budget + 1):
        u = rng.integers(1, p, size=s.rank)
        t = tuple(int(pow(int(x), m, p)) for x in u)
        if attempt > budget // 2:
            t = tuple(int(x) for x in u)
        sigma = lift @ algebra.ad_torus(t)
        fd = sigma.fixed_dim()
        best = fd if best is None else min(best, fd, key=lambda d: abs(d - algebra.rank))
        if fd != algebra.rank:
            continue
        cand = RegSSElement(
            AlgebraAutomorphism(algebra, sigma.matrix, label=f"Sigma[w={tuple(w)}]", kind="other"),
            tuple(int(x) for x in perm),
            {"torus": t, "word": tuple(w), "attempt": attempt},
            None,
        )
        order = _finite_order(cand.automorphism)
        if order is None and require_split:
            continue
        cand = RegSSElement(cand.automorphism, cand.weyl_image, cand.witness, order)
        if require_split:
            try:
                primed_decomposition(cand)
            except NonSplitSpectrum:
                continue
        return cand
    raise SearchExhausted(
        f"no regular semisimple element over w={tuple(w)} in {budget} attempts (best fixed dim {best})", best
    )


def primed_decomposition(sigma: RegSSElement) -> PrimedDecomposition:
    alg = sigma.algebra
    p = alg.modulus
    n = alg.dim
    ad_sigma = sigma.automorphism.matrix
    fixed = linalg.nullspace(np.mod(ad_sigma - np.eye(n, dtype=np.int64), p), p)
    if fixed.shape[0] != alg.rank:
        raise ValueError("Sigma is not regular: fixed space has the wrong dimension")
    tp = submodule_from_rows(alg, fixed, label="t'")
    ops = [ad_sigma] + [alg.ad(row) for row in tp.basis]
    try:
        spaces = joint_eigenspaces(ops, p, n)
    except ValueError as exc:
        raise NonSplitSpectrum(
            f"ad(t') does not split over F_{p}; choose l = 1 modulo the order of Sigma"
            + (f" ({sigma.order})" if sigma.order else "")
        ) from exc
    zero = [(k, b) for k, b in spaces if all(x == 0 for x in k[1:])]
    lines = [(k, b) for k, b in spaces if not all(x == 0 for x in k[1:])]
    if len(zero) != 1 or zero[0][1].shape[0] != alg.rank or any(b.shape[0] != 1 for _, b in lines):
        raise NonSplitSpectrum(
            f"ad(t') does not split into t' and {n - alg.rank} lines over F_{p}; "
            "l must be 1 modulo the orders of the Ad(Sigma) eigenvalues"
        )
    roots = []
    for idx, (key, b) in enumerate(sorted(lines, key=lambda kb: tuple(kb[1][0]))):
        roots.append(PrimedRoot(idx, b[0], tuple(int(x) for x in key[1:]), int(key[0])))
    return PrimedDecomposition(sigma, tp, tuple(roots))


@dataclass(frozen=True)
class ComponentFlags:
    has_l_component: bool
    has_g_minus_component: bool

    def as_tuple(self) -> tuple[bool, bool]:
        return (self.has_l_component, self.has_g_minus_component)


def component_flags(m: Submodule, dec: PrimedDecomposition, alpha: int) -> ComponentFlags:
    if not 0 <= alpha < len(dec.roots):
        raise KeyError(f"primed root {alpha} is not in the decomposition")
    p = dec.algebra.modulus
    mat, blocks = dec.component_basis(alpha)
    inv = linalg.inverse(mat.T, p)
    coords = linalg.matmul(inv, m.basis.T, p)  # columns: coordinates of m's basis vectors
    has_l = bool(np.any(coords[blocks["l"]]))
    has_minus = bool(np.any(coords[blocks["minus"]]))
    return ComponentFlags(has_l, has_minus)


def _intersection_dim(a: Submodule, b: Submodule) -> int:
    if a.dim == 0 or b.dim == 0:
        return 0
    return linalg.intersect(a.basis, b.basis, a.algebra.modulus).shape[0]


def intersection_dims(dec: PrimedDecomposition, alpha: int, t: Submodule) -> tuple[int, int, int]:
    """(dim t' cap t, dim t'_{alpha'} cap t, dim W cap t)."""
    return (
        _intersection_dim(dec.t_prime, t),
        _intersection_dim(dec.t_prime_kernel(alpha), t),
        _intersection_dim(dec.W(alpha), t),
    )


def w_cap_t_in_t_prime(dec: PrimedDecomposition, alpha: int, t: Submodule) -> bool:
    p = dec.algebra.modulus
    w = dec.W(alpha)
    if w.dim == 0 or t.dim == 0:
        return True
    inter = linalg.intersect(w.basis, t.basis, p)
    return all(dec.t_prime.contains(v) for v in inter)


def standard_torus(alg: LieAlgebra) -> Submodule:
    return submodule_from_rows(alg, alg.torus_span(), label="t")


# ---------------------------------------------------------------------------
# Selecting primed roots inside a subalgebra
# ---------------------------------------------------------------------------


def subsystem_roots(alg: ChevalleyAlgebra, gens: Sequence[int]) -> list[int]:
    """Roots of the Chevalley algebra lying in the rational span of the given roots."""
    s = alg.root_system
    span = np.array([s.roots[g] for g in gens], dtype=np.int64)
    rk = np.linalg.matrix_rank(span.astype(float))
    out = []
    for i, r in enumerate(s.roots):
        if np.linalg.matrix_rank(np.vstack([span, np.array(r)]).astype(float)) == rk:
            out.append(i)
    return out


def subalgebra_span(alg: ChevalleyAlgebra, roots: Sequence[int]) -> Submodule:
    """span{H_delta, X_delta : delta in roots}."""
    rows = []
    for d in roots:
        rows.append(alg.X(d).coords)
        rows.append(np.mod(alg.H_root(d).coords, alg.modulus))
    return submodule_from_rows(alg, np.array(rows, dtype=np.int64))


def primed_roots_in(dec: PrimedDecomposition, sub: Submodule) -> list[int]:
    return [r.index for r in dec.roots if sub.contains(r.vector)]


def primed_length_classes(dec: PrimedDecomposition, indices: Sequence[int]) -> dict[int, str]:
    """Long/short labels from the Killing norm of the normalised coroot.

    kappa(h', h') is inversely proportional to the squared length of alpha';
    with two lengths the short value is 2 or 3 times the long value.
    """
    p = dec.algebra.modulus
    vals = {i: dec.coroot_killing(i) for i in indices}
    distinct = sorted(set(vals.values()))
    if len(distinct) == 1:
        return {i: "long" for i in indices}
    if len(distinct) != 2:
        raise ValueError("more than two primed root lengths")
    a, b = distinct
    for ratio in (2, 3):
        if b == ratio * a % p:
            long_val = a
            break
        if a == ratio * b % p:
            long_val = b
            break
    else:
        raise ValueError("primed root lengths do not have ratio 2 or 3")
    return {i: "long" if v == long_val else "short" for i, v in vals.items()}


def strongly_orthogonal_partner(alg: ChevalleyAlgebra, alpha: int) -> int:
    """First positive root beta with (alpha, beta) = 0 and alpha +- beta not roots."""
    s = alg.root_system
    a = s.roots[alpha]
    for b in s.positive_indices:
        r = s.roots[b]
        if b in (alpha, s.negative(alpha)):
            continue
        if s.inner(a, r) != 0:
            continue
        if s.is_root(tuple(x + y for x, y in zip(a, r))) or s.is_root(tuple(x - y for x, y in zip(a, r))):
            continue
        return b
    raise ValueError(f"no strongly orthogonal root to {a} in {s.label}: rank too small")


def modified_sigma(algebra: ChevalleyAlgebra, alpha: int, seed: int = 0, budget: int = SEARCH_BUDGET) -> RegSSElement:
    """Regular semisimple Sigma above s_alpha s_beta with [sl2^alpha, sl2^beta] = 0."""
    s = algebra.root_system
    if s.family not in "AD":
        raise ValueError("the modified element is used for the A and D families")
    beta = strongly_orthogonal_partner(algebra, alpha)
    sig = find_regular_ss(algebra, (alpha, beta), seed=seed, budget=budget)
    sig.witness["beta"] = beta
    return sig


def is_even_weyl_element(algebra: ChevalleyAlgebra, sigma: RegSSElement) -> bool:
    """Determinant +1 on t, i.e. an even number of reflections."""
    word = sigma.witness.get("word", ())
    return len(word) % 2 == 0
