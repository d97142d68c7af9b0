"""Chevalley bases of the simple Lie algebras, over F_l or over the integers.

Basis order: ``H_1, ..., H_r`` (simple coroots) followed by ``X_beta`` for the
roots ``beta`` in the frozen order of :mod:`monodromy.rootsys`.

Relations:

* ``[H_i, X_beta] = <beta, alpha_i^vee> X_beta``
* ``[X_beta, X_{-beta}] = H_beta`` (the coroot, written in simple coroots)
* ``[X_beta, X_gamma] = N_{beta,gamma} X_{beta+gamma}``

The signs of ``N`` come from the extraspecial-pair algorithm: for every
non-simple positive root ``xi`` the extraspecial pair ``(r, s)`` (``r`` the
earliest positive root with ``xi - r`` a root) gets ``N_{r,s} = +(p+1)``; every
other constant follows from the standard identities among the ``N``.  The
Jacobi identity is the acceptance test for the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .lie import AlgebraAutomorphism, AlgebraElement, LieAlgebra, exp_ad_nilpotent
from .rootsys import RootSystem, build_root_system


class ModulusTooSmall(ValueError):
    """The requested characteristic is below the supported floor."""


class _StructureConstants:
    """Integer constants N_{a,b} for root indices a, b with a + b a root."""

    def __init__(self, system: RootSystem):
        self.s = system
        self.norm = [system.norm2(i) for i in range(system.num_roots)]
        self.extraspecial: dict[int, tuple[int, int]] = {}
        for xi in system.positive_indices:
            if system.height(xi) == 1:
                continue
            for r in system.positive_indices:
                s_idx = system.find(tuple(x - y for x, y in zip(system.roots[xi], system.roots[r])))
                if s_idx is not None and system.is_positive(s_idx):
                    self.extraspecial[xi] = (r, s_idx)
                    break
        self._memo: dict[tuple[int, int], int] = {}

    def n(self, a: int, b: int) -> int:
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        s = self.s
        c = s.add(a, b)
        if c is None:
            val = 0
        else:
            pa, pb = s.is_positive(a), s.is_positive(b)
            if pa and pb:
                val = self._special(a, b) if a < b else -self._special(b, a)
            elif not pa and not pb:
                val = -self.n(s.negative(a), s.negative(b))
            elif not pa and pb:
                val = -self.n(b, a)
            else:
                # a > 0 > b; use the cyclic identity with c3 = -(a+b).
                c3 = s.negative(c)
                if s.is_positive(c3):
                    val = self._ratio(self.norm[c3], self.norm[b], self.n(c3, a))
                else:
                    val = self._ratio(self.norm[c3], self.norm[a], self.n(b, c3))
        self._memo[key] = val
        return val

    @staticmethod
    def _ratio(num: Fraction, den: Fraction, n: int) -> int:
        v = num / den * n
        if v.denominator != 1:
            raise ArithmeticError("non-integral structure constant")
        return int(v)

    def _special(self, a: int, b: int) -> int:
        s = self.s
        xi = s.add(a, b)
        r, t = self.extraspecial[xi]
        if (a, b) == (r, t):
            return s.string_p(r, t) + 1
        total = Fraction(0)
        # N_{r,t} N_{-a,-b}/|xi|^2 + N_{t,-a} N_{r,-b}/|t-a|^2 + N_{-a,r} N_{t,-b}/|r-a|^2 = 0
        na, nb = s.negative(a), s.negative(b)
        ta = s.add(t, na)
        if ta is not None:
            total += Fraction(self.n(t, na) * self.n(r, nb)) / self.norm[ta]
        ra = s.add(r, na)
        if ra is not None:
            total += Fraction(self.n(na, r) * self.n(t, nb)) / self.norm[ra]
        v = self.norm[xi] * total / (s.string_p(r, t) + 1)
        if v.denominator != 1:
            raise ArithmeticError("non-integral structure constant")
        return int(v)


@dataclass(eq=False)
class ChevalleyAlgebra(LieAlgebra):
    root_system: RootSystem | None = None
    n_table: dict = field(default_factory=dict, repr=False)

    # -- index helpers -----------------------------------------------------

    def h(self, i: int) -> int:
        """Basis index of H_{i+1}."""
        return i

    def x(self, root: int) -> int:
        """Basis index of X_beta for the root with index ``root``."""
        return self.rank + root

    def root_of(self, basis_index: int) -> int | None:
        return basis_index - self.rank if basis_index >= self.rank else None

    def X(self, root: int) -> AlgebraElement:
        return self.basis(self.x(root))

    def H(self, i: int) -> AlgebraElement:
        return self.basis(self.h(i))

    def H_root(self, root: int) -> AlgebraElement:
        v = self.zeros(self.dim)
        for k, c in enumerate(self.root_system.coroot_coords(root)):
            v[k] = c
        return self.element(v)

    def N(self, a: int, b: int) -> int:
        return self.n_table.get((a, b), 0)

    @cached_property
    def gram(self) -> np.ndarray:
        return self.killing_gram()

    # -- automorphisms -----------------------------------------------------

    def root_value(self, t: Sequence, root: int):
        """beta(t) = prod t_i^{c_i} for the torus element with simple-root values t."""
        val = Fraction(1) if self.exact else 1
        for c, ti in zip(self.root_system.roots[root], t):
            if c == 0:
                continue
            base = Fraction(ti) if self.exact else int(ti) % self.modulus
            if self.exact:
                val *= base ** c
            else:
                val = val * pow(base, c, self.modulus) % self.modulus
        return val

    def ad_torus(self, t: Sequence) -> AlgebraAutomorphism:
        if len(t) != self.rank:
            raise ValueError("torus element needs one value per simple root")
        if any((Fraction(v) == 0) if self.exact else (int(v) % self.modulus == 0) for v in t):
            raise ValueError("torus values must be nonzero")
        m = self.eye()
        for r in range(self.root_system.num_roots):
            m[self.x(r), self.x(r)] = self.root_value(t, r)
        return AlgebraAutomorphism(self, m, label=f"t{tuple(int(v) if not self.exact else v for v in t)}", kind="torus")

    def weyl_lift(self, root: int) -> AlgebraAutomorphism:
        """Ad(n_beta) with n_beta = exp(ad X_beta) exp(-ad X_-beta) exp(ad X_beta)."""
        xb = self.X(root)
        xm = self.X(self.root_system.negative(root))
        e1 = exp_ad_nilpotent(xb)
        e2 = exp_ad_nilpotent(-xm)
        m = e1 @ e2 @ e1
        return AlgebraAutomorphism(self, m.matrix, label=f"n{root}", kind="weyl")

    def weyl_word_lift(self, word: Sequence[int]) -> AlgebraAutomorphism:
        """Lift of the product of reflections in ``word`` (applied left to right)."""
        out = AlgebraAutomorphism(self, self.eye(), label="id", kind="weyl")
        for r in word:
            out = self.weyl_lift(r) @ out
        return AlgebraAutomorphism(self, out.matrix, label="n" + ".".join(map(str, word)), kind="weyl")

    def induced_root_permutation(self, g: AlgebraAutomorphism) -> list[int] | None:
        """Permutation of roots read from the support of g on root vectors (None if not monomial)."""
        perm = []
        for r in range(self.root_system.num_roots):
            col = g.matrix[:, self.x(r)]
            nz = [int(i) for i in np.nonzero(col != 0)[0]]
            if len(nz) != 1 or nz[0] < self.rank:
                return None
            perm.append(nz[0] - self.rank)
        return perm

    def torus_block(self, g: AlgebraAutomorphism) -> np.ndarray:
        r = self.rank
        return g.matrix[:r, :r]

    def lengths(self) -> dict[str, list[int]]:
        """Basis indices of root vectors grouped by root length."""
        out: dict[str, list[int]] = {"long": [], "short": []}
        for r, lc in enumerate(self.root_system.length_class):
            out[lc].append(self.x(r))
        return out


def min_modulus(system: RootSystem) -> int:
    """Smallest prime above the floor l > 3h."""
    l = 3 * system.coxeter_number + 1
    while not linalg.is_prime(l):
        l += 1
    return l


def build_chevalley(system: RootSystem, field: int = 0) -> ChevalleyAlgebra:
    """Chevalley algebra of ``system`` over F_field (prime) or over Z/Q (field = 0)."""
    if field != 0:
        linalg.check_modulus(field)
        if field <= 3 * system.coxeter_number:
            raise ModulusTooSmall(
                f"l = {field} must exceed 3h = {3 * system.coxeter_number} for {system.label}"
            )
    sc = _StructureConstants(system)
    r = system.rank
    dim = r + system.num_roots
    a_l, b_l, k_l, c_l = [], [], [], []

    def put(a, b, k, c):
        if c:
            a_l.append(a)
            b_l.append(b)
            k_l.append(k)
            c_l.append(c)

    table = {}
    for beta in range(system.num_roots):
        xb = r + beta
        for i in range(r):
            c = system.pairing(system.roots[beta], system.roots[system.simple_indices[i]])
            put(i, xb, xb, c)
            put(xb, i, xb, -c)
        nb = system.negative(beta)
        for k, c in enumerate(system.coroot_coords(beta)):
            put(xb, r + nb, k, c)
        for gamma in range(system.num_roots):
            if gamma == nb:
                continue
            s = system.add(beta, gamma)
            if s is None:
                continue
            n = sc.n(beta, gamma)
            table[(beta, gamma)] = n
            put(xb, r + gamma, r + s, n)
    dtype = np.int64
    c_arr = np.array(c_l, dtype=dtype)
    if field:
        c_arr = np.mod(c_arr, field)
    else:
        c_arr = c_arr.astype(object)
    labels = tuple(f"H{i + 1}" for i in range(r)) + tuple(f"X{system.roots[b]}" for b in range(system.num_roots))
    alg = ChevalleyAlgebra(
        modulus=field,
        dim=dim,
        sc_a=np.array(a_l, dtype=np.int64),
        sc_b=np.array(b_l, dtype=np.int64),
        sc_k=np.array(k_l, dtype=np.int64),
        sc_c=c_arr,
        torus_indices=tuple(range(r)),
        basis_labels=labels,
        name=f"g({system.label})",
        root_system=system,
        n_table=table,
    )
    return alg


def chevalley(family: str, rank: int, field: int = 0) -> ChevalleyAlgebra:
    return build_chevalley(build_root_system(family, rank), field)


def structure_tensor(alg: LieAlgebra) -> np.ndarray:
    """Dense integer tensor T with T[a] = ad(e_a); only for integral structure constants."""
    t = np.zeros((alg.dim, alg.dim, alg.dim), dtype=np.int64)
    np.add.at(t, (alg.sc_a, alg.sc_k, alg.sc_b), np.array([int(c) for c in alg.sc_c], dtype=np.int64))
    return t


def _jacobi_value(t: np.ndarray, i: int, j: int, k: int) -> np.ndarray:
    return t[i] @ t[j][:, k] + t[j] @ t[k][:, i] + t[k] @ t[i][:, j]


def jacobi_exhaustive(alg: LieAlgebra) -> int:
    """Number of basis triples (i, j, k) violating Jacobi, computed over the integers."""
    t = structure_tensor(alg)
    # x[i, j, k] = [e_i, [e_j, e_k]] as a vector
    x = np.einsum("iam,jmk->ijka", t, t, optimize=True)
    total = x + x.transpose(1, 2, 0, 3) + x.transpose(2, 0, 1, 3)
    if alg.modulus:
        total = np.mod(total, alg.modulus)
    bad = np.any(total != 0, axis=3)
    return int(np.count_nonzero(bad))


def jacobi_sample(alg: LieAlgebra, count: int, seed: int) -> int:
    """Number of violations among ``count`` seeded random basis triples."""
    t = structure_tensor(alg)
    rng = np.random.default_rng(seed)
    bad = 0
    for i, j, k in rng.integers(0, alg.dim, size=(count, 3)):
        v = _jacobi_value(t, int(i), int(j), int(k))
        if alg.modulus:
            v = np.mod(v, alg.modulus)
        if np.any(v != 0):
            bad += 1
    return bad


def structure_constant_magnitudes_ok(alg: ChevalleyAlgebra) -> bool:
    """|N_{a,b}| = p + 1 with p the largest i such that b - i a is a root."""
    s = alg.root_system
    return all(abs(n) == s.string_p(a, b) + 1 for (a, b), n in alg.n_table.items())
