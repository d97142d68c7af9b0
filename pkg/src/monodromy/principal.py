"""Principal sl2-triples, Kostant's decomposition and height-parity counts (exact arithmetic).

In the Chevalley basis ``ad H`` is diagonal for ``H = sum_{alpha > 0} H_alpha``:
it acts by 0 on the torus and by ``2 ht(beta)`` on ``X_beta``.  Everything
below is graded by height, which keeps the exact linear algebra small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

from . import linalg
from .chevalley import ChevalleyAlgebra, build_chevalley
from .lie import AlgebraElement
from .rootsys import RootSystem, build_root_system


@dataclass(frozen=True, eq=False)
class Sl2Triple:
    algebra: ChevalleyAlgebra
    X: AlgebraElement
    H: AlgebraElement
    Y: AlgebraElement

    def relations_hold(self) -> bool:
        alg = self.algebra
        br = alg.bracket_vec
        return (
            np.array_equal(br(self.X.coords, self.Y.coords), self.H.coords)
            and np.array_equal(br(self.H.coords, self.X.coords), 2 * self.X.coords)
            and np.array_equal(br(self.H.coords, self.Y.coords), -2 * self.Y.coords)
        )

    def y_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients of Y on X_{-alpha_i} for the simple roots alpha_i."""
        alg = self.algebra
        s = alg.root_system
        return tuple(Fraction(self.Y.coords[alg.x(s.negative(i))]) for i in range(s.rank))

    def h_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c) for c in self.H.coords[: self.algebra.rank])


@dataclass(frozen=True, eq=False)
class KostantData:
    triple: Sl2Triple
    exponents: tuple[int, ...]
    centralizer_basis: tuple[np.ndarray, ...]  # one highest-weight vector per exponent, same order
    h_eigen_multiplicities: dict[int, int]

    @property
    def centralizer_dim(self) -> int:
        return len(self.centralizer_basis)

    def checksum(self) -> int:
        return sum(2 * m + 1 for m in self.exponents)


def _grade_indices(alg: ChevalleyAlgebra) -> dict[int, list[int]]:
    """Basis indices grouped by height (torus at height 0)."""
    s = alg.root_system
    out: dict[int, list[int]] = {0: list(range(alg.rank))}
    for r in range(s.num_roots):
        out.setdefault(s.height(r), []).append(alg.x(r))
    return out


def _exact_algebra(system_or_alg) -> ChevalleyAlgebra:
    if isinstance(system_or_alg, ChevalleyAlgebra):
        if not system_or_alg.exact:
            raise ValueError("principal computations need the exact algebra (field=0)")
        return system_or_alg
    return _cached_exact(system_or_alg.family, system_or_alg.rank)


@lru_cache(maxsize=None)
def _cached_exact(family: str, rank: int) -> ChevalleyAlgebra:
    return build_chevalley(build_root_system(family, rank), 0)


def principal_triple(system: RootSystem | ChevalleyAlgebra) -> Sl2Triple:
    alg = _exact_algebra(system)
    s = alg.root_system
    x = alg.element(alg.zeros(alg.dim))
    for i in range(s.rank):
        x = x + alg.X(i)
    h = alg.element(alg.zeros(alg.dim))
    for r in s.positive_indices:
        h = h + alg.H_root(r)
    # [H, Y] = -2Y confines Y to the height -1 root spaces; solve [X, Y] = H there.
    cols = [alg.x(s.negative(i)) for i in range(s.rank)]
    ad_x = alg.ad(x.coords)
    rows = [[ad_x[k, c] for c in cols] for k in range(alg.dim)]
    sol = linalg.solve_q(rows, list(h.coords))
    if sol is None:
        raise ArithmeticError("no Y with [X, Y] = H")
    y = alg.zeros(alg.dim)
    for c, v in zip(cols, sol):
        y[c] = v if Fraction(v).denominator != 1 else int(v)
    return Sl2Triple(alg, x, h, alg.element(y))


def _kernel_by_grade(alg: ChevalleyAlgebra, x: np.ndarray) -> list[tuple[int, np.ndarray]]:
    grades = _grade_indices(alg)
    ad_x = alg.ad(x)
    out = []
    for k in sorted(grades):
        src = grades[k]
        dst = grades.get(k + 1, [])
        if not dst:
            for i in src:
                v = alg.zeros(alg.dim)
                v[i] = 1
                out.append((k, v))
            continue
        block = [[ad_x[d, s_] for s_ in src] for d in dst]
        for vec in linalg.nullspace_q(block, len(src)):
            v = alg.zeros(alg.dim)
            for i, c in zip(src, vec):
                v[i] = c
            out.append((k, v))
    return out


def kostant_decomposition(triple: Sl2Triple) -> KostantData:
    alg = triple.algebra
    s = alg.root_system
    kernel = _kernel_by_grade(alg, triple.X.coords)
    kernel.sort(key=lambda kv: kv[0])
    exps = tuple(k for k, _ in kernel)
    mult: dict[int, int] = {0: alg.rank}
    for r in range(s.num_roots):
        e = 2 * s.height(r)
        mult[e] = mult.get(e, 0) + 1
    return KostantData(triple, exps, tuple(v for _, v in kernel), dict(sorted(mult.items())))


def _ad_power(alg: ChevalleyAlgebra, y: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    for _ in range(n):
        v = alg.bracket_vec(y, v)
    return v


@dataclass(frozen=True)
class ComponentCheck:
    exponent: int
    l_alpha_value: Fraction  # alpha evaluated on (ad Y)^m v_{2m}
    g_minus_coefficient: Fraction  # X_{-alpha} coefficient of (ad Y)^{m+1} v_{2m}

    @property
    def flags(self) -> tuple[bool, bool]:
        return (self.l_alpha_value != 0, self.g_minus_coefficient != 0)


def ad_power_component_check(triple: Sl2Triple, kd: KostantData, alpha: int = 0) -> list[ComponentCheck]:
    """Nonvanishing of the l_alpha and g_{-alpha} components along each Kostant string."""
    alg = triple.algebra
    s = alg.root_system
    if not 0 <= alpha < s.rank:
        raise ValueError("alpha must be a simple root index")
    out = []
    for m, v in zip(kd.exponents, kd.centralizer_basis):
        top = _ad_power(alg, triple.Y.coords, v, m)
        if any(top[alg.rank :]):
            raise ArithmeticError("(ad Y)^m v_2m left the torus")
        val = sum(Fraction(top[j]) * s.cartan_matrix[alpha][j] for j in range(s.rank))
        nxt = alg.bracket_vec(triple.Y.coords, top)
        out.append(ComponentCheck(m, val, Fraction(nxt[alg.x(s.negative(alpha))])))
    return out


# ---------------------------------------------------------------------------
# Type A closed form
# ---------------------------------------------------------------------------


def _sl_matrices(n: int):
    size = n + 1

    def e(i, j):
        m = np.zeros((size, size), dtype=object)
        m[i, j] = 1
        return m

    return size, e


def an_k(n: int, i: int) -> int:
    """k_i = i(n - i + 1) for 1 <= i <= n."""
    return i * (n - i + 1)


@dataclass(frozen=True)
class AnClosedForm:
    n: int
    h: int
    h1: int
    h2: int
    recursion_h1: int
    recursion_h2: int
    closed_form: int

    @property
    def matches(self) -> bool:
        return self.h2 - 2 * self.h1 == self.closed_form

    @property
    def matches_up_to_sign(self) -> bool:
        return abs(self.h2 - 2 * self.h1) == abs(self.closed_form)

    @property
    def nonzero(self) -> bool:
        return self.h2 - 2 * self.h1 != 0


def lie_an_closed_form_check(n: int, h: int) -> AnClosedForm:
    """Compare h_2 - 2 h_1 from (ad Y)^h v_2h in sl_{n+1} with the closed form."""
    if not 1 <= h <= n:
        raise ValueError("need 1 <= h <= n")
    size, e = _sl_matrices(n)
    y = sum((an_k(n, i) * e(i, i - 1) for i in range(1, n + 1)), np.zeros((size, size), dtype=object))
    v = sum((e(i, i + h) for i in range(size - h)), np.zeros((size, size), dtype=object))
    for _ in range(h):
        v = y.dot(v) - v.dot(y)
    if any(v[i, j] for i in range(size) for j in range(size) if i != j):
        raise ArithmeticError("(ad Y)^h v_2h is not diagonal")
    # diag(d) = sum_i h_i (E_ii - E_{i+1,i+1})  =>  h_i = d_1 + ... + d_i
    coeffs = list(np.cumsum([int(v[i, i]) for i in range(size)]))[:n]
    h1 = int(coeffs[0])
    h2 = int(coeffs[1]) if n >= 2 else 0

    def kprod(i, j):  # k_{i,j} = k_i ... k_{j-1}
        return prod(an_k(n, t) for t in range(i, j)) if j <= n + 1 else 0

    r1 = (-1) ** h * kprod(1, h + 1)
    r2 = (-1) ** (h - 1) * comb(h - 1, 1) * kprod(1, h + 1) + (-1) ** h * kprod(2, h + 2) if n >= 2 else 0
    closed = (-1) ** (h - 1) * factorial(h + 1) * h * prod(n - t for t in range(1, h))
    return AnClosedForm(n, h, h1, h2, r1, r2, closed)


# ---------------------------------------------------------------------------
# Height parity and Sym^{2m}
# ---------------------------------------------------------------------------


def even_height_fixed_dim(system: RootSystem) -> int:
    """Fixed dimension of Ad(rho_check(-1)): the torus plus the even-height root spaces."""
    return system.rank + sum(1 for r in range(system.num_roots) if system.height(r) % 2 == 0)


def sym_fixed_dim_formula(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    return m if m % 2 else m + 1


def sym_fixed_dim_bruteforce(m: int) -> int:
    """Count monomials x^i y^(2m-i) fixed by diag(1,-1) twisted by det^-m."""
    if m < 1:
        raise ValueError("m must be positive")
    det = -1
    return sum(1 for i in range(2 * m + 1) if (-1) ** (2 * m - i) * det ** (-m) == 1)


def sym_fixed_dim(m: int) -> int:
    a = sym_fixed_dim_formula(m)
    b = sym_fixed_dim_bruteforce(m)
    if a != b:
        raise ArithmeticError(f"Sym^{2*m} fixed dimension disagrees: formula {a}, monomials {b}")
    return a


def kostant_fixed_dim(exponents) -> int:
    return sum(sym_fixed_dim(m) for m in exponents)


def exponents(system: RootSystem) -> tuple[int, ...]:
    """Exponents from the height partition (dual partition of root counts per height)."""
    counts: dict[int, int] = {}
    for r in system.positive_indices:
        counts[system.height(r)] = counts.get(system.height(r), 0) + 1
    out = []
    for k in sorted(counts):
        nxt = counts.get(k + 1, 0)
        out.extend([k] * (counts[k] - nxt))
    return tuple(sorted(out))


def centralizer_dim_mod(system: RootSystem, modulus: int) -> int:
    """dim ker(ad X) for X = sum of simple root vectors, over F_l."""
    alg = build_chevalley(system, modulus)
    x = np.zeros(alg.dim, dtype=np.int64)
    for i in range(system.rank):
        x[alg.x(i)] = 1
    return linalg.nullity(alg.ad(x), modulus)
