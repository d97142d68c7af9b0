"""Explicit torus-normaliser lifts in the standard representations and real fixed-space counts.

Matrices live over F_l and respect the antidiagonal forms of
:mod:`monodromy.matgroups`.  For Sp_{2n} the basis is ``e_1..e_n, e'_n..e'_1``
so that ``e'_i`` sits at position ``2n - 1 - i`` (0-based) and pairs with
``e_i`` under the alternating form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .chevalley import chevalley
from .matgroups import classical_model, form_matrix, preserves_form
from .rootsys import a7_subsystem_of_e7

GROUPS = ("SL", "Sp", "SO")
ENUMERATION_CAP = 10**6


class ClosureTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class StdMatrix:
    matrix: np.ndarray
    group: str
    modulus: int

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"unknown group tag {self.group!r}")
        object.__setattr__(self, "matrix", linalg.as_mod(self.matrix, self.modulus))
        if not self.is_valid():
            raise ValueError(f"matrix does not lie in {self.group}")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def det(self) -> int:
        return _det_mod(self.matrix, self.modulus)

    def is_valid(self) -> bool:
        if self.det() != 1:
            return False
        if self.group == "SL":
            return True
        kind = "sp" if self.group == "Sp" else "so"
        return preserves_form(self.matrix, form_matrix(kind, self.size), self.modulus)

    def __matmul__(self, other: "StdMatrix") -> "StdMatrix":
        return StdMatrix(linalg.matmul(self.matrix, other.matrix, self.modulus), self.group, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, StdMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def order(self, limit: int = 10**4) -> int:
        eye = np.eye(self.size, dtype=np.int64)
        m = self.matrix.copy()
        for k in range(1, limit + 1):
            if np.array_equal(m, eye):
                return k
            m = linalg.matmul(m, self.matrix, self.modulus)
        raise ArithmeticError("order exceeds limit")


def _det_mod(m: np.ndarray, p: int) -> int:
    a = linalg.as_mod(m, p).copy()
    n = a.shape[0]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r, c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = det * int(a[c, c]) % p
        inv = linalg.inv_mod(int(a[c, c]), p)
        for r in range(c + 1, n):
            if a[r, c]:
                a[r] = (a[r] - int(a[r, c]) * inv * a[c]) % p
    return det % p


# ---------------------------------------------------------------------------
# Lifts
# ---------------------------------------------------------------------------


def permutation_matrix(perm: Sequence[int], n: int) -> np.ndarray:
    """Matrix sending e_i to e_{perm[i]}."""
    m = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        m[j, i] = 1
    return m


def perm_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def even_perm_lift(perm: Sequence[int], n: int, modulus: int) -> StdMatrix:
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    if perm_sign(perm) != 1:
        raise ValueError("odd permutation has no permutation-matrix lift to SL_n")
    return StdMatrix(permutation_matrix(perm, n), "SL", modulus)


def sp_prime_index(i: int, n: int) -> int:
    return 2 * n - 1 - i


def sp_tilde_d_generators(n: int, modulus: int) -> list[StdMatrix]:
    """d_i(e_i) = -e'_i and d_i(e'_i) = e_i, identity elsewhere."""
    if modulus % 2 == 0:
        raise ValueError("l must be odd")
    out = []
    for i in range(n):
        m = np.eye(2 * n, dtype=np.int64)
        ip = sp_prime_index(i, n)
        m[i, i] = m[ip, ip] = 0
        m[ip, i] = -1
        m[i, ip] = 1
        out.append(StdMatrix(m, "Sp", modulus))
    return out


def sp_section_lift(perm: Sequence[int], n: int, modulus: int) -> StdMatrix:
    """S_n acting on e_i and e'_i simultaneously."""
    m = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i, j in enumerate(perm):
        m[j, i] = 1
        m[sp_prime_index(j, n), sp_prime_index(i, n)] = 1
    return StdMatrix(m, "Sp", modulus)


def signed_weight_permutation(g: StdMatrix, n: int) -> tuple[int, ...] | None:
    """Image in the hyperoctahedral group: i -> +-(j+1) when g e_i is a multiple of e_j or e'_j."""
    out = []
    for i in range(n):
        nz = np.nonzero(g.matrix[:, i])[0]
        if len(nz) != 1:
            return None
        j = int(nz[0])
        out.append(j + 1 if j < n else -(sp_prime_index(j, n) + 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# Group closures
# ---------------------------------------------------------------------------


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m).tobytes()


def closure(gens: Sequence[np.ndarray], p: int, cap: int = ENUMERATION_CAP) -> list[np.ndarray]:
    """All products of the generators (a finite matrix group), breadth first."""
    if not gens:
        return []
    n = gens[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    seen = {_key(eye): eye}
    frontier = [eye]
    gens = [linalg.as_mod(g, p) for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = linalg.matmul(h, g, p)
                k = _key(x)
                if k not in seen:
                    seen[k] = x
                    nxt.append(x)
                    if len(seen) > cap:
                        raise ClosureTooLarge(f"group has more than {cap} elements")
        frontier = nxt
    return list(seen.values())


def derived_subgroup(gens: Sequence[np.ndarray], p: int, cap: int = ENUMERATION_CAP) -> list[np.ndarray]:
    """Normal closure of the generator commutators."""
    gens = [linalg.as_mod(g, p) for g in gens]
    n = gens[0].shape[0]
    invs = [linalg.inverse(g, p) for g in gens]
    dgens = []
    for a, ai in zip(gens, invs):
        for b, bi in zip(gens, invs):
            dgens.append(linalg.matmul(linalg.matmul(a, b, p), linalg.matmul(ai, bi, p), p))
    while True:
        elems = closure(dgens, p, cap) if dgens else [np.eye(n, dtype=np.int64)]
        keys = {_key(e) for e in elems}
        added = False
        for g, gi in zip(gens, invs):
            for d in list(dgens):
                c = linalg.matmul(linalg.matmul(g, d, p), gi, p)
                if _key(c) not in keys:
                    dgens.append(c)
                    added = True
        if not added:
            return elems


@dataclass(frozen=True)
class DetSquareVerdict:
    square: bool
    group_order: int
    abelianization_order: int
    character: dict[int, int] | None = None  # generator index -> chi(generator) in F_l
    obstruction: np.ndarray | None = field(default=None, compare=False)
    note: str = ""


def det_square_criterion(gens: Sequence[np.ndarray], modulus: int, cap: int = ENUMERATION_CAP) -> DetSquareVerdict:
    """Is det restricted to H = <gens> the square of a character of H?

    The character group of A = H/[H,H] is dual to A, and its squares are
    exactly the characters trivial on A[2].  So det is a square iff det(h) = 1
    whenever h^2 lies in [H,H].  When every needed square root exists in F_l a
    character is also produced by a consistency search over the closure.
    """
    p = modulus
    gens = [linalg.as_mod(g, p) for g in gens]
    if not gens:
        return DetSquareVerdict(True, 1, 1, {}, None, "trivial group")
    elems = closure(gens, p, cap)
    derived = {_key(d) for d in derived_subgroup(gens, p, cap)}
    ab_order = len(elems) // len(derived)
    obstruction = None
    for h in elems:
        if _key(linalg.matmul(h, h, p)) in derived and _det_mod(h, p) != 1:
            obstruction = h
            break
    square = obstruction is None
    character = _search_character(gens, elems, p) if square else None
    note = ""
    if square and character is None:
        note = "square roots of det needed outside F_l; decided by the 2-torsion criterion"
    if not square and _search_character(gens, elems, p) is not None:
        raise ArithmeticError("character search contradicts the 2-torsion criterion")
    return DetSquareVerdict(square, len(elems), ab_order, character, obstruction, note)


def _sqrt_mod(a: int, p: int) -> list[int]:
    return sorted({x for x in range(1, p) if x * x % p == a % p})


def _search_character(gens, elems, p) -> dict[int, int] | None:
    """Find chi with chi(g)^2 = det(g) on generators, extended consistently over the group."""
    options = [_sqrt_mod(_det_mod(g, p), p) for g in gens]
    if any(not o for o in options):
        return None
    n = gens[0].shape[0]
    for values in product(*options):
        chi = {_key(np.eye(n, dtype=np.int64)): 1}
        frontier = [np.eye(n, dtype=np.int64)]
        ok = True
        while frontier and ok:
            nxt = []
            for h in frontier:
                for g, v in zip(gens, values):
                    x = linalg.matmul(h, g, p)
                    val = chi[_key(h)] * v % p
                    k = _key(x)
                    if k in chi:
                        if chi[k] != val:
                            ok = False
                            break
                    else:
                        chi[k] = val
                        nxt.append(x)
                if not ok:
                    break
            frontier = nxt
        if ok:
            return {i: int(v) for i, v in enumerate(values)}
    return None


# ---------------------------------------------------------------------------
# Real (complex conjugation) fixed dimensions
# ---------------------------------------------------------------------------


def _check_d(family: str, rank: int, d: int) -> int:
    n = rank + 1 if family == "A" else rank
    if family not in "ABCD":
        raise ValueError("classical families only")
    if not 0 < d < n:
        raise ValueError(f"need 0 < d < {n}")
    return n


def real_fixed_roots_formula(family: str, rank: int, d: int) -> int:
    """f, the number of root vectors fixed by the involution with d entries equal to 1."""
    n = _check_d(family, rank, d)
    pairs = comb(d, 2) + comb(n - d, 2)
    return {"A": 2 * pairs, "B": 4 * pairs + 2 * d, "C": 4 * pairs + 2 * n, "D": 4 * pairs}[family]


def real_h0_classical(family: str, rank: int, d: int) -> int:
    return rank + real_fixed_roots_formula(family, rank, d)


def involution_matrix(family: str, rank: int, d: int) -> tuple[str, int, np.ndarray]:
    """(matrix algebra kind, size, diagonal involution) in the standard representation."""
    n = _check_d(family, rank, d)
    eps = [1] * d + [-1] * (n - d)
    if family == "A":
        return "sl", n, np.diag(eps)
    if family == "B":
        return "so", 2 * n + 1, np.diag(eps + [1] + eps[::-1])
    if family == "C":
        return "sp", 2 * n, np.diag(eps + eps[::-1])
    return "so", 2 * n, np.diag(eps + eps[::-1])


@dataclass(frozen=True)
class RealH0:
    formula: int
    explicit: int
    fixed_root_vectors: int

    @property
    def agree(self) -> bool:
        return self.formula == self.explicit


def real_h0_both(family: str, rank: int, d: int, modulus: int = 73) -> RealH0:
    """h0 from the closed form and from the fixed space of Ad(c) on the matrix algebra."""
    kind, size, c = involution_matrix(family, rank, d)
    model = classical_model(kind, size, modulus)
    m = model.conj_matrix(c)
    explicit = linalg.nullity(np.mod(m - np.eye(model.dim, dtype=np.int64), modulus), modulus)
    return RealH0(real_h0_classical(family, rank, d), explicit, model.fixed_root_vectors(c, m))


def real_h0_max(family: str, rank: int) -> int:
    n = rank + 1 if family == "A" else rank
    values = {d: real_h0_classical(family, rank, d) for d in range(1, n)}
    best = max(values.values())
    if values[n - 1] != best:
        raise ArithmeticError("maximum not attained at d = n - 1")
    return best


def real_h0_max_closed(family: str, rank: int) -> int:
    """n^2-2n+1 (A_{n-1}), 2n^2-3n+2 (B_n), 2n^2-3n+4 (C_n), 2n^2-5n+4 (D_n)."""
    if family == "A":
        n = rank + 1
        return n * n - 2 * n + 1
    n = rank
    return {"B": 2 * n * n - 3 * n + 2, "C": 2 * n * n - 3 * n + 4, "D": 2 * n * n - 5 * n + 4}[family]


@dataclass(frozen=True)
class E7BoundReport:
    candidates: int
    min_minus_dim_on_a7: int
    max_h0: int
    bound: int = 119

    @property
    def holds(self) -> bool:
        return self.min_minus_dim_on_a7 >= 14 and self.max_h0 <= self.bound


def e7_real_bound_check(modulus: int = 73) -> E7BoundReport:
    """Every order-2 torus element acting nontrivially on the A7 part fixes at most 119 dimensions."""
    alg = chevalley("E", 7, modulus)
    s = alg.root_system
    a7 = a7_subsystem_of_e7(s).root_indices
    p = modulus
    count = 0
    min_minus = None
    max_h0 = 0
    for signs in product((1, -1), repeat=s.rank):
        t = tuple(x % p for x in signs)
        values = [alg.root_value(t, r) for r in range(s.num_roots)]
        minus_a7 = sum(1 for r in a7 if values[r] != 1)
        if minus_a7 == 0:
            continue
        count += 1
        min_minus = minus_a7 if min_minus is None else min(min_minus, minus_a7)
        h0 = alg.ad_torus(t).fixed_dim()
        max_h0 = max(max_h0, h0)
    return E7BoundReport(count, int(min_minus), max_h0)


def weyl_image_check(n: int, modulus: int) -> tuple[int, int, int]:
    """(|<S_n section, D~>|, size of its image in W(C_n), kernel size); kernel must be diagonal."""
    gens = [g.matrix for g in sp_tilde_d_generators(n, modulus)]
    if n >= 2:
        gens.append(sp_section_lift([1, 0] + list(range(2, n)), n, modulus).matrix)
        gens.append(sp_section_lift(list(range(1, n)) + [0], n, modulus).matrix)
    elems = closure(gens, modulus)
    images = {}
    for e in elems:
        img = signed_weight_permutation(StdMatrix(e, "Sp", modulus), n)
        if img is None:
            raise ArithmeticError("element does not normalise the torus monomially")
        images.setdefault(img, []).append(e)
    ident = tuple(range(1, n + 1))
    kernel = images.get(ident, [])
    if not all(np.count_nonzero(k - np.diag(np.diag(k))) == 0 for k in kernel):
        raise ArithmeticError("kernel is not inside the torus")
    return len(elems), len(images), len(kernel)


def is_abelian(gens: Iterable[np.ndarray], p: int) -> bool:
    gens = list(gens)
    return all(
        np.array_equal(linalg.matmul(a, b, p), linalg.matmul(b, a, p)) for a in gens for b in gens
    )


def hyperoctahedral_order(n: int) -> int:
    return 2**n * factorial(n)
