"""Root systems, Weyl group actions on roots, and the subgroups used by the constructions.

Simple roots follow Bourbaki's labelling.  Roots are integer vectors in the
simple-root basis.  The inner product is normalised so that long roots have
squared length 2.

Root order (frozen, everything downstream indexes by it): positive roots
sorted by height, ties broken by *descending* lexicographic order of the
coordinate vector (so the simple roots come first as alpha_1, ..., alpha_r),
followed by the negatives in the same order.  Hence ``index(-beta) =
index(beta) + N`` with ``N`` the number of positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import permgroup

Root = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


def validate_type(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not isinstance(rank, (int, np.integer)) or rank < 1:
        raise ValueError(f"invalid rank {rank!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not ok:
        raise ValueError(f"{family}{rank} is not a valid Dynkin type")


def _eps_simple_roots(family: str, n: int) -> list[list[Fraction]] | None:
    """Simple roots in the orthonormal epsilon basis for B, C, D and F4."""
    def e(i: int, dim: int) -> list[Fraction]:
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    def sub(u, v):
        return [a - b for a, b in zip(u, v)]

    def add(u, v):
        return [a + b for a, b in zip(u, v)]

    if family in "BCD":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        if family == "B":
            roots.append(e(n - 1, n))
        elif family == "C":
            roots.append([2 * x for x in e(n - 1, n)])
        else:
            roots.append(add(e(n - 2, n), e(n - 1, n)))
        return roots
    if family == "F":
        half = Fraction(1, 2)
        return [
            sub(e(1, 4), e(2, 4)),
            sub(e(2, 4), e(3, 4)),
            e(3, 4),
            [half, -half, -half, -half],
        ]
    return None


def _gram(family: str, n: int) -> list[list[Fraction]]:
    """Gram matrix of the simple roots, long roots of squared length 2."""
    eps = _eps_simple_roots(family, n)
    if eps is not None:
        g = [[sum((a * b for a, b in zip(u, v)), Fraction(0)) for v in eps] for u in eps]
        top = max(g[i][i] for i in range(n))
        scale = Fraction(2) / top
        return [[x * scale for x in row] for row in g]
    g = [[Fraction(0)] * n for _ in range(n)]
    if family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
    elif family == "G":
        g[0][0], g[1][1] = Fraction(2, 3), Fraction(2)
        g[0][1] = g[1][0] = Fraction(-1)
        return g
    else:  # pragma: no cover - validated earlier
        raise ValueError(family)
    for i in range(n):
        g[i][i] = Fraction(2)
    for i, j in edges:
        g[i][j] = g[j][i] = Fraction(-1)
    return g


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: tuple[Root, ...]
    simple_indices: tuple[int, ...]
    length_class: tuple[str, ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    # -- basic data --------------------------------------------------------

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def num_positive(self) -> int:
        return len(self.roots) // 2

    @cached_property
    def _index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def index(self, root: Sequence[int]) -> int:
        return self._index[tuple(int(x) for x in root)]

    def find(self, root: Sequence[int]) -> int | None:
        return self._index.get(tuple(int(x) for x in root))

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(int(x) for x in v) in self._index

    def negative(self, i: int) -> int:
        n = self.num_positive
        return i + n if i < n else i - n

    def is_positive(self, i: int) -> bool:
        return i < self.num_positive

    def height(self, i: int) -> int:
        return sum(self.roots[i])

    @property
    def positive_indices(self) -> range:
        return range(self.num_positive)

    @property
    def highest_root(self) -> int:
        return self.num_positive - 1

    @property
    def coxeter_number(self) -> int:
        return self.height(self.highest_root) + 1

    def inner(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        return sum(
            (Fraction(a) * b * self.gram[i][j] for i, a in enumerate(u) if a for j, b in enumerate(v) if b),
            Fraction(0),
        )

    def norm2(self, i: int) -> Fraction:
        r = self.roots[i]
        return self.inner(r, r)

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """<u, v^vee> = 2 (u, v) / (v, v) for a root v."""
        val = 2 * self.inner(u, v) / self.inner(v, v)
        if val.denominator != 1:
            raise ValueError("pairing is not integral; second argument is not a root")
        return int(val)

    def add(self, i: int, j: int) -> int | None:
        """Index of roots[i] + roots[j] if it is a root."""
        return self.find(tuple(a + b for a, b in zip(self.roots[i], self.roots[j])))

    def coroot_coords(self, i: int) -> tuple[int, ...]:
        """Coroot of roots[i] in the basis of simple coroots."""
        r = self.roots[i]
        n2 = self.norm2(i)
        out = []
        for k, c in enumerate(r):
            val = c * self.gram[k][k] / n2
            if val.denominator != 1:
                raise ArithmeticError("non-integral coroot coordinate")
            out.append(int(val))
        return tuple(out)

    def string_p(self, alpha: int, beta: int) -> int:
        """Largest p with beta - p*alpha a root."""
        p = 0
        a, b = self.roots[alpha], self.roots[beta]
        while self.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    # -- reflections -------------------------------------------------------

    def reflect_vector(self, v: Sequence[int], i: int) -> Root:
        a = self.roots[i]
        c = self.pairing(v, a)
        return tuple(x - c * y for x, y in zip(v, a))

    def reflection(self, i: int) -> np.ndarray:
        """Permutation of root indices induced by the reflection in roots[i]."""
        return np.array([self.index(self.reflect_vector(r, i)) for r in self.roots], dtype=np.int64)

    @cached_property
    def simple_reflections(self) -> tuple[np.ndarray, ...]:
        return tuple(self.reflection(i) for i in self.simple_indices)

    def reflection_on_coroots(self, i: int) -> np.ndarray:
        """Matrix of s_{roots[i]} on the span of simple coroots (columns = images)."""
        a = self.coroot_coords(i)
        m = np.eye(self.rank, dtype=np.int64)
        for j in range(self.rank):
            # s(h_j) = h_j - alpha(h_j) alpha^vee, alpha(h_j) = <alpha, alpha_j^vee>
            c = self.pairing(self.roots[i], self.roots[self.simple_indices[j]])
            for k in range(self.rank):
                m[k, j] -= c * a[k]
        return m

    # -- epsilon realisation (classical types) -----------------------------

    @cached_property
    def _eps(self) -> list[list[Fraction]] | None:
        return _eps_simple_roots(self.family, self.rank)

    def eps_vector(self, i: int) -> tuple[Fraction, ...]:
        if self._eps is None:
            raise ValueError(f"no epsilon realisation for {self.label}")
        dim = len(self._eps[0])
        v = [Fraction(0)] * dim
        for c, s in zip(self.roots[i], self._eps):
            for k in range(dim):
                v[k] += c * s[k]
        return tuple(v)

    def find_eps(self, vec: Sequence) -> int:
        target = tuple(Fraction(x) for x in vec)
        for i in range(self.num_roots):
            if self.eps_vector(i) == target:
                return i
        raise KeyError(f"{vec} is not a root of {self.label}")


def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of type ``family``/``rank`` by reflection closure."""
    validate_type(family, rank)
    n = int(rank)
    gram = _gram(family, n)
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(n)) for i in range(n))

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = sum(r[j] * cartan[j][i] for j in range(n))
                s = tuple(r[k] - (c if k == i else 0) for k in range(n))
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    positives = sorted((r for r in found if sum(r) > 0), key=lambda r: (sum(r), tuple(-x for x in r)))
    if len(positives) * 2 != len(found):
        raise AssertionError("root closure is not symmetric")
    roots = tuple(positives) + tuple(tuple(-x for x in r) for r in positives)

    def norm2(r):
        return sum((Fraction(a) * b * gram[i][j] for i, a in enumerate(r) for j, b in enumerate(r)), Fraction(0))

    top = max(norm2(r) for r in roots)
    lengths = tuple("long" if norm2(r) == top else "short" for r in roots)
    return RootSystem(
        family=family,
        rank=n,
        roots=roots,
        simple_indices=tuple(range(n)),
        length_class=lengths,
        cartan_matrix=cartan,
        gram=tuple(tuple(row) for row in gram),
    )


def expected_root_count(family: str, n: int) -> int:
    validate_type(family, n)
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[family]


def simple_reflection(system: RootSystem, i: int) -> np.ndarray:
    if not 0 <= i < system.rank:
        raise IndexError(f"simple root index {i} out of range for {system.label}")
    return system.simple_reflections[i]


# ---------------------------------------------------------------------------
# Permutation groups on roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermGroupGens:
    """Generators of a group acting on root indices.

    ``words`` records, for each generator, the reflections (as root indices)
    whose product it is, read left to right; Weyl lifts are built from it.
    """

    degree: int
    generators: tuple[tuple[int, ...], ...]
    words: tuple[tuple[int, ...], ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if not permgroup.is_permutation(g, self.degree):
                raise ValueError("generator is not a permutation of the roots")

    def order(self) -> int:
        return permgroup.group_order(self.generators, self.degree)

    def preserves_length_classes(self, system: RootSystem) -> bool:
        lc = system.length_class
        return all(lc[g[i]] == lc[i] for g in self.generators for i in range(self.degree))


def _word_perm(system: RootSystem, word: Sequence[int]) -> tuple[int, ...]:
    g = permgroup.identity(system.num_roots)
    for r in word:
        g = permgroup.compose(g, system.reflection(r))
    return tuple(int(x) for x in g)


def gens_from_words(system: RootSystem, words: Sequence[Sequence[int]], labels: Sequence[str] = ()) -> PermGroupGens:
    words = tuple(tuple(w) for w in words)
    return PermGroupGens(
        degree=system.num_roots,
        generators=tuple(_word_perm(system, w) for w in words),
        words=words,
        labels=tuple(labels) if labels else tuple("word" for _ in words),
    )


def weyl_generators(system: RootSystem) -> PermGroupGens:
    return gens_from_words(
        system, [(i,) for i in system.simple_indices], [f"s{i + 1}" for i in range(system.rank)]
    )


def subgroup_orbits(system: RootSystem, gens: PermGroupGens) -> list[list[int]]:
    if gens.degree != system.num_roots:
        raise ValueError("generators act on a different number of points")
    return permgroup.orbits(gens.generators, gens.degree)


def _alternating_words(chain: Sequence[int]) -> list[tuple[int, int]]:
    """3-cycles s_i s_{i+1} along a chain of simple roots of an A-type subsystem."""
    return [(chain[k], chain[k + 1]) for k in range(len(chain) - 1)]


def sign_change_words(system: RootSystem) -> list[tuple[int, ...]]:
    """Words generating the sign-change subgroup D of W for B, C, D."""
    n = system.rank
    if system.family == "B":
        return [(system.find_eps([int(k == i) for k in range(n)]),) for i in range(n)]
    if system.family == "C":
        return [(system.find_eps([2 * int(k == i) for k in range(n)]),) for i in range(n)]
    if system.family == "D":
        out = []
        for i in range(n - 1):
            minus = [0] * n
            plus = [0] * n
            minus[i], minus[i + 1] = 1, -1
            plus[i], plus[i + 1] = 1, 1
            out.append((system.find_eps(minus), system.find_eps(plus)))
        return out
    raise ValueError(f"no sign-change subgroup for {system.label}")


@dataclass(frozen=True)
class A7Subsystem:
    """The A7 subsystem of E7 read off the extended Dynkin diagram."""

    subsystem: RootSystem
    embedding: tuple[int, ...]  # subsystem root index -> E7 root index
    chain: tuple[int, ...]  # E7 root indices of the A7 simple roots, in diagram order
    excluded_simple: int  # E7 index of the simple root not in the subsystem

    @property
    def root_indices(self) -> frozenset[int]:
        return frozenset(self.embedding)


def a7_subsystem_of_e7(system: RootSystem) -> A7Subsystem:
    """Remove alpha_2 from the extended E7 diagram; the chain -theta, a1, a3, ..., a7 is A7."""
    if system.label != "E7":
        raise ValueError(f"expected E7, got {system.label}")
    neg_theta = system.negative(system.highest_root)
    chain = (neg_theta, 0, 2, 3, 4, 5, 6)
    sub = build_root_system("A", 7)
    emb = []
    for r in sub.roots:
        v = [0] * 7
        for c, j in zip(r, chain):
            for k in range(7):
                v[k] += c * system.roots[j][k]
        emb.append(system.index(v))
    return A7Subsystem(subsystem=sub, embedding=tuple(emb), chain=chain, excluded_simple=1)


def alternating_generators(system: RootSystem) -> PermGroupGens:
    """Generators of the subgroup W' used by the constructions, as root permutations.

    A_n: the alternating group A_{n+1} inside S_{n+1}.
    B_n, C_n, D_n: A_n inside the S_n factor together with the sign group D.
    E7: A_8 inside W(A7) for the extended-diagram A7 subsystem.
    """
    fam = system.family
    if fam == "A":
        words = _alternating_words(list(system.simple_indices))
        labels = [f"3cycle{k + 1}" for k in range(len(words))]
    elif fam in "BCD":
        chain = list(system.simple_indices[: system.rank - 1])
        even = _alternating_words(chain)
        signs = sign_change_words(system)
        words = even + signs
        labels = [f"3cycle{k + 1}" for k in range(len(even))] + [f"sign{k + 1}" for k in range(len(signs))]
    elif system.label == "E7":
        sub = a7_subsystem_of_e7(system)
        words = _alternating_words(list(sub.chain))
        labels = [f"3cycle{k + 1}" for k in range(len(words))]
    else:
        raise ValueError(f"alternating generators are not defined for {system.label}")
    return gens_from_words(system, words, labels)


@dataclass(frozen=True)
class RhoCoroot:
    integral: bool
    coefficients: tuple[Fraction, ...]


def rho_coroot_integrality(system: RootSystem) -> RhoCoroot:
    """rho^vee = half the sum of positive coroots, in the simple-coroot basis."""
    total = [0] * system.rank
    for i in system.positive_indices:
        for k, c in enumerate(system.coroot_coords(i)):
            total[k] += c
    coeffs = tuple(Fraction(t, 2) for t in total)
    return RhoCoroot(integral=all(c.denominator == 1 for c in coeffs), coefficients=coeffs)


def rho_integral_expected(family: str, n: int) -> bool:
    """Closed-form list of types for which rho^vee lies in the coroot lattice."""
    validate_type(family, n)
    if family == "A":
        return n % 2 == 0
    if family == "B":
        return n % 4 in (0, 3)
    if family == "C":
        return False
    if family == "D":
        return n % 4 in (0, 1)
    if family == "E":
        return n in (6, 8)
    return True  # F4, G2
