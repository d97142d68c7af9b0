"""Decomposition of the adjoint module under a set of automorphisms over F_l.

The decomposition first splits the algebra into joint eigenspaces ("weight
spaces") of the torus generators.  Non-torus generators induce a directed
graph on weight spaces; the strongly connected components give candidate
summands.  Each candidate is then certified:

* weight-transitive: one-dimensional weight lines with distinct weights,
  permuted transitively.  Every invariant subspace is a sum of weight lines,
  so transitivity forces irreducibility.
* Norton: for a random group-algebra element A and an eigenvalue lambda with
  nullity(A - lambda) = 1, spin v in ker(A - lambda) under the generators and
  w in ker(A^T - lambda) under the transposed generators.  The module is
  irreducible iff both spins are everything.

A failed Norton test produces a proper submodule which is then split off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .chevalley import ChevalleyAlgebra
from .lie import AlgebraAutomorphism, AlgebraElement, LieAlgebra
from .rootsys import alternating_generators, sign_change_words, a7_subsystem_of_e7

RETRY_BUDGET = 64


class DecompositionError(RuntimeError):
    """Certification failed within the retry budget."""


@dataclass(frozen=True, eq=False)
class ActionSet:
    algebra: LieAlgebra
    generators: tuple[AlgebraAutomorphism, ...]
    labels: tuple[str, ...]
    test_elements: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an action needs at least one generator")
        if any(g.algebra is not self.algebra for g in self.generators):
            raise ValueError("generators act on different algebras")
        if len(self.labels) != len(self.generators):
            raise ValueError("one label per generator is required")

    @property
    def modulus(self) -> int:
        return self.algebra.modulus

    @property
    def torus(self) -> list[AlgebraAutomorphism]:
        return [g for g in self.generators if g.kind == "torus"]

    @property
    def others(self) -> list[AlgebraAutomorphism]:
        return [g for g in self.generators if g.kind != "torus"]


@dataclass(frozen=True, eq=False)
class Submodule:
    """Subspace in reduced row-echelon form (rows are basis vectors)."""

    algebra: LieAlgebra
    basis: np.ndarray
    pivots: tuple[int, ...]
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return other.algebra is self.algebra and np.array_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.basis.tobytes()))

    def contains(self, v: np.ndarray) -> bool:
        return linalg.contains(self.basis, self.pivots, v, self.algebra.modulus)

    def is_invariant(self, g: AlgebraAutomorphism) -> bool:
        return linalg.is_invariant(g.matrix, self.basis, self.pivots, self.algebra.modulus)

    def restricted(self, g: AlgebraAutomorphism) -> np.ndarray:
        return linalg.restrict(g.matrix, self.basis, self.pivots, self.algebra.modulus)

    def with_label(self, label: str) -> "Submodule":
        return Submodule(self.algebra, self.basis, self.pivots, label)


def submodule_from_rows(algebra: LieAlgebra, rows, label: str = "") -> Submodule:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return Submodule(algebra, np.zeros((0, algebra.dim), dtype=np.int64), (), label)
    basis, piv = linalg.rref(rows, algebra.modulus)
    return Submodule(algebra, basis, tuple(piv), label)


def coordinate_submodule(algebra: LieAlgebra, indices: Sequence[int], label: str = "") -> Submodule:
    rows = np.zeros((len(indices), algebra.dim), dtype=np.int64)
    for r, i in enumerate(sorted(indices)):
        rows[r, i] = 1
    return submodule_from_rows(algebra, rows, label)


# ---------------------------------------------------------------------------
# Spinning
# ---------------------------------------------------------------------------


class _Echelon:
    """Incrementally maintained reduced echelon basis."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    def add(self, v: np.ndarray) -> np.ndarray | None:
        p = self.p
        w = linalg.reduce_vector(v, self.rows, self.pivots, p)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return None
        c = int(nz[0])
        w = w * linalg.inv_mod(int(w[c]), p) % p
        if self.rows.shape[0]:
            col = self.rows[:, c].copy()
            self.rows = np.mod(self.rows - np.outer(col, w) % p, p)
        pos = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, pos, w, axis=0)
        self.pivots.insert(pos, c)
        return w


def _spin_matrices(vectors: Sequence[np.ndarray], mats: Sequence[np.ndarray], p: int, n: int) -> _Echelon:
    ech = _Echelon(n, p)
    queue = []
    for v in vectors:
        w = ech.add(np.asarray(v, dtype=np.int64))
        if w is not None:
            queue.append(w)
    while queue and len(ech.pivots) < n:
        v = queue.pop()
        for m in mats:
            w = ech.add(linalg.matmul(m, v, p))
            if w is not None:
                queue.append(w)
    return ech


def spin(v, action: ActionSet) -> Submodule:
    """Smallest subspace containing v (vector or list of vectors) closed under the action."""
    alg = action.algebra
    if isinstance(v, AlgebraElement):
        vectors = [v.coords]
    elif isinstance(v, np.ndarray) and v.ndim == 1:
        vectors = [v]
    else:
        vectors = list(v)
    vectors = [np.mod(np.asarray(x, dtype=np.int64), alg.modulus) for x in vectors]
    if not any(np.any(x) for x in vectors):
        raise ValueError("cannot spin the zero vector")
    ech = _spin_matrices(vectors, [g.matrix for g in action.generators], alg.modulus, alg.dim)
    return Submodule(alg, ech.rows, tuple(ech.pivots))


# ---------------------------------------------------------------------------
# Weight spaces
# ---------------------------------------------------------------------------


def _is_diagonal(m: np.ndarray) -> bool:
    return not np.any(m - np.diag(np.diag(m)))


def eigenvalues(m: np.ndarray, p: int) -> dict[int, int]:
    """Eigenvalues in F_p (with geometric multiplicity) of a square matrix, by search."""
    n = m.shape[0]
    out: dict[int, int] = {}
    found = 0
    eye = np.eye(n, dtype=np.int64)
    for lam in range(p):
        k = linalg.nullity(np.mod(m - lam * eye, p), p)
        if k:
            out[lam] = k
            found += k
            if found == n:
                break
    return out


def joint_eigenspaces(ops: Sequence[np.ndarray], p: int, n: int) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """Joint eigenspaces (label, echelon basis rows) of commuting semisimple operators.

    Raises ``ValueError`` if the operators do not split over F_p.
    """
    if all(_is_diagonal(m) for m in ops):
        groups: dict[tuple[int, ...], list[int]] = {}
        for i in range(n):
            groups.setdefault(tuple(int(m[i, i]) for m in ops), []).append(i)
        out = []
        for key in sorted(groups, key=lambda k: groups[k][0]):
            rows = np.zeros((len(groups[key]), n), dtype=np.int64)
            for r, i in enumerate(groups[key]):
                rows[r, i] = 1
            out.append((key, rows))
        return out
    spaces: list[tuple[tuple[int, ...], np.ndarray]] = [((), np.eye(n, dtype=np.int64))]
    for m in ops:
        refined = []
        for key, basis in spaces:
            piv = linalg.rref(basis, p)[1]
            r = linalg.restrict(m, basis, piv, p)
            total = 0
            for lam, _ in eigenvalues(r, p).items():
                ker = linalg.nullspace(np.mod(r - lam * np.eye(r.shape[0], dtype=np.int64), p), p)
                vecs = linalg.matmul(ker, basis, p)
                refined.append((key + (lam,), linalg.rref(vecs, p)[0]))
                total += ker.shape[0]
            if total != basis.shape[0]:
                raise ValueError("operators are not diagonalizable over F_p")
        spaces = refined
    return spaces


def eigen_multiset(m: np.ndarray, p: int) -> tuple[tuple[int, int], ...]:
    """Sorted (eigenvalue, multiplicity) pairs; eigenvalues outside F_p are listed under -1."""
    ev = eigenvalues(m, p)
    rest = m.shape[0] - sum(ev.values())
    items = sorted(ev.items())
    if rest:
        items.append((-1, rest))
    return tuple(items)


# ---------------------------------------------------------------------------
# Irreducibility certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    irreducible: bool
    method: str  # weight-transitive | norton | trivial | split
    detail: str = ""
    attempts: int = 0
    witness: Submodule | None = None


def _weight_lines(m: Submodule, action: ActionSet):
    """Return weight labels of a submodule spanned by single basis vectors, else None."""
    tor = action.torus
    if not tor or not all(_is_diagonal(g.matrix) for g in tor):
        return None
    rows = m.basis
    if np.any(np.count_nonzero(rows, axis=1) != 1):
        return None
    idx = [int(i) for i in m.pivots]
    weights = [tuple(int(g.matrix[i, i]) for g in tor) for i in idx]
    if len(set(weights)) != len(weights):
        return None
    return idx


def _strongly_connected(adj: dict[int, set[int]], nodes: Sequence[int]) -> bool:
    if not nodes:
        return True

    def reach(start, edges):
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in edges.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    rev: dict[int, set[int]] = {}
    for x, ys in adj.items():
        for y in ys:
            rev.setdefault(y, set()).add(x)
    full = set(nodes)
    return reach(nodes[0], adj) >= full and reach(nodes[0], rev) >= full


def _line_graph(idx: Sequence[int], action: ActionSet) -> dict[int, set[int]]:
    inside = set(idx)
    adj: dict[int, set[int]] = {i: set() for i in idx}
    for g in action.others:
        for i in idx:
            col = g.matrix[:, i]
            for j in np.nonzero(col)[0]:
                j = int(j)
                if j in inside and j != i:
                    adj[i].add(j)
    return adj


def _norton(m: Submodule, action: ActionSet, rng: np.random.Generator, budget: int) -> Certificate:
    p = action.modulus
    k = m.dim
    mats = [m.restricted(g) for g in action.generators]
    eye = np.eye(k, dtype=np.int64)
    for attempt in range(1, budget + 1):
        # random element of the group algebra: combination of short random words
        a = np.zeros((k, k), dtype=np.int64)
        for _ in range(3):
            word = eye
            for _ in range(int(rng.integers(1, 4))):
                word = linalg.matmul(word, mats[int(rng.integers(len(mats)))], p)
            a = np.mod(a + int(rng.integers(1, p)) * word, p)
        for lam in rng.permutation(p):
            shifted = np.mod(a - int(lam) * eye, p)
            ker = linalg.nullspace(shifted, p)
            if ker.shape[0] != 1:
                continue
            s = _spin_matrices([ker[0]], mats, p, k)
            if len(s.pivots) < k:
                sub = linalg.matmul(s.rows, m.basis, p)
                return Certificate(False, "norton", f"spin(v) has dim {len(s.pivots)} < {k}", attempt,
                                   submodule_from_rows(m.algebra, sub))
            kerT = linalg.nullspace(shifted.T, p)
            sd = _spin_matrices([kerT[0]], [x.T for x in mats], p, k)
            if len(sd.pivots) < k:
                # annihilator of the dual submodule is a proper submodule
                ann = linalg.nullspace(sd.rows, p)
                sub = linalg.matmul(ann, m.basis, p)
                return Certificate(False, "norton", f"dual spin has dim {len(sd.pivots)} < {k}", attempt,
                                   submodule_from_rows(m.algebra, sub))
            return Certificate(True, "norton", f"lambda={int(lam)}", attempt)
    raise DecompositionError(f"Norton test inconclusive after {budget} random elements")


def check_irreducible(m: Submodule, action: ActionSet, seed: int = 0, budget: int = RETRY_BUDGET) -> Certificate:
    if m.dim == 0:
        raise ValueError("zero module")
    for g in action.generators:
        if not m.is_invariant(g):
            raise ValueError(f"submodule is not invariant under {g.label}")
    if m.dim == 1:
        return Certificate(True, "trivial", "one-dimensional")
    idx = _weight_lines(m, action)
    if idx is not None:
        adj = _line_graph(idx, action)
        if _strongly_connected(adj, idx):
            return Certificate(True, "weight-transitive", f"{len(idx)} weight lines in one orbit")
        # distinct weights but not transitive: any reachable closure is a proper submodule
        start = idx[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return Certificate(False, "weight-transitive", "weight lines are not permuted transitively", 0,
                           coordinate_submodule(m.algebra, sorted(seen)))
    return _norton(m, action, np.random.default_rng(seed), budget)


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------


def _sccs(nodes: Sequence[int], adj: dict[int, set[int]]) -> list[list[int]]:
    """Tarjan's algorithm (iterative)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(adj.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(sorted(adj.get(w, ())))))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def _weight_space_candidates(action: ActionSet) -> list[Submodule]:
    alg = action.algebra
    p, n = alg.modulus, alg.dim
    tor = action.torus
    if not tor:
        return [submodule_from_rows(alg, np.eye(n, dtype=np.int64))]
    spaces = joint_eigenspaces([g.matrix for g in tor], p, n)
    bases = [rows for _, rows in spaces]
    change = np.vstack(bases)  # rows: weight basis
    inv = linalg.inverse(change.T, p)  # coordinates of a vector in the weight basis
    offsets = np.cumsum([0] + [b.shape[0] for b in bases])
    adj: dict[int, set[int]] = {i: set() for i in range(len(bases))}
    for g in action.others:
        for i, b in enumerate(bases):
            coords = linalg.matmul(inv, linalg.matmul(g.matrix, b.T, p), p)
            for j in range(len(bases)):
                if j != i and np.any(coords[offsets[j]:offsets[j + 1]]):
                    adj[i].add(j)
    comps = _sccs(list(range(len(bases))), adj)
    out = []
    for comp in comps:
        rows = np.vstack([bases[i] for i in comp])
        out.append(submodule_from_rows(alg, rows))
    if not all(all(m.is_invariant(g) for g in action.generators) for m in out):
        # the component graph is not a disjoint union; fall back to the whole space
        return [submodule_from_rows(alg, np.eye(n, dtype=np.int64))]
    return out


def _complement_split(m: Submodule, sub: Submodule, action: ActionSet, rng) -> list[Submodule]:
    """Split m = sub + complement, finding an invariant complement by dual spinning."""
    p = action.modulus
    k = m.dim
    mats = [m.restricted(g) for g in action.generators]
    sub_coords = linalg.rref(sub.basis[:, list(m.pivots)], p)[0]
    for _ in range(RETRY_BUDGET):
        # invariant complements are annihilators of submodules of the dual complementary to ann(sub)
        w = rng.integers(0, p, size=k)
        if not np.any(w):
            continue
        dual = _spin_matrices([w], [x.T for x in mats], p, k)
        if len(dual.pivots) != sub.dim:
            continue
        ann = linalg.nullspace(dual.rows, p)
        if ann.shape[0] + sub.dim != k:
            continue
        if linalg.rank(np.vstack([sub_coords, ann]), p) != k:
            continue
        comp = submodule_from_rows(m.algebra, linalg.matmul(ann, m.basis, p))
        return [sub, comp]
    raise DecompositionError("no invariant complement found; the module may not be semisimple")


def decompose(action: ActionSet, seed: int = 0) -> list[Submodule]:
    """Irreducible invariant summands of the algebra, canonically ordered."""
    rng = np.random.default_rng(seed)
    work = _weight_space_candidates(action)
    done: list[tuple[Submodule, Certificate]] = []
    guard = 0
    while work:
        guard += 1
        if guard > 10 * action.algebra.dim + RETRY_BUDGET:
            raise DecompositionError("decomposition did not terminate")
        m = work.pop()
        cert = check_irreducible(m, action, seed=int(rng.integers(1 << 62)))
        if cert.irreducible:
            done.append((m, cert))
            continue
        work.extend(_complement_split(m, cert.witness, action, rng))
    mods = [m for m, _ in done]
    total = linalg.rank(np.vstack([m.basis for m in mods]), action.modulus)
    if total != action.algebra.dim or sum(m.dim for m in mods) != action.algebra.dim:
        raise DecompositionError("summands are not a direct decomposition of the algebra")
    mods.sort(key=lambda m: (m.dim, tuple(m.pivots)))
    return mods


# ---------------------------------------------------------------------------
# Standard actions for the constructions
# ---------------------------------------------------------------------------


def torus_generators(alg: ChevalleyAlgebra) -> list[AlgebraAutomorphism]:
    """Ad of alpha_j^vee(g), g a generator of F_l^x; together they generate T(F_l)."""
    p = alg.modulus
    g = linalg.primitive_root(p)
    cartan = alg.root_system.cartan_matrix
    out = []
    for j in range(alg.rank):
        vals = tuple(pow(g, cartan[i][j], p) for i in range(alg.rank))
        a = alg.ad_torus(vals)
        out.append(AlgebraAutomorphism(alg, a.matrix, label=f"coroot{j + 1}(g)", kind="torus"))
    return out


CONSTRUCTIONS = ("full", "weyl")


def construction_words(alg: ChevalleyAlgebra, construction: str) -> tuple[list[tuple[int, ...]], list[str]]:
    s = alg.root_system
    if construction == "full":
        return [(i,) for i in s.simple_indices], [f"s{i + 1}" for i in s.simple_indices]
    if construction != "weyl":
        raise ValueError(f"unknown construction {construction!r}")
    if s.family == "C":
        # the symplectic construction realises all of N
        return construction_words(alg, "full")
    gens = alternating_generators(s)
    return [tuple(w) for w in gens.words], list(gens.labels)


def _test_sigma_word(alg: ChevalleyAlgebra) -> tuple[int, ...] | None:
    """Weyl word of an order-2 element of the alternating part (two orthogonal reflections)."""
    s = alg.root_system
    if s.family == "C":
        return (0,)
    if s.family == "A" and s.rank >= 3:
        return (0, 2)
    if s.family in "BD" and s.rank >= 4:
        return (0, 2)
    if s.label == "E7":
        chain = a7_subsystem_of_e7(s).chain
        return (chain[0], chain[2])
    if s.family in "BD":
        return sign_change_words(s)[0]
    return None


def standard_action(alg: ChevalleyAlgebra, construction: str = "weyl") -> ActionSet:
    """Torus generators together with Weyl lifts of the construction's W' generators."""
    if alg.exact:
        raise ValueError("actions are defined over F_l")
    words, labels = construction_words(alg, construction)
    gens = torus_generators(alg)
    lab = [g.label for g in gens]
    for w, name in zip(words, labels):
        gens.append(alg.weyl_word_lift(w))
        lab.append(name)
    tests = {}
    a = linalg.primitive_root(alg.modulus)
    tests["tau"] = alg.ad_torus(tuple([a] * alg.rank))
    sw = _test_sigma_word(alg)
    if sw is not None:
        tests["sigma"] = alg.weyl_word_lift(sw)
    return ActionSet(alg, tuple(gens), tuple(lab), tests)


def classify_summand(alg: ChevalleyAlgebra, m: Submodule) -> str:
    """Name a summand spanned by the torus or by root vectors (t, g_l, g_s, g_Phi or an orbit)."""
    r = alg.rank
    piv = list(m.pivots)
    if piv == list(range(r)) and m.dim == r:
        return "t"
    if all(i >= r for i in piv) and np.all(np.count_nonzero(m.basis, axis=1) == 1):
        classes = alg.root_system.length_class
        lengths = {classes[i - r] for i in piv}
        if m.dim == alg.root_system.num_roots:
            return "g_Phi"
        if len(lengths) == 1:
            (length,) = lengths
            if m.dim == classes.count(length):
                return "g_l" if length == "long" else "g_s"
        return f"g_orbit{m.dim}"
    return f"module{m.dim}"


# ---------------------------------------------------------------------------
# Twist distinguisher
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistVerdict:
    q: int
    names: tuple[str, ...]  # M_1..M_k then M_1(q)..M_k(q)
    signatures: tuple[tuple, ...]
    differ: tuple[tuple[bool, ...], ...]
    distinguished: bool

    @property
    def verdict(self) -> str:
        return "distinguished" if self.distinguished else "not distinguished"


def twist_distinguish(summands: Sequence[Submodule], action: ActionSet, q: int | None = None) -> TwistVerdict:
    """Compare eigenvalue multisets of the test elements on each summand and on its q-twist."""
    p = action.modulus
    if q is None:
        q = linalg.primitive_root(p)
    q = int(q) % p
    if q == 0:
        raise ValueError("the twist scalar must be nonzero")
    tests = [action.test_elements[k] for k in ("sigma", "tau") if k in action.test_elements]
    if not tests:
        raise ValueError("the action carries no designated test elements")
    names, sigs = [], []
    for twist in (1, q):
        for i, m in enumerate(summands):
            sig = []
            for g in tests:
                r = np.mod(m.restricted(g) * twist, p)
                sig.append(eigen_multiset(r, p))
            names.append((m.label or f"M{i + 1}") + ("" if twist == 1 else "(q)"))
            sigs.append(tuple(sig))
    n = len(sigs)
    differ = tuple(tuple(i == j or sigs[i] != sigs[j] for j in range(n)) for i in range(n))
    ok = all(differ[i][j] for i in range(n) for j in range(n))
    return TwistVerdict(q, tuple(names), tuple(sigs), differ, ok)
