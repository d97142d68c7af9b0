"""Permutation groups on {0, ..., n-1}: orbits and Schreier-Sims stabilizer chains.

A permutation ``g`` is a sequence with ``g[i]`` the image of ``i``.  Products
are read left to right: ``compose(g, h)`` applies ``g`` first, then ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np


def as_perm(g: Sequence[int]) -> np.ndarray:
    return np.asarray(g, dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def compose(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Apply ``g`` then ``h``."""
    return h[g]


def inverse(g: np.ndarray) -> np.ndarray:
    inv = np.empty_like(g)
    inv[g] = np.arange(len(g), dtype=g.dtype)
    return inv


def is_identity(g: np.ndarray) -> bool:
    return bool(np.all(g == np.arange(len(g))))


def is_permutation(g: Sequence[int], n: int) -> bool:
    return len(g) == n and sorted(int(x) for x in g) == list(range(n))


def perm_order(g: np.ndarray) -> int:
    from math import lcm

    seen = np.zeros(len(g), dtype=bool)
    out = 1
    for i in range(len(g)):
        if seen[i]:
            continue
        j, k = i, 0
        while not seen[j]:
            seen[j] = True
            j = int(g[j])
            k += 1
        out = lcm(out, k)
    return out


def orbits(gens: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Orbit partition by closure, each orbit sorted, orbits ordered by least element."""
    gens = [as_perm(g) for g in gens]
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            k += 1
            for g in gens:
                y = int(g[x])
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out


def _transversal(point: int, gens: list[np.ndarray], n: int) -> dict[int, np.ndarray]:
    trans = {point: identity(n)}
    queue = [point]
    k = 0
    while k < len(queue):
        x = queue[k]
        k += 1
        for g in gens:
            y = int(g[x])
            if y not in trans:
                trans[y] = compose(trans[x], g)
                queue.append(y)
    return trans


@dataclass
class StabilizerChain:
    """Base, strong generators and transversals produced by Schreier-Sims."""

    degree: int
    base: list[int] = field(default_factory=list)
    level_gens: list[list[np.ndarray]] = field(default_factory=list)
    transversals: list[dict[int, np.ndarray]] = field(default_factory=list)

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.transversals]

    def order(self) -> int:
        return prod(self.orbit_sizes)

    def stabilizer_order(self, depth: int) -> int:
        """Order of the pointwise stabilizer of the first ``depth`` base points."""
        return prod(self.orbit_sizes[depth:])

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for lvl in range(start, len(self.base)):
            beta = int(g[self.base[lvl]])
            u = self.transversals[lvl].get(beta)
            if u is None:
                return g, lvl
            g = compose(g, inverse(u))
        return g, len(self.base)

    def contains(self, g: Sequence[int]) -> bool:
        h, _ = self.sift(as_perm(g))
        return is_identity(h)


def schreier_sims(gens: Iterable[Sequence[int]], n: int, base_prefix: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    ``base_prefix`` fixes the first base points, so that e.g. the stabilizer of
    a point ``x`` is the group at level 1 when ``base_prefix = [x]``.
    """
    strong = [as_perm(g) for g in gens if not is_identity(as_perm(g))]
    chain = StabilizerChain(degree=n, base=list(base_prefix))

    def extend_base(g: np.ndarray) -> None:
        if all(int(g[b]) == b for b in chain.base):
            moved = int(np.nonzero(g != np.arange(n))[0][0])
            chain.base.append(moved)

    for g in strong:
        extend_base(g)

    def fixes_prefix(g: np.ndarray, k: int) -> bool:
        return all(int(g[b]) == b for b in chain.base[:k])

    chain.level_gens = [[g for g in strong if fixes_prefix(g, i)] for i in range(len(chain.base))]
    chain.transversals = [_transversal(chain.base[i], chain.level_gens[i], n) for i in range(len(chain.base))]

    i = len(chain.base) - 1
    while i >= 0:
        restart = None
        trans = chain.transversals[i]
        for beta in list(trans):
            u_beta = trans[beta]
            for s in chain.level_gens[i]:
                image = int(s[beta])
                h = compose(compose(u_beta, s), inverse(trans[image]))
                if is_identity(h):
                    continue
                h, j = chain.sift(h, i + 1)
                if is_identity(h):
                    continue
                if j == len(chain.base):
                    moved = int(np.nonzero(h != np.arange(n))[0][0])
                    chain.base.append(moved)
                    chain.level_gens.append([])
                    chain.transversals.append({moved: identity(n)})
                for lvl in range(i + 1, j + 1):
                    chain.level_gens[lvl].append(h)
                    chain.transversals[lvl] = _transversal(chain.base[lvl], chain.level_gens[lvl], n)
                restart = j
                break
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    return chain


def group_order(gens: Iterable[Sequence[int]], n: int) -> int:
    return schreier_sims(gens, n).order()


def point_stabilizer_order(gens: Iterable[Sequence[int]], n: int, point: int) -> int:
    chain = schreier_sims(gens, n, base_prefix=[point])
    return chain.stabilizer_order(1)
