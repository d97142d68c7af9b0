"""Dimension bookkeeping for Wiles' formula and the auxiliary-prime descent.

Only dimensions are modelled.  A ledger lists local conditions with
``dim L_v`` and ``h0(Gamma_v, M)``; the right-hand side of Wiles' formula is
``h0(M) - h0(M^dual) + sum_v (dim L_v - h0_v)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .modrep import Submodule, submodule_from_rows
from .rootsys import build_root_system, validate_type
from .transporter import PrimedDecomposition, component_flags

PLACE_KINDS = ("real", "ell", "minimal", "steinberg", "fixed_frobenius", "ramakrishna", "unramified")
CONSTRUCTIONS = ("weyl", "principal")


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class LocalCondition:
    place_kind: str
    dim_L: int
    h0: int
    label: str = ""

    def __post_init__(self):
        if self.place_kind not in PLACE_KINDS:
            raise LedgerError(f"unknown place kind {self.place_kind!r}")
        if self.dim_L < 0 or self.h0 < 0:
            raise LedgerError("dimensions must be nonnegative")
        if self.place_kind in ("minimal", "steinberg", "ramakrishna", "unramified") and self.dim_L != self.h0:
            raise LedgerError(f"{self.place_kind} condition needs dim L = h0")
        if self.place_kind in ("fixed_frobenius", "real") and self.dim_L != 0:
            raise LedgerError(f"{self.place_kind} condition has a zero tangent space")

    @property
    def slack(self) -> int:
        return self.dim_L - self.h0


@dataclass(frozen=True)
class WilesLedger:
    conditions: tuple[LocalCondition, ...]
    module_dim: int
    h0_global: int = 0
    h0_global_dual: int = 0
    h2_ell_zero: bool = True  # consumed as an axiom for the adjoint modules considered here
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        for c in self.conditions:
            if c.place_kind == "ell":
                if not self.h2_ell_zero:
                    raise LedgerError("the place l needs h2 = 0 for dim L = h0 + dim M")
                if c.dim_L != c.h0 + self.module_dim:
                    raise LedgerError("no condition at l: dim L must equal h0 + dim M")

    def __add__(self, other: "WilesLedger") -> "WilesLedger":
        return WilesLedger(
            self.conditions + other.conditions,
            self.module_dim,
            self.h0_global + other.h0_global,
            self.h0_global_dual + other.h0_global_dual,
            self.h2_ell_zero and other.h2_ell_zero,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["conditions"] = [asdict(c) for c in self.conditions]
        d["wiles_rhs"] = wiles_rhs(self)
        return d


def wiles_rhs(ledger: WilesLedger) -> int:
    return ledger.h0_global - ledger.h0_global_dual + sum(c.slack for c in ledger.conditions)


def unramified_local_h(phi: np.ndarray, q: int, modulus: int) -> tuple[int, int, int]:
    """(h0, h1, h2) of an unramified module with Frobenius phi and cyclotomic value q."""
    p = modulus
    phi = linalg.as_mod(phi, p)
    n = phi.shape[0]
    if n == 0:
        return (0, 0, 0)
    if q % p == 0:
        raise LedgerError("q must be nonzero")
    if linalg.rank(phi, p) != n:
        raise LedgerError("Frobenius must act invertibly")
    eye = np.eye(n, dtype=np.int64)
    h0 = linalg.nullity(np.mod(phi - eye, p), p)
    h2 = linalg.nullity(np.mod(phi - (q % p) * eye, p), p)
    return (h0, h0 + h2, h2)


def unramified_h1_cocycles(phi: np.ndarray, q: int, modulus: int) -> int:
    """h1 from cocycles on the tame presentation <F, tau | F tau F^-1 = tau^q>.

    With tau acting trivially a cocycle is a pair (f(F), f(tau)) subject to
    (phi - q) f(tau) = 0; coboundaries are ((phi - 1) m, 0).
    """
    p = modulus
    phi = linalg.as_mod(phi, p)
    n = phi.shape[0]
    if n == 0:
        return 0
    eye = np.eye(n, dtype=np.int64)
    relation = np.hstack([np.zeros((n, n), dtype=np.int64), np.mod(phi - (q % p) * eye, p)])
    cocycles = 2 * n - linalg.rank(relation, p)
    coboundaries = linalg.rank(np.mod(phi - eye, p), p)
    return cocycles - coboundaries


def _dim_g(family: str, rank: int) -> int:
    s = build_root_system(family, rank)
    return s.rank + s.num_roots


def standard_ledger(
    family: str, rank: int, construction: str, h0_real: int, module_dim: int | None = None
) -> WilesLedger:
    """Selmer system of the recipe: nothing at l, minimal elsewhere, a zero-tangent place
    with regular semisimple Frobenius (h0 = rank), and Steinberg in the principal case."""
    validate_type(family, rank)
    if construction not in CONSTRUCTIONS:
        raise LedgerError(f"unsupported construction {construction!r}")
    dim = module_dim if module_dim is not None else _dim_g(family, rank)
    conds = [
        LocalCondition("real", 0, h0_real, "infinity"),
        LocalCondition("ell", dim, 0, "l"),
        LocalCondition("minimal", 0, 0, "q"),
        LocalCondition("fixed_frobenius", 0, rank, "aux"),
    ]
    if construction == "principal":
        conds.append(LocalCondition("steinberg", 0, 0, "p"))
    return WilesLedger(tuple(conds), dim, label=f"{family}{rank}/{construction}")


def weyl_slack_closed_form(family: str, rank: int) -> int:
    """n-1 (SL_n), 3n-2 (Spin_{2n+1}), 3n-4 (Sp_{2n}, Spin_{2n}), 7 (E7)."""
    if family == "A":
        return rank  # SL_n with n = rank + 1
    if family == "B":
        return 3 * rank - 2
    if family in "CD":
        return 3 * rank - 4
    if (family, rank) == ("E", 7):
        return 7
    raise LedgerError(f"no Weyl-construction slack for {family}{rank}")


PRINCIPAL_RHS = {("A", 2): 2, ("B", 3): 9, ("E", 6): 34}


def torus_fixed_dim(family: str, rank: int, word: Sequence[int]) -> int:
    """Fixed dimension on t of the Weyl element given by a word of root indices."""
    s = build_root_system(family, rank)
    m = np.eye(rank, dtype=np.int64)
    for r in word:
        m = s.reflection_on_coroots(r) @ m
    return rank - int(np.linalg.matrix_rank((m - np.eye(rank, dtype=np.int64)).astype(float)))


def t_ledger_check(family: str, rank: int, h0_real_t: int) -> int:
    """Left minus right side of the t-module inequality: -h0(Gamma_R, t)."""
    validate_type(family, rank)
    if not 0 <= h0_real_t <= rank:
        raise LedgerError("h0 on t must lie between 0 and the rank")
    slack = -h0_real_t
    assert slack <= 0
    return slack


@dataclass(frozen=True)
class RamakrishnaStep:
    eq2_delta: int
    eq1_strict_possible: bool
    h1_w_cap_t: int
    h0_t: int


def _restricted(op: np.ndarray, sub: Submodule) -> np.ndarray:
    return linalg.restrict(op, sub.basis, list(sub.pivots), sub.algebra.modulus)


def ramakrishna_step_invariants(dec: PrimedDecomposition, t: Submodule, alpha: int, q: int) -> RamakrishnaStep:
    """Both Wiles-formula invocations at an auxiliary prime with Frobenius Sigma."""
    p = dec.algebra.modulus
    if dec.roots[alpha].sigma_value != q % p:
        raise LedgerError(f"q = {q} differs from alpha'(Sigma) = {dec.roots[alpha].sigma_value}")
    phi = dec.sigma.automorphism.matrix
    w = dec.W(alpha)
    inter = linalg.intersect(w.basis, t.basis, p) if w.dim and t.dim else np.zeros((0, dec.algebra.dim), dtype=np.int64)
    if inter.shape[0]:
        wt = submodule_from_rows(dec.algebra, inter)
        h1 = unramified_local_h(_restricted(phi, wt), q, p)[1]
    else:
        h1 = 0
    h0_t = unramified_local_h(_restricted(phi, t), q, p)[0]
    strict = component_flags(t, dec, alpha).has_g_minus_component
    return RamakrishnaStep(h1 - h0_t, strict, h1, h0_t)


def dual_selmer_descent_sim(sel_dim: int, dual_dim: int) -> list[tuple[int, int]]:
    """States (sel, dual) after each auxiliary prime, starting from the input."""
    if sel_dim < 0 or dual_dim < 0:
        raise LedgerError("dimensions must be nonnegative")
    if sel_dim > dual_dim:
        raise LedgerError("need sel_dim <= dual_dim")
    states = [(sel_dim, dual_dim)]
    s, d = sel_dim, dual_dim
    for _ in range(dual_dim):
        s, d = max(s - 1, 0), max(d - 1, 0)
        states.append((s, d))
    return states


def mu_l2_obstruction(ab_order_bound: int, l: int) -> bool:
    """True when an abelian quotient of the given order cannot contain (Z/l^2)^x."""
    if l < 3 or not linalg.is_prime(l):
        raise LedgerError("l must be a prime >= 3")
    return ab_order_bound < l * (l - 1)


@dataclass(frozen=True)
class SlackRow:
    family: str
    rank: int
    group: str
    h0_real: int
    rhs: int
    closed_form: int

    @property
    def ok(self) -> bool:
        return self.rhs == self.closed_form


def group_name(family: str, rank: int) -> str:
    if family == "A":
        return f"SL_{rank + 1}"
    return {"B": f"Spin_{2 * rank + 1}", "C": f"Sp_{2 * rank}", "D": f"Spin_{2 * rank}"}.get(family, f"{family}{rank}")


def weyl_slack_row(family: str, rank: int) -> SlackRow:
    from .ntlifts import real_h0_max

    h0 = 119 if family == "E" else real_h0_max(family, rank)
    led = standard_ledger(family, rank, "weyl", h0)
    return SlackRow(family, rank, group_name(family, rank), h0, wiles_rhs(led), weyl_slack_closed_form(family, rank))


def principal_rhs(family: str, rank: int) -> int:
    from .principal import even_height_fixed_dim

    led = standard_ledger(family, rank, "principal", even_height_fixed_dim(build_root_system(family, rank)))
    return wiles_rhs(led)
