"""Capacities of periodic channels and convex combinations of memoryless channels.

A periodic channel cycles through L branch maps; its product-state capacity is
the maximum over a single shared input ensemble of the averaged branch Holevo
quantities.  Averaging over per-branch optimal ensembles instead gives an
upper bound, tight for depolarising branches and strict for amplitude-damping
branches with distinct parameters.  A convex combination sends every use down
one branch, so its capacity is the maximized pointwise minimum.

All branches must belong to families whose optimal ensemble reduces to an
antipodal pair with a single parameter a (AD, GAD, depolarising); arbitrary
Kraus branches are rejected rather than mis-scored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .channels import (
    AmplitudeDamping,
    ChannelFamily,
    Depolarizing,
    GeneralizedAmplitudeDamping,
)
from .holevo import chi_curve
from .optimize import CapacityResult, capacity, maximize_concave_1d

__all__ = [
    "MemorySpec",
    "InterchangeReport",
    "periodic_capacity",
    "periodic_capacity_upper",
    "interchange_report",
    "convex_combination_capacity",
    "minmax_diagnostic",
    "MinMaxDiagnostic",
]

_SUPPORTED = (AmplitudeDamping, GeneralizedAmplitudeDamping, Depolarizing)


@dataclass(frozen=True)
class MemorySpec:
    branches: tuple
    kind: Literal["periodic", "convex"]
    weights: tuple | None = None  # documentation only; the capacity is weight-free

    def __post_init__(self):
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        if not branches:
            raise ValueError("at least one branch required")
        for b in branches:
            if not isinstance(b, _SUPPORTED):
                raise TypeError(
                    f"unsupported branch {b!r}: only AD/GAD/depolarising branches "
                    "admit the shared antipodal-pair reduction"
                )
        if self.kind not in ("periodic", "convex"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))


@dataclass(frozen=True)
class InterchangeReport:
    c_lower: float
    c_upper: float
    gap: float
    a_star_joint: float
    a_star_per_branch: tuple


def _assert_concave(f, lo=0.0, hi=1.0, points=41, tol=1e-10):
    # cheap finite-difference guard before trusting golden-section output
    h = (hi - lo) / (points + 1)
    prev2, prev1 = f(lo), f(lo + h)
    for i in range(2, points + 2):
        cur = f(lo + i * h)
        if cur - 2.0 * prev1 + prev2 > tol:
            raise ArithmeticError("objective failed the concavity guard")
        prev2, prev1 = prev1, cur


def periodic_capacity(spec: MemorySpec, tol: float = 1e-10) -> CapacityResult:
    """max_a of the averaged branch chi curves (a sum of concave functions)."""
    if spec.kind != "periodic":
        raise ValueError("spec.kind must be 'periodic'")
    branches = spec.branches
    L = len(branches)

    def avg_chi(a):
        return sum(chi_curve(b, a) for b in branches) / L

    _assert_concave(avg_chi)
    a_star, cap, it = maximize_concave_1d(avg_chi, 0.0, 1.0, tol)
    return CapacityResult(a_star, cap, it, tol, "golden-section")


def periodic_capacity_upper(spec: MemorySpec, tol: float = 1e-10) -> float:
    """Average of the individual branch capacities; upper-bounds periodic_capacity."""
    if spec.kind != "periodic":
        raise ValueError("spec.kind must be 'periodic'")
    return sum(capacity(b, tol).capacity_bits for b in spec.branches) / len(spec.branches)


def interchange_report(spec: MemorySpec, tol: float = 1e-10) -> InterchangeReport:
    """The sup-of-average vs average-of-sup pair (C_p, C_p_bar) and their gap."""
    joint = periodic_capacity(spec, tol)
    per_branch = [capacity(b, tol) for b in spec.branches]
    upper = sum(r.capacity_bits for r in per_branch) / len(per_branch)
    return InterchangeReport(
        c_lower=joint.capacity_bits,
        c_upper=upper,
        gap=upper - joint.capacity_bits,
        a_star_joint=joint.a_star,
        a_star_per_branch=tuple(r.a_star for r in per_branch),
    )


def convex_combination_capacity(spec: MemorySpec, tol: float = 1e-10) -> CapacityResult:
    """max_a min_i chi_i(a); the minimum of concave curves is concave."""
    if spec.kind != "convex":
        raise ValueError("spec.kind must be 'convex'")
    branches = spec.branches

    def min_chi(a):
        return min(chi_curve(b, a) for b in branches)

    _assert_concave(min_chi)
    a_star, cap, it = maximize_concave_1d(min_chi, 0.0, 1.0, tol)
    return CapacityResult(a_star, cap, it, tol, "golden-section")


@dataclass(frozen=True)
class MinMaxDiagnostic:
    sup_min: float
    min_sup: float
    crossing_a: float | None


def minmax_diagnostic(spec: MemorySpec, tol: float = 1e-10) -> MinMaxDiagnostic:
    """Compare sup_a min_i chi_i(a) against min_i sup_a chi_i(a) for two branches.

    Also reports the interior crossing point of the two chi curves when one
    exists (bisection on their difference); the gap is strict exactly when the
    branch maximizers straddle that crossing.
    """
    if spec.kind != "convex" or len(spec.branches) != 2:
        raise ValueError("minmax_diagnostic requires a 2-branch convex spec")
    b0, b1 = spec.branches
    sup_min = convex_combination_capacity(spec, tol).capacity_bits
    min_sup = min(capacity(b0, tol).capacity_bits, capacity(b1, tol).capacity_bits)

    def diff(a):
        return chi_curve(b0, a) - chi_curve(b1, a)

    crossing = None
    n = 400
    lo = 1e-9
    prev_a, prev_d = lo, diff(lo)
    for i in range(1, n + 1):
        a = lo + (1.0 - 2 * lo) * i / n
        d = diff(a)
        if prev_d == 0.0:
            crossing = prev_a
            break
        if prev_d * d < 0.0:
            x0, x1 = prev_a, a
            while x1 - x0 > tol:
                mid = 0.5 * (x0 + x1)
                if prev_d * diff(mid) > 0.0:
                    x0 = mid
                else:
                    x1 = mid
            crossing = 0.5 * (x0 + x1)
            break
        prev_a, prev_d = a, d
    return MinMaxDiagnostic(sup_min, min_sup, crossing)
