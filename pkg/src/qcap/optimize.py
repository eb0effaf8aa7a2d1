"""Capacity computation: 1-D concave maximization, the a_max solver, and the
brute-force ensemble oracle.

The chi curves are concave in the state parameter a, so golden-section search
is globally convergent.  For amplitude damping the maximizer also solves a
transcendental equation chi'(a) = 0, which we bisect on [0.5, 1): the analytic
proof gives chi'(1/2) > 0 and chi' -> -inf as a -> 1.

The oracle ignores all of that structure.  It searches ensembles of up to
four arbitrary pure states (full Bloch sphere, including phases) with
multi-restart coordinate descent and serves as an independent check that two
antipodal states really are enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import (
    AmplitudeDamping,
    ChannelFamily,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    GenericKraus,
    apply,
)
from .holevo import chi_ad, chi_ad_prime, chi_curve, chi_dep, chi_gad
from .qstate import Ensemble, PureQubit, binary_entropy, von_neumann_entropy

__all__ = [
    "CapacityResult",
    "OracleConfig",
    "OracleResult",
    "maximize_concave_1d",
    "solve_amax_ad",
    "capacity",
    "oracle_capacity",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CapacityResult:
    a_star: float
    capacity_bits: float
    iterations: int
    residual: float
    method: str
    note: str = ""


@dataclass(frozen=True)
class OracleConfig:
    num_states: int = 4
    restarts: int = 64
    seed: int = 0
    step_init: float = 0.1
    step_min: float = 1e-6
    improvement_tol: float = 1e-10

    def __post_init__(self):
        if not 1 <= self.num_states <= 4:
            raise ValueError("num_states must be between 1 and 4 (Caratheodory bound)")
        if self.restarts < 1:
            raise ValueError("restarts must be positive")


@dataclass(frozen=True)
class OracleResult:
    chi_hat: float
    ensemble: Ensemble
    restarts_used: int


def maximize_concave_1d(f, lo: float, hi: float, tol: float = 1e-10):
    """Golden-section maximization of a concave f on [lo, hi].

    Returns (argmax, max, iterations) with final bracket width <= tol.
    """
    if lo >= hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        it += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    fx = f(x)
    # bracket endpoints may beat the midpoint by roundoff; keep the best seen
    best = max((fx, x), (fc, c), (fd, d), (f(lo), lo), (f(hi), hi))
    return best[1], best[0], it


def solve_amax_ad(gamma: float, tol: float = 1e-10) -> CapacityResult:
    """Maximizing a and capacity of AD(gamma) by bisecting chi'(a) on [0.5, 1)."""
    if gamma <= 0.0:
        return CapacityResult(0.5, 1.0, 0, 0.0, "closed-form", "identity channel")
    if gamma >= 1.0:
        return CapacityResult(
            0.5, 0.0, 0, 0.0, "closed-form", "gamma=1: every input maps to |0><0|"
        )
    lo, hi = 0.5, 1.0 - 1e-9
    flo, fhi = chi_ad_prime(gamma, lo), chi_ad_prime(gamma, hi)
    if flo > 0.0 > fhi:
        it = 0
        while hi - lo > tol:
            it += 1
            mid = 0.5 * (lo + hi)
            fmid = chi_ad_prime(gamma, mid)
            if fmid > 0.0:
                lo, flo = mid, fmid
            else:
                hi, fhi = mid, fmid
        a_star = 0.5 * (lo + hi)
        return CapacityResult(
            a_star,
            chi_ad(gamma, a_star),
            it,
            abs(chi_ad_prime(gamma, a_star)),
            "derivative-bisection",
        )
    # no sign change (can only happen at extreme parameters); fall back
    a_star, cap, it = maximize_concave_1d(lambda a: chi_ad(gamma, a), 0.0, 1.0 - 1e-12, tol)
    return CapacityResult(a_star, cap, it, tol, "golden-section", "bisection bracket failed")


def capacity(family: ChannelFamily, tol: float = 1e-10) -> CapacityResult:
    """Product-state capacity of a named channel family, in bits."""
    if isinstance(family, AmplitudeDamping):
        return solve_amax_ad(family.gamma, tol)
    if isinstance(family, GeneralizedAmplitudeDamping):
        g, p = family.gamma, family.p
        a_star, cap, it = maximize_concave_1d(lambda a: chi_gad(g, p, a), 0.0, 1.0, tol)
        return CapacityResult(a_star, cap, it, tol, "golden-section")
    if isinstance(family, Depolarizing):
        lam = family.lam
        if not 0.0 <= lam <= 1.0:
            raise ValueError("depolarising capacity requires lambda in [0, 1]")
        closed = 1.0 - binary_entropy(0.5 * lam)
        _, numeric, it = maximize_concave_1d(lambda a: chi_dep(lam, a), 0.0, 1.0, tol)
        if abs(numeric - closed) > 1e-9:
            raise ArithmeticError(
                f"depolarising closed form {closed} disagrees with numeric maximum {numeric}"
            )
        # the orthogonal pair at a=1/2 maximizes for every lambda (flat at lambda=1)
        return CapacityResult(
            0.5, closed, it, abs(numeric - closed), "closed-form",
            f"numeric cross-check {numeric!r}",
        )
    if isinstance(family, GenericKraus):
        raise TypeError("no closed-form capacity for GenericKraus; use oracle_capacity")
    raise TypeError(f"unknown channel family {family!r}")


# --- brute-force ensemble oracle -------------------------------------------

def _objective(family: ChannelFamily, probs, avals, phases) -> float:
    # Holevo quantity over arbitrary pure states; avoids Ensemble construction
    # on the hot path but matches holevo_quantity exactly.
    a_bar = 0.0
    b_bar = 0.0 + 0.0j
    second = 0.0
    outs = []
    for p, a, ph in zip(probs, avals, phases):
        b = math.sqrt(max(a * (1.0 - a), 0.0)) * complex(math.cos(ph), math.sin(ph))
        out = apply(family, _fast_state(a, b))
        outs.append((p, out))
        a_bar += p * a
        b_bar += p * b
        second += p * von_neumann_entropy(out)
    first = von_neumann_entropy(apply(family, _fast_state(a_bar, b_bar)))
    return first - second


def _fast_state(a, b):
    # DensityMatrix without validation; inputs are constructed in-range
    obj = object.__new__(_DM)
    object.__setattr__(obj, "a", a)
    object.__setattr__(obj, "b", b)
    return obj


from .qstate import DensityMatrix as _DM  # noqa: E402  (used by _fast_state)


def _project_simplex(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    s = p.sum()
    if s <= 0.0:
        return np.full_like(p, 1.0 / len(p))
    return p / s


def _refine(family, probs, avals, phases, cfg: OracleConfig):
    """Cyclic coordinate descent with a shrinking step schedule."""
    k = len(probs)
    best = _objective(family, probs, avals, phases)
    step = cfg.step_init
    while step >= cfg.step_min:
        improved = True
        while improved:
            improved = False
            for j in range(k):
                # probability move with simplex re-projection
                for delta in (step, -step):
                    trial = probs.copy()
                    trial[j] += delta
                    trial = _project_simplex(trial)
                    val = _objective(family, trial, avals, phases)
                    if val > best + cfg.improvement_tol:
                        probs, best, improved = trial, val, True
                # state parameter move
                for delta in (step, -step):
                    trial_a = min(max(avals[j] + delta, 0.0), 1.0)
                    if trial_a == avals[j]:
                        continue
                    saved = avals[j]
                    avals[j] = trial_a
                    val = _objective(family, probs, avals, phases)
                    if val > best + cfg.improvement_tol:
                        best, improved = val, True
                    else:
                        avals[j] = saved
                # phase move (scaled to radians)
                for delta in (2 * math.pi * step, -2 * math.pi * step):
                    saved = phases[j]
                    phases[j] = (saved + delta) % (2 * math.pi)
                    val = _objective(family, probs, avals, phases)
                    if val > best + cfg.improvement_tol:
                        best, improved = val, True
                    else:
                        phases[j] = saved
        step *= 0.5
    return probs, avals, phases, best


def oracle_capacity(family: ChannelFamily, cfg: OracleConfig = OracleConfig()):
    """Derivative-free search over ensembles of <= 4 arbitrary pure states.

    The returned chi_hat is an achieved Holevo quantity, hence a certified
    lower bound on the product-state capacity.  Deterministic for a fixed
    seed; each restart draws from its own (seed, index) RNG stream, so serial
    and parallel execution agree.
    """
    k = cfg.num_states
    best_val = -math.inf
    best = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        probs = _project_simplex(rng.dirichlet(np.ones(k)))
        avals = rng.uniform(0.0, 1.0, size=k).tolist()
        phases = rng.uniform(0.0, 2 * math.pi, size=k).tolist()
        probs, avals, phases, val = _refine(family, probs, avals, phases, cfg)
        if val > best_val:
            best_val = val
            best = (probs, avals, phases)
    probs, avals, phases = best
    entries = []
    for p, a, ph in zip(probs, avals, phases):
        if p < 1e-9:
            continue
        entries.append((float(p), PureQubit(float(a), +1, float(ph))))
    total = sum(p for p, _ in entries)
    entries = tuple((p / total, s) for p, s in entries)
    return OracleResult(float(best_val), Ensemble(entries), cfg.restarts)
