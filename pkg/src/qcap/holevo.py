"""The Holevo quantity, the antipodal-pair reduction and the single-parameter chi curves.

For the AD/GAD/depolarising families the capacity-achieving ensemble reduces
to two equiprobable mirror-image pure states with a common parameter ``a``;
the averaged output is then diagonal, so the first Holevo term is a plain
binary entropy and each chi curve is a concave function of ``a`` alone.

Everything returns bits.  The analytic derivatives follow the natural-log
expressions and carry an explicit 1/ln2 conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import (
    AmplitudeDamping,
    ChannelFamily,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    ad_x,
    apply,
    output_eigs_gad,
)
from .qstate import Ensemble, PureQubit, binary_entropy, von_neumann_entropy

__all__ = [
    "ChiCurvePoint",
    "holevo_quantity",
    "antipodalize",
    "chi_ad",
    "chi_ad_prime",
    "output_entropy_ad",
    "output_entropy_ad_second",
    "chi_gad",
    "chi_dep",
    "chi_curve",
    "antipodal_pair",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ChiCurvePoint:
    a: float
    chi: float
    d_chi: float | None = None


def holevo_quantity(family: ChannelFamily, ensemble: Ensemble) -> float:
    """chi = S(Phi(avg state)) - sum_j p_j S(Phi(rho_j)), in bits."""
    first = von_neumann_entropy(apply(family, ensemble.average_state()))
    second = sum(
        p * von_neumann_entropy(apply(family, state.density()))
        for p, state in ensemble.entries
    )
    return first - second


def antipodalize(ensemble: Ensemble) -> Ensemble:
    """Replace each state by itself and its mirror image (b -> -b), halving weights.

    Never decreases the Holevo quantity for the channels considered here: the
    output spectrum depends only on |b|, while the averaged state moves toward
    the diagonal, raising the first term by concavity of the entropy.
    """
    if len(ensemble.entries) > 2:
        raise ValueError("antipodalizing more than 2 states would exceed the 4-state cap")
    entries = []
    for p, state in ensemble.entries:
        entries.append((0.5 * p, state))
        entries.append((0.5 * p, state.mirrored()))
    return Ensemble(tuple(entries))


def antipodal_pair(a: float, phase: float = 0.0) -> Ensemble:
    """The equiprobable mirror-image pair at parameter a."""
    return Ensemble(
        ((0.5, PureQubit(a, +1, phase)), (0.5, PureQubit(a, -1, phase)))
    )


def chi_ad(gamma: float, a: float) -> float:
    """Holevo quantity of AD(gamma) on the antipodal pair at a: H(a+(1-a)g) - S(a)."""
    return binary_entropy(a + (1.0 - a) * gamma) - binary_entropy(
        0.5 * (1.0 + ad_x(gamma, a))
    )


def chi_ad_prime(gamma: float, a: float) -> float:
    """d/da of chi_ad, in bits per unit a; diverges at a=1."""
    if a >= 1.0:
        raise ValueError("chi_ad_prime is singular at a=1")
    if not 0.0 < a:
        raise ValueError(f"a={a} outside (0, 1)")
    g = gamma
    if g >= 1.0:
        return 0.0
    first = (1 - g) * math.log((1 - g) * (1 - a) / (a + g * (1 - a)))
    if g == 0.0:
        return first / _LN2
    # ln((1+x)/(1-x)) = ln((1+x)^2/u) with u = 1-x^2, stable as x -> 1
    u = 4 * g * (1 - g) * (1 - a) ** 2
    x = math.sqrt(max(1.0 - u, 0.0))
    second = (2 * g * (1 - g) * (1 - a) / x) * math.log((1 + x) ** 2 / u)
    return (first + second) / _LN2


def output_entropy_ad(gamma: float, a: float) -> float:
    """Output entropy S(a) of AD(gamma) on the pure state at a, in bits."""
    return binary_entropy(0.5 * (1.0 + ad_x(gamma, a)))


def output_entropy_ad_second(gamma: float, a: float) -> float:
    """Analytic second derivative of output_entropy_ad; nonnegative (S is convex).

    Returns +inf at the x=0 singularity (gamma=1/2, a=0) where the spectrum is
    degenerate and the entropy has a kink.
    """
    g = gamma
    if g == 0.0 or g == 1.0:
        return 0.0
    u = 4 * g * (1 - g) * (1 - a) ** 2
    x = math.sqrt(max(1.0 - u, 0.0))
    if x == 0.0:
        return math.inf
    if u <= 0.0:
        return 0.0
    coef = 2 * g * (1 - g) / (x * x)
    return coef * ((1.0 / x) * math.log((1 + x) ** 2 / u) - 2.0) / _LN2


def chi_gad(gamma: float, p: float, a: float) -> float:
    """Holevo quantity of GAD(gamma, p) on the antipodal pair at a."""
    hi, _ = output_eigs_gad(gamma, p, a)
    return binary_entropy(a + p * gamma - a * gamma) - binary_entropy(hi)


def chi_dep(lam: float, a: float) -> float:
    """Holevo quantity of Dep(lambda) on the antipodal pair: H((1-l)a + l/2) - H(l/2)."""
    return binary_entropy((1.0 - lam) * a + 0.5 * lam) - binary_entropy(0.5 * lam)


def chi_curve(family: ChannelFamily, a: float) -> float:
    """chi(a) for any supported single-parameter family."""
    if isinstance(family, AmplitudeDamping):
        return chi_ad(family.gamma, a)
    if isinstance(family, GeneralizedAmplitudeDamping):
        return chi_gad(family.gamma, family.p, a)
    if isinstance(family, Depolarizing):
        return chi_dep(family.lam, a)
    raise TypeError(f"no closed-form chi curve for {family!r}")
