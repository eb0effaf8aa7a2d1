"""Qubit channel families: Kraus operators, closed-form actions and output spectra.

Supported families are amplitude damping (AD), generalised amplitude damping
(GAD), the depolarising channel, and arbitrary user-supplied Kraus sets.  For
the three named families the action on ``[[a, b], [conj(b), 1-a]]`` has a
closed form which `apply` uses directly; the Kraus operators reproduce it and
are cross-checked in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import BlochVector, DensityMatrix, bloch_from_density, density_from_bloch

__all__ = [
    "KrausSet",
    "AmplitudeDamping",
    "GeneralizedAmplitudeDamping",
    "Depolarizing",
    "GenericKraus",
    "ChannelFamily",
    "kraus_of",
    "apply",
    "ad_x",
    "output_eigs_ad",
    "output_eigs_gad",
    "output_eigs_dep",
    "bloch_image",
    "validate_cpt",
    "CptDiagnostic",
]

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class KrausSet:
    """A list of 2x2 operators E_k with sum E_k^dag E_k = I."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise ValueError("empty Kraus set")
        for op in ops:
            if op.shape != (2, 2):
                raise ValueError(f"Kraus operator has shape {op.shape}, expected (2, 2)")


@dataclass(frozen=True)
class AmplitudeDamping:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma={self.gamma} outside [0, 1]")


@dataclass(frozen=True)
class GeneralizedAmplitudeDamping:
    gamma: float
    p: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma={self.gamma} outside [0, 1]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")


@dataclass(frozen=True)
class Depolarizing:
    # CP requires lam >= -1/(d^2-1) = -1/3; capacity formulas use lam in [0, 1]
    lam: float

    def __post_init__(self):
        if not -1.0 / 3.0 - 1e-15 <= self.lam <= 1.0:
            raise ValueError(f"lambda={self.lam} outside [-1/3, 1]")


@dataclass(frozen=True)
class GenericKraus:
    kraus: KrausSet


ChannelFamily = AmplitudeDamping | GeneralizedAmplitudeDamping | Depolarizing | GenericKraus


def kraus_of(family: ChannelFamily) -> KrausSet:
    """Kraus operators of the family; satisfies the CPT completeness relation."""
    if isinstance(family, AmplitudeDamping):
        g = family.gamma
        e0 = np.array([[1, 0], [0, math.sqrt(1 - g)]], dtype=complex)
        e1 = np.array([[0, math.sqrt(g)], [0, 0]], dtype=complex)
        return KrausSet((e0, e1))
    if isinstance(family, GeneralizedAmplitudeDamping):
        g, p = family.gamma, family.p
        sp, sq = math.sqrt(p), math.sqrt(1 - p)
        e0 = sp * np.array([[1, 0], [0, math.sqrt(1 - g)]], dtype=complex)
        e1 = sp * np.array([[0, math.sqrt(g)], [0, 0]], dtype=complex)
        e2 = sq * np.array([[math.sqrt(1 - g), 0], [0, 1]], dtype=complex)
        e3 = sq * np.array([[0, 0], [math.sqrt(g), 0]], dtype=complex)
        ops = [e0, e1, e2, e3]
        return KrausSet(tuple(op for op in ops if np.any(op != 0)))
    if isinstance(family, Depolarizing):
        lam = family.lam
        if lam < 0:
            raise ValueError("Kraus realization requires lambda >= 0")
        ops = [math.sqrt(1 - 0.75 * lam) * _I2]
        if lam > 0:
            w = math.sqrt(0.25 * lam)
            ops += [w * _SX, w * _SY, w * _SZ]
        return KrausSet(tuple(ops))
    if isinstance(family, GenericKraus):
        return family.kraus
    raise TypeError(f"unknown channel family {family!r}")


def apply(family: ChannelFamily, rho: DensityMatrix) -> DensityMatrix:
    """Channel output state.  Closed forms for the named families, Kraus sum otherwise."""
    a, b = rho.a, rho.b
    if isinstance(family, AmplitudeDamping):
        g = family.gamma
        return DensityMatrix(a + (1 - a) * g, b * math.sqrt(1 - g))
    if isinstance(family, GeneralizedAmplitudeDamping):
        g, p = family.gamma, family.p
        return DensityMatrix(a + p * g - a * g, b * math.sqrt(1 - g))
    if isinstance(family, Depolarizing):
        lam = family.lam
        return DensityMatrix((1 - lam) * a + 0.5 * lam, (1 - lam) * b)
    if isinstance(family, GenericKraus):
        m = rho.matrix
        out = np.zeros((2, 2), dtype=complex)
        for e in family.kraus.operators:
            out += e @ m @ e.conj().T
        return DensityMatrix(out[0, 0].real, out[0, 1])
    raise TypeError(f"unknown channel family {family!r}")


def ad_x(gamma: float, a: float) -> float:
    """The radical sqrt(1 - 4*gamma*(1-gamma)*(1-a)^2) from the AD output spectrum."""
    arg = 1.0 - 4.0 * gamma * (1.0 - gamma) * (1.0 - a) ** 2
    return math.sqrt(max(arg, 0.0))


def output_eigs_ad(gamma: float, a: float) -> tuple[float, float]:
    """Output eigenvalues of AD(gamma) on the pure state with parameter a."""
    x = ad_x(gamma, a)
    return 0.5 * (1.0 + x), 0.5 * (1.0 - x)


def output_eigs_gad(gamma: float, p: float, a: float) -> tuple[float, float]:
    """Output eigenvalues of GAD(gamma, p) on the pure state with parameter a."""
    g = gamma
    arg = (
        1.0
        + 4 * a * a * g * g
        - 4 * a * a * g
        - 8 * a * p * g * g
        + 8 * a * p * g
        + 4 * p * p * g * g
        - 4 * p * g
    )
    x = math.sqrt(max(arg, 0.0))
    return 0.5 * (1.0 + x), 0.5 * (1.0 - x)


def output_eigs_dep(lam: float) -> tuple[float, float]:
    """Output eigenvalues {1 - lam/2, lam/2} for any pure input; sorted descending."""
    lo, hi = 0.5 * lam, 1.0 - 0.5 * lam
    return (hi, lo) if hi >= lo else (lo, hi)


def bloch_image(family: ChannelFamily, v: BlochVector) -> BlochVector:
    """Image of a Bloch vector under the channel (AD squashes the ball toward |0>)."""
    if isinstance(family, AmplitudeDamping):
        g = family.gamma
        s = math.sqrt(1 - g)
        return BlochVector(v.x * s, v.y * s, v.z * (1 - g) + g)
    if isinstance(family, Depolarizing):
        f = 1 - family.lam
        return BlochVector(v.x * f, v.y * f, v.z * f)
    return bloch_from_density(apply(family, density_from_bloch(v)))


@dataclass(frozen=True)
class CptDiagnostic:
    passed: bool
    max_deviation: float


def validate_cpt(kraus: KrausSet, tol: float = 1e-12) -> CptDiagnostic:
    """Check the completeness relation sum E^dag E = I entrywise."""
    acc = np.zeros((2, 2), dtype=complex)
    for e in kraus.operators:
        acc += e.conj().T @ e
    dev = float(np.max(np.abs(acc - _I2)))
    return CptDiagnostic(dev <= tol, dev)
