"""Qubit density operators, pure-state parametrization, Bloch vectors and entropies.

A qubit density matrix is stored by its top-left entry ``a`` and top-right
entry ``b``; the full operator is ``[[a, b], [conj(b), 1-a]]``, so the unit
trace holds by construction.  All entropies are in bits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DensityMatrix",
    "PureQubit",
    "BlochVector",
    "Ensemble",
    "binary_entropy",
    "eigenvalues",
    "von_neumann_entropy",
    "bloch_from_density",
    "density_from_bloch",
]

_PSD_SLACK = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Qubit state ``[[a, b], [conj(b), 1-a]]`` with 0 <= a <= 1."""

    a: float
    b: complex = 0.0

    def __post_init__(self):
        if not -_PSD_SLACK <= self.a <= 1.0 + _PSD_SLACK:
            raise ValueError(f"diagonal entry a={self.a} outside [0, 1]")
        if abs(self.b) ** 2 > self.a * (1.0 - self.a) + _PSD_SLACK:
            raise ValueError(
                f"not positive semidefinite: |b|^2={abs(self.b)**2} > a(1-a)={self.a*(1-self.a)}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.a, self.b], [np.conj(self.b), 1.0 - self.a]], dtype=complex
        )


@dataclass(frozen=True)
class PureQubit:
    """Pure state on the Bloch-sphere boundary: b = sign * exp(i*phase) * sqrt(a(1-a))."""

    a: float
    sign: int = +1
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"a={self.a} outside [0, 1]")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def b(self) -> complex:
        mag = math.sqrt(max(self.a * (1.0 - self.a), 0.0))
        if self.phase == 0.0:
            return self.sign * mag
        return self.sign * cmath.exp(1j * self.phase) * mag

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.a, self.b)

    def mirrored(self) -> "PureQubit":
        """The antipodal partner with b -> -b."""
        return PureQubit(self.a, -self.sign, self.phase)


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm() > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector outside the unit ball, |v|={self.norm()}")

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class Ensemble:
    """Weighted list of pure states; at most 4 entries (d^2 for a qubit)."""

    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not 1 <= len(entries) <= 4:
            raise ValueError("ensemble must contain between 1 and 4 states")
        total = 0.0
        for p, state in entries:
            if p < -1e-12:
                raise ValueError(f"negative probability {p}")
            if not isinstance(state, PureQubit):
                raise TypeError("ensemble states must be PureQubit")
            total += p
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def average_state(self) -> DensityMatrix:
        a_bar = sum(p * s.a for p, s in self.entries)
        b_bar = sum(p * s.b for p, s in self.entries)
        return DensityMatrix(a_bar, b_bar)


def binary_entropy(p: float) -> float:
    """Binary entropy H(p) = -p log2 p - (1-p) log2 (1-p), in bits."""
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise ValueError(f"p={p} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def eigenvalues(rho: DensityMatrix) -> tuple[float, float]:
    """Eigenvalues (larger, smaller) of a qubit state, clamped into [0, 1]."""
    r = math.sqrt((2.0 * rho.a - 1.0) ** 2 + 4.0 * abs(rho.b) ** 2)
    hi = min(max(0.5 * (1.0 + r), 0.0), 1.0)
    lo = min(max(0.5 * (1.0 - r), 0.0), 1.0)
    return hi, lo


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) in bits; for a qubit this is the binary entropy of either eigenvalue."""
    hi, _ = eigenvalues(rho)
    return binary_entropy(hi)


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    # convention: z = 2a - 1 puts |0> (a=1) at the north pole
    return BlochVector(2.0 * rho.b.real, -2.0 * rho.b.imag, 2.0 * rho.a - 1.0)


def density_from_bloch(v: BlochVector) -> DensityMatrix:
    return DensityMatrix(0.5 * (1.0 + v.z), complex(0.5 * v.x, -0.5 * v.y))
