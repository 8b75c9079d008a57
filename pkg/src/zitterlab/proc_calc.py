"""Pair-valued quantification of measurement sequences.

A sequence is quantified by a pair of reals ``(a1, a2)``.  Combining
sequences in parallel adds pairs componentwise, combining them in series
multiplies them like complex numbers, and the probability of a sequence is
the squared modulus of its pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonFiniteAmplitude

__all__ = ["Amplitude", "ZERO", "ONE", "I", "amp_add", "amp_mul", "born"]


@dataclass(frozen=True, slots=True)
class Amplitude:
    """Quantifying pair ``(a1, a2)``, read as the complex number ``a1 + i*a2``."""

    a1: float
    a2: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a1) and math.isfinite(self.a2)):
            raise NonFiniteAmplitude(f"amplitude components must be finite, got ({self.a1}, {self.a2})")

    @classmethod
    def from_complex(cls, z: complex) -> Amplitude:
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.a1, self.a2)

    def __iter__(self):
        yield self.a1
        yield self.a2

    def __add__(self, other: Amplitude) -> Amplitude:
        return amp_add(self, other)

    def __mul__(self, other: Amplitude) -> Amplitude:
        return amp_mul(self, other)

    def conj(self) -> Amplitude:
        return Amplitude(self.a1, -self.a2)

    @property
    def prob(self) -> float:
        return born(self)

    def isclose(self, other: Amplitude, abs_tol: float = 1e-12) -> bool:
        return abs(self.a1 - other.a1) <= abs_tol and abs(self.a2 - other.a2) <= abs_tol


ZERO = Amplitude(0.0, 0.0)
ONE = Amplitude(1.0, 0.0)
I = Amplitude(0.0, 1.0)


def amp_add(u: Amplitude, v: Amplitude) -> Amplitude:
    """Sum rule: parallel combination of two sequences."""
    return Amplitude(u.a1 + v.a1, u.a2 + v.a2)


def amp_mul(u: Amplitude, v: Amplitude) -> Amplitude:
    """Product rule: series combination of ``u`` followed by ``v``."""
    return Amplitude(u.a1 * v.a1 - u.a2 * v.a2, u.a1 * v.a2 + u.a2 * v.a1)


def born(u: Amplitude) -> float:
    """Probability assigned to a sequence quantified by ``u``.

    Not clamped to ``[0, 1]``; a value above one signals a non-unitary
    assignment upstream.
    """
    return u.a1 * u.a1 + u.a2 * u.a2
