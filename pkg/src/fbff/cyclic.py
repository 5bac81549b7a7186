"""Arithmetic in the ring of cyclic polynomials C[z] / <z^P - 1>.

Coefficients are stored against *negative* powers: ``coeffs[p]`` multiplies
z^{-p}.  Positive powers fold through the ring relation z^P = 1, so z itself
is the monomial at index P - 1.  Exponent arithmetic is everywhere modulo
the period P.

Evaluating a cyclic polynomial at the P-th roots of unity
z = exp(2 pi j p / P) is a length-P DFT of the coefficient vector; that
evaluation map is the workhorse of every numeric check downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["CyclicPoly"]

_SCALARS = (int, float, complex, np.integer, np.floating, np.complexfloating)


@dataclass(frozen=True, eq=False)
class CyclicPoly:
    """A complex polynomial with exponents modulo its period.

    Values are immutable; operations return new instances.  Mixing operands
    of different periods raises instead of resizing silently.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficient vector must be 1-d and nonempty")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, period: int) -> "CyclicPoly":
        return cls(np.zeros(period, dtype=complex))

    @classmethod
    def constant(cls, value: complex, period: int) -> "CyclicPoly":
        c = np.zeros(period, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, p: int, period: int, scale: complex = 1.0) -> "CyclicPoly":
        """The monomial ``scale * z^{-p}``, with p taken modulo the period."""
        c = np.zeros(period, dtype=complex)
        c[p % period] = scale
        return cls(c)

    @property
    def period(self) -> int:
        return self.coeffs.size

    # -- ring operations ----------------------------------------------------

    def _require_same_period(self, other: "CyclicPoly") -> None:
        if self.period != other.period:
            raise ValueError(f"period mismatch: {self.period} vs {other.period}")

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        if not isinstance(other, CyclicPoly):
            return NotImplemented
        self._require_same_period(other)
        return CyclicPoly(self.coeffs + other.coeffs)

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        if not isinstance(other, CyclicPoly):
            return NotImplemented
        self._require_same_period(other)
        return CyclicPoly(self.coeffs - other.coeffs)

    def __neg__(self) -> "CyclicPoly":
        return CyclicPoly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, CyclicPoly):
            self._require_same_period(other)
            full = np.convolve(self.coeffs, other.coeffs)
            out = full[: self.period].copy()
            out[: full.size - self.period] += full[self.period :]
            return CyclicPoly(out)
        if isinstance(other, _SCALARS):
            return CyclicPoly(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return CyclicPoly(self.coeffs * other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicPoly)
            and self.period == other.period
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    # -- evaluation and symmetries -------------------------------------------

    def eval_at_root(self, p: int) -> complex:
        """Value at z = exp(2 pi j p / P), the p-th root of unity."""
        q = np.arange(self.period)
        return complex(np.sum(self.coeffs * np.exp(-2j * np.pi * p * q / self.period)))

    def eval_all(self) -> np.ndarray:
        """Values at every root of unity; index p holds ``eval_at_root(p)``."""
        return np.fft.fft(self.coeffs)

    def twist(self, r: int, R: int) -> "CyclicPoly":
        """Substitute z -> exp(-2 pi j r / R) z.  Requires R | P."""
        if R <= 0 or self.period % R != 0:
            raise ValueError(f"twist order {R} must divide period {self.period}")
        q = np.arange(self.period)
        return CyclicPoly(self.coeffs * np.exp(2j * np.pi * r * q / R))

    def conj_reverse(self) -> "CyclicPoly":
        """Conjugate coefficients and negate exponents.

        Evaluations of the result are pointwise conjugates of the original,
        which makes this the entrywise building block of matrix adjoints.
        """
        return CyclicPoly(np.conj(np.roll(self.coeffs[::-1], 1)))
