from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True)
class CyclotomicInt:
    """An element ``sum c_m w^m`` of the group ring Z[t]/(t^h - 1).

    Equality is group-ring equality, which is finer than equality of the
    complex numbers obtained by putting ``w = exp(2 pi i / h)``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("need h >= 1 coefficients")

    @property
    def h(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, h: int) -> "CyclotomicInt":
        return cls((0,) * h)

    @classmethod
    def power(cls, k: int, h: int, coeff: int = 1) -> "CyclotomicInt":
        c = [0] * h
        c[k % h] = coeff
        return cls(tuple(c))

    def _check(self, other: "CyclotomicInt") -> None:
        if self.h != other.h:
            raise ValueError(f"mismatched orders {self.h} and {other.h}")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __rmul__(self, n: int) -> "CyclotomicInt":
        return CyclotomicInt(tuple(n * a for a in self.coeffs))

    def times_omega(self, k: int = 1) -> "CyclotomicInt":
        """Multiply by w^k (a cyclic shift)."""
        k %= self.h
        return CyclotomicInt(self.coeffs[-k:] + self.coeffs[:-k] if k else self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        h = self.h
        return complex(sum(c * cmath.exp(2j * cmath.pi * m / h) for m, c in enumerate(self.coeffs) if c))
