"""Weight systems, cyclotomic polynomials and the characteristic function chi(T)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from .poly import Poly


@dataclass(frozen=True)
class WeightSystem:
    """Variable weights ``a_1..a_n`` and index ``h``; ``x_i`` has degree ``2 a_i / h``."""

    weights: tuple[int, ...]
    h: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(a) for a in self.weights))
        if not self.weights:
            raise ValueError("a weight system needs at least one variable")
        if self.h < 1 or any(a < 1 for a in self.weights):
            raise ValueError("weights and index must be positive integers")
        if reduce(gcd, self.weights, self.h) != 1:
            raise ValueError(f"gcd of {self.weights} and h={self.h} must be 1")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @classmethod
    def univariate(cls, h: int) -> "WeightSystem":
        return cls((1,), h)

    def is_univariate(self) -> bool:
        return self.weights == (1,)

    def to_json(self) -> dict:
        return {"a": list(self.weights), "h": self.h}


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """Phi_d(T), by dividing T^d - 1 by Phi_e for every proper divisor e."""
    p = Poly.from_coeffs([-1] + [0] * (d - 1) + [1])
    for e in divisors(d)[:-1]:
        p, rem = p.divmod(cyclotomic(e))
        assert rem.is_zero()
    return p


def _t_pow_minus_one(m: int) -> Poly:
    return Poly.from_coeffs([-1] + [0] * (m - 1) + [1])


@dataclass(frozen=True)
class RegularityWitness:
    regular: bool
    chi: Poly | None = None
    # root orders d whose Phi_d survives in the denominator
    poles: tuple[int, ...] = field(default=())


def cyclotomic_multiplicities(exponents) -> dict[int, int]:
    """Multiplicity of each Phi_d in prod (T^m - 1)."""
    mult: dict[int, int] = {}
    for m in exponents:
        for d in divisors(m):
            mult[d] = mult.get(d, 0) + 1
    return mult


def is_regular_weight_system(a: int, b: int, c: int, h: int) -> RegularityWitness:
    """Decide whether chi(T) has no poles, with the polynomial as witness."""
    if min(a, b, c, h) < 1:
        raise ValueError("weights and h must be positive")
    if max(a, b, c) >= h:
        raise ValueError("need a, b, c < h so that every factor T^(h-a) - 1 is nonconstant")
    up = cyclotomic_multiplicities((h - a, h - b, h - c))
    down = cyclotomic_multiplicities((a, b, c))
    poles = tuple(sorted(d for d, k in down.items() if up.get(d, 0) < k))
    if poles:
        return RegularityWitness(False, None, poles)
    chi = Poly.const(1)
    for d, k in sorted(up.items()):
        chi = chi * cyclotomic(d) ** (k - down.get(d, 0))
    return RegularityWitness(True, chi, ())


def chi_by_division(a: int, b: int, c: int, h: int) -> tuple[Poly, Poly]:
    """Quotient and remainder of the chi(T) numerator by its denominator."""
    num = _t_pow_minus_one(h - a) * _t_pow_minus_one(h - b) * _t_pow_minus_one(h - c)
    den = _t_pow_minus_one(a) * _t_pow_minus_one(b) * _t_pow_minus_one(c)
    return num.divmod(den)


def milnor_number(a: int, b: int, c: int, h: int) -> Fraction:
    if not is_regular_weight_system(a, b, c, h).regular:
        raise ValueError(f"({a},{b},{c};{h}) is not a regular weight system")
    return Fraction((h - a) * (h - b) * (h - c), a * b * c)
