"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
Exponent = tuple[int, ...]


class NonHomogeneous(ValueError):
    """Raised when a polynomial mixes weighted degrees."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a reduced ``Fraction``."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """A polynomial in ``nvars`` variables over Q.

    Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
    dropped. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | None = None, nvars: int = 1):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have length {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash: int | None = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], nvars: int) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int = 1) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c: Number, nvars: int = 1) -> "Poly":
        c = Fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: Number = 1) -> "Poly":
        exp = tuple(exp)
        return cls({exp: coeff}, nvars=len(exp))

    @classmethod
    def var(cls, index: int, nvars: int, power: int = 1, coeff: Number = 1) -> "Poly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = power
        return cls({tuple(exp): coeff}, nvars=nvars)

    @classmethod
    def x_pow(cls, power: int, coeff: Number = 1) -> "Poly":
        """Univariate shorthand ``coeff * x**power``."""
        return cls({(power,): coeff}, nvars=1)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number]) -> "Poly":
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, nvars=1)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exp: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        """Univariate degree; ``-1`` for the zero polynomial."""
        self._require_univariate()
        return max((e[0] for e in self._terms), default=-1)

    def univariate_coeffs(self) -> list[Fraction]:
        self._require_univariate()
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    def as_monomial(self) -> tuple[Fraction, Exponent] | None:
        """Return ``(coeff, exponent)`` when the polynomial is a single term."""
        if len(self._terms) != 1:
            return None
        (exp, c), = self._terms.items()
        return c, exp

    def _require_univariate(self) -> None:
        if self.nvars != 1:
            raise ValueError("operation needs a univariate polynomial")

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(out, self.nvars)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw({e: v * c for e, v in self._terms.items()}, self.nvars)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus / structure -----------------------------------------
    def derivative(self, var_index: int) -> "Poly":
        if not 0 <= var_index < self.nvars:
            raise IndexError(f"variable index {var_index} out of range for {self.nvars} variables")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[var_index]
            if e:
                new = list(exp)
                new[var_index] = e - 1
                out[tuple(new)] = c * e
        return Poly._raw(out, self.nvars)

    def extend(self, nvars: int) -> "Poly":
        """Embed into a ring with more variables (new ones appended)."""
        if nvars < self.nvars:
            raise ValueError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return Poly._raw({e + pad: c for e, c in self._terms.items()}, nvars)

    def evaluate(self, point):
        total = 0
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                term = term * x**e
            total = total + term
        return total

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Univariate long division over Q."""
        self._require_univariate()
        divisor._require_univariate()
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.univariate_coeffs()
        d = divisor.univariate_coeffs()
        dd = len(d) - 1
        lead = d[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if not c:
                continue
            c = c / lead
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * d[j]
        return Poly.from_coeffs(quot), Poly.from_coeffs(rem[:dd] if dd else [])

    # -- display / serialization --------------------------------------
    def to_json(self) -> list[dict]:
        return [{"c": format_rational(c), "e": list(e)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None) -> "Poly":
        if not isinstance(data, list):
            raise ValueError("polynomial must be a list of terms")
        terms: dict[Exponent, Fraction] = {}
        for term in data:
            if not isinstance(term, dict) or set(term) != {"c", "e"}:
                raise ValueError(f"malformed term {term!r}")
            exp = tuple(int(e) for e in term["e"])
            if nvars is None:
                nvars = len(exp)
            if exp in terms:
                raise ValueError(f"repeated exponent {list(exp)}")
            terms[exp] = parse_rational(term["c"])
        return cls(terms, nvars=nvars or 1)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        names = ["x", "y", "z"] if self.nvars <= 3 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def weighted_degree(p: Poly, weights) -> Fraction:
    """Weighted degree of a homogeneous ``p`` where ``x_i`` has degree ``2 a_i / h``.

    Raises ``NonHomogeneous`` when terms disagree and ``ValueError`` on zero.
    """
    if p.is_zero():
        raise ValueError("weighted degree of the zero polynomial is undefined")
    a, h = weights.weights, weights.h
    if len(a) != p.nvars:
        raise ValueError("weight system and polynomial disagree on variable count")
    degrees = {sum(e * w for e, w in zip(exp, a)) for exp in p.terms}
    if len(degrees) != 1:
        raise NonHomogeneous(f"{p!r} mixes weighted degrees")
    return Fraction(2 * degrees.pop(), h)


def check_quasi_homogeneous(f: Poly, weights) -> bool:
    """Exact Euler identity ``sum (2a_i/h) x_i df/dx_i == 2 f``."""
    if len(weights.weights) != f.nvars:
        return False
    lhs = Poly.zero(f.nvars)
    for i, a in enumerate(weights.weights):
        lhs = lhs + (Poly.var(i, f.nvars) * f.derivative(i)).scale(Fraction(2 * a, weights.h))
    return lhs == f.scale(2)


def residue_div(g: Poly, h: int) -> Fraction:
    """``Res[g(x) dx / (h x^(h-1))]``, i.e. the x^(h-2) coefficient of g over h."""
    if h < 2:
        raise ValueError("residue needs h >= 2")
    if g.nvars != 1:
        raise ValueError("residue needs a univariate polynomial")
    return g.coeff((h - 2,)) / h
