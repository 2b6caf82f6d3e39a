"""Morphism complexes between graded matrix factorizations of x^h.

In degree ``q`` a morphism ``Phi: a -> b`` is a block matrix on
``a_+ (+) a_-  ->  b_+ (+) b_-``. Even ``q`` uses the diagonal blocks
``++`` and ``--``, odd ``q`` the blocks ``+-`` (a_+ -> b_-) and ``-+``
(a_- -> b_+). Every entry is a multiple of a single monomial ``x^m`` whose
exponent is fixed by the tags, so a morphism is a rational vector indexed by
the legal slots.

Sign conventions (locked by tests):

* ``m1(Phi) = Q_b Phi - (-1)^q Phi Q_a``
* ``m2(Psi, Phi) = (-1)^(|Psi||Phi| + |Phi|) Psi Phi``, the unique choice of
  the form ``+-Psi Phi`` satisfying both unit axioms and the Leibniz rule
  ``m1(m2(Psi, Phi)) = (-1)^|Phi| m2(m1 Psi, Phi) - m2(Psi, m1 Phi)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import Poly, RatMatrix, residue_div, span_rank
from .mfcore import (
    GradedMF,
    PolyMatrix,
    indecomposable,
    pmat_block,
    pmat_mul,
    pmat_zero,
    shift,
)

EVEN_BLOCKS = ("++", "--")
ODD_BLOCKS = ("+-", "-+")


class UnsupportedObject(ValueError):
    """Raised for inputs outside the univariate x^h setting."""


@dataclass(frozen=True)
class Slot:
    block: str
    row: int
    col: int
    m: int


@dataclass(frozen=True)
class SlotBasis:
    degree: int
    slots: tuple[Slot, ...]

    def __len__(self) -> int:
        return len(self.slots)

    def index(self) -> dict[tuple[str, int, int], int]:
        return {(s.block, s.row, s.col): n for n, s in enumerate(self.slots)}


def _require_univariate(*objs: GradedMF) -> None:
    for o in objs:
        if not o.is_univariate():
            raise UnsupportedObject("Hom computations need a single variable of weight 1")
    if len({(o.h, o.f) for o in objs}) > 1:
        raise UnsupportedObject("objects must share f and h")


def _block_tags(alpha: GradedMF, beta: GradedMF, block: str):
    src = alpha.even if block[0] == "+" else alpha.odd
    tgt = beta.even if block[1] == "+" else beta.odd
    return tgt, src


def _block_offset(q: int, block: str, h: int) -> int:
    if block in EVEN_BLOCKS:
        return q * h // 2
    if block == "+-":
        return (q - 1) * h // 2
    return (q + 1) * h // 2


@lru_cache(maxsize=65536)
def _slot_basis(alpha: GradedMF, beta: GradedMF, q: int) -> SlotBasis:
    h = alpha.h
    slots = []
    for block in EVEN_BLOCKS if q % 2 == 0 else ODD_BLOCKS:
        off = _block_offset(q, block, h)
        tgt, src = _block_tags(alpha, beta, block)
        for j, t in enumerate(tgt):
            for i, s in enumerate(src):
                m = off + t - s
                if m >= 0:
                    slots.append(Slot(block, j, i, m))
    return SlotBasis(q, tuple(slots))


def slot_basis(alpha: GradedMF, beta: GradedMF, q: int) -> SlotBasis:
    """Legal monomial slots of Tw^q(alpha, beta), ordered by block then row-major."""
    _require_univariate(alpha, beta)
    return _slot_basis(alpha, beta, q)


@dataclass(frozen=True)
class Morphism:
    source: GradedMF
    target: GradedMF
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.basis):
            raise ValueError("coefficient vector does not match the slot basis")

    @property
    def basis(self) -> SlotBasis:
        return _slot_basis(self.source, self.target, self.degree)

    @property
    def parity(self) -> int:
        return self.degree % 2

    @classmethod
    def zero(cls, source: GradedMF, target: GradedMF, degree: int) -> "Morphism":
        return cls(source, target, degree, (0,) * len(slot_basis(source, target, degree)))

    @classmethod
    def from_slots(cls, source, target, degree, values: dict[tuple[str, int, int], Fraction]):
        basis = slot_basis(source, target, degree)
        idx = basis.index()
        coeffs = [Fraction(0)] * len(basis)
        for key, v in values.items():
            if key not in idx:
                raise ValueError(f"no legal slot {key} in degree {degree}")
            coeffs[idx[key]] = Fraction(v)
        return cls(source, target, degree, tuple(coeffs))

    @classmethod
    def from_matrix(cls, source: GradedMF, target: GradedMF, degree: int,
                    full: PolyMatrix) -> "Morphism":
        """Read slot coefficients off a full block matrix, checking nothing else is present."""
        basis = slot_basis(source, target, degree)
        pa = len(source.even)
        pb = len(target.even)
        coeffs = []
        seen = set()
        for s in basis.slots:
            r = s.row + (0 if s.block[1] == "+" else pb)
            c = s.col + (0 if s.block[0] == "+" else pa)
            seen.add((r, c))
            entry = full[r][c]
            if entry and set(entry.terms) != {(s.m,)}:
                raise ValueError(f"entry {entry!r} at {(r, c)} is not a multiple of x^{s.m}")
            coeffs.append(entry.coeff((s.m,)))
        for r, row in enumerate(full):
            for c, entry in enumerate(row):
                if entry and (r, c) not in seen:
                    raise ValueError(f"entry {entry!r} at {(r, c)} lies outside degree {degree}")
        return cls(source, target, degree, tuple(coeffs))

    @classmethod
    def from_blocks(cls, source, target, degree, blocks: dict[str, PolyMatrix]) -> "Morphism":
        pa, ra = len(source.even), len(source.odd)
        pb, rb = len(target.even), len(target.odd)
        full = pmat_block(
            [[blocks.get("++"), blocks.get("-+")], [blocks.get("+-"), blocks.get("--")]],
            [pb, rb], [pa, ra],
        )
        return cls.from_matrix(source, target, degree, full)

    def block(self, name: str) -> PolyMatrix:
        tgt, src = _block_tags(self.source, self.target, name)
        rows = [[Poly.zero() for _ in src] for _ in tgt]
        for s, c in zip(self.basis.slots, self.coeffs):
            if s.block == name and c:
                rows[s.row][s.col] = Poly.x_pow(s.m, c)
        return tuple(tuple(r) for r in rows)

    def full(self) -> PolyMatrix:
        pa, ra = len(self.source.even), len(self.source.odd)
        pb, rb = len(self.target.even), len(self.target.odd)
        if self.parity == 0:
            blocks = [[self.block("++"), None], [None, self.block("--")]]
        else:
            blocks = [[None, self.block("-+")], [self.block("+-"), None]]
        return pmat_block(blocks, [pb, rb], [pa, ra])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same_space(self, other: "Morphism") -> None:
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("morphisms live in different spaces")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_space(other)
        return Morphism(self.source, self.target, self.degree,
                        tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.degree, tuple(c * a for a in self.coeffs))

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)


def identity(alpha: GradedMF) -> Morphism:
    vals = {("++", i, i): 1 for i in range(len(alpha.even))}
    vals.update({("--", j, j): 1 for j in range(len(alpha.odd))})
    return Morphism.from_slots(alpha, alpha, 0, vals)


def curvature(alpha: GradedMF) -> Morphism:
    """``f * Id`` as a degree-2 endomorphism (the image of m0)."""
    vals = {("++", i, i): 1 for i in range(len(alpha.even))}
    vals.update({("--", j, j): 1 for j in range(len(alpha.odd))})
    lead = alpha.f.coeff((alpha.h,))
    return Morphism.from_slots(alpha, alpha, 2, vals).scale(lead)


def _size(o: GradedMF) -> int:
    return len(o.even) + len(o.odd)


def m1(phi: Morphism) -> Morphism:
    a, b, q = phi.source, phi.target, phi.degree
    full = phi.full()
    left = pmat_mul(b.q_full(), full, _size(b))
    right = pmat_mul(full, a.q_full(), _size(a))
    sign = -1 if q % 2 == 0 else 1
    out = tuple(
        tuple(x + y.scale(sign) if y else x for x, y in zip(r1, r2)) for r1, r2 in zip(left, right)
    )
    return Morphism.from_matrix(a, b, q + 1, out)


def m2(psi: Morphism, phi: Morphism) -> Morphism:
    """Composite ``psi after phi`` with the sign ``(-1)^(|psi||phi| + |phi|)``.

    This is the sign for which identities are two-sided units and
    ``m1 m2(psi, phi) = (-1)^|phi| m2(m1 psi, phi) - m2(psi, m1 phi)``.
    Associativity then reads ``m2(m2(c, b), a) = (-1)^|a| m2(c, m2(b, a))``.
    """
    if phi.target != psi.source:
        raise ValueError("morphisms are not composable")
    prod = pmat_mul(psi.full(), phi.full(), _size(phi.target))
    sign = -1 if (psi.parity * phi.parity + phi.parity) % 2 else 1
    if sign < 0:
        prod = tuple(tuple(-x for x in r) for r in prod)
    return Morphism.from_matrix(phi.source, psi.target, psi.degree + phi.degree, prod)


@lru_cache(maxsize=65536)
def differential_matrix(alpha: GradedMF, beta: GradedMF, q: int) -> RatMatrix:
    """Matrix of m1: Tw^q -> Tw^(q+1) in slot coordinates (columns = source slots)."""
    src = slot_basis(alpha, beta, q)
    tgt = slot_basis(alpha, beta, q + 1)
    cols = []
    for n in range(len(src)):
        e = [0] * len(src)
        e[n] = 1
        cols.append(m1(Morphism(alpha, beta, q, tuple(e))).coeffs)
    return RatMatrix.from_columns(cols, len(tgt))


@dataclass
class HomReport:
    degree: int
    dim: int
    kernel_dim: int
    boundary_rank: int
    representatives: list[Morphism] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "kernel_dim": self.kernel_dim,
            "boundary_rank": self.boundary_rank,
            "representatives": [
                [{"block": s.block, "row": s.row, "col": s.col, "m": s.m, "c": f"{c.numerator}/{c.denominator}"}
                 for s, c in zip(r.basis.slots, r.coeffs) if c]
                for r in self.representatives
            ],
        }


def _boundaries(alpha: GradedMF, beta: GradedMF, q: int) -> list[tuple[Fraction, ...]]:
    return differential_matrix(alpha, beta, q - 1).image()


def hom(alpha: GradedMF, beta: GradedMF, q: int = 0) -> HomReport:
    """H^q of the morphism complex: Ker(m1 on Tw^q) / Im(m1 from Tw^(q-1))."""
    _require_univariate(alpha, beta)
    d = differential_matrix(alpha, beta, q)
    kernel = d.kernel()
    image = _boundaries(alpha, beta, q)
    n = len(slot_basis(alpha, beta, q))
    reps = []
    chosen = list(image)
    current = span_rank(chosen, n)
    for v in kernel:
        rank = span_rank(chosen + [v], n)
        if rank > current:
            chosen.append(v)
            current = rank
            reps.append(Morphism(alpha, beta, q, v))
    return HomReport(q, len(kernel) - len(image), len(kernel), len(image), reps)


def hom_shifted(alpha: GradedMF, beta: GradedMF, m: int) -> HomReport:
    """Hom(alpha, beta[m]) computed in degree 0 against the shifted object."""
    return hom(alpha, shift(beta, m), 0)


def is_nullhomotopic(phi: Morphism) -> bool:
    image = _boundaries(phi.source, phi.target, phi.degree)
    n = len(phi.coeffs)
    return span_rank(image + [phi.coeffs], n) == span_rank(image, n)


def euler_window(alpha: GradedMF, beta: GradedMF) -> int:
    tags = alpha.even + alpha.odd + beta.even + beta.odd
    span = max(tags) - min(tags) if tags else 0
    return span + 2 * alpha.h


def euler_char(alpha: GradedMF, beta: GradedMF) -> int:
    """sum_m (-1)^m dim Hom(alpha, beta[m]) over a checked finite window."""
    _require_univariate(alpha, beta)
    w = euler_window(alpha, beta)
    total = 0
    for m in range(-w, w + 1):
        dim = hom(alpha, beta, m).dim
        if dim and abs(m) == w:
            raise ArithmeticError(f"nonzero Hom at window edge m={m}; window too small")
        total += -dim if m % 2 else dim
    return total


# -- Serre duality -------------------------------------------------------------

def serre_trace(phi_pm: Poly, phi_mp: Poly, k: int, h: int) -> Fraction:
    """Residue trace of an odd endomorphism ``[[0, phi_mp], [phi_pm, 0]]`` of M_{k,i}.

    Returns ``Res[((h-k) x^(h-k-1) phi_pm - k x^(k-1) phi_mp) dx / f'(x)]``,
    normalised so that ``[[0, -x^(h-k-1)], [x^(k-1), 0]]`` has trace 1.
    """
    if not 1 <= k <= h - 1:
        raise ValueError("serre_trace needs 1 <= k <= h-1")
    if phi_pm.nvars != 1 or phi_mp.nvars != 1:
        raise ValueError("serre_trace needs univariate blocks")
    str_part = Poly.x_pow(h - k - 1, h - k) * phi_pm - Poly.x_pow(k - 1, k) * phi_mp
    return residue_div(str_part, h)


def _rank_one_label(m: GradedMF) -> int:
    if len(m.even) != 1 or len(m.odd) != 1:
        raise ValueError("expected a rank-one object")
    mono = m.q_pm[0][0].as_monomial()
    if mono is None:
        raise ValueError("expected a monomial matrix factorization")
    return mono[1][0]


def pairing_trace(psi: Morphism) -> Fraction:
    """Trace of a degree-0 morphism ``M_{k,i} -> M_{k,i-1}[1]``.

    Such a morphism ``diag(P, N)`` corresponds to the odd endomorphism with
    ``phi_pm = P`` and ``phi_mp = -N`` of degree ``1 - 2/h``.
    """
    if psi.degree != 0:
        raise ValueError("pairing_trace needs a degree-0 morphism")
    k = _rank_one_label(psi.source)
    p = psi.block("++")[0][0]
    n = psi.block("--")[0][0]
    return serre_trace(p, -n, k, psi.source.h)


@dataclass
class SerreReport:
    h: int
    tag_range: int
    pairs_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"h": self.h, "range": self.tag_range, "pairs_checked": self.pairs_checked,
                "passed": self.passed, "failures": list(self.failures)}


def serre_pairing_matrix(left: list[Morphism], right: list[Morphism]) -> RatMatrix:
    return RatMatrix([[pairing_trace(m2(v, u)) for v in right] for u in left], cols=len(right))


def verify_serre_duality(h: int, tag_range: int, labels: Iterable[tuple[int, int]] | None = None) -> SerreReport:
    """dim Hom(M_{k,i}, M_{l,j}) == dim Hom(M_{l,j}, M_{k,i-1}[1]) with a perfect trace pairing."""
    if h < 2:
        raise ValueError("need h >= 2")
    report = SerreReport(h, tag_range)
    if labels is None:
        labels = [(l, i) for l in range(1, h) for i in range(-tag_range, tag_range + 1)]
    labels = list(labels)
    for k, i in labels:
        src = indecomposable(k, i, h)
        dual_target = shift(indecomposable(k, i - 1, h), 1)
        for l, j in labels:
            mid = indecomposable(l, j, h)
            left = hom(src, mid, 0)
            right = hom(mid, dual_target, 0)
            report.pairs_checked += 1
            if left.dim != right.dim:
                report.failures.append(
                    f"dim Hom(M_{k},{i}, M_{l},{j}) = {left.dim} but dual side has {right.dim}"
                )
                continue
            if left.dim:
                pairing = serre_pairing_matrix(left.representatives, right.representatives)
                if pairing.rank() != left.dim:
                    report.failures.append(f"degenerate pairing for ({k},{i}), ({l},{j})")
    return report


def hom_dim_table(objects: list[GradedMF], q: int = 0) -> list[list[int]]:
    return [[hom(a, b, q).dim for b in objects] for a in objects]


__all__ = [
    "HomReport",
    "Morphism",
    "SerreReport",
    "Slot",
    "SlotBasis",
    "UnsupportedObject",
    "curvature",
    "differential_matrix",
    "euler_char",
    "euler_window",
    "hom",
    "hom_dim_table",
    "hom_shifted",
    "identity",
    "is_nullhomotopic",
    "m1",
    "m2",
    "pairing_trace",
    "pmat_zero",
    "serre_pairing_matrix",
    "serre_trace",
    "slot_basis",
    "verify_serre_duality",
]
