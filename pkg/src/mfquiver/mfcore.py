"""Graded matrix factorizations and the functors acting on them.

An object is a list of even grading tags ``k_i`` (summands ``a{2k_i/h}``), a
list of odd tags ``l_j`` (summands ``a{2l_j/h}[-1]``) and two polynomial
matrices: ``q_pm`` (even -> odd, one row per odd tag) and ``q_mp``
(odd -> even, one row per even tag) with ``q_mp q_pm = f Id`` and
``q_pm q_mp = f Id``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .algebra import NonHomogeneous, Poly, WeightSystem, check_quasi_homogeneous, weighted_degree

if TYPE_CHECKING:
    from .homalg import Morphism

PolyMatrix = tuple[tuple[Poly, ...], ...]


# -- polynomial matrix helpers ---------------------------------------------

def pmat(rows: Sequence[Sequence[Poly]]) -> PolyMatrix:
    return tuple(tuple(r) for r in rows)


def pmat_zero(rows: int, cols: int, nvars: int = 1) -> PolyMatrix:
    z = Poly.zero(nvars)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def pmat_identity(n: int, nvars: int = 1, scalar: Poly | None = None) -> PolyMatrix:
    one = scalar if scalar is not None else Poly.const(1, nvars)
    z = Poly.zero(nvars)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def pmat_mul(a: PolyMatrix, b: PolyMatrix, inner: int, nvars: int = 1) -> PolyMatrix:
    """``a @ b``; ``inner`` is needed because empty matrices lose their width."""
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != inner or len(b) != inner:
        raise ValueError("polynomial matrix shape mismatch")
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = Poly.zero(nvars)
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def pmat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def pmat_scale(a: PolyMatrix, c) -> PolyMatrix:
    if isinstance(c, Poly):
        return tuple(tuple(x * c for x in r) for r in a)
    return tuple(tuple(x.scale(c) for x in r) for r in a)


def pmat_block(blocks: Sequence[Sequence[PolyMatrix]], row_sizes: Sequence[int],
               col_sizes: Sequence[int]) -> PolyMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    nvars = 1
    for brow in blocks:
        for b in brow:
            if b is not None and b and b[0]:
                nvars = b[0][0].nvars
    out = []
    for bi, rsize in enumerate(row_sizes):
        for i in range(rsize):
            row: list[Poly] = []
            for bj, csize in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is None:
                    row.extend(Poly.zero(nvars) for _ in range(csize))
                else:
                    row.extend(b[i])
            out.append(tuple(row))
    return tuple(out)


def pmat_transpose(a: PolyMatrix, cols: int) -> PolyMatrix:
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(cols))


def pmat_is_zero(a: PolyMatrix) -> bool:
    return all(x.is_zero() for r in a for x in r)


# -- objects ---------------------------------------------------------------

@dataclass(frozen=True)
class GradedObject:
    even_tags: tuple[int, ...]
    odd_tags: tuple[int, ...]
    weights: WeightSystem

    def __post_init__(self):
        object.__setattr__(self, "even_tags", tuple(int(k) for k in self.even_tags))
        object.__setattr__(self, "odd_tags", tuple(int(k) for k in self.odd_tags))


@dataclass(frozen=True)
class GradedMF:
    obj: GradedObject
    f: Poly
    q_pm: PolyMatrix
    q_mp: PolyMatrix

    @classmethod
    def build(cls, even, odd, weights: WeightSystem, f: Poly, q_pm, q_mp) -> "GradedMF":
        return cls(GradedObject(tuple(even), tuple(odd), weights), f, pmat(q_pm), pmat(q_mp))

    @property
    def even(self) -> tuple[int, ...]:
        return self.obj.even_tags

    @property
    def odd(self) -> tuple[int, ...]:
        return self.obj.odd_tags

    @property
    def weights(self) -> WeightSystem:
        return self.obj.weights

    @property
    def h(self) -> int:
        return self.obj.weights.h

    @property
    def nvars(self) -> int:
        return self.f.nvars

    @property
    def rank(self) -> int:
        return len(self.even)

    def is_zero_object(self) -> bool:
        return not self.even and not self.odd

    def is_univariate(self) -> bool:
        return self.weights.is_univariate()

    def q_full(self) -> PolyMatrix:
        """The odd endomorphism ``[[0, q_mp], [q_pm, 0]]`` on even (+) odd."""
        p, r = len(self.even), len(self.odd)
        return pmat_block([[None, self.q_mp], [self.q_pm, None]], [p, r], [p, r])


def zero_object(weights: WeightSystem, f: Poly) -> GradedMF:
    return GradedMF.build((), (), weights, f, (), ())


def x_power_f(h: int) -> Poly:
    return Poly.x_pow(h)


# -- verification ----------------------------------------------------------

@dataclass
class VerificationReport:
    square: bool
    shapes_ok: bool
    f_quasi_homogeneous: bool
    residual_mp_pm: PolyMatrix = ()
    residual_pm_mp: PolyMatrix = ()
    homogeneity_failures: list[str] = field(default_factory=list)

    @property
    def maurer_cartan(self) -> bool:
        return pmat_is_zero(self.residual_mp_pm) and pmat_is_zero(self.residual_pm_mp)

    @property
    def passed(self) -> bool:
        return (self.square and self.shapes_ok and self.f_quasi_homogeneous
                and self.maurer_cartan and not self.homogeneity_failures)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "square": self.square,
            "shapes_ok": self.shapes_ok,
            "f_quasi_homogeneous": self.f_quasi_homogeneous,
            "maurer_cartan": self.maurer_cartan if self.shapes_ok else False,
            "homogeneity_failures": list(self.homogeneity_failures),
            "residual_mp_pm": [[e.to_json() for e in row] for row in self.residual_mp_pm],
            "residual_pm_mp": [[e.to_json() for e in row] for row in self.residual_pm_mp],
        }


def _entry_degree_ok(entry: Poly, required: Fraction, weights: WeightSystem) -> str | None:
    if entry.is_zero():
        return None
    if required < 0:
        return f"nonzero entry {entry!r} where the required degree {required} is negative"
    try:
        deg = weighted_degree(entry, weights)
    except NonHomogeneous:
        return f"entry {entry!r} is not homogeneous"
    if deg != required:
        return f"entry {entry!r} has degree {deg}, expected {required}"
    return None


def verify_mf(m: GradedMF) -> VerificationReport:
    p, r = len(m.even), len(m.odd)
    w = m.weights
    shapes_ok = (
        len(m.q_pm) == r and all(len(row) == p for row in m.q_pm)
        and len(m.q_mp) == p and all(len(row) == r for row in m.q_mp)
        and all(x.nvars == m.nvars for row in m.q_pm + m.q_mp for x in row)
        and m.nvars == w.nvars
    )
    report = VerificationReport(
        square=p == r, shapes_ok=shapes_ok,
        f_quasi_homogeneous=m.f.nvars == w.nvars and check_quasi_homogeneous(m.f, w),
    )
    if not shapes_ok:
        return report
    n = m.nvars
    report.residual_mp_pm = pmat_add(
        pmat_mul(m.q_mp, m.q_pm, r, n), pmat_identity(p, n, scalar=-m.f)
    )
    report.residual_pm_mp = pmat_add(
        pmat_mul(m.q_pm, m.q_mp, p, n), pmat_identity(r, n, scalar=-m.f)
    )
    for j, l in enumerate(m.odd):
        for i, k in enumerate(m.even):
            err = _entry_degree_ok(m.q_pm[j][i], Fraction(2 * (l - k), w.h), w)
            if err:
                report.homogeneity_failures.append(f"q_pm[{j}][{i}]: {err}")
            err = _entry_degree_ok(m.q_mp[i][j], 2 + Fraction(2 * (k - l), w.h), w)
            if err:
                report.homogeneity_failures.append(f"q_mp[{i}][{j}]: {err}")
    return report


# -- constructors ----------------------------------------------------------

def indecomposable(l: int, i: int, h: int) -> GradedMF:
    """M_{l,i}: tags (i | l+i) with q_pm = x^l and q_mp = x^(h-l)."""
    if not 1 <= l <= h - 1:
        raise ValueError(f"label l={l} outside 1..{h - 1}")
    return GradedMF.build(
        (i,), (l + i,), WeightSystem.univariate(h), x_power_f(h),
        ((Poly.x_pow(l),),), ((Poly.x_pow(h - l),),),
    )


def trivial_pair(kind: str, k: int, h: int) -> GradedMF:
    """The contractible rank-one objects: ``unit`` is (1, f), ``f-unit`` is (f, 1)."""
    f = x_power_f(h)
    one = Poly.const(1)
    if kind == "unit":
        return GradedMF.build((k,), (k,), WeightSystem.univariate(h), f, ((one,),), ((f,),))
    if kind == "f-unit":
        return GradedMF.build((k,), (k + h,), WeightSystem.univariate(h), f, ((f,),), ((one,),))
    raise ValueError(f"unknown trivial pair kind {kind!r}")


def translate(m: GradedMF, t: int) -> GradedMF:
    """The grading translation {2t/h}: every tag moves by t."""
    return GradedMF(
        GradedObject(tuple(k + t for k in m.even), tuple(l + t for l in m.odd), m.weights),
        m.f, m.q_pm, m.q_mp,
    )


def _shift_once(m: GradedMF, forward: bool) -> GradedMF:
    h = m.h
    if forward:
        even, odd = m.odd, tuple(k + h for k in m.even)
    else:
        even, odd = tuple(l - h for l in m.odd), m.even
    return GradedMF(GradedObject(even, odd, m.weights), m.f, m.q_mp, m.q_pm)


def shift(m: GradedMF, s: int) -> GradedMF:
    """[s]. One step swaps parities (even k -> odd k+h, odd l -> even l) and the two blocks."""
    for _ in range(abs(s)):
        m = _shift_once(m, s > 0)
    return m


def serre(m: GradedMF) -> GradedMF:
    """S = {-2/h} o [1]."""
    return translate(shift(m, 1), -1)


def direct_sum(ms: Sequence[GradedMF], weights: WeightSystem | None = None,
               f: Poly | None = None) -> GradedMF:
    ms = list(ms)
    if not ms:
        if weights is None or f is None:
            raise ValueError("an empty sum needs explicit weights and f")
        return zero_object(weights, f)
    weights = weights or ms[0].weights
    f = f if f is not None else ms[0].f
    for m in ms:
        if m.f != f or m.weights != weights:
            raise ValueError("direct summands must share f and the weight system")
    ps = [len(m.even) for m in ms]
    rs = [len(m.odd) for m in ms]
    n = len(ms)
    q_pm = pmat_block([[m.q_pm if a == b else None for b, m in enumerate(ms)]
                       for a, m in enumerate(ms)], rs, ps)
    q_mp = pmat_block([[m.q_mp if a == b else None for b, m in enumerate(ms)]
                       for a, m in enumerate(ms)], ps, rs)
    assert len(q_pm) == sum(rs) and n == len(ms)
    return GradedMF(
        GradedObject(sum((m.even for m in ms), ()), sum((m.odd for m in ms), ()), weights),
        f, q_pm, q_mp,
    )


def cone(T: "Morphism", check: bool = True) -> GradedMF:
    """Mapping cone of a closed degree-0 morphism ``T: a -> b``.

    The object is a[1] (+) b with odd operator ``[[Q', 0], [T, Q_b]]``. For the
    Maurer-Cartan equation to be equivalent to closedness of ``T``, the
    a[1]-block ``Q'`` is the block swap of ``Q_a`` with both blocks negated;
    this is isomorphic to ``shift(a, 1)`` via ``diag(1, -1)``.
    """
    from .homalg import m1

    if T.degree != 0:
        raise ValueError("cone needs a degree-0 morphism")
    if check and not m1(T).is_zero():
        raise ValueError("cone needs a closed morphism")
    a, b = T.source, T.target
    if a.f != b.f or a.weights != b.weights:
        raise ValueError("source and target live over different f")
    h = a.h
    pa, ra, pb, rb = len(a.even), len(a.odd), len(b.even), len(b.odd)
    t_pp, t_mm = T.block("++"), T.block("--")
    even = a.odd + b.even
    odd = tuple(k + h for k in a.even) + b.odd
    q_pm = pmat_block([[pmat_scale(a.q_mp, -1), None], [t_mm, b.q_pm]], [pa, rb], [ra, pb])
    q_mp = pmat_block([[pmat_scale(a.q_pm, -1), None], [t_pp, b.q_mp]], [ra, pb], [pa, rb])
    return GradedMF(GradedObject(even, odd, a.weights), a.f, q_pm, q_mp)


def knorrer_double(m: GradedMF, wt_y: int, wt_z: int) -> GradedMF:
    """A graded matrix factorization of ``f + y z`` built from one of ``f``.

    Even part ``k (+) (l - wt_y)``, odd part ``l (+) (k + wt_z)``, with
    ``q_pm = [[Q_pm, -y], [z, Q_mp]]`` and ``q_mp = [[Q_mp, y], [-z, Q_pm]]``.
    These are the unique tag shifts making every new entry homogeneous.
    """
    h = m.h
    if wt_y < 1 or wt_z < 1 or wt_y + wt_z != h:
        raise ValueError(f"need positive weights with wt_y + wt_z = h = {h}")
    n = m.nvars + 2
    weights = WeightSystem(m.weights.weights + (wt_y, wt_z), h)
    y = Poly.var(n - 2, n)
    z = Poly.var(n - 1, n)
    p, r = len(m.even), len(m.odd)
    ext = lambda mat: tuple(tuple(x.extend(n) for x in row) for row in mat)  # noqa: E731
    qpm, qmp = ext(m.q_pm), ext(m.q_mp)
    new_pm = pmat_block(
        [[qpm, pmat_identity(r, n, scalar=-y)], [pmat_identity(p, n, scalar=z), qmp]], [r, p], [p, r]
    )
    new_mp = pmat_block(
        [[qmp, pmat_identity(p, n, scalar=y)], [pmat_identity(r, n, scalar=-z), qpm]], [p, r], [r, p]
    )
    out = GradedMF(
        GradedObject(m.even + tuple(l - wt_y for l in m.odd),
                     m.odd + tuple(k + wt_z for k in m.even), weights),
        m.f.extend(n) + y * z, new_pm, new_mp,
    )
    if not verify_mf(out).passed:
        raise ArithmeticError("Knorrer double failed verification")
    return out
