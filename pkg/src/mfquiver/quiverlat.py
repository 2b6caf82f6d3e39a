"""Linear A_n quiver representations, Euler matrices, Cartan lattices and K0 classes.

The quiver is ``1 -> 2 -> ... -> n`` with ``n = h - 1``. Hom and Ext^1
between representations are the kernel and cokernel of the standard map

    (f_v)_v  |->  (V_a f_s - f_t U_a)_{a : s -> t}

which is exact in degree 1 because path algebras of quivers are hereditary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import CyclotomicInt, RatMatrix
from .homalg import euler_char, hom, hom_shifted
from .mfcore import GradedMF, indecomposable
from .decompose import count_indecomposables_mod2shift
from .stability import central_charge


@dataclass(frozen=True)
class Representation:
    """Vector spaces ``k^dims[v]`` at vertices ``1..n`` and maps along ``v -> v+1``."""

    dims: tuple[int, ...]
    maps: tuple[RatMatrix, ...]  # maps[v] : vertex v+1 -> vertex v+2 (0-based)

    @property
    def n(self) -> int:
        return len(self.dims)


@dataclass(frozen=True, order=True)
class IntervalModule:
    """The indecomposable supported on vertices ``start..end`` with identity maps."""

    start: int
    end: int
    n: int

    def __post_init__(self):
        if not 1 <= self.start <= self.end <= self.n:
            raise ValueError(f"interval [{self.start}, {self.end}] outside 1..{self.n}")

    def representation(self) -> Representation:
        dims = tuple(int(self.start <= v <= self.end) for v in range(1, self.n + 1))
        maps = tuple(RatMatrix([[1]] * dims[v + 1], cols=dims[v]) if dims[v] and dims[v + 1]
                     else RatMatrix.zeros(dims[v + 1], dims[v]) for v in range(self.n - 1))
        return Representation(dims, maps)

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


def intervals(n: int) -> list[IntervalModule]:
    return [IntervalModule(p, q, n) for p in range(1, n + 1) for q in range(p, n + 1)]


def _hom_map(u: Representation, v: Representation) -> RatMatrix:
    """Matrix of ``(f_v) -> (V_a f_s - f_t U_a)``; variables are entries of each f_v."""
    if u.n != v.n:
        raise ValueError("representations of different quivers")
    offsets, total = [], 0
    for a, b in zip(u.dims, v.dims):
        offsets.append(total)
        total += a * b
    rows = []
    for s in range(u.n - 1):
        t = s + 1
        ua, va = u.maps[s], v.maps[s]
        # equation entry (r, c) of the dims[t] x dims[s] matrix V_a f_s - f_t U_a
        for r in range(v.dims[t]):
            for c in range(u.dims[s]):
                row = [0] * total
                for mid in range(v.dims[s]):  # V_a[r][mid] * f_s[mid][c]
                    row[offsets[s] + mid * u.dims[s] + c] += va[r, mid]
                for mid in range(u.dims[t]):  # f_t[r][mid] * U_a[mid][c]
                    row[offsets[t] + r * u.dims[t] + mid] -= ua[mid, c]
                rows.append(row)
    return RatMatrix(rows, cols=total)


def rep_hom_ext(u: Representation, v: Representation) -> tuple[int, int]:
    d = _hom_map(u, v)
    rank = d.rank()
    return d.cols - rank, d.rows - rank


def interval_hom_dim(u: IntervalModule, v: IntervalModule, ext_degree: int = 0) -> int:
    if u.n != v.n:
        raise ValueError("interval modules over different quivers")
    if ext_degree not in (0, 1):
        raise ValueError("ext_degree must be 0 or 1")
    return rep_hom_ext(u.representation(), v.representation())[ext_degree]


def interval_hom_closed_form(u: IntervalModule, v: IntervalModule) -> int:
    """Hom between intervals for ``1 -> ... -> n``: ``v.start <= u.start <= v.end <= u.end``."""
    return int(v.start <= u.start <= v.end <= u.end)


def projectives(n: int) -> list[IntervalModule]:
    """Intervals with vanishing Ext^1 into every interval, ordered so Homs point forward."""
    mods = intervals(n)
    proj = [p for p in mods if all(interval_hom_dim(p, x, 1) == 0 for x in mods)]
    # forward order: more nonzero Homs to the others comes first
    out_degree = {p: sum(interval_hom_dim(p, q, 0) > 0 for q in proj) for p in proj}
    return sorted(proj, key=lambda p: (-out_degree[p], p))


def derived_indec_count_mod2(h: int) -> int:
    """Indecomposables of D^b(mod B) up to [2]: each interval X gives X and X[1]."""
    if h < 2:
        raise ValueError("need h >= 2")
    return len(intervals(h - 1)) * 2


def cartan_matrix_A(n: int) -> RatMatrix:
    if n < 1:
        raise ValueError("need n >= 1")
    return RatMatrix([[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)]
                      for i in range(n)], cols=n)


@dataclass
class EulerData:
    A: RatMatrix
    I: RatMatrix
    coxeter: RatMatrix

    @property
    def serre_k0(self) -> RatMatrix:
        """Action of the Serre functor on K0 coordinates: ``A^-1 A^T``."""
        return self.A.inverse() @ self.A.T

    def to_json(self) -> dict:
        return {"A": self.A.to_int_rows(), "I": self.I.to_int_rows(),
                "coxeter": self.coxeter.to_int_rows()}


def euler_data(a: RatMatrix) -> EulerData:
    inv = a.inverse()
    return EulerData(a, inv + inv.T, -(a.T @ inv))


def exceptional_collection(h: int) -> list[GradedMF]:
    return [indecomposable(k, 0, h) for k in range(1, h)]


def euler_matrix(h: int, source: str = "mf") -> EulerData:
    if h < 2:
        raise ValueError("need h >= 2")
    if source == "mf":
        objs = exceptional_collection(h)
        a = RatMatrix([[euler_char(x, y) for y in objs] for x in objs])
    elif source == "quiver":
        proj = projectives(h - 1)
        a = RatMatrix([[interval_hom_dim(p, q, 0) - interval_hom_dim(p, q, 1) for q in proj]
                       for p in proj])
    else:
        raise ValueError("source must be 'mf' or 'quiver'")
    return euler_data(a)


def matrix_power(m: RatMatrix, e: int) -> RatMatrix:
    out = RatMatrix.identity(m.rows)
    for _ in range(e):
        out = out @ m
    return out


def k0_class(m: GradedMF, h: int | None = None, euler: EulerData | None = None) -> tuple[int, ...]:
    """Coordinates of [m] in the basis [M_{1,0}], ..., [M_{h-1,0}]."""
    h = m.h if h is None else h
    if h != m.h:
        raise ValueError("h does not match the object")
    a = (euler or euler_matrix(h, "mf")).A
    rhs = [euler_char(e, m) for e in exceptional_collection(h)]
    v = a.solve(rhs)
    if any(x.denominator != 1 for x in v):
        raise ArithmeticError("K0 class is not integral")
    return tuple(int(x) for x in v)


def charge_from_k0(v: Sequence[int], h: int) -> CyclotomicInt:
    z = CyclotomicInt.zero(h)
    for c, e in zip(v, exceptional_collection(h)):
        z = z + c * central_charge(e)
    return z


@dataclass
class EquivalenceReport:
    h: int
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"h": self.h, "checks": dict(self.checks), "details": self.details,
                "passed": self.passed}


HomTable = list[list[int]]


def mf_hom_table(h: int) -> HomTable:
    objs = exceptional_collection(h)
    return [[hom(x, y, 0).dim for y in objs] for x in objs]


def quiver_hom_table(h: int) -> HomTable:
    proj = projectives(h - 1)
    return [[interval_hom_dim(p, q, 0) for q in proj] for p in proj]


def equivalence_report(h: int, mf_table: Callable[[int], HomTable] = mf_hom_table) -> EquivalenceReport:
    """Numerical evidence for the equivalence with modules over the quiver algebra.

    ``mf_table`` is injectable so a perturbed table can serve as a negative control.
    """
    if h < 2:
        raise ValueError("need h >= 2")
    rep = EquivalenceReport(h)
    n = h - 1
    ta, tb = mf_table(h), quiver_hom_table(h)
    rep.checks["hom_tables"] = ta == tb
    rep.details["mf_hom_table"] = ta
    rep.details["quiver_hom_table"] = tb
    rep.details["projectives"] = [str(p) for p in projectives(n)]

    objs = exceptional_collection(h)
    higher = []
    for i, x in enumerate(objs):
        for j, y in enumerate(objs):
            for m in range(-2 * h, 2 * h + 1):
                if m and hom_shifted(x, y, m).dim:
                    higher.append([i + 1, j + 1, m])
    proj = projectives(n)
    quiver_ext = [[i + 1, j + 1] for i, p in enumerate(proj) for j, q in enumerate(proj)
                  if interval_hom_dim(p, q, 1)]
    rep.checks["no_higher_ext"] = not higher and not quiver_ext
    rep.details["higher_ext_witnesses"] = higher + quiver_ext

    mf_count, quiver_count = count_indecomposables_mod2shift(h), derived_indec_count_mod2(h)
    rep.checks["indecomposable_counts"] = mf_count == quiver_count
    rep.details["counts"] = {"mf": mf_count, "quiver": quiver_count}

    e_mf, e_q = euler_matrix(h, "mf"), euler_matrix(h, "quiver")
    rep.checks["euler_matrices"] = e_mf.A == e_q.A
    rep.details["A"] = e_mf.A.to_int_rows()
    rep.details["I"] = e_mf.I.to_int_rows()
    rep.details["I_is_cartan"] = e_mf.I == cartan_matrix_A(n)
    return rep
