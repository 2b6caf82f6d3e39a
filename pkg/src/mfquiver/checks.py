"""End-to-end verification runs shared by the CLI report, selftest and the acceptance suite.

Each check returns a ``CheckResult`` holding the verdict and the number of
assertions made. The first few failure messages are kept for reporting.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import WeightSystem, chi_by_division, is_regular_weight_system, milnor_number
from .decompose import (
    certificate_holds,
    count_indecomposables_mod2shift,
    decompose,
    labels_of,
    random_object,
)
from .homalg import Morphism, hom, m1, m2, slot_basis, verify_serre_duality
from .mfcore import (
    GradedMF,
    direct_sum,
    indecomposable,
    knorrer_double,
    serre,
    shift,
    verify_mf,
)
from .quiverlat import cartan_matrix_A, derived_indec_count_mod2, euler_matrix, matrix_power
from .stability import check_bridgeland, check_polar_form

MAX_REPORTED = 10


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def expect(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.passed = False
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": list(self.failures)}


def hom_table(h: int) -> CheckResult:
    """Hom(M_{k,0}, M_{l,0}[m]) is [k <= l] for m = 0 and vanishes for 0 < |m| <= 2h."""
    res = CheckResult(f"hom_table h={h}")
    objs = [indecomposable(k, 0, h) for k in range(1, h)]
    for k, a in enumerate(objs, 1):
        for l, b in enumerate(objs, 1):
            for m in range(-2 * h, 2 * h + 1):
                dim = hom(a, b, m).dim
                want = int(k <= l) if m == 0 else 0
                res.expect(dim == want, f"Hom(M_{k},0, M_{l},0[{m}]) = {dim}, expected {want}")
    return res


def serre_duality(h: int, tag_range: int = 2) -> CheckResult:
    res = CheckResult(f"serre_duality h={h}")
    rep = verify_serre_duality(h, tag_range)
    res.checked = rep.pairs_checked
    res.passed = rep.passed
    res.failures = rep.failures[:MAX_REPORTED]
    return res


def serre_power(h: int, window: int = 2) -> CheckResult:
    """S^h(M_{l,i}) and M_{l,i}[h-2] decompose to the same label."""
    res = CheckResult(f"serre_power h={h}")
    for l in range(1, h):
        for i in range(-window, window + 1):
            m = indecomposable(l, i, h)
            power = m
            for _ in range(h):
                power = serre(power)
            lhs, rhs = labels_of(power), labels_of(shift(m, h - 2))
            res.expect(lhs == rhs, f"S^{h}(M_{l},{i}) = {lhs} but [h-2] gives {rhs}")
    return res


def lattice(h: int) -> CheckResult:
    res = CheckResult(f"lattice h={h}")
    mf, quiver = euler_matrix(h, "mf"), euler_matrix(h, "quiver")
    res.expect(mf.A == quiver.A, f"Euler matrices differ: {mf.A} vs {quiver.A}")
    res.expect(mf.I == cartan_matrix_A(h - 1), f"A^-1 + A^-T = {mf.I} is not the Cartan matrix")
    res.expect(mf.A.det() == 1, "A is not unimodular")
    res.expect(matrix_power(mf.coxeter, h) == type(mf.A).identity(h - 1), "Coxeter matrix order")
    return res


def root_count(h: int) -> CheckResult:
    res = CheckResult(f"root_count h={h}")
    mf, quiver = count_indecomposables_mod2shift(h), derived_indec_count_mod2(h)
    res.expect(mf == quiver == (h - 1) * h, f"counts {mf} (mf), {quiver} (quiver), want {(h - 1) * h}")
    return res


def polar_form(h: int) -> CheckResult:
    res = CheckResult(f"polar_form h={h}")
    for l in range(1, h):
        for i in range(-h, h + 1):
            err = check_polar_form((l, i), h)
            res.expect(err is None, err or "")
    return res


def bridgeland(h: int, window: int = 2, seed: int = 0, corpus_size: int = 200) -> CheckResult:
    res = CheckResult(f"bridgeland h={h}")
    rep = check_bridgeland(h, window, seed, corpus_size)
    res.checked = sum(rep.counts.values())
    res.passed = rep.passed and rep.counts["hn"] >= corpus_size
    res.failures = [f"{k}: {m}" for k, v in rep.failures.items() for m in v][:MAX_REPORTED]
    return res


def _random_sum(h: int, rng: random.Random, max_summands: int = 2) -> GradedMF:
    labels = [(rng.randint(1, h - 1), rng.randint(-2, 2)) for _ in range(rng.randint(1, max_summands))]
    return direct_sum([indecomposable(l, i, h) for l, i in labels])


def random_morphism(source: GradedMF, target: GradedMF, degree: int, rng: random.Random) -> Morphism:
    n = len(slot_basis(source, target, degree))
    return Morphism(source, target, degree,
                    tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)))


def differential_identities(count: int = 1000, seed: int = 0, max_h: int = 6) -> CheckResult:
    """(m1)^2 = 0 and the graded Leibniz rule on random composable pairs."""
    res = CheckResult("differential_identities")
    rng = random.Random(f"leibniz:{seed}")
    for n in range(count):
        h = rng.randint(2, max_h)
        a, b, c = (_random_sum(h, rng) for _ in range(3))
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        phi = random_morphism(a, b, p, rng)
        psi = random_morphism(b, c, q, rng)
        res.expect(m1(m1(phi)).is_zero(), f"m1^2 != 0 on sample {n} (h={h}, degree {p})")
        lhs = m1(m2(psi, phi))
        rhs = m2(m1(psi), phi).scale((-1) ** p) - m2(psi, m1(phi))
        res.expect(lhs == rhs, f"Leibniz fails on sample {n} (h={h}, degrees {p}, {q})")
    return res


def decompose_roundtrip(h: int, count: int = 200, seed: int = 0) -> CheckResult:
    res = CheckResult(f"decompose_roundtrip h={h}")
    rng = random.Random(f"roundtrip:{h}:{seed}")
    for n in range(count):
        m, planted, trivial = random_object(h, rng)
        dec = decompose(m)
        res.expect(dec.labels == planted and dec.stripped_trivial == trivial,
                   f"object {n}: planted {planted} (+{trivial} trivial), got {dec.labels} "
                   f"(+{dec.stripped_trivial})")
        res.expect(certificate_holds(m, dec), f"object {n}: certificate does not reassemble")
    return res


def knorrer(h: int) -> CheckResult:
    """Doubles of every M_{l,0} for all splittings wt_y + wt_z = h allowed by the gcd rule."""
    res = CheckResult(f"knorrer h={h}")
    for l in range(1, h):
        m = indecomposable(l, 0, h)
        for wt_y in range(1, h):
            try:
                WeightSystem((1, wt_y, h - wt_y), h)
            except ValueError:
                continue
            try:
                ok = verify_mf(knorrer_double(m, wt_y, h - wt_y)).passed
            except ArithmeticError:
                ok = False
            res.expect(ok, f"double of M_{l},0 with weights ({wt_y}, {h - wt_y}) fails")
    return res


def weight_scan(max_h: int = 20) -> CheckResult:
    """Cyclotomic regularity vs exact division; mu = chi(1) must be an integer."""
    res = CheckResult(f"weight_scan h<={max_h}")
    for h in range(2, max_h + 1):
        for a in range(1, h):
            for b in range(a, h):
                for c in range(b, h):
                    wit = is_regular_weight_system(a, b, c, h)
                    _, rem = chi_by_division(a, b, c, h)
                    res.expect(wit.regular == (not rem), f"({a},{b},{c};{h}) regularity disagrees")
                    if wit.regular:
                        mu = milnor_number(a, b, c, h)
                        res.expect(mu.denominator == 1 and wit.chi.evaluate((1,)) == mu,
                                   f"({a},{b},{c};{h}) mu = {mu} vs chi(1) = {wit.chi.evaluate((1,))}")
    return res
