"""Exact phases, cyclotomic central charges, HN filtrations and a Bridgeland-axiom checker."""
from __future__ import annotations

import cmath
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby

from .algebra import CyclotomicInt, format_rational
from .decompose import Label, decompose, is_isomorphic, random_object
from .homalg import Morphism, hom
from .mfcore import GradedMF, cone, direct_sum, indecomposable, shift

POLAR_TOL = 1e-10
MASS_TOL = 1e-12


def label_phase(label: Label, h: int) -> Fraction:
    l, i = label
    return Fraction(l + 2 * i, h) - Fraction(1, 2)


def _tag_phase(even, odd, h: int) -> Fraction:
    n = len(even)
    return Fraction(sum(even) + sum(odd), n * h) - Fraction(1, 2)


def phase(m: GradedMF) -> Fraction:
    """Mean tag phase of the reduced object (contractible pairs removed first)."""
    reduced = decompose(m).reduced()
    if reduced.is_zero_object():
        raise ValueError("the zero object has no phase")
    return _tag_phase(reduced.even, reduced.odd, m.h)


def central_charge(m: GradedMF) -> CyclotomicInt:
    """sum over tags of w^k - w^l, exact in Z[w]/(w^h - 1)."""
    z = CyclotomicInt.zero(m.h)
    for k in m.even:
        z = z + CyclotomicInt.power(k, m.h)
    for l in m.odd:
        z = z - CyclotomicInt.power(l, m.h)
    return z


def mass_phase_float(z: CyclotomicInt) -> tuple[float, float]:
    if z.is_zero():
        raise ValueError("zero central charge has no phase")
    value = z.to_complex()
    if abs(value) < MASS_TOL:
        raise ValueError("central charge vanishes numerically")
    return abs(value), cmath.phase(value) / math.pi


def phases_agree_mod2(exact: Fraction, approx: float, tol: float = POLAR_TOL) -> bool:
    diff = (approx - float(exact)) % 2.0
    return min(diff, 2.0 - diff) <= tol


def is_semistable(m: GradedMF) -> bool:
    """All indecomposable summands share one phase (the zero object counts as semistable)."""
    labels = decompose(m).labels
    return len({label_phase(lab, m.h) for lab in labels}) <= 1


# -- Harder-Narasimhan filtrations -----------------------------------------------

@dataclass
class HNStep:
    phase: Fraction
    labels: list[Label]
    piece: GradedMF        # N_j
    partial: GradedMF      # M_j
    inclusion: Morphism    # M_{j-1} -> M_j
    cone_ok: bool


@dataclass
class HNFiltration:
    steps: list[HNStep]
    reassembly_ok: bool

    @property
    def phases(self) -> list[Fraction]:
        return [s.phase for s in self.steps]

    @property
    def passed(self) -> bool:
        strictly = all(a > b for a, b in zip(self.phases, self.phases[1:]))
        return strictly and self.reassembly_ok and all(s.cone_ok for s in self.steps)

    def to_json(self) -> dict:
        return {
            "filtration": [
                {"phase": format_rational(s.phase), "labels": [list(x) for x in s.labels]}
                for s in self.steps
            ],
            "passed": self.passed,
        }


def split_inclusion(sub: GradedMF, whole: GradedMF) -> Morphism:
    """The degree-0 inclusion of the leading summands ``sub`` into ``whole``."""
    vals = {("++", j, j): 1 for j in range(len(sub.even))}
    vals.update({("--", j, j): 1 for j in range(len(sub.odd))})
    return Morphism.from_slots(sub, whole, 0, vals)


def hn_filtration(m: GradedMF) -> HNFiltration:
    labels = decompose(m).labels
    if not labels:
        raise ValueError("the zero object has no HN filtration")
    h = m.h
    keyed = sorted(labels, key=lambda lab: (-label_phase(lab, h), lab))
    groups = [(p, list(g)) for p, g in groupby(keyed, key=lambda lab: label_phase(lab, h))]
    steps = []
    taken: list[Label] = []
    prev = direct_sum([], m.weights, m.f)
    for ph, group in groups:
        taken = taken + group
        partial = direct_sum([indecomposable(l, i, h) for l, i in taken], m.weights, m.f)
        piece = direct_sum([indecomposable(l, i, h) for l, i in group], m.weights, m.f)
        inc = split_inclusion(prev, partial)
        cone_ok = is_isomorphic(cone(inc), piece)
        steps.append(HNStep(ph, group, piece, partial, inc, cone_ok))
        prev = partial
    return HNFiltration(steps, is_isomorphic(prev, m))


# -- axiom checker -------------------------------------------------------------

@dataclass
class BridgelandReport:
    h: int
    window: int
    seed: int
    corpus_size: int
    failures: dict[str, list[str]] = field(
        default_factory=lambda: {"polar_form": [], "shift": [], "hom_vanishing": [], "hn": []}
    )
    counts: Counter = field(default_factory=Counter)

    @property
    def verdicts(self) -> dict[str, bool]:
        return {k: not v for k, v in self.failures.items()}

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "window": self.window,
            "seed": self.seed,
            "corpus_size": self.corpus_size,
            "verdicts": self.verdicts,
            "checked": dict(sorted(self.counts.items())),
            "failures": {k: v[:20] for k, v in self.failures.items()},
            "passed": self.passed,
        }


def check_polar_form(label: Label, h: int) -> str | None:
    l, _ = label
    mass, ph = mass_phase_float(central_charge(indecomposable(*label, h)))
    expected = 2 * math.sin(l * math.pi / h)
    if mass < -MASS_TOL or abs(mass - expected) > POLAR_TOL:
        return f"{label}: mass {mass} vs {expected}"
    if not phases_agree_mod2(label_phase(label, h), ph):
        return f"{label}: float phase {ph} vs {label_phase(label, h)}"
    return None


def check_bridgeland(h: int, i_window: int, seed: int = 0, corpus_size: int = 200) -> BridgelandReport:
    if h < 2:
        raise ValueError("need h >= 2")
    rep = BridgelandReport(h, i_window, seed, corpus_size)
    labels = [(l, i) for i in range(-i_window, i_window + 1) for l in range(1, h)]
    # (i) polar form of the central charge
    for lab in labels:
        rep.counts["polar_form"] += 1
        err = check_polar_form(lab, h)
        if err:
            rep.failures["polar_form"].append(err)
    # (ii) [1] moves P(phi) to P(phi + 1)
    for lab in labels:
        rep.counts["shift"] += 1
        (img,) = decompose(shift(indecomposable(*lab, h), 1)).labels
        if label_phase(img, h) != label_phase(lab, h) + 1:
            rep.failures["shift"].append(f"{lab}[1] = {img} has the wrong phase")
    # (iii) no maps from higher to lower phase
    for a in labels:
        for b in labels:
            if label_phase(a, h) > label_phase(b, h):
                rep.counts["hom_vanishing"] += 1
                dim = hom(indecomposable(*a, h), indecomposable(*b, h), 0).dim
                if dim:
                    rep.failures["hom_vanishing"].append(f"Hom({a}, {b}) has dimension {dim}")
    # (iv) HN filtrations on a seeded random corpus
    rng = random.Random(f"bridgeland:{h}:{seed}")
    for n in range(corpus_size):
        m, planted, _ = random_object(h, rng)
        rep.counts["hn"] += 1
        filt = hn_filtration(m)
        flat = sorted(lab for s in filt.steps for lab in s.labels)
        if not filt.passed or flat != planted:
            rep.failures["hn"].append(f"corpus object {n} (labels {planted})")
    return rep
