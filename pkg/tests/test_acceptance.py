"""Acceptance gate: one verdict line per criterion, at the criterion's tolerance.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time

from mfquiver import checks

VERDICTS: list[str] = []


def _gate(number: int, title: str, tolerance: str, results: list[checks.CheckResult], started: float) -> None:
    ok = all(r.passed for r in results)
    total = sum(r.checked for r in results)
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} "
            f"({total} assertions, tolerance {tolerance}, {time.perf_counter() - started:.1f}s)")
    VERDICTS.append(line)
    failures = [f for r in results for f in r.failures][:5]
    assert ok, line + "\n" + "\n".join(failures)


def test_criterion_01_hom_table():
    t = time.perf_counter()
    _gate(1, "Hom(M_k0, M_l0[m]) = [k<=l][m=0], h=2..12", "exact",
          [checks.hom_table(h) for h in range(2, 13)], t)


def test_criterion_02_serre_duality():
    t = time.perf_counter()
    _gate(2, "Serre duality dims and full-rank trace pairings, h<=8, |i|,|j|<=2", "exact",
          [checks.serre_duality(h, 2) for h in range(2, 9)], t)


def test_criterion_03_serre_power():
    t = time.perf_counter()
    _gate(3, "S^h(M_li) = M_li[h-2], h<=12, |i|<=2", "exact",
          [checks.serre_power(h, 2) for h in range(2, 13)], t)


def test_criterion_04_lattice():
    t = time.perf_counter()
    _gate(4, "mf and quiver Euler matrices agree, A^-1 + A^-T = Cartan A_(h-1), h<=12", "exact",
          [checks.lattice(h) for h in range(2, 13)], t)


def test_criterion_05_root_count():
    t = time.perf_counter()
    _gate(5, "indecomposables mod [2] = (h-1)h on both sides, h<=12", "exact",
          [checks.root_count(h) for h in range(2, 13)], t)


def test_criterion_06_polar_form():
    t = time.perf_counter()
    _gate(6, "|Z| = 2 sin(l pi/h) and arg Z/pi = phase mod 2, h<=12, |i|<=h", "1e-10",
          [checks.polar_form(h) for h in range(2, 13)], t)


def test_criterion_07_bridgeland():
    t = time.perf_counter()
    _gate(7, "Bridgeland axioms (i)-(iv), h<=8, window 2, 200 HN objects per h", "exact / 1e-10",
          [checks.bridgeland(h, 2, seed=0, corpus_size=200) for h in range(2, 9)], t)


def test_criterion_08_algebraic_properties():
    t = time.perf_counter()
    results = [checks.differential_identities(count=1000, seed=0, max_h=6)]
    results += [checks.decompose_roundtrip(h, count=200, seed=0) for h in range(2, 9)]
    _gate(8, "m1^2 = 0 and Leibniz on 1000 morphisms; 200 decompose round-trips per h<=8", "exact",
          results, t)


def test_criterion_09_knorrer():
    t = time.perf_counter()
    _gate(9, "Knorrer doubles of M_l0 verify for x^h + yz, h<=8", "exact",
          [checks.knorrer(h) for h in range(2, 9)], t)


def test_criterion_10_weight_scan():
    t = time.perf_counter()
    _gate(10, "regularity vs exact division and integral mu, a<=b<=c<h<=20", "exact",
          [checks.weight_scan(20)], t)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
        print(VERDICTS[-1], flush=True)
    sys.exit(1 if failed else 0)
