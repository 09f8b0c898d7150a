"""Exhaustive sweeps comparing the closed forms with the localization oracles.

Each sweep returns a :class:`SweepReport`.  Formula sweeps fan out over rank
and (A, B) pairs through a process pool whose size comes from the
``PETERSON_WORKERS`` environment variable (default 1).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .bikelock import IdentityParams, verify_identity
from .bikelock_batch import identity_grid
from .constants import b_general_bits, nonvanishing
from .monomial import InternalConsistencyError, TMonomial
from .oracle import localize_product, subword_restriction_bits
from .restriction import restrict_bits
from .subsets import SubsetMask, members

__all__ = ["SweepReport", "worker_count", "verify_formula", "verify_oracle", "verify_identity_grid"]

MAX_COUNTEREXAMPLES = 10


@dataclass
class SweepReport:
    mode: str
    unit: str
    checked: int = 0
    mismatches: int = 0
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def record(self, item) -> None:
        self.mismatches += 1
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(item)

    def summary(self) -> str:
        return f"checked {self.checked} {self.unit}, {self.mismatches} mismatches ({self.elapsed:.2f}s)"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("PETERSON_WORKERS", "1")))
    except ValueError:
        return 1


def _all_subsets(n: int) -> list[int]:
    return [bits << 1 for bits in range(1 << (n - 1))]


def _check_pair(args) -> list[dict]:
    """Compare the closed form with the oracle for one product p_A p_B at rank
    n, over every C, together with the degree law and the positivity criterion."""
    a, b, n = args
    problems = []
    try:
        oracle = {C.bits: v for C, v in localize_product(SubsetMask(n, a), SubsetMask(n, b), n).items()}
    except InternalConsistencyError as exc:
        return [{"n": n, "A": members(a), "B": members(b), "error": str(exc)}]
    size = a.bit_count() + b.bit_count()
    for c in _all_subsets(n):
        got = b_general_bits(a, b, c)
        want = oracle.get(c, TMonomial())
        issue = None
        if got != want:
            issue = f"formula {got} vs oracle {want}"
        elif got and got.power != size - c.bit_count():
            issue = f"degree {got.power} != {size - c.bit_count()}"
        elif bool(got) != nonvanishing(SubsetMask(n, a), SubsetMask(n, b), SubsetMask(n, c)):
            issue = f"positivity criterion disagrees with {got}"
        if issue:
            problems.append({"n": n, "A": members(a), "B": members(b), "C": members(c), "issue": issue})
    return problems


def verify_formula(max_n: int, min_n: int = 2, workers: int | None = None) -> SweepReport:
    """Every (A, B) at every rank min_n..max_n: the formula, oracle, degree and
    positivity checks over all C.  ``checked`` counts (A, B) pairs."""
    start = time.perf_counter()
    report = SweepReport("formula", "pairs")
    jobs = [(a, b, n) for n in range(min_n, max_n + 1)
            for a in _all_subsets(n) for b in _all_subsets(n)]
    workers = workers or worker_count()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = pool.map(_check_pair, jobs, chunksize=64)
            outcomes = list(results)
    else:
        outcomes = [_check_pair(j) for j in jobs]
    for problems in outcomes:
        report.checked += 1
        for p in problems:
            report.record(p)
    report.extra["triples"] = sum(1 << (n - 1) for _, _, n in jobs)
    report.elapsed = time.perf_counter() - start
    return report


def verify_oracle(max_n: int, min_n: int = 2) -> SweepReport:
    """Closed-form restrictions against the subword oracle for every A inside C."""
    start = time.perf_counter()
    report = SweepReport("oracle", "(A, C) pairs")
    for n in range(min_n, max_n + 1):
        for c in _all_subsets(n):
            free = members(c)
            for r in range(len(free) + 1):
                for sub in combinations(free, r):
                    a = sum(1 << i for i in sub)
                    report.checked += 1
                    got, want = restrict_bits(a, c), subword_restriction_bits(a, c)
                    if got != want:
                        report.record({"n": n, "A": members(a), "C": members(c),
                                       "issue": f"closed form {got} vs subwords {want}"})
    report.elapsed = time.perf_counter() - start
    return report


def verify_identity_grid(max_m: int = 3, max_n: int = 3, max_entry: int = 5,
                         max_width: int = 12, bijection: bool = True) -> SweepReport:
    """One certificate per grid point; any count disagreement or failed
    bijection check is a mismatch."""
    start = time.perf_counter()
    report = SweepReport("identity", "parameter points")
    vacuous = 0
    matrices = 0
    for p in identity_grid(max_m, max_n, max_entry, max_width):
        cert = verify_identity(p, bijection=bijection)
        report.checked += 1
        vacuous += cert.vacuous
        matrices += cert.size_S
        if not cert.ok:
            failed = [k for k, v in cert.checks.items() if not v]
            report.record({"params": vars(p), "lhs": str(cert.lhs), "rhs": str(cert.rhs),
                           "size_S": cert.size_S, "size_V": cert.size_V, "failed": failed})
    report.extra.update(vacuous=vacuous, matrices_per_side=matrices)
    report.elapsed = time.perf_counter() - start
    return report
