"""Oracle sweep behind ``nestedforms selftest``."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .arith import is_discriminant, is_fundamental, kronecker
from .forms import Form, act
from .nesting import descend, exceptional_orbit, fiber
from .reduction import class_set, normalize_coprime


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)


def check_class_counts(dmin: int, dmax: int) -> CheckResult:
    res = CheckResult("class_set vs exhaustive count")
    for D in range(dmin, dmax + 1):
        if D >= 0 or not is_discriminant(D):
            continue
        res.cases += 1
        got = [tuple(q) for q in class_set(D)]
        want = oracle.reduced_primitive_forms(D)
        if got != want:
            res.fail(f"D={D}: {len(got)} != {len(want)}")
    return res


def check_descent(dmin: int, dmax: int, primes) -> list[CheckResult]:
    surj = CheckResult("descent is onto class_set(D)")
    card = CheckResult("fiber sizes f - (D/f) sum to h(Df^2)")
    witness = CheckResult("descent witnesses")
    for D in range(dmin, dmax + 1):
        if D >= 0 or not is_fundamental(D):
            continue
        base = class_set(D)
        for f in primes:
            top = class_set(D * f * f)
            surj.cases += 1
            images = set()
            for Q in top:
                r = descend(Q, f)
                witness.cases += 1
                if act(r.base, r.matrix) != Q or r.matrix.det != f:
                    witness.fail(f"D={D} f={f} Q={Q}")
                images.add(r.base)
            if images != set(base.members):
                surj.fail(f"D={D} f={f}")
            if D >= -4:
                continue
            card.cases += 1
            total = 0
            for q in base:
                q1, _ = normalize_coprime(q, f)
                n = len(fiber(q1, f))
                total += n
                if n != f - kronecker(D, f):
                    card.fail(f"D={D} f={f} q={q}: fiber {n}")
            if total != len(top):
                card.fail(f"D={D} f={f}: sum {total} != {len(top)}")
    return [surj, card, witness]


def check_exceptional(primes) -> CheckResult:
    res = CheckResult("D=-3,-4 collapse (formula, reduction, orbit)")
    for D, q in ((-4, (1, 0, 1)), (-3, (1, 1, 1))):
        q = Form(*q)
        for f in primes:
            res.cases += 1
            by_reduction = {frozenset(c.indices) for c in fiber(q, f)}
            by_formula = {exceptional_orbit(g, f, D) for c in by_reduction for g in c}
            report = oracle.exhaustive_fiber_check(tuple(q), f)
            by_orbit = {frozenset(g) for g in report.groups}
            if report.inconclusive or not (by_reduction == by_formula == by_orbit):
                res.fail(f"D={D} f={f}")
    return res


def run(dmin: int = -500, dmax: int = -3, primes=(3, 5, 7)) -> list[CheckResult]:
    results = [check_class_counts(dmin, dmax)]
    results += check_descent(dmin, dmax, primes)
    results.append(check_exceptional(primes))
    return results
