"""Brute-force cross-checks, deliberately sharing no code with the main modules.

Forms are handled as plain (a, b, c) tuples here; anything iterable over three
integers is accepted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt


@dataclass(frozen=True)
class OrbitBudget:
    max_coefficient: int
    max_steps: int = 10**6

    def __post_init__(self):
        if self.max_coefficient <= 0 or self.max_steps <= 0:
            raise ValueError("budget bounds must be positive")


def default_budget(*forms) -> OrbitBudget:
    m = max(abs(v) for q in forms for v in q)
    return OrbitBudget(64 * max(m, 1), 10**6)


def _neighbours(q):
    a, b, c = q
    yield (c, -b, a)  # S
    yield (a, b + 2 * a, a + b + c)  # T
    yield (a, b - 2 * a, a - b + c)  # T^-1


def orbit_component(q, bound: int, max_steps: int, target=None):
    """Forms reachable from q by S, T, T^-1 without exceeding ``bound``.

    Returns None when ``max_steps`` is exhausted first.  With ``target`` set,
    stops as soon as it is reached.
    """
    q = tuple(q)
    seen = {q}
    todo = deque([q])
    steps = 0
    while todo:
        if target in seen:
            return seen
        steps += 1
        if steps > max_steps:
            return None
        for n in _neighbours(todo.popleft()):
            if n not in seen and max(map(abs, n)) <= bound:
                seen.add(n)
                todo.append(n)
    return seen


def orbit_equivalent(q1, q2, budget: OrbitBudget | None = None):
    """True / False, or None when the search is inconclusive.

    For definite forms the reduction path of any form never grows its largest
    coefficient, so an exhausted search bounded by at least the inputs'
    coefficients is a proof of inequivalence.
    """
    q1, q2 = tuple(q1), tuple(q2)
    if budget is None:
        budget = default_budget(q1, q2)
    if q1[1] ** 2 - 4 * q1[0] * q1[2] != q2[1] ** 2 - 4 * q2[0] * q2[2]:
        return False
    if max(map(abs, q1 + q2)) > budget.max_coefficient:
        return None
    comp = orbit_component(q1, budget.max_coefficient, budget.max_steps, target=q2)
    if comp is None:
        return None
    return q2 in comp


def _valid_negative_disc(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")


def reduced_primitive_forms(D: int) -> list[tuple[int, int, int]]:
    """Scan (a, c) with a <= c and solve b^2 = D + 4ac."""
    _valid_negative_disc(D)
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        c = a
        while 4 * a * c + D <= a * a:
            bb = D + 4 * a * c
            if bb >= 0:
                b = isqrt(bb)
                if b * b == bb:
                    for sb in {b, -b}:
                        if abs(sb) > a:
                            continue
                        if sb < 0 and (b == a or a == c):
                            continue
                        if gcd(gcd(a, sb), c) == 1:
                            out.append((a, sb, c))
            c += 1
    return sorted(out)


def exhaustive_class_count(D: int) -> int:
    return len(reduced_primitive_forms(D))


def direct_lift(q, g: int, f: int):
    """q(f x + g y, y) for g < f and q(x, f y) for g = f, expanded by hand."""
    a, b, c = q
    if g == f:
        return (a, f * b, f * f * c)
    return (f * f * a, f * (2 * a * g + b), a * g * g + b * g + c)


@dataclass
class FiberReport:
    groups: list[tuple[int, ...]]
    inconclusive: bool

    @property
    def sizes(self) -> list[int]:
        return sorted(len(g) for g in self.groups)


def exhaustive_fiber_check(q, f: int, budget: OrbitBudget | None = None) -> FiberReport:
    """Group the primitive lifts of q by orbit search."""
    lifts = {}
    for g in range(f + 1):
        Q = direct_lift(q, g, f)
        if gcd(gcd(Q[0], Q[1]), Q[2]) == 1:
            lifts[g] = Q
    if budget is None:
        budget = default_budget(*lifts.values())
    groups = []
    pending = dict(lifts)
    inconclusive = False
    while pending:
        g0, Q0 = next(iter(pending.items()))
        comp = orbit_component(Q0, budget.max_coefficient, budget.max_steps)
        if comp is None:
            inconclusive = True
            comp = {Q0}
        group = tuple(g for g, Q in pending.items() if Q in comp)
        for g in group:
            del pending[g]
        groups.append(group)
    return FiberReport(groups, inconclusive)
