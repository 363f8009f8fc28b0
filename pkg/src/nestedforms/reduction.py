"""Reduction of positive definite forms, equivalence witnesses and class sets."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import check_discriminant, prime_factors
from .forms import IDENTITY, S, Form, IntMatrix2, T_pow, act, content, unimodular_with_first_column
from .errors import PreconditionError


@dataclass(frozen=True)
class ClassSet:
    discriminant: int
    members: tuple[Form, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, q):
        return q in self.members


def is_reduced(q: Form) -> bool:
    a, b, c = q
    if q.disc >= 0:
        return False
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def _require_definite(q: Form):
    if q.disc >= 0:
        raise PreconditionError(f"indefinite reduction unsupported: disc{q} = {q.disc} >= 0")


def reduce(q: Form) -> tuple[Form, IntMatrix2]:
    """Gauss reduction; returns (r, U) with det U = 1 and q . U == r."""
    _require_definite(q)
    U = IDENTITY
    while True:
        a, b, _ = q
        # translate b into (-a, a]
        k = (a - b) // (2 * a)
        if k:
            M = T_pow(k)
            q, U = act(q, M), U @ M
        a, b, c = q
        if a > c or (a == c and b < 0):
            q, U = act(q, S), U @ S
            continue
        return q, U


def equivalent(q1: Form, q2: Form) -> IntMatrix2 | None:
    """A matrix U in SL2(Z) with q1 . U == q2, or None if the forms are inequivalent."""
    _require_definite(q1)
    _require_definite(q2)
    if q1.disc != q2.disc:
        return None
    r1, U1 = reduce(q1)
    r2, U2 = reduce(q2)
    if r1 != r2:
        return None
    return U1 @ U2.inverse()


def class_set(D: int) -> ClassSet:
    """Reduced primitive forms of discriminant D < 0, sorted lexicographically."""
    if D >= 0:
        raise PreconditionError(f"class_set needs D < 0, got {D}")
    check_discriminant(D)
    members = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (b < 0) and (-b == a or a == c):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            members.append(Form(a, b, c))
    members.sort(key=tuple)
    return ClassSet(D, tuple(members))


def class_number(D: int) -> int:
    return len(class_set(D))


def _coprime_candidates(radius: int):
    for r in range(1, radius + 1):
        for x in range(0, r + 1):
            for y in range(-r, r + 1):
                if max(abs(x), abs(y)) != r:
                    continue
                if x == 0 and y <= 0:
                    continue
                if gcd(x, y) == 1:
                    yield x, y


def normalize_coprime(q: Form, f: int) -> tuple[Form, IntMatrix2]:
    """An equivalent form whose leading coefficient is prime to f, with witness."""
    if f == 0:
        raise PreconditionError("f must be nonzero")
    if content(q) != 1:
        raise PreconditionError(f"{q} is not primitive")
    if gcd(q.a, f) == 1:
        return q, IDENTITY
    radius = 4 * len(prime_factors(f)) + 4
    for x, y in _coprime_candidates(radius):
        if gcd(q(x, y), f) == 1:
            U = unimodular_with_first_column(x, y)
            return act(q, U), U
    raise ArithmeticError(f"no value of {q} prime to {f} within radius {radius}")


_AUT_M4 = (IntMatrix2(1, 0, 0, 1), IntMatrix2(-1, 0, 0, -1), S, -S)
_AUT_M3 = (
    IntMatrix2(1, 0, 0, 1),
    IntMatrix2(-1, 0, 0, -1),
    IntMatrix2(0, -1, 1, 1),
    IntMatrix2(0, 1, -1, -1),
    IntMatrix2(1, 1, -1, 0),
    IntMatrix2(-1, -1, 1, 0),
)


def automorphisms(q: Form) -> list[IntMatrix2]:
    """The proper automorphs of a reduced definite form."""
    if not is_reduced(q):
        raise PreconditionError(f"{q} is not a reduced definite form")
    g = content(q)
    base = Form(q.a // g, q.b // g, q.c // g)
    if base == Form(1, 0, 1):
        return list(_AUT_M4)
    if base == Form(1, 1, 1):
        return list(_AUT_M3)
    return [IntMatrix2(1, 0, 0, 1), IntMatrix2(-1, 0, 0, -1)]
