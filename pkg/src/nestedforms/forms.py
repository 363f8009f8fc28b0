"""Integer binary quadratic forms and the right action of 2x2 integer matrices.

Convention: the matrix (p r / s t) substitutes x -> p*x + r*y, y -> s*x + t*y,
so ``q.act(M)(x, y) == q(p*x + r*y, s*x + t*y)`` and
``q.act(M).act(N) == q.act(M @ N)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .arith import is_perfect_square, xgcd
from .errors import FormatError, PreconditionError


@dataclass(frozen=True)
class IntMatrix2:
    """Integer matrix with rows (p, r) and (s, t)."""

    p: int
    r: int
    s: int
    t: int

    @property
    def det(self) -> int:
        return self.p * self.t - self.r * self.s

    def __matmul__(self, other: IntMatrix2) -> IntMatrix2:
        return IntMatrix2(
            self.p * other.p + self.r * other.s,
            self.p * other.r + self.r * other.t,
            self.s * other.p + self.t * other.s,
            self.s * other.r + self.t * other.t,
        )

    def __neg__(self) -> IntMatrix2:
        return IntMatrix2(-self.p, -self.r, -self.s, -self.t)

    def __iter__(self):
        yield from (self.p, self.r, self.s, self.t)

    def inverse(self) -> IntMatrix2:
        """Inverse of a matrix of determinant +-1."""
        d = self.det
        if d not in (1, -1):
            raise PreconditionError(f"matrix {self} has determinant {d}, not invertible over Z")
        return IntMatrix2(d * self.t, -d * self.r, -d * self.s, d * self.p)

    def adjugate(self) -> IntMatrix2:
        return IntMatrix2(self.t, -self.r, -self.s, self.p)

    @property
    def is_unimodular(self) -> bool:
        return self.det == 1

    def __str__(self) -> str:
        return f"[{self.p} {self.r}; {self.s} {self.t}]"

    def to_list(self) -> list[list[int]]:
        return [[self.p, self.r], [self.s, self.t]]


IDENTITY = IntMatrix2(1, 0, 0, 1)
S = IntMatrix2(0, -1, 1, 0)
T = IntMatrix2(1, 1, 0, 1)


def T_pow(k: int) -> IntMatrix2:
    return IntMatrix2(1, k, 0, 1)


def unimodular_with_first_column(x: int, y: int) -> IntMatrix2:
    """A determinant-1 matrix whose first column is (x, y); needs gcd(x, y) = 1."""
    g, lam, mu = xgcd(x, y)
    if g != 1:
        raise PreconditionError(f"column ({x}, {y}) is not primitive")
    # x*lam - (-mu)*y = 1
    return IntMatrix2(x, -mu, y, lam)


@dataclass(frozen=True)
class Form:
    """The form a*x^2 + b*x*y + c*y^2 with non-square discriminant.

    Definite forms must be positive definite (a > 0).
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"form coefficients must be int, got {v!r}")
        d = self.disc
        if is_perfect_square(d):
            raise PreconditionError(f"discriminant {d} of {self} is a perfect square")
        if d < 0 and self.a <= 0:
            raise PreconditionError(f"definite form {self} is not positive definite")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        yield from (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"

    def act(self, M: IntMatrix2) -> Form:
        return act(self, M)

    @property
    def content(self) -> int:
        return content(self)

    @property
    def is_primitive(self) -> bool:
        return content(self) == 1


def discriminant(q: Form) -> int:
    return q.b * q.b - 4 * q.a * q.c


def content(q: Form) -> int:
    return gcd(gcd(q.a, q.b), q.c)


def is_primitive(q: Form) -> bool:
    return content(q) == 1


def act(q: Form, M: IntMatrix2) -> Form:
    """Right action q . M, i.e. the form (x, y) -> q(p*x + r*y, s*x + t*y)."""
    if M.det == 0:
        raise PreconditionError(f"matrix {M} has zero determinant")
    p, r, s, t = M
    first = q(p, s)
    last = q(r, t)
    return Form(first, q(p + r, s + t) - first - last, last)


def disc_scaling_check(q: Form, M: IntMatrix2) -> bool:
    """Whether disc(q . M) == det(M)^2 * disc(q)."""
    return discriminant(act(q, M)) == M.det ** 2 * discriminant(q)


def principal_form(D: int) -> Form:
    """x^2 - (D/4) y^2 or x^2 + xy + ((1 - D)/4) y^2."""
    if D % 4 == 0:
        return Form(1, 0, -D // 4)
    if D % 4 == 1:
        return Form(1, 1, (1 - D) // 4)
    raise PreconditionError(f"{D} is not 0 or 1 mod 4")


_FORM_RE = re.compile(r"^\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$")


def parse_form(text: str) -> Form:
    m = _FORM_RE.match(text)
    if not m:
        raise FormatError(f"cannot parse form literal {text!r}; expected '(a,b,c)'")
    return Form(*(int(g) for g in m.groups()))


def format_form(q: Form) -> str:
    return str(q)
