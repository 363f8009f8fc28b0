"""Forms of discriminant D versus forms of discriminant D*f^2, f an odd prime.

Lift matrices are R_g = (f g / 0 1) for 0 <= g < f and R_f = (1 0 / 0 f).
Every primitive form of discriminant D*f^2 is equivalent to q . R_g for some
primitive q of discriminant D; ``descend`` recovers the class of q, ``fiber``
lists the classes sitting above a given q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import is_discriminant, is_odd_prime, is_prime, modinv, xgcd
from .errors import PreconditionError
from .forms import IDENTITY, Form, IntMatrix2, T_pow, act, content
from .reduction import equivalent, normalize_coprime, reduce

S_INV = IntMatrix2(0, 1, -1, 0)


@dataclass(frozen=True)
class LiftIndex:
    g: int
    f: int

    def __post_init__(self):
        if self.f < 2:
            raise PreconditionError(f"lift conductor must be > 1, got {self.f}")
        if not 0 <= self.g <= self.f:
            raise PreconditionError(f"lift index {self.g} outside 0..{self.f}")

    def matrix(self) -> IntMatrix2:
        if self.g == self.f:
            return IntMatrix2(1, 0, 0, self.f)
        return IntMatrix2(self.f, self.g, 0, 1)

    @property
    def is_principal(self) -> bool:
        return self.g == self.f


def lift_matrix(g: int, f: int) -> IntMatrix2:
    return LiftIndex(g, f).matrix()


@dataclass(frozen=True)
class DescentResult:
    """``act(base, matrix) == form`` with det(matrix) == f."""

    form: Form
    base: Form
    matrix: IntMatrix2
    f: int


@dataclass(frozen=True)
class FiberClass:
    form: Form
    indices: tuple[int, ...]


def _require_odd_prime(f: int):
    if not is_odd_prime(f):
        raise PreconditionError(f"f = {f} must be an odd prime")


def _require_primitive(q: Form):
    if content(q) != 1:
        raise PreconditionError(f"{q} is not primitive")


def lift_g(q: Form, idx: LiftIndex) -> Form:
    """q . R_g; for g < f this is (f^2 a, f(2ag + b), ag^2 + bg + c)."""
    _require_primitive(q)
    return act(q, idx.matrix())


def primitive_lift_indices(q: Form, f: int) -> list[LiftIndex]:
    """Indices g for which q . R_g is primitive: q(g, 1) prime to f, plus g = f."""
    _require_primitive(q)
    _require_odd_prime(f)
    if gcd(q.a, f) != 1:
        raise PreconditionError(f"gcd(a, f) = gcd({q.a}, {f}) != 1; normalize_coprime first")
    out = [LiftIndex(g, f) for g in range(f) if q(g, 1) % f]
    out.append(LiftIndex(f, f))
    return out


def decompose_det_f(M: IntMatrix2, f: int) -> tuple[LiftIndex, IntMatrix2]:
    """Write M = R_g . U with U in SL2(Z); g is unique."""
    if not is_prime(f):
        raise PreconditionError(f"f = {f} must be prime")
    if M.det != f:
        raise PreconditionError(f"det {M} = {M.det} != {f}")
    p, r, s, t = M
    d, lam, mu = xgcd(s, t)
    if d == 1:
        g0 = lam * p + mu * r
        k = g0 // f
        U = IntMatrix2(mu + k * s, k * t - lam, s, t)
        idx = LiftIndex(g0 - k * f, f)
    else:
        # gcd(s, t) divides det = f, so it is f here
        U = IntMatrix2(p, r, s // f, t // f)
        idx = LiftIndex(f, f)
    return idx, U


def normalize_for_descent(Q: Form, f: int) -> tuple[Form, IntMatrix2]:
    """An equivalent (A, B', C') with f | B' and f^2 | C', via a translation."""
    A, B, _ = Q
    if gcd(2 * A, f) != 1:
        raise PreconditionError(f"leading coefficient not coprime: gcd(2*{A}, {f}) != 1")
    if Q.disc % (f * f):
        raise PreconditionError(f"disc {Q.disc} not divisible by {f}^2")
    _, lam, _ = xgcd(2 * A, f)
    M = T_pow(-lam * B)
    return act(Q, M), M


def descend(Q: Form, f: int) -> DescentResult:
    """Strip one factor f from the conductor of Q.

    Returns the base form of discriminant disc(Q)/f^2 (reduced when definite)
    together with a determinant-f matrix M such that base . M == Q.
    """
    _require_odd_prime(f)
    _require_primitive(Q)
    D, rem = divmod(Q.disc, f * f)
    if rem:
        raise PreconditionError(f"disc {Q.disc} not divisible by {f}^2")
    if not is_discriminant(D):
        raise PreconditionError(f"disc {Q.disc} / {f}^2 = {D} is not a discriminant")
    Q1, U1 = normalize_coprime(Q, f)
    Q2, U2 = normalize_for_descent(Q1, f)
    A, B, C = Q2
    q = Form(A, B // f, C // (f * f))
    # Q2 = q . R_f and Q2 = Q . W
    W = U1 @ U2
    M = IntMatrix2(1, 0, 0, f) @ W.inverse()
    if D < 0:
        q, V = reduce(q)
        M = V.inverse() @ M
    result = DescentResult(form=Q, base=q, matrix=M, f=f)
    assert act(q, M) == Q and M.det == f
    return result


def semi_equivalent(Q1: Form, Q2: Form, f: int) -> bool:
    if Q1.disc != Q2.disc:
        raise PreconditionError(f"discriminants differ: {Q1.disc} vs {Q2.disc}")
    if Q1.disc >= 0:
        raise PreconditionError("semi-equivalence is only decided for negative discriminants")
    b1 = descend(Q1, f).base
    b2 = descend(Q2, f).base
    return equivalent(b1, b2) is not None


def to_principal_lift(q: Form, idx: LiftIndex) -> tuple[Form, IntMatrix2]:
    """(q0, V) with q0 ~ q, V in SL2(Z) and q0 . R_f . V == q . R_g."""
    _require_primitive(q)
    if idx.is_principal:
        return q, IDENTITY
    q0 = act(q, IntMatrix2(idx.g, -1, 1, 0))
    return q0, S_INV


def integral_conjugate(U: IntMatrix2, f: int, q: Form) -> IntMatrix2 | None:
    """R_f . U . R_f^-1 when it is integral, else None.

    For gcd(a, f) = 1, q . (R_f U R_f^-1) has integer coefficients only if the
    conjugate itself is integral; a counterexample raises ArithmeticError.
    """
    if gcd(q.a, f) != 1:
        raise PreconditionError(f"gcd(a, f) = gcd({q.a}, {f}) != 1")
    if U.det != 1:
        raise PreconditionError(f"{U} is not in SL2(Z)")
    p, r, s, t = U
    if r % f == 0:
        return IntMatrix2(p, r // f, f * s, t)
    rf = Fraction(r, f)
    fs = f * s
    first = q(p, fs)
    last = q.a * rf * rf + q.b * rf * t + q.c * t * t
    mid = q(p + rf, fs + t) - first - last
    if all(Fraction(v).denominator == 1 for v in (first, mid, last)):
        raise ArithmeticError(f"integral action by non-integral conjugate of {U} on {q}")
    return None


def fiber(q: Form, f: int) -> list[FiberClass]:
    """Classes of discriminant disc(q)*f^2 above q, each with its lift indices."""
    if q.disc >= 0:
        raise PreconditionError("fiber needs a negative discriminant")
    groups: dict[Form, list[int]] = {}
    for idx in primitive_lift_indices(q, f):
        r, _ = reduce(lift_g(q, idx))
        groups.setdefault(r, []).append(idx.g)
    return [FiberClass(r, tuple(gs)) for r, gs in groups.items()]


def exceptional_partner(g: int, f: int, D: int) -> int:
    """Image of g under the index involution (D = -4) or 3-cycle (D = -3).

    Indices are points of the projective line mod f with g = f as infinity:
    D = -4 uses g -> -1/g and D = -3 uses g -> -1/g - 1.  These describe
    which lifts of x^2 + y^2, resp. x^2 + xy + y^2, are equivalent.
    """
    _require_odd_prime(f)
    if D not in (-3, -4):
        raise PreconditionError(f"no exceptional index map for D = {D}")
    if g == f:
        return 0 if D == -4 else f - 1
    if g == 0:
        return f
    inv = modinv(g, f)
    return (-inv) % f if D == -4 else (-inv - 1) % f


def exceptional_orbit(g: int, f: int, D: int) -> frozenset[int]:
    orbit = {g}
    h = exceptional_partner(g, f, D)
    while h not in orbit:
        orbit.add(h)
        h = exceptional_partner(h, f, D)
    return frozenset(orbit)
