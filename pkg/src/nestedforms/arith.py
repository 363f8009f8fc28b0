"""Exact integer helpers: Bezout coefficients, Legendre symbol, primality."""

from math import gcd, isqrt

from .errors import PreconditionError

# Deterministic Miller-Rabin below 3.3e24 (covers every 64-bit input).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, lam, mu) with g = gcd(a, b) > 0 and lam*a + mu*b = g."""
    if a == 0 and b == 0:
        raise PreconditionError("undefined gcd: both arguments are zero")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def modinv(a: int, m: int) -> int:
    g, lam, _ = xgcd(a, m)
    if g != 1:
        raise PreconditionError(f"{a} is not invertible modulo {m}")
    return lam % abs(m)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_odd_prime(f: int) -> bool:
    if f < 3 or f % 2 == 0:
        return False
    for p in _MR_BASES:
        if f == p:
            return True
        if f % p == 0:
            return False
    d, s = f - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, f)
        if x == 1 or x == f - 1:
            continue
        for _ in range(s - 1):
            x = x * x % f
            if x == f - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    return n == 2 or is_odd_prime(n)


def kronecker(D: int, f: int) -> int:
    """Legendre symbol (D/f) for an odd prime f, by Euler's criterion."""
    if not is_odd_prime(f):
        raise PreconditionError(f"unsupported modulus: {f} is not an odd prime")
    r = pow(D % f, (f - 1) // 2, f)
    return -1 if r == f - 1 else r


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return n != 0


def is_discriminant(D: int) -> bool:
    """True for non-square integers congruent to 0 or 1 mod 4."""
    return D % 4 in (0, 1) and not is_perfect_square(D)


def check_discriminant(D: int) -> int:
    if not is_discriminant(D):
        raise PreconditionError(f"{D} is not a discriminant (non-square, 0 or 1 mod 4)")
    return D


def is_fundamental(D: int) -> bool:
    if not is_discriminant(D):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    m = D // 4
    return m % 4 in (2, 3) and is_squarefree(m)


def content3(a: int, b: int, c: int) -> int:
    return gcd(gcd(a, b), c)
