"""Integer helpers: factorisation, Euler phi, Moebius, Ramanujan sums, 2-adic valuation."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

INF = math.inf

Valuation = Union[int, float]  # an int, or math.inf for v2(0)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation by trial division, as ((p, k), ...)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def ramanujan_sum(lam: int, t: int) -> int:
    """c_lam(t): sum of omega_lam^(l*t) over the units l mod lam, evaluated exactly."""
    if lam < 1:
        raise ValueError(f"Ramanujan sum needs lam >= 1, got {lam}")
    g = math.gcd(t, lam)
    q = lam // g
    return mobius(q) * euler_phi(lam) // euler_phi(q)


@lru_cache(maxsize=None)
def ramanujan_row(lam: int) -> tuple[int, ...]:
    """c_lam(t) for t = 0 .. lam-1."""
    return tuple(ramanujan_sum(lam, t) for t in range(lam))


def v2(q: Union[int, Fraction]) -> Valuation:
    """2-adic valuation of a rational; v2(0) = inf."""
    q = Fraction(q)
    if q == 0:
        return INF
    num, den = q.numerator, q.denominator
    return _v2_int(num) - _v2_int(den)


def _v2_int(n: int) -> int:
    n = abs(n)
    return (n & -n).bit_length() - 1


def gcd_all(values: Iterable[int]) -> int:
    """gcd of a collection with gcd(0, m) = m; the empty or all-zero case gives 0."""
    if isinstance(values, np.ndarray):
        return int(np.gcd.reduce(np.abs(values.astype(np.int64)))) if values.size else 0
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g


def is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0
