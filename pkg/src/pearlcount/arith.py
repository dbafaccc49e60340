"""Arithmetic functions on positive integers and the three convolution products.

Functions passed to the convolutions are plain callables. They are memoized per
call through a small cache so a divisor value is evaluated once even when a
product is expanded twice (series loops hit the same divisors repeatedly).
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Callable, Protocol, TypeVar

from .qpoly import HalfLaurent

T = TypeVar("T")


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return tuple(small + large[::-1])


def divisors(n: int) -> list[int]:
    """Divisors of ``n`` in ascending order (trial division)."""
    _check_positive(n)
    return list(_divisors(n))


def sigma1(n: int) -> int:
    _check_positive(n)
    return sum(_divisors(n))


def euler_phi(n: int) -> int:
    _check_positive(n)
    return sum(1 for m in range(1, n + 1) if gcd(m, n) == 1)


def power(alpha: int) -> Callable[[int], int]:
    """The power function n -> n**alpha."""

    def eps(n: int) -> int:
        return n**alpha

    eps.__name__ = f"eps_{alpha}"
    return eps


def dirac(n: int) -> int:
    return 1 if n == 1 else 0


def one(n: int) -> int:
    return 1


def pointwise(u: Callable[[int], int], v: Callable[[int], int]) -> Callable[[int], int]:
    """Pointwise product n -> u(n) * v(n), e.g. ``pointwise(power(2), euler_phi)``."""
    return lambda n: u(n) * v(n)


def _memo(f: Callable[[int], T]) -> Callable[[int], T]:
    cache: dict[int, T] = {}

    def g(n: int) -> T:
        if n not in cache:
            cache[n] = f(n)
        return cache[n]

    return g


def convolve(u: Callable[[int], int], v: Callable[[int], int], n: int) -> int:
    """Classical Dirichlet convolution (u * v)(n) = sum_{k | n} u(k) v(n/k)."""
    _check_positive(n)
    u, v = _memo(u), _memo(v)
    return sum(u(k) * v(n // k) for k in _divisors(n))


def convolve_q(
    U: Callable[[int], HalfLaurent], V: Callable[[int], HalfLaurent], n: int
) -> HalfLaurent:
    """Deformed convolution (U * V)_n(q) = sum_{k | n} U_k(q) V_{n/k}(q^k).

    Not commutative; associative. Constant polynomials recover :func:`convolve`.
    """
    _check_positive(n)
    total = HalfLaurent.zero()
    for k in _divisors(n):
        Uk = HalfLaurent.coerce(U(k))
        if not Uk:
            continue
        total = total + Uk * HalfLaurent.coerce(V(n // k)).substitute_power(k)
    return total


class NStarSet(Protocol[T]):
    """An N*-set: each element knows its divisors and how to be divided."""

    def divisors_of(self, x: T) -> list[int]: ...

    def divide(self, x: T, n: int) -> T: ...


class IntegerAction:
    """N* acting on itself by multiplication."""

    def divisors_of(self, x: int) -> list[int]:
        return divisors(x)

    def divide(self, x: int, n: int) -> int:
        if x % n:
            raise ValueError(f"{n} does not divide {x}")
        return x // n


def convolve_action(u: Callable[[int], int], F: Callable, x, action: NStarSet):
    """Module convolution (u * F)(x) = sum_{n | x} u(n) F(x/n).

    When F is Laurent-valued the deformed rule applies:
    (u * F)(x)(q) = sum_{n | x} u(n) F(x/n)(q^n).
    """
    divs = action.divisors_of(x)
    if not divs or divs[0] != 1:
        raise ValueError("an N*-set element must have 1 among its divisors")
    terms = [(n, F(action.divide(x, n))) for n in divs]
    if any(isinstance(val, HalfLaurent) for _, val in terms):
        total = HalfLaurent.zero()
        for n, val in terms:
            c = u(n)
            if c:
                total = total + HalfLaurent.coerce(val).substitute_power(n) * c
        return total
    return sum(u(n) * val for n, val in terms)
