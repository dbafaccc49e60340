"""Laurent polynomials in q with half-integer exponents and integer coefficients.

An exponent is stored in half units: the key ``e`` stands for ``q^(e/2)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .kernels import poly_mul

Scalar = int


class NonExactDivision(ArithmeticError):
    """Raised when a Laurent polynomial division leaves a remainder."""


class HalfLaurent:
    """Immutable sparse element of Z[q^(+-1/2)]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[int, int]) -> "HalfLaurent":
        obj = cls.__new__(cls)
        obj._terms = {e: terms[e] for e in sorted(terms)}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "HalfLaurent":
        return cls._from_clean({})

    @classmethod
    def constant(cls, c: int) -> "HalfLaurent":
        return cls._from_clean({0: c} if c else {})

    @classmethod
    def monomial(cls, half_exp: int, c: int = 1) -> "HalfLaurent":
        return cls._from_clean({half_exp: c} if c else {})

    @classmethod
    def coerce(cls, value: Union["HalfLaurent", int]) -> "HalfLaurent":
        if isinstance(value, HalfLaurent):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot interpret {value!r} as a Laurent polynomial")

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        """Copy of the half-exponent -> coefficient map."""
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, half_exp: int) -> int:
        return self._terms.get(half_exp, 0)

    @property
    def top(self) -> int:
        """Largest half-exponent."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return next(reversed(self._terms))

    @property
    def bottom(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return next(iter(self._terms))

    @property
    def degree(self) -> Fraction:
        return Fraction(self.top, 2)

    def is_constant(self) -> bool:
        return not self._terms or list(self._terms) == [0]

    # -- ring structure -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HalfLaurent._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent._from_clean({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        if not self._terms or not other._terms:
            return HalfLaurent.zero()
        return HalfLaurent._from_clean(poly_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def scalar_mul(self, c: int) -> "HalfLaurent":
        if not c:
            return HalfLaurent.zero()
        return HalfLaurent._from_clean({e: c * v for e, v in self._terms.items()})

    def __pow__(self, n: int) -> "HalfLaurent":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = HalfLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfLaurent.constant(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- operations ---------------------------------------------------------
    def substitute_power(self, k: int) -> "HalfLaurent":
        """p(q) -> p(q^k)."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if k == 1:
            return self
        return HalfLaurent._from_clean({k * e: c for e, c in self._terms.items()})

    def reflect(self) -> "HalfLaurent":
        """p(q) -> p(1/q)."""
        return HalfLaurent._from_clean({-e: c for e, c in self._terms.items()})

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def codegree_coeff(self, cod: int) -> int:
        """Coefficient of q^(deg - cod)."""
        if not self._terms:
            raise ValueError("codegree is undefined for the zero polynomial")
        if cod < 0:
            raise ValueError("codegree must be nonnegative")
        return self._terms.get(self.top - 2 * cod, 0)

    def exact_divide(self, d: "HalfLaurent") -> "HalfLaurent":
        """Quotient by long division from the top; any remainder is an error."""
        d = HalfLaurent.coerce(d)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return HalfLaurent.zero()
        rem = dict(self._terms)
        dtop, dbot = d.top, d.bottom
        dlead = d._terms[dtop]
        lowest = self.bottom - dbot
        quot: dict[int, int] = {}
        while rem:
            rtop = max(rem)
            shift = rtop - dtop
            if shift < lowest:
                raise NonExactDivision(f"{self} is not divisible by {d}")
            c, r = divmod(rem[rtop], dlead)
            if r:
                raise NonExactDivision(f"{self} is not divisible by {d}")
            quot[shift] = c
            for e, v in d._terms.items():
                key = e + shift
                nv = rem.get(key, 0) - c * v
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        return HalfLaurent._from_clean(quot)

    # -- rendering ----------------------------------------------------------
    def to_text(self) -> str:
        """Canonical ``c*q^(a/2)`` rendering, descending exponents."""
        if not self._terms:
            return "0"
        parts = []
        for i, e in enumerate(reversed(self._terms)):
            c = self._terms[e]
            if i == 0:
                parts.append(f"{c}*q^({e}/2)")
            elif c < 0:
                parts.append(f" - {-c}*q^({e}/2)")
            else:
                parts.append(f" + {c}*q^({e}/2)")
        return "".join(parts)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items(), reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "HalfLaurent":
        return cls((int(e), int(c)) for e, c in data.items())

    def __repr__(self) -> str:
        return f"HalfLaurent({self.to_text()})"

    __str__ = to_text


def bracket_minus(alpha: int) -> HalfLaurent:
    """Quantum bracket q^(alpha/2) - q^(-alpha/2)."""
    if alpha < 1:
        raise ValueError("the bracket is only defined for positive integers")
    return HalfLaurent._from_clean({-alpha: -1, alpha: 1})


def bracket_minus_sq(alpha: int) -> HalfLaurent:
    """[alpha]_-^2 = q^alpha - 2 + q^-alpha."""
    if alpha < 1:
        raise ValueError("the bracket is only defined for positive integers")
    return HalfLaurent._from_clean({-2 * alpha: 1, 0: -2, 2 * alpha: 1})


Q = HalfLaurent.monomial(2)  # the polynomial q


def add(p: HalfLaurent, r: HalfLaurent) -> HalfLaurent:
    return p + r


def mul(p: HalfLaurent, r: HalfLaurent) -> HalfLaurent:
    return p * r


def scalar_mul(p: HalfLaurent, c: int) -> HalfLaurent:
    return p.scalar_mul(c)


def substitute_power(p: HalfLaurent, k: int) -> HalfLaurent:
    return p.substitute_power(k)


def exact_divide(p: HalfLaurent, d: HalfLaurent | int) -> HalfLaurent:
    return p.exact_divide(HalfLaurent.coerce(d))


def eval_at_one(p: HalfLaurent) -> int:
    return p.eval_at_one()


def codegree_coeff(p: HalfLaurent, cod: int) -> int:
    return p.codegree_coeff(cod)
