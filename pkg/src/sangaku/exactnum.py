"""Exact arithmetic: rationals and numbers a + b*sqrt(k1) + c*sqrt(k2) + d*sqrt(m).

Rationals are :class:`fractions.Fraction`.  :class:`AlgNum` is an element of
Q(sqrt(k1), sqrt(k2)) for squarefree integers k1 < k2, with m the squarefree
part of k1*k2.  Internally an AlgNum is a sorted tuple of ``(radicand, coeff)``
terms with nonzero coefficients; radicand 1 is the rational part.  Because
square roots of distinct squarefree integers are linearly independent over Q,
a number is zero exactly when it has no terms.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Optional, Union

from .errors import DivisionByZero, InvalidInput, NegativeRadicand, RadicandOverflow

Rational = Fraction
Number = Union[int, Fraction, "AlgNum"]

# 64 bits of the radical on the first round, doubled until the sign is certain.
_START_PREC = 64
# Trial division bound for squarefree decomposition; larger leftovers fall
# back to sympy's factorint.
_TRIAL_LIMIT = 1 << 17


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_PRIMES: list[int] = []


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree (n >= 1)."""
    if n < 1:
        raise ValueError("squarefree_decompose needs a positive integer")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    global _PRIMES
    if not _PRIMES:
        _PRIMES = _small_primes(_TRIAL_LIMIT)
    s, k = 1, 1
    rest = n
    for p in _PRIMES:
        if p * p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    else:
        if rest > 1 and _PRIMES[-1] ** 3 < rest:
            # leftover may still hide a square of a large prime
            from sympy import factorint

            for p, e in factorint(rest).items():
                s *= p ** (e // 2)
                if e % 2:
                    k *= p
            return s, k
    # every prime factor of rest exceeds cbrt(rest): rest is 1, p, p*q or p*p
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            s *= r
        else:
            k *= rest
    return s, k


def is_squarefree(k: int) -> bool:
    return k >= 1 and squarefree_decompose(k)[0] == 1


def _radical_product(p: int, q: int) -> tuple[int, int]:
    """sqrt(p)*sqrt(q) == g*sqrt(m) for squarefree p, q; returns (g, m)."""
    g = math.gcd(p, q)
    return g, (p // g) * (q // g)


def _basis(radicands: Iterable[int]) -> tuple[int, ...]:
    """Nontrivial radicands of the field generated by ``radicands``, ascending.

    Raises RadicandOverflow when more than two independent square roots would
    be needed.
    """
    ks = sorted(set(radicands) - {1})
    if len(ks) <= 1:
        return tuple(ks)
    p, q = ks[0], ks[1]
    r = _radical_product(p, q)[1]
    group = {p, q, r}
    for k in ks[2:]:
        if k not in group:
            raise RadicandOverflow(
                f"sqrt({k}) is independent of sqrt({p}) and sqrt({q})"
            )
    return tuple(sorted(group))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class AlgNum:
    """Exact element of a field extension of Q by at most two square roots."""

    __slots__ = ("_terms",)

    def __init__(self, a=0, b=0, c=0, d=0, k1: Optional[int] = None, k2: Optional[int] = None):
        a, b, c, d = (_as_fraction(v) for v in (a, b, c, d))
        for k in (k1, k2):
            if k is not None and (k < 2 or not is_squarefree(k)):
                raise InvalidInput(f"radicand {k} is not a squarefree integer >= 2")
        if k1 is None and (b or d):
            raise InvalidInput("b and d require k1")
        if k2 is None and (c or d):
            raise InvalidInput("c and d require k2")
        if k1 is not None and k2 is not None and not k1 < k2:
            raise InvalidInput("radicands must satisfy k1 < k2")
        terms: dict[int, Fraction] = {}
        _acc(terms, 1, a)
        if k1 is not None:
            _acc(terms, k1, b)
        if k2 is not None:
            _acc(terms, k2, c)
        if k1 is not None and k2 is not None:
            g, m = _radical_product(k1, k2)
            _acc(terms, m, d)
        self._terms = _freeze(terms)

    @classmethod
    def _from_terms(cls, terms: dict[int, Fraction]) -> "AlgNum":
        obj = object.__new__(cls)
        obj._terms = _freeze(terms)
        return obj

    @classmethod
    def coerce(cls, x: Number) -> "AlgNum":
        if isinstance(x, AlgNum):
            return x
        q = _as_fraction(x)
        obj = object.__new__(cls)
        obj._terms = ((1, q),) if q else ()
        return obj

    # -- structure ----------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    @property
    def radicands(self) -> tuple[int, ...]:
        """Nontrivial basis radicands (k1, k2, m), ascending; empty if rational."""
        return _basis(k for k, _ in self._terms)

    @property
    def k1(self) -> Optional[int]:
        ks = self.radicands
        return ks[0] if ks else None

    @property
    def k2(self) -> Optional[int]:
        ks = self.radicands
        return ks[1] if len(ks) > 1 else None

    @property
    def m(self) -> Optional[int]:
        k1, k2 = self.k1, self.k2
        if k1 is None or k2 is None:
            return None
        return _radical_product(k1, k2)[1]

    def _coeff(self, k: Optional[int]) -> Fraction:
        if k is None:
            return Fraction(0)
        for kk, v in self._terms:
            if kk == k:
                return v
        return Fraction(0)

    @property
    def a(self) -> Fraction:
        return self._coeff(1)

    @property
    def b(self) -> Fraction:
        return self._coeff(self.k1)

    @property
    def c(self) -> Fraction:
        return self._coeff(self.k2)

    @property
    def d(self) -> Fraction:
        return self._coeff(self.m)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 1)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def canonical(self) -> "AlgNum":
        return AlgNum(self.a, self.b, self.c, self.d, self.k1, self.k2)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgNum):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = AlgNum.coerce(other)
        if _is_rat(self) and _is_rat(other):
            return AlgNum.coerce(_rat(self) + _rat(other))
        terms = dict(self._terms)
        for k, v in other._terms:
            _acc(terms, k, v)
        _basis(terms)
        return AlgNum._from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgNum._from_terms({k: -v for k, v in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (AlgNum, int, Fraction)):
            return NotImplemented
        return self + (-AlgNum.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return AlgNum.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgNum):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            q = _as_fraction(other)
            if not q:
                return ZERO
            return AlgNum._from_terms({k: v * q for k, v in self._terms})
        if _is_rat(self) and _is_rat(other):
            return AlgNum.coerce(_rat(self) * _rat(other))
        terms: dict[int, Fraction] = {}
        for p, x in self._terms:
            for q, y in other._terms:
                if p == 1:
                    _acc(terms, q, x * y)
                elif q == 1:
                    _acc(terms, p, x * y)
                else:
                    g, m = _radical_product(p, q)
                    _acc(terms, m, x * y * g)
        _basis(terms)
        return AlgNum._from_terms(terms)

    __rmul__ = __mul__

    def conjugates(self) -> list["AlgNum"]:
        """The nontrivial Galois conjugates (sign flips of the generators)."""
        ks = self.radicands
        if not ks:
            return []
        if len(ks) == 1:
            return [self._flip({ks[0]})]
        k1, k2, m = ks[0], ks[1], _radical_product(ks[0], ks[1])[1]
        return [self._flip({k1, m}), self._flip({k2, m}), self._flip({k1, k2})]

    def _flip(self, negated: set[int]) -> "AlgNum":
        return AlgNum._from_terms({k: (-v if k in negated else v) for k, v in self._terms})

    def norm(self) -> Fraction:
        """Product of self with all its conjugates (a rational)."""
        prod = self
        for conj in self.conjugates():
            prod = prod * conj
        return prod.rational_value()

    def invert(self) -> "AlgNum":
        if not self._terms:
            raise DivisionByZero("inverse of zero")
        if _is_rat(self):
            return AlgNum.coerce(1 / _rat(self))
        cofactor = ONE
        for conj in self.conjugates():
            cofactor = cofactor * conj
        n = (self * cofactor).rational_value()
        return cofactor * (1 / n)

    def __truediv__(self, other):
        if not isinstance(other, (AlgNum, int, Fraction)):
            return NotImplemented
        other = AlgNum.coerce(other)
        if not other._terms:
            raise DivisionByZero(f"{self} / 0")
        if _is_rat(other):
            return self * (1 / _rat(other))
        return self * other.invert()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return AlgNum.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if sign(self) < 0 else self

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return _is_rat(self) and _rat(self) == other
        return NotImplemented

    def __hash__(self):
        if _is_rat(self):
            return hash(_rat(self))
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self):
        lo, hi = _bounds(self, 64)
        return float((lo + hi) / 2)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_algnum(self)

    def __repr__(self):
        return f"AlgNum({format_algnum(self)!r})"


def _acc(terms: dict[int, Fraction], k: int, v: Fraction) -> None:
    if not v:
        return
    s = terms.get(k)
    if s is None:
        terms[k] = v
    else:
        s += v
        if s:
            terms[k] = s
        else:
            del terms[k]


def _freeze(terms: dict[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple(sorted((k, v) for k, v in terms.items() if v))


def _is_rat(x: AlgNum) -> bool:
    t = x._terms
    return not t or (len(t) == 1 and t[0][0] == 1)


def _rat(x: AlgNum) -> Fraction:
    return x._terms[0][1] if x._terms else Fraction(0)


ZERO = AlgNum()
ONE = AlgNum(1)


def as_algnum(x: Number) -> AlgNum:
    return AlgNum.coerce(x)


def sqrt_rational(q) -> AlgNum:
    """Exact square root of a nonnegative rational, as s*sqrt(k) with k squarefree."""
    if isinstance(q, AlgNum):
        q = q.rational_value()
    q = _as_fraction(q)
    if q < 0:
        raise NegativeRadicand(f"sqrt of negative {q}")
    if not q:
        return ZERO
    # sqrt(p/r) = sqrt(p)/sqrt(r) = s1*sqrt(k1) / (s2*sqrt(k2)) = s1/(s2*k2) * sqrt(k1*k2)
    s1, k1 = squarefree_decompose(q.numerator)
    s2, k2 = squarefree_decompose(q.denominator)
    coeff = Fraction(s1, s2 * k2)
    return AlgNum._from_terms({k1 * k2: coeff})


# -- signs and approximation ---------------------------------------------------


def _scaled_integers(x: AlgNum) -> tuple[int, list[tuple[int, int]]]:
    """Common positive denominator and integer coefficients of x."""
    den = 1
    for _, v in x._terms:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den, [(k, v.numerator * (den // v.denominator)) for k, v in x._terms]


def _int_bounds(coeffs: list[tuple[int, int]], prec: int) -> tuple[int, int]:
    """Integer enclosure [lo, hi] of 2**prec * sum(A_k * sqrt(k))."""
    lo = hi = 0
    for k, A in coeffs:
        if k == 1:
            lo += A << prec
            hi += A << prec
            continue
        s = math.isqrt(k << (2 * prec))  # floor(sqrt(k) * 2**prec), never exact
        if A > 0:
            lo += A * s
            hi += A * (s + 1)
        else:
            lo += A * (s + 1)
            hi += A * s
    return lo, hi


def _bounds(x: AlgNum, prec: int) -> tuple[Fraction, Fraction]:
    den, coeffs = _scaled_integers(x)
    lo, hi = _int_bounds(coeffs, prec)
    scale = den << prec
    return Fraction(lo, scale), Fraction(hi, scale)


def sign(x: Number) -> int:
    """Certified sign of x: -1, 0 or +1."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if not x._terms:
        return 0
    if _is_rat(x):
        q = _rat(x)
        return (q > 0) - (q < 0)
    _, coeffs = _scaled_integers(x)
    prec = _START_PREC
    while True:
        lo, hi = _int_bounds(coeffs, prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2


def compare(x: Number, y: Number) -> int:
    return sign(as_algnum(x) - as_algnum(y))


def _floor_log10(q: Fraction) -> int:
    """floor(log10(q)) for q > 0."""
    e = len(str(q.numerator)) - len(str(q.denominator))
    if q < Fraction(10) ** e:
        e -= 1
    elif q >= Fraction(10) ** (e + 1):
        e += 1
    return e


def _round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def to_decimal(x: Number, digits: int) -> str:
    """Fixed-point decimal text of x rounded to ``digits`` significant digits.

    Ties (possible only for rationals) round half away from zero.
    """
    if digits < 1:
        raise InvalidInput("digits must be >= 1")
    x = as_algnum(x)
    s = sign(x)
    if s == 0:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)
    mag = x if s > 0 else -x
    prec = _START_PREC
    while True:
        if _is_rat(mag):
            lo = hi = _rat(mag)
        else:
            lo, hi = _bounds(mag, prec)
        if lo > 0:
            e = _floor_log10(lo)
            if e == _floor_log10(hi):
                shift = Fraction(10) ** (digits - 1 - e)
                n_lo, n_hi = _round_half_up(lo * shift), _round_half_up(hi * shift)
                if n_lo == n_hi:
                    n = n_lo
                    if n == 10**digits:
                        n //= 10
                        e += 1
                    break
        prec *= 2
    text = _place_point(n, e - digits + 1)
    return "-" + text if s < 0 else text


def _place_point(n: int, exp10: int) -> str:
    """Render n * 10**exp10 in fixed-point notation."""
    if exp10 >= 0:
        return str(n) + "0" * exp10
    s = str(n).rjust(-exp10 + 1, "0")
    return s[:exp10] + "." + s[exp10:]


# -- serialization ------------------------------------------------------------

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


def format_rational(q) -> str:
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the literal grammar: optional '-', digits, optional '/' digits."""
    text = text.strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise InvalidInput(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InvalidInput(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_algnum(x: Number) -> str:
    x = as_algnum(x)
    if not x._terms:
        return "0"
    parts = []
    for i, (k, v) in enumerate(x._terms):
        mag = format_rational(abs(v))
        if k == 1:
            body = mag
        elif abs(v) == 1:
            body = f"sqrt({k})"
        else:
            body = f"{mag}*sqrt({k})"
        if i == 0:
            parts.append(("-" if v < 0 else "") + body)
        else:
            parts.append((" - " if v < 0 else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(r"(?:(\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?|sqrt\((\d+)\))")


def parse_algnum(text: str) -> AlgNum:
    """Inverse of :func:`format_algnum`."""
    src = text.strip()
    if src == "0":
        return ZERO
    pos, first = 0, True
    terms: dict[int, Fraction] = {}
    while pos < len(src):
        neg = False
        if first:
            if src.startswith("-", pos):
                neg, pos = True, pos + 1
        else:
            if src[pos : pos + 3] == " + ":
                pos += 3
            elif src[pos : pos + 3] == " - ":
                neg, pos = True, pos + 3
            else:
                raise InvalidInput(f"bad term separator in {text!r}")
        m = _TERM_RE.match(src, pos)
        if not m:
            raise InvalidInput(f"bad term in {text!r}")
        coeff_txt, k_txt, bare_k = m.groups()
        coeff = parse_rational(coeff_txt) if coeff_txt else Fraction(1)
        k = int(k_txt or bare_k or 1)
        if k != 1 and (k < 2 or not is_squarefree(k)):
            raise InvalidInput(f"radicand {k} is not squarefree")
        if k in terms or not coeff:
            raise InvalidInput(f"non-canonical term in {text!r}")
        terms[k] = -coeff if neg else coeff
        pos, first = m.end(), False
    _basis(terms)
    return AlgNum._from_terms(terms)
