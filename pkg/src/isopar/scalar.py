"""Exact arithmetic in Q(sqrt 2) and its complexification.

Every constant that shows up in the two worked examples (1/sqrt2, sqrt2,
rational matrix entries) lives in Q(sqrt 2), so identity checks can be
done with no tolerance at all.
"""

from fractions import Fraction
from numbers import Rational
import math

_SQRT2_FLOAT = math.sqrt(2.0)


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot build an exact rational from {v!r}")


class Scalar:
    """The number ``r + s*sqrt(2)`` with rational ``r`` and ``s``."""

    __slots__ = ("r", "s")

    def __init__(self, r=0, s=0):
        self.r = _frac(r)
        self.s = _frac(s)

    @classmethod
    def _raw(cls, r, s):
        obj = object.__new__(cls)
        obj.r = r
        obj.s = s
        return obj

    @classmethod
    def coerce(cls, v):
        if isinstance(v, Scalar):
            return v
        if isinstance(v, CScalar):
            if v.im:
                raise TypeError("complex value where a real scalar was expected")
            return v.re
        return cls._raw(_frac(v), Fraction(0))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.r + other.r, self.s + other.s)
        if isinstance(other, CScalar):
            return NotImplemented
        return Scalar._raw(self.r + _frac(other), self.s)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.r - other.r, self.s - other.s)
        if isinstance(other, CScalar):
            return NotImplemented
        return Scalar._raw(self.r - _frac(other), self.s)

    def __rsub__(self, other):
        return Scalar._raw(_frac(other) - self.r, -self.s)

    def __neg__(self):
        return Scalar._raw(-self.r, -self.s)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.r, self.s, other.r, other.s
            if not b:
                if not d:
                    return Scalar._raw(a * c, d)
                return Scalar._raw(a * c, a * d)
            if not d:
                return Scalar._raw(a * c, b * c)
            return Scalar._raw(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, CScalar):
            return NotImplemented
        f = _frac(other)
        return Scalar._raw(self.r * f, self.s * f)

    __rmul__ = __mul__

    def norm(self):
        """Field norm r^2 - 2 s^2 (rational, zero only for zero)."""
        return self.r * self.r - 2 * self.s * self.s

    def galois(self):
        """The conjugate r - s*sqrt2."""
        return Scalar._raw(self.r, -self.s)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        n = self.norm()
        return Scalar._raw(self.r / n, -self.s / n)

    def __truediv__(self, other):
        if isinstance(other, CScalar):
            return NotImplemented
        other = Scalar.coerce(other)
        if not other.s:
            if not other.r:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return Scalar._raw(self.r / other.r, self.s / other.r)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -----------------------------------------------------------

    def __bool__(self):
        return bool(self.r) or bool(self.s)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.r == other.r and self.s == other.s
        if isinstance(other, CScalar):
            return other == self
        if isinstance(other, (int, Rational)):
            return not self.s and self.r == other
        return NotImplemented

    def __hash__(self):
        if not self.s:
            return hash(self.r)
        return hash((self.r, self.s))

    def sign(self):
        """Exact sign of r + s*sqrt2 (-1, 0 or 1)."""
        r, s = self.r, self.s
        if not s:
            return (r > 0) - (r < 0)
        if not r:
            return (s > 0) - (s < 0)
        if (r > 0) == (s > 0):
            return 1 if r > 0 else -1
        # opposite signs: compare r^2 with 2 s^2
        big_r = r * r > 2 * s * s
        if r > 0:
            return 1 if big_r else -1
        return -1 if big_r else 1

    def __lt__(self, other):
        return (self - Scalar.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - Scalar.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Scalar.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - Scalar.coerce(other)).sign() >= 0

    # conversion -----------------------------------------------------------

    def is_rational(self):
        return not self.s

    def __float__(self):
        return float(self.r) + float(self.s) * _SQRT2_FLOAT

    def to_json(self):
        return {"r": _fmt(self.r), "s": _fmt(self.s)}

    @classmethod
    def from_json(cls, obj):
        return cls(Fraction(obj["r"]), Fraction(obj.get("s", "0")))

    def __repr__(self):
        return f"Scalar({str(self)})"

    def __str__(self):
        if not self.s:
            return str(self.r)
        if not self.r:
            return f"{_sqrt2_term(self.s)}"
        sign = "-" if self.s < 0 else "+"
        return f"{self.r} {sign} {_sqrt2_term(abs(self.s))}"


def _fmt(f):
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _sqrt2_term(s):
    if s == 1:
        return "sqrt2"
    if s == -1:
        return "-sqrt2"
    return f"{s}*sqrt2"


ZERO = Scalar()
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
INV_SQRT2 = Scalar(0, Fraction(1, 2))


class CScalar:
    """Complex number ``re + i*im`` with ``re, im`` in Q(sqrt 2)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Scalar.coerce(re)
        self.im = Scalar.coerce(im)

    @classmethod
    def coerce(cls, v):
        if isinstance(v, CScalar):
            return v
        return cls(Scalar.coerce(v), ZERO)

    def __add__(self, other):
        o = CScalar.coerce(other)
        return CScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = CScalar.coerce(other)
        return CScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return CScalar.coerce(other) - self

    def __neg__(self):
        return CScalar(-self.re, -self.im)

    def __mul__(self, other):
        o = CScalar.coerce(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return CScalar(a * c, ZERO)
        return CScalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conj(self):
        return CScalar(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("inverse of complex zero")
        return CScalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = CScalar.coerce(other)
        if not o.im:
            return CScalar(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return CScalar.coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (CScalar, Scalar, int, Rational)):
            o = CScalar.coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CScalar({self.re}, {self.im})"


I = CScalar(0, 1)


def as_scalar(v):
    """Coerce ints, Fractions, decimal-free strings and Scalars to Scalar."""
    return Scalar.coerce(v)
