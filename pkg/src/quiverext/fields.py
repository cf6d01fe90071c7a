"""Exact scalar arithmetic: the rationals and prime fields F_p.

All linear algebra in this package runs over one of these two kinds of
field.  Rational arithmetic uses fractions.Fraction; prime-field elements
are small wrapper objects supporting the usual operators, so matrix code
is field-agnostic.
"""

from fractions import Fraction


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GFElement:
    """An element of F_p, stored as an int in [0, p)."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return GFElement(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return GFElement(self.p, pow(self.v, self.p - 2, self.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return "%d" % self.v


class RationalField:
    """The field Q of exact rationals."""

    name = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = p
        self.characteristic = p
        self.name = "F%d" % p
        self.zero = GFElement(p, 0)
        self.one = GFElement(p, 1)

    def of(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return GFElement(self.p, x.numerator)
            return GFElement(self.p, x.numerator) / GFElement(self.p, x.denominator)
        if isinstance(x, int):
            return GFElement(self.p, x)
        if isinstance(x, str):
            return GFElement(self.p, int(x))
        raise TypeError("cannot coerce %r into F_%d" % (x, self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def field_from_name(name):
    """Parse a field descriptor: "Q", or "F<p>" / "F <p>" for a prime p."""
    text = name.strip()
    if text == "Q":
        return QQ
    if text.startswith("F"):
        rest = text[1:].strip()
        if rest.isdigit():
            return PrimeField(int(rest))
    raise ValueError("unknown field %r (expected Q or F<prime>)" % name)


def scalar_to_json(x):
    """Serialize a field element: int when integral, "a/b" otherwise."""
    if isinstance(x, GFElement):
        return x.v
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return "%d/%d" % (x.numerator, x.denominator)
    return int(x)
