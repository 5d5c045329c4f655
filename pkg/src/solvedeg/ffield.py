"""Arithmetic in the prime field F_p.

Residues are plain ints in [0, p). PrimeField is the modulus context used
by the polynomial layer (which stores raw int coefficients for speed);
FieldElement wraps a residue with operator syntax for scalar work.
"""

from .errors import UsageError

MAX_MODULUS = 2**31


def is_prime(n):
    """Trial-division primality test, adequate for moduli below 2^31."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p for a prime p < 2^31."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or not 2 <= p < MAX_MODULUS:
            raise UsageError(f"field modulus must be an int in [2, 2^31), got {p!r}")
        if not is_prime(p):
            raise UsageError(f"field modulus {p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def reduce(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        # pow with exponent -1 runs extended Euclid under the hood
        a = a % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def element(self, value):
        return FieldElement(value % self.p, self)

    def zero(self):
        return FieldElement(0, self)

    def one(self):
        return FieldElement(1 % self.p, self)


class FieldElement:
    """A residue with operator syntax; the additive/multiplicative laws of F_p."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError("field elements from different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * self.field.inv(v), self.field)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(v * self.field.inv(self.value), self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, e):
        if e < 0:
            return FieldElement(pow(self.field.inv(self.value), -e, self.field.p), self.field)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def inverse(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field == self.field and other.value == self.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.field.p})"

    def __str__(self):
        return str(self.value)

    @classmethod
    def parse(cls, text, field):
        """Inverse of str(): a base-10 residue."""
        try:
            v = int(text.strip(), 10)
        except ValueError:
            raise UsageError(f"not a field element literal: {text!r}") from None
        return cls(v, field)
