"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are plain ``fractions.Fraction`` values.  Prime field elements
are ``ModP`` instances.  Both support ``+ - * /``, equality with ints and
truthiness (nonzero), which is all the rest of the package relies on.
"""
from fractions import Fraction

from .errors import FieldMismatch


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldMismatch(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else ModP(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else ModP(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else ModP(w - self.v, self.p)

    def __mul__(self, o):
        w = self._lift(o)
        return NotImplemented if w is NotImplemented else ModP(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._lift(o)
        if w is NotImplemented:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._lift(o)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        w = self._lift(o)
        if w is NotImplemented:
            return NotImplemented
        return self.v == w

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Rationals:
    name = "QQ"
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, ModP):
            raise FieldMismatch("prime field element used over QQ")
        return Fraction(x)

    def parse(self, s):
        return Fraction(str(s).strip())

    def fmt(self, x):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise FieldMismatch(f"modulus {p} is not prime")
        self.p = p
        self.char = p
        self.name = f"GF({p})"
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element used in GF({self.p})")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise FieldMismatch(f"{x} has no image in GF({self.p})")
        return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def parse(self, s):
        return self(Fraction(str(s).strip()))

    def fmt(self, x):
        return f"{self(x).v}/1"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


def field_from_name(name):
    name = str(name).strip()
    if name in ("QQ", "Q"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return PrimeField(int(name[3:-1]))
    raise FieldMismatch(f"unknown field {name!r}")
