"""Rational functions: reduced fractions of sparse polynomials.

Canonical form: gcd(numerator, denominator) is a unit and the denominator is
monic under the ring order, so equality of rational functions is equality of
the stored pairs.  Entries of Weyl-action matrices over Q(y_1,...,y_n) live
here.
"""

from .poly import SparsePolynomial, poly_gcd
from .scalars import QQ


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self):
        return self.den == self.den.ring.one()

    def as_polynomial(self):
        if not self.is_polynomial():
            raise ValueError("denominator is not a unit: %s" % (self.den,))
        return self.num

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, SparsePolynomial):
            return RationalFunction(other)
        return RationalFunction(self.ring.constant(QQ(other)))

    def __add__(self, other):
        other = self._coerce(other)
        num = self.num * other.den + other.num * self.den
        return RationalFunction(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        # operands are reduced, so only cross gcds are needed
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        return RationalFunction(*_normalize(num, den), _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, SparsePolynomial, int)) or type(
            other
        ) is type(QQ(0)):
            other = self._coerce(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _normalize(num, den):
    """Make the denominator monic (leading coefficient 1 under ring order)."""
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    lc = den.lead_coeff()
    if lc != 1:
        num = num * (QQ(1) / lc)
        den = den * (QQ(1) / lc)
    return num, den


def _reduce(num, den):
    if num.is_zero():
        return num, den.ring.one()
    g = poly_gcd(num, den)
    if not (g.is_constant()):
        num = num / g
        den = den / g
    return _normalize(num, den)


def ratfun(num, den=None):
    """Convenience constructor."""
    return RationalFunction(num, den)
