"""Exact rational scalars.

Every coefficient in this package lives in Q.  We use gmpy2.mpq (GMP-backed
rationals, always in lowest terms with positive denominator) and fall back to
fractions.Fraction when gmpy2 is unavailable.  Both satisfy the canonical-form
contract: lowest terms, denominator > 0, zero stored as 0/1.
"""

try:
    from gmpy2 import mpq as ExactScalar
except ImportError:  # pragma: no cover
    from fractions import Fraction as ExactScalar

QQ = ExactScalar


def rational(text):
    """Parse 'a' or 'a/b' into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return QQ(int(num), int(den))
    return QQ(int(text))


def format_rational(q):
    """Render an exact rational as 'a' or 'a/b' (lowest terms, denom > 0)."""
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
