"""Packed-integer monomials for the Groebner engine hot loops.

A monomial is encoded in one Python int, one 16-bit field per variable plus
a top total-degree field (lex has no degree field).  Field layout follows
the monomial order so that *plain integer comparison equals the order*:

* grevlex: [deg | B-e_last | ... | B-e_first], biased fields B - e reverse
  the per-variable comparison direction;
* grlex:   [deg | e_first | ... | e_last];
* lex:     [e_first | ... | e_last];

where first..last is the order's priority sequence.  Multiplication is then
``ka + kb - MBIAS`` and divisibility is a single masked add-subtract: fields
are sized so valid differences never borrow, and a guard bit per field
flags any exponent that would go negative.

Exponents (and the total degree) must stay below 2**14 - 1; pack() enforces
this.  The tuple representation in :mod:`hikitalab.poly` remains the public
one; this encoding never escapes the engine.
"""

from .poly import GREVLEX, GRLEX, LEX

_W = 16
_EMAX = (1 << (_W - 2)) - 1  # largest exponent / total degree supported
_BIAS_REV = (1 << (_W - 2)) - 1  # biased (grevlex) fields store B - e
_BIAS_PLAIN = 1 << (_W - 2)  # test-time bias for plain fields
_FIELD_GUARD = (1 << (_W - 1)) | (1 << (_W - 2))


class PackedContext:
    """Packing for one ring context."""

    def __init__(self, ring):
        n = ring.nvars
        order = ring.order
        prio = order.priority if order.priority is not None else tuple(range(n))
        self.nvars = n
        self.kind = order.kind
        # exponent field layout: (variable index, shift, biased?)
        fields = []
        if order.kind == GREVLEX:
            # the priority's least significant variable compares first
            # (negated), so it takes the highest field below the degree
            for pos, var in enumerate(prio):
                fields.append((var, pos * _W, True))
            self.deg_shift = n * _W
        elif order.kind == GRLEX:
            for pos, var in enumerate(reversed(prio)):
                fields.append((var, pos * _W, False))
            self.deg_shift = n * _W
        elif order.kind == LEX:
            for pos, var in enumerate(reversed(prio)):
                fields.append((var, pos * _W, False))
            self.deg_shift = None
        else:  # pragma: no cover
            raise ValueError("unsupported order kind %r" % (order.kind,))
        self.fields = fields

        mbias = 0
        safe = 0
        guard_mask = 0
        guard_expect = 0
        identity = 0
        for _, shift, biased in fields:
            guard_mask |= _FIELD_GUARD << shift
            if biased:
                mbias += _BIAS_REV << shift
                safe += _BIAS_REV << shift
                identity += _BIAS_REV << shift
            else:
                safe += _BIAS_PLAIN << shift
                guard_expect |= (1 << (_W - 2)) << shift
        self.mbias = mbias
        self.safe = safe
        self.guard_mask = guard_mask
        self.guard_expect = guard_expect
        self.identity = identity
        self._mask = (1 << _W) - 1

    # -- conversions ------------------------------------------------------

    def pack(self, exponents):
        total = 0
        k = 0
        for var, shift, biased in self.fields:
            e = exponents[var]
            if e > _EMAX:
                raise OverflowError("exponent %d exceeds packed capacity" % e)
            total += e
            k += ((_BIAS_REV - e) if biased else e) << shift
        if self.deg_shift is not None:
            if total > _EMAX:
                raise OverflowError("total degree %d exceeds packed capacity" % total)
            k += total << self.deg_shift
        return k

    def unpack(self, k):
        out = [0] * self.nvars
        for var, shift, biased in self.fields:
            v = (k >> shift) & self._mask
            out[var] = (_BIAS_REV - v) if biased else v
        return tuple(out)

    def pack_dict(self, terms):
        return {self.pack(e): c for e, c in terms.items()}

    def unpack_dict(self, terms):
        return {self.unpack(k): c for k, c in terms.items()}

    # -- arithmetic (also inlined in engine loops) -------------------------

    def mul(self, ka, kb):
        return ka + kb - self.mbias

    def div(self, kb, ka):
        """kb / ka, assuming divisibility."""
        return kb - ka + self.mbias

    def divides(self, ka, kb):
        """True when monomial ka divides monomial kb."""
        return (kb - ka + self.safe) & self.guard_mask == self.guard_expect

    def lcm(self, ka, kb):
        ea, eb = self.unpack(ka), self.unpack(kb)
        return self.pack(tuple(map(max, ea, eb)))

    def coprime(self, ka, kb):
        ea, eb = self.unpack(ka), self.unpack(kb)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def degree(self, k):
        if self.deg_shift is not None:
            return k >> self.deg_shift
        return sum(self.unpack(k))
