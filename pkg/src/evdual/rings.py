"""Exact arithmetic over a fixed whitelist of coefficient rings.

The tower covers Z, Q, F_p, F_p[q], F_p(q), Z[q], Z[i], Q(i) and integer
Laurent series truncated to a finite coefficient window.  Every element is
kept in a unique canonical form, so equality is representation equality;
truncated Laurent elements instead compare on their common guaranteed
window.  Ring objects own the payload-level arithmetic; ``RingElement`` is
a thin immutable wrapper with the usual operators.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CoercionFailure,
    DivisionByZero,
    NotDivisible,
    RingMismatch,
    UnsupportedPair,
)

_INF = math.inf


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Ring:
    """One member of the ring tower; subclasses implement payload arithmetic."""

    key: str = "?"
    is_field = False

    # -- payload arithmetic -------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_invertible(self, a) -> bool:
        raise NotImplementedError

    def exact_divide(self, a, b):
        """Return c with b*c = a, or raise NotDivisible / DivisionByZero."""
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def hash_payload(self, a):
        return hash(a)

    def is_one(self, a) -> bool:
        return self.eq(a, self.from_int(1))

    # -- JSON literals ------------------------------------------------------
    def literal(self, a):
        raise NotImplementedError

    def parse_literal(self, v):
        raise NotImplementedError

    # -- misc ---------------------------------------------------------------
    def sort_key(self, a):
        """Deterministic total order on payloads (point configurations)."""
        raise NotImplementedError(f"no canonical order on {self.key}")

    def show(self, a) -> str:
        return str(a)

    # -- element layer -------------------------------------------------------
    def element(self, payload) -> "RingElement":
        return RingElement(self, payload)

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring == self:
                return value
            return convert(value, self)
        if isinstance(value, int):
            return self.element(self.from_int(value))
        return self.element(self.coerce(value))

    def coerce(self, value):
        raise CoercionFailure(f"cannot build {self.key} element from {value!r}")

    @property
    def zero(self) -> "RingElement":
        return self.element(self.from_int(0))

    @property
    def one(self) -> "RingElement":
        return self.element(self.from_int(1))

    def __repr__(self):
        return self.key

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class RingElement:
    """Immutable tagged element of one tower ring."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _coerce_other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.key} vs {other.ring.key}")
            return other.payload
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return self.ring.element(self.ring.add(self.payload, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return self.ring.element(self.ring.sub(self.payload, p))

    def __rsub__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return self.ring.element(self.ring.sub(p, self.payload))

    def __neg__(self):
        return self.ring.element(self.ring.neg(self.payload))

    def __mul__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return self.ring.element(self.ring.mul(self.payload, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._coerce_other(other)
        if p is NotImplemented:
            return NotImplemented
        return self.ring.element(self.ring.exact_divide(self.payload, p))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            inv = self.ring.one / self
            return inv ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                return False
            return self.ring.eq(self.payload, other.payload)
        if isinstance(other, int):
            return self.ring.eq(self.payload, self.ring.from_int(other))
        return NotImplemented

    def __hash__(self):
        return self.ring.hash_payload(self.payload)

    def __bool__(self):
        return not self.ring.is_zero(self.payload)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.payload)

    def is_invertible(self) -> bool:
        return self.ring.is_invertible(self.payload)

    def __repr__(self):
        return f"{self.ring.show(self.payload)} : {self.ring.key}"


def is_invertible(a: RingElement) -> bool:
    """True iff a is a unit of its ring."""
    return a.is_invertible()


def exact_divide(a: RingElement, b: RingElement) -> RingElement:
    """Return c with b*c = a; raises NotDivisible / DivisionByZero."""
    return a / b


# ---------------------------------------------------------------------------
# concrete rings
# ---------------------------------------------------------------------------


class IntRing(Ring):
    key = "Z"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return int(n)

    def is_zero(self, a):
        return a == 0

    def is_invertible(self, a):
        return a in (1, -1)

    def exact_divide(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Z")
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{b} does not divide {a} in Z")
        return q

    def coerce(self, value):
        if isinstance(value, int):
            return value
        return super().coerce(value)

    def literal(self, a):
        return str(a)

    def parse_literal(self, v):
        return int(v)

    def sort_key(self, a):
        return a


class RatRing(Ring):
    key = "Q"
    is_field = True

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a):
        return a == 0

    def is_invertible(self, a):
        return a != 0

    def exact_divide(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def coerce(self, value):
        if isinstance(value, (Fraction, int)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        return super().coerce(value)

    def literal(self, a):
        return str(a)

    def parse_literal(self, v):
        return Fraction(v)

    def sort_key(self, a):
        return a


class FpRing(Ring):
    """Prime field F_p, payload an int in [0, p)."""

    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.key = f"Fp({p})"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def is_invertible(self, a):
        return a != 0

    def exact_divide(self, a, b):
        if b == 0:
            raise DivisionByZero(f"division by zero in {self.key}")
        return (a * pow(b, -1, self.p)) % self.p

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        return super().coerce(value)

    def literal(self, a):
        return str(a)

    def parse_literal(self, v):
        return int(v) % self.p

    def sort_key(self, a):
        return a


class PolyRing(Ring):
    """Dense univariate polynomials in q over Z or F_p.

    Payload: tuple of base payloads, ascending degree, no trailing zeros;
    the zero polynomial is the empty tuple.
    """

    def __init__(self, base: Ring, var: str = "q"):
        if base.key not in ("Z",) and not isinstance(base, FpRing):
            raise ValueError("polynomial base must be Z or F_p")
        self.base = base
        self.var = var
        self.key = "Zq" if base.key == "Z" else f"Fq({base.p})"

    def _trim(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and self.base.is_zero(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def deg(self, a):
        return len(a) - 1

    def add(self, a, b):
        n = max(len(a), len(b))
        z = self.base.from_int(0)
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else z
            y = b[i] if i < len(b) else z
            out.append(self.base.add(x, y))
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        z = self.base.from_int(0)
        out = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = self.base.add(out[i + j], self.base.mul(x, y))
        return self._trim(out)

    def from_int(self, n):
        c = self.base.from_int(n)
        return () if self.base.is_zero(c) else (c,)

    def is_zero(self, a):
        return a == ()

    def is_invertible(self, a):
        return len(a) == 1 and self.base.is_invertible(a[0])

    def divmod_exact(self, a, b):
        """Long division; every leading-coefficient division must be exact."""
        if not b:
            raise DivisionByZero(f"division by zero in {self.key}")
        r = list(a)
        q = [self.base.from_int(0)] * max(len(a) - len(b) + 1, 0)
        db = len(b) - 1
        lead = b[-1]
        while len(r) >= len(b):
            c = self.base.exact_divide(r[-1], lead)
            k = len(r) - len(b)
            q[k] = c
            for i, bc in enumerate(b):
                r[k + i] = self.base.sub(r[k + i], self.base.mul(c, bc))
            while r and self.base.is_zero(r[-1]):
                r.pop()
            if len(r) - 1 < db + k and r and len(r) >= len(b):
                continue
        return self._trim(q), self._trim(r)

    def exact_divide(self, a, b):
        q, r = self.divmod_exact(a, b)
        if r:
            raise NotDivisible(f"nonzero remainder dividing in {self.key}")
        return q

    def rem(self, a, b):
        """Remainder of a by b (field base: standard; Z base: exact steps only)."""
        if not b:
            raise DivisionByZero(f"division by zero in {self.key}")
        r = list(a)
        lead = b[-1]
        while len(r) >= len(b):
            c = self.base.exact_divide(r[-1], lead)
            k = len(r) - len(b)
            for i, bc in enumerate(b):
                r[k + i] = self.base.sub(r[k + i], self.base.mul(c, bc))
            while r and self.base.is_zero(r[-1]):
                r.pop()
        return self._trim(r)

    def gcd(self, a, b):
        """Monic gcd; requires a field base."""
        if not self.base.is_field:
            raise NotImplementedError("gcd needs a field base")
        while b:
            a, b = b, self.rem(a, b)
        if a:
            inv = self.base.exact_divide(self.base.from_int(1), a[-1])
            a = tuple(self.base.mul(c, inv) for c in a)
        return a

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (list, tuple)):
            return self._trim(self.base.coerce(c) if not isinstance(c, int)
                              else self.base.from_int(c) for c in value)
        return super().coerce(value)

    def literal(self, a):
        return [self.base.literal(c) for c in a]

    def parse_literal(self, v):
        return self._trim(self.base.parse_literal(c) for c in v)

    def sort_key(self, a):
        return (len(a), tuple(self.base.sort_key(c) for c in a))

    def show(self, a):
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            cs = self.base.show(c)
            if i == 0:
                parts.append(cs)
            else:
                head = "" if cs == "1" else ("-" if cs == "-1" else cs + "*")
                parts.append(f"{head}{self.var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)


class FracRing(Ring):
    """Fraction field of F_p[q]; payload (num, den) with monic reduced den."""

    is_field = True

    def __init__(self, poly: PolyRing):
        if not poly.base.is_field:
            raise ValueError("fraction field implemented over F_p[q] only")
        self.poly = poly
        self.key = f"Frac({poly.key})"

    def _reduce(self, num, den):
        if not den:
            raise DivisionByZero(f"zero denominator in {self.key}")
        if not num:
            return ((), self.poly.from_int(1))
        g = self.poly.gcd(num, den)
        if self.poly.deg(g) > 0 or not self.poly.base.is_one(g[0]):
            num = self.poly.exact_divide(num, g)
            den = self.poly.exact_divide(den, g)
        inv = self.poly.base.exact_divide(self.poly.base.from_int(1), den[-1])
        num = tuple(self.poly.base.mul(c, inv) for c in num)
        den = tuple(self.poly.base.mul(c, inv) for c in den)
        return (num, den)

    def add(self, a, b):
        n1, d1 = a
        n2, d2 = b
        num = self.poly.add(self.poly.mul(n1, d2), self.poly.mul(n2, d1))
        return self._reduce(num, self.poly.mul(d1, d2))

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1])

    def mul(self, a, b):
        return self._reduce(self.poly.mul(a[0], b[0]), self.poly.mul(a[1], b[1]))

    def from_int(self, n):
        return (self.poly.from_int(n), self.poly.from_int(1))

    def is_zero(self, a):
        return a[0] == ()

    def is_invertible(self, a):
        return a[0] != ()

    def exact_divide(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero(f"division by zero in {self.key}")
        return self._reduce(self.poly.mul(a[0], b[1]), self.poly.mul(a[1], b[0]))

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return self._reduce(self.poly.coerce(value[0]), self.poly.coerce(value[1]))
        return super().coerce(value)

    def literal(self, a):
        return {"num": self.poly.literal(a[0]), "den": self.poly.literal(a[1])}

    def parse_literal(self, v):
        return self._reduce(self.poly.parse_literal(v["num"]),
                            self.poly.parse_literal(v["den"]))

    def sort_key(self, a):
        return (self.poly.sort_key(a[1]), self.poly.sort_key(a[0]))

    def show(self, a):
        num = self.poly.show(a[0])
        if a[1] == self.poly.from_int(1):
            return num
        return f"({num})/({self.poly.show(a[1])})"


class GaussIntRing(Ring):
    """Gaussian integers Z[i]; payload (re, im) of ints."""

    key = "Zi"

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, n):
        return (n, 0)

    def is_zero(self, a):
        return a == (0, 0)

    def norm(self, a):
        return a[0] * a[0] + a[1] * a[1]

    def is_invertible(self, a):
        return self.norm(a) == 1

    def exact_divide(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero("division by zero in Z[i]")
        n = self.norm(b)
        num = self.mul(a, (b[0], -b[1]))
        if num[0] % n or num[1] % n:
            raise NotDivisible(f"{b} does not divide {a} in Z[i]")
        return (num[0] // n, num[1] // n)

    @staticmethod
    def _round_div(x, n):
        # nearest integer to x/n with .5 rounded up; n > 0
        return (2 * x + n) // (2 * n)

    def divmod_euclid(self, a, b):
        """Euclidean division with norm(r) <= norm(b)/2."""
        if self.is_zero(b):
            raise DivisionByZero("division by zero in Z[i]")
        n = self.norm(b)
        num = self.mul(a, (b[0], -b[1]))
        q = (self._round_div(num[0], n), self._round_div(num[1], n))
        r = self.sub(a, self.mul(q, b))
        return q, r

    def coerce(self, value):
        if isinstance(value, int):
            return (value, 0)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return (int(value[0]), int(value[1]))
        return super().coerce(value)

    def literal(self, a):
        return [str(a[0]), str(a[1])]

    def parse_literal(self, v):
        return (int(v[0]), int(v[1]))

    def sort_key(self, a):
        return a

    def show(self, a):
        re, im = a
        if im == 0:
            return str(re)
        ims = "i" if im == 1 else ("-i" if im == -1 else f"{im}i")
        if re == 0:
            return ims
        return f"{re}{'+' if im > 0 and ims[0] != '-' else ''}{ims}"


class GaussRatRing(Ring):
    """Q(i); payload (re, im) of Fractions."""

    key = "Qi"
    is_field = True

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def is_zero(self, a):
        return a[0] == 0 and a[1] == 0

    def is_invertible(self, a):
        return not self.is_zero(a)

    def exact_divide(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero("division by zero in Q(i)")
        n = b[0] * b[0] + b[1] * b[1]
        num = self.mul(a, (b[0], -b[1]))
        return (num[0] / n, num[1] / n)

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return (Fraction(value[0]), Fraction(value[1]))
        return super().coerce(value)

    def literal(self, a):
        return [str(a[0]), str(a[1])]

    def parse_literal(self, v):
        return (Fraction(v[0]), Fraction(v[1]))

    def sort_key(self, a):
        return a

    def show(self, a):
        return GaussIntRing.show(self, a)  # same formatting


class LaurentRing(Ring):
    """Integer Laurent series truncated to a finite coefficient window.

    Payload: (val, coeffs, prec).  coeffs is a tuple of ints with nonzero
    first and last entry covering exponents [val, val+len); every exponent
    in [val+len, prec) is known to be zero and exponents >= prec are
    unknown.  prec may be math.inf for the exact zero element only
    (payload (0, (), inf)).  Equality compares the common known window.
    """

    def __init__(self, precision: int = 32):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.precision = precision
        self.key = f"LaurentZ({precision})"

    # effective valuation: where nonzero content may start
    def _val(self, a):
        return a[0] if a[1] else a[2]

    def make(self, val, coeffs, prec):
        coeffs = list(coeffs)
        # clamp to the known window
        if prec is not _INF and val + len(coeffs) > prec:
            coeffs = coeffs[: max(0, prec - val)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            return (0, (), prec)
        return (val, tuple(coeffs), prec)

    def coeff_at(self, a, e):
        """Known coefficient at exponent e; caller ensures e < prec."""
        val, coeffs, _ = a
        if coeffs and val <= e < val + len(coeffs):
            return coeffs[e - val]
        return 0

    def window(self, a):
        """Absolute precision: coefficients below it are known."""
        return a[2]

    def add(self, a, b):
        prec = min(a[2], b[2])
        if prec is _INF:
            lo = min(self._val(a), self._val(b))
            hi = max(self._val(a) + len(a[1]), self._val(b) + len(b[1]))
        else:
            lo = min(self._val(a), self._val(b), prec)
            hi = prec
        out = [self.coeff_at(a, e) + self.coeff_at(b, e) for e in range(lo, hi)]
        return self.make(lo, out, prec)

    def neg(self, a):
        return (a[0], tuple(-c for c in a[1]), a[2])

    def mul(self, a, b):
        va, vb = self._val(a), self._val(b)
        prec = min(a[2] + vb, b[2] + va)
        if not a[1] or not b[1]:
            return (0, (), prec)
        lo = va + vb
        if prec is _INF:
            hi = lo + len(a[1]) + len(b[1]) - 1
        else:
            hi = prec
        out = [0] * max(0, hi - lo)
        for i, x in enumerate(a[1]):
            for j, y in enumerate(b[1]):
                e = va + i + vb + j
                if e < hi:
                    out[e - lo] += x * y
        return self.make(lo, out, prec)

    def from_int(self, n):
        if n == 0:
            return (0, (), _INF)
        return (0, (n,), self.precision)

    def from_coeff_list(self, val, coeffs):
        """Exact finite series: window = valuation + ring precision."""
        lead = val
        cs = list(coeffs)
        while cs and cs[0] == 0:
            cs.pop(0)
            lead += 1
        if not cs:
            return (0, (), _INF)
        return self.make(lead, cs, lead + self.precision)

    def is_zero(self, a):
        """Zero within the known window."""
        return not a[1]

    def is_invertible(self, a):
        return bool(a[1]) and a[1][0] in (1, -1)

    def exact_divide(self, a, b):
        """Power-series division; each integer step must be exact."""
        if not b[1]:
            raise DivisionByZero("division by zero (within window) in Laurent ring")
        va, vb = self._val(a), self._val(b)
        rb = b[2] - vb
        vc = va - vb
        prec = vb + min(a[2], rb + va) - vb  # absolute precision of a/b shifted
        prec_c = min(a[2] - vb, rb + va - vb)
        if not a[1]:
            return (0, (), prec_c)
        nsteps = prec_c - vc if prec_c is not _INF else len(a[1])
        b0 = b[1][0]
        cs = []
        rem = list(a[1]) + [0] * max(0, int(nsteps) - len(a[1]))
        for t in range(int(nsteps)):
            cur = rem[t] if t < len(rem) else 0
            if cur % b0:
                raise NotDivisible("coefficientwise division failed in Laurent ring")
            c = cur // b0
            cs.append(c)
            if c:
                for j in range(1, len(b[1])):
                    idx = t + j
                    if idx < len(rem):
                        rem[idx] -= c * b[1][j]
        if prec_c is _INF:
            # exact operands: verify the division terminates exactly
            q = self.make(vc, cs, _INF)
            if not self.eq(self.mul(q, b), a):
                raise NotDivisible("inexact division of exact Laurent elements")
            return q
        return self.make(vc, cs, prec_c)

    def eq(self, a, b):
        prec = min(a[2], b[2])
        if prec is _INF:
            return a == b
        lo = min(self._val(a), self._val(b), prec)
        return all(self.coeff_at(a, e) == self.coeff_at(b, e) for e in range(lo, prec))

    def hash_payload(self, a):
        raise TypeError("truncated Laurent elements are unhashable")

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, dict):
            return self.parse_literal(value)
        return super().coerce(value)

    def literal(self, a):
        w = "inf" if a[2] is _INF else a[2]
        return {"val": a[0], "coeffs": [str(c) for c in a[1]], "window": w}

    def parse_literal(self, v):
        prec = _INF if v.get("window") in ("inf", None) else int(v["window"])
        return self.make(int(v["val"]), [int(c) for c in v["coeffs"]], prec)

    def show(self, a):
        if not a[1]:
            return "0" if a[2] is _INF else f"O(q^{a[2]})"
        parts = []
        for i, c in enumerate(a[1]):
            if c == 0:
                continue
            e = a[0] + i
            if e == 0:
                parts.append(str(c))
            else:
                cs = "" if c == 1 else ("-" if c == -1 else str(c) + "*")
                parts.append(f"{cs}q^{e}" if e != 1 else f"{cs}q")
        tail = "" if a[2] is _INF else f" + O(q^{a[2]})"
        return " + ".join(parts) + tail


# ---------------------------------------------------------------------------
# singletons and factories
# ---------------------------------------------------------------------------

Z = IntRing()
Q = RatRing()
Zi = GaussIntRing()
Qi = GaussRatRing()


@lru_cache(maxsize=None)
def Fp(p: int) -> FpRing:
    return FpRing(p)


@lru_cache(maxsize=None)
def Fq(p: int) -> PolyRing:
    return PolyRing(Fp(p))


@lru_cache(maxsize=None)
def FracFq(p: int) -> FracRing:
    return FracRing(Fq(p))


@lru_cache(maxsize=None)
def _zq() -> PolyRing:
    return PolyRing(Z)


Zq = _zq()


@lru_cache(maxsize=None)
def LaurentZ(precision: int = 32) -> LaurentRing:
    return LaurentRing(precision)


_RING_PARSERS = {}


def ring_from_key(key: str) -> Ring:
    """Inverse of Ring.key, e.g. 'Frac(Fq(3))' or 'LaurentZ(64)'."""
    if key == "Z":
        return Z
    if key == "Q":
        return Q
    if key == "Zi":
        return Zi
    if key == "Qi":
        return Qi
    if key == "Zq":
        return Zq
    if key.startswith("Fp(") and key.endswith(")"):
        return Fp(int(key[3:-1]))
    if key.startswith("Fq(") and key.endswith(")"):
        return Fq(int(key[3:-1]))
    if key.startswith("Frac(Fq(") and key.endswith("))"):
        return FracFq(int(key[8:-2]))
    if key.startswith("LaurentZ(") and key.endswith(")"):
        return LaurentZ(int(key[9:-1]))
    raise CoercionFailure(f"unknown ring descriptor {key!r}")


# ---------------------------------------------------------------------------
# embeddings between tower rings
# ---------------------------------------------------------------------------


def convert(a: RingElement, target: Ring) -> RingElement:
    """Embed a into target along the canonical whitelisted maps."""
    src = a.ring
    if src == target:
        return a
    p = a.payload
    if src.key == "Z":
        if target.key == "Q":
            return target.element(Fraction(p))
        if target.key == "Zi":
            return target.element((p, 0))
        if target.key == "Qi":
            return target.element((Fraction(p), Fraction(0)))
        if isinstance(target, (FpRing, PolyRing, FracRing, LaurentRing)):
            return target.element(target.from_int(p))
    if src.key == "Q" and target.key == "Qi":
        return target.element((p, Fraction(0)))
    if src.key == "Zi" and target.key == "Qi":
        return target.element((Fraction(p[0]), Fraction(p[1])))
    if isinstance(src, FpRing):
        if isinstance(target, PolyRing) and target.base == src:
            return target.element(target._trim((p,)))
        if isinstance(target, FracRing) and target.poly.base == src:
            num = target.poly._trim((p,))
            return target.element((num, target.poly.from_int(1)))
    if isinstance(src, PolyRing):
        if isinstance(target, FracRing) and target.poly == src:
            return target.element(target._reduce(p, src.from_int(1)))
        if src.key == "Zq" and isinstance(target, LaurentRing):
            return target.element(target.from_coeff_list(0, p))
    raise CoercionFailure(f"no embedding {src.key} -> {target.key}")


def fraction_field(ring: Ring) -> Ring:
    """The ring the library solves linear systems over, per tower member."""
    if ring.key == "Z":
        return Q
    if ring.key == "Zi":
        return Qi
    if isinstance(ring, PolyRing) and isinstance(ring.base, FpRing):
        return FracFq(ring.base.p)
    if ring.is_field or isinstance(ring, LaurentRing):
        return ring
    raise UnsupportedPair(f"no fraction field registered for {ring.key}")


def subring_witness(a: RingElement, target: Ring):
    """Witness of a in target under the canonical embedding, else None."""
    src = a.ring
    if src == target:
        return a
    p = a.payload
    if src.key == "Q" and target.key == "Z":
        return target.element(p.numerator) if p.denominator == 1 else None
    if isinstance(src, FracRing) and target == src.poly:
        num, den = p
        return target.element(num) if den == src.poly.from_int(1) else None
    if src.key == "Qi" and target.key == "Zi":
        if p[0].denominator == 1 and p[1].denominator == 1:
            return target.element((p[0].numerator, p[1].numerator))
        return None
    if src.key == "Qi" and target.key == "Q":
        return target.element(p[0]) if p[1] == 0 else None
    if isinstance(src, LaurentRing) and target.key == "Zq":
        # membership within the guaranteed window only
        if not p[1]:
            return target.zero
        if p[0] < 0:
            return None
        return target.element(target._trim([0] * p[0] + list(p[1])))
    raise UnsupportedPair(f"no membership test {src.key} -> {target.key}")


def in_subring(a: RingElement, target: Ring) -> bool:
    """True iff a lies in the canonical image of target."""
    return subring_witness(a, target) is not None


# ---------------------------------------------------------------------------
# deterministic enumerations of the K-side rings
# ---------------------------------------------------------------------------


def iter_integers():
    for n in itertools.count(0):
        yield Z.element(n)


def iter_signed_integers():
    yield Z.element(0)
    for n in itertools.count(1):
        yield Z.element(n)
        yield Z.element(-n)


def iter_fq(p: int):
    ring = Fq(p)
    for n in itertools.count(0):
        digits = []
        m = n
        while m:
            digits.append(m % p)
            m //= p
        yield ring.element(tuple(digits))


def iter_gaussian():
    yield Zi.element((0, 0))
    for r in itertools.count(1):
        cells = []
        for re in range(-r, r + 1):
            for im in range(-r, r + 1):
                if max(abs(re), abs(im)) == r:
                    cells.append((re, im))
        for c in sorted(cells):
            yield Zi.element(c)


def iter_q_powers():
    one = Zq.from_int(1)
    for n in itertools.count(0):
        yield Zq.element(Zq._trim([0] * n + list(one)))


# ---------------------------------------------------------------------------
# whitelisted ring pairs K inside L
# ---------------------------------------------------------------------------


class RingPair:
    """A whitelisted extension K inside L with its canonical embedding."""

    def __init__(self, name, K, L, contains_fraction_field, point_iter,
                 ds_iter=None, samples=None):
        self.name = name
        self.K = K
        self.L = L
        self.contains_fraction_field = contains_fraction_field
        self._point_iter = point_iter
        self._ds_iter = ds_iter or point_iter
        self._samples = samples

    @property
    def hat(self) -> Ring:
        """The field (or unit-divisible ring) linear systems are solved over."""
        return fraction_field(self.L)

    def embed(self, a: RingElement) -> RingElement:
        return convert(a, self.L)

    def to_hat(self, a: RingElement) -> RingElement:
        return convert(a, self.hat)

    def points(self):
        """Deterministic enumeration of K."""
        return self._point_iter()

    def ds_candidates(self):
        """Deterministic candidate stream for divisible-sequence search."""
        return self._ds_iter()

    def default_samples(self):
        """Fixed sample set for the sampling-based numerical test."""
        if self._samples is None:
            return list(itertools.islice(self.points(), 20))
        return self._samples()

    def __repr__(self):
        return f"RingPair({self.name})"

    def __eq__(self, other):
        return isinstance(other, RingPair) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _z_samples():
    return [Z.element(n) for n in range(-10, 11)]


def _fq_samples(p):
    def inner():
        return list(itertools.islice(iter_fq(p), p ** 3))
    return inner


def _zi_samples():
    return [Zi.element((re, im)) for re in range(-5, 6) for im in range(-5, 6)]


@lru_cache(maxsize=None)
def get_pair(name: str) -> RingPair:
    """Look up a whitelisted pair by name, e.g. 'Z/Q' or 'Fq2/FracFq2'."""
    if name == "Z/Z":
        return RingPair("Z/Z", Z, Z, False, iter_integers, samples=_z_samples)
    if name == "Z/Q":
        return RingPair("Z/Q", Z, Q, True, iter_integers, samples=_z_samples)
    if name == "Zi/Zi":
        return RingPair("Zi/Zi", Zi, Zi, False, iter_gaussian, samples=_zi_samples)
    if name == "Zi/Qi":
        return RingPair("Zi/Qi", Zi, Qi, True, iter_gaussian, samples=_zi_samples)
    if name.startswith("Fq"):
        left, _, right = name.partition("/")
        p = int(left[2:])
        if not _is_prime(p):
            raise UnsupportedPair(f"Fq base {p} is not prime")
        if right == left:
            return RingPair(name, Fq(p), Fq(p), False, lambda: iter_fq(p),
                            samples=_fq_samples(p))
        if right == f"FracFq{p}":
            return RingPair(name, Fq(p), FracFq(p), True, lambda: iter_fq(p),
                            samples=_fq_samples(p))
    if name.startswith("Zq/LaurentZ"):
        suffix = name[len("Zq/LaurentZ"):]
        prec = int(suffix) if suffix else 32
        def q_power_samples():
            return list(itertools.islice(iter_q_powers(), 12))
        return RingPair(name, Zq, LaurentZ(prec), False, iter_q_powers,
                        ds_iter=iter_q_powers, samples=q_power_samples)
    raise UnsupportedPair(f"unknown ring pair {name!r}")


def pair_names():
    return ["Z/Z", "Z/Q", "Fq2/Fq2", "Fq2/FracFq2", "Fq3/FracFq3",
            "Zi/Zi", "Zi/Qi", "Zq/LaurentZ"]
