"""Exact arithmetic in Z[q, q^-1] and its fraction field.

Two scalar types are provided.  ``LaurentInt`` is a Laurent polynomial with
integer coefficients stored densely as ``(lo, coefficients)``.  ``RatQ`` is a
reduced quotient of two Laurent polynomials.  Every operation that produces a
rational function goes through :func:`ratio`, which returns a ``LaurentInt``
whenever the quotient is a Laurent polynomial, so a value has exactly one
representation and ``==`` is structural.

Both types are immutable and hashable.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (lists, lowest degree first)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c) -> int:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _pmul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub_scaled(a: list, b, s: int, shift: int) -> None:
    """In place: a -= s * q^shift * b."""
    for j, y in enumerate(b):
        a[j + shift] -= s * y


def _pseudo_rem(a, b) -> list:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        _psub_scaled(a, b, la, shift)
        _trim(a)
    return a


def _primitive(c) -> list:
    g = _content(c)
    if g == 0:
        return []
    out = [x // g for x in c]
    if out[-1] < 0:
        out = [-x for x in out]
    return out


def _pgcd(a, b) -> list:
    """Primitive gcd of two integer polynomials, positive leading coefficient."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    return a


def _pdivexact(a, b):
    """Quotient a / b over Z if it exists, else None."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return [] if not a else None
    quo = [0] * (len(a) - db)
    while a and len(a) - 1 >= db:
        la = a[-1]
        if la % lb:
            return None
        s = la // lb
        shift = len(a) - 1 - db
        quo[shift] = s
        _psub_scaled(a, b, s, shift)
        _trim(a)
    if a:
        return None
    return quo


# ---------------------------------------------------------------------------


class LaurentInt:
    """Laurent polynomial sum c_e q^e with integer coefficients."""

    __slots__ = ("lo", "c", "_h")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            self.lo, self.c = 0, ()
        elif isinstance(coeffs, int):
            self.lo, self.c = 0, ((coeffs,) if coeffs else ())
        else:
            items = [(e, v) for e, v in coeffs.items() if v]
            if not items:
                self.lo, self.c = 0, ()
            else:
                lo = min(e for e, _ in items)
                hi = max(e for e, _ in items)
                dense = [0] * (hi - lo + 1)
                for e, v in items:
                    dense[e - lo] += v
                self.lo, self.c = _norm(lo, dense)
        self._h = None

    @classmethod
    def _raw(cls, lo: int, dense: list) -> "LaurentInt":
        obj = cls.__new__(cls)
        obj.lo, obj.c = _norm(lo, dense)
        obj._h = None
        return obj

    # -- inspection
    def coeffs(self) -> dict:
        return {self.lo + i: v for i, v in enumerate(self.c) if v}

    def coeff(self, e: int) -> int:
        i = e - self.lo
        return self.c[i] if 0 <= i < len(self.c) else 0

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    @property
    def low(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no lowest term")
        return self.lo

    @property
    def high(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return self.lo + len(self.c) - 1

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def is_constant(self) -> bool:
        return not self.c or (len(self.c) == 1 and self.lo == 0)

    # -- arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, RatQ):
            return o + self
        if not o.c:
            return self
        if not self.c:
            return o
        lo = min(self.lo, o.lo)
        hi = max(self.lo + len(self.c), o.lo + len(o.c))
        dense = [0] * (hi - lo)
        for i, v in enumerate(self.c):
            dense[self.lo - lo + i] += v
        for i, v in enumerate(o.c):
            dense[o.lo - lo + i] += v
        return LaurentInt._raw(lo, dense)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt._raw(self.lo, [-v for v in self.c])

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, RatQ):
            return o * self
        if not self.c or not o.c:
            return ZERO
        return LaurentInt._raw(self.lo + o.lo, _pmul(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, RatQ):
            return ratio(self * o.den, o.num)
        return ratio(self, o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ratio(o, self)

    def __pow__(self, n: int):
        if n < 0:
            if len(self.c) == 1 and self.c[0] in (1, -1):
                return LaurentInt._raw(-self.lo * (-n), [self.c[0] ** (-n)])
            return ratio(ONE, self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentInt":
        """Multiply by q^k."""
        if not self.c:
            return self
        return LaurentInt._raw(self.lo + k, list(self.c))

    def divexact(self, other: "LaurentInt") -> "LaurentInt":
        """Exact division; raises ArithmeticError on a nonzero remainder."""
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.c:
            return ZERO
        quo = _pdivexact(list(self.c), list(other.c))
        if quo is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return LaurentInt._raw(self.lo - other.lo, quo)

    def bar(self) -> "LaurentInt":
        if not self.c:
            return self
        return LaurentInt._raw(-(self.lo + len(self.c) - 1), list(reversed(self.c)))

    def eval_at(self, v) -> Fraction:
        v = Fraction(v)
        if v == 0 and self.c and self.lo < 0:
            raise PoleError("negative power evaluated at 0")
        total = Fraction(0)
        for i in range(len(self.c) - 1, -1, -1):
            total = total * v + self.c[i]
        if self.lo:
            total *= v ** self.lo
        return total

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, LaurentInt):
            return self.lo == other.lo and self.c == other.c
        if isinstance(other, int):
            return self == LaurentInt(other)
        if isinstance(other, RatQ):
            return False
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.lo, self.c)) if self.c else 0
        return self._h

    def __repr__(self):
        return f"LaurentInt({self})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i, v in enumerate(self.c):
            if not v:
                continue
            e = self.lo + i
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)


def _norm(lo: int, dense: list):
    start = 0
    while start < len(dense) and dense[start] == 0:
        start += 1
    if start == len(dense):
        return 0, ()
    end = len(dense)
    while dense[end - 1] == 0:
        end -= 1
    return lo + start, tuple(dense[start:end])


class RatQ:
    """Reduced quotient num/den of Laurent polynomials.

    The denominator is an ordinary polynomial with nonzero constant term,
    positive leading coefficient and degree or content making it non-trivial;
    numerator and denominator are coprime over Q[q] and have coprime contents.
    Instances are only created through :func:`ratio`.
    """

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: LaurentInt, den: LaurentInt):
        self.num = num
        self.den = den
        self._h = None

    def is_zero(self) -> bool:
        return False

    def __bool__(self):
        return True

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, LaurentInt):
            if not o.c:
                return self
            return ratio(self.num + o * self.den, self.den)
        if self.den == o.den:
            return ratio(self.num + o.num, self.den)
        return ratio(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatQ(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, LaurentInt):
            if not o.c:
                return ZERO
            return ratio(self.num * o, self.den)
        return ratio(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, LaurentInt):
            return ratio(self.num, self.den * o)
        return ratio(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ratio(o * self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return ratio(self.den ** (-n), self.num ** (-n))
        return ratio(self.num ** n, self.den ** n)

    def bar(self):
        return ratio(self.num.bar(), self.den.bar())

    def eval_at(self, v) -> Fraction:
        d = self.den.eval_at(v)
        if d == 0:
            raise PoleError(f"pole of {self} at q={v}")
        return self.num.eval_at(v) / d

    def __eq__(self, other):
        if isinstance(other, RatQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentInt, int)):
            return False
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __repr__(self):
        return f"RatQ({self})"

    def __str__(self):
        return f"({self.num})/({self.den})"


def _coerce(x):
    if isinstance(x, (LaurentInt, RatQ)):
        return x
    if isinstance(x, int):
        return LaurentInt(x)
    if isinstance(x, Fraction):
        return ratio(LaurentInt(x.numerator), LaurentInt(x.denominator))
    return NotImplemented


def ratio(num, den):
    """Normalized quotient num/den; a LaurentInt whenever possible."""
    num = _coerce(num)
    den = _coerce(den)
    if isinstance(num, RatQ) or isinstance(den, RatQ):
        return num * (ONE / den) if isinstance(den, RatQ) else num / den
    if not den.c:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num.c:
        return ZERO
    shift = num.lo - den.lo
    n = list(num.c)
    d = list(den.c)
    if len(d) == 1:
        g = math.gcd(_content(n), d[0])
        if d[0] < 0:
            g = -g
        n = [x // g for x in n]
        dv = d[0] // g
        if dv == 1:
            return LaurentInt._raw(shift, n)
        return RatQ(LaurentInt._raw(shift, n), LaurentInt._raw(0, [dv]))
    quo = _pdivexact(n, d)
    if quo is not None:
        return LaurentInt._raw(shift, quo)
    g = _pgcd(n, d)
    if len(g) > 1:
        n = _pdivexact(n, g)
        d = _pdivexact(d, g)
    c = math.gcd(_content(n), _content(d))
    if d[-1] < 0:
        c = -c
    n = [x // c for x in n]
    d = [x // c for x in d]
    if len(d) == 1 and d[0] == 1:
        return LaurentInt._raw(shift, n)
    return RatQ(LaurentInt._raw(shift, n), LaurentInt._raw(0, d))


ZERO = LaurentInt()
ONE = LaurentInt({0: 1})
Q = LaurentInt({1: 1})


def monomial(e: int, c: int = 1) -> LaurentInt:
    return LaurentInt._raw(e, [c])


def to_scalar(x):
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"not a scalar: {x!r}")
    return r


def bar(x):
    """q -> q^-1."""
    return to_scalar(x).bar()


def eval_at(x, v) -> Fraction:
    return to_scalar(x).eval_at(v)


def is_zero(x) -> bool:
    return not x


# ---------------------------------------------------------------------------
# q-numbers


def qint(k: int) -> LaurentInt:
    if k < 0:
        raise ValueError("qint needs k >= 0")
    if k == 0:
        return ZERO
    return LaurentInt._raw(-k + 1, [1 if i % 2 == 0 else 0 for i in range(2 * k - 1)])


_QFACT = [ONE]


def qfact(k: int) -> LaurentInt:
    if k < 0:
        raise ValueError("qfact needs k >= 0")
    while len(_QFACT) <= k:
        _QFACT.append(_QFACT[-1] * qint(len(_QFACT)))
    return _QFACT[k]


_QBINOM: dict = {}


def qbinom(d: int, k: int) -> LaurentInt:
    if d < 0 or k < 0 or k > d:
        raise ValueError(f"qbinom needs 0 <= k <= d, got d={d}, k={k}")
    key = (d, k)
    val = _QBINOM.get(key)
    if val is None:
        val = qfact(d).divexact(qfact(k) * qfact(d - k))
        _QBINOM[key] = val
    return val


def flag_cell_count(dd: Iterable[int], aa: Iterable[int]) -> LaurentInt:
    """Sum over 0/1 words b with block sums aa of q^(2 * #{j<i : b_j=0, b_i=1}).

    Blocks have sizes dd.  Zero-size blocks are allowed.
    """
    dd = tuple(dd)
    aa = tuple(aa)
    if len(dd) != len(aa):
        raise ValueError("flag_cell_count: shape mismatch")
    if any(a < 0 or a > d for a, d in zip(aa, dd)):
        raise ValueError("flag_cell_count: need 0 <= aa_i <= dd_i")
    # state: (zeros so far) -> {exponent: count}; ones are tracked per block
    states = {0: {0: 1}}
    for d, a in zip(dd, aa):
        block = {(z, 0): poly for z, poly in states.items()}
        for _ in range(d):
            nxt: dict = {}
            for (z, ones), poly in block.items():
                # place a 0
                key = (z + 1, ones)
                tgt = nxt.setdefault(key, {})
                for e, c in poly.items():
                    tgt[e] = tgt.get(e, 0) + c
                # place a 1
                if ones < a:
                    key = (z, ones + 1)
                    tgt = nxt.setdefault(key, {})
                    for e, c in poly.items():
                        tgt[e + 2 * z] = tgt.get(e + 2 * z, 0) + c
            block = nxt
        states = {}
        for (z, ones), poly in block.items():
            if ones == a:
                states[z] = poly
    total: dict = {}
    for poly in states.values():
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    return LaurentInt(total)


# ---------------------------------------------------------------------------
# text form

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(q(?:\^(-?\d+))?)?\s*")


def parse_laurent(text: str) -> LaurentInt:
    text = text.strip()
    if text == "0":
        return ZERO
    pos = 0
    coeffs: dict = {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign, digits, star, mono, exp = m.groups()
        if not digits and not mono:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if star and not (digits and mono):
            raise ValueError(f"misplaced '*' in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0
        if mono:
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentInt(coeffs)


def parse_scalar(text: str):
    """Inverse of ``str`` for LaurentInt and RatQ."""
    text = text.strip()
    if text.startswith("("):
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        num = parse_laurent(text[1:i])
        rest = text[i + 1:].strip()
        if not rest.startswith("/"):
            return num
        rest = rest[1:].strip()
        if not (rest.startswith("(") and rest.endswith(")")):
            raise ValueError(f"cannot parse rational function {text!r}")
        return ratio(num, parse_laurent(rest[1:-1]))
    return parse_laurent(text)
