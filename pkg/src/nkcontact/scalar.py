"""Exact scalars: rationals and univariate rational functions over Q.

A :class:`Scalar` is ``num/den`` with ``num``, ``den`` polynomials in at most
one named variable.  Values are kept in canonical form (coprime, monic
denominator), so equality is structural and ``is_zero`` is a pure check on the
numerator.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = [
    "Scalar",
    "ScalarError",
    "ScalarSyntaxError",
    "PoleError",
    "MultivariateError",
    "parse_scalar",
    "substitute",
    "is_zero",
    "as_scalar",
]

Poly = tuple  # coefficients low -> high, no trailing zeros; () is the zero polynomial
Number = Union[int, Fraction]


class ScalarError(ValueError):
    pass


class ScalarSyntaxError(ScalarError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class PoleError(ScalarError, ZeroDivisionError):
    pass


class MultivariateError(ScalarError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers over Q

def _strip(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    return _strip([x + (q[i] if i < len(q) else 0) for i, x in enumerate(p)])


def _pneg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    if len(p) == 1:
        return _strip(p[0] * x for x in q)
    if len(q) == 1:
        return _strip(q[0] * x for x in p)
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return _strip(out)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        f = Fraction(r[-1]) / lead
        quot[shift] = f
        for i, y in enumerate(q):
            r[shift + i] -= f * y
        r = list(_strip(r))
    return _strip(quot), tuple(r)


def _pmonic(p: Poly) -> Poly:
    lead = Fraction(p[-1])
    return tuple(Fraction(x) / lead for x in p)


def _pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p) if p else ()


def _peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(p):
        acc = acc * x + coeff
    return acc


_ONE: Poly = (Fraction(1),)


class Scalar:
    """Element of Q or Q(var), immutable and canonical."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num: Iterable = (), den: Iterable = _ONE, var: Optional[str] = None):
        num = _strip(Fraction(x) for x in num)
        den = _strip(Fraction(x) for x in den)
        if not den:
            raise PoleError("zero denominator")
        if not num:
            num, den = (), _ONE
        elif len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        if len(num) <= 1 and len(den) == 1:
            var = None
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "var", var)

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _rational(q: Fraction) -> "Scalar":
        # fast path: q is already a Fraction, so the result is canonical as built
        s = object.__new__(Scalar)
        object.__setattr__(s, "num", (q,) if q else ())
        object.__setattr__(s, "den", _ONE)
        object.__setattr__(s, "var", None)
        return s

    @classmethod
    def const(cls, value: Number) -> "Scalar":
        return cls((Fraction(value),))

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        return cls((0, 1), _ONE, name)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.var is None

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def _var_with(self, other: "Scalar") -> Optional[str]:
        if self.var is None:
            return other.var
        if other.var is None or other.var == self.var:
            return self.var
        raise MultivariateError(
            f"cannot combine scalars in {self.var!r} and {other.var!r} (one parameter per ring)")

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.var is None and other.var is None:
            return Scalar._rational((self.num[0] if self.num else 0) + (other.num[0] if other.num else 0))
        var = self._var_with(other)
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), self.den, var)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar(num, _pmul(self.den, other.den), var)

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        object.__setattr__(s, "num", _pneg(self.num))
        object.__setattr__(s, "den", self.den)
        object.__setattr__(s, "var", self.var)
        return s

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            self._var_with(other)
            return ZERO
        if self.var is None and other.var is None:
            return Scalar._rational(self.num[0] * other.num[0])
        var = self._var_with(other)
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den), var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise PoleError("division by the zero scalar")
        var = self._var_with(other)
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num), var)

    def __rtruediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = ONE / self, -exponent
        result = ONE
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.var is not None and other.var is not None and self.var != other.var:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.var is None:
            return hash(self.to_fraction())
        return hash((self.num, self.den, self.var))

    def __bool__(self):
        return bool(self.num)

    # -- evaluation ---------------------------------------------------------

    def substitute(self, value: Number, var: Optional[str] = None) -> "Scalar":
        """Evaluate at ``var = value``; scalars in another variable are returned unchanged."""
        if self.var is None or (var is not None and var != self.var):
            return self
        x = Fraction(value)
        d = _peval(self.den, x)
        if d == 0:
            raise PoleError(f"{self} has a pole at {self.var} = {x}")
        return Scalar.const(_peval(self.num, x) / d)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        num = _format_poly(self.num, self.var or "t")
        if self.den == _ONE:
            return num
        den = _format_poly(self.den, self.var or "t")
        if len(self.num) > 1 and sum(1 for x in self.num if x) > 1:
            num = f"({num})"
        if sum(1 for x in self.den if x) > 1 or any(x.denominator != 1 for x in self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __format__(self, spec):
        return format(str(self), spec)


ZERO = Scalar()
ONE = Scalar(_ONE)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_poly(p: Poly, var: str) -> str:
    if not p:
        return "0"
    parts = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = _format_rational(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{_format_rational(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def as_scalar(value) -> Scalar:
    if type(value) is Scalar:
        return value
    if isinstance(value, Scalar):
        return value
    if isinstance(value, numbers.Rational):
        return Scalar.const(Fraction(value))
    return NotImplemented


def is_zero(s: Scalar) -> bool:
    return as_scalar(s).is_zero()


def substitute(s: Scalar, value: Number, var: Optional[str] = None) -> Scalar:
    return as_scalar(s).substitute(value, var)


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str, param: Optional[str]):
        self.text = text
        self.param = param
        self.pos = 0

    def error(self, msg: str, pos: Optional[int] = None):
        raise ScalarSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Scalar:
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero", at)
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        if self.peek() == "+":
            self.pos += 1
            return self.unary()
        return self.factor()

    def factor(self) -> Scalar:
        value = self.base()
        if self.peek() == "^":
            self.pos += 1
            value = value ** self.uint()
        return value

    def base(self) -> Scalar:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            return Scalar.const(self.uint())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name != self.param:
                self.error(f"undeclared parameter {name!r}", start)
            return Scalar.symbol(name)
        self.error("expected a number, parameter or '('" if ch else "unexpected end of input")


def parse_scalar(text: str, param: Optional[str] = None) -> Scalar:
    """Parse ``text`` in the scalar grammar; ``param`` names the only allowed symbol.

    >>> str(parse_scalar("(1+a)/(1-a)", "a"))
    '(-a - 1)/(a - 1)'
    """
    return _Parser(text, param).parse()
