"""Exact sparse multivariate polynomial arithmetic over QQ or GF(p).

Coefficients are ``fractions.Fraction`` in characteristic zero and ModP
elements in characteristic p.  A polynomial is an immutable mapping from
exponent tuples to nonzero coefficients; nothing here ever rounds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

MONOMIAL_ORDERS = ("grlex", "grevlex", "lex")


class NotDivisible(ArithmeticError):
    """Monomial quotient would have a negative exponent."""


class ParseError(ValueError):
    """Malformed polynomial input; carries the source offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ModP:
    """Element of GF(p), stored as the canonical representative in 0..p-1."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def __add__(self, other):
        return ModP(self.value + other.value, self.p)

    def __sub__(self, other):
        return ModP(self.value - other.value, self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __mul__(self, other):
        return ModP(self.value * other.value, self.p)

    def __truediv__(self, other):
        return ModP(self.value * pow(other.value, -1, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, ModP) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"


class RationalField:
    """The rationals; coefficients are Fraction instances."""

    characteristic = 0

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin, valid far beyond any sensible modulus here
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    def coerce(self, value):
        if isinstance(value, ModP):
            if value.p != self.p:
                raise TypeError(f"element of GF({value.p}) used in GF({self.p})")
            return value
        if isinstance(value, int):
            return ModP(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} vanishes in GF({self.p})"
                )
            return ModP(value.numerator * pow(value.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


def GF(p):
    return PrimeField(p)


@dataclass(frozen=True)
class Monomial:
    """Exponent vector; the ambient ring supplies variable names."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @property
    def degree(self):
        return sum(self.exponents)

    def is_one(self):
        return not any(self.exponents)

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


def mono_lcm(a, b):
    if len(a.exponents) != len(b.exponents):
        raise ValueError("monomials from different rings")
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def mono_divide(num, den):
    """Exact monomial quotient num/den; raises NotDivisible otherwise."""
    if len(num.exponents) != len(den.exponents):
        raise ValueError("monomials from different rings")
    diff = tuple(x - y for x, y in zip(num.exponents, den.exponents))
    if any(e < 0 for e in diff):
        raise NotDivisible(f"{den.exponents} does not divide {num.exponents}")
    return Monomial(diff)


def monomial_key(order):
    """Sort key realizing a monomial order: bigger key = bigger monomial."""
    if order == "grlex":
        return lambda e: (sum(e), e)
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}")


class Polynomial:
    """Immutable sparse polynomial attached to a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", {e: c for e, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = acc.get(e)
            acc[e] = c if s is None else s + c
        return Polynomial(self.ring, acc)

    def __sub__(self, other):
        self._check_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = acc.get(e)
            acc[e] = -c if s is None else s - c
        return Polynomial(self.ring, acc)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_ring(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = acc.get(e)
                acc[e] = c if s is None else s + c
        return Polynomial(self.ring, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        c0 = self.ring.field.coerce(scalar)
        if not c0:
            return self.ring.zero
        return Polynomial(self.ring, {e: c0 * c for e, c in self.terms.items()})

    def mul_term(self, exponents, coeff=None):
        """Multiply by coeff * x^exponents without building a Polynomial."""
        if coeff is None:
            coeff = self.ring.field.one
        acc = {}
        for e, c in self.terms.items():
            acc[tuple(a + b for a, b in zip(e, exponents))] = c * coeff
        return Polynomial(self.ring, acc)

    def total_degree(self):
        """Largest term degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def constant_term(self):
        zero = (0,) * len(self.ring.variables)
        return self.terms.get(zero, self.ring.field.zero)

    def monomials(self):
        return [Monomial(e) for e in self.sorted_exponents()]

    def sorted_exponents(self):
        key = monomial_key(self.ring.order)
        return sorted(self.terms, key=key, reverse=True)

    def leading(self, key=None):
        """(exponents, coeff) of the largest term under key (ring order default)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if key is None:
            key = monomial_key(self.ring.order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def coefficient(self, monomial):
        return self.terms.get(monomial.exponents, self.ring.field.zero)

    def __str__(self):
        return self.ring.format_polynomial(self)

    def __repr__(self):
        return f"<{self}>"


_TOKEN = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^])|(?P<ws>\s+)|(?P<bad>.)")


def _tokenize(src):
    out = []
    for m in _TOKEN.finditer(src):
        if m.lastgroup == "ws":
            continue
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        out.append((m.lastgroup, m.group(), m.start()))
    return out


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring: named variables, coefficient field, monomial order."""

    variables: tuple[str, ...]
    field: object = QQ
    order: str = "grlex"

    def __post_init__(self):
        if not self.variables:
            raise ValueError("ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if self.order not in MONOMIAL_ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def variable(self, name):
        i = self.variables.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {e: self.field.one})

    def monomial(self, exponents):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exponents)}")
        return Monomial(exponents)

    def term(self, exponents, coeff=1):
        return Polynomial(self, {tuple(exponents): self.field.coerce(coeff)})

    def polynomial(self, mapping):
        return Polynomial(self, {tuple(e): self.field.coerce(c) for e, c in mapping.items()})

    def from_monomial(self, m, coeff=1):
        return self.term(m.exponents, coeff)

    def key(self):
        return monomial_key(self.order)

    # ---- parsing -------------------------------------------------------

    def parse(self, src):
        """Parse ``term (('+'|'-') term)*`` with terms ``coeff('*'factor)*``.

        Factors are ``var('^'uint)?``; coefficients are ``int`` or
        ``int/uint``.  A leading sign is allowed.  Raises ParseError with the
        offending position.
        """
        tokens = _tokenize(src)
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else (None, None, len(src))

        def take(kind):
            nonlocal pos
            tok = peek()
            if tok[0] != kind:
                raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
            pos += 1
            return tok

        def parse_factor(exps):
            name = take("name")
            if name[1] not in self.variables:
                raise ParseError(f"unknown variable {name[1]!r}", name[2])
            power = 1
            if peek()[1] == "^":
                take("op")
                power = int(take("int")[1])
            i = self.variables.index(name[1])
            exps[i] += power

        def parse_term(sign):
            exps = [0] * self.nvars
            tok = peek()
            if tok[0] == "int":
                take("int")
                num = int(tok[1])
                if peek()[1] == "/":
                    take("op")
                    den_tok = take("int")
                    if int(den_tok[1]) == 0:
                        raise ParseError("zero denominator", den_tok[2])
                    coeff = Fraction(num, int(den_tok[1]))
                else:
                    coeff = Fraction(num)
                while peek()[1] == "*":
                    take("op")
                    parse_factor(exps)
            elif tok[0] == "name":
                coeff = Fraction(1)
                parse_factor(exps)
                while peek()[1] == "*":
                    take("op")
                    parse_factor(exps)
            else:
                raise ParseError(f"expected a term, found {tok[1]!r}", tok[2])
            return tuple(exps), self.field.coerce(coeff * sign)

        acc = {}

        def add_term(sign):
            e, c = parse_term(sign)
            s = acc.get(e)
            acc[e] = c if s is None else s + c

        lead = peek()
        sign = 1
        if lead[1] in ("+", "-"):
            take("op")
            sign = -1 if lead[1] == "-" else 1
        add_term(sign)
        while peek()[0] is not None:
            op = peek()
            if op[1] not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', found {op[1]!r}", op[2])
            take("op")
            add_term(-1 if op[1] == "-" else 1)
        return Polynomial(self, acc)

    # ---- printing ------------------------------------------------------

    def format_exponents(self, exponents):
        parts = []
        for name, e in zip(self.variables, exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def format_monomial(self, m):
        return self.format_exponents(m.exponents) or "1"

    def format_polynomial(self, poly):
        """Canonical text form: terms descending in the ring order."""
        if not poly.terms:
            return "0"
        one = self.field.one
        pieces = []
        for e in poly.sorted_exponents():
            c = poly.terms[e]
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            mono = self.format_exponents(e)
            if not mono:
                body = str(mag)
            elif mag == one:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if negative else "+", body))
        sign, body = pieces[0]
        out = [body if sign == "+" else f"-{body}"]
        for sign, body in pieces[1:]:
            out.append(f" {sign} {body}")

        return "".join(out)
