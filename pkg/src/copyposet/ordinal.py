"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents (themselves ordinals) and positive integer
coefficients. The empty tuple is 0; a natural k is the single term
``(0, k)``.

Text form uses ``w`` for omega::

    ordinal  := term ("+" term)*
    term     := atom ("*" atom)*
    atom     := nat | "w" ("^" exponent)? | "(" ordinal ")"
    exponent := nat | "w" ("^" exponent)? | "(" ordinal ")"

``**`` is accepted for ``^`` and ``ω`` for ``w``. Sums and products are
evaluated with ordinal arithmetic, so ``1 + w``, ``w + w`` and ``w*w`` are
all accepted and come out in normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import DomainError, ParseError


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((as_ordinal(e), int(c)) for e, c in self.terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise DomainError("Cantor normal form coefficients must be positive")
            if i and not e < terms[i - 1][0]:
                raise DomainError("Cantor normal form exponents must strictly decrease")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def natural(cls, k):
        if k < 0:
            raise DomainError("ordinals are non-negative")
        return cls(((ZERO, k),)) if k else ZERO

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.natural(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.natural(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _compare(self, other) < 0

    def __add__(self, other):
        return ord_add(self, as_ordinal(other))

    def __radd__(self, other):
        return ord_add(as_ordinal(other), self)

    def __mul__(self, other):
        return ord_mul(self, as_ordinal(other))

    def __rmul__(self, other):
        return ord_mul(as_ordinal(other), self)

    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def finite_part(self):
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def is_limit(self):
        return bool(self.terms) and self.finite_part() == 0

    def to_int(self):
        if not self.is_finite():
            raise DomainError(f"{render(self)} is not finite")
        return self.finite_part()

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Ordinal({render(self)!r})"


ZERO = Ordinal(())


def as_ordinal(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.natural(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def _compare(a, b):
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def omega_power(exponent, coefficient=1):
    return Ordinal(((as_ordinal(exponent), coefficient),))


def ord_add(a, b):
    """Ordinal sum; terms of ``a`` below the leading exponent of ``b`` vanish."""
    if b.is_zero():
        return a
    lead, coeff = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead]
    same = [c for e, c in a.terms if e == lead]
    if same:
        coeff += same[0]
    return Ordinal(tuple(kept) + ((lead, coeff),) + b.terms[1:])


def ord_mul(a, b):
    """Ordinal product, distributing over the terms of the right factor."""
    if a.is_zero() or b.is_zero():
        return ZERO
    lead, coeff = a.terms[0]
    result = ZERO
    for e, c in b.terms:
        if e.is_zero():
            piece = Ordinal(((lead, coeff * c),) + a.terms[1:])
        else:
            piece = Ordinal(((ord_add(lead, e), c),))
        result = ord_add(result, piece)
    return result


def is_indivisible_ordinal(a):
    """True iff ``a`` is a power of omega with positive exponent."""
    if a.is_zero():
        raise DomainError("zero is not a structure")
    return len(a.terms) == 1 and a.terms[0][1] == 1 and not a.terms[0][0].is_zero()


@dataclass(frozen=True)
class ExponentSplit:
    gamma: Ordinal
    r: int


def exponent_split(e):
    """Write ``e >= 1`` as ``gamma + r`` with gamma equal to 1 or a limit."""
    if e.is_zero():
        raise DomainError("exponent must be at least 1")
    if e.is_finite():
        return ExponentSplit(ONE, e.to_int() - 1)
    k = e.finite_part()
    gamma = Ordinal(e.terms[:-1]) if k else e
    return ExponentSplit(gamma, k)


def sq_formula(a):
    """Symbolic separative quotient of the poset of copies of an ordinal ``a >= w``.

    Each term ``w^(gamma + r) * s`` contributes the reduced power of the base
    quotient taken ``r`` times, raised to the power ``s``; the finite tail is
    dropped. For ``gamma = 1`` the base is ``(P(w)/Fin)+``.
    """
    from .terms import PFin, Power, Product, QuotientBase, RP, term_normalize

    if a < OMEGA:
        raise DomainError("finite ordinals have a trivial poset of copies; classify them instead")
    factors = []
    for e, s in a.terms:
        if e.is_zero():
            continue
        split = exponent_split(e)
        base = PFin() if split.gamma == ONE else QuotientBase(split.gamma)
        factors.append(Power(RP(split.r, base), s))
    return term_normalize(Product(tuple(factors)))


# --- text ---------------------------------------------------------------


def render(a):
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        text = "w" if e == ONE else f"w^{_render_exponent(e)}"
        parts.append(text if c == 1 else f"{text}*{c}")
    return " + ".join(parts)


def _render_exponent(e):
    if e.is_finite() or e == OMEGA:
        return render(e)
    return f"({render(e)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|\^)|([wω])|([+*()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("nat", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("^", None, start))
        elif m.group(3):
            tokens.append(("w", None, start))
        else:
            tokens.append((m.group(4), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {self._describe(tok)}", tok[2])
        self.i += 1
        return tok

    @staticmethod
    def _describe(tok):
        return "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else str(tok[1]))

    def ordinal(self):
        value = self.term()
        while self.peek() == "+":
            self.take("+")
            value = ord_add(value, self.term())
        return value

    def term(self):
        value = self.atom()
        while self.peek() == "*":
            self.take("*")
            value = ord_mul(value, self.atom())
        return value

    def atom(self):
        kind = self.peek()
        if kind == "nat":
            return Ordinal.natural(self.take("nat")[1])
        if kind == "(":
            self.take("(")
            value = self.ordinal()
            self.take(")")
            return value
        self.take("w")
        if self.peek() == "^":
            self.take("^")
            return omega_power(self.exponent())
        return OMEGA

    def exponent(self):
        kind = self.peek()
        if kind == "nat":
            return Ordinal.natural(self.take("nat")[1])
        if kind == "(":
            self.take("(")
            value = self.ordinal()
            self.take(")")
            return value
        self.take("w")
        if self.peek() == "^":
            self.take("^")
            return omega_power(self.exponent())
        return OMEGA


def parse_ordinal(text):
    parser = _Parser(text)
    value = parser.ordinal()
    parser.take("end")
    return value
