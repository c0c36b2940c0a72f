"""Symbolic forcing-equivalence terms and their normal form.

Terms are small frozen dataclasses combined with :class:`Product` and
:class:`Power`. :func:`render` gives the ASCII form used in JSON output, e.g.
``((P(w)/Fin)+)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .ordinal import Ordinal, _render_exponent

OMEGA_EXP = "w"


class Term:
    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class One(Term):
    """The trivial poset."""


@dataclass(frozen=True)
class Cohen(Term):
    """The reversed binary tree, adding one Cohen real."""


@dataclass(frozen=True)
class PFin(Term):
    """(P(w)/Fin)+."""


@dataclass(frozen=True)
class RP(Term):
    """``k``-fold reduced power of a quotient, positive part."""

    k: int
    base: Term


@dataclass(frozen=True)
class QuotientBase(Term):
    """(P(w^gamma)/I)+ for the ideal of subsets not containing a copy of w^gamma."""

    gamma: Ordinal


@dataclass(frozen=True)
class PDeltaED(Term):
    pass


@dataclass(frozen=True)
class PFinxFin(Term):
    pass


@dataclass(frozen=True)
class SacksIter(Term):
    """Sacks forcing followed by a sigma-closed iterand; kept opaque."""


@dataclass(frozen=True)
class QuotientIdeal(Term):
    name: str


@dataclass(frozen=True)
class Product(Term):
    factors: tuple


@dataclass(frozen=True)
class Power(Term):
    base: Term
    exponent: object  # positive int, "w", or another symbol name


_ATOM_TEXT = {
    One: "1",
    Cohen: "Cohen",
    PFin: "(P(w)/Fin)+",
    PDeltaED: "(P(Delta)/ED)+",
    PFinxFin: "(P(wxw)/(FinxFin))+",
    SacksIter: "S*pi",
}


def _quotient_text(base):
    """The quotient inside the positive-part marker, for use under rp."""
    if isinstance(base, PFin):
        return "P(w)/Fin"
    if isinstance(base, QuotientBase):
        g = _render_exponent(base.gamma)
        return f"P(w^{g})/I_{{w^{g}}}"
    if isinstance(base, QuotientIdeal):
        return f"P(w)/{base.name}"
    return render(base)


def render(t):
    kind = type(t)
    if kind in _ATOM_TEXT:
        return _ATOM_TEXT[kind]
    if isinstance(t, (QuotientBase, QuotientIdeal)):
        return f"({_quotient_text(t)})+"
    if isinstance(t, RP):
        return f"(rp^{t.k}({_quotient_text(t.base)}))+"
    if isinstance(t, Product):
        if not t.factors:
            return "1"
        return " x ".join(f"({render(f)})" if isinstance(f, Product) else render(f) for f in t.factors)
    if isinstance(t, Power):
        return f"({render(t.base)})^{t.exponent}"
    raise DomainError(f"not a forcing term: {t!r}")


def _merge_exponents(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    if OMEGA_EXP in (a, b) and all(isinstance(x, int) or x == OMEGA_EXP for x in (a, b)):
        return OMEGA_EXP
    return None


def _multiply_exponents(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if all(isinstance(x, int) or x == OMEGA_EXP for x in (a, b)):
        return OMEGA_EXP
    return None


def term_normalize(t):
    """Flatten products, drop trivial factors, gather equal factors into powers.

    Factor order is that of first occurrence. Idempotent.
    """
    if isinstance(t, RP):
        base = term_normalize(t.base)
        if isinstance(base, RP):
            return term_normalize(RP(t.k + base.k, base.base))
        if t.k == 0:
            return base
        return RP(t.k, base)
    if isinstance(t, Power):
        e = t.exponent
        if isinstance(e, int) and e < 0:
            raise DomainError("negative exponent in a forcing term")
        base = term_normalize(t.base)
        if e == 0 or isinstance(base, One):
            return One()
        if e == 1:
            return base
        if isinstance(base, Power):
            combined = _multiply_exponents(base.exponent, e)
            if combined is not None:
                return term_normalize(Power(base.base, combined))
        return Power(base, e)
    if isinstance(t, Product):
        gathered = []  # [base, exponent]
        for f in _flatten(t):
            base, e = (f.base, f.exponent) if isinstance(f, Power) else (f, 1)
            for entry in gathered:
                if entry[0] == base:
                    merged = _merge_exponents(entry[1], e)
                    if merged is not None:
                        entry[1] = merged
                        break
            else:
                gathered.append([base, e])
        factors = [term_normalize(Power(b, e)) for b, e in gathered]
        factors = [f for f in factors if not isinstance(f, One)]
        if not factors:
            return One()
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))
    return t


def _flatten(t):
    for f in t.factors:
        f = term_normalize(f)
        if isinstance(f, Product):
            yield from f.factors
        elif not isinstance(f, One):
            yield f


_QUOTIENT_ATOMS = (PFin, RP, QuotientBase, PDeltaED, PFinxFin, SacksIter, QuotientIdeal)


def is_quotient_type(t):
    """Built only from quotient-style factors (never Cohen or the trivial poset)."""
    if isinstance(t, _QUOTIENT_ATOMS):
        return True
    if isinstance(t, Power):
        return is_quotient_type(t.base)
    if isinstance(t, Product):
        return bool(t.factors) and all(is_quotient_type(f) for f in t.factors)
    return False
