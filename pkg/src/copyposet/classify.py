"""Place finitely described countable structures in the A1..D5 grid.

A descriptor names a family (an ordinal, a non-scattered linear order, a
disjoint union of equivalence classes / complete graphs / chains, one of the
eight embedding-maximal structures, or a named example). :func:`classify`
returns the cell, the attributes read off the grid, a symbolic forcing term
and the list of rules that fired.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import DomainError, ParseError
from .ordinal import OMEGA, Ordinal, is_indivisible_ordinal, parse_ordinal, render as render_ordinal, sq_formula
from .terms import OMEGA_EXP, Cohen, One, PDeltaED, PFin, PFinxFin, Power, Product, SacksIter, render, term_normalize

OMEGA_COUNT = math.inf  # omega, as a class size or multiplicity

NONEMPTY_CELLS = ("A1", "A2", "A3", "B2", "B3", "C3", "C4", "D3", "D4", "D5")
MAXIMAL_KINDS = ("diag", "full", "empty", "complete", "lt", "gt", "le", "ge")
NAMED_EXAMPLES = ("line-graph", "ray-graph", "tree", "tree-cycles", "ray-cycles", "mixed-B3")
UNION_KINDS = ("eqrel", "graphs", "chains")


# --- descriptors ----------------------------------------------------------


@dataclass(frozen=True)
class OrdinalFamily:
    alpha: Ordinal


@dataclass(frozen=True)
class NonScatteredLinear:
    pass


@dataclass(frozen=True)
class UnionFamily:
    """Disjoint union of classes: ``kind`` is eqrel (full relations F_n),
    graphs (complete graphs K_n) or chains (strict well-orders L_n, n <= w).

    ``classes`` maps a class size to its multiplicity (``OMEGA_COUNT`` for omega);
    ``every_finite``, when set, adds that many classes of every finite size.
    """

    kind: str
    classes: tuple = ()
    every_finite: object = None
    complemented: bool = False

    def __post_init__(self):
        if self.kind not in UNION_KINDS:
            raise DomainError(f"unknown union kind {self.kind!r}")
        merged = {}
        for size, mult in self.classes:
            for label, v in (("class size", size), ("multiplicity", mult)):
                if not (v == OMEGA_COUNT or (isinstance(v, int) and v >= 1)):
                    raise DomainError(f"{label} must be a positive integer or w, got {v!r}")
            merged[size] = mult if merged.get(size) is None else merged[size] + mult
        ef = self.every_finite
        if ef is not None and not (ef == OMEGA_COUNT or (isinstance(ef, int) and ef >= 1)):
            raise DomainError(f"multiplicity must be a positive integer or w, got {ef!r}")
        if not merged and ef is None:
            raise DomainError("a union needs at least one class")
        object.__setattr__(self, "classes", tuple(sorted(merged.items())))


@dataclass(frozen=True)
class MaximalFamily:
    kind: str

    def __post_init__(self):
        if self.kind not in MAXIMAL_KINDS:
            raise DomainError(f"unknown maximal structure {self.kind!r}; expected one of {', '.join(MAXIMAL_KINDS)}")


@dataclass(frozen=True)
class NamedExample:
    name: str

    def __post_init__(self):
        if self.name not in NAMED_EXAMPLES:
            raise DomainError(f"unknown named example {self.name!r}; expected one of {', '.join(NAMED_EXAMPLES)}")


@dataclass(frozen=True)
class UnionCounts:
    sizes: frozenset  # distinct listed sizes, OMEGA_COUNT included when present
    finite_sizes_infinite: bool  # infinitely many distinct finite sizes
    finite_size_count: object  # number of distinct finite sizes, OMEGA_COUNT if infinite
    infinite_classes: object
    classes: object  # total number of classes
    total_finite: bool


def union_counts(d):
    sizes = frozenset(s for s, _ in d.classes)
    infinite_classes = sum(m for s, m in d.classes if s == OMEGA_COUNT)
    listed_fin = {s for s in sizes if s != OMEGA_COUNT}
    infinite_fin = d.every_finite is not None
    classes = sum(m for _, m in d.classes) + (OMEGA_COUNT if infinite_fin else 0)
    total_finite = not infinite_fin and all(s != OMEGA_COUNT and m != OMEGA_COUNT for s, m in d.classes)
    return UnionCounts(
        sizes=sizes,
        finite_sizes_infinite=infinite_fin,
        finite_size_count=OMEGA_COUNT if infinite_fin else len(listed_fin),
        infinite_classes=infinite_classes,
        classes=classes,
        total_finite=total_finite,
    )


def union_indivisible(c):
    """Sizes are infinitely many naturals, or all 1, or one class, or infinitely many infinite classes."""
    n_is_infinite_set_of_naturals = c.finite_sizes_infinite and OMEGA_COUNT not in c.sizes
    only_singletons = not c.finite_sizes_infinite and c.sizes == frozenset({1})
    return n_is_infinite_set_of_naturals or only_singletons or c.classes == 1 or c.infinite_classes == OMEGA_COUNT


# --- attributes -----------------------------------------------------------


@dataclass(frozen=True)
class CellAttributes:
    copies_cardinality: str  # "1", "aleph0", "c"
    divisible: bool
    ideal_status: str  # notIdeal, tallIdeal, fin
    copies_density: str  # nowhereDense, denseIn[w]^w
    sq_size: str  # "1", "aleph0", ">aleph0"
    sq_kind: str  # trivial, cohen, quotientOverCoanalyticTallIdeal, sigmaClosedAtomless

    def to_dict(self):
        return {
            "copiesCardinality": self.copies_cardinality,
            "copiesDensity": self.copies_density,
            "divisible": self.divisible,
            "idealStatus": self.ideal_status,
            "sqKind": self.sq_kind,
            "sqSize": self.sq_size,
        }


_ROWS = {
    1: ("1", True, "notIdeal", "nowhereDense"),
    2: ("aleph0", True, "notIdeal", "nowhereDense"),
    3: ("c", True, "notIdeal", "nowhereDense"),
    4: ("c", False, "tallIdeal", "nowhereDense"),
    5: ("c", False, "fin", "denseIn[w]^w"),
}
_COLUMNS = {
    "A": ("1", "trivial"),
    "B": ("aleph0", "cohen"),
    "C": (">aleph0", "quotientOverCoanalyticTallIdeal"),
    "D": (">aleph0", "sigmaClosedAtomless"),
}
EMPTY_CELL_REASONS = {
    "B1": "the quotient is never larger than the poset of copies",
    "C1": "the quotient is never larger than the poset of copies",
    "D1": "the quotient is never larger than the poset of copies",
    "C2": "the quotient is never larger than the poset of copies",
    "D2": "the quotient is never larger than the poset of copies",
    "A5": "a dense copy set has quotient (P(w)/Fin)+, which is sigma-closed and atomless",
    "B5": "a dense copy set has quotient (P(w)/Fin)+, which is sigma-closed and atomless",
    "C5": "a dense copy set has quotient (P(w)/Fin)+, which is sigma-closed and atomless",
    "A4": "indivisible countable structures have atomless posets of copies with uncountable quotient",
    "B4": "indivisible countable structures have atomless posets of copies with uncountable quotient",
}


def cell_attributes(cell):
    if cell in EMPTY_CELL_REASONS:
        raise DomainError(f"cell {cell} is empty: {EMPTY_CELL_REASONS[cell]}")
    if cell not in NONEMPTY_CELLS:
        raise DomainError(f"unknown cell {cell!r}")
    card, divisible, ideal, density = _ROWS[int(cell[1])]
    sq_size, sq_kind = _COLUMNS[cell[0]]
    return CellAttributes(card, divisible, ideal, density, sq_size, sq_kind)


# --- classification -------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    cell: str
    attributes: CellAttributes
    term: object
    citations: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            "cell": self.cell,
            "attributes": self.attributes.to_dict(),
            "term": render(self.term),
            "citations": list(self.citations),
        }


R_MAXIMAL = "maximal: every infinite subset is a copy, so the copy-avoiding sets are exactly the finite ones; sq = (P(w)/Fin)+"
R_FINITE = "finite: the poset of copies is {X}"
R_ORD_OMEGA = "ordinal: w is embedding-maximal"
R_ORD_INDIV = "ordinal: w^b with b >= 2 is indivisible but not maximal, so its ideal is tall"
R_ORD_DIV = "ordinal: not a power of w, hence divisible"
R_ORD_TERM = "ordinal: sq is the product over CNF terms w^(g+r)*s of ((rp^r(P(w^g)/I))+)^s, finite tail dropped"
R_SCATTERED = "scattered linear orders have sigma-closed atomless quotients"
R_NONSCATTERED = "non-scattered linear order: forcing equivalent to Sacks followed by a sigma-closed iterand; indivisible"
R_UNION_K = "union of {kind}: quotient is sigma-closed atomless"
R_UNION_ROW = {
    1: "union table: finitely many sizes, all finite, or a single class -> (P(w)/Fin)+",
    2: "union table: finitely many finite sizes, finitely many infinite classes -> ((P(w)/Fin)+)^n",
    3: "union table: finitely many infinite classes, infinitely many finite sizes -> (P(Delta)/ED)+ x one (P(w)/Fin)+ factor per infinite class",
    4: "union table: infinitely many infinite classes -> (P(wxw)/(FinxFin))+",
}
R_POWER_ARITY = "note: the power n is taken as the number of distinct finite sizes plus the number of infinite classes"
R_UNION_INDIV = "union: indivisible iff the sizes are infinitely many naturals, all sizes are 1, there is one class, or infinitely many classes are infinite"
R_UNION_MAXIMAL = "union: matches one of the eight embedding-maximal structures"
R_COMPLEMENT = "complemented: the complement has the same embeddings and copies"
R_ROW3 = "note: row 3 cells are taken to have continuum many copies, read from the grid layout"
R_CH = "ch: atomless separative sigma-closed quotients of size c are all forcing equivalent to (P(w)/Fin)+"
R_CH_OFF = "ch off: sigma-closed quotient terms are kept apart (they can consistently differ)"
R_CH_SACKS = "ch: the sigma-closed iterand after Sacks forcing is (P(w)/Fin)+ of the extension"

_NAMED = {
    "line-graph": ("A1", One(), "example: the two-way infinite path graph has only itself as a copy"),
    "ray-graph": ("A2", One(), "example: the one-way infinite path graph has countably many copies (its tails), atomic"),
    "tree": ("B2", Cohen(), "example: the binary tree digraph; copies are the principal subtrees, ordered like the reversed tree"),
    "tree-cycles": ("C3", Power(Cohen(), OMEGA_EXP), "example: trees with attached n-cycles, n >= 3; product of w Cohen posets, collapses c to w"),
    "ray-cycles": ("A3", One(), "example: rays with attached n-cycles, n >= 3; atomic poset of size c"),
    "mixed-B3": ("B3", Cohen(), "example: binary tree beside the complement of the ray-cycles digraph; sq is the Cohen tree while there are continuum many copies"),
}


def classify(d, ch_mode=False):
    if isinstance(d, MaximalFamily):
        cell, term, cites = "D5", PFin(), [R_MAXIMAL]
    elif isinstance(d, OrdinalFamily):
        cell, term, cites = _classify_ordinal(d.alpha)
    elif isinstance(d, NonScatteredLinear):
        cell, term, cites = "C4", SacksIter(), [R_NONSCATTERED]
    elif isinstance(d, UnionFamily):
        cell, term, cites = _classify_union(d)
    elif isinstance(d, NamedExample):
        cell, term, note = _NAMED[d.name]
        cites = [note]
    else:
        raise DomainError(f"not a family descriptor: {d!r}")

    if cell[1] == "3":
        cites.append(R_ROW3)
    if ch_mode and cell[0] == "D":
        term = PFin()
        cites.append(R_CH)
    elif ch_mode and cell == "C4":
        cites.append(R_CH_SACKS)
    elif not ch_mode and cell[0] == "D" and term != PFin():
        cites.append(R_CH_OFF)
    return Classification(cell, cell_attributes(cell), term_normalize(term), tuple(cites))


def _classify_ordinal(alpha):
    if alpha.is_zero():
        raise DomainError("the empty ordinal is not a structure")
    if alpha.is_finite():
        return "A1", One(), [R_FINITE]
    term = sq_formula(alpha)
    if alpha == OMEGA:
        return "D5", term, [R_ORD_OMEGA, R_SCATTERED, R_ORD_TERM]
    if is_indivisible_ordinal(alpha):
        return "D4", term, [R_ORD_INDIV, R_SCATTERED, R_ORD_TERM]
    return "D3", term, [R_ORD_DIV, R_SCATTERED, R_ORD_TERM]


def union_power_arity(c):
    """Exponent used for the finitely-many-classes table row."""
    return c.finite_size_count + c.infinite_classes


def _is_maximal_union(d, c):
    one_infinite = c.classes == 1 and c.sizes == frozenset({OMEGA_COUNT}) and not c.finite_sizes_infinite
    singletons = c.classes == OMEGA_COUNT and c.sizes == frozenset({1}) and not c.finite_sizes_infinite
    return one_infinite or singletons


def _classify_union(d):
    c = union_counts(d)
    cites = []
    if d.complemented:
        cites.append(R_COMPLEMENT)
    if c.total_finite:
        return "A1", One(), cites + [R_FINITE]
    cites.append(R_UNION_K.format(kind={"eqrel": "full relations", "graphs": "complete graphs", "chains": "chains"}[d.kind]))
    if (not c.finite_sizes_infinite and OMEGA_COUNT not in c.sizes) or c.classes == 1:
        term, row = PFin(), 1
    elif c.infinite_classes == OMEGA_COUNT:
        term, row = PFinxFin(), 4
    elif c.finite_sizes_infinite:
        term, row = Product((PDeltaED(), Power(PFin(), c.infinite_classes))), 3
    else:
        term, row = Power(PFin(), union_power_arity(c)), 2
    cites.append(R_UNION_ROW[row])
    if row == 2:
        cites.append(R_POWER_ARITY)
    indivisible = union_indivisible(c)
    cites.append(R_UNION_INDIV)
    if _is_maximal_union(d, c):
        cell = "D5"
        cites.append(R_UNION_MAXIMAL)
    else:
        cell = "D4" if indivisible else "D3"
    return cell, term, cites


# --- descriptor text ------------------------------------------------------

_LINE = re.compile(r"^\s*([a-z]+)\s*:\s*(.*?)\s*$", re.S)


def parse_descriptor(text):
    """Parse one descriptor line such as ``ordinal: w+w`` or ``eqrel: {2:w}``."""
    m = _LINE.match(text)
    if not m:
        raise ParseError(f"expected '<kind>: <value>', got {text!r}", 0)
    kind, body = m.group(1), m.group(2)
    offset = m.start(2)
    if kind == "ordinal":
        try:
            return OrdinalFamily(parse_ordinal(body))
        except ParseError as exc:
            raise ParseError(f"bad ordinal: {exc.message}", offset + (exc.position or 0)) from None
    if kind == "linear":
        if body not in ("Q", "non-scattered"):
            raise DomainError(f"linear orders are described as 'Q' (non-scattered); enter scattered ones as ordinals, got {body!r}")
        return NonScatteredLinear()
    if kind in UNION_KINDS:
        return _parse_union(kind, body, offset)
    if kind == "maximal":
        return MaximalFamily(body)
    if kind == "example":
        return NamedExample(body)
    raise ParseError(f"unknown descriptor kind {kind!r}", m.start(1))


def _parse_count(token, where):
    token = token.strip()
    if token in ("w", "ω"):
        return OMEGA_COUNT
    if token.isdigit():
        return int(token)
    raise ParseError(f"expected a positive integer or w, got {token!r}", where)


def _parse_union(kind, body, offset):
    complemented = False
    if body.endswith("complemented"):
        complemented = True
        body = body[: -len("complemented")].rstrip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError("expected a class map like {2:w}", offset)
    classes = []
    every_finite = None
    inner = body[1:-1]
    pos = offset + 1
    for item in inner.split(","):
        if not item.strip():
            raise ParseError("empty entry in class map", pos)
        if ":" not in item:
            raise ParseError(f"expected size:multiplicity, got {item.strip()!r}", pos)
        size_text, mult_text = item.split(":", 1)
        mult = _parse_count(mult_text, pos + len(size_text) + 1)
        if size_text.strip() == "n":
            every_finite = mult if every_finite is None else every_finite + mult
        else:
            size = _parse_count(size_text, pos)
            if kind == "chains" and size != OMEGA_COUNT and size < 1:
                raise DomainError("chain lengths are ordinals 1..w")
            classes.append((size, mult))
        pos += len(item) + 1
    return UnionFamily(kind, tuple(classes), every_finite, complemented)


def describe(d):
    """Canonical text for a descriptor (inverse of parse_descriptor)."""
    if isinstance(d, OrdinalFamily):
        return f"ordinal: {render_ordinal(d.alpha)}"
    if isinstance(d, NonScatteredLinear):
        return "linear: Q"
    if isinstance(d, MaximalFamily):
        return f"maximal: {d.kind}"
    if isinstance(d, NamedExample):
        return f"example: {d.name}"
    show = lambda v: "w" if v == OMEGA_COUNT else str(v)  # noqa: E731
    entries = [f"{show(s)}:{show(m)}" for s, m in d.classes]
    if d.every_finite is not None:
        entries.append(f"n:{show(d.every_finite)}")
    text = f"{d.kind}: {{{', '.join(entries)}}}"
    return text + " complemented" if d.complemented else text
