import pytest
from hypothesis import given
from hypothesis import strategies as hs

from copyposet.classify import (
    MAXIMAL_KINDS,
    NAMED_EXAMPLES,
    NONEMPTY_CELLS,
    OMEGA_COUNT,
    MaximalFamily,
    NamedExample,
    NonScatteredLinear,
    OrdinalFamily,
    UnionFamily,
    cell_attributes,
    classify,
    describe,
    parse_descriptor,
    union_counts,
)
from copyposet.errors import DomainError, ParseError
from copyposet.ordinal import parse_ordinal
from copyposet.suites import CLASSIFIER_GOLDEN
from copyposet.terms import (
    OMEGA_EXP,
    Cohen,
    One,
    PDeltaED,
    PFin,
    PFinxFin,
    Power,
    Product,
    QuotientBase,
    RP,
    SacksIter,
    is_quotient_type,
    render,
    term_normalize,
)


def c(text, ch=False):
    return classify(parse_descriptor(text), ch_mode=ch)


# --- terms ------------------------------------------------------------------


def test_normalize_examples():
    assert term_normalize(Product((One(), PFin()))) == PFin()
    assert term_normalize(Product((PFin(), PFin()))) == Power(PFin(), 2)
    assert term_normalize(Power(Cohen(), 1)) == Cohen()
    assert term_normalize(Product((Product((PFin(), Cohen())), Power(PFin(), 2)))) == Product((Power(PFin(), 3), Cohen()))
    assert term_normalize(Power(Power(PFin(), 2), 3)) == Power(PFin(), 6)
    assert term_normalize(Product((Power(PFin(), OMEGA_EXP), PFin()))) == Power(PFin(), OMEGA_EXP)
    assert term_normalize(RP(0, PFin())) == PFin()
    assert term_normalize(Product(())) == One()


def test_render_examples():
    assert render(Power(PFin(), 2)) == "((P(w)/Fin)+)^2"
    assert render(PDeltaED()) == "(P(Delta)/ED)+"
    assert render(PFinxFin()) == "(P(wxw)/(FinxFin))+"
    assert render(SacksIter()) == "S*pi"
    assert render(RP(1, PFin())) == "(rp^1(P(w)/Fin))+"
    assert render(QuotientBase(parse_ordinal("w"))) == "(P(w^w)/I_{w^w})+"
    assert render(Product((PDeltaED(), PFin()))) == "(P(Delta)/ED)+ x (P(w)/Fin)+"
    assert str(Cohen()) == "Cohen"


ATOMS = [One(), Cohen(), PFin(), PDeltaED(), PFinxFin(), SacksIter(), RP(1, PFin())]


def terms():
    base = hs.sampled_from(ATOMS)
    return hs.recursive(
        base,
        lambda inner: hs.one_of(
            hs.builds(lambda fs: Product(tuple(fs)), hs.lists(inner, max_size=4)),
            hs.builds(Power, inner, hs.one_of(hs.integers(0, 3), hs.just(OMEGA_EXP))),
        ),
        max_leaves=8,
    )


def _has_one_factor(t):
    if isinstance(t, Product):
        return any(isinstance(f, (One, Product)) or _has_one_factor(f) for f in t.factors)
    if isinstance(t, Power):
        return isinstance(t.base, One) or _has_one_factor(t.base)
    return False


@given(terms())
def test_normalize_is_idempotent_and_drops_one(t):
    n = term_normalize(t)
    assert term_normalize(n) == n
    assert not _has_one_factor(n)
    if isinstance(n, Power):
        assert n.exponent == OMEGA_EXP or n.exponent >= 2


# --- cells ------------------------------------------------------------------


def test_cell_attribute_examples():
    a1 = cell_attributes("A1")
    assert (a1.copies_cardinality, a1.sq_size, a1.sq_kind) == ("1", "1", "trivial")
    b2 = cell_attributes("B2")
    assert (b2.copies_cardinality, b2.sq_size, b2.sq_kind) == ("aleph0", "aleph0", "cohen")
    c4 = cell_attributes("C4")
    assert (c4.copies_cardinality, c4.divisible, c4.ideal_status, c4.sq_kind) == ("c", False, "tallIdeal", "quotientOverCoanalyticTallIdeal")
    d5 = cell_attributes("D5")
    assert d5.to_dict() == {
        "copiesCardinality": "c",
        "copiesDensity": "denseIn[w]^w",
        "divisible": False,
        "idealStatus": "fin",
        "sqKind": "sigmaClosedAtomless",
        "sqSize": ">aleph0",
    }


@pytest.mark.parametrize("cell", ["A4", "A5", "B1", "B4", "B5", "C1", "C2", "C5", "D1", "D2"])
def test_empty_cells_are_rejected(cell):
    with pytest.raises(DomainError, match="empty"):
        cell_attributes(cell)


@pytest.mark.parametrize("cell", NONEMPTY_CELLS)
def test_cell_attributes_are_consistent(cell):
    a = cell_attributes(cell)
    assert (a.sq_size == "1") == (a.sq_kind == "trivial")
    if cell[0] == "A":
        assert a.sq_size == "1"
    if cell[0] == "B":
        assert a.sq_size == "aleph0" and a.sq_kind == "cohen"
    if not a.divisible:
        assert a.copies_cardinality == "c" and a.sq_size == ">aleph0"


# --- classification -----------------------------------------------------------


@pytest.mark.parametrize("text,cell,term", CLASSIFIER_GOLDEN)
def test_golden_table(text, cell, term):
    got = c(text)
    assert got.cell == cell
    if term is not None:
        assert render(got.term) == term


def test_spec_examples():
    got = c("ordinal: w+w")
    assert (got.cell, got.attributes.divisible, got.attributes.ideal_status, got.attributes.copies_cardinality) == ("D3", True, "notIdeal", "c")
    assert got.term == Power(PFin(), 2)
    got = c("eqrel: {2:w}")
    assert (got.cell, got.attributes.divisible, got.term) == ("D3", True, PFin())
    got = c("linear: Q")
    assert (got.cell, got.attributes.divisible, got.term) == ("C4", False, SacksIter())


def test_union_table_rows():
    assert c("eqrel: {w:w}").term == PFinxFin()
    assert c("eqrel: {n:1, w:2}").term == Product((PDeltaED(), Power(PFin(), 2)))
    assert c("eqrel: {3:1, w:1}").term == Power(PFin(), 2)
    assert c("eqrel: {3:5}").cell == "A1"
    assert c("graphs: {1:w}").cell == "D5"
    assert c("graphs: {w:1}").cell == "D5"
    assert c("chains: {w:1}").cell == "D5"
    assert c("chains: {2:w}").cell == "D3"
    assert c("eqrel: {2:w} complemented").cell == "D3"
    assert any("complement" in x for x in c("eqrel: {2:w} complemented").citations)
    assert any("number of distinct finite sizes" in x for x in c("eqrel: {3:1, w:1}").citations)


def test_ordinal_rules():
    assert c("ordinal: 7").cell == "A1" and c("ordinal: 7").term == One()
    assert c("ordinal: w^2*2").cell == "D3"
    assert c("ordinal: w^w").cell == "D4"
    with pytest.raises(DomainError):
        c("ordinal: 0")


def test_named_examples():
    assert c("example: tree-cycles").term == Power(Cohen(), OMEGA_EXP)
    assert c("example: ray-cycles").term == One()
    assert c("example: mixed-B3").term == Cohen()
    with pytest.raises(DomainError):
        c("example: unicorn")


def test_ch_mode():
    assert c("ordinal: w+w", ch=True).term == PFin()
    assert c("ordinal: w+w", ch=True).cell == "D3"
    assert c("linear: Q", ch=True).term == SacksIter()
    assert any(x.startswith("ch:") for x in c("linear: Q", ch=True).citations)
    assert c("example: tree", ch=True).term == Cohen()


@pytest.mark.parametrize("text", ["ordinal w", "eqrel: 2:w", "eqrel: {2:x}", "eqrel: {2}", "bogus: 1", "ordinal: w+"])
def test_descriptor_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_descriptor(text)


@pytest.mark.parametrize("text", ["eqrel: {0:1}", "eqrel: {2:0}", "maximal: loops", "linear: w"])
def test_descriptor_domain_errors(text):
    with pytest.raises(DomainError):
        parse_descriptor(text)


# --- properties over the descriptor grammar ----------------------------------

counts = hs.one_of(hs.integers(1, 4), hs.just(OMEGA_COUNT))


@hs.composite
def unions(draw):
    kind = draw(hs.sampled_from(["eqrel", "graphs", "chains"]))
    classes = draw(hs.lists(hs.tuples(counts, counts), max_size=3))
    every = draw(hs.one_of(hs.none(), counts))
    if not classes and every is None:
        every = 1
    return UnionFamily(kind, tuple(classes), every, draw(hs.booleans()))


ordinal_texts = hs.sampled_from(["1", "5", "w", "w+1", "w*2", "w^2", "w^2+w", "w^3*2+4", "w^w", "w^(w+2)*3+w^w"])

descriptors = hs.one_of(
    unions(),
    ordinal_texts.map(lambda t: OrdinalFamily(parse_ordinal(t))),
    hs.just(NonScatteredLinear()),
    hs.sampled_from(MAXIMAL_KINDS).map(MaximalFamily),
    hs.sampled_from(NAMED_EXAMPLES).map(NamedExample),
)


def _verbatim_indivisible(d):
    sizes = {s for s, _ in d.classes}
    infinite_naturals = d.every_finite is not None and OMEGA_COUNT not in sizes
    total = sum(m for _, m in d.classes) + (OMEGA_COUNT if d.every_finite is not None else 0)
    mu = sum(m for s, m in d.classes if s == OMEGA_COUNT)
    return infinite_naturals or (d.every_finite is None and sizes == {1}) or total == 1 or mu == OMEGA_COUNT


@given(descriptors, hs.booleans())
def test_classification_invariants(d, ch):
    got = classify(d, ch_mode=ch)
    assert got.cell in NONEMPTY_CELLS
    assert got.attributes == cell_attributes(got.cell)
    assert got.citations
    if got.attributes.ideal_status in ("tallIdeal", "fin"):
        assert is_quotient_type(got.term)
    assert classify(d, ch_mode=not ch).cell == got.cell
    assert term_normalize(got.term) == got.term


@given(unions())
def test_union_indivisibility_matches_verbatim_rule(d):
    got = classify(d)
    if union_counts(d).total_finite:
        assert got.cell == "A1"
    else:
        assert (not got.attributes.divisible) == _verbatim_indivisible(d)


@given(descriptors)
def test_describe_round_trip(d):
    assert parse_descriptor(describe(d)) == d
