"""Named property suites behind ``copyposet verify``.

Each suite draws its instances from a seeded ``random.Random`` and returns a
:class:`SuiteResult` with pass/fail counts and, for failures, the rule that
was violated. The random generators here are shared with the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import oracles
from . import poset as po
from . import structure as st
from .classify import classify, parse_descriptor
from .copies import (
    MAXIMAL_FAMILIES,
    NEGATIVE_CONTROLS,
    PairClass,
    coloring_from_function,
    homogeneous_subset,
    maximal_prefix_check,
    ramsey_coloring,
)
from .embed import copies, copies_of_union_oracle, embeddings
from .ordinal import ord_add, ord_mul
from .terms import render

# --- random instances ------------------------------------------------------


def random_structure(rng, n, density=0.35, loops=0.3):
    pairs = []
    for u in range(n):
        for v in range(n):
            if u == v:
                if rng.random() < loops:
                    pairs.append((u, u))
            elif rng.random() < density:
                pairs.append((u, v))
    return st.structure(n, pairs)


def random_connected(rng, n, density=0.35, loops=0.3):
    """Random connected structure: a random spanning tree of arcs plus noise."""
    s = random_structure(rng, n, density, loops)
    pairs = set(s.pairs)
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        if (u, v) not in pairs and (v, u) not in pairs:
            pairs.add((u, v) if rng.random() < 0.5 else (v, u))
    return st.structure(n, pairs)


def random_poset(rng, n, density=0.4):
    """Closure of random arcs going up a shuffled linear order."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return po.FinitePoset.generated(n, pairs)


def relabel_poset(P, perm):
    """Image of P under ``p -> perm[p]``."""
    return po.FinitePoset.from_pairs(P.size, [(perm[i], perm[j]) for i, j in P.pairs()])


def random_union_instance(rng, max_parts=3, max_part_size=4):
    """Pattern parts plus host parts that include each pattern part and a
    connected superstructure of one of them, so copies usually exist."""
    k = rng.randint(2, max_parts)
    parts = [random_connected(rng, rng.randint(1, max_part_size)) for _ in range(k)]
    host_parts = list(parts)
    grow = parts[rng.randrange(k)]
    extra = rng.randint(1, 2)
    bigger = st.disjoint_union([grow, random_connected(rng, extra)])[0]
    pairs = set(bigger.pairs)
    pairs.add((rng.randrange(grow.size), grow.size + rng.randrange(extra)))
    host_parts.append(st.structure(bigger.size, pairs))
    host_parts.append(random_connected(rng, rng.randint(1, max_part_size)))
    rng.shuffle(host_parts)
    return parts, host_parts


# --- golden classifier table --------------------------------------------

CLASSIFIER_GOLDEN = (
    ("ordinal: w", "D5", "(P(w)/Fin)+"),
    ("ordinal: w+w", "D3", "((P(w)/Fin)+)^2"),
    ("ordinal: w*w", "D4", None),
    ("linear: Q", "C4", "S*pi"),
    ("eqrel: {2:w}", "D3", None),
    ("eqrel: {w:w}", "D4", None),
    ("eqrel: {n:1}", "D4", "(P(Delta)/ED)+"),
    ("eqrel: {w:1}", "D5", None),
    ("eqrel: {1:w}", "D5", None),
    ("example: tree", "B2", "Cohen"),
    ("example: line-graph", "A1", None),
    ("example: ray-graph", "A2", None),
    ("example: tree-cycles", "C3", None),
    ("example: ray-cycles", "A3", None),
    ("example: mixed-B3", "B3", None),
)


# --- suites ----------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok, rule, detail=""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append(f"{rule}: {detail}" if detail else rule)
        return ok

    @property
    def ok(self):
        return self.failed == 0

    def to_dict(self):
        return {"suite": self.name, "passed": self.passed, "failed": self.failed, "failures": list(self.failures)}


def suite_closures(rng, count=150):
    r = SuiteResult("closures")
    for _ in range(count):
        s = random_structure(rng, rng.randint(1, 7))
        rs = st.rs_closure(s)
        r.check(s.pairs <= rs and all((y, x) in rs for x, y in rs) and all((x, x) in rs for x in range(s.size)),
                "reflexive-symmetric closure contains the relation and is symmetric and reflexive")
        eq = st.rst_closure(s)
        transitive = all((x, z) in eq for x, y in eq for y2, z in eq if y == y2)
        r.check(rs <= eq and transitive, "component relation is the least equivalence containing the relation")
        r.check(st.components(s).as_lists() == sorted(oracles.naive_components(s)), "components agree with reachability")
        r.check(st.complement(st.complement(s)) == s, "complement is an involution")
    return r


def suite_embeddings(rng, count=120):
    r = SuiteResult("embeddings")
    for _ in range(count):
        host = random_structure(rng, rng.randint(1, 6))
        pattern = random_structure(rng, rng.randint(1, min(4, host.size)))
        if rng.random() < 0.5:
            pattern = st.induced(host, rng.sample(range(host.size), pattern.size))
        r.check(embeddings(pattern, host) == oracles.naive_embeddings(pattern, host),
                "induced embeddings match exhaustive injection search", f"{pattern.to_json()} into {host.to_json()}")
    return r


def suite_union_oracle(rng, count=60):
    r = SuiteResult("union-oracle")
    for _ in range(count):
        parts, host_parts = random_union_instance(rng)
        fast = copies_of_union_oracle(parts, host_parts).copies
        direct = copies(st.disjoint_union(parts)[0], st.disjoint_union(host_parts)[0]).copies
        r.check(fast == direct, "copies of a union of connected parts are assembled from copies of the parts")
    return r


def suite_quotients(rng, count=150):
    r = SuiteResult("quotients")
    for _ in range(count):
        P = random_poset(rng, rng.randint(1, 6))
        sq = po.separative_quotient(P).quotient
        r.check(po.is_separative(sq) and oracles.naive_is_separative(sq), "the separative quotient is separative")
        perm = list(range(P.size))
        rng.shuffle(perm)
        sq2 = po.separative_quotient(relabel_poset(P, perm)).quotient
        r.check(po.poset_isomorphic(sq, sq2) is not None, "isomorphic posets have isomorphic separative quotients")
        r.check(po.separative_quotient(sq).quotient.size == sq.size, "the quotient of a separative poset is itself")
    return r


def suite_products(rng, count=80):
    r = SuiteResult("products")
    for _ in range(count):
        P = random_poset(rng, rng.randint(1, 4))
        Q = random_poset(rng, rng.randint(1, 4))
        lhs = po.separative_quotient(po.product(P, Q)).quotient
        rhs = po.product(po.separative_quotient(P).quotient, po.separative_quotient(Q).quotient)
        r.check(po.poset_isomorphic(lhs, rhs, cap=64) is not None, "the quotient of a product is the product of the quotients")
    return r


def suite_maximal(rng, max_n=6):
    r = SuiteResult("maximal")
    for name in MAXIMAL_FAMILIES:
        for n in range(1, max_n + 1):
            r.check(maximal_prefix_check(name, n), "the eight maximal structures induce their own prefixes", f"{name} n={n}")
    for name in NEGATIVE_CONTROLS:
        r.check(not maximal_prefix_check(name, 5), "non-maximal controls fail the prefix check", name)
    return r


def suite_ramsey(rng, count=60):
    r = SuiteResult("ramsey")
    for _ in range(count):
        n = rng.randint(1, 8)
        s = random_structure(rng, n, loops=0)
        col = ramsey_coloring(s)
        r.check(all(isinstance(col.color(x, y), PairClass) for x in range(n) for y in range(x + 1, n)),
                "every pair gets exactly one of the four classes")
        k = rng.randint(2, 4)
        got = homogeneous_subset(col, k)
        want = oracles.first_homogeneous(col, k)
        r.check((got is None and want is None) or (got is not None and want is not None and (got[0], int(got[1])) == want),
                "homogeneous subset search matches exhaustive search")
    pentagon = lambda x, y: 1 if (y - x) % 5 in (1, 4) else 0  # noqa: E731
    r.check(not oracles.has_monochromatic_triangle(5, pentagon), "the pentagon colouring has no monochromatic triangle")
    r.check(homogeneous_subset(coloring_from_function(5, pentagon), 3) is None, "homogeneous search finds none on the pentagon")
    return r


def suite_ordinals(rng, count=400):
    r = SuiteResult("ordinals")
    pool = oracles.small_ordinals(2, 3)
    for _ in range(count):
        a, b = rng.choice(pool), rng.choice(pool)
        r.check(ord_add(a, b) == oracles.oracle_add(a, b), "sum agrees with the recursive definition", f"{a} + {b}")
        r.check(ord_mul(a, b) == oracles.oracle_mul(a, b), "product agrees with the recursive definition", f"{a} * {b}")
        r.check((a < b) == oracles.vector_less(oracles.to_vector(a), oracles.to_vector(b)), "order agrees with coefficient order")
    return r


def suite_classifier_golden(rng):
    r = SuiteResult("classifier-golden")
    for text, cell, term in CLASSIFIER_GOLDEN:
        got = classify(parse_descriptor(text))
        r.check(got.cell == cell and (term is None or render(got.term) == term),
                "classifier golden table", f"{text} -> {got.cell} {render(got.term)}")
    return r


SUITES = {
    "closures": suite_closures,
    "embeddings": suite_embeddings,
    "union-oracle": suite_union_oracle,
    "quotients": suite_quotients,
    "products": suite_products,
    "maximal": suite_maximal,
    "ramsey": suite_ramsey,
    "ordinals": suite_ordinals,
    "classifier-golden": suite_classifier_golden,
}


def run_suite(name, seed=0):
    return SUITES[name](random.Random(f"{name}:{seed}"))
