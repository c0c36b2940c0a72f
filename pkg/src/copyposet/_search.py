"""Bitmask backtracking over injective strong homomorphisms.

A digraph on vertices 0..n-1 is given by two lists of ints: ``out[u]`` has bit
``v`` set iff (u, v) is an arc, ``inn[u]`` has bit ``v`` set iff (v, u) is an
arc. Loops are ordinary arcs (u, u).
"""

from __future__ import annotations

from .errors import CapacityError


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def masks_from_pairs(n, pairs):
    out = [0] * n
    inn = [0] * n
    for u, v in pairs:
        out[u] |= 1 << v
        inn[v] |= 1 << u
    return out, inn


def match(p_out, p_in, h_out, h_in, h_size, order, candidates, node_limit=None, first_only=False):
    """Yield every injective map f (as a tuple indexed by pattern vertex) with
    (u, v) arc <=> (f(u), f(v)) arc, for all pattern u, v.

    ``order`` is the assignment order of pattern vertices; ``candidates[v]`` is
    a host bitmask of admissible images for pattern vertex v. Loop agreement
    must be encoded in ``candidates`` by the caller; arcs between distinct
    vertices are checked here. ``node_limit`` bounds the number of tentative
    assignments; exceeding it raises CapacityError.
    """
    n = len(order)
    full = (1 << h_size) - 1
    # for position k: list of (earlier position j, u->v arc?, v->u arc?)
    back = []
    position = {v: k for k, v in enumerate(order)}
    for k, v in enumerate(order):
        links = []
        for j in range(k):
            u = order[j]
            links.append((j, (p_out[u] >> v) & 1, (p_in[u] >> v) & 1))
        back.append(links)
    images = [0] * n
    nodes = 0

    def extend(k, used):
        nonlocal nodes
        if k == n:
            yield tuple(images[position[v]] for v in range(n))
            return
        mask = candidates[order[k]] & ~used & full
        for j, fwd, bwd in back[k]:
            h = images[j]
            mask &= h_out[h] if fwd else ~h_out[h]
            mask &= h_in[h] if bwd else ~h_in[h]
            if not mask:
                return
        for w in iter_bits(mask):
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise CapacityError(f"search exceeded the node budget of {node_limit}")
            images[k] = w
            yield from extend(k + 1, used | (1 << w))

    if n == 0:
        yield ()
        return
    for found in extend(0, 0):
        yield found
        if first_only:
            return


def refine_colors(out, inn, initial):
    """Colour refinement on one digraph; returns a list of int colours.

    Vertices with different colours cannot correspond under any isomorphism.
    Callers comparing two digraphs run this on their disjoint union so that the
    colour names agree.
    """
    n = len(out)
    colors = list(initial)
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    colors = [palette[c] for c in colors]
    while True:
        signatures = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in iter_bits(out[v]))),
                tuple(sorted(colors[w] for w in iter_bits(inn[v]))),
            )
            for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(signatures)))}
        refined = [palette[s] for s in signatures]
        if len(palette) == len(set(colors)):
            return refined
        colors = refined


def find_isomorphism(a_out, a_in, b_out, b_in, a_init=None, b_init=None):
    """Witness tuple f with f[x] the image of x, or None."""
    n = len(a_out)
    if n != len(b_out):
        return None
    if a_init is None:
        a_init = [((a_out[v] >> v) & 1, bin(a_out[v]).count("1"), bin(a_in[v]).count("1")) for v in range(n)]
    if b_init is None:
        b_init = [((b_out[v] >> v) & 1, bin(b_out[v]).count("1"), bin(b_in[v]).count("1")) for v in range(n)]
    # disjoint union: shift b by n
    u_out = list(a_out) + [m << n for m in b_out]
    u_in = list(a_in) + [m << n for m in b_in]
    colors = refine_colors(u_out, u_in, list(a_init) + list(b_init))
    ca, cb = colors[:n], colors[n:]
    if sorted(ca) != sorted(cb):
        return None
    by_color = {}
    for w, c in enumerate(cb):
        by_color[c] = by_color.get(c, 0) | (1 << w)
    candidates = [by_color.get(c, 0) for c in ca]
    # rarest colour first, then stay connected to what is already placed
    order = []
    placed = 0
    remaining = set(range(n))
    size_of = {c: ca.count(c) for c in set(ca)}
    while remaining:
        def key(v):
            touching = ((a_out[v] | a_in[v]) & placed) != 0
            return (not touching, size_of[ca[v]], v)
        v = min(remaining, key=key)
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    for f in match(a_out, a_in, b_out, b_in, n, order, candidates, first_only=True):
        return f
    return None
