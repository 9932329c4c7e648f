"""Constructors for diagrams used as fixtures: braid and plat closures,
connected sums, kinks and crossing changes."""

from __future__ import annotations

from fractions import Fraction

from .diagram import Diagram, swap_strands

# crossing ports, counterclockwise: bottom-right, top-right, top-left, bottom-left
BR, TR, TL, BL = range(4)


def closure(strands: int, word, kind: str = "braid") -> Diagram:
    """Close a braid word.

    ``word`` is a sequence of ``(i, s)``: a crossing between positions i and
    i+1 (0-based), where s=+1 puts the strand from bottom-left on top.
    ``kind`` is ``"braid"`` (position k on top joined to k at the bottom) or
    ``"plat"`` (caps joining positions 0-1 and 2-3 at both ends; 4 strands).
    """
    if kind == "plat" and strands != 4:
        raise ValueError("plat closure is implemented for 4 strands")
    link: dict = {}

    def join(a, b):
        link.setdefault(a, []).append(b)
        link.setdefault(b, []).append(a)

    current = [("b", k) for k in range(strands)]
    for t, (i, _) in enumerate(word):
        join(current[i], (t, BL))
        join(current[i + 1], (t, BR))
        current[i], current[i + 1] = (t, TL), (t, TR)
    for k in range(strands):
        join(current[k], ("t", k))
    if kind == "braid":
        for k in range(strands):
            join(("t", k), ("b", k))
    else:
        for end in "bt":
            join((end, 0), (end, 1))
            join((end, 2), (end, 3))

    def is_port(n):
        return isinstance(n[0], int)

    def travel(port):
        """Follow the segment leaving ``port`` to the next crossing port."""
        prev, node = port, link[port][0]
        while not is_port(node):
            nxt = [m for m in link[node] if m != prev]
            prev, node = node, nxt[0] if nxt else prev
        return node

    partner = {BR: TL, TL: BR, BL: TR, TR: BL}
    label: dict = {}  # port -> edge label of the edge arriving there or leaving
    arriving: set = set()
    n = 0
    for t in range(len(word)):
        for p in range(4):
            if (t, p) in label:
                continue
            start = (t, p)
            port = start
            while True:
                n += 1
                far = travel(port)
                label[port] = label[far] = n
                arriving.add(far)
                port = (far[0], partner[far[1]])
                if port == start:
                    break
    tuples = []
    for t, (i, s) in enumerate(word):
        ring = [label[(t, p)] for p in range(4)]
        unders = (BR, TL) if s > 0 else (TR, BL)
        first = next(p for p in unders if (t, p) in arriving)
        tuples.append(tuple(ring[first:] + ring[:first]))
    free = 0
    if kind == "braid":
        # untouched strands close up to crossing-free circles
        touched = {i for i, _ in word} | {i + 1 for i, _ in word}
        free = strands - len(touched)
    return Diagram.from_tuples(tuples, free)


def continued_fraction(terms) -> Fraction:
    """[a1, a2, ..., ak] = a1 + 1/(a2 + 1/(... + 1/ak))."""
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a + 1 / value
    return value


def rational(terms) -> Diagram:
    """Alternating 4-plat for the Conway notation ``terms`` (e.g. [3, 2])."""
    terms = list(terms)
    if len(terms) % 2 == 0:
        # [.., a] == [.., a-1, 1]: same fraction, same crossing count
        terms[-1:] = [terms[-1] - 1, 1]
    word = []
    for k, a in enumerate(terms):
        gen, sign = (1, +1) if k % 2 == 0 else (0, -1)
        word.extend([(gen, sign)] * a)
    return closure(4, word, "plat")


def connected_sum(d1: Diagram, d2: Diagram, e1: int, e2: int) -> Diagram:
    """Band ``d1`` and ``d2`` together at edges e1 (of d1) and e2 (of d2)."""
    off = d1.edge_count
    t1 = [list(c.edges) for c in d1.crossings]
    t2 = [[x + off for x in c.edges] for c in d2.crossings]
    tuples = t1 + t2
    i1, s1 = d1.head[e1]
    i2, s2 = d2.head[e2]
    tuples[i1][s1] = e2 + off
    tuples[len(t1) + i2][s2] = e1
    return Diagram.from_tuples(tuples, d1.circles + d2.circles)


def alternating_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum joined so that alternation continues across the band."""
    def kind(d, occ):
        return occ[1] % 2  # 0 under, 1 over

    e1 = min(d1.head)
    want = (kind(d1, d1.tail[e1]), kind(d1, d1.head[e1]))
    for e2 in sorted(d2.head):
        if (kind(d2, d2.tail[e2]), kind(d2, d2.head[e2])) == want:
            return connected_sum(d1, d2, e1, e2)
    raise ValueError("no edge of matching passage type")


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    off = d1.edge_count
    tuples = [c.edges for c in d1.crossings]
    tuples += [tuple(x + off for x in c.edges) for c in d2.crossings]
    return Diagram.from_tuples(tuples, d1.circles + d2.circles)


def add_kink(d: Diagram, e: int, under_first: bool = True) -> Diagram:
    """Insert a nugatory curl on edge e."""
    top = d.edge_count
    tuples = [list(c.edges) for c in d.crossings]
    i, s = d.head[e]
    eb, loop = top + 1, top + 2
    tuples[i][s] = eb
    if under_first:
        tuples.append([e, eb, loop, loop])
    else:
        tuples.append([loop, e, eb, loop])
    return Diagram.from_tuples(tuples, d.circles)


def change_crossing(d: Diagram, i: int) -> Diagram:
    """Swap over and under at crossing i only."""
    tuples = [c.edges for c in d.crossings]
    tuples[i] = swap_strands(d.crossings[i])
    return Diagram.from_tuples(tuples, d.circles)
