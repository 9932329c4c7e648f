"""Longitude words read off the diagram.

A based loop is recorded by the regions it passes through: ``+f`` when it
goes down through face f, ``-f`` when it comes back up.  The blackboard
push-off of a component only crosses the projection plane where the
component runs under another strand, once on each side of the over-strand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import LEFT, RIGHT, Diagram, FaceSet, self_linking
from .errors import ArcNotOnComponent, PreconditionViolated
from .presentation import Presentation, Word
from .solver import free_reduce, geodesic_reduce, is_geodesic, parity_changes

# corners (before, after) the over-strand for a push-off entering at slot 0
_SIDE_CORNERS = {LEFT: (3, 2), RIGHT: (0, 1)}


@dataclass(frozen=True)
class LongitudeRep:
    component: int
    double_word: Word
    slk: int
    meridian_word: Word
    longitude_word: Word

    @property
    def double_length(self) -> int:
        return len(self.double_word)


def _check_component(d: Diagram, comp: int) -> None:
    if not 0 <= comp < d.n_components:
        raise PreconditionViolated(f"no component {comp}")


def double_word(d: Diagram, f: FaceSet | None, comp: int, side: str = LEFT) -> Word:
    _check_component(d, comp)
    if comp >= len(d.components):
        return ()
    if f is None:
        raise PreconditionViolated("faces are required for a component with crossings")
    before, after = _SIDE_CORNERS[side]
    walk = d.components[comp]
    w = []
    for e in walk:
        i, slot = d.head[e]
        if slot == 0:
            cf = f.corner_faces[i]
            w += [cf[before], -cf[after]]
    return tuple(w)


def meridian_word(d: Diagram, f: FaceSet | None, comp: int, arc: int | None = None) -> Word:
    """Down through the face right of the arc, up through the face on its left.

    A crossing-free circle on its own has faces 1 (left, inside) and
    2 (right, outside).
    """
    _check_component(d, comp)
    if comp >= len(d.components):
        if arc is not None:
            raise ArcNotOnComponent(f"circle component {comp} has no labelled arcs")
        return (2, -1)
    if arc is None:
        arc = min(d.components[comp])
    if d.component_of.get(arc) != comp:
        raise ArcNotOnComponent(f"edge {arc} is not on component {comp}")
    sides = f.edge_faces[arc]
    return (sides[RIGHT], -sides[LEFT])


def longitude_word(d: Diagram, f: FaceSet | None, comp: int, side: str = LEFT) -> LongitudeRep:
    """Double of the component corrected by the meridian to the power -slk.

    The double starts at the component's lowest edge, where the meridian is
    placed.  The word is kept as concatenated (length |double| + 2|slk|);
    cancellation at the seam is left to the solver.
    """
    dw = double_word(d, f, comp, side)
    slk = self_linking(d, comp)
    m = meridian_word(d, f, comp)
    corr = m * abs(slk) if slk < 0 else (-m[1], -m[0]) * slk
    return LongitudeRep(comp, dw, slk, m, dw + corr)


def normal_form(rep: LongitudeRep, p: Presentation | None, max_states: int = 50_000) -> Word | None:
    """Find a word equal to the longitude that changes parity at most once.

    Geodesic reduction first, then a breadth-first search over equal-length
    rewrites that swap one half of a relator for the inverse of the other
    half.  Returns None when the bounded search is exhausted.  A longitude
    that freely reduces to nothing (a crossing-free circle) needs no
    presentation.
    """
    if not free_reduce(rep.longitude_word):
        return ()
    if p is None or not p.verified:
        raise PreconditionViolated("presentation is not C(4)-T(4)")
    start = geodesic_reduce(rep.longitude_word, p)
    if parity_changes(start, p) <= 1:
        return start
    swaps: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for r in p.symmetrized:
        swaps.setdefault(r[:2], []).append((-r[3], -r[2]))
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < max_states:
        w = queue.popleft()
        for k in range(len(w) - 1):
            for pair in swaps.get(w[k:k + 2], ()):
                u = w[:k] + pair + w[k + 2:]
                if u in seen or free_reduce(u) != u:
                    continue
                if parity_changes(u, p) <= 1:
                    return u
                seen.add(u)
                queue.append(u)
    return None


def is_normal(w: Word, p: Presentation) -> bool:
    return parity_changes(w, p) <= 1 and is_geodesic(w, p)
