"""Combinatorial link diagrams in PD notation.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting at
the incoming under-strand edge.  Slots 0 and 2 carry the under-strand,
slots 1 and 3 the over-strand.  Everything downstream (faces, colouring,
relators, longitude words) is derived from this rotation system.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from pathlib import Path

from .errors import NotConnected, ParseError, PreconditionViolated, ValidationError

WHITE, BLACK = "W", "B"
LEFT, RIGHT = "L", "R"

Occurrence = tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    @property
    def over_entry(self) -> int:
        """Slot where the over-strand enters (3 for positive, 1 for negative)."""
        return 3 if self.sign > 0 else 1

    def __str__(self) -> str:
        return "X({},{},{},{})".format(*self.edges)


@dataclass(frozen=True)
class Diagram:
    """An oriented link diagram.

    Build with :meth:`from_tuples` (or :func:`parse_pd`); the constructor
    itself performs no validation.  Components made only of crossings are
    numbered first, in order of their smallest edge label; the ``circles``
    crossing-free components follow.
    """

    crossings: tuple[Crossing, ...]
    circles: int = 0

    @classmethod
    def from_tuples(cls, tuples, circles: int = 0) -> Diagram:
        tuples = [tuple(int(x) for x in t) for t in tuples]
        if circles < 0:
            raise ValidationError("negative circle count")
        for t in tuples:
            if len(t) != 4:
                raise ValidationError(f"crossing {t} does not have 4 edges")
            if min(t) < 1:
                raise ValidationError(f"crossing {t} has a non-positive edge label")
        occ = _occurrences(tuples)
        for label, places in occ.items():
            if len(places) != 2:
                raise ValidationError(
                    f"edge {label} occurs {len(places)} time(s), expected exactly twice")
        mapping, arrival = {}, {}
        for walk, arrive in _orient_components(tuples, occ):
            for old in walk:
                mapping[old] = len(mapping) + 1
                arrival[mapping[old]] = arrive[old]
        relabelled = [tuple(mapping[x] for x in t) for t in tuples]
        d = cls(_make_crossings(relabelled, arrival), circles)
        d._check_planar()
        return d

    # derived structure ------------------------------------------------

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def occurrences(self) -> dict[int, tuple[Occurrence, Occurrence]]:
        return {k: tuple(v) for k, v in _occurrences([c.edges for c in self.crossings]).items()}

    @cached_property
    def head(self) -> dict[int, Occurrence]:
        """Occurrence where each edge enters its crossing."""
        out = {}
        for i, c in enumerate(self.crossings):
            out[c.edges[0]] = (i, 0)
            out[c.edges[c.over_entry]] = (i, c.over_entry)
        return out

    @cached_property
    def tail(self) -> dict[int, Occurrence]:
        return {e: _other(self.occurrences[e], h) for e, h in self.head.items()}

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edge labels of each crossing component, in orientation order."""
        seen: set[int] = set()
        out = []
        for start in sorted(self.head):
            if start in seen:
                continue
            walk = []
            e = start
            while e not in seen:
                seen.add(e)
                walk.append(e)
                i, slot = self.head[e]
                e = self.crossings[i].edges[(slot + 2) % 4]
            out.append(tuple(walk))
        return tuple(out)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.circles

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {e: k for k, walk in enumerate(self.components) for e in walk}

    def passages(self, comp: int) -> list[tuple[int, int]]:
        """(crossing, entry slot) for each crossing met along a component."""
        return [self.head[e] for e in self.components[comp]]

    def other_end(self, o: Occurrence) -> Occurrence:
        i, slot = o
        a, b = self.occurrences[self.crossings[i].edges[slot]]
        return b if a == o else a

    def _check_planar(self) -> None:
        for part in _crossing_parts(self):
            faces = _trace_darts(self, part)
            if len(faces) != len(part) + 2:
                raise ValidationError(
                    f"not a planar diagram: {len(part)} crossings bound {len(faces)} faces")

    def to_pd(self) -> str:
        items = [str(c) for c in self.crossings] + ["O"] * self.circles
        return "PD[" + ", ".join(items) + "]"

    def __str__(self) -> str:
        return self.to_pd()


def _occurrences(tuples) -> dict[int, list[Occurrence]]:
    occ: dict[int, list[Occurrence]] = defaultdict(list)
    for i, t in enumerate(tuples):
        for slot, label in enumerate(t):
            occ[label].append((i, slot))
    return occ


def _other(pair, o):
    a, b = pair
    return b if a == o else a


def _orient_components(tuples, occ) -> list[tuple[list[int], dict[int, Occurrence]]]:
    """Trace strands and orient each component.

    Returns, per component, its edge walk (starting at the smallest label)
    and the occurrence at which each edge enters a crossing.  Under-passages
    fix the direction; a component that only passes over other strands
    follows increasing edge labels.
    """
    seen: set[int] = set()
    out = []
    for start in sorted(occ):
        if start in seen:
            continue
        walk, arrival = [], {}
        e, arrive = start, occ[start][1]
        while e not in arrival:
            walk.append(e)
            arrival[e] = arrive
            i, slot = arrive
            exit_ = (i, (slot + 2) % 4)
            e = tuples[i][exit_[1]]
            arrive = _other(occ[e], exit_)
        if e != start or arrive != arrival[start]:
            raise ValidationError(f"strand through edge {start} does not close up")
        under = {slot for _, slot in arrival.values() if slot in (0, 2)}
        if under == {0, 2}:
            raise ValidationError(
                f"component through edge {start} enters under-crossings from both ends")
        if under:
            reverse = under == {2}
        else:
            reverse = len(walk) > 1 and walk[1] != walk[0] + 1 and walk[-1] == walk[0] + 1
        if reverse:
            walk = [walk[0]] + walk[:0:-1]
            arrival = {k: _other(occ[k], v) for k, v in arrival.items()}
        seen.update(walk)
        out.append((walk, arrival))
    return out


def _make_crossings(tuples, arrival) -> tuple[Crossing, ...]:
    out = []
    for i, t in enumerate(tuples):
        if arrival[t[0]] != (i, 0) or arrival[t[2]] == (i, 2):
            raise ValidationError(f"crossing X{t}: under-strand orientation mismatch")
        in1 = arrival[t[1]] == (i, 1)
        in3 = arrival[t[3]] == (i, 3)
        if in1 == in3:
            raise ValidationError(f"crossing X{t}: over-strand orientation mismatch")
        out.append(Crossing(t, +1 if in3 else -1))
    return tuple(out)


def _crossing_parts(d: Diagram) -> list[list[int]]:
    """Crossing indices of each connected piece of the diagram."""
    adj = defaultdict(set)
    for e, (a, b) in d.occurrences.items():
        adj[a[0]].add(b[0])
        adj[b[0]].add(a[0])
    seen: set[int] = set()
    parts = []
    for i in range(len(d.crossings)):
        if i in seen:
            continue
        part, queue = [], deque([i])
        seen.add(i)
        while queue:
            j = queue.popleft()
            part.append(j)
            for k in adj[j]:
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        parts.append(sorted(part))
    return parts


def _trace_darts(d: Diagram, part) -> list[list[tuple[int, str, Occurrence]]]:
    """Trace the faces of one connected piece.

    Walking along an edge into slot q of a crossing, the face on the
    walker's left continues out of slot q-1.  Each entry is
    (edge, side, arrival occurrence); side is relative to the edge's
    orientation.
    """
    todo = {(i, s) for i in part for s in range(4)}
    faces = []
    while todo:
        start = min(todo)
        dart = start
        face = []
        while True:
            todo.discard(dart)
            i, s = dart
            e = d.crossings[i].edges[s]
            arrive = d.other_end(dart)
            side = LEFT if d.tail[e] == dart else RIGHT
            face.append((e, side, arrive))
            dart = (arrive[0], (arrive[1] - 1) % 4)
            if dart == start:
                break
        faces.append(face)
    return faces


# ---------------------------------------------------------------------------
# parsing

_ITEM = re.compile(r"\s*(?:X\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|(O))\s*")


def parse_pd(text: str, circles: int = 0) -> Diagram:
    """Parse ``PD[X(a,b,c,d), ..., O]``; each ``O`` is a crossing-free circle.

    ``circles`` adds further crossing-free components, for callers that
    declare them out of band (``PD[]`` alone is the empty link).
    """
    s = text.strip()
    m = re.fullmatch(r"PD\s*\[(.*)\]", s, flags=re.S)
    if not m:
        raise ParseError(f"expected PD[...], got {text[:40]!r}")
    body = m.group(1)
    tuples = []
    if body.strip():
        for chunk in _split_items(body):
            im = _ITEM.fullmatch(chunk)
            if not im:
                raise ParseError(f"bad PD item {chunk.strip()!r}")
            if im.group(5):
                circles += 1
            else:
                tuples.append(tuple(int(im.group(k)) for k in range(1, 5)))
    return Diagram.from_tuples(tuples, circles)


def _split_items(body: str) -> list[str]:
    items, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced parentheses")
    items.append("".join(cur))
    return items


def load_diagram(path) -> Diagram:
    """Read a diagram from a PD text file or a JSON file.

    JSON files hold ``{"pd": [[a, b, c, d], ...], "circles": n}``.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            data = json.loads(text)
            return Diagram.from_tuples(data.get("pd", []), int(data.get("circles", 0)))
        except (json.JSONDecodeError, AttributeError, TypeError) as exc:
            raise ParseError(f"{path}: {exc}") from exc
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    return parse_pd(" ".join(lines))


# ---------------------------------------------------------------------------
# faces and colouring

@dataclass(frozen=True)
class FaceSet:
    """Faces of a connected diagram, numbered from 1.

    ``faces[k]`` lists the (edge, side) corners of face ``k + 1``;
    ``corner_faces[i][p]`` is the face between slots p and p+1 of crossing i;
    ``edge_faces[e]`` maps each side of edge e to its face.
    """

    faces: tuple[tuple[tuple[int, str], ...], ...]
    corner_faces: tuple[tuple[int, int, int, int], ...]
    edge_faces: dict

    def __len__(self) -> int:
        return len(self.faces)

    @property
    def ids(self) -> range:
        return range(1, len(self.faces) + 1)


def is_connected(d: Diagram) -> bool:
    if not d.crossings:
        return d.circles == 1
    return d.circles == 0 and len(_crossing_parts(d)) == 1


def trace_faces(d: Diagram) -> FaceSet:
    if not d.crossings or not is_connected(d):
        raise NotConnected("face tracing needs a connected diagram with crossings")
    return _faces_of(d, range(len(d.crossings)))


def _faces_of(d: Diagram, part) -> FaceSet:
    raw = _trace_darts(d, part)
    raw.sort(key=lambda f: min((e, side) for e, side, _ in f))
    corner = {}
    edge_faces: dict[int, dict[str, int]] = defaultdict(dict)
    faces = []
    for fid, face in enumerate(raw, start=1):
        for e, side, (i, q) in face:
            corner[i, (q - 1) % 4] = fid
            edge_faces[e][side] = fid
        faces.append(tuple((e, side) for e, side, _ in face))
    corner_faces = tuple(tuple(corner[i, p] for p in range(4)) for i in part)
    return FaceSet(tuple(faces), corner_faces, dict(edge_faces))


def checkerboard(f: FaceSet) -> dict[int, str]:
    """Proper two-colouring; the face left of the lowest edge is White."""
    adj = defaultdict(set)
    for sides in f.edge_faces.values():
        a, b = sides[LEFT], sides[RIGHT]
        if a == b:
            raise ValidationError("an edge has the same face on both sides")
        adj[a].add(b)
        adj[b].add(a)
    first = f.edge_faces[min(f.edge_faces)][LEFT]
    colour = {first: WHITE}
    queue = deque([first])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            want = BLACK if colour[a] == WHITE else WHITE
            if b not in colour:
                colour[b] = want
                queue.append(b)
            elif colour[b] != want:
                raise ValidationError("faces admit no checkerboard colouring")
    return {k: colour[k] for k in sorted(colour)}


# ---------------------------------------------------------------------------
# predicates

def is_alternating(d: Diagram) -> bool:
    for comp in range(len(d.components)):
        kinds = [slot % 2 for _, slot in d.passages(comp)]
        n = len(kinds)
        if any(kinds[j] == kinds[(j + 1) % n] for j in range(n)):
            return False
    return True


def _nugatory(d: Diagram) -> tuple[int, int] | None:
    """First crossing (and corner p) whose corners p and p+2 share a face."""
    corners = {}
    for part in _crossing_parts(d):
        fs = _faces_of(d, part)
        for i, cf in zip(part, fs.corner_faces):
            corners[i] = cf
    for i in range(len(d.crossings)):
        cf = corners[i]
        for p in (0, 1):
            if cf[p] == cf[p + 2]:
                return i, p
    return None


def is_reduced(d: Diagram) -> bool:
    return _nugatory(d) is None


def reduce(d: Diagram) -> Diagram:
    """Untwist nugatory crossings, lowest index first, until none remain."""
    while True:
        hit = _nugatory(d)
        if hit is None:
            return d
        d = _untwist(d, *hit)


def _flip(c: Crossing) -> tuple[int, int, int, int]:
    """Crossing after a half-turn about an axis in the plane.

    The rotation reflects the plane and exchanges over and under, so the
    counterclockwise order reverses and the old over-strand becomes the
    under-strand.
    """
    a, b, cc, dd = c.edges
    if c.sign > 0:  # over-strand enters at slot 3
        return (dd, cc, b, a)
    return (b, a, dd, cc)


def _untwist(d: Diagram, i: int, p: int) -> Diagram:
    edges = d.crossings[i].edges
    # side A: everything reachable from slots p+1, p+2 without passing crossing i
    side = set()
    queue = deque()
    for s in ((p + 1) % 4, (p + 2) % 4):
        j, _ = d.other_end((i, s))
        if j != i and j not in side:
            side.add(j)
            queue.append(j)
    while queue:
        j = queue.popleft()
        for s in range(4):
            k, _ = d.other_end((j, s))
            if k != i and k not in side:
                side.add(k)
                queue.append(k)
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in ((edges[0], edges[2]), (edges[1], edges[3])):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    tuples = []
    for j, c in enumerate(d.crossings):
        if j == i:
            continue
        t = _flip(c) if j in side else c.edges
        tuples.append(tuple(find(x) for x in t))
    remaining = {x for t in tuples for x in t}
    lost = {find(x) for x in edges} - remaining
    return Diagram.from_tuples(tuples, d.circles + len(lost))


def _shared_edges(f: FaceSet) -> dict[tuple[int, int], list[int]]:
    shared = defaultdict(list)
    for e in sorted(f.edge_faces):
        a, b = f.edge_faces[e][LEFT], f.edge_faces[e][RIGHT]
        shared[min(a, b), max(a, b)].append(e)
    return shared


def is_prime(d: Diagram) -> bool:
    if not d.crossings or not is_connected(d):
        raise PreconditionViolated("primeness needs a connected diagram with crossings")
    if not is_reduced(d):
        raise PreconditionViolated("primeness needs a reduced diagram")
    return all(len(es) < 2 for es in _shared_edges(trace_faces(d)).values())


def connected_parts(d: Diagram) -> list[Diagram]:
    parts = []
    for part in _crossing_parts(d):
        parts.append(Diagram.from_tuples([d.crossings[i].edges for i in part]))
    parts.extend(Diagram((), 1) for _ in range(d.circles))
    return parts


def split_factors(d: Diagram) -> list[Diagram]:
    """Cut along disconnections and two-point curves into prime pieces."""
    if not is_reduced(d):
        raise PreconditionViolated("split_factors needs a reduced diagram")
    out = []
    todo = connected_parts(d)
    while todo:
        part = todo.pop(0)
        if not part.crossings:
            out.append(part)
            continue
        pair = next((es[:2] for es in _shared_edges(trace_faces(part)).values()
                     if len(es) >= 2), None)
        if pair is None:
            out.append(part)
            continue
        todo[:0] = connected_parts(_cut(part, *pair))
    return out


def _cut(d: Diagram, e1: int, e2: int) -> Diagram:
    """Reconnect two edges crossing a separating curve, splitting the diagram."""
    adj = defaultdict(set)
    for e, (a, b) in d.occurrences.items():
        if e in (e1, e2):
            continue
        adj[a[0]].add(b[0])
        adj[b[0]].add(a[0])
    start = d.tail[e1][0]
    side = {start}
    queue = deque([start])
    while queue:
        j = queue.popleft()
        for k in adj[j]:
            if k not in side:
                side.add(k)
                queue.append(k)
    if d.head[e1][0] in side or d.tail[e2][0] in side or d.head[e2][0] not in side:
        raise ValidationError(f"edges {e1}, {e2} do not separate the diagram")
    tuples = [list(c.edges) for c in d.crossings]
    h1, h2 = d.head[e1], d.head[e2]
    tuples[h1[0]][h1[1]] = e2
    tuples[h2[0]][h2[1]] = e1
    return Diagram.from_tuples(tuples, d.circles)


# ---------------------------------------------------------------------------
# orientation data and transformations

def self_linking(d: Diagram, comp: int) -> int:
    if comp >= len(d.components):
        if comp < d.n_components:
            return 0
        raise IndexError(f"no component {comp}")
    total = 0
    for c in d.crossings:
        if d.component_of[c.edges[0]] == comp and d.component_of[c.edges[1]] == comp:
            total += c.sign
    return total


def linking_number(d: Diagram, a: int, b: int) -> int:
    """Half the signed count of crossings between two distinct components."""
    total = 0
    for c in d.crossings:
        pair = {d.component_of[c.edges[0]], d.component_of[c.edges[1]]}
        if pair == {a, b} and a != b:
            total += c.sign
    return total // 2


def swap_strands(c: Crossing) -> tuple[int, int, int, int]:
    """Tuple for the same crossing with over and under exchanged."""
    a, b, cc, dd = c.edges
    return (dd, a, b, cc) if c.sign > 0 else (b, cc, dd, a)


def mirror(d: Diagram) -> Diagram:
    """Swap over and under at every crossing (orientation kept)."""
    return Diagram.from_tuples([swap_strands(c) for c in d.crossings], d.circles)


def turn_over(d: Diagram) -> Diagram:
    """Rotate the whole diagram a half-turn about an axis in the plane."""
    return Diagram.from_tuples([_flip(c) for c in d.crossings], d.circles)


def canonical_form(d: Diagram) -> tuple:
    """Relabelling-invariant key for an oriented diagram on the sphere.

    Minimises the sorted crossing list over every component order and every
    starting edge per component.
    """
    comps = d.components
    best = None
    for order in permutations(range(len(comps))):
        for starts in product(*(range(len(comps[k])) for k in order)):
            mapping = {}
            for k, s in zip(order, starts):
                walk = comps[k]
                for e in walk[s:] + walk[:s]:
                    mapping[e] = len(mapping) + 1
            key = tuple(sorted(tuple(mapping[x] for x in c.edges) for c in d.crossings))
            if best is None or key < best:
                best = key
    return (best or (), d.circles)
