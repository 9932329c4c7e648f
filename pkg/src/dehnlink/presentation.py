"""Augmented Dehn presentations and their small-cancellation checks.

Letters are nonzero integers: ``f`` is the generator of face ``f`` (a loop
passing down through that region), ``-f`` its inverse.  Relators and words
are plain tuples of letters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .diagram import Diagram, FaceSet, is_connected, is_reduced
from .errors import PreconditionViolated, UnsupportedParameter

Word = tuple[int, ...]


def invert(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def rotations(r: Word) -> list[Word]:
    return [r[k:] + r[:k] for k in range(len(r))]


def symmetrize(relators) -> tuple[Word, ...]:
    """All cyclic permutations of the relators and their inverses."""
    out = set()
    for r in relators:
        out.update(rotations(tuple(r)))
        out.update(rotations(invert(tuple(r))))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Presentation:
    parity: dict[int, str]
    base_relators: tuple[Word, ...]
    symmetrized: tuple[Word, ...] = field(init=False)

    def __post_init__(self):
        for r in self.base_relators:
            n = len(r)
            if any(r[k] == -r[(k + 1) % n] for k in range(n)):
                raise ValueError(f"relator {r} is not cyclically reduced")
        object.__setattr__(self, "symmetrized", symmetrize(self.base_relators))

    @classmethod
    def from_relators(cls, relators, parity=None) -> Presentation:
        relators = tuple(tuple(r) for r in relators)
        gens = sorted({abs(x) for r in relators for x in r})
        parity = dict(parity) if parity else {g: "W" for g in gens}
        return cls(parity, relators)

    @property
    def generators(self) -> list[int]:
        return sorted(self.parity)

    def parity_of(self, letter: int) -> str:
        return self.parity[abs(letter)]

    @cached_property
    def relator_set(self) -> frozenset[Word]:
        return frozenset(self.symmetrized)

    @cached_property
    def by_prefix2(self) -> dict[tuple[int, int], list[Word]]:
        """Symmetrized relators indexed by their first two letters."""
        index: dict[tuple[int, int], list[Word]] = {}
        for r in self.symmetrized:
            index.setdefault(r[:2], []).append(r)
        return index

    @cached_property
    def square_cells(self) -> dict[tuple[int, int], list[tuple[int, int, Word]]]:
        """(v, t) -> [(v', b, r)] for symmetrized relators r = v t v'^-1 b^-1."""
        return {key: [(-r[2], -r[3], r) for r in rels] for key, rels in self.by_prefix2.items()}

    @cached_property
    def relation_basis(self) -> list[tuple[int, list[int]]]:
        """Echelon basis of the relator exponent vectors."""
        return _echelon(relation_matrix(self))

    @cached_property
    def small_cancellation(self) -> dict:
        """Cached C(4)/T(4) verdicts with the maximal piece length."""
        return {
            "pieces_max_len": max((len(pc.word) for pc in compute_pieces(self)), default=0),
            "C4": check_C(self, 4),
            "T4": check_T(self, 4),
        }

    @property
    def verified(self) -> bool:
        sc = self.small_cancellation
        return sc["C4"] and sc["T4"]

    def dump(self) -> str:
        lines = [f"gen {g} parity {self.parity[g]}" for g in self.generators]
        lines += ["rel " + " ".join(str(x) for x in r) for r in self.base_relators]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    parity, rels = {}, []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "gen":
            parity[int(parts[1])] = parts[3]
        elif parts[0] == "rel":
            rels.append(tuple(int(x) for x in parts[1:]))
        else:
            raise ValueError(f"unrecognised line {line!r}")
    return Presentation(parity, tuple(rels))


def build_presentation(d: Diagram, f: FaceSet, col: dict[int, str]) -> Presentation:
    """One generator per face and one relator per crossing.

    The corners of each crossing are read counterclockwise, starting at the
    corner between the incoming under-edge and the next edge counterclockwise
    (an over-edge), with exponents +, -, +, -.  Relators read this way make
    every longitude word commute with its meridian, which pins the choice.
    """
    if not d.crossings or not is_connected(d):
        raise PreconditionViolated("presentation needs a connected diagram with crossings")
    if not is_reduced(d):
        raise PreconditionViolated("presentation needs a reduced diagram")
    rels = []
    for c0, c1, c2, c3 in f.corner_faces:
        rels.append((c0, -c1, c2, -c3))
    return Presentation({k: col[k] for k in f.ids}, tuple(rels))


# ---------------------------------------------------------------------------
# small cancellation

@dataclass(frozen=True)
class Piece:
    word: Word
    count: int


def _prefix_counts(p: Presentation) -> Counter:
    counts: Counter = Counter()
    for r in p.symmetrized:
        for k in range(1, len(r) + 1):
            counts[r[:k]] += 1
    return counts


def compute_pieces(p: Presentation) -> set[Piece]:
    """Maximal common prefixes of pairs of distinct symmetrized relators."""
    counts = _prefix_counts(p)
    rels = p.symmetrized
    out = set()
    for a in range(len(rels)):
        for b in range(a + 1, len(rels)):
            r, s = rels[a], rels[b]
            k = 0
            while k < min(len(r), len(s)) and r[k] == s[k]:
                k += 1
            if k:
                out.add(Piece(r[:k], counts[r[:k]]))
    return out


def _min_pieces(r: Word, counts: Counter) -> float:
    best = [0.0] + [float("inf")] * len(r)
    for j in range(1, len(r) + 1):
        for i in range(j):
            if counts[r[i:j]] >= 2:
                best[j] = min(best[j], best[i] + 1)
    return best[len(r)]


def check_C(p: Presentation, k: int) -> bool:
    """No symmetrized relator is a product of fewer than k pieces."""
    counts = _prefix_counts(p)
    return all(_min_pieces(r, counts) >= k for r in p.symmetrized)


def check_T(p: Presentation, q: int) -> bool:
    """T(4): every triple without inverse neighbours has a reduced junction."""
    if q != 4:
        raise UnsupportedParameter("only T(4) is implemented")
    rels = p.symmetrized
    inv = {r: invert(r) for r in rels}
    # r -> s when r.s cancels at the junction and s is not r^-1
    bad = {r: [s for s in rels if r[-1] == -s[0] and s != inv[r]] for r in rels}
    for r1 in rels:
        for r2 in bad[r1]:
            for r3 in bad[r2]:
                if r1 in bad[r3]:
                    return False
    return True


# ---------------------------------------------------------------------------
# abelianization

def relation_matrix(p: Presentation) -> list[list[int]]:
    """Exponent sums of each base relator, one column per generator."""
    gens = p.generators
    col = {g: k for k, g in enumerate(gens)}
    rows = []
    for r in p.base_relators:
        row = [0] * len(gens)
        for x in r:
            row[col[abs(x)]] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def exponent_vector(w: Word, p: Presentation) -> list[int]:
    col = {g: k for k, g in enumerate(p.generators)}
    v = [0] * len(col)
    for x in w:
        v[col[abs(x)]] += 1 if x > 0 else -1
    return v


def _echelon(rows: list[list[int]]) -> list[tuple[int, list[int]]]:
    """Integer row echelon form: (pivot column, row) with positive pivots."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        live = [r for r in rows if r[c]]
        if not live:
            continue
        rest = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[c] else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        out.append((c, piv))
        rows = [r for r in rest if any(r)]
    return out


def in_relation_lattice(v: list[int], p: Presentation) -> bool:
    """Whether an exponent vector vanishes in the abelianization."""
    v = list(v)
    for c, row in p.relation_basis:
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def abelianization(p: Presentation) -> tuple[int, list[int]]:
    """Free rank and torsion coefficients of the abelianized group."""
    m = [list(r) for r in relation_matrix(p)]
    ncols = len(p.generators)
    diag = []
    while m and any(any(r) for r in m):
        # move a smallest nonzero entry to (0, 0)
        _, i, j = min((abs(x), i, j) for i, r in enumerate(m) for j, x in enumerate(r) if x)
        m[0], m[i] = m[i], m[0]
        for r in m:
            r[0], r[j] = r[j], r[0]
        a = m[0][0]
        dirty = False
        for i in range(1, len(m)):
            q = m[i][0] // a
            m[i] = [x - q * y for x, y in zip(m[i], m[0])]
            dirty |= bool(m[i][0])
        for j in range(1, len(m[0])):
            q = m[0][j] // a
            for r in m:
                r[j] -= q * r[0]
            dirty |= bool(m[0][j])
        if dirty:
            continue
        if any(x % a for r in m[1:] for x in r[1:]):
            # restore divisibility: fold an offending row into the first
            i = next(i for i in range(1, len(m)) if any(x % a for x in m[i][1:]))
            m[0] = [x + y for x, y in zip(m[0], m[i])]
            continue
        diag.append(abs(a))
        m = [r[1:] for r in m[1:]]
    rank = len(diag)
    return ncols - rank, [x for x in diag if x > 1]
