"""Word problem for symmetrized presentations with length-4 relators.

A chain is a ladder of n square cells glued along vertical edges.  Its top
boundary ``t_0 t_1 ... t_{n+1}`` (with ``t_0 = v_0`` and
``t_{n+1} = v_n^-1``) equals the bottom boundary ``b_1 ... b_n`` in the
group, so finding one in a word shortens it by two.  For C(4)-T(4)
presentations a word is geodesic exactly when it is freely reduced and has
no chain subword, which makes repeated chain replacement a decision
procedure for the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionViolated
from .presentation import Presentation, Word, invert


def parse_word(text: str) -> Word:
    toks = text.replace(",", " ").split()
    w = tuple(int(t) for t in toks)
    if 0 in w:
        raise ValueError("0 is not a letter")
    return w


def format_word(w: Word) -> str:
    return " ".join(str(x) for x in w)


def free_reduce(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def parity_changes(w: Word, p: Presentation) -> int:
    par = [p.parity_of(x) for x in w]
    return sum(1 for a, b in zip(par, par[1:]) if a != b)


@dataclass(frozen=True)
class ChainMatch:
    start: int
    n: int
    relators_used: tuple[Word, ...]
    verticals: Word
    replacement: Word

    @property
    def end(self) -> int:
        """One past the last host position covered."""
        return self.start + self.n + 2

    def apply(self, w: Word) -> Word:
        return w[: self.start] + self.replacement + w[self.end:]


def find_chain(w: Word, p: Presentation) -> ChainMatch | None:
    """Leftmost, then shortest, chain subword of w.

    For each start position the set of reachable vertical letters is pushed
    through the host one letter at a time; a chain closes when the next
    host letter is the inverse of a reachable vertical.
    """
    if any(len(r) != 4 for r in p.base_relators):
        raise PreconditionViolated("chain search needs length-4 relators")
    cells = p.square_cells
    n = len(w)
    for s in range(n - 2):
        # vertical letter -> (previous vertical, bottom letter, relator)
        frontier = {w[s]: None}
        layers = []
        for j in range(s + 1, n):
            if layers and -w[j] in frontier:
                return _unwind(s, layers, -w[j])
            step = {}
            for v in frontier:
                for v2, b, r in cells.get((v, w[j]), ()):
                    if v2 not in step:
                        step[v2] = (v, b, r)
            if not step:
                break
            layers.append(step)
            frontier = step
    return None


def _unwind(start: int, layers, last: int) -> ChainMatch:
    verts, bottoms, rels = [last], [], []
    v = last
    for step in reversed(layers):
        prev, b, r = step[v]
        bottoms.append(b)
        rels.append(r)
        verts.append(prev)
        v = prev
    return ChainMatch(
        start=start,
        n=len(layers),
        relators_used=tuple(reversed(rels)),
        verticals=tuple(reversed(verts)),
        replacement=tuple(reversed(bottoms)),
    )


def is_geodesic(w: Word, p: Presentation) -> bool:
    return free_reduce(w) == tuple(w) and find_chain(tuple(w), p) is None


def geodesic_reduce(w, p: Presentation, trace: list | None = None) -> Word:
    """Alternate free reduction and chain replacement until geodesic.

    Applied matches are appended to ``trace`` as ``(host word, match)``.
    """
    w = free_reduce(w)
    while True:
        m = find_chain(w, p)
        if m is None:
            return w
        if trace is not None:
            trace.append((w, m))
        w = free_reduce(m.apply(w))


def _require_verified(p: Presentation) -> None:
    if not p.verified:
        raise PreconditionViolated("presentation is not C(4)-T(4)")


def is_identity(w, p: Presentation) -> bool:
    _require_verified(p)
    return not geodesic_reduce(w, p)


def words_equal(u, v, p: Presentation) -> bool:
    return is_identity(tuple(u) + invert(tuple(v)), p)
