"""Independent checks for the solver.

``bounded_identity_search`` proves words trivial by splicing relators;
``finite_quotient_witness`` proves words nontrivial by mapping the group
to a symmetric group.  Both are bounded and may be inconclusive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .presentation import Presentation, Word
from .solver import free_reduce

IDENTITY = "Identity"
UNKNOWN = "Unknown"

Perm = tuple[int, ...]


def bounded_identity_search(w, p: Presentation, max_len: int = 16, max_steps: int = 20_000) -> str:
    """Breadth-first search for a relator splicing sequence reaching 1.

    States are freely reduced words no longer than ``max_len``; a move
    inserts a symmetrized relator at some position and freely reduces.
    """
    start = free_reduce(w)
    if not start:
        return IDENTITY
    seen = {start}
    queue = deque([start])
    steps = 0
    while queue and steps < max_steps:
        u = queue.popleft()
        steps += 1
        for k in range(len(u) + 1):
            for r in p.symmetrized:
                v = _splice(u, k, r)
                if not v:
                    return IDENTITY
                if len(v) <= max_len and v not in seen:
                    seen.add(v)
                    queue.append(v)
    return UNKNOWN


def _splice(u: Word, k: int, r: Word) -> Word:
    """free_reduce(u[:k] + r + u[k:]) for freely reduced u."""
    if (k == 0 or u[k - 1] != -r[0]) and (k == len(u) or u[k] != -r[-1]):
        return u[:k] + r + u[k:]
    out = list(u[:k])
    for x in r:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    j = k
    while j < len(u) and out and out[-1] == -u[j]:
        out.pop()
        j += 1
    return tuple(out) + u[j:]


# ---------------------------------------------------------------------------
# permutation representations

def perm_mul(a: Perm, b: Perm) -> Perm:
    """Apply a, then b."""
    return tuple(b[i] for i in a)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def evaluate(w, assignment: dict[int, Perm], n: int) -> Perm:
    out = identity_perm(n)
    for x in w:
        out = perm_mul(out, assignment[x]) if x > 0 else perm_mul(out, perm_inv(assignment[-x]))
    return out


def _class_representatives(n: int) -> list[Perm]:
    """One permutation of each cycle type."""
    reps = []

    def partitions(m, largest):
        if m == 0:
            yield []
            return
        for k in range(min(m, largest), 0, -1):
            for rest in partitions(m - k, k):
                yield [k] + rest

    for part in partitions(n, n):
        perm = list(range(n))
        pos = 0
        for k in part:
            for i in range(k):
                perm[pos + i] = pos + (i + 1) % k
            pos += k
        reps.append(tuple(perm))
    return reps


def _generator_order(p: Presentation) -> list[int]:
    """Generators ordered so relators fill up (and propagate) early."""
    gens = p.generators
    count = {g: 0 for g in gens}
    for r in p.base_relators:
        for x in r:
            count[abs(x)] += 1
    order = [max(gens, key=lambda g: (count[g], -g))]
    while len(order) < len(gens):
        placed = set(order)

        def score(g):
            best = 0
            for r in p.base_relators:
                letters = {abs(x) for x in r}
                if g in letters:
                    best = max(best, len(letters & placed))
            return (best, count[g], -g)

        order.append(max((g for g in gens if g not in placed), key=score))
    return order


def satisfying_assignments(p: Presentation, degree: int, max_nodes: int = 1_000_000):
    """Yield assignments generator -> permutation killing every base relator.

    The first generator only takes one permutation per conjugacy class, so
    each homomorphism is produced up to simultaneous conjugation.  Stops
    silently after ``max_nodes`` search nodes.
    """
    gens = _generator_order(p)
    allperms = list(permutations(range(degree)))
    rels = [r for r in p.base_relators]
    budget = [max_nodes]

    def propagate(assign):
        assign = dict(assign)
        changed = True
        while changed:
            changed = False
            for r in rels:
                missing = [k for k, x in enumerate(r) if abs(x) not in assign]
                if not missing:
                    if evaluate(r, assign, degree) != identity_perm(degree):
                        return None
                    continue
                k = missing[0]
                g = abs(r[k])
                if len({abs(r[j]) for j in missing}) > 1 or sum(abs(x) == g for x in r) > 1:
                    continue
                rest = r[k + 1:] + r[:k]
                val = perm_inv(evaluate(rest, assign, degree))
                assign[g] = val if r[k] > 0 else perm_inv(val)
                changed = True
        return assign

    def search(assign):
        budget[0] -= 1
        if budget[0] < 0:
            return
        free = [g for g in gens if g not in assign]
        if not free:
            yield assign
            return
        g = free[0]
        choices = _class_representatives(degree) if not assign else allperms
        for a in choices:
            nxt = propagate({**assign, g: a})
            if nxt is not None:
                yield from search(nxt)

    yield from search({})


@dataclass(frozen=True)
class QuotientWitness:
    degree: int
    assignment: dict[int, Perm]
    image_of_word: Perm


def finite_quotient_witness(w, p: Presentation, max_degree: int = 6,
                            max_nodes: int = 200_000) -> QuotientWitness | None:
    """First permutation representation in which w is not the identity."""
    w = tuple(w)
    if not free_reduce(w):
        return None
    for n in range(2, max_degree + 1):
        for assign in satisfying_assignments(p, n, max_nodes):
            img = evaluate(w, assign, n)
            if img != identity_perm(n):
                return QuotientWitness(n, dict(assign), img)
    return None
