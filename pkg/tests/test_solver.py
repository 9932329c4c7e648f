import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dehnlink.diagram import checkerboard, trace_faces
from dehnlink.errors import PreconditionViolated
from dehnlink.longitude import longitude_word
from dehnlink.oracle import IDENTITY, bounded_identity_search, evaluate, finite_quotient_witness, satisfying_assignments
from dehnlink.presentation import Presentation, build_presentation, invert
from dehnlink.solver import (
    find_chain,
    format_word,
    free_reduce,
    geodesic_reduce,
    is_geodesic,
    is_identity,
    parity_changes,
    parse_word,
    words_equal,
)

from oracles import brute_chains, corpus_diagram, strip_boundary_product


def present(name):
    d = corpus_diagram(name)
    f = trace_faces(d)
    return d, f, build_presentation(d, f, checkerboard(f))


TREFOIL_D, TREFOIL_F, TREFOIL = present("trefoil")
_, _, EIGHT = present("eight")
_, _, SEVEN = present("7_7")

# b1 w1^-1 b2 w2^-1 with b1, b2 black and w1, w2 white
B1, W1, B2, W2 = 1, 2, 3, 4
SINGLE = Presentation({B1: "B", W1: "W", B2: "B", W2: "W"}, ((B1, -W1, B2, -W2),))


def words(p, max_len=14):
    letters = [g * s for g in p.generators for s in (1, -1)]
    return st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)


def relator_heavy_words(p, max_parts=5):
    """Words mixing random letters with relator fragments, so chains occur."""
    letters = [g * s for g in p.generators for s in (1, -1)]
    part = st.one_of(
        st.sampled_from(letters).map(lambda x: (x,)),
        st.tuples(st.sampled_from(p.symmetrized), st.integers(2, 4)).map(lambda t: t[0][:t[1]]),
    )
    return st.lists(part, max_size=max_parts).map(lambda ps: free_reduce(sum(ps, ())))


# free reduction and formatting -------------------------------------------

def test_free_reduce_examples():
    a, b = 1, 2
    assert free_reduce((a, -a)) == ()
    assert free_reduce((a, b, -b, a)) == (a, a)
    assert free_reduce((a, b, a)) == (a, b, a)


def test_parse_format():
    assert parse_word("3 -1 5 -2") == (3, -1, 5, -2)
    assert parse_word("3,-1") == (3, -1)
    assert format_word((3, -1)) == "3 -1"
    with pytest.raises(ValueError):
        parse_word("1 0")


@given(st.lists(st.integers(-4, 4).filter(bool), max_size=30))
def test_free_reduce_properties(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(x != -y for x, y in zip(r, r[1:]))
    assert free_reduce(tuple(w) + invert(tuple(w))) == ()
    assert sum(w) == sum(r)


def test_parity_changes():
    assert parity_changes((B1, B2, W1, W2), SINGLE) == 1
    assert parity_changes((), SINGLE) == 0
    assert parity_changes((B1, W1, B2, W2), SINGLE) == 3
    for r in TREFOIL.symmetrized:
        assert parity_changes(r, TREFOIL) == 3


# chains -------------------------------------------------------------------

def test_single_relator_chain():
    m = find_chain((B1, -W1, B2), SINGLE)
    assert m is not None
    assert (m.start, m.n, m.replacement) == (0, 1, (W2,))
    assert m.apply((B1, -W1, B2)) == (W2,)
    assert find_chain((B1, -W1), SINGLE) is None


def test_single_relator_words_equal():
    assert SINGLE.verified
    assert words_equal((B1, -W1, B2), (W2,), SINGLE)


def test_trefoil_longitude_chain_matches_tiling():
    raw = longitude_word(TREFOIL_D, TREFOIL_F, 0).longitude_word
    assert len(raw) == 12
    m = find_chain(free_reduce(raw), TREFOIL)
    tilings = brute_chains(free_reduce(raw), TREFOIL)
    assert (m is None) == (not tilings)
    assert m is not None and (m.start, m.n) == tilings[0]
    geo = geodesic_reduce(raw, TREFOIL)
    assert len(geo) == 6 and not brute_chains(geo, TREFOIL)


def test_chain_needs_square_relators():
    p = Presentation.from_relators([(1, 2, 3)])
    with pytest.raises(PreconditionViolated):
        find_chain((1, 2), p)


@pytest.mark.parametrize("p", [TREFOIL, EIGHT, SEVEN], ids=["3_1", "4_1", "7_7"])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_find_chain_agrees_with_tiling_enumeration(p, data):
    w = data.draw(relator_heavy_words(p))
    m = find_chain(w, p)
    tilings = brute_chains(w, p)
    assert (m is None) == (not tilings)
    if m is not None:
        assert (m.start, m.n) == tilings[0]
        assert w[m.start:m.end][0] == m.verticals[0]
        assert w[m.end - 1] == -m.verticals[-1]
        assert strip_boundary_product(m) == free_reduce(w[m.start:m.end] + invert(m.replacement))
        assert parity_changes(w[m.start:m.end], p) >= 2


# geodesics and identity -----------------------------------------------------

def test_is_geodesic_examples():
    assert is_geodesic((), TREFOIL)
    assert is_geodesic((1,), TREFOIL)
    assert not is_geodesic((1, -1), TREFOIL)
    for r in TREFOIL.symmetrized:
        assert not is_geodesic(r, TREFOIL)


def test_geodesic_reduce_relators():
    assert geodesic_reduce((), TREFOIL) == ()
    for r in TREFOIL.symmetrized:
        assert geodesic_reduce(r, TREFOIL) == ()


def test_conjugated_relator():
    for g in ((1,), (2, -4)):
        for r in TREFOIL.base_relators:
            w = g + r + invert(g)
            assert geodesic_reduce(w, TREFOIL) == ()
            assert bounded_identity_search(w, TREFOIL, max_len=12) == IDENTITY


def test_is_identity_examples():
    assert is_identity(TREFOIL.base_relators[0], TREFOIL)
    assert not is_identity((1,), TREFOIL)
    unverified = Presentation.from_relators([(1, 1, 1, 1), (1, 2, 1, -2)])
    with pytest.raises(PreconditionViolated):
        is_identity((1,), unverified)


def test_products_of_relator_conjugates():
    rng = random.Random(7)
    letters = [g * s for g in TREFOIL.generators for s in (1, -1)]
    for _ in range(12):
        w = []
        k = rng.randint(1, 3)
        for _ in range(k):
            g = [rng.choice(letters)] if k < 3 else []
            w += g + list(rng.choice(TREFOIL.symmetrized)) + [-x for x in reversed(g)]
        assert len(w) <= 14
        assert is_identity(w, TREFOIL)
        assert bounded_identity_search(w, TREFOIL, max_len=16) == IDENTITY


def test_words_equal():
    assert words_equal((1, 2, -3), (1, 2, -3), TREFOIL)
    assert not words_equal((1,), (2,), TREFOIL)
    assert geodesic_reduce((1, -2), TREFOIL) == (1, -2)
    assert finite_quotient_witness((1, -2), TREFOIL, max_degree=4) is not None


@pytest.mark.parametrize("p", [TREFOIL, EIGHT], ids=["3_1", "4_1"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_geodesic_reduce_properties(p, data):
    w = data.draw(relator_heavy_words(p, 6))
    trace = []
    g = geodesic_reduce(w, p, trace)
    assert is_geodesic(g, p)
    assert len(g) <= len(w) and (len(w) - len(g)) % 2 == 0
    for host, m in trace:
        assert len(m.apply(host)) == len(host) - 2
    assert bool(g) == (not is_identity(w, p))
    if not g:
        assert len(w) % 2 == 0


def _assignments(p):
    return list(satisfying_assignments(p, 3)) + list(satisfying_assignments(p, 4, max_nodes=3000))[:20]


ASSIGN = {id(p): _assignments(p) for p in (TREFOIL, EIGHT)}


@pytest.mark.parametrize("p", [TREFOIL, EIGHT], ids=["3_1", "4_1"])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_geodesic_reduce_preserves_quotient_images(p, data):
    w = data.draw(relator_heavy_words(p, 6))
    g = geodesic_reduce(w, p)
    for a in ASSIGN[id(p)]:
        n = len(next(iter(a.values())))
        assert evaluate(w, a, n) == evaluate(g, a, n)
