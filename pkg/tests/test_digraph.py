"""Graph-core: arc indexing, cycle enumeration, delta sets."""
import itertools

import pytest

from atsppoly.digraph import (
    ArcSpace,
    Cycle,
    NodeSubset,
    all_subtour_cycles,
    count_subtour_cycles,
    enumerate_cycle_covers,
    enumerate_cycles,
    enumerate_tours,
    indicator,
    subsets_s1,
)
from atsppoly.errors import CapacityError


def brute_force_cycles(n, min_len, max_len):
    """Independent oracle: canonicalized permutations of node subsets of N1."""
    seen = set()
    for k in range(min_len, max_len + 1):
        for perm in itertools.permutations(range(2, n + 1), k):
            pivot = perm.index(min(perm))
            seen.add(perm[pivot:] + perm[:pivot])
    return seen


def test_arcspace_counts():
    space = ArcSpace(5)
    assert len(space.arcs) == 5 * 4
    assert len(space.a1_arcs) == 4 * 3
    for k, arc in enumerate(space.arcs):
        assert space.arc_index[arc] == k


def test_arcspace_rejects_small_n():
    with pytest.raises(ValueError):
        ArcSpace(3)


def test_enumerate_cycles_small_counts():
    # n=4 with lengths 2..3: three 2-cycles on {2,3,4} plus two triangles
    assert len(enumerate_cycles(ArcSpace(4), 2, 3)) == 5
    # n=5, pairs only: C(4,2) = 6
    assert len(enumerate_cycles(ArcSpace(5), 2, 2)) == 6


def test_enumerate_cycles_matches_brute_force():
    for n in (4, 5, 6):
        got = {c.nodes for c in enumerate_cycles(ArcSpace(n), 2, n - 1)}
        assert got == brute_force_cycles(n, 2, n - 1)


@pytest.mark.parametrize("n", range(4, 9))
def test_cycle_count_closed_form(n):
    assert len(all_subtour_cycles(ArcSpace(n))) == count_subtour_cycles(n)


def test_enumerate_cycles_rejects_bad_range():
    with pytest.raises(ValueError):
        enumerate_cycles(ArcSpace(5), 3, 2)
    with pytest.raises(ValueError):
        enumerate_cycles(ArcSpace(5), 2, 5)


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        enumerate_cycles(ArcSpace(13), 2, 12)


def test_delta_sets_singleton():
    space = ArcSpace(4)
    assert set(space.delta_plus({2})) == {(2, 1), (2, 3), (2, 4)}
    assert set(space.delta_minus({2})) == {(1, 2), (3, 2), (4, 2)}


def test_delta_sets_pair():
    space = ArcSpace(4)
    assert set(space.delta_plus({2, 3})) == {(2, 1), (2, 4), (3, 1), (3, 4)}


def test_delta_cardinality_and_partition():
    space = ArcSpace(6)
    full = set(space.arcs)
    for subset in subsets_s1(space):
        s = set(subset)
        dp = set(space.delta_plus(s))
        dm = set(space.delta_minus(s))
        inner = set(space.inner_arcs(s))
        outer = set(space.inner_arcs(set(space.nodes) - s))
        assert len(dp) == len(s) * (space.n - len(s))
        assert dp | dm | inner | outer == full
        assert sum(map(len, (dp, dm, inner, outer))) == len(full)


def test_delta_rejects_empty_and_full():
    space = ArcSpace(4)
    with pytest.raises(ValueError):
        space.delta_plus(set())
    with pytest.raises(ValueError):
        space.delta_plus({1, 2, 3, 4})


def test_cycle_canonical_rotation():
    assert Cycle((3, 4, 2)).nodes == (2, 3, 4)
    assert Cycle((4, 2, 3)) == Cycle((2, 3, 4))
    assert str(Cycle((3, 2))) == "2>3"


def test_cycle_reverse():
    assert Cycle((2, 3, 4)).reverse().nodes == (2, 4, 3)
    two = Cycle((2, 3))
    assert two.reverse() == two


def test_reverse_is_involution_n6():
    for cyc in all_subtour_cycles(ArcSpace(6)):
        assert cyc.reverse().reverse() == cyc


def test_cycle_neighbors():
    cyc = Cycle((2, 3, 4))
    assert cyc.succ(3) == 4
    assert cyc.pred(3) == 2
    assert cyc.succ(4) == 2


def test_cycle_rejects_degenerate():
    with pytest.raises(ValueError):
        Cycle((2,))
    with pytest.raises(ValueError):
        Cycle((2, 3, 2))


def test_subsets_s1():
    space = ArcSpace(5)
    fam = subsets_s1(space)
    assert len(fam) == 2**4 - 4 - 1
    assert all(2 <= len(s) <= 4 for s in fam)
    assert str(NodeSubset(frozenset({4, 2}))) == "{2,4}"


def test_tours_and_covers():
    space = ArcSpace(4)
    tours = enumerate_tours(space)
    assert len(tours) == 6
    covers = enumerate_cycle_covers(space)
    # permutations of 4 elements without fixed points: 9 derangements
    assert len(covers) == 9
    single = [c for c in covers if len(c) == 1]
    assert len(single) == 6  # tours appear among covers

    x = indicator(space, [tours[0]])
    assert sum(x.values()) == 4
