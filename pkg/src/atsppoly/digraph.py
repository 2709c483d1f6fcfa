"""Complete-digraph combinatorics.

Node 1 is the distinguished depot node. N1 = N \\ {1} and A1 is the arc set of
the complete digraph restricted to N1; cycles with arcs in A1 are exactly the
subtours that formulations must exclude. Everything here is immutable and
enumeration is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb, factorial

from .errors import CapacityError
from .rational import ONE, ZERO

# Full cycle enumeration grows as sum_k C(n-1,k)(k-1)!; past this the
# desk-scale oracles stop being usable.
FULL_ENUMERATION_CAP = 12


@dataclass(frozen=True)
class ArcSpace:
    """Arc indexing for the complete digraph on nodes {1..n}, n >= 4."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 4:
            raise ValueError(f"node count must be an integer >= 4, got {self.n!r}")

    @cached_property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @cached_property
    def n1_nodes(self) -> tuple[int, ...]:
        return tuple(range(2, self.n + 1))

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in self.nodes for j in self.nodes if i != j)

    @cached_property
    def a1_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for (i, j) in self.arcs if i != 1 and j != 1)

    @cached_property
    def arc_index(self) -> dict[tuple[int, int], int]:
        return {arc: k for k, arc in enumerate(self.arcs)}

    def check_arc(self, i: int, j: int) -> tuple[int, int]:
        if (i, j) not in self.arc_index:
            raise ValueError(f"({i},{j}) is not an arc of the complete digraph on {self.n} nodes")
        return (i, j)

    def delta_plus(self, members) -> tuple[tuple[int, int], ...]:
        """Arcs leaving the node set: {ij : i in S, j not in S}."""
        s = self._validated_subset(members)
        return tuple((i, j) for (i, j) in self.arcs if i in s and j not in s)

    def delta_minus(self, members) -> tuple[tuple[int, int], ...]:
        """Arcs entering the node set: {ij : i not in S, j in S}."""
        s = self._validated_subset(members)
        return tuple((i, j) for (i, j) in self.arcs if i not in s and j in s)

    def inner_arcs(self, members) -> tuple[tuple[int, int], ...]:
        """A(S): arcs with both endpoints in S."""
        s = frozenset(members)
        return tuple((i, j) for (i, j) in self.arcs if i in s and j in s)

    def _validated_subset(self, members) -> frozenset[int]:
        s = frozenset(members)
        if not s or not s < frozenset(self.nodes):
            raise ValueError("node subset must be nonempty and proper")
        return s


@dataclass(frozen=True)
class Cycle:
    """A directed cycle given by its node sequence, canonically rotated.

    The stored tuple always starts at the smallest node, so equality is
    structural. Arc sets are derived lazily; a 2-node cycle (a, b) has the two
    arcs ab and ba.
    """

    nodes: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.nodes)
        if len(seq) < 2 or len(set(seq)) != len(seq):
            raise ValueError(f"cycle nodes must be distinct and at least 2, got {seq!r}")
        pivot = seq.index(min(seq))
        object.__setattr__(self, "nodes", seq[pivot:] + seq[:pivot])

    def __len__(self) -> int:
        return len(self.nodes)

    def __str__(self) -> str:
        return ">".join(str(v) for v in self.nodes)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        k = len(self.nodes)
        return tuple((self.nodes[t], self.nodes[(t + 1) % k]) for t in range(k))

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    def reverse(self) -> "Cycle":
        """The reversed cycle {ji : ij in C}; an involution."""
        return Cycle(tuple(reversed(self.nodes)))

    def succ(self, k: int) -> int:
        """Node following k in the cycle."""
        t = self.nodes.index(k)
        return self.nodes[(t + 1) % len(self.nodes)]

    def pred(self, k: int) -> int:
        """Node preceding k in the cycle."""
        t = self.nodes.index(k)
        return self.nodes[t - 1]

    def weight(self, values) -> "ZERO.__class__":
        total = ZERO
        for arc in self.arcs:
            total += values[arc]
        return total


@dataclass(frozen=True)
class NodeSubset:
    """A subset of N1 (used as an element of S1, so 2 <= |S| <= n-1)."""

    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_nodes)

    def __contains__(self, v) -> bool:
        return v in self.members

    @cached_property
    def sorted_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.sorted_nodes) + "}"


def _check_cap(space: ArcSpace, what: str):
    if space.n > FULL_ENUMERATION_CAP:
        raise CapacityError(
            f"{what} at n={space.n} exceeds the desk-scale cap of {FULL_ENUMERATION_CAP}; "
            "no sub-exhaustive routine exists here (membership testing for the "
            "cycle-sum parameter polytope is NP-hard in general)"
        )


def enumerate_cycles(space: ArcSpace, min_len: int, max_len: int) -> list[Cycle]:
    """All cycles of C1 (arcs within N1) with min_len <= |C| <= max_len.

    Each cycle appears exactly once in canonical rotation; ordering is by
    length, then node set, then sequence.
    """
    if not (2 <= min_len <= max_len <= space.n - 1):
        raise ValueError(f"cycle length range [{min_len},{max_len}] invalid for n={space.n}")
    _check_cap(space, "cycle enumeration")
    out: list[Cycle] = []
    for k in range(min_len, max_len + 1):
        for subset in combinations(space.n1_nodes, k):
            lead = subset[0]
            for rest in permutations(subset[1:]):
                out.append(Cycle((lead,) + rest))
    return out


def all_subtour_cycles(space: ArcSpace) -> list[Cycle]:
    """The full C1 family."""
    return enumerate_cycles(space, 2, space.n - 1)


def count_subtour_cycles(n: int) -> int:
    """Closed form |C1| = sum_{k=2}^{n-1} C(n-1,k) (k-1)!."""
    return sum(comb(n - 1, k) * factorial(k - 1) for k in range(2, n))


def subsets_s1(space: ArcSpace, min_size: int = 2, max_size: int | None = None) -> list[NodeSubset]:
    """The family S1: subsets of N1 with 2 <= |S| <= n-1, in deterministic order."""
    if max_size is None:
        max_size = space.n - 1
    if not (2 <= min_size <= max_size <= space.n - 1):
        raise ValueError(f"subset size range [{min_size},{max_size}] invalid for n={space.n}")
    _check_cap(space, "subset enumeration")
    out = []
    for k in range(min_size, max_size + 1):
        for subset in combinations(space.n1_nodes, k):
            out.append(NodeSubset(frozenset(subset)))
    return out


def tour_cycle(space: ArcSpace, order) -> Cycle:
    """The Hamiltonian cycle visiting the given node order (must cover N)."""
    seq = tuple(order)
    if sorted(seq) != list(space.nodes):
        raise ValueError("tour must visit every node exactly once")
    return Cycle(seq)


def enumerate_tours(space: ArcSpace) -> list[Cycle]:
    """All (n-1)! tours, anchored at node 1, in lexicographic order."""
    return [Cycle((1,) + rest) for rest in permutations(space.n1_nodes)]


def enumerate_cycle_covers(space: ArcSpace) -> list[tuple[Cycle, ...]]:
    """All integer points of the restricted assignment polytope.

    Each point is a permutation without fixed points, i.e. a set of disjoint
    directed cycles covering N. Tours are the covers with a single cycle.
    """
    covers = []
    for image in permutations(space.nodes):
        sigma = dict(zip(space.nodes, image))
        if any(i == j for i, j in sigma.items()):
            continue
        seen: set[int] = set()
        cycles = []
        for start in space.nodes:
            if start in seen:
                continue
            chain = [start]
            seen.add(start)
            v = sigma[start]
            while v != start:
                chain.append(v)
                seen.add(v)
                v = sigma[v]
            cycles.append(Cycle(tuple(chain)))
        covers.append(tuple(sorted(cycles, key=lambda c: c.nodes)))
    return covers


def indicator(space: ArcSpace, cycles) -> dict[tuple[int, int], "ONE.__class__"]:
    """0/1 arc vector of a disjoint cycle collection."""
    x = {arc: ZERO for arc in space.arcs}
    for cyc in cycles:
        for arc in cyc.arcs:
            if x[arc] != ZERO:
                raise ValueError(f"arc {arc} covered twice")
            x[arc] = ONE
    return x
