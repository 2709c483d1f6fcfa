"""Parameter vectors for the parametric formulation families.

A DVec assigns a rational to every arc of A1; the admissible set D consists of
strictly positive vectors whose cycle sums stay within 1, and Dbar is its
closure (nonnegativity instead of positivity). A BVec assigns a rational to
every node of N1; B is the open simplex (positive entries summing to one) and
Bbar its closure. Membership is always computed, never assumed: deciding
whether a vector lies in Dbar means maximizing cycle weight, which is NP-hard
in general, so the oracle here is an exhaustive desk-scale search.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .digraph import ArcSpace, Cycle, all_subtour_cycles, enumerate_cycles
from .errors import SamplingError
from .rational import ONE, ZERO, rat, rat_str

IN_FAMILY = "in_family"  # strictly admissible (d in D / b in B)
IN_CLOSURE_ONLY = "in_closure_only"  # on the closed set but not strictly positive
OUTSIDE = "outside"


@dataclass(frozen=True)
class DVec:
    """Arc-indexed rational vector over A1 (entries of any sign)."""

    n: int
    entries: dict[tuple[int, int], object]

    def __post_init__(self):
        space = ArcSpace(self.n)
        fixed = {}
        missing = []
        for arc in space.a1_arcs:
            if arc in self.entries:
                fixed[arc] = rat(self.entries[arc])
            else:
                missing.append(arc)
        if missing or len(self.entries) != len(fixed):
            raise ValueError("DVec entries must cover exactly the arcs of A1")
        object.__setattr__(self, "entries", fixed)

    def __getitem__(self, arc):
        return self.entries[arc]

    def cycle_sum(self, cycle: Cycle):
        total = ZERO
        for arc in cycle.arcs:
            total += self.entries[arc]
        return total

    def plus(self, other: "DVec") -> "DVec":
        return DVec(self.n, {a: q + other.entries[a] for a, q in self.entries.items()})

    def scaled(self, factor) -> "DVec":
        f = rat(factor)
        return DVec(self.n, {a: f * q for a, q in self.entries.items()})

    def is_zero(self) -> bool:
        return all(q == ZERO for q in self.entries.values())


@dataclass(frozen=True)
class BVec:
    """Node-indexed rational vector over N1."""

    n: int
    entries: dict[int, object]

    def __post_init__(self):
        space = ArcSpace(self.n)
        fixed = {}
        for node in space.n1_nodes:
            if node not in self.entries:
                raise ValueError("BVec entries must cover exactly the nodes of N1")
            fixed[node] = rat(self.entries[node])
        if len(self.entries) != len(fixed):
            raise ValueError("BVec entries must cover exactly the nodes of N1")
        object.__setattr__(self, "entries", fixed)

    def __getitem__(self, node):
        return self.entries[node]

    def subset_sum(self, nodes):
        total = ZERO
        for v in nodes:
            total += self.entries[v]
        return total


@dataclass(frozen=True)
class DClassification:
    status: str
    worst_cycle: Cycle
    worst_sum: object
    strict_interior: bool  # positive entries and every cycle sum < 1


@dataclass(frozen=True)
class BClassification:
    status: str
    total: object


def d_membership(d: DVec, space: ArcSpace) -> DClassification:
    """Classify against D / Dbar; the worst cycle maximizes the cycle sum."""
    if space.n != d.n:
        raise ValueError("dimension mismatch between DVec and ArcSpace")
    worst = None
    worst_sum = None
    for cyc in all_subtour_cycles(space):
        s = d.cycle_sum(cyc)
        if worst_sum is None or s > worst_sum:
            worst, worst_sum = cyc, s
    nonneg = all(q >= ZERO for q in d.entries.values())
    positive = all(q > ZERO for q in d.entries.values())
    if not nonneg or worst_sum > ONE:
        status = OUTSIDE
    elif positive:
        status = IN_FAMILY
    else:
        status = IN_CLOSURE_ONLY
    return DClassification(status, worst, worst_sum, positive and worst_sum < ONE)


def b_membership(b: BVec, space: ArcSpace) -> BClassification:
    if space.n != b.n:
        raise ValueError("dimension mismatch between BVec and ArcSpace")
    total = b.subset_sum(space.n1_nodes)
    nonneg = all(q >= ZERO for q in b.entries.values())
    positive = all(q > ZERO for q in b.entries.values())
    if not nonneg or total != ONE:
        status = OUTSIDE
    elif positive:
        status = IN_FAMILY
    else:
        status = IN_CLOSURE_ONLY
    return BClassification(status, total)


# -- distinguished vectors -----------------------------------------------------


def d_uniform(space: ArcSpace) -> DVec:
    """All entries 1/(n-1); recovers the classic MTZ offsets."""
    q = rat(1, space.n - 1)
    return DVec(space.n, {a: q for a in space.a1_arcs})


def b_uniform(space: ArcSpace) -> BVec:
    q = rat(1, space.n - 1)
    return BVec(space.n, {v: q for v in space.n1_nodes})


def d_out_vertex(space: ArcSpace, k: int) -> DVec:
    """d^k: ones on arcs leaving node k within A1, zero elsewhere."""
    if k not in space.n1_nodes:
        raise ValueError(f"node {k} is not in N1")
    return DVec(space.n, {(i, j): (ONE if i == k else ZERO) for (i, j) in space.a1_arcs})


def d_arc_vertex(space: ArcSpace, k: int, l: int) -> DVec:
    """d^{kl}: the canonical unit vector of the arc kl in A1."""
    if (k, l) not in set(space.a1_arcs):
        raise ValueError(f"({k},{l}) is not an arc of A1")
    return DVec(space.n, {a: (ONE if a == (k, l) else ZERO) for a in space.a1_arcs})


def b_node_vertex(space: ArcSpace, k: int) -> BVec:
    """b^k: the canonical unit vector of node k; a vertex of Bbar."""
    if k not in space.n1_nodes:
        raise ValueError(f"node {k} is not in N1")
    return BVec(space.n, {v: (ONE if v == k else ZERO) for v in space.n1_nodes})


def canonical_vertices(kind: str, space: ArcSpace):
    """The closure-spanning vertex families V_MTZ, V_DL, V_SCF."""
    if kind == "MTZ":
        return [d_out_vertex(space, k) for k in space.n1_nodes]
    if kind == "DL":
        return [d_arc_vertex(space, k, l) for (k, l) in space.a1_arcs]
    if kind == "SCF":
        return [b_node_vertex(space, k) for k in space.n1_nodes]
    raise ValueError(f"unknown vertex family {kind!r}")


# -- sampling -------------------------------------------------------------------


def sample_interior(kind: str, space: ArcSpace, seed: int):
    """Deterministic strictly-interior parameter samples.

    D samples are scaled so the worst cycle sum is exactly 1/2, keeping them
    far from the boundary; B samples are normalized positive vectors.
    """
    rng = random.Random(("param", kind, space.n, seed).__repr__())
    if kind == "D":
        raw = {a: rat(rng.randint(1, 100)) for a in space.a1_arcs}
        worst = max(DVec(space.n, raw).cycle_sum(c) for c in all_subtour_cycles(space))
        return DVec(space.n, {a: q / (2 * worst) for a, q in raw.items()})
    if kind == "B":
        raw = {v: rat(rng.randint(1, 100)) for v in space.n1_nodes}
        total = sum(raw.values(), ZERO)
        return BVec(space.n, {v: q / total for v, q in raw.items()})
    raise ValueError(f"unknown parameter family {kind!r}")


def d_facet_relative_interior(space: ArcSpace, cycle: Cycle, seed: int) -> DVec:
    """A point of Dbar lying on the facet of the given cycle and on no other.

    Start from an interior sample (all cycle sums <= 1/2) and push mass onto
    the cycle's arcs until its sum is exactly one; any other cycle gains
    strictly less than its remaining slack.
    """
    base = sample_interior("D", space, seed)
    slack = ONE - base.cycle_sum(cycle)
    bump = slack / len(cycle)
    entries = dict(base.entries)
    for arc in cycle.arcs:
        entries[arc] = entries[arc] + bump
    out = DVec(space.n, entries)
    cls = d_membership(out, space)
    if cls.worst_sum != ONE or out.cycle_sum(cycle) != ONE:
        raise AssertionError("facet construction failed")
    return out


@dataclass(frozen=True)
class Perturbation:
    delta: DVec
    # whether some cycle with at least 3 arcs has nonzero delta-sum
    breaks_long_cycle: bool
    witness_cycle: Cycle | None


def antisymmetric_perturbation(
    d: DVec, space: ArcSpace, seed: int, stay_in_family: bool = True
) -> Perturbation:
    """A nonzero perturbation with delta_ij = -delta_ji, supported on one triangle.

    When stay_in_family is set, the magnitude is shrunk until d + delta passes
    the D membership oracle.
    """
    if space.n < 4:
        raise ValueError("need at least three nodes in N1")
    rng = random.Random(("antisym", space.n, seed).__repr__())
    tri = rng.sample(space.n1_nodes, 3)
    eps = min(d[arc] for arc in _triangle_arcs(tri)) / 2
    if eps <= ZERO:
        raise SamplingError("base vector leaves no room on the chosen triangle")
    for _ in range(64):
        delta = _triangle_delta(space, tri, eps)
        if not stay_in_family or d_membership(d.plus(delta), space).status == IN_FAMILY:
            return _finish_perturbation(space, delta)
        eps = eps / 2
    raise SamplingError("could not keep the perturbed vector inside D")


def potential_perturbation(space: ArcSpace, seed: int, scale) -> Perturbation:
    """Anti-symmetric delta with zero sum on every cycle (a potential field)."""
    if rat(scale) == ZERO:
        raise ValueError("scale must be nonzero")
    rng = random.Random(("potential", space.n, seed).__repr__())
    phi = {v: rat(rng.randint(-20, 20), 40) * rat(scale) for v in space.n1_nodes}
    if len(set(phi.values())) == 1:
        phi[space.n1_nodes[0]] += rat(scale) / 4
    delta = DVec(space.n, {(i, j): phi[i] - phi[j] for (i, j) in space.a1_arcs})
    return _finish_perturbation(space, delta)


def _triangle_arcs(tri):
    a, b, c = tri
    return [(a, b), (b, c), (c, a), (b, a), (c, b), (a, c)]


def _triangle_delta(space: ArcSpace, tri, eps) -> DVec:
    a, b, c = tri
    forward = {(a, b), (b, c), (c, a)}
    backward = {(b, a), (c, b), (a, c)}
    entries = {}
    for arc in space.a1_arcs:
        if arc in forward:
            entries[arc] = eps
        elif arc in backward:
            entries[arc] = -eps
        else:
            entries[arc] = ZERO
    return DVec(space.n, entries)


def _finish_perturbation(space: ArcSpace, delta: DVec) -> Perturbation:
    for arc in space.a1_arcs:
        if delta[arc] + delta[(arc[1], arc[0])] != ZERO:
            raise AssertionError("perturbation is not anti-symmetric")
    witness = None
    for cyc in enumerate_cycles(space, 3, space.n - 1):
        if delta.cycle_sum(cyc) != ZERO:
            witness = cyc
            break
    return Perturbation(delta, witness is not None, witness)


# -- serialization ---------------------------------------------------------------


def param_to_json(vec) -> str:
    if isinstance(vec, DVec):
        return json.dumps(
            {"kind": "d", "entries": {f"{i},{j}": rat_str(q) for (i, j), q in sorted(vec.entries.items())}}
        )
    if isinstance(vec, BVec):
        return json.dumps(
            {"kind": "b", "entries": {str(v): rat_str(q) for v, q in sorted(vec.entries.items())}}
        )
    raise TypeError("expected a DVec or BVec")


def param_from_json(text: str, n: int):
    payload = json.loads(text)
    kind = payload.get("kind")
    entries = payload.get("entries", {})
    if kind == "d":
        parsed = {}
        for key, val in entries.items():
            i, j = key.split(",")
            parsed[(int(i), int(j))] = rat(val)
        return DVec(n, parsed)
    if kind == "b":
        return BVec(n, {int(k): rat(v) for k, v in entries.items()})
    raise ValueError(f"unknown parameter kind {kind!r}")
