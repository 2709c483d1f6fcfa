"""Separation oracles for the projected inequality families.

Unit-slack circuit rows are separated in polynomial time by shortest-cycle
search on the nonnegative weights 1 - x; unit cut rows by exact max-flow
min-cut between the depot and each other node. Parameter-dependent right-hand
sides make the general families enumeration-bound, so those oracles sweep the
cycle or subset family exhaustively at desk scale, breaking ties by canonical
order so results are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import ArcSpace, Cycle, NodeSubset, all_subtour_cycles, subsets_s1
from .parameters import BVec, DVec
from .rational import ONE, ZERO, rat


@dataclass(frozen=True)
class ViolatedRow:
    family: str
    cycle: Cycle | None
    subset: NodeSubset | None
    index: object  # extra row index: an arc for the DL closure, a node for the V_MTZ mode
    lhs: object
    rhs: object

    @property
    def violation(self):
        return self.lhs - self.rhs

    def to_json_dict(self) -> dict:
        from .rational import rat_str

        return {
            "family": self.family,
            "cycle": list(self.cycle.nodes) if self.cycle else None,
            "subset": sorted(self.subset.members) if self.subset else None,
            "index": list(self.index) if isinstance(self.index, tuple) else self.index,
            "lhs": rat_str(self.lhs),
            "rhs": rat_str(self.rhs),
            "violation": rat_str(self.violation),
        }


# -- circuit rows -----------------------------------------------------------------


def separate_circuit(space: ArcSpace, x, d: DVec | None = None) -> ViolatedRow | None:
    """Most violated row sum_C x <= |C| - r(C).

    With d None the slack is the unit one of the closure and the oracle is a
    shortest-cycle search on weights 1 - x; with a d vector the right-hand
    side varies per cycle and the sweep is exhaustive.
    """
    if d is None:
        return _separate_circuit_unit(space, x)
    best = None
    for cyc in all_subtour_cycles(space):
        lhs = cyc.weight(x)
        rhs = rat(len(cyc)) - d.cycle_sum(cyc)
        if lhs > rhs and (best is None or lhs - rhs > best.violation):
            best = ViolatedRow("circuit", cyc, None, None, lhs, rhs)
    return best


def _separate_circuit_unit(space: ArcSpace, x) -> ViolatedRow | None:
    """Shortest cycle under w = 1 - x over A1; violated iff its weight < 1."""
    nodes = space.n1_nodes
    w = {(i, j): ONE - x[(i, j)] for (i, j) in space.a1_arcs}
    dist = {}
    nxt = {}
    for i in nodes:
        for j in nodes:
            if i == j:
                continue
            dist[(i, j)] = w[(i, j)]
            nxt[(i, j)] = j
    for k in nodes:  # Floyd-Warshall; weights are nonnegative since x <= 1
        for i in nodes:
            if i == k:
                continue
            dik = dist[(i, k)]
            for j in nodes:
                if j == k or j == i:
                    continue
                cand = dik + dist[(k, j)]
                if cand < dist[(i, j)]:
                    dist[(i, j)] = cand
                    nxt[(i, j)] = nxt[(i, k)]
    best = None
    best_arc = None
    for (j, i) in space.a1_arcs:
        total = dist[(i, j)] + w[(j, i)]
        if best is None or total < best:
            best = total
            best_arc = (i, j)
    if best is None or best >= ONE:
        return None
    i, j = best_arc
    path = [i]
    v = i
    while v != j and len(path) <= len(nodes):
        v = nxt[(v, j)]
        path.append(v)
    if v != j:
        return _circuit_unit_exhaustive(space, x)
    cycle = _first_simple_cycle(path)
    lhs = cycle.weight(x)
    rhs = rat(len(cycle) - 1)
    if lhs <= rhs:  # pragma: no cover - nonnegative weights forbid this
        return _circuit_unit_exhaustive(space, x)
    return ViolatedRow("circuit", cycle, None, None, lhs, rhs)


def _circuit_unit_exhaustive(space: ArcSpace, x) -> ViolatedRow | None:
    best = None
    for cyc in all_subtour_cycles(space):
        lhs = cyc.weight(x)
        rhs = rat(len(cyc) - 1)
        if lhs > rhs and (best is None or lhs - rhs > best.violation):
            best = ViolatedRow("circuit", cyc, None, None, lhs, rhs)
    return best


def _first_simple_cycle(path) -> Cycle:
    seen = {}
    for idx, v in enumerate(path):
        if v in seen:
            return Cycle(tuple(path[seen[v]:idx]))
        seen[v] = idx
    return Cycle(tuple(path))


# -- cut rows ---------------------------------------------------------------------


def separate_cut(space: ArcSpace, x, b: BVec | None = None) -> ViolatedRow | None:
    """Most violated row sum_{delta+(S)} x >= r(S).

    Unit right-hand sides (closure / DFJ) are separated by exact min-cut
    between each node of N1 and the depot. General demands keep the min-cut
    screen as a lower bound and fall back to the exhaustive subset sweep.
    """
    if b is None:
        best = None
        for k in space.n1_nodes:
            value, source_side = _min_cut(space, x, k, 1)
            if value < ONE and 2 <= len(source_side) <= space.n - 1:
                subset = NodeSubset(frozenset(source_side))
                cand = ViolatedRow("cut", None, subset, None, value, ONE)
                if best is None or cand.lhs < best.lhs:
                    best = cand
        if best is None:
            return None
        # report in the <= convention: violation = rhs - lhs of the >= row
        return ViolatedRow("cut", None, best.subset, None, -best.lhs, -ONE)

    if all(_min_cut(space, x, k, 1)[0] >= ONE for k in space.n1_nodes):
        return None
    best = None
    for subset in subsets_s1(space):
        lhs = ZERO
        for arc in space.delta_plus(subset.members):
            lhs += x[arc]
        demand = b.subset_sum(subset)
        if lhs < demand and (best is None or demand - lhs > best.violation):
            best = ViolatedRow("cut", None, subset, None, -lhs, -demand)
    return best


def _min_cut(space: ArcSpace, x, source: int, sink: int):
    """Exact Edmonds-Karp max-flow on capacities x; returns (value, source side)."""
    residual = {arc: x[arc] for arc in space.arcs}
    for arc in space.arcs:
        residual.setdefault((arc[1], arc[0]), ZERO)
    flow_value = ZERO
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            v = queue.popleft()
            for u in space.nodes:
                if u != v and u not in parent and residual.get((v, u), ZERO) > ZERO:
                    parent[u] = v
                    queue.append(u)
        if sink not in parent:
            break
        bottleneck = None
        v = sink
        while parent[v] is not None:
            p = parent[v]
            cap = residual[(p, v)]
            if bottleneck is None or cap < bottleneck:
                bottleneck = cap
            v = p
        v = sink
        while parent[v] is not None:
            p = parent[v]
            residual[(p, v)] -= bottleneck
            residual[(v, p)] += bottleneck
            v = p
        flow_value += bottleneck
    side = {v for v in parent}
    return flow_value, side


# -- lifted DL rows -----------------------------------------------------------------


def separate_dl_lifted(space: ArcSpace, x, mode: str, d: DVec | None = None) -> ViolatedRow | None:
    """Exhaustive most-violated search over the lifted cycle rows.

    mode "vdl":  sum_C (x_ij + x_ji) - x_lk <= |C| - 1 over (C, kl in C)
    mode "vmtz": sum_C (x_ij + x_ji) - x_{k,pred} - x_{succ,k} <= |C| - 1 over (C, k in C)
    mode "param": the d-weighted projection rows over C (needs d)
    """
    if mode not in ("vdl", "vmtz", "param"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "param" and d is None:
        raise ValueError("param mode needs a d vector")
    for (i, j) in space.a1_arcs:
        if i < j and x[(i, j)] + x[(j, i)] > ONE:
            return ViolatedRow("pair", Cycle((i, j)), None, None, x[(i, j)] + x[(j, i)], ONE)
    best = None
    for cyc in all_subtour_cycles(space):
        if len(cyc) < 3:
            continue
        both = ZERO
        for (i, j) in cyc.arcs:
            both += x[(i, j)] + x[(j, i)]
        if mode == "vdl":
            for (k, l) in cyc.arcs:
                lhs = both - x[(l, k)]
                rhs = rat(len(cyc) - 1)
                if lhs > rhs and (best is None or lhs - rhs > best.violation):
                    best = ViolatedRow("dlcl", cyc, None, (k, l), lhs, rhs)
        elif mode == "vmtz":
            for k in cyc.nodes:
                lhs = both - x[(k, cyc.pred(k))] - x[(cyc.succ(k), k)]
                rhs = rat(len(cyc) - 1)
                if lhs > rhs and (best is None or lhs - rhs > best.violation):
                    best = ViolatedRow("dlvm", cyc, None, k, lhs, rhs)
        else:
            lhs = both
            for (i, j) in cyc.arcs:
                lhs -= (d[(i, j)] + d[(j, i)]) * x[(j, i)]
            rhs = rat(len(cyc)) - d.cycle_sum(cyc)
            if lhs > rhs and (best is None or lhs - rhs > best.violation):
                best = ViolatedRow("dlcyc", cyc, None, None, lhs, rhs)
    return best


# -- parameter-polytope separation ----------------------------------------------------


def separate_dbar(space: ArcSpace, d: DVec) -> Cycle | None:
    """Max-weight cycle screen for the cycle-sum polytope, exhaustive by design
    (the general separation problem is NP-hard)."""
    worst = None
    worst_sum = None
    for cyc in all_subtour_cycles(space):
        s = d.cycle_sum(cyc)
        if worst_sum is None or s > worst_sum:
            worst, worst_sum = cyc, s
    if worst_sum > ONE:
        return worst
    return None
