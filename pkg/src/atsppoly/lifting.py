"""Constructive projection oracles.

Whether a fractional x lifts into the potential-based extended systems is a
shortest-path question: feed the rows' slacks c_ij = beta_ij - alpha_ij . x
into Bellman-Ford over the arcs of A1; potentials come out of shortest-path
distances, and a negative cycle is exactly a violated projected cycle row.
Flow-based systems lift through an exact LP whose Farkas dual yields a
deficient node subset. Certificates of both kinds re-verify against the
projected row they violate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .digraph import ArcSpace, Cycle, subsets_s1
from .formulations import FormulationId, build, build_ap, fvar, xvar
from .linsys import LinSys
from .parameters import BVec, DVec, canonical_vertices
from .rational import ONE, ZERO, rat, rat_str
from .simplex import OPTIMAL, feasible_point

_ANCHOR = 2  # potentials are normalized by u[anchor] = 0


@dataclass(frozen=True)
class ArcRowSpec:
    """One potential row u_i - u_j + alpha . x <= beta for the arc (i, j)."""

    alpha: dict[tuple[int, int], object]
    beta: object


def mtz_row_specs(space: ArcSpace, d: DVec) -> dict[tuple[int, int], ArcRowSpec]:
    return {
        (i, j): ArcRowSpec({(i, j): ONE}, ONE - d[(i, j)])
        for (i, j) in space.a1_arcs
    }


def dl_row_specs(space: ArcSpace, d: DVec) -> dict[tuple[int, int], ArcRowSpec]:
    return {
        (i, j): ArcRowSpec(
            {(i, j): ONE, (j, i): ONE - d[(i, j)] - d[(j, i)]}, ONE - d[(i, j)]
        )
        for (i, j) in space.a1_arcs
    }


@dataclass(frozen=True)
class PotentialLift:
    u: dict[int, object]


@dataclass(frozen=True)
class NegativeCycleCert:
    cycle: Cycle
    length: object  # sum of row slacks along the cycle, < 0


def lift_potentials(space: ArcSpace, x, specs, anchor: int = _ANCHOR):
    """Potentials for all rows at once, or the negative cycle refuting them.

    Arc weights are the row slacks at x; with nonnegative cycle sums the
    shortest-path distances from the anchor give u_i = -dist(i), and then
    u_i - u_j <= c_ij for every arc. The output is normalized to u[anchor]=0
    and is unique up to this additive constant.
    """
    if anchor not in space.n1_nodes:
        raise ValueError("anchor must be a node of N1")
    weights = {}
    for (i, j) in space.a1_arcs:
        spec = specs[(i, j)]
        c = spec.beta
        for arc, coeff in spec.alpha.items():
            c -= coeff * x[arc]
        weights[(i, j)] = c

    dist = {v: None for v in space.n1_nodes}
    pred = {v: None for v in space.n1_nodes}
    dist[anchor] = ZERO
    for _ in range(len(space.n1_nodes) - 1):
        changed = False
        for (i, j) in space.a1_arcs:
            if dist[i] is None:
                continue
            cand = dist[i] + weights[(i, j)]
            if dist[j] is None or cand < dist[j]:
                dist[j] = cand
                pred[j] = i
                changed = True
        if not changed:
            break
    for (i, j) in space.a1_arcs:
        if dist[i] is not None and dist[j] is not None and dist[i] + weights[(i, j)] < dist[j]:
            cycle = _extract_cycle(space, pred, j, i)
            if cycle is None or cycle.weight(weights) >= ZERO:
                cycle = _negative_cycle_exhaustive(space, weights)
            return NegativeCycleCert(cycle, cycle.weight(weights))
    u = {v: -dist[v] for v in space.n1_nodes}
    for (i, j) in space.a1_arcs:
        if u[i] - u[j] > weights[(i, j)]:
            raise AssertionError("potential lift fails its own rows")
    return PotentialLift(u)


def _extract_cycle(space: ArcSpace, pred, tail, head) -> Cycle | None:
    """Walk predecessors from a still-relaxable arc until a node repeats."""
    pred = dict(pred)
    pred[tail] = head
    v = tail
    for _ in range(len(space.n1_nodes)):
        if pred[v] is None:
            return None
        v = pred[v]
    chain = [v]
    w = pred[v]
    while w != v:
        if w is None or len(chain) > len(space.n1_nodes):
            return None
        chain.append(w)
        w = pred[w]
    chain.reverse()  # predecessor order is against the arc direction
    return Cycle(tuple(chain))


def _negative_cycle_exhaustive(space: ArcSpace, weights) -> Cycle:
    from .digraph import all_subtour_cycles

    for cyc in all_subtour_cycles(space):
        if cyc.weight(weights) < ZERO:
            return cyc
    raise AssertionError("a relaxable arc guarantees a negative cycle")


@dataclass(frozen=True)
class FlowLift:
    f: dict[tuple[int, int], object]


@dataclass(frozen=True)
class DeficientCutCert:
    subset: frozenset[int]
    cut_value: object  # sum of x leaving the subset
    demand: object  # sum of b over the subset


def lift_flow(space: ArcSpace, x, b: BVec):
    """A flow 0 <= f <= x meeting the balances, or a deficient subset.

    Feasibility is decided by an exact LP; on failure the Farkas multipliers
    on the balance rows are thresholded into the node subset whose outgoing
    x-mass cannot carry its demand (the level-set with a verified violation).
    """
    ap = build_ap(space)
    bad = ap.violations(_x_point(space, x))
    if bad:
        raise ValueError(f"x is not in the assignment polytope: {bad[0].tag}")
    sys_ = LinSys([fvar(i, j) for (i, j) in space.arcs])
    for i in space.n1_nodes:
        coeffs = {}
        for j in space.nodes:
            if j == i:
                continue
            coeffs[fvar(i, j)] = ONE
            coeffs[fvar(j, i)] = -ONE
        sys_.add_equality(coeffs, -b[i], f"flow({i})")
    for (i, j) in space.arcs:
        sys_.add_inequality({fvar(i, j): ONE}, x[(i, j)], f"cap({i},{j})")
        sys_.add_inequality({fvar(i, j): -ONE}, ZERO, f"lb({i},{j})")
    res = feasible_point(sys_)
    if res.status == OPTIMAL:
        return FlowLift({(i, j): res.point[fvar(i, j)] for (i, j) in space.arcs})

    for subset in _cut_candidates(space, res.farkas):
        cert = _check_cut(space, x, b, subset)
        if cert is not None:
            return cert
    for subset in subsets_s1(space):  # exhaustive fallback, desk scale
        cert = _check_cut(space, x, b, frozenset(subset.members))
        if cert is not None:
            return cert
    raise AssertionError("flow LP infeasible but no deficient subset found")


def _cut_candidates(space: ArcSpace, farkas):
    """Level sets of the balance-row multipliers in the Farkas certificate."""
    levels = {}
    for i in space.n1_nodes:
        levels[i] = farkas.get(f"flow({i})", ZERO)
    for threshold in sorted(set(levels.values()), reverse=True):
        subset = frozenset(v for v, q in levels.items() if q >= threshold)
        if 2 <= len(subset) <= space.n - 1 and 1 not in subset:
            yield subset


def _check_cut(space: ArcSpace, x, b: BVec, subset):
    cut_value = ZERO
    for arc in space.delta_plus(subset):
        cut_value += x[arc]
    demand = b.subset_sum(subset)
    if cut_value < demand:
        return DeficientCutCert(subset, cut_value, demand)
    return None


# -- membership dispatch ---------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    kind: str  # "rows" | "lift" | "negcycle" | "cut"
    detail: object = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> str:
        if self.kind == "rows":
            data = (
                None
                if self.detail is None
                else {"tag": self.detail.tag, "lhs": rat_str(self.detail.lhs), "rhs": rat_str(self.detail.rhs)}
            )
            return json.dumps({"type": "rows", "data": data})
        if self.kind == "lift":
            return json.dumps({"type": "lift", "data": _lift_json(self.detail)})
        if self.kind == "negcycle":
            return json.dumps(
                {
                    "type": "negcycle",
                    "data": {"cycle": list(self.detail.cycle.nodes), "length": rat_str(self.detail.length)},
                }
            )
        if self.kind == "cut":
            return json.dumps(
                {
                    "type": "cut",
                    "data": {
                        "subset": sorted(self.detail.subset),
                        "cut_value": rat_str(self.detail.cut_value),
                        "demand": rat_str(self.detail.demand),
                    },
                }
            )
        raise AssertionError(f"unknown certificate kind {self.kind}")


def _lift_json(detail):
    if detail is None:
        return None
    out = []
    for block in detail if isinstance(detail, list) else [detail]:
        if isinstance(block, PotentialLift):
            out.append({"u": {str(k): rat_str(v) for k, v in sorted(block.u.items())}})
        elif isinstance(block, FlowLift):
            out.append({"f": {f"{i},{j}": rat_str(v) for (i, j), v in sorted(block.f.items())}})
    return out


def _x_point(space: ArcSpace, x) -> dict[str, object]:
    return {xvar(i, j): x[(i, j)] for (i, j) in space.arcs}


def membership(fid: FormulationId, x, space: ArcSpace) -> MembershipResult:
    """Exact membership of x in the projection of the formulation onto x.

    Potential families go through Bellman-Ford, flow families through the
    flow LP, x-space systems through a direct row sweep, and the remaining
    extended systems through a generic feasibility LP with x pinned.
    """
    point = _x_point(space, x)
    fam = fid.family

    if not fid.extended:
        sys_ = build(fid, space)
        bad = sys_.violations(point)
        if bad:
            return MembershipResult(False, "rows", bad[0])
        return MembershipResult(True, "rows")

    ap_bad = build_ap(space).violations(point)
    if ap_bad:
        return MembershipResult(False, "rows", ap_bad[0])

    if fam in ("q-mtz", "q-dl", "mtz", "dl"):
        if fam == "q-mtz":
            specs = mtz_row_specs(space, fid.d)
        elif fam == "q-dl":
            specs = dl_row_specs(space, fid.d)
        else:
            specs = classic_membership_specs(space, fam)
        got = lift_potentials(space, x, specs)
        if isinstance(got, NegativeCycleCert):
            return MembershipResult(False, "negcycle", got)
        return MembershipResult(True, "lift", got)

    if fam == "q-scf":
        got = lift_flow(space, x, fid.b)
        if isinstance(got, DeficientCutCert):
            return MembershipResult(False, "cut", got)
        return MembershipResult(True, "lift", got)

    if fam in ("ef-mtz", "ef-dl"):
        kind = "MTZ" if fam == "ef-mtz" else "DL"
        lifts = []
        for d in canonical_vertices(kind, space):
            specs = mtz_row_specs(space, d) if kind == "MTZ" else dl_row_specs(space, d)
            got = lift_potentials(space, x, specs)
            if isinstance(got, NegativeCycleCert):
                return MembershipResult(False, "negcycle", got)
            lifts.append(got)
        return MembershipResult(True, "lift", lifts)

    if fam == "ef-scf":
        lifts = []
        for b in canonical_vertices("SCF", space):
            got = lift_flow(space, x, b)
            if isinstance(got, DeficientCutCert):
                return MembershipResult(False, "cut", got)
            lifts.append(got)
        return MembershipResult(True, "lift", lifts)

    # generic extended systems (precedence/commodity blocks): pin x, ask the LP
    sys_ = build(fid, space)
    pinned = sys_.copy()
    for (i, j) in space.arcs:
        pinned.add_equality({xvar(i, j): ONE}, x[(i, j)], f"pin({i},{j})")
    res = feasible_point(pinned)
    if res.status == OPTIMAL:
        return MembershipResult(True, "lift", None)
    return MembershipResult(False, "rows", None)


def classic_membership_specs(space: ArcSpace, family: str):
    """Row specs for the unnormalized classics (offsets 1, big-M n-1)."""
    n = space.n
    if family == "mtz":
        return {
            (i, j): ArcRowSpec({(i, j): rat(n - 1)}, rat(n - 2))
            for (i, j) in space.a1_arcs
        }
    if family == "dl":
        return {
            (i, j): ArcRowSpec({(i, j): rat(n - 1), (j, i): rat(n - 3)}, rat(n - 2))
            for (i, j) in space.a1_arcs
        }
    raise ValueError(f"no classic potential specs for {family!r}")
