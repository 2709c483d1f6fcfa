"""Exact optimization over the formulations.

LPs over the row-exponential x-space systems are solved lazily: start from
the assignment polytope (plus pair rows where the family carries them), call
the family's separation oracle at the current optimum, add the violated row,
and repeat. Since separation is exact, the loop terminates with the optimum
over the full H-description while the tableau only ever sees the active rows.

The branch-and-bound solver uses those LP bounds, branches on the arc closest
to 1/2, and proves optimality exactly; a permutation sweep is available as an
independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .digraph import ArcSpace, Cycle
from .formulations import (
    FormulationId,
    build,
    build_ap,
    family_is_valid_relaxation,
    xvar,
)
from .linsys import LinSys
from .rational import ONE, ZERO, is_integer, rat
from .separation import ViolatedRow, separate_circuit, separate_cut, separate_dl_lifted
from .simplex import INFEASIBLE, OPTIMAL, LpResult, solve_lp

# families whose x-space H-description is row-exponential but separable
LAZY_FAMILIES = {
    "p-mtz",
    "p-dl",
    "p-scf",
    "cl-mtz",
    "cl-dl",
    "cl-scf",
    "cl-dl-vmtz",
    "dfj-clique",
    "dfj-cut",
    "circuit",
}


def arc_values(space: ArcSpace, point) -> dict[tuple[int, int], object]:
    return {(i, j): point[xvar(i, j)] for (i, j) in space.arcs}


def _separator(fid: FormulationId, space: ArcSpace):
    fam = fid.family
    if fam in ("cl-mtz", "circuit"):
        return lambda x: separate_circuit(space, x)
    if fam == "p-mtz":
        return lambda x: separate_circuit(space, x, fid.d)
    if fam in ("cl-scf", "dfj-clique", "dfj-cut"):
        return lambda x: separate_cut(space, x)
    if fam == "p-scf":
        return lambda x: separate_cut(space, x, fid.b)
    if fam == "cl-dl":
        return lambda x: separate_dl_lifted(space, x, "vdl")
    if fam == "cl-dl-vmtz":
        return lambda x: separate_dl_lifted(space, x, "vmtz")
    if fam == "p-dl":
        return lambda x: separate_dl_lifted(space, x, "param", fid.d)
    raise AssertionError(f"no separator for {fam!r}")


def _base_system(fid: FormulationId, space: ArcSpace) -> LinSys:
    sys_ = build_ap(space)
    if fid.family in ("p-dl", "cl-dl", "cl-dl-vmtz"):
        for (i, j) in space.a1_arcs:
            if i < j:
                sys_.add_inequality({xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})")
    return sys_


def _row_for_hit(space: ArcSpace, fid: FormulationId, hit: ViolatedRow):
    """Reconstruct the violated row in builder conventions (coeffs, rhs, tag)."""
    if hit.family == "circuit":
        coeffs = {xvar(i, j): ONE for (i, j) in hit.cycle.arcs}
        return coeffs, hit.rhs, f"circuit({hit.cycle})"
    if hit.family == "cut":
        coeffs = {xvar(i, j): -ONE for (i, j) in space.delta_plus(hit.subset.members)}
        return coeffs, hit.rhs, f"cut({hit.subset})"
    if hit.family == "pair":
        i, j = hit.cycle.nodes
        return {xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})"
    if hit.family == "dlcl":
        k, l = hit.index
        coeffs = {}
        for (i, j) in hit.cycle.arcs:
            coeffs[xvar(i, j)] = ONE
            coeffs[xvar(j, i)] = coeffs.get(xvar(j, i), ZERO) + ONE
        coeffs[xvar(l, k)] -= ONE
        return coeffs, hit.rhs, f"dlcl({hit.cycle};{k},{l})"
    if hit.family == "dlvm":
        k = hit.index
        coeffs = {}
        for (i, j) in hit.cycle.arcs:
            coeffs[xvar(i, j)] = ONE
            coeffs[xvar(j, i)] = coeffs.get(xvar(j, i), ZERO) + ONE
        coeffs[xvar(k, hit.cycle.pred(k))] -= ONE
        coeffs[xvar(hit.cycle.succ(k), k)] -= ONE
        return coeffs, hit.rhs, f"dlvm({hit.cycle};{k})"
    if hit.family == "dlcyc":
        d = fid.d
        coeffs = {}
        for (i, j) in hit.cycle.arcs:
            coeffs[xvar(i, j)] = ONE
            coeffs[xvar(j, i)] = ONE - d[(i, j)] - d[(j, i)]
        return coeffs, hit.rhs, f"dlcyc({hit.cycle})"
    raise AssertionError(f"unknown hit family {hit.family!r}")


def lp_over_formulation(
    fid: FormulationId,
    space: ArcSpace,
    objective: dict[str, object],
    sense: str = "min",
    extra_rows=(),
) -> LpResult:
    """Exact LP optimum over the formulation (lazy rows where separable)."""
    if fid.family not in LAZY_FAMILIES:
        sys_ = build(fid, space).copy()
        for coeffs, rhs, tag in extra_rows:
            sys_.add_equality(coeffs, rhs, tag)
        return solve_lp(sys_, objective, sense)

    separator = _separator(fid, space)
    sys_ = _base_system(fid, space)
    for coeffs, rhs, tag in extra_rows:
        sys_.add_equality(coeffs, rhs, tag)
    while True:
        res = solve_lp(sys_, objective, sense)
        if res.status != OPTIMAL:
            return res
        hit = separator(arc_values(space, res.point))
        if hit is None:
            return res
        coeffs, rhs, tag = _row_for_hit(space, fid, hit)
        if sys_.has_tag(tag):
            raise AssertionError(f"separator returned an already-satisfied row {tag!r}")
        sys_.add_inequality(coeffs, rhs, tag)


# -- instances and tours ------------------------------------------------------------


def tour_cost(instance, tour: Cycle):
    total = ZERO
    for arc in tour.arcs:
        total += instance.costs[arc]
    return total


def x_objective(instance) -> dict[str, object]:
    return {xvar(i, j): c for (i, j), c in instance.costs.items()}


@dataclass
class AtspSolution:
    tour: Cycle
    value: object
    strategy: str
    nodes_explored: int = 0


def solve_atsp(instance, fid: FormulationId | None = None, strategy: str = "enumerate", cap: int = 9) -> AtspSolution:
    """Exact minimum tour, by permutation sweep or LP-based branch and bound."""
    from .digraph import enumerate_tours

    space = ArcSpace(instance.n)
    if strategy == "enumerate":
        if instance.n > cap:
            raise ValueError(f"permutation sweep refuses n={instance.n} > {cap}")
        best = None
        best_cost = None
        for tour in enumerate_tours(space):
            cost = tour_cost(instance, tour)
            if best_cost is None or cost < best_cost:
                best, best_cost = tour, cost
        return AtspSolution(best, best_cost, "enumerate")
    if strategy != "bb":
        raise ValueError(f"unknown strategy {strategy!r}")
    if fid is None:
        raise ValueError("branch and bound needs a formulation for its bounds")
    if not family_is_valid_relaxation(fid, space):
        raise ValueError("branch and bound needs a valid relaxation (strict parameters)")
    return _branch_and_bound(instance, fid, space)


def _branch_and_bound(instance, fid: FormulationId, space: ArcSpace) -> AtspSolution:
    objective = x_objective(instance)
    best_tour = None
    best_val = None
    explored = 0
    stack: list[dict] = [{}]
    while stack:
        fixes = stack.pop()
        explored += 1
        extra = [
            ({xvar(i, j): ONE}, val, f"fix({i},{j})") for (i, j), val in sorted(fixes.items())
        ]
        res = lp_over_formulation(fid, space, objective, "min", extra)
        if res.status == INFEASIBLE:
            continue
        if res.status != OPTIMAL:
            raise AssertionError("tour relaxations are bounded polytopes")
        if best_val is not None and res.value >= best_val:
            continue
        x = arc_values(space, res.point)
        branch_arc = None
        branch_gap = None
        for arc in space.arcs:
            if not is_integer(x[arc]):
                gap = abs(x[arc] - rat(1, 2))
                if branch_gap is None or gap < branch_gap:
                    branch_arc, branch_gap = arc, gap
        if branch_arc is None:
            tour = _integral_tour(space, x)
            if best_val is None or res.value < best_val:
                best_tour, best_val = tour, res.value
            continue
        zero, one = dict(fixes), dict(fixes)
        zero[branch_arc] = ZERO
        one[branch_arc] = ONE
        stack.append(zero)
        stack.append(one)  # popped first: try using the arc before skipping it
    if best_tour is None:
        raise AssertionError("a complete digraph always has a tour")
    return AtspSolution(best_tour, best_val, "bb", explored)


def _integral_tour(space: ArcSpace, x) -> Cycle:
    succ = {}
    for (i, j), val in x.items():
        if val == ONE:
            succ[i] = j
    order = [1]
    v = succ[1]
    while v != 1:
        order.append(v)
        v = succ[v]
    if len(order) != space.n:
        raise AssertionError("integral point of a valid formulation must be a tour")
    return Cycle(tuple(order))


# -- bound tables --------------------------------------------------------------------


@dataclass
class BoundTable:
    instance_name: str
    rows: list[tuple[str, object]]

    def value(self, label: str):
        for lab, val in self.rows:
            if lab == label:
                return val
        raise KeyError(label)


# proven inclusions: tighter set -> weaker set (min bounds are monotone along them)
BOUND_DOMINANCE = [
    ("cl-scf", "cl-dl"),
    ("cl-dl", "cl-dl-vmtz"),
    ("cl-dl-vmtz", "cl-mtz"),
]


def lp_bound_table(instance, fids, space: ArcSpace | None = None) -> BoundTable:
    """Exact LP bounds per formulation; monotone along proven inclusions."""
    space = space or ArcSpace(instance.n)
    objective = x_objective(instance)
    rows = []
    for fid in fids:
        res = lp_over_formulation(fid, space, objective, "min")
        if res.status != OPTIMAL:
            raise AssertionError(f"bound LP for {fid.label()} did not solve")
        rows.append((fid.label(), res.value))
    table = BoundTable(getattr(instance, "name", "instance"), rows)
    have = {lab for lab, _ in rows}
    for tight, weak in BOUND_DOMINANCE:
        if tight in have and weak in have:
            if table.value(tight) < table.value(weak):
                raise AssertionError(f"bound of {tight} fell below {weak}")
    return table
