"""Polyhedral operations on H-descriptions.

Fourier-Motzkin elimination (equalities are substituted out first), LP-backed
redundancy certification, and projection-aware inclusion testing. Inclusion
of proj(A) in proj(B) is decided row-by-row: each row of B, which must live on
the shared variables, is maximized over A by LP. This avoids projecting A,
which is what makes comparisons against extended formulations affordable; B
itself is projected with Fourier-Motzkin by callers when it carries auxiliary
variables.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linsys import LinRow, LinSys
from .rational import ONE, ZERO
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, solve_lp


@dataclass
class RedundancyResult:
    redundant: bool
    # dominating combination of the other rows (when redundant)
    dual: dict[str, object] | None = None
    # point satisfying the other rows but violating this one (when not)
    point: dict[str, object] | None = None


def is_redundant(sys_: LinSys, row_tag: str) -> RedundancyResult:
    """Decide whether dropping the inequality enlarges the feasible set.

    The row's left-hand side is maximized subject to every other row; the row
    is redundant iff the maximum stays within its right-hand side.
    """
    kind, row = sys_.row(row_tag)
    if kind != "le":
        raise ValueError(f"redundancy is defined for inequality rows, {row_tag!r} is an equality")
    rest = sys_.without(row_tag)
    res = solve_lp(rest, dict(row.coeffs), "max")
    if res.status == INFEASIBLE:
        raise ValueError("redundancy is undefined over an infeasible system")
    if res.status == UNBOUNDED:
        point = _push_along_ray(res.point, res.ray, row)
        return RedundancyResult(False, point=point)
    if res.value <= row.rhs:
        return RedundancyResult(True, dual=res.dual)
    return RedundancyResult(False, point=res.point)


def _push_along_ray(point, ray, row: LinRow):
    """Walk far enough along an improving ray to violate the row."""
    gain = row.lhs_at(ray)
    if gain <= ZERO:
        raise AssertionError("ray does not increase the row being tested")
    lhs = row.lhs_at(point)
    steps = (row.rhs - lhs) / gain + 1
    if steps < ZERO:
        steps = ONE
    out = dict(point)
    for var, q in ray.items():
        out[var] = out.get(var, ZERO) + steps * q
    return out


@dataclass
class InclusionResult:
    holds: bool
    violated_tag: str | None = None
    witness: dict[str, object] | None = None

    def __bool__(self) -> bool:
        return self.holds


def includes(sys_a: LinSys, sys_b: LinSys, on_vars) -> InclusionResult:
    """Does proj(A) lie inside proj(B) on the shared variables?

    Every row of B must be supported on on_vars; its validity over A is
    certified by LP. On failure the witness is a point of A violating the row.
    """
    shared = set(on_vars)
    for row in sys_b.inequalities + sys_b.equalities:
        if not row.support <= shared:
            raise ValueError(
                f"row {row.tag!r} of the target system leaves the shared variables; "
                "project it first"
            )
    for row in sys_b.inequalities:
        res = solve_lp(sys_a, dict(row.coeffs), "max")
        if res.status == INFEASIBLE:
            raise ValueError("inclusion requires a feasible source system")
        if res.status == UNBOUNDED:
            return InclusionResult(False, row.tag, _push_along_ray(res.point, res.ray, row))
        if res.value > row.rhs:
            return InclusionResult(False, row.tag, res.point)
    for row in sys_b.equalities:
        for sense, bad in (("max", lambda v: v > row.rhs), ("min", lambda v: v < row.rhs)):
            res = solve_lp(sys_a, dict(row.coeffs), sense)
            if res.status == INFEASIBLE:
                raise ValueError("inclusion requires a feasible source system")
            if res.status == UNBOUNDED or bad(res.value):
                witness = res.point
                if res.status == UNBOUNDED:
                    flipped = row if sense == "max" else LinRow(
                        {v: -q for v, q in row.coeffs.items()}, -row.rhs, row.tag
                    )
                    witness = _push_along_ray(res.point, res.ray, flipped)
                return InclusionResult(False, row.tag, witness)
    return InclusionResult(True)


def mutually_include(sys_a: LinSys, sys_b: LinSys, on_vars) -> tuple[InclusionResult, InclusionResult]:
    return includes(sys_a, sys_b, on_vars), includes(sys_b, sys_a, on_vars)


# -- Fourier-Motzkin ----------------------------------------------------------


def fourier_motzkin(sys_: LinSys, eliminate, lp_prune: bool = True, order: str = "given") -> LinSys:
    """Project out the listed variables.

    Equalities mentioning a variable are substituted out before any
    combination step. Generated rows are filtered by the ancestor-count rule
    (a combination of more than e+1 original rows after e eliminations is
    redundant), by syntactic duplicate removal, and finally by LP
    certification when lp_prune is set. order="greedy" re-picks the cheapest
    variable (fewest pairwise combinations) at every step instead of
    following the list.
    """
    todo = list(eliminate)
    elim_set = set(todo)
    for var in todo:
        if var not in sys_._var_set:
            raise ValueError(f"cannot eliminate unknown variable {var!r}")
    if order not in ("given", "greedy"):
        raise ValueError(f"unknown elimination order {order!r}")

    # working representation: (coeffs dict, rhs, tag, ancestors frozenset)
    eqs = [(dict(r.coeffs), r.rhs, r.tag, frozenset([k])) for k, r in enumerate(sys_.equalities)]
    offset = len(eqs)
    ineqs = [
        (dict(r.coeffs), r.rhs, r.tag, frozenset([offset + k]))
        for k, r in enumerate(sys_.inequalities)
    ]
    fresh = _TagMaker(sys_)
    eliminated = 0

    while todo:
        if order == "greedy":
            var = _cheapest_variable(todo, eqs, ineqs)
            todo.remove(var)
        else:
            var = todo.pop(0)

        pivot = next((row for row in eqs if var in row[0]), None)
        if pivot is not None:
            eqs.remove(pivot)
            eqs = [_substitute(row, pivot, var, fresh) for row in eqs]
            ineqs = [_substitute(row, pivot, var, fresh) for row in ineqs]
            # substitution rewrites rows wholesale; the ancestor-count rule is
            # only sound for a pure elimination phase, so restart its indexing
            eqs = [(c, r, t, frozenset([k])) for k, (c, r, t, _) in enumerate(eqs)]
            base = len(eqs)
            ineqs = [
                (c, r, t, frozenset([base + k])) for k, (c, r, t, _) in enumerate(ineqs)
            ]
            eliminated = 0
            continue

        zero, pos, neg = [], [], []
        for row in ineqs:
            coeff = row[0].get(var, ZERO)
            if coeff == ZERO:
                zero.append(row)
            elif coeff > ZERO:
                pos.append(row)
            else:
                neg.append(row)
        eliminated += 1
        produced = []
        for prow in pos:
            for nrow in neg:
                anc = prow[3] | nrow[3]
                if len(anc) > eliminated + 1:
                    continue  # Imbert: provably redundant combination
                produced.append(_combine(prow, nrow, var, fresh, anc))
        produced = _dedup(produced)
        if lp_prune and produced:
            keep_vars = [v for v in sys_.variables]
            produced = _lp_prune_new(keep_vars, eqs, zero, produced)
        ineqs = zero + produced

    out = LinSys([v for v in sys_.variables if v not in elim_set])
    for coeffs, rhs, tag, _ in eqs:
        out.add_equality(coeffs, rhs, tag)
    seen = set()
    for coeffs, rhs, tag, _ in _dedup(ineqs):
        if tag in seen:  # pragma: no cover - dedup keys are unique already
            continue
        seen.add(tag)
        out.add_inequality(coeffs, rhs, tag)

    if lp_prune:
        out = prune_redundant_rows(out)
    return out


def _cheapest_variable(todo, eqs, ineqs):
    """Next variable by substitution-first, then fewest pairwise combinations."""
    best = None
    best_cost = None
    for var in todo:
        if any(var in row[0] for row in eqs):
            return var
        pos = sum(1 for row in ineqs if row[0].get(var, ZERO) > ZERO)
        neg = sum(1 for row in ineqs if row[0].get(var, ZERO) < ZERO)
        cost = pos * neg
        if best_cost is None or cost < best_cost:
            best, best_cost = var, cost
    return best


def _lp_prune_new(variables, eqs, kept, produced):
    """LP-certify and drop redundant rows among the freshly combined ones."""
    work = LinSys(variables)
    for coeffs, rhs, tag, _ in eqs:
        work.add_equality(coeffs, rhs, tag)
    for coeffs, rhs, tag, _ in kept:
        work.add_inequality(coeffs, rhs, tag)
    for coeffs, rhs, tag, _ in produced:
        work.add_inequality(coeffs, rhs, tag)
    if feasible_point(work).status != OPTIMAL:
        return produced
    out = []
    for row in produced:
        tag = row[2]
        if not work.has_tag(tag):
            continue
        if is_redundant(work, tag).redundant:
            work = work.without(tag)
        else:
            out.append(row)
    return out


def project_onto(sys_: LinSys, keep_vars, lp_prune: bool = True) -> LinSys:
    """Greedy-order projection onto the listed variables."""
    keep = set(keep_vars)
    drop = [v for v in sys_.variables if v not in keep]
    return fourier_motzkin(sys_, drop, lp_prune=lp_prune, order="greedy")


class _TagMaker:
    def __init__(self, sys_: LinSys):
        self._used = set(sys_.tags)
        self._next = 0

    def __call__(self) -> str:
        while True:
            tag = f"fm{self._next}"
            self._next += 1
            if tag not in self._used:
                self._used.add(tag)
                return tag


def _substitute(row, pivot, var, fresh):
    coeffs, rhs, tag, anc = row
    if var not in coeffs:
        return row
    pcoeffs, prhs, _, panc = pivot
    factor = coeffs[var] / pcoeffs[var]
    new = dict(coeffs)
    new.pop(var)
    for v, q in pcoeffs.items():
        if v == var:
            continue
        acc = new.get(v, ZERO) - factor * q
        if acc == ZERO:
            new.pop(v, None)
        else:
            new[v] = acc
    return (new, rhs - factor * prhs, fresh(), anc | panc)


def _combine(prow, nrow, var, fresh, anc):
    pc, prhs, _, _ = prow
    nc, nrhs, _, _ = nrow
    a = pc[var]
    b = -nc[var]
    # scale each row so the eliminated coefficient is +-1, then add
    new = {}
    for v, q in pc.items():
        if v != var:
            new[v] = q / a
    for v, q in nc.items():
        if v == var:
            continue
        acc = new.get(v, ZERO) + q / b
        if acc == ZERO:
            new.pop(v, None)
        else:
            new[v] = acc
    return (new, prhs / a + nrhs / b, fresh(), anc)


def _dedup(rows):
    """Drop rows with identical normalized coefficients, keeping the tightest."""
    best = {}
    order = []
    for row in rows:
        coeffs, rhs, tag, anc = row
        if not coeffs:
            if rhs >= ZERO:
                continue  # 0 <= nonnegative: vacuous
            key = ("<infeasible>",)
            scale = ONE
        else:
            lead = min(coeffs)
            scale = abs(coeffs[lead])
            key = tuple(sorted((v, q / scale) for v, q in coeffs.items()))
        scaled_rhs = rhs / scale
        kept = best.get(key)
        if kept is None:
            best[key] = (row, scaled_rhs)
            order.append(key)
        elif scaled_rhs < kept[1]:
            best[key] = (row, scaled_rhs)
    return [best[k][0] for k in order]


def prune_redundant_rows(sys_: LinSys, protect=()) -> LinSys:
    """Remove LP-certified redundant inequality rows (order-deterministic)."""
    if feasible_point(sys_).status != OPTIMAL:
        return sys_  # redundancy is undefined; keep everything
    protected = set(protect)
    current = sys_
    for row in list(sys_.inequalities):
        if row.tag in protected or not current.has_tag(row.tag):
            continue
        if is_redundant(current, row.tag).redundant:
            current = current.without(row.tag)
    return current


def equivalent_systems(sys_a: LinSys, sys_b: LinSys, on_vars) -> bool:
    fwd, bwd = mutually_include(sys_a, sys_b, on_vars)
    return fwd.holds and bwd.holds
