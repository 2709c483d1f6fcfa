"""Exact two-phase primal simplex with Bland's rule.

Solves max/min of a linear objective over a LinSys. All arithmetic is in
exact rationals, so Bland's pivoting rule makes the method deterministic and
finitely terminating. Single-variable rows are presolved into variable bounds
(the tableau then works with the bounded-variable simplex), which keeps the
assignment-polytope systems small; certificates are mapped back to the
original row tags.

Every returned result carries a machine-checkable certificate that is
re-verified before returning:
  optimal    -> primal point satisfying every row exactly, plus a dual vector
                reproducing the objective and the optimal value;
  infeasible -> a Farkas combination of rows with zero coefficient vector and
                negative right-hand side;
  unbounded  -> a feasible point plus an improving ray.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linsys import LinSys
from .rational import ONE, ZERO, rat

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_AT_LO = 0
_AT_UP = 1
_FREE = 2
_BASIC = 3


@dataclass
class LpResult:
    status: str
    value: object = None
    point: dict[str, object] | None = None
    dual: dict[str, object] | None = None
    farkas: dict[str, object] | None = None
    ray: dict[str, object] | None = None

    def __bool__(self) -> bool:
        return self.status == OPTIMAL


class _Bounds:
    """Per-variable bounds harvested from single-variable rows."""

    __slots__ = ("lo", "up", "lo_tag", "up_tag", "lo_coeff", "up_coeff")

    def __init__(self):
        self.lo = None
        self.up = None
        self.lo_tag = None
        self.up_tag = None
        self.lo_coeff = None
        self.up_coeff = None


def _extract_bounds(sys_: LinSys):
    """Split rows into bound candidates and tableau rows.

    Returns (bounds per var, tableau rows as (coeffs, rhs, tag, is_eq),
    conflict) where conflict is a Farkas dict when two bounds contradict.
    """
    bounds = {v: _Bounds() for v in sys_.variables}
    rows = []

    def note_lower(var, val, tag, coeff):
        b = bounds[var]
        if b.lo is None or val > b.lo:
            b.lo, b.lo_tag, b.lo_coeff = val, tag, coeff

    def note_upper(var, val, tag, coeff):
        b = bounds[var]
        if b.up is None or val < b.up:
            b.up, b.up_tag, b.up_coeff = val, tag, coeff

    for row in sys_.equalities:
        if len(row.coeffs) == 1:
            (var, a), = row.coeffs.items()
            val = row.rhs / a
            note_lower(var, val, row.tag, a)
            note_upper(var, val, row.tag, a)
        elif not row.coeffs:
            if row.rhs != ZERO:
                return bounds, rows, {row.tag: ONE}
        else:
            rows.append((row.coeffs, row.rhs, row.tag, True))
    for row in sys_.inequalities:
        if len(row.coeffs) == 1:
            (var, a), = row.coeffs.items()
            val = row.rhs / a
            if a > ZERO:
                note_upper(var, val, row.tag, a)
            else:
                note_lower(var, val, row.tag, a)
        elif not row.coeffs:
            if row.rhs < ZERO:
                return bounds, rows, {row.tag: ONE}
        else:
            rows.append((row.coeffs, row.rhs, row.tag, False))

    for var in sys_.variables:
        b = bounds[var]
        if b.lo is not None and b.up is not None and b.lo > b.up:
            # 1/a_up cancels the variable against -1/a_lo; rhs becomes up - lo < 0
            cert = {b.up_tag: ONE / b.up_coeff, b.lo_tag: -(ONE / b.lo_coeff)}
            return bounds, rows, cert
    return bounds, rows, None


def solve_lp(sys_: LinSys, objective: dict, sense: str = "max") -> LpResult:
    """Exact LP over the system; deterministic given fixed input order."""
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    for var in objective:
        if var not in sys_._var_set:
            raise ValueError(f"objective references unknown variable {var!r}")

    flip = -ONE if sense == "max" else ONE
    cost = {v: flip * rat(c) for v, c in objective.items() if rat(c) != ZERO}

    bounds, rows, conflict = _extract_bounds(sys_)
    if conflict is not None:
        res = LpResult(INFEASIBLE, farkas=conflict)
        _verify_farkas(sys_, res.farkas)
        return res

    core = _Core(sys_, bounds, rows, cost)
    res = core.solve()
    if res.status == OPTIMAL:
        res.value = flip * res.value
        if sense == "max":
            res.dual = {t: -lam for t, lam in res.dual.items()}
        _verify_optimal(sys_, objective, sense, res)
    elif res.status == INFEASIBLE:
        _verify_farkas(sys_, res.farkas)
    else:
        _verify_unbounded(sys_, objective, sense, res)
    return res


def feasible_point(sys_: LinSys) -> LpResult:
    """Feasibility check (zero objective)."""
    return solve_lp(sys_, {}, sense="min")


class _Core:
    def __init__(self, sys_: LinSys, bounds, rows, cost):
        self.sys = sys_
        self.named = list(sys_.variables)
        self.nnamed = len(self.named)
        self.rows = rows
        self.m = len(rows)
        self.bounds = bounds
        self.cost = cost

        m, nv = self.m, self.nnamed
        self.ineq_cols = {}
        cols = nv
        for i, (_, _, _, is_eq) in enumerate(rows):
            if not is_eq:
                self.ineq_cols[i] = cols
                cols += 1
        self.art_cols = list(range(cols, cols + m))
        cols += m
        self.ncols = cols

        self.lo = [None] * cols
        self.up = [None] * cols
        for k, v in enumerate(self.named):
            self.lo[k] = bounds[v].lo
            self.up[k] = bounds[v].up
        for c in self.ineq_cols.values():
            self.lo[c] = ZERO
        for c in self.art_cols:
            self.lo[c] = ZERO
            self.up[c] = ZERO  # widened to [0, inf) only if used in the start basis

        self.state = [_FREE] * cols
        self.val = [ZERO] * cols
        for c in range(cols):
            if self.lo[c] is not None:
                self.state[c] = _AT_LO
                self.val[c] = self.lo[c]
            elif self.up[c] is not None:
                self.state[c] = _AT_UP
                self.val[c] = self.up[c]

        self.art_sign = [ONE] * m

    # -- setup ------------------------------------------------------------

    def solve(self) -> LpResult:
        if self.m == 0:
            return self._solve_boundless()

        nv = self.nnamed
        var_index = {v: k for k, v in enumerate(self.named)}

        residual = []
        for coeffs, rhs, _, _ in self.rows:
            acc = rhs
            for var, a in coeffs.items():
                acc -= a * self.val[var_index[var]]
            residual.append(acc)

        basis = []
        for i in range(self.m):
            slack = self.ineq_cols.get(i)
            if slack is not None and residual[i] >= ZERO:
                basis.append(slack)
            else:
                if residual[i] < ZERO:
                    self.art_sign[i] = -ONE
                c = self.art_cols[i]
                self.up[c] = None  # live artificial during phase 1
                basis.append(c)

        T = []
        xB = []
        for i, (coeffs, rhs, _, _) in enumerate(self.rows):
            sign = self.art_sign[i]
            row = [ZERO] * self.ncols
            for var, a in coeffs.items():
                row[var_index[var]] = sign * a
            slack = self.ineq_cols.get(i)
            if slack is not None:
                row[slack] = sign
            row[self.art_cols[i]] = ONE
            T.append(row)
            xB.append(residual[i] if basis[i] != self.art_cols[i] else sign * residual[i])
        for i, c in enumerate(basis):
            self.state[c] = _BASIC

        self.T = T
        self.xB = xB
        self.basis = basis

        # phase 1: drive the artificial total to zero
        c1 = [ZERO] * self.ncols
        for c in self.art_cols:
            c1[c] = ONE
        dre = self._reduced_costs(c1)
        status = self._bland(dre, phase=1)
        if status != OPTIMAL:
            raise AssertionError("phase 1 cannot be unbounded")
        art_set = set(self.art_cols)
        art_total = ZERO
        for i, c in enumerate(self.basis):
            if c in art_set:
                art_total += self.xB[i]
        if art_total > ZERO:
            return LpResult(INFEASIBLE, farkas=self._farkas(c1, dre))

        # pin artificials and optimize the real objective
        for c in self.art_cols:
            self.up[c] = ZERO
        c2 = [ZERO] * self.ncols
        for var, q in self.cost.items():
            c2[var_index[var]] = q
        dre = self._reduced_costs(c2)
        status = self._bland(dre, phase=2)
        if status == UNBOUNDED:
            point = self._named_point()
            return LpResult(UNBOUNDED, point=point, ray=self._ray)
        point = self._named_point()
        value = ZERO
        for var, q in self.cost.items():
            value += q * point[var]
        dual = self._dual(c2, dre)
        return LpResult(OPTIMAL, value=value, point=point, dual=dual)

    # -- simplex kernel -----------------------------------------------------

    def _reduced_costs(self, c):
        dre = list(c)
        for i, bcol in enumerate(self.basis):
            cb = c[bcol]
            if cb != ZERO:
                row = self.T[i]
                for j in range(self.ncols):
                    if row[j] != ZERO:
                        dre[j] -= cb * row[j]
        return dre

    def _bland(self, dre, phase: int) -> str:
        T, xB, basis = self.T, self.xB, self.basis
        lo, up, state, val = self.lo, self.up, self.state, self.val
        ncols, m = self.ncols, self.m

        while True:
            enter = -1
            direction = 0
            for j in range(ncols):
                st = state[j]
                if st == _BASIC:
                    continue
                lj, uj = lo[j], up[j]
                if lj is not None and uj is not None and lj == uj:
                    continue
                dj = dre[j]
                if dj == ZERO:
                    continue
                if st == _AT_LO and dj < ZERO:
                    enter, direction = j, 1
                elif st == _AT_UP and dj > ZERO:
                    enter, direction = j, -1
                elif st == _FREE:
                    enter, direction = j, (1 if dj < ZERO else -1)
                if enter >= 0:
                    break
            if enter < 0:
                return OPTIMAL

            j = enter
            # room until the entering variable hits its own opposite bound
            if direction > 0:
                self_room = None if up[j] is None else up[j] - val[j]
            else:
                self_room = None if lo[j] is None else val[j] - lo[j]
            best_t = self_room
            block_row = -1
            block_var = j if self_room is not None else -1

            for i in range(m):
                a = T[i][j]
                if a == ZERO:
                    continue
                rate = -a if direction > 0 else a
                bcol = basis[i]
                if rate > ZERO:
                    if up[bcol] is None:
                        continue
                    t = (up[bcol] - xB[i]) / rate
                else:
                    if lo[bcol] is None:
                        continue
                    t = (xB[i] - lo[bcol]) / (-rate)
                if best_t is None or t < best_t or (t == best_t and bcol < block_var):
                    best_t = t
                    block_row = i
                    block_var = bcol

            if best_t is None:
                if phase == 1:
                    raise AssertionError("phase 1 objective is bounded below")
                self._ray = self._build_ray(j, direction)
                return UNBOUNDED

            if best_t != ZERO:
                for i in range(m):
                    a = T[i][j]
                    if a != ZERO:
                        xB[i] -= (best_t * a) if direction > 0 else -(best_t * a)

            if block_row < 0:
                # bound flip, no basis change
                val[j] = val[j] + best_t if direction > 0 else val[j] - best_t
                state[j] = _AT_UP if direction > 0 else _AT_LO
                continue

            leave = basis[block_row]
            enter_val = val[j] + best_t if direction > 0 else val[j] - best_t
            a_rj = T[block_row][j]
            rate = -a_rj if direction > 0 else a_rj
            if rate > ZERO:
                state[leave] = _AT_UP
                val[leave] = up[leave]
            else:
                state[leave] = _AT_LO
                val[leave] = lo[leave]

            piv = a_rj
            prow = T[block_row]
            if piv != ONE:
                inv = ONE / piv
                T[block_row] = prow = [q * inv for q in prow]
            for i in range(m):
                if i == block_row:
                    continue
                a = T[i][j]
                if a != ZERO:
                    row = T[i]
                    T[i] = [x - a * y for x, y in zip(row, prow)]
            a = dre[j]
            if a != ZERO:
                for k in range(ncols):
                    if prow[k] != ZERO:
                        dre[k] -= a * prow[k]
            basis[block_row] = j
            state[j] = _BASIC
            xB[block_row] = enter_val

    # -- certificates -------------------------------------------------------

    def _named_point(self):
        point = {}
        for k, var in enumerate(self.named):
            point[var] = self.val[k]
        for i, c in enumerate(self.basis):
            if c < self.nnamed:
                point[self.named[c]] = self.xB[i]
        return point

    def _build_ray(self, j, direction):
        ray = {v: ZERO for v in self.named}
        dir_q = ONE if direction > 0 else -ONE
        if j < self.nnamed:
            ray[self.named[j]] = dir_q
        for i in range(self.m):
            c = self.basis[i]
            if c < self.nnamed:
                a = self.T[i][j]
                if a != ZERO:
                    ray[self.named[c]] = -dir_q * a
        return {v: q for v, q in ray.items() if q != ZERO}

    def _row_multipliers(self, c_phase, dre):
        y = []
        for i in range(self.m):
            c = self.art_cols[i]
            y.append(self.art_sign[i] * (c_phase[c] - dre[c]))
        return y

    def _farkas(self, c_phase, dre):
        """Row combination proving emptiness (see phase-1 duality)."""
        y = self._row_multipliers(c_phase, dre)
        cert = {}
        for i, (_, _, tag, _) in enumerate(self.rows):
            lam = -y[i]
            if lam != ZERO:
                cert[tag] = lam
        for k, var in enumerate(self.named):
            dj = dre[k]
            if dj == ZERO:
                continue
            b = self.bounds[var]
            if dj > ZERO:
                mu = dj / (-b.lo_coeff)
                cert[b.lo_tag] = cert.get(b.lo_tag, ZERO) + mu
            else:
                mu = -dj / b.up_coeff
                cert[b.up_tag] = cert.get(b.up_tag, ZERO) + mu
        return cert

    def _dual(self, c_phase, dre):
        """Multipliers over original tags reproducing the (min-form) objective."""
        y = self._row_multipliers(c_phase, dre)
        cert = {}
        for i, (_, _, tag, _) in enumerate(self.rows):
            if y[i] != ZERO:
                cert[tag] = y[i]
        for k, var in enumerate(self.named):
            dj = dre[k]
            if dj == ZERO:
                continue
            b = self.bounds[var]
            if dj > ZERO:
                mu = dj / b.lo_coeff
                cert[b.lo_tag] = cert.get(b.lo_tag, ZERO) + mu
            else:
                mu = dj / b.up_coeff
                cert[b.up_tag] = cert.get(b.up_tag, ZERO) + mu
        return cert

    # -- degenerate case: no tableau rows ------------------------------------

    def _solve_boundless(self) -> LpResult:
        point = {}
        dual = {}
        for k, var in enumerate(self.named):
            c = self.cost.get(var, ZERO)
            b = self.bounds[var]
            if c > ZERO:
                if b.lo is None:
                    return LpResult(UNBOUNDED, point=self._boundless_point(), ray={var: -ONE})
                point[var] = b.lo
                dual[b.lo_tag] = dual.get(b.lo_tag, ZERO) + c / b.lo_coeff
            elif c < ZERO:
                if b.up is None:
                    return LpResult(UNBOUNDED, point=self._boundless_point(), ray={var: ONE})
                point[var] = b.up
                dual[b.up_tag] = dual.get(b.up_tag, ZERO) + c / b.up_coeff
            else:
                point[var] = self.val[k]
        value = ZERO
        for var, c in self.cost.items():
            value += c * point[var]
        return LpResult(OPTIMAL, value=value, point=point, dual=dual)

    def _boundless_point(self):
        return {var: self.val[k] for k, var in enumerate(self.named)}


# -- certificate verification (always on, exact) ------------------------------


def _verify_optimal(sys_: LinSys, objective, sense, res: LpResult):
    bad = sys_.violations(res.point)
    if bad:
        raise AssertionError(f"optimal point violates rows: {[v.tag for v in bad]}")
    sigma = ONE if sense == "max" else -ONE
    acc = {}
    total = ZERO
    for tag, lam in res.dual.items():
        kind, row = sys_.row(tag)
        if kind == "le" and sigma * lam < ZERO:
            raise AssertionError(f"dual multiplier for {tag!r} has the wrong sign")
        for var, a in row.coeffs.items():
            acc[var] = acc.get(var, ZERO) + lam * a
        total += lam * row.rhs
    for var in sys_.variables:
        want = rat(objective.get(var, 0))
        if acc.get(var, ZERO) != want:
            raise AssertionError(f"dual combination misses objective on {var!r}")
    if total != res.value:
        raise AssertionError("dual value differs from primal value")


def _verify_farkas(sys_: LinSys, cert: dict):
    acc = {}
    total = ZERO
    for tag, lam in cert.items():
        kind, row = sys_.row(tag)
        if kind == "le" and lam < ZERO:
            raise AssertionError(f"Farkas multiplier for {tag!r} must be nonnegative")
        for var, a in row.coeffs.items():
            acc[var] = acc.get(var, ZERO) + lam * a
        total += lam * row.rhs
    if any(q != ZERO for q in acc.values()):
        raise AssertionError("Farkas combination does not cancel")
    if total >= ZERO:
        raise AssertionError("Farkas combination is not contradictory")


def _verify_unbounded(sys_: LinSys, objective, sense, res: LpResult):
    bad = sys_.violations(res.point)
    if bad:
        raise AssertionError(f"unbounded witness point violates rows: {[v.tag for v in bad]}")
    gain = ZERO
    for var, q in objective.items():
        gain += rat(q) * res.ray.get(var, ZERO)
    if (sense == "max" and gain <= ZERO) or (sense == "min" and gain >= ZERO):
        raise AssertionError("ray does not improve the objective")
    for row in sys_.equalities:
        if row.lhs_at(res.ray) != ZERO:
            raise AssertionError(f"ray leaves equality {row.tag!r}")
    for row in sys_.inequalities:
        if row.lhs_at(res.ray) > ZERO:
            raise AssertionError(f"ray increases inequality {row.tag!r}")
