"""Builders for every formulation in scope, as tagged H-descriptions.

Conventions:
  variables   x[i,j] arc use, u[i] potentials, f[i,j] single-commodity flow,
              v[k,i] precedence blocks, u[k,l][i] per-arc potential blocks,
              f[k][i,j] per-node commodity flows
  row tags    AP-out(i) / AP-in(i) assignment rows, ub/lb box rows,
              genMTZ(i,j), genDL(i,j), flow(i), cap(i,j), circuit(C),
              dlcyc(C), pair(i,j), cut(S), clique(S), dlcl(C;k,l), dlvm(C;k)

Rows whose cycle or subset covers all of N1 are implied by the assignment
equalities (the arcs within N1 always sum to n-2); builders emit them anyway
so facet censuses see the full family, and prune them on request.
"""
from __future__ import annotations

from dataclasses import dataclass

from .digraph import ArcSpace, all_subtour_cycles, subsets_s1
from .linsys import LinSys
from .parameters import (
    IN_FAMILY,
    OUTSIDE,
    BVec,
    DVec,
    b_membership,
    b_uniform,
    canonical_vertices,
    d_membership,
    d_uniform,
)
from .rational import ONE, ZERO, rat

X_SPACE_FAMILIES = {
    "ap",
    "p-mtz",
    "p-dl",
    "p-scf",
    "dfj-clique",
    "dfj-cut",
    "circuit",
    "weak-circuit",
    "weak-clique",
    "lifted-weak-circuit",
    "cl-mtz",
    "cl-dl",
    "cl-scf",
    "cl-dl-vmtz",
}
EXTENDED_FAMILIES = {
    "q-mtz",
    "q-dl",
    "q-scf",
    "mtz",
    "dl",
    "scf",
    "rmtz",
    "l1rmtz",
    "mcf",
    "ef-mtz",
    "ef-dl",
    "ef-scf",
}
PARAMETRIC_D = {"q-mtz", "q-dl", "p-mtz", "p-dl"}
PARAMETRIC_B = {"q-scf", "p-scf"}
ALL_FAMILIES = X_SPACE_FAMILIES | EXTENDED_FAMILIES


@dataclass(frozen=True)
class FormulationId:
    """Family name plus parameter payload (present iff the family is parametric)."""

    family: str
    d: DVec | None = None
    b: BVec | None = None

    def __post_init__(self):
        if self.family not in ALL_FAMILIES:
            raise ValueError(f"unknown formulation family {self.family!r}")
        if self.family in PARAMETRIC_D and self.d is None:
            raise ValueError(f"family {self.family!r} needs a d parameter")
        if self.family in PARAMETRIC_B and self.b is None:
            raise ValueError(f"family {self.family!r} needs a b parameter")
        if self.family not in PARAMETRIC_D and self.d is not None:
            raise ValueError(f"family {self.family!r} takes no d parameter")
        if self.family not in PARAMETRIC_B and self.b is not None:
            raise ValueError(f"family {self.family!r} takes no b parameter")

    @property
    def extended(self) -> bool:
        return self.family in EXTENDED_FAMILIES

    def label(self) -> str:
        return self.family


# -- variable naming ------------------------------------------------------------


def xvar(i, j) -> str:
    return f"x[{i},{j}]"


def uvar(i) -> str:
    return f"u[{i}]"


def fvar(i, j) -> str:
    return f"f[{i},{j}]"


def vvar(k, i) -> str:
    return f"v[{k},{i}]"


def u_block_var(k, l, i) -> str:
    return f"u[{k},{l}][{i}]"


def f_block_var(k, i, j) -> str:
    return f"f[{k}][{i},{j}]"


def cycle_tag(kind, cycle) -> str:
    return f"{kind}({cycle})"


def subset_tag(kind, subset) -> str:
    return f"{kind}({subset})"


# -- base and parametric builders -------------------------------------------------


def build_ap(space: ArcSpace) -> LinSys:
    """Restricted assignment polytope: degree equalities plus 0 <= x <= 1."""
    sys_ = LinSys([xvar(i, j) for (i, j) in space.arcs])
    for i in space.nodes:
        sys_.add_equality({xvar(i, j): ONE for j in space.nodes if j != i}, ONE, f"AP-out({i})")
    for i in space.nodes:
        sys_.add_equality({xvar(j, i): ONE for j in space.nodes if j != i}, ONE, f"AP-in({i})")
    for (i, j) in space.arcs:
        sys_.add_inequality({xvar(i, j): ONE}, ONE, f"ub(x[{i},{j}])")
        sys_.add_inequality({xvar(i, j): -ONE}, ZERO, f"lb(x[{i},{j}])")
    return sys_


def _require_dbar(d: DVec, space: ArcSpace) -> None:
    if d_membership(d, space).status == OUTSIDE:
        raise ValueError("d must lie in the closed parameter polytope (nonnegative, cycle sums <= 1)")


def _require_bbar(b: BVec, space: ArcSpace) -> None:
    if b_membership(b, space).status == OUTSIDE:
        raise ValueError("b must lie in the closed simplex (nonnegative entries summing to 1)")


def build_q_mtz(space: ArcSpace, d: DVec) -> LinSys:
    """Extended system with potentials: u_i - u_j + x_ij <= 1 - d_ij on A1."""
    _require_dbar(d, space)
    sys_ = build_ap(space)
    sys_.add_variables([uvar(i) for i in space.n1_nodes])
    for (i, j) in space.a1_arcs:
        sys_.add_inequality(
            {uvar(i): ONE, uvar(j): -ONE, xvar(i, j): ONE}, ONE - d[(i, j)], f"genMTZ({i},{j})"
        )
    return sys_


def build_p_mtz(space: ArcSpace, d: DVec, prune_redundant: bool = False) -> LinSys:
    """Projection onto x: sum_C x <= |C| - sum_C d for every subtour cycle."""
    _require_dbar(d, space)
    sys_ = build_ap(space)
    for cyc in all_subtour_cycles(space):
        if prune_redundant and len(cyc) == space.n - 1:
            continue
        sys_.add_inequality(
            {xvar(i, j): ONE for (i, j) in cyc.arcs},
            rat(len(cyc)) - d.cycle_sum(cyc),
            cycle_tag("circuit", cyc),
        )
    return sys_


def build_q_dl(space: ArcSpace, d: DVec) -> LinSys:
    """Extended system: u_i - u_j + x_ij + (1 - d_ij - d_ji) x_ji <= 1 - d_ij."""
    _require_dbar(d, space)
    sys_ = build_ap(space)
    sys_.add_variables([uvar(i) for i in space.n1_nodes])
    for (i, j) in space.a1_arcs:
        sys_.add_inequality(
            {
                uvar(i): ONE,
                uvar(j): -ONE,
                xvar(i, j): ONE,
                xvar(j, i): ONE - d[(i, j)] - d[(j, i)],
            },
            ONE - d[(i, j)],
            f"genDL({i},{j})",
        )
    return sys_


def build_p_dl(space: ArcSpace, d: DVec, prune_redundant: bool = False) -> LinSys:
    """Projection onto x: lifted cycle rows for |C| >= 3 plus pair rows.

    The length-2 cycle rows of the projection collapse (after dividing by
    2 - d_ij - d_ji > 0) to x_ij + x_ji <= 1, independent of d.
    """
    _require_dbar(d, space)
    sys_ = build_ap(space)
    for (i, j) in space.a1_arcs:
        if i < j:
            sys_.add_inequality({xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})")
    for cyc in all_subtour_cycles(space):
        if len(cyc) < 3 or (prune_redundant and len(cyc) == space.n - 1):
            continue
        coeffs = {}
        for (i, j) in cyc.arcs:
            coeffs[xvar(i, j)] = ONE
            coeffs[xvar(j, i)] = ONE - d[(i, j)] - d[(j, i)]
        sys_.add_inequality(coeffs, rat(len(cyc)) - d.cycle_sum(cyc), cycle_tag("dlcyc", cyc))
    return sys_


def build_q_scf(space: ArcSpace, b: BVec) -> LinSys:
    """Single-commodity flow: balances on N1 (the depot row is implied), f <= x."""
    _require_bbar(b, space)
    sys_ = build_ap(space)
    sys_.add_variables([fvar(i, j) for (i, j) in space.arcs])
    for i in space.n1_nodes:
        coeffs = {}
        for j in space.nodes:
            if j == i:
                continue
            coeffs[fvar(i, j)] = ONE
            coeffs[fvar(j, i)] = -ONE
        sys_.add_equality(coeffs, -b[i], f"flow({i})")
    for (i, j) in space.arcs:
        sys_.add_inequality({fvar(i, j): ONE, xvar(i, j): -ONE}, ZERO, f"cap({i},{j})")
        sys_.add_inequality({fvar(i, j): -ONE}, ZERO, f"lb(f[{i},{j}])")
    return sys_


def build_p_scf(
    space: ArcSpace, b: BVec, form: str = "cut", prune_redundant: bool = False
) -> LinSys:
    """Projection onto x, as cut rows (delta+ >= demand) or clique rows (A(S)).

    The two renderings are interchangeable over the assignment polytope since
    the arcs inside S and the arcs leaving S always sum to |S|.
    """
    _require_bbar(b, space)
    if form not in ("cut", "clique"):
        raise ValueError(f"unknown rendering {form!r}")
    sys_ = build_ap(space)
    for subset in subsets_s1(space):
        if prune_redundant and len(subset) == space.n - 1:
            continue
        demand = b.subset_sum(subset)
        if form == "cut":
            coeffs = {xvar(i, j): -ONE for (i, j) in space.delta_plus(subset.members)}
            sys_.add_inequality(coeffs, -demand, subset_tag("cut", subset))
        else:
            coeffs = {xvar(i, j): ONE for (i, j) in space.inner_arcs(subset.members)}
            sys_.add_inequality(coeffs, rat(len(subset)) - demand, subset_tag("clique", subset))
    return sys_


# -- classic special cases ---------------------------------------------------------


def build_classic_mtz(space: ArcSpace) -> LinSys:
    """Unnormalized Miller-Tucker-Zemlin: u_i - u_j + (n-1) x_ij <= n - 2."""
    sys_ = build_ap(space)
    sys_.add_variables([uvar(i) for i in space.n1_nodes])
    n = space.n
    for (i, j) in space.a1_arcs:
        sys_.add_inequality(
            {uvar(i): ONE, uvar(j): -ONE, xvar(i, j): rat(n - 1)}, rat(n - 2), f"MTZ({i},{j})"
        )
    return sys_


def build_classic_dl(space: ArcSpace) -> LinSys:
    """Desrochers-Laporte lifting: u_i - u_j + (n-1) x_ij + (n-3) x_ji <= n - 2."""
    sys_ = build_ap(space)
    sys_.add_variables([uvar(i) for i in space.n1_nodes])
    n = space.n
    for (i, j) in space.a1_arcs:
        sys_.add_inequality(
            {uvar(i): ONE, uvar(j): -ONE, xvar(i, j): rat(n - 1), xvar(j, i): rat(n - 3)},
            rat(n - 2),
            f"DL({i},{j})",
        )
    return sys_


def build_classic_scf(space: ArcSpace) -> LinSys:
    """Flow with n-1 units leaving the depot and f <= (n-1) x."""
    sys_ = build_ap(space)
    sys_.add_variables([fvar(i, j) for (i, j) in space.arcs])
    n = space.n
    for i in space.nodes:
        coeffs = {}
        for j in space.nodes:
            if j == i:
                continue
            coeffs[fvar(i, j)] = ONE
            coeffs[fvar(j, i)] = -ONE
        rhs = rat(n - 1) if i == 1 else -ONE
        sys_.add_equality(coeffs, rhs, f"flow({i})")
    for (i, j) in space.arcs:
        sys_.add_inequality({fvar(i, j): ONE, xvar(i, j): -rat(n - 1)}, ZERO, f"cap({i},{j})")
        sys_.add_inequality({fvar(i, j): -ONE}, ZERO, f"lb(f[{i},{j}])")
    return sys_


def build_dfj(space: ArcSpace, form: str = "clique", prune_redundant: bool = False) -> LinSys:
    """Dantzig-Fulkerson-Johnson rows: A(S) cliques or delta+ cuts, unit slack."""
    if form not in ("cut", "clique"):
        raise ValueError(f"unknown rendering {form!r}")
    sys_ = build_ap(space)
    for subset in subsets_s1(space):
        if prune_redundant and len(subset) == space.n - 1:
            continue
        if form == "clique":
            coeffs = {xvar(i, j): ONE for (i, j) in space.inner_arcs(subset.members)}
            sys_.add_inequality(coeffs, rat(len(subset) - 1), subset_tag("clique", subset))
        else:
            coeffs = {xvar(i, j): -ONE for (i, j) in space.delta_plus(subset.members)}
            sys_.add_inequality(coeffs, -ONE, subset_tag("cut", subset))
    return sys_


def _precedence_vars(space: ArcSpace):
    return [vvar(k, i) for k in space.n1_nodes for i in space.n1_nodes if i != k]


def _add_precedence_boxes(sys_: LinSys, space: ArcSpace):
    # v_ki models "k precedes i": adopt the 0/1 box of its indicator meaning
    for k in space.n1_nodes:
        for i in space.n1_nodes:
            if i != k:
                sys_.add_inequality({vvar(k, i): ONE}, ONE, f"ub(v[{k},{i}])")
                sys_.add_inequality({vvar(k, i): -ONE}, ZERO, f"lb(v[{k},{i}])")


def build_rmtz(space: ArcSpace, lifted: bool = False) -> LinSys:
    """Precedence disaggregation of MTZ; lifted=True gives the DL counterpart.

    Rows: x_ij (+ x_ji when lifted) + v_ki - v_kj <= 1 for k distinct from i, j;
    x_ij <= v_ij; x_ij + v_ji <= 1.
    """
    sys_ = build_ap(space)
    sys_.add_variables(_precedence_vars(space))
    _add_precedence_boxes(sys_, space)
    name = "L1RMTZ" if lifted else "RMTZ"
    for (i, j) in space.a1_arcs:
        for k in space.n1_nodes:
            if k == i or k == j:
                continue
            coeffs = {xvar(i, j): ONE, vvar(k, i): ONE, vvar(k, j): -ONE}
            if lifted:
                coeffs[xvar(j, i)] = ONE
            sys_.add_inequality(coeffs, ONE, f"{name}({k};{i},{j})")
        sys_.add_inequality({xvar(i, j): ONE, vvar(i, j): -ONE}, ZERO, f"{name}-link({i},{j})")
        sys_.add_inequality({xvar(i, j): ONE, vvar(j, i): ONE}, ONE, f"{name}-excl({i},{j})")
    return sys_


def build_mcf(space: ArcSpace) -> LinSys:
    """Multi-commodity flow: one unit routed from the depot to each k in N1."""
    sys_ = build_ap(space)
    sys_.add_variables([f_block_var(k, i, j) for k in space.n1_nodes for (i, j) in space.arcs])
    for k in space.n1_nodes:
        for i in space.nodes:
            coeffs = {}
            for j in space.nodes:
                if j == i:
                    continue
                coeffs[f_block_var(k, i, j)] = ONE
                coeffs[f_block_var(k, j, i)] = -ONE
            rhs = ONE if i == 1 else (-ONE if i == k else ZERO)
            sys_.add_equality(coeffs, rhs, f"flow[{k}]({i})")
        for (i, j) in space.arcs:
            sys_.add_inequality(
                {f_block_var(k, i, j): ONE, xvar(i, j): -ONE}, ZERO, f"cap[{k}]({i},{j})"
            )
            sys_.add_inequality({f_block_var(k, i, j): -ONE}, ZERO, f"lb(f[{k}][{i},{j}])")
    return sys_


def build_circuit_system(space: ArcSpace, weak: bool = False, prune_redundant: bool = False) -> LinSys:
    """Circuit rows sum_C x <= |C| - 1, or the weak form with slack |C|/(n-1)."""
    sys_ = build_ap(space)
    for cyc in all_subtour_cycles(space):
        if prune_redundant and len(cyc) == space.n - 1:
            continue
        rhs = rat(len(cyc)) - (rat(len(cyc), space.n - 1) if weak else ONE)
        sys_.add_inequality(
            {xvar(i, j): ONE for (i, j) in cyc.arcs}, rhs, cycle_tag("circuit", cyc)
        )
    return sys_


def build_weak_clique(space: ArcSpace, prune_redundant: bool = False) -> LinSys:
    """Weak clique rows sum_{A(S)} x <= |S| - |S|/(n-1)."""
    sys_ = build_ap(space)
    for subset in subsets_s1(space):
        if prune_redundant and len(subset) == space.n - 1:
            continue
        size = len(subset)
        coeffs = {xvar(i, j): ONE for (i, j) in space.inner_arcs(subset.members)}
        sys_.add_inequality(coeffs, rat(size) - rat(size, space.n - 1), subset_tag("clique", subset))
    return sys_


def build_lifted_weak_circuit(space: ArcSpace, prune_redundant: bool = False) -> LinSys:
    """Projection of classic DL: cycle rows carrying (n-3)/(n-1) reverse terms."""
    sys_ = build_ap(space)
    n = space.n
    for (i, j) in space.a1_arcs:
        if i < j:
            sys_.add_inequality({xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})")
    for cyc in all_subtour_cycles(space):
        if len(cyc) < 3 or (prune_redundant and len(cyc) == space.n - 1):
            continue
        coeffs = {}
        for (i, j) in cyc.arcs:
            coeffs[xvar(i, j)] = ONE
            coeffs[xvar(j, i)] = rat(n - 3, n - 1)
        rhs = rat(len(cyc)) - rat(len(cyc), n - 1)
        sys_.add_inequality(coeffs, rhs, cycle_tag("lwc", cyc))
    return sys_


# -- closures -----------------------------------------------------------------------


def build_cl_mtz(space: ArcSpace, prune_redundant: bool = False) -> LinSys:
    """Closure of the offset-MTZ family: exactly the circuit inequalities."""
    return build_circuit_system(space, weak=False, prune_redundant=prune_redundant)


def build_cl_dl(space: ArcSpace, prune_redundant: bool = False) -> LinSys:
    """Closure over all arc unit vectors: for every cycle and every arc kl on
    it, sum_C (x_ij + x_ji) - x_lk <= |C| - 1, plus the pair rows."""
    sys_ = build_ap(space)
    for (i, j) in space.a1_arcs:
        if i < j:
            sys_.add_inequality({xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})")
    for cyc in all_subtour_cycles(space):
        if len(cyc) < 3 or (prune_redundant and len(cyc) == space.n - 1):
            continue
        base = {}
        for (i, j) in cyc.arcs:
            base[xvar(i, j)] = ONE
            base[xvar(j, i)] = ONE
        for (k, l) in cyc.arcs:
            coeffs = dict(base)
            coeffs[xvar(l, k)] = coeffs[xvar(l, k)] - ONE
            sys_.add_inequality(coeffs, rat(len(cyc) - 1), f"dlcl({cyc};{k},{l})")
    return sys_


def build_cl_dl_vmtz(space: ArcSpace, prune_redundant: bool = False) -> LinSys:
    """Closure of the DL family over the out-star vertices only: for every
    cycle and node k on it, both reverse arcs at k are subtracted."""
    sys_ = build_ap(space)
    for (i, j) in space.a1_arcs:
        if i < j:
            sys_.add_inequality({xvar(i, j): ONE, xvar(j, i): ONE}, ONE, f"pair({i},{j})")
    for cyc in all_subtour_cycles(space):
        if len(cyc) < 3 or (prune_redundant and len(cyc) == space.n - 1):
            continue
        base = {}
        for (i, j) in cyc.arcs:
            base[xvar(i, j)] = ONE
            base[xvar(j, i)] = ONE
        for k in cyc.nodes:
            coeffs = dict(base)
            coeffs[xvar(k, cyc.pred(k))] = coeffs[xvar(k, cyc.pred(k))] - ONE
            coeffs[xvar(cyc.succ(k), k)] = coeffs[xvar(cyc.succ(k), k)] - ONE
            sys_.add_inequality(coeffs, rat(len(cyc) - 1), f"dlvm({cyc};{k})")
    return sys_


def build_cl_scf(space: ArcSpace, form: str = "cut", prune_redundant: bool = False) -> LinSys:
    """Closure of the flow family: the unit cut rows, i.e. the DFJ system."""
    return build_dfj(space, form=form, prune_redundant=prune_redundant)


def build_ef(space: ArcSpace, family: str, vertex_list) -> LinSys:
    """Stacked extended formulation: one auxiliary block per listed parameter.

    Sharing a single block across parameters would shrink the projection, so
    the blocks are deliberately kept separate.
    """
    vertices = list(vertex_list)
    if not vertices:
        raise ValueError("vertex list must be nonempty")
    sys_ = build_ap(space)
    if family in ("MTZ", "DL"):
        for idx, d in enumerate(vertices):
            _require_dbar(d, space)
            sys_.add_variables([f"u[#{idx}][{i}]" for i in space.n1_nodes])
            for (i, j) in space.a1_arcs:
                coeffs = {
                    f"u[#{idx}][{i}]": ONE,
                    f"u[#{idx}][{j}]": -ONE,
                    xvar(i, j): ONE,
                }
                if family == "DL":
                    coeffs[xvar(j, i)] = ONE - d[(i, j)] - d[(j, i)]
                sys_.add_inequality(coeffs, ONE - d[(i, j)], f"gen{family}[#{idx}]({i},{j})")
        return sys_
    if family == "SCF":
        for idx, b in enumerate(vertices):
            _require_bbar(b, space)
            sys_.add_variables([f"f[#{idx}][{i},{j}]" for (i, j) in space.arcs])
            for i in space.n1_nodes:
                coeffs = {}
                for j in space.nodes:
                    if j == i:
                        continue
                    coeffs[f"f[#{idx}][{i},{j}]"] = ONE
                    coeffs[f"f[#{idx}][{j},{i}]"] = -ONE
                sys_.add_equality(coeffs, -b[i], f"flow[#{idx}]({i})")
            for (i, j) in space.arcs:
                sys_.add_inequality(
                    {f"f[#{idx}][{i},{j}]": ONE, xvar(i, j): -ONE}, ZERO, f"cap[#{idx}]({i},{j})"
                )
                sys_.add_inequality(
                    {f"f[#{idx}][{i},{j}]": -ONE}, ZERO, f"lb(f[#{idx}][{i},{j}])"
                )
        return sys_
    raise ValueError(f"unknown extended family {family!r}")


def build_q_bar(space: ArcSpace, family: str) -> LinSys:
    """The canonical-vertex extended closures (per-vertex u/v/f copies)."""
    return build_ef(space, family, canonical_vertices(family, space))


# -- dispatch ------------------------------------------------------------------------


def build(fid: FormulationId, space: ArcSpace, prune_redundant: bool = False, scf_form: str = "cut") -> LinSys:
    fam = fid.family
    if fam == "ap":
        return build_ap(space)
    if fam == "q-mtz":
        return build_q_mtz(space, fid.d)
    if fam == "p-mtz":
        return build_p_mtz(space, fid.d, prune_redundant)
    if fam == "q-dl":
        return build_q_dl(space, fid.d)
    if fam == "p-dl":
        return build_p_dl(space, fid.d, prune_redundant)
    if fam == "q-scf":
        return build_q_scf(space, fid.b)
    if fam == "p-scf":
        return build_p_scf(space, fid.b, scf_form, prune_redundant)
    if fam == "mtz":
        return build_classic_mtz(space)
    if fam == "dl":
        return build_classic_dl(space)
    if fam == "scf":
        return build_classic_scf(space)
    if fam == "dfj-clique":
        return build_dfj(space, "clique", prune_redundant)
    if fam == "dfj-cut":
        return build_dfj(space, "cut", prune_redundant)
    if fam == "rmtz":
        return build_rmtz(space, lifted=False)
    if fam == "l1rmtz":
        return build_rmtz(space, lifted=True)
    if fam == "mcf":
        return build_mcf(space)
    if fam == "circuit":
        return build_circuit_system(space, weak=False, prune_redundant=prune_redundant)
    if fam == "weak-circuit":
        return build_circuit_system(space, weak=True, prune_redundant=prune_redundant)
    if fam == "weak-clique":
        return build_weak_clique(space, prune_redundant)
    if fam == "lifted-weak-circuit":
        return build_lifted_weak_circuit(space, prune_redundant)
    if fam == "cl-mtz":
        return build_cl_mtz(space, prune_redundant)
    if fam == "cl-dl":
        return build_cl_dl(space, prune_redundant)
    if fam == "cl-dl-vmtz":
        return build_cl_dl_vmtz(space, prune_redundant)
    if fam == "cl-scf":
        return build_cl_scf(space, scf_form, prune_redundant)
    if fam == "ef-mtz":
        return build_q_bar(space, "MTZ")
    if fam == "ef-dl":
        return build_q_bar(space, "DL")
    if fam == "ef-scf":
        return build_q_bar(space, "SCF")
    raise AssertionError(f"unhandled family {fam!r}")


def default_fid(family: str, space: ArcSpace) -> FormulationId:
    """FormulationId with the classic default payload where one is needed."""
    if family in PARAMETRIC_D:
        return FormulationId(family, d=d_uniform(space))
    if family in PARAMETRIC_B:
        return FormulationId(family, b=b_uniform(space))
    return FormulationId(family)


def family_is_valid_relaxation(fid: FormulationId, space: ArcSpace) -> bool:
    """True when integer feasibility equals the tours (needs strict parameters)."""
    if fid.family in PARAMETRIC_D:
        return d_membership(fid.d, space).status == IN_FAMILY
    if fid.family in PARAMETRIC_B:
        return b_membership(fid.b, space).status == IN_FAMILY
    return True
