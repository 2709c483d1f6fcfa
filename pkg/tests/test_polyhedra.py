"""Fourier-Motzkin, redundancy certification, inclusion testing."""
import random

import pytest

from atsppoly.linsys import LinSys
from atsppoly.polyhedra import (
    equivalent_systems,
    fourier_motzkin,
    includes,
    is_redundant,
    mutually_include,
    prune_redundant_rows,
)
from atsppoly.rational import rat
from atsppoly.simplex import OPTIMAL, feasible_point, solve_lp


def interval_system():
    # 0 <= u <= x, x <= 1: projecting out u must give 0 <= x <= 1
    sys_ = LinSys(["u", "x"])
    sys_.add_inequality({"u": 1, "x": -1}, 0, "u_le_x")
    sys_.add_inequality({"u": -1}, 0, "u_ge_0")
    sys_.add_inequality({"x": 1}, 1, "x_ub")
    return sys_


def unit_interval():
    sys_ = LinSys(["x"])
    sys_.add_inequality({"x": 1}, 1, "ub")
    sys_.add_inequality({"x": -1}, 0, "lb")
    return sys_


def test_fm_interval():
    proj = fourier_motzkin(interval_system(), ["u"])
    assert proj.variables == ("x",)
    assert equivalent_systems(proj, unit_interval(), ["x"])
    assert equivalent_systems(unit_interval(), proj, ["x"])


def test_fm_identity_when_nothing_eliminated():
    sys_ = interval_system()
    same = fourier_motzkin(sys_, [])
    fwd, bwd = mutually_include(same, sys_, ["u", "x"])
    assert fwd.holds and bwd.holds


def test_fm_equality_substitution():
    # y = 2x and 0 <= y <= 2 projects to 0 <= x <= 1
    sys_ = LinSys(["x", "y"])
    sys_.add_equality({"y": 1, "x": -2}, 0, "link")
    sys_.add_inequality({"y": 1}, 2, "y_ub")
    sys_.add_inequality({"y": -1}, 0, "y_lb")
    proj = fourier_motzkin(sys_, ["y"])
    assert equivalent_systems(proj, unit_interval(), ["x"])


def test_fm_soundness_random_points():
    # point is in the projection iff the lifted feasibility LP succeeds
    rng = random.Random(7)
    sys_ = LinSys(["u", "v", "x", "y"])
    sys_.add_inequality({"u": 1, "v": 1, "x": -1}, 0, "a")
    sys_.add_inequality({"u": -1, "x": 1, "y": 1}, 3, "b")
    sys_.add_inequality({"v": -1}, 0, "c")
    sys_.add_inequality({"u": -2, "v": 1, "y": -1}, 1, "d")
    sys_.add_inequality({"u": 1, "y": 1}, 4, "e")
    sys_.add_inequality({"x": 1}, 2, "xub")
    sys_.add_inequality({"x": -1}, 2, "xlb")
    sys_.add_inequality({"y": 1}, 2, "yub")
    sys_.add_inequality({"y": -1}, 2, "ylb")
    proj = fourier_motzkin(sys_, ["u", "v"])
    assert set(proj.variables) == {"x", "y"}
    for _ in range(200):
        point = {
            "x": rat(rng.randint(-8, 8), 3),
            "y": rat(rng.randint(-8, 8), 3),
        }
        lifted = sys_.copy()
        lifted.add_equality({"x": 1}, point["x"], "fix_x")
        lifted.add_equality({"y": 1}, point["y"], "fix_y")
        liftable = feasible_point(lifted).status == OPTIMAL
        assert proj.contains_point(point) == liftable


def test_is_redundant_dominated_bound():
    sys_ = LinSys(["x"])
    sys_.add_inequality({"x": 1}, 1, "tight")
    sys_.add_inequality({"x": 1}, 2, "loose")
    sys_.add_inequality({"x": -1}, 0, "lb")
    verdict = is_redundant(sys_, "loose")
    assert verdict.redundant
    assert verdict.dual is not None
    verdict = is_redundant(sys_, "tight")
    assert not verdict.redundant
    # witness satisfies the others but breaks the tested row
    point = verdict.point
    assert point["x"] > 1 and point["x"] <= 2


def test_is_redundant_rejects_equality_and_infeasible():
    sys_ = LinSys(["x"])
    sys_.add_equality({"x": 1}, 1, "fix")
    sys_.add_inequality({"x": 1}, 2, "ub")
    with pytest.raises(ValueError):
        is_redundant(sys_, "fix")
    bad = LinSys(["x"])
    bad.add_inequality({"x": 1}, 0, "ub")
    bad.add_inequality({"x": -1}, -1, "lb")
    bad.add_inequality({"x": 1}, 5, "loose")
    with pytest.raises(ValueError):
        is_redundant(bad, "loose")


def test_prune_redundant_rows():
    sys_ = LinSys(["x", "y"])
    sys_.add_inequality({"x": 1}, 1, "xub")
    sys_.add_inequality({"x": 1}, 3, "xub_loose")
    sys_.add_inequality({"x": 1, "y": 1}, 5, "sum_loose")
    sys_.add_inequality({"y": 1}, 1, "yub")
    sys_.add_inequality({"x": -1}, 0, "xlb")
    sys_.add_inequality({"y": -1}, 0, "ylb")
    pruned = prune_redundant_rows(sys_)
    assert not pruned.has_tag("xub_loose")
    assert not pruned.has_tag("sum_loose")
    assert pruned.has_tag("xub") and pruned.has_tag("yub")


def test_includes_reflexive_and_strict():
    inner = unit_interval()
    outer = LinSys(["x"])
    outer.add_inequality({"x": 1}, 2, "ub")
    outer.add_inequality({"x": -1}, 0, "lb")
    assert includes(inner, inner, ["x"]).holds
    assert includes(inner, outer, ["x"]).holds
    rev = includes(outer, inner, ["x"])
    assert not rev.holds
    assert rev.violated_tag == "ub"
    assert rev.witness["x"] > 1


def test_includes_unbounded_source():
    line = LinSys(["x"])  # no constraints at all
    line.add_inequality({"x": 0}, 0, "vacuous")
    res = includes(line, unit_interval(), ["x"])
    assert not res.holds
    assert res.witness["x"] > 1 or res.witness["x"] < 0


def test_includes_requires_shared_support():
    ext = LinSys(["x", "u"])
    ext.add_inequality({"x": 1, "u": 1}, 1, "mix")
    with pytest.raises(ValueError):
        includes(unit_interval(), ext, ["x"])


def test_solve_lp_assignment_all_ones():
    # over the restricted assignment polytope, the all-ones objective gives n
    from atsppoly.digraph import ArcSpace
    from atsppoly.formulations import build_ap, xvar

    space = ArcSpace(5)
    ap = build_ap(space)
    res = solve_lp(ap, {xvar(i, j): 1 for (i, j) in space.arcs}, "max")
    assert res.value == 5
