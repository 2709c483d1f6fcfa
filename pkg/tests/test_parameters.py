"""Parameter polytopes: membership oracles, canonical vertices, sampling."""
import pytest

from atsppoly.digraph import ArcSpace, Cycle, all_subtour_cycles
from atsppoly.parameters import (
    IN_CLOSURE_ONLY,
    IN_FAMILY,
    OUTSIDE,
    BVec,
    DVec,
    antisymmetric_perturbation,
    b_membership,
    b_node_vertex,
    canonical_vertices,
    d_facet_relative_interior,
    d_membership,
    d_uniform,
    param_from_json,
    param_to_json,
    potential_perturbation,
    sample_interior,
)
from atsppoly.rational import ONE, ZERO, rat


def test_uniform_d_is_interior_of_family():
    space = ArcSpace(5)
    cls = d_membership(d_uniform(space), space)
    assert cls.status == IN_FAMILY
    assert len(cls.worst_cycle) == 4
    assert cls.worst_sum == ONE
    assert not cls.strict_interior  # a full-length cycle sums to one exactly


def test_zero_d_on_closure_boundary():
    space = ArcSpace(5)
    zero = DVec(5, {a: ZERO for a in space.a1_arcs})
    cls = d_membership(zero, space)
    assert cls.status == IN_CLOSURE_ONLY
    assert cls.worst_sum == ZERO


def test_overloaded_two_cycle_is_outside():
    space = ArcSpace(5)
    entries = {a: rat(1, 1000) for a in space.a1_arcs}
    entries[(2, 3)] = rat(9, 16)
    entries[(3, 2)] = rat(9, 16)
    cls = d_membership(DVec(5, entries), space)
    assert cls.status == OUTSIDE
    assert cls.worst_cycle == Cycle((2, 3))
    assert cls.worst_sum == rat(9, 8)


def test_canonical_vertices_counts_and_membership():
    space = ArcSpace(5)
    vmtz = canonical_vertices("MTZ", space)
    assert len(vmtz) == 4
    for vec in vmtz:
        assert sum(1 for q in vec.entries.values() if q == ONE) == 3  # n-2 ones
        assert d_membership(vec, space).status == IN_CLOSURE_ONLY
        assert d_membership(vec, space).worst_sum == ONE
    vdl = canonical_vertices("DL", space)
    assert len(vdl) == 12
    for vec in vdl:
        assert d_membership(vec, space).status == IN_CLOSURE_ONLY
    vscf = canonical_vertices("SCF", space)
    assert len(vscf) == 4
    for vec in vscf:
        assert b_membership(vec, space).status == IN_CLOSURE_ONLY


def test_sample_interior_d():
    space = ArcSpace(5)
    d = sample_interior("D", space, 3)
    cls = d_membership(d, space)
    assert cls.status == IN_FAMILY
    assert cls.strict_interior
    assert cls.worst_sum == rat(1, 2)
    assert sample_interior("D", space, 3).entries == d.entries
    assert sample_interior("D", space, 4).entries != d.entries


def test_sample_interior_b():
    space = ArcSpace(6)
    b = sample_interior("B", space, 11)
    assert b.subset_sum(space.n1_nodes) == ONE
    assert all(q > ZERO for q in b.entries.values())
    assert b_membership(b, space).status == IN_FAMILY


def test_antisymmetric_perturbation():
    space = ArcSpace(5)
    d = sample_interior("D", space, 1)
    pert = antisymmetric_perturbation(d, space, seed=2)
    delta = pert.delta
    for (i, j) in space.a1_arcs:
        assert delta[(i, j)] + delta[(j, i)] == ZERO
    assert not delta.is_zero()
    assert pert.breaks_long_cycle
    assert delta.cycle_sum(pert.witness_cycle) != ZERO
    assert d_membership(d.plus(delta), space).status == IN_FAMILY


def test_antisymmetric_perturbation_at_boundary():
    # from the uniform vector every (n-1)-cycle sum is exactly 1, so a
    # triangle-supported bump always pushes some long cycle past 1: no
    # magnitude keeps the sum admissible
    space = ArcSpace(5)
    from atsppoly.errors import SamplingError

    with pytest.raises(SamplingError):
        antisymmetric_perturbation(d_uniform(space), space, seed=2)
    pert = antisymmetric_perturbation(d_uniform(space), space, seed=2, stay_in_family=False)
    assert pert.breaks_long_cycle
    assert len(pert.witness_cycle) == 3
    assert d_membership(d_uniform(space).plus(pert.delta), space).status == OUTSIDE


def test_degenerate_antisymmetric_delta_has_zero_cycle_sums():
    # on N1 = {2,3,4}: delta_32 = 1, delta_34 = 1/2, delta_42 = 1/2 (negated
    # reverses) is anti-symmetric yet cancels along every cycle
    space = ArcSpace(4)
    entries = {a: ZERO for a in space.a1_arcs}
    entries[(3, 2)], entries[(2, 3)] = ONE, -ONE
    entries[(3, 4)], entries[(4, 3)] = rat(1, 2), -rat(1, 2)
    entries[(4, 2)], entries[(2, 4)] = rat(1, 2), -rat(1, 2)
    delta = DVec(4, entries)
    for cyc in all_subtour_cycles(space):
        assert delta.cycle_sum(cyc) == ZERO


def test_potential_perturbation_cancels_on_cycles():
    space = ArcSpace(6)
    pert = potential_perturbation(space, seed=5, scale=rat(1, 10))
    assert not pert.breaks_long_cycle
    for cyc in all_subtour_cycles(space):
        assert pert.delta.cycle_sum(cyc) == ZERO


def test_facet_relative_interior():
    space = ArcSpace(5)
    cyc = Cycle((2, 3, 4))
    d = d_facet_relative_interior(space, cyc, seed=1)
    assert d.cycle_sum(cyc) == ONE
    for other in all_subtour_cycles(space):
        if other != cyc:
            assert d.cycle_sum(other) < ONE
    assert d_membership(d, space).status == IN_FAMILY


def test_dbar_polytope_certificate_points():
    # the scaled cycle indicator violates only its own row; the flat interior
    # point satisfies every row strictly
    for n in (5, 6):
        space = ArcSpace(n)
        cycles = all_subtour_cycles(space)
        flat = DVec(n, {a: rat(1, len(space.a1_arcs) + 1) for a in space.a1_arcs})
        for cyc in cycles:
            assert flat.cycle_sum(cyc) < ONE
        for cyc in cycles:
            point = DVec(
                n,
                {a: (rat(1, len(cyc) - 1) if a in cyc.arc_set else ZERO) for a in space.a1_arcs},
            )
            for other in cycles:
                s = point.cycle_sum(other)
                if other == cyc:
                    assert s > ONE
                else:
                    assert s <= ONE


def test_param_json_roundtrip():
    space = ArcSpace(4)
    d = sample_interior("D", space, 9)
    again = param_from_json(param_to_json(d), 4)
    assert isinstance(again, DVec) and again.entries == d.entries
    b = b_node_vertex(space, 3)
    again = param_from_json(param_to_json(b), 4)
    assert isinstance(again, BVec) and again.entries == b.entries


def test_vector_validation():
    with pytest.raises(ValueError):
        DVec(4, {(2, 3): ONE})
    with pytest.raises(ValueError):
        BVec(4, {2: ONE, 3: ZERO})
