"""Proposition verification layer on small instances."""
import json

import pytest

from atsppoly.analysis import (
    VERIFIED,
    compare_systems,
    dbar_system,
    facet_census,
    verify_antisymmetric_rigidity,
    verify_chain,
    verify_closure,
    verify_dbar_polytope,
    verify_dl_antisymmetric,
    verify_extended_closures,
    verify_local_hull,
    verify_offset_dominance,
    verify_projection,
    verify_scf_incomparability,
    witness_clique_spread,
    witness_half_pairs,
    witness_reverse_blend,
)
from atsppoly.digraph import ArcSpace, Cycle
from atsppoly.formulations import build_p_dl, build_p_mtz, build_rmtz, xvar
from atsppoly.parameters import (
    b_node_vertex,
    d_out_vertex,
    d_uniform,
    sample_interior,
)
from atsppoly.polyhedra import is_redundant, mutually_include, project_onto
from atsppoly.rational import rat


@pytest.mark.parametrize("n", [4, 5, 6])
def test_dbar_polytope(n):
    rep = verify_dbar_polytope(ArcSpace(n))
    assert rep.verdict == VERIFIED


def test_dbar_redundancy_examples():
    # |C| = n-1 projected rows are implied; short rows are not
    space = ArcSpace(5)
    d = d_uniform(space)
    sys_ = build_p_mtz(space, d)
    long_tag = next(t for t in (r.tag for r in sys_.inequalities) if t.count(">") == 3)
    assert is_redundant(sys_, long_tag).redundant
    verdict = is_redundant(sys_, "circuit(2>3)")
    assert not verdict.redundant
    point = verdict.point
    # the certificate satisfies everything else and breaks this row by one
    others = sys_.without("circuit(2>3)")
    assert not others.violations(point)


@pytest.mark.parametrize("family", ["MTZ", "DL", "SCF"])
def test_projection_identity_n4(family):
    space = ArcSpace(4)
    kind = "B" if family == "SCF" else "D"
    rep = verify_projection(family, sample_interior(kind, space, 2), space)
    assert rep.verdict == VERIFIED


def test_facet_census_counts_n5():
    space = ArcSpace(5)
    sys_ = build_p_mtz(space, sample_interior("D", space, 1))
    flat = {xvar(i, j): rat(1, 4) for (i, j) in space.arcs}
    from atsppoly.analysis import _completion_point, _row_is_facet

    facets = []
    for row in sys_.inequalities:
        if not row.tag.startswith("circuit("):
            continue
        size = row.tag.count(">") + 1
        cyc = Cycle(tuple(int(v) for v in row.tag[len("circuit("):-1].split(">")))
        hint = _completion_point(space, cyc)
        ok, _ = _row_is_facet(sys_, row.tag, flat, hint)
        if ok:
            facets.append(size)
    assert sorted(facets) == [2] * 6 + [3] * 8  # 14 facets, none of length 4


def test_facet_census_reports():
    space = ArcSpace(5)
    assert facet_census("MTZ", sample_interior("D", space, 3), space).verdict == VERIFIED
    assert facet_census("DL", d_uniform(space), space).verdict == VERIFIED
    assert facet_census("SCF", b_node_vertex(space, 3), space).verdict == VERIFIED
    assert facet_census("MTZ", d_out_vertex(space, 2), space).verdict == VERIFIED


def test_facet_census_n4_pairs_only_for_dl():
    space = ArcSpace(4)
    rep = facet_census("DL", sample_interior("D", space, 1), space)
    assert rep.verdict == VERIFIED


def test_scf_census_unit_vertex_rows():
    # with b = b^k the facets are exactly the subsets containing k, bar N1
    space = ArcSpace(5)
    from atsppoly.analysis import _completion_point, _row_is_facet
    from atsppoly.formulations import build_p_scf
    from atsppoly.digraph import subsets_s1

    b = b_node_vertex(space, 3)
    sys_ = build_p_scf(space, b)
    flat = {xvar(i, j): rat(1, 4) for (i, j) in space.arcs}
    for subset in subsets_s1(space):
        hint = (
            _completion_point(space, Cycle(tuple(sorted(subset))))
            if len(subset) <= space.n - 2
            else None
        )
        got, _ = _row_is_facet(sys_, f"cut({subset})", flat, hint)
        assert got == (3 in subset.members and len(subset) <= space.n - 2)


def test_local_hull_pairs():
    assert verify_local_hull("MTZ", rat(1, 4), rat(1, 4)).verdict == VERIFIED
    assert verify_local_hull("MTZ", rat(1, 2), rat(1, 2)).verdict == VERIFIED  # boundary
    assert verify_local_hull("DL", rat(1, 8), rat(3, 8)).verdict == VERIFIED
    with pytest.raises(ValueError):
        verify_local_hull("MTZ", rat(3, 4), rat(1, 2))  # sum exceeds one
    with pytest.raises(ValueError):
        verify_local_hull("SCF", rat(1, 4), rat(1, 4))


def test_dominance_and_comparisons_n5():
    space = ArcSpace(5)
    assert verify_offset_dominance(space, [1, 2]).verdict == VERIFIED
    assert verify_dl_antisymmetric(space, [1, 2]).verdict == VERIFIED
    assert verify_scf_incomparability(space, [1, 2]).verdict == VERIFIED
    assert verify_antisymmetric_rigidity(space, 8).verdict == VERIFIED


def test_dl_strictly_inside_mtz():
    space = ArcSpace(5)
    keep = [xvar(i, j) for (i, j) in space.arcs]
    for seed in (1, 4):
        d = sample_interior("D", space, seed)
        cmp_ = compare_systems(build_p_dl(space, d), build_p_mtz(space, d), keep)
        assert cmp_.relation == "first-strictly-stronger"


def test_closures_and_chain_n4():
    space = ArcSpace(4)
    for family in ("MTZ", "DL", "SCF", "DL-VMTZ"):
        assert verify_closure(family, space, [1]).verdict == VERIFIED
    rep = verify_chain(space)
    assert rep.verdict == VERIFIED
    assert any("collapses" in line for line in rep.details)
    assert verify_extended_closures(space).verdict == VERIFIED


def test_chain_n5_exact_violations():
    rep = verify_chain(ArcSpace(5), 1)
    assert rep.verdict == VERIFIED
    text = "\n".join(rep.details)
    assert "7/3" in text  # blend witness: |C| - 2/|C| at |C| = 3
    assert "12/5" in text  # spread witness: |C| - |C|/(2|C|-1) at |C| = 3


def test_witness_constructors_validate():
    space = ArcSpace(5)
    with pytest.raises(ValueError):
        witness_reverse_blend(space, Cycle((2, 3)))  # too short
    with pytest.raises(ValueError):
        witness_half_pairs(space, Cycle((2, 3, 4, 5)))  # no room for a companion
    with pytest.raises(ValueError):
        witness_clique_spread(space, (2, 3, 4, 5))


def test_rmtz_projection_is_circuit_closure():
    # the precedence disaggregation projects onto the circuit inequalities
    space = ArcSpace(4)
    keep = [xvar(i, j) for (i, j) in space.arcs]
    proj = project_onto(build_rmtz(space), keep)
    from atsppoly.formulations import build_cl_mtz

    fwd, bwd = mutually_include(proj, build_cl_mtz(space, prune_redundant=True), keep)
    assert fwd.holds and bwd.holds


def test_l1rmtz_projection_is_outstar_closure():
    # the lifted disaggregation projects onto the out-star lifted closure
    space = ArcSpace(4)
    keep = [xvar(i, j) for (i, j) in space.arcs]
    proj = project_onto(build_rmtz(space, lifted=True), keep)
    from atsppoly.formulations import build_cl_dl_vmtz

    fwd, bwd = mutually_include(proj, build_cl_dl_vmtz(space, prune_redundant=True), keep)
    assert fwd.holds and bwd.holds


def test_mcf_equals_dfj_at_n4():
    space = ArcSpace(4)
    keep = [xvar(i, j) for (i, j) in space.arcs]
    from atsppoly.formulations import build_dfj, build_mcf

    proj = project_onto(build_mcf(space), keep)
    fwd, bwd = mutually_include(proj, build_dfj(space, prune_redundant=True), keep)
    assert fwd.holds and bwd.holds


def test_report_serialization():
    rep = verify_dbar_polytope(ArcSpace(4))
    payload = json.loads(rep.dumps())
    assert payload["proposition"] == "param-polytope-facets"
    assert payload["verdict"] == VERIFIED
    assert isinstance(payload["details"], list)


def test_chain_certificates_reverify_from_serialization():
    # the witnesses in the serialized report re-check by plain row evaluation,
    # with no search involved
    from atsppoly.analysis import deserialize_x
    from atsppoly.digraph import Cycle as Cyc
    from atsppoly.formulations import build_cl_dl, build_cl_dl_vmtz, build_cl_mtz, build_cl_scf

    space = ArcSpace(5)
    rep = verify_chain(space, 0)
    payload = json.loads(rep.dumps())
    certs = payload["certificates"]
    cyc = Cyc(tuple(certs["witness-cycle"]))

    blend = deserialize_x(space, certs["blend-witness"])
    pb = {xvar(i, j): q for (i, j), q in blend.items()}
    assert not build_cl_mtz(space).violations(pb)
    assert build_cl_dl_vmtz(space).violations(pb)

    half = deserialize_x(space, certs["half-pair-witness"])
    ph = {xvar(i, j): q for (i, j), q in half.items()}
    assert not build_cl_dl_vmtz(space).violations(ph)
    assert build_cl_dl(space).violations(ph)

    spread = deserialize_x(space, certs["spread-witness"])
    ps = {xvar(i, j): q for (i, j), q in spread.items()}
    assert not build_cl_dl(space).violations(ps)
    assert build_cl_scf(space).violations(ps)
    assert len(cyc) == 3


def test_dbar_system_shape():
    space = ArcSpace(4)
    sys_ = dbar_system(space)
    assert len(sys_.variables) == 6
    assert sum(1 for r in sys_.inequalities if r.tag.startswith("cyc(")) == 5


def test_closures_reject_every_subtour_cover():
    # the closure systems admit exactly the tours among integer points
    from atsppoly.digraph import enumerate_cycle_covers, indicator
    from atsppoly.formulations import FormulationId, build

    space = ArcSpace(5)
    systems = [
        build(FormulationId(f), space)
        for f in ("cl-mtz", "cl-dl", "cl-dl-vmtz", "cl-scf", "dfj-clique")
    ]
    for cover in enumerate_cycle_covers(space):
        point = {xvar(i, j): q for (i, j), q in indicator(space, cover).items()}
        for sys_ in systems:
            assert (not sys_.violations(point)) == (len(cover) == 1)
