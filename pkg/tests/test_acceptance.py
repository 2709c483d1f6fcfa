"""Acceptance criteria.

One test per criterion; each prints a single pass/fail line (use -s or read
the captured output). Every check is exact rational arithmetic: there are no
tolerances to tune anywhere in this module.
"""
from atsppoly.analysis import (
    VERIFIED,
    facet_census,
    verify_antisymmetric_rigidity,
    verify_chain,
    verify_closure,
    verify_dl_antisymmetric,
    verify_local_hull,
    verify_offset_dominance,
    verify_projection,
    verify_scf_incomparability,
)
from atsppoly.digraph import ArcSpace, enumerate_cycle_covers, indicator
from atsppoly.formulations import FormulationId
from atsppoly.instances import gen_instance
from atsppoly.lifting import membership
from atsppoly.optimize import lp_bound_table, solve_atsp
from atsppoly.parameters import (
    BVec,
    b_node_vertex,
    canonical_vertices,
    d_facet_relative_interior,
    d_out_vertex,
    sample_interior,
)
from atsppoly.rational import ZERO, rat

CLOSURE_FIDS = [FormulationId(f) for f in ("cl-scf", "cl-dl", "cl-dl-vmtz", "cl-mtz")]


def _announce(criterion: str, ok: bool):
    print(f"[{'PASS' if ok else 'FAIL'}] acceptance {criterion}")
    assert ok, criterion


def _b_boundary(space, seed):
    base = sample_interior("B", space, seed)
    entries = dict(base.entries)
    drop = space.n1_nodes[seed % len(space.n1_nodes)]
    removed = entries[drop]
    entries[drop] = ZERO
    total = sum(entries.values(), ZERO)
    return BVec(space.n, {v: q / total for v, q in entries.items()})


def test_criterion_1_validity_sweep():
    """Integer points of the assignment polytope: members are exactly the tours."""
    ok = True
    from math import factorial

    for n in (4, 5, 6):
        space = ArcSpace(n)
        covers = enumerate_cycle_covers(space)
        assert sum(1 for c in covers if len(c) == 1) == factorial(n - 1)
        for seed in range(5):
            fids = [
                FormulationId("q-mtz", d=sample_interior("D", space, seed)),
                FormulationId("q-dl", d=sample_interior("D", space, seed)),
                FormulationId("q-scf", b=sample_interior("B", space, seed)),
            ]
            for fid in fids:
                for cover in covers:
                    x = indicator(space, cover)
                    accepted = membership(fid, x, space).member
                    if accepted != (len(cover) == 1):
                        ok = False
    _announce("1: validity sweep (n=4..6, 5 params per family)", ok)


def test_criterion_2_projection_theorems():
    """proj(Q) = P by mutual inclusion for every family, exact."""
    ok = True
    for n in (4, 5):
        space = ArcSpace(n)
        for seed in range(3):
            for family, kind in (("MTZ", "D"), ("DL", "D"), ("SCF", "B")):
                rep = verify_projection(family, sample_interior(kind, space, seed), space)
                ok = ok and rep.verdict == VERIFIED
    _announce("2: projection identities (n=4,5, 3 params per family)", ok)


def test_criterion_3_facet_censuses():
    """Facet censuses match the iff-predicates with zero mismatches."""
    ok = True
    for n in (4, 5, 6):
        space = ArcSpace(n)
        interior_d = sample_interior("D", space, 1)
        boundary_d = d_facet_relative_interior(space, _short_cycle(space), 2)
        params = {
            "MTZ": [interior_d, boundary_d, d_out_vertex(space, 2)],
            "DL": [interior_d, boundary_d, canonical_vertices("DL", space)[0]],
            "SCF": [sample_interior("B", space, 1), _b_boundary(space, 2), b_node_vertex(space, 2)],
        }
        for family, plist in params.items():
            for param in plist:
                rep = facet_census(family, param, space)
                if rep.verdict != VERIFIED:
                    ok = False
    _announce("3: facet censuses (n=4..6; interior, boundary, vertex)", ok)


def _short_cycle(space):
    from atsppoly.digraph import Cycle

    return Cycle(tuple(space.n1_nodes[: min(3, space.n - 2)]))


def test_criterion_4_local_hulls():
    """The disjunctive lifts project exactly onto the stated local hulls."""
    import random

    rng = random.Random(4)
    pairs = [(rat(1, 2), rat(1, 2)), (rat(1, 4), rat(3, 4))]  # boundary sum = 1
    while len(pairs) < 10:
        a, b = rat(rng.randint(1, 9), 20), rat(rng.randint(1, 9), 20)
        if a + b <= 1:
            pairs.append((a, b))
    ok = True
    for family in ("MTZ", "DL"):
        for dij, dji in pairs:
            rep = verify_local_hull(family, dij, dji)
            ok = ok and rep.verdict == VERIFIED
    _announce("4: local hulls (10 offset pairs incl. the boundary)", ok)


def test_criterion_5_closure_identities():
    """Closures over the canonical vertex families equal the stated systems."""
    ok = True
    for n in (4, 5):
        space = ArcSpace(n)
        for family in ("MTZ", "DL", "SCF", "DL-VMTZ"):
            rep = verify_closure(family, space, [0, 1])
            ok = ok and rep.verdict == VERIFIED
    _announce("5: closure identities (n=4,5, all four closures)", ok)


def test_criterion_6_comparison_chain():
    """Collapse at n=4; strict chain with exact witness violations at n=5,6."""
    ok = True
    rep4 = verify_chain(ArcSpace(4))
    ok = ok and rep4.verdict == VERIFIED and any("collapses" in l for l in rep4.details)
    for n in (5, 6):
        rep = verify_chain(ArcSpace(n))
        ok = ok and rep.verdict == VERIFIED
        if n == 5:
            text = "\n".join(rep.details)
            ok = ok and "7/3" in text and "12/5" in text
    _announce("6: comparison chain (collapse at 4, strict witnesses at 5, 6)", ok)


def test_criterion_7_comparability():
    """Dominance, rigidity, and incomparability results, exact verdicts."""
    space5 = ArcSpace(5)
    ok = verify_offset_dominance(space5, [0, 1, 2, 3, 4]).verdict == VERIFIED
    ok = ok and verify_scf_incomparability(space5, list(range(10))).verdict == VERIFIED
    ok = ok and verify_dl_antisymmetric(space5, [0, 1, 2, 3, 4]).verdict == VERIFIED
    ok = ok and verify_antisymmetric_rigidity(space5, 20).verdict == VERIFIED
    ok = ok and verify_antisymmetric_rigidity(ArcSpace(6), 20).verdict == VERIFIED
    _announce("7: comparability propositions (dominance, rigidity, incomparability)", ok)


def test_criterion_8_solver_cross_check():
    """Branch-and-bound matches enumeration; bounds are monotone; stronger
    closures never explore more nodes in total."""
    ok = True
    totals = {"cl-scf": 0, "cl-mtz": 0}
    for n, seeds in ((6, range(10)), (7, range(10))):
        for seed in seeds:
            inst = gen_instance(n, seed, "uniform")
            ref = solve_atsp(inst, strategy="enumerate")
            table = lp_bound_table(inst, CLOSURE_FIDS)
            mono = (
                table.value("cl-scf")
                >= table.value("cl-dl")
                >= table.value("cl-dl-vmtz")
                >= table.value("cl-mtz")
            )
            ok = ok and mono and table.value("cl-scf") <= ref.value
            for fid in CLOSURE_FIDS:
                got = solve_atsp(inst, fid, strategy="bb")
                if got.value != ref.value:
                    ok = False
                if n == 6 and fid.family in totals:
                    totals[fid.family] += got.nodes_explored
    ok = ok and totals["cl-scf"] <= totals["cl-mtz"]
    _announce("8: solver cross-check (20 instances at n=6,7; monotone bounds)", ok)
