"""Command-line surface.

Subcommands: build, bound, member, separate, facets, compare, closures,
hull, solve, gen, verify-paper. Exit codes: 0 success / all verified,
1 usage or input errors, 2 a proposition check was refuted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis
from .digraph import ArcSpace
from .errors import CapacityError, InstanceParseError, SamplingError
from .formulations import (
    ALL_FAMILIES,
    PARAMETRIC_B,
    PARAMETRIC_D,
    FormulationId,
    build,
    default_fid,
)
from .instances import gen_instance, read_instance, read_x_vector, write_instance
from .lifting import membership
from .optimize import lp_bound_table, solve_atsp
from .parameters import param_from_json, sample_interior
from .rational import rat, rat_str
from .separation import separate_circuit, separate_cut, separate_dbar, separate_dl_lifted

DEFAULT_CAP = 8  # cycle/subset enumeration cap for builds
TOUR_CAP = 9  # permutation sweep cap


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="atsppoly", description=__doc__)
    sub = top.add_subparsers(dest="command")

    def common(p, instance=False, formulations=False):
        p.add_argument("--n", type=int, default=5, help="node count (default 5)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap override")
        p.add_argument("--param-file", type=Path, help="JSON parameter vector (d or b)")
        p.add_argument("--json-out", type=Path, help="write a JSON artifact here")
        if instance:
            p.add_argument("--instance", type=Path, required=True)
        if formulations:
            p.add_argument(
                "--formulations",
                required=True,
                help="comma-separated family ids, e.g. cl-mtz,cl-dl,p-scf",
            )

    common(sub.add_parser("build", help="emit a formulation's JSON H-description"), formulations=True)
    common(sub.add_parser("bound", help="LP bound table over formulations"), instance=True, formulations=True)
    p = sub.add_parser("member", help="membership + certificate for an x vector")
    common(p, formulations=True)
    p.add_argument("--x-file", type=Path, required=True)
    p = sub.add_parser("separate", help="run a separation oracle on an x vector")
    common(p)
    p.add_argument("--x-file", type=Path, required=True)
    p.add_argument(
        "--oracle",
        default="circuit",
        choices=["circuit", "cut", "dl-lifted", "dl-outstar", "dbar"],
    )
    common(sub.add_parser("facets", help="facet census against the predicates"), formulations=True)
    common(sub.add_parser("compare", help="pairwise comparability of two formulations"), formulations=True)
    common(sub.add_parser("closures", help="closure identities and the comparison chain"))
    common(sub.add_parser("hull", help="local convex-hull verification"))
    p = sub.add_parser("solve", help="exact ATSP optimum")
    common(p, instance=True, formulations=True)
    p.add_argument("--strategy", default="bb", choices=["bb", "enumerate"])
    p = sub.add_parser("gen", help="write a seeded instance file")
    common(p)
    p.add_argument("--mode", default="uniform", choices=["uniform", "euclidean-asym"])
    p.add_argument("--out", type=Path, required=True)
    common(sub.add_parser("verify-paper", help="full proposition sweep"))
    return top


def _load_param(args, space: ArcSpace):
    if args.param_file is None:
        return None
    return param_from_json(args.param_file.read_text(), space.n)


def _fid(family: str, space: ArcSpace, param) -> FormulationId:
    family = family.strip()
    if family not in ALL_FAMILIES:
        raise ValueError(f"unknown formulation family {family!r}; known: {sorted(ALL_FAMILIES)}")
    if family in PARAMETRIC_D:
        if param is not None:
            return FormulationId(family, d=param)
        return default_fid(family, space)
    if family in PARAMETRIC_B:
        if param is not None:
            return FormulationId(family, b=param)
        return default_fid(family, space)
    return FormulationId(family)


def _emit(args, payload) -> None:
    if args.json_out:
        args.json_out.write_text(json.dumps(payload, indent=2) + "\n")


_ROW_EXPONENTIAL = {
    "p-mtz", "p-dl", "p-scf", "dfj-clique", "dfj-cut", "circuit", "weak-circuit",
    "weak-clique", "lifted-weak-circuit", "cl-mtz", "cl-dl", "cl-scf", "cl-dl-vmtz",
}


def _check_cap(args, family: str) -> None:
    if family in _ROW_EXPONENTIAL and args.n > args.cap:
        raise CapacityError(
            f"building {family} at n={args.n} exceeds the enumeration cap {args.cap}; "
            "raise it with --cap if you accept the blowup"
        )


def _cmd_build(args) -> int:
    space = ArcSpace(args.n)
    param = _load_param(args, space)
    out = {}
    for family in args.formulations.split(","):
        _check_cap(args, family.strip())
        fid = _fid(family, space, param)
        sys_ = build(fid, space)
        out[fid.label()] = sys_.to_json_dict()
        print(
            f"{fid.label()}: {len(sys_.variables)} variables, "
            f"{len(sys_.equalities)} equalities, {len(sys_.inequalities)} inequalities"
        )
    _emit(args, out)
    return 0


def _cmd_bound(args) -> int:
    inst = read_instance(args.instance)
    space = ArcSpace(inst.n)
    param = _load_param(args, space)
    fids = [_fid(f, space, param) for f in args.formulations.split(",")]
    table = lp_bound_table(inst, fids, space)
    print(f"instance {inst.name} (n={inst.n})")
    for label, value in table.rows:
        print(f"  {label:<14} {rat_str(value)}")
    _emit(args, {"instance": inst.name, "bounds": {l: rat_str(v) for l, v in table.rows}})
    return 0


def _cmd_member(args) -> int:
    space = ArcSpace(args.n)
    param = _load_param(args, space)
    x = read_x_vector(args.x_file, args.n)
    payload = {}
    for family in args.formulations.split(","):
        fid = _fid(family, space, param)
        res = membership(fid, x, space)
        verdict = "member" if res.member else "not a member"
        print(f"{fid.label()}: {verdict} ({res.kind})")
        payload[fid.label()] = json.loads(res.to_json()) | {"member": res.member}
    _emit(args, payload)
    return 0


def _cmd_separate(args) -> int:
    space = ArcSpace(args.n)
    param = _load_param(args, space)
    if args.oracle == "dbar":
        if param is None:
            raise ValueError("the dbar oracle needs --param-file with a d vector")
        cyc = separate_dbar(space, param)
        if cyc is None:
            print("no violated cycle-sum inequality")
            _emit(args, {"violated": None})
        else:
            print(f"violated cycle-sum inequality: {cyc} (sum {rat_str(param.cycle_sum(cyc))})")
            _emit(args, {"violated": list(cyc.nodes)})
        return 0
    x = read_x_vector(args.x_file, args.n)
    if args.oracle == "circuit":
        hit = separate_circuit(space, x, param)
    elif args.oracle == "cut":
        hit = separate_cut(space, x, param)
    elif args.oracle == "dl-lifted":
        hit = separate_dl_lifted(space, x, "param" if param is not None else "vdl", param)
    else:
        hit = separate_dl_lifted(space, x, "vmtz")
    if hit is None:
        print("no violated row")
        _emit(args, {"violated": None})
    else:
        print(
            f"violated {hit.family} row: lhs {rat_str(hit.lhs)} vs rhs {rat_str(hit.rhs)} "
            f"(violation {rat_str(hit.violation)})"
        )
        _emit(args, hit.to_json_dict())
    return 0


_CENSUS_FAMILY = {"p-mtz": "MTZ", "p-dl": "DL", "p-scf": "SCF"}


def _cmd_facets(args) -> int:
    space = ArcSpace(args.n)
    param = _load_param(args, space)
    code = 0
    reports = []
    for family in args.formulations.split(","):
        fam = _CENSUS_FAMILY.get(family.strip())
        if fam is None:
            raise ValueError(f"facet census applies to p-mtz, p-dl, p-scf; got {family!r}")
        if param is None:
            kind = "B" if fam == "SCF" else "D"
            census_param = sample_interior(kind, space, args.seed)
        else:
            census_param = param
        rep = analysis.facet_census(fam, census_param, space)
        reports.append(rep)
        code = _print_report(rep, code)
    _emit(args, [r.to_json_dict(stable=True) for r in reports])
    return code


def _cmd_compare(args) -> int:
    space = ArcSpace(args.n)
    param = _load_param(args, space)
    families = [f.strip() for f in args.formulations.split(",")]
    if len(families) != 2:
        raise ValueError("compare needs exactly two formulations")
    from .formulations import X_SPACE_FAMILIES

    for fam in families:
        if fam not in X_SPACE_FAMILIES:
            raise ValueError(f"compare works on x-space systems; got {fam!r}")
    fid_a = _fid(families[0], space, param)
    fid_b = _fid(families[1], space, param)
    sys_a = build(fid_a, space)
    sys_b = build(fid_b, space)
    keep = [f"x[{i},{j}]" for (i, j) in space.arcs]
    cmp_ = analysis.compare_systems(sys_a, sys_b, keep)
    print(f"{fid_a.label()} vs {fid_b.label()}: {cmp_.relation}")
    _emit(args, {"a": fid_a.label(), "b": fid_b.label(), "relation": cmp_.relation})
    return 0


def _cmd_closures(args) -> int:
    space = ArcSpace(args.n)
    code = 0
    reports = []
    for family in ("MTZ", "DL", "SCF", "DL-VMTZ"):
        rep = analysis.verify_closure(family, space, [args.seed, args.seed + 1])
        reports.append(rep)
        code = _print_report(rep, code)
    chain = analysis.verify_chain(space, args.seed)
    reports.append(chain)
    code = _print_report(chain, code)
    if space.n == 4:
        print("note: chain collapses to equality at n=4")
    _emit(args, [r.to_json_dict(stable=True) for r in reports])
    return code


def _cmd_hull(args) -> int:
    import random

    rng = random.Random(args.seed)
    pairs = [(rat(1, 2), rat(1, 2)), (rat(1, 4), rat(3, 4))]  # includes the boundary
    while len(pairs) < 10:
        a = rat(rng.randint(1, 9), 20)
        b = rat(rng.randint(1, 9), 20)
        if a + b <= 1:
            pairs.append((a, b))
    code = 0
    reports = []
    for family in ("MTZ", "DL"):
        for dij, dji in pairs:
            rep = analysis.verify_local_hull(family, dij, dji)
            reports.append(rep)
            if rep.verdict != analysis.VERIFIED:
                code = _print_report(rep, code)
    summary = "all verified" if code == 0 else "refutations found"
    print(f"local hulls over {len(pairs)} offset pairs per family: {summary}")
    _emit(args, [r.to_json_dict(stable=True) for r in reports])
    return code


def _cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    space = ArcSpace(inst.n)
    param = _load_param(args, space)
    fid = _fid(args.formulations.split(",")[0], space, param)
    if args.strategy == "enumerate":
        sol = solve_atsp(inst, strategy="enumerate", cap=max(args.cap, TOUR_CAP))
    else:
        sol = solve_atsp(inst, fid, strategy="bb")
    print(f"optimal tour {sol.tour} with cost {rat_str(sol.value)} ({sol.strategy}, {sol.nodes_explored} nodes)")
    _emit(
        args,
        {"tour": list(sol.tour.nodes), "value": rat_str(sol.value), "nodes": sol.nodes_explored},
    )
    return 0


def _cmd_gen(args) -> int:
    inst = gen_instance(args.n, args.seed, args.mode)
    write_instance(inst, args.out)
    print(f"wrote {inst.name} to {args.out}")
    return 0


def _cmd_verify_paper(args) -> int:
    reports = analysis.verify_paper(args.n, args.seed)
    code = 0
    for rep in reports:
        code = _print_report(rep, code)
    refuted = sum(1 for r in reports if r.verdict == analysis.REFUTED)
    skipped = sum(1 for r in reports if r.verdict == analysis.SKIPPED)
    summary = "all verified" if refuted == 0 else f"{refuted} refuted"
    if skipped:
        summary += f" ({skipped} skipped as inapplicable at this size)"
    print(f"\n{len(reports)} proposition checks at n={args.n}: {summary}")
    _emit(args, [r.to_json_dict(stable=True) for r in reports])
    return code


def _print_report(rep, code: int) -> int:
    print(f"[{rep.verdict:>8}] {rep.prop_id:<22} n={rep.n:<3} {rep.runtime_s:6.1f}s")
    if rep.verdict == analysis.REFUTED:
        for line in rep.details:
            if line.startswith("FAIL"):
                print(f"    {line}")
        return 2
    return code


_HANDLERS = {
    "build": _cmd_build,
    "bound": _cmd_bound,
    "member": _cmd_member,
    "separate": _cmd_separate,
    "facets": _cmd_facets,
    "compare": _cmd_compare,
    "closures": _cmd_closures,
    "hull": _cmd_hull,
    "solve": _cmd_solve,
    "gen": _cmd_gen,
    "verify-paper": _cmd_verify_paper,
}


def run_command(argv) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.command is None:
        parser.print_usage()
        return 1
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except (ValueError, KeyError, OSError, InstanceParseError, CapacityError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
