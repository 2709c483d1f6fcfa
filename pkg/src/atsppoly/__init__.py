"""Exact polyhedral toolkit for parametric ATSP formulations."""

from .digraph import ArcSpace, Cycle, NodeSubset, all_subtour_cycles, enumerate_cycles
from .formulations import FormulationId, build, default_fid
from .instances import Instance, gen_instance, read_instance, write_instance
from .lifting import membership
from .linsys import LinSys
from .optimize import lp_bound_table, lp_over_formulation, solve_atsp
from .parameters import BVec, DVec, b_membership, canonical_vertices, d_membership, sample_interior
from .rational import Rat, rat, rat_str
from .simplex import LpResult, solve_lp

__version__ = "0.1.0"

__all__ = [
    "ArcSpace",
    "BVec",
    "Cycle",
    "DVec",
    "FormulationId",
    "Instance",
    "LinSys",
    "LpResult",
    "NodeSubset",
    "Rat",
    "all_subtour_cycles",
    "b_membership",
    "build",
    "canonical_vertices",
    "d_membership",
    "default_fid",
    "enumerate_cycles",
    "gen_instance",
    "lp_bound_table",
    "lp_over_formulation",
    "membership",
    "rat",
    "rat_str",
    "read_instance",
    "sample_interior",
    "solve_atsp",
    "solve_lp",
    "write_instance",
]
