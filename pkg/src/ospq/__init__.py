"""Exact premodular data of U_q(osp(1|2n)) at q = exp(2 pi i / N), N = 2(2k+1),
and Reshetikhin-Turaev invariants of 3-manifolds given as plumbing forests."""

from .exactnum import CycloNumber, LaurentPoly, NonExactDivision, gauss_sum
from .invariant import invariant_report, rt_invariant
from .kernels import BACKEND
from .moddata import ModularTables, build_tables
from .surgery import PlumbingGraph, blow_down, blow_up, lens_chain, parse_graph, seifert_star
from .weyl import Weight, build_root_data

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CycloNumber",
    "LaurentPoly",
    "ModularTables",
    "NonExactDivision",
    "PlumbingGraph",
    "Weight",
    "blow_down",
    "blow_up",
    "build_root_data",
    "build_tables",
    "gauss_sum",
    "invariant_report",
    "lens_chain",
    "parse_graph",
    "rt_invariant",
    "seifert_star",
]
