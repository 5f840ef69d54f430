"""Certified complete-minor constructions for graphs with small independence number."""

from .algorithms import RunResult, max_touching_family, run_alpha5, run_dm2, run_log
from .bounds import bound_r, check_f_properties, f_eval
from .chordal import contract_family, is_chordal, is_pseo, max_clique_chordal
from .errors import HadminorError
from .family import ColoredState, break_set, color_red, extend, replay
from .graph import Graph, alpha, components, max_independent_set, neighborhood
from .io import parse_dimacs, parse_graph6, serialize_dimacs, serialize_graph6
from .verify import MinorCertificate, hadwiger_bruteforce, verify_minor, verify_odd_minor

__version__ = "0.1.0"

__all__ = [
    "ColoredState", "Graph", "HadminorError", "MinorCertificate", "RunResult",
    "alpha", "bound_r", "break_set", "check_f_properties", "color_red", "components",
    "contract_family", "extend", "f_eval", "hadwiger_bruteforce", "is_chordal", "is_pseo",
    "max_clique_chordal", "max_independent_set", "max_touching_family", "neighborhood",
    "parse_dimacs", "parse_graph6", "replay", "run_alpha5", "run_dm2", "run_log",
    "serialize_dimacs", "serialize_graph6", "verify_minor", "verify_odd_minor",
]
