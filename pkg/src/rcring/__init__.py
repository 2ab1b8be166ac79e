"""Recursive cubes of rings Q_n(d, r): construction, shortest-path routing and network invariants."""

from .errors import BudgetExceeded, InvalidPath, NotAnEdge, ParamsError, RcrError, VerificationError
from .group import BitVec, GeneralParams, Params, Vertex, identity, inverse, multiply
from .metrics import build_report, diameter_formula, exact_total_distance
from .routing import distance, distance_from_origin, optimal_sequence, realize_path, shortest_path
from .topology import build_general, build_graph, export, special

__version__ = "0.1.0"

__all__ = [
    "BitVec",
    "BudgetExceeded",
    "GeneralParams",
    "InvalidPath",
    "NotAnEdge",
    "Params",
    "ParamsError",
    "RcrError",
    "VerificationError",
    "Vertex",
    "build_general",
    "build_graph",
    "build_report",
    "diameter_formula",
    "distance",
    "distance_from_origin",
    "exact_total_distance",
    "export",
    "identity",
    "inverse",
    "multiply",
    "optimal_sequence",
    "realize_path",
    "shortest_path",
    "special",
]
