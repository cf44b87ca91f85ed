"""Edge-coloring fan machinery, an exact chromatic-index solver, and machine
checks of multi-fan lemmas over small-graph corpora."""

from .chromatic import ChromaticCertificate, Undecided, chromatic_index, classify, critical_edges, is_critical
from .coloring import PartialColoring, are_linked, kempe_chain, kempe_swap, validate
from .fans import MultiFan, extend_multifan, fan_order, grow_multifan, maximum_multifan
from .graph import Graph, edge, is_overfull, make_family
from .graph6 import Graph6Error, parse_graph6, write_graph6

__version__ = "0.1.0"

__all__ = [
    "ChromaticCertificate",
    "Graph",
    "Graph6Error",
    "MultiFan",
    "PartialColoring",
    "Undecided",
    "are_linked",
    "chromatic_index",
    "classify",
    "critical_edges",
    "edge",
    "extend_multifan",
    "fan_order",
    "grow_multifan",
    "is_critical",
    "is_overfull",
    "kempe_chain",
    "kempe_swap",
    "make_family",
    "maximum_multifan",
    "parse_graph6",
    "validate",
    "write_graph6",
]
