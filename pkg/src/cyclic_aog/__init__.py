"""Best-first search over cyclic AND/OR graphs, with an exhaustive oracle."""

from importlib import resources

from .aogfile import ParseError, dump, dumps, load, loads
from .baselines import Diagnostic, ao_star, rev_star
from .costs import INF, UNDEF, format_cost, parse_cost
from .graph import (AND, NONTERMINAL, OR, TERMINAL, AndOrGraph, GraphError, NodeKind,
                    build, require_valid, validate)
from .mes import (LimitExceeded, Mes, MesType, beta, classify_all_recursive, classify_mes,
                  classify_node, compose_qk, count_mes, enumerate_mes, h_prime, h_star,
                  is_acyclic, is_mes, iter_mes, sub_mes)
from .result import BudgetExhausted, SearchResult, Status
from .s1 import s1_costs, s1_solve
from .s2 import ExplicitGraph, GraphSource, s2_solve


def fixture_path(name):
    """Path of a bundled ``.aog`` fixture, e.g. ``fixture_path("g1")``."""
    if not name.endswith(".aog"):
        name += ".aog"
    return resources.files(__package__).joinpath("data", name)


def load_fixture(name):
    return loads(fixture_path(name).read_text())


__all__ = [k for k in dir() if not k.startswith("_") and k != "resources"]
