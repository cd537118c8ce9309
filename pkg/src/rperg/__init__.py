"""Learn edge replacement grammars from graphs and generate new graphs from them."""
from .graph import Graph, largest_connected_component, degree_sequence, parse_edge_list, read_edge_list
from .grammar import Grammar, Rule
from .learner import LearnConfig, learn, rule_histogram

__version__ = "0.1.0"

__all__ = [
    "Graph", "Grammar", "Rule", "LearnConfig", "learn", "rule_histogram",
    "largest_connected_component", "degree_sequence", "parse_edge_list", "read_edge_list",
]
