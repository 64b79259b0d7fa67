"""Decision-diagram branch and bound for MISP, MCP, MAX2SAT and TSPTW."""

from ._ddbb import (
    ParseError,
    end_gap,
    generate,
    parse_graph,
    parse_tsptw,
    parse_wcnf,
    relaxed_dot,
    solve,
)

__all__ = [
    "ParseError",
    "end_gap",
    "generate",
    "parse_graph",
    "parse_tsptw",
    "parse_wcnf",
    "relaxed_dot",
    "solve",
]
