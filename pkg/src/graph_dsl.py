"""
Text forms of graphs.

Product expressions: `C<n>`, `P<n>`, `K<n>`, `Q<k>` joined by the infix operator `x`,
with parentheses, e.g. "C3xC4xC5" or "(K2xK3)xC5".

Edge lists: a header `edges:`, an optional `n=<count>`, then whitespace-separated
`u-v` tokens.
"""

import re

from src.errors import GraphSyntaxError, ParameterError
from src.graphs import Graph, cartesian_product, generate
from src.stacks.infix_to_postfix_conversion import infix_to_postfix
from src.stacks.stack import Stack

FAMILIES = {"C": "cycle", "P": "path", "K": "complete", "Q": "hypercube"}

_OPERAND = re.compile(r"([CPKQ])(\d+)")
_EDGE = re.compile(r"(\d+)-(\d+)")
_COUNT = re.compile(r"n=(\d+)")
EDGES_HEADER = "edges:"


def tokenize(text: str) -> list[tuple[str, int]]:
    """Split a product expression into (token, position) pairs."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()x":
            tokens.append((ch, i))
            i += 1
            continue
        match = _OPERAND.match(text, i)
        if match is None:
            raise GraphSyntaxError(f"Unexpected character {ch!r}", i)
        tokens.append((match.group(0), i))
        i = match.end()
    if not tokens:
        raise GraphSyntaxError("Empty graph expression", 0)
    _check_alternation(tokens, len(text))
    return tokens


def _check_alternation(tokens: list[tuple[str, int]], end: int) -> None:
    expect_operand = True
    for token, position in tokens:
        if token == "(":
            if not expect_operand:
                raise GraphSyntaxError("Expected 'x' before '('", position)
        elif token == ")":
            if expect_operand:
                raise GraphSyntaxError("Expected a graph before ')'", position)
        elif token == "x":
            if expect_operand:
                raise GraphSyntaxError("Expected a graph before 'x'", position)
            expect_operand = True
        else:
            if not expect_operand:
                raise GraphSyntaxError("Expected 'x' between graphs", position)
            expect_operand = False
    if expect_operand:
        raise GraphSyntaxError("Expression ends without a graph", end)


def _operand(token: str, position: int) -> Graph:
    match = _OPERAND.fullmatch(token)
    if match is None:
        raise GraphSyntaxError(f"Unknown graph {token!r}", position)
    return generate(FAMILIES[match.group(1)], int(match.group(2)))


def parse_graph(text: str) -> Graph:
    """
    Parse a product expression or an edge list.

    Args:
        text (str): e.g. "C8", "K4xK5" or "edges: 0-1 1-2".

    Returns:
        Graph: a ProductGraph when the expression contains `x`.
    """
    stripped = text.strip()
    if stripped.startswith(EDGES_HEADER):
        offset = len(text) - len(text.lstrip()) + len(EDGES_HEADER)
        return _parse_edge_list(text, offset)

    stack: Stack[Graph] = Stack()
    for token, position in infix_to_postfix(tokenize(text)):
        if token == "x":
            if stack.size() < 2:
                raise GraphSyntaxError("Operator 'x' needs two graphs", position)
            right = stack.pop()
            left = stack.pop()
            stack.push(cartesian_product([left, right]))
        else:
            stack.push(_operand(token, position))
    if stack.size() != 1:
        raise GraphSyntaxError("Dangling graph in expression", len(text))
    return stack.pop()


def _parse_edge_list(text: str, start: int) -> Graph:
    count = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for match in re.finditer(r"\S+", text[start:]):
        token = match.group(0)
        position = start + match.start()
        if count is None and not edges:
            count_match = _COUNT.fullmatch(token)
            if count_match:
                count = int(count_match.group(1))
                continue
        edge_match = _EDGE.fullmatch(token)
        if edge_match is None:
            raise GraphSyntaxError(f"Expected an edge 'u-v', got {token!r}", position)
        u, v = int(edge_match.group(1)), int(edge_match.group(2))
        if u == v:
            raise GraphSyntaxError(f"Loop at vertex {u}", position)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphSyntaxError(f"Repeated edge {u}-{v}", position)
        seen.add(key)
        edges.append(key)
    largest = max((v for edge in edges for v in edge), default=-1)
    n = count if count is not None else largest + 1
    if n < 1:
        raise GraphSyntaxError("Edge list has no vertices", len(text))
    if largest >= n:
        raise ParameterError(f"Vertex {largest} is outside n={n}")
    return Graph.from_edges(n, edges)


def render_graph(g: Graph) -> str:
    """Edge-list form. `n=` is written only when the edges alone would lose vertices."""
    edges = sorted(g.edges)
    largest = max((v for edge in edges for v in edge), default=-1)
    parts = [EDGES_HEADER]
    if largest + 1 != g.n:
        parts.append(f"n={g.n}")
    parts.extend(f"{u}-{v}" for u, v in edges)
    return " ".join(parts)
