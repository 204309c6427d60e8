"""Undirected labeled graphs, the graph6 codec, and elementary surgery.

Conventions used throughout the package:

  - vertices are the integers 0 .. n-1,
  - edges are unordered pairs stored as tuples (u, v) with u < v,
  - a Graph is an immutable value; surgery returns new graphs,
  - adjacency is kept as one bitmask per vertex, so connectivity and
    boundary counting are integer operations.

The graph6 format implemented here is the short form (n <= 62): the first
byte encodes n + 63 and the remaining bytes pack the upper triangle of the
adjacency matrix, column by column, six bits per printable character.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache


GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 text.

    ``offset`` is the position of the offending byte within its line and
    ``line`` the 1-based line number when reading multi-line input.
    """

    def __init__(self, message, offset=None, line=None):
        if offset is not None:
            message = "%s (byte offset %d)" % (message, offset)
        super().__init__(message)
        self.offset = offset
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError("loop at vertex %r" % (u,))
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError("edge %r out of range for n=%d" % (e, n))
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    @cached_property
    def adjacency_masks(self):
        """Tuple of neighbor bitmasks, one per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def degrees(self):
        return tuple(m.bit_count() for m in self.adjacency_masks)

    @property
    def edge_count(self):
        return len(self.edges)

    def has_edge(self, u, v):
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def neighbors(self, v):
        """Sorted tuple of neighbors of ``v``."""
        return tuple(_iter_bits(self.adjacency_masks[v]))

    @cached_property
    def sorted_edges(self):
        return tuple(sorted(self.edges))


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees in descending order plus the top-two witness vertices.

    Ties are broken by smallest label: ``d1_vertex`` is the smallest-label
    vertex of maximum degree and ``d2_vertex`` the smallest-label vertex of
    maximum degree among the rest.
    """

    values: tuple
    d1_vertex: int
    d2_vertex: int

    @property
    def d1(self):
        return self.values[0]

    @property
    def d2(self):
        return self.values[1]


@dataclass(frozen=True)
class BoundaryCounts:
    """Edge counts relative to a vertex subset U: cut, inside U, outside U."""

    cut: int
    inside: int
    outside: int


def _iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def upper_triangle_pairs(n):
    """Vertex pairs (i, j), i < j, in graph6 bit order (column by column)."""
    return tuple((i, j) for j in range(1, n) for i in range(j))


# ----------------------------------------------------------------------
# graph6 codec
# ----------------------------------------------------------------------

def parse_graph6(text):
    """Decode one short-form graph6 string (optionally ``>>graph6<<``-prefixed)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    base = 0
    if text.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        text = text[base:]
    text = text.rstrip("\r\n")
    if not text:
        raise Graph6Error("empty graph6 string", base)
    head = ord(text[0])
    if head == 126:
        raise Graph6Error("extended graph6 size (n > 62) not supported", base)
    if not 63 <= head <= 125:
        raise Graph6Error("invalid size byte %r" % text[0], base)
    n = head - 63
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = text[1:]
    if len(payload) < need:
        raise Graph6Error(
            "payload too short: need %d characters, got %d" % (need, len(payload)),
            base + len(text),
        )
    if len(payload) > need:
        raise Graph6Error("trailing characters after payload", base + 1 + need)
    bits = []
    for k, ch in enumerate(payload):
        b = ord(ch) - 63
        if not 0 <= b <= 63:
            raise Graph6Error("invalid payload byte %r" % ch, base + 1 + k)
        bits.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    for k in range(nbits, len(bits)):
        if bits[k]:
            raise Graph6Error("nonzero padding bit", base + 1 + k // 6)
    edges = [pair for pair, bit in zip(upper_triangle_pairs(n), bits) if bit]
    return Graph(n, edges)


@lru_cache(maxsize=65536)
def to_graph6(g):
    """Encode a graph (n <= 62) as a short-form graph6 string."""
    if g.n > 62:
        raise Graph6Error("short-form graph6 supports n <= 62 only")
    chars = [chr(g.n + 63)]
    acc = 0
    filled = 0
    for (i, j) in upper_triangle_pairs(g.n):
        acc = (acc << 1) | ((g.adjacency_masks[i] >> j) & 1)
        filled += 1
        if filled == 6:
            chars.append(chr(acc + 63))
            acc, filled = 0, 0
    if filled:
        chars.append(chr((acc << (6 - filled)) + 63))
    return "".join(chars)


def read_graph6_lines(lines):
    """Yield graphs from an iterable of graph6 lines.

    Blank lines are skipped; a ``>>graph6<<`` prefix on any line is handled.
    Parse failures are re-raised with the 1-based line number attached.
    """
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if stripped.startswith(GRAPH6_HEADER):
            stripped = stripped[len(GRAPH6_HEADER):]
        if not stripped:
            continue
        try:
            yield parse_graph6(stripped)
        except Graph6Error as exc:
            err = Graph6Error("line %d: %s" % (lineno, exc))
            err.offset = exc.offset
            err.line = lineno
            raise err from exc


# ----------------------------------------------------------------------
# basic queries
# ----------------------------------------------------------------------

def degree_sequence(g):
    """Descending degree sequence with deterministic top-two witnesses."""
    if g.n == 0:
        raise ValueError("degree sequence of the empty graph is undefined")
    degs = g.degrees
    values = tuple(sorted(degs, reverse=True))
    d1_vertex = max(range(g.n), key=lambda v: (degs[v], -v))
    if g.n == 1:
        return DegreeSequence(values, d1_vertex, d1_vertex)
    d2_vertex = max(
        (v for v in range(g.n) if v != d1_vertex), key=lambda v: (degs[v], -v)
    )
    return DegreeSequence(values, d1_vertex, d2_vertex)


def is_connected(g):
    if g.n <= 1:
        return True
    masks = g.adjacency_masks
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        m = frontier
        while m:
            low = m & -m
            reach |= masks[low.bit_length() - 1]
            m ^= low
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def connected_components(g):
    """Components in order of smallest member, each a sorted vertex tuple."""
    masks = g.adjacency_masks
    unseen = (1 << g.n) - 1
    comps = []
    while unseen:
        start = unseen & -unseen
        seen = start
        frontier = start
        while frontier:
            reach = 0
            m = frontier
            while m:
                low = m & -m
                reach |= masks[low.bit_length() - 1]
                m ^= low
            frontier = reach & ~seen
            seen |= frontier
        comps.append(tuple(_iter_bits(seen)))
        unseen &= ~seen
    return tuple(comps)


def is_bipartite(g):
    """Two-colorability of the whole graph (every component)."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in _iter_bits(g.adjacency_masks[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def has_bipartite_component(g):
    for comp in connected_components(g):
        h, _ = induced_subgraph(g, comp)
        if is_bipartite(h):
            return True
    return g.n == 0


# ----------------------------------------------------------------------
# surgery
# ----------------------------------------------------------------------

def remove_vertex(g, v):
    """Delete vertex ``v``; higher labels shift down by one."""
    if not 0 <= v < g.n:
        raise IndexError("vertex %r out of range" % (v,))

    def relabel(w):
        return w - 1 if w > v else w

    edges = [
        (relabel(a), relabel(b)) for (a, b) in g.edges if a != v and b != v
    ]
    return Graph(g.n - 1, edges)


def remove_edge(g, e):
    """Delete one edge; the vertex set is unchanged."""
    u, v = e
    if u > v:
        u, v = v, u
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise IndexError("edge %r out of range" % (e,))
    if (u, v) not in g.edges:
        raise ValueError("edge %r not in graph" % (e,))
    return Graph(g.n, g.edges - {(u, v)})


def induced_subgraph(g, U):
    """Subgraph induced on U, relabeled by U's sorted order.

    Returns (subgraph, vertex_map) where vertex_map[new_label] is the
    original label.
    """
    vertex_map = tuple(sorted(set(U)))
    for v in vertex_map:
        if not 0 <= v < g.n:
            raise IndexError("vertex %r out of range" % (v,))
    index = {v: i for i, v in enumerate(vertex_map)}
    keep = set(vertex_map)
    edges = [
        (index[a], index[b]) for (a, b) in g.edges if a in keep and b in keep
    ]
    return Graph(len(vertex_map), edges), vertex_map


def boundary_counts(g, U):
    """Count edges crossing U, inside U, and outside U; the three sum to |E|."""
    mask = 0
    for v in set(U):
        if not 0 <= v < g.n:
            raise IndexError("vertex %r out of range" % (v,))
        mask |= 1 << v
    cut = inside = outside = 0
    for (a, b) in g.edges:
        ina = (mask >> a) & 1
        inb = (mask >> b) & 1
        if ina and inb:
            inside += 1
        elif ina or inb:
            cut += 1
        else:
            outside += 1
    return BoundaryCounts(cut, inside, outside)
