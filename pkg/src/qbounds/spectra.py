"""Graph matrices (A, L, Q), their spectra, and incidence machinery.

``Q`` always means the signless Laplacian D + A here; the vertex-arc
incidence matrix gets its own type so the two can never be confused.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import induced_subgraph, is_connected
from .linalg import SymMatrix, sym_eigenvalues


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for this input."""


class MatrixKind(enum.Enum):
    Adjacency = "A"
    Laplacian = "L"
    SignlessLaplacian = "Q"

    @classmethod
    def from_letter(cls, letter):
        for kind in cls:
            if kind.value == letter.upper():
                return kind
        raise ValueError("unknown matrix kind %r (use A, L or Q)" % (letter,))


def build_matrix(g, kind):
    """Dense A, L = D - A, or Q = D + A with exact integer entries."""
    if g.n < 1:
        raise PreconditionError("graph must have at least one vertex")
    a = np.zeros((g.n, g.n))
    for (u, v) in g.edges:
        a[u, v] = a[v, u] = 1.0
    if kind is MatrixKind.Adjacency:
        return SymMatrix(a)
    d = np.diag([float(deg) for deg in g.degrees])
    if kind is MatrixKind.Laplacian:
        return SymMatrix(d - a)
    if kind is MatrixKind.SignlessLaplacian:
        return SymMatrix(d + a)
    raise ValueError("unknown matrix kind %r" % (kind,))


@lru_cache(maxsize=65536)
def spectrum_of(g, kind):
    """Descending spectrum of the chosen matrix; cached per (graph, kind)."""
    return sym_eigenvalues(build_matrix(g, kind))


@dataclass(frozen=True)
class OrientedIncidence:
    """Vertex-by-arc incidence of an oriented graph.

    ``arcs[k] = (tail, head)`` follows the sorted edge order of the
    underlying graph, so column k of either matrix corresponds to
    ``g.sorted_edges[k]``.
    """

    n: int
    arcs: tuple
    out_degrees: tuple

    @property
    def signed(self):
        """n x |E| matrix with -1 at the tail and +1 at the head of each arc."""
        m = np.zeros((self.n, len(self.arcs)))
        for k, (tail, head) in enumerate(self.arcs):
            m[tail, k] = -1.0
            m[head, k] = 1.0
        return m

    @property
    def unsigned(self):
        """Entrywise absolute value; satisfies unsigned @ unsigned.T = Q."""
        m = np.zeros((self.n, len(self.arcs)))
        for k, (tail, head) in enumerate(self.arcs):
            m[tail, k] = 1.0
            m[head, k] = 1.0
        return m


def oriented_incidence(g, U):
    """Orient g so that all cut edges point U -> complement.

    Additionally every vertex of U ends up with at least one outgoing
    arc: edges inside U are oriented toward the cut along breadth-first
    layers, which is always possible when g is connected.  Edges outside
    U take the lowest label as tail.
    """
    u_set = set(U)
    for v in u_set:
        if not 0 <= v < g.n:
            raise IndexError("vertex %r out of range" % (v,))
    if not u_set or len(u_set) >= g.n:
        raise PreconditionError("U must be a proper nonempty vertex subset")
    if not is_connected(g):
        raise PreconditionError("graph must be connected")

    # breadth-first layering of U from the cut boundary, inside G[U]
    seeds = {
        u for u in u_set if any(w not in u_set for w in g.neighbors(u))
    }
    sub, vmap = induced_subgraph(g, u_set)
    back = {orig: i for i, orig in enumerate(vmap)}
    dist = {u: 0 for u in seeds}
    frontier = sorted(seeds)
    while frontier:
        nxt = []
        for u in frontier:
            for w_local in sub.neighbors(back[u]):
                w = vmap[w_local]
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = sorted(nxt)
    if len(dist) != len(u_set):
        raise AssertionError("U-layer unreachable in a connected graph")

    arcs = []
    for (a, b) in g.sorted_edges:
        ina, inb = a in u_set, b in u_set
        if ina and not inb:
            arcs.append((a, b))
        elif inb and not ina:
            arcs.append((b, a))
        elif ina and inb:
            # deeper endpoint fires toward the boundary; ties go to
            # the lower label so the construction is deterministic
            if dist[a] > dist[b] or (dist[a] == dist[b] and a < b):
                arcs.append((a, b))
            else:
                arcs.append((b, a))
        else:
            arcs.append((a, b))
    out = [0] * g.n
    for tail, _ in arcs:
        out[tail] += 1
    for u in u_set:
        if out[u] == 0:
            raise AssertionError("vertex %d in U has no outgoing arc" % u)
    return OrientedIncidence(g.n, tuple(arcs), tuple(out))


def edge_gram(inc):
    """|E| x |E| Gram matrix of the unsigned incidence columns.

    Diagonal entries are 2; off-diagonal entries are 1 exactly when the
    two arcs share an endpoint.  Its nonzero spectrum coincides with the
    nonzero Q-spectrum.
    """
    d = inc.unsigned
    return SymMatrix(d.T @ d)
