"""Vertex/edge partitions, quotient matrices, and interlacing checks.

Quotient matrices are kept exact (rational) end to end.  Their spectra
come from the symmetrized similar matrix K^{-1/2} (S^T M S) K^{-1/2},
which has the same eigenvalues as the row-averaged quotient K^{-1} S^T M S
but is safe to hand to the symmetric eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graphs import boundary_counts, induced_subgraph, is_connected, remove_edge, remove_vertex
from .linalg import RationalMatrix, Spectrum, SymMatrix, sym_eigenvalues
from .spectra import MatrixKind, PreconditionError, build_matrix, edge_gram, oriented_incidence, spectrum_of

EQUITABLE = "equitable"
ALMOST_EQUITABLE = "almost-equitable"
NEITHER = "neither"


class DegenerateCaseError(ValueError):
    """The construction degenerates for this input (e.g. no outside edges)."""


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of {0,...,n-1} into disjoint nonempty blocks."""

    n: int
    blocks: tuple

    def __init__(self, n, blocks):
        norm = tuple(tuple(sorted(b)) for b in blocks)
        seen = set()
        for block in norm:
            if not block:
                raise PreconditionError("empty partition block")
            for v in block:
                if not 0 <= v < n:
                    raise IndexError("vertex %r out of range" % (v,))
                if v in seen:
                    raise PreconditionError("vertex %d in two blocks" % v)
                seen.add(v)
        if len(seen) != n:
            raise PreconditionError("blocks do not cover the vertex set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", norm)

    @property
    def sizes(self):
        return tuple(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class QuotientMatrix:
    """Row-averaged block matrix b_ij = (block sum of M) / n_i, exact."""

    b: RationalMatrix
    kind: MatrixKind
    partition: VertexPartition

    @property
    def order(self):
        return self.b.order

    def block_sums(self):
        """The unaveraged symmetric matrix S^T M S, exact."""
        sizes = self.partition.sizes
        return RationalMatrix(
            [
                [self.b[i, j] * sizes[i] for j in range(self.order)]
                for i in range(self.order)
            ]
        )

    def trace(self):
        return self.b.trace()


def quotient(g, kind, partition):
    """Exact quotient matrix of the chosen graph matrix over a partition."""
    if partition.n != g.n:
        raise PreconditionError("partition is over the wrong vertex set")
    m = build_matrix(g, kind).array
    blocks = [list(b) for b in partition.blocks]
    rows = []
    for i, bi in enumerate(blocks):
        row = []
        for bj in blocks:
            total = int(m[np.ix_(bi, bj)].sum())
            row.append(Fraction(total, len(bi)))
        rows.append(row)
    return QuotientMatrix(RationalMatrix(rows), kind, partition)


def quotient_spectrum(qm):
    """Eigenvalues of a quotient matrix, via its symmetrized similar form."""
    btilde = qm.block_sums()
    sizes = qm.partition.sizes
    k = qm.order
    sym = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            val = float(btilde[i, j]) / math.sqrt(sizes[i] * sizes[j])
            sym[i, j] = val
            sym[j, i] = val
    return sym_eigenvalues(SymMatrix(sym))


def classify_partition(g, partition):
    """Equitable / almost-equitable / neither, by exact neighbor counting."""
    if partition.n != g.n:
        raise PreconditionError("partition is over the wrong vertex set")
    block_of = {}
    for i, block in enumerate(partition.blocks):
        for v in block:
            block_of[v] = i
    k = len(partition.blocks)
    off_diagonal_ok = True
    diagonal_ok = True
    for i, block in enumerate(partition.blocks):
        counts = None
        for v in block:
            row = [0] * k
            for w in g.neighbors(v):
                row[block_of[w]] += 1
            if counts is None:
                counts = row
            else:
                for j in range(k):
                    if row[j] != counts[j]:
                        if j == i:
                            diagonal_ok = False
                        else:
                            off_diagonal_ok = False
    if not off_diagonal_ok:
        return NEITHER
    return EQUITABLE if diagonal_ok else ALMOST_EQUITABLE


# ----------------------------------------------------------------------
# interlacing
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class InterlacingReport:
    """Outcome of an interlacing check.

    ``upper_slacks[i]`` / ``lower_slacks[i]`` are the margins of the
    upper and lower comparisons for index i (0-based); negative beyond
    tolerance means violated.  ``tight_split`` is the smallest split
    index witnessing tightness, when one exists.
    """

    holds: bool
    tight: bool
    tight_split: int | None
    first_violation: int | None
    upper_slacks: tuple
    lower_slacks: tuple
    tol: float


def check_interlacing(outer, inner):
    """Verify inner eigenvalues interlace outer ones.

    For outer values l_1 >= ... >= l_n and inner values m_1 >= ... >= m_k,
    checks l_i >= m_i >= l_{n-k+i} for every i.  Tightness follows the
    split-index definition: some k0 with equality above up to k0 and
    equality below after it.
    """
    n, k = len(outer), len(inner)
    if k > n:
        raise PreconditionError("inner spectrum longer than outer")
    tol = max(outer.tol, inner.tol)
    eq_tol = 10 * tol
    upper = tuple(outer[i] - inner[i] for i in range(k))
    lower = tuple(inner[i] - outer[n - k + i] for i in range(k))
    first_violation = None
    for i in range(k):
        if upper[i] < -tol or lower[i] < -tol:
            first_violation = i + 1
            break
    holds = first_violation is None
    tight = False
    tight_split = None
    if holds:
        for split in range(k + 1):
            if all(abs(upper[i]) <= eq_tol for i in range(split)) and all(
                abs(lower[i]) <= eq_tol for i in range(split, k)
            ):
                tight = True
                tight_split = split
                break
    return InterlacingReport(
        holds, tight, tight_split, first_violation, upper, lower, tol
    )


def check_vertex_removal_interlacing(g, v):
    """Compare the Q-spectra of g and g - v.

    Checks q_{i+1}(G) - 1 <= q_i(G-v) <= q_i(G) for i = 1..n-1.  Here
    ``tight`` records full equality of the right-hand chain, which the
    removal theorem ties to v being isolated.
    """
    if g.n < 2:
        raise PreconditionError("need at least two vertices")
    outer = spectrum_of(g, MatrixKind.SignlessLaplacian)
    inner = spectrum_of(remove_vertex(g, v), MatrixKind.SignlessLaplacian)
    tol = max(outer.tol, inner.tol)
    eq_tol = 10 * tol
    upper = tuple(outer[i] - inner[i] for i in range(g.n - 1))
    lower = tuple(inner[i] - (outer[i + 1] - 1.0) for i in range(g.n - 1))
    first_violation = None
    for i in range(g.n - 1):
        if upper[i] < -tol or lower[i] < -tol:
            first_violation = i + 1
            break
    holds = first_violation is None
    tight = holds and all(abs(s) <= eq_tol for s in upper)
    return InterlacingReport(
        holds, tight, None, first_violation, upper, lower, tol
    )


def check_edge_removal_interlacing(g, e, kind=MatrixKind.SignlessLaplacian):
    """Compare the spectra of g and g - e for Q or L.

    The expected chain is s_i between consecutive outer eigenvalues:
    q_i >= s_i >= q_{i+1}, with the trailing comparison s_n >= 0.
    """
    if kind is MatrixKind.Adjacency:
        raise PreconditionError("edge-removal chain applies to L and Q only")
    outer = spectrum_of(g, kind)
    inner = spectrum_of(remove_edge(g, e), kind)
    n = g.n
    tol = max(outer.tol, inner.tol)
    eq_tol = 10 * tol
    upper = tuple(outer[i] - inner[i] for i in range(n))
    lower = tuple(
        inner[i] - (outer[i + 1] if i + 1 < n else 0.0) for i in range(n)
    )
    first_violation = None
    for i in range(n):
        if upper[i] < -tol or lower[i] < -tol:
            first_violation = i + 1
            break
    holds = first_violation is None
    tight = holds and all(abs(s) <= eq_tol for s in upper)
    return InterlacingReport(
        holds, tight, None, first_violation, upper, lower, tol
    )


# ----------------------------------------------------------------------
# the bordered quotient B' over singletons-plus-rest
# ----------------------------------------------------------------------

def _proper_subset(g, U):
    u_list = list(U)
    u_set = set(u_list)
    if len(u_set) != len(u_list):
        raise PreconditionError("repeated vertex in U")
    for v in u_list:
        if not 0 <= v < g.n:
            raise IndexError("vertex %r out of range" % (v,))
    if not u_list or len(u_list) >= g.n:
        raise PreconditionError("U must be a proper nonempty vertex subset")
    return u_list, u_set


def t1_quotient(g, U):
    """Quotient of Q over the partition {u_1}, ..., {u_m}, complement.

    The top-left block is the principal submatrix Q_U; the last column
    holds the per-vertex cut counts, the last row their average, and the
    corner the average complement row sum.
    """
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    u_list, u_set = _proper_subset(g, U)
    rest = tuple(v for v in range(g.n) if v not in u_set)
    blocks = [(u,) for u in u_list] + [rest]
    return quotient(
        g, MatrixKind.SignlessLaplacian, VertexPartition(g.n, blocks)
    )


def t1_middle_term(g, U):
    """Exact value of sum_U d_u + (sum_rest d_w + 2|E[rest]|) / (n - m).

    Equals the trace of the bordered quotient from t1_quotient.
    """
    u_list, u_set = _proper_subset(g, U)
    rest = [v for v in range(g.n) if v not in u_set]
    bc = boundary_counts(g, u_set)
    deg = g.degrees
    top = sum(deg[u] for u in u_list)
    rest_sum = sum(deg[v] for v in rest) + 2 * bc.outside
    return top + Fraction(rest_sum, len(rest))


# ----------------------------------------------------------------------
# edge-side quotients over the orientation's tail classes
# ----------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _tail_gram(g, u_key):
    """Shared oriented incidence + Gram pair for the edge-side quotients.

    Cached because a sweep evaluates several edge-side checkers on the
    same (g, U) back to back.
    """
    inc = oriented_incidence(g, u_key)
    return inc, edge_gram(inc).array


def _tail_classes(arcs, u_sorted):
    index = {u: col for col, u in enumerate(u_sorted)}
    classes = [[] for _ in u_sorted]
    for k, (tail, _) in enumerate(arcs):
        col = index.get(tail)
        if col is not None:
            classes[col].append(k)
    for u, cls in zip(u_sorted, classes):
        if not cls:
            raise AssertionError("vertex %d has no outgoing arc" % u)
    return classes


def edge_partition_quotient(g, U):
    """Quotient B1 of the U-tail Gram block over classes E_u.

    Returns (B1, trace) with both exact; the trace always equals
    sum_U d_u - |E[U]| + |U|.
    """
    return _edge_partition_quotient(g, frozenset(U))


@lru_cache(maxsize=4096)
def _edge_partition_quotient(g, u_key):
    u_sorted = sorted(u_key)
    inc, gram = _tail_gram(g, frozenset(u_sorted))
    classes = _tail_classes(inc.arcs, u_sorted)
    ind = np.zeros((len(inc.arcs), len(classes)))
    for col, cls in enumerate(classes):
        ind[cls, col] = 1.0
    # Gram entries are small integers, so the float block sums are exact
    totals = ind.T @ gram @ ind
    rows = [
        [Fraction(int(round(totals[i, j])), len(ci)) for j in range(len(classes))]
        for i, ci in enumerate(classes)
    ]
    b1 = RationalMatrix(rows)
    return b1, b1.trace()


def augmented_edge_quotient(g, U):
    """The (m+1)-order weighted quotient that appends the top eigenvector
    of the outside-edge Gram block to the tail classes E_u.

    Numeric by necessity (the eigenvector column).  Its trace equals
    sum_U d_u - |E[U]| + m + q1(G[rest]) up to solver accuracy.
    """
    u_sorted = sorted(set(U))
    u_set = set(u_sorted)
    inc, gram = _tail_gram(g, frozenset(u_sorted))
    arcs = inc.arcs
    outside = [
        k
        for k, (tail, head) in enumerate(arcs)
        if tail not in u_set and head not in u_set
    ]
    if not outside:
        raise DegenerateCaseError("no edges outside U")
    m2 = gram[np.ix_(outside, outside)]
    vals, vecs = np.linalg.eigh(m2)
    v = vecs[:, -1]
    pivot = int(np.argmax(np.abs(v)))
    if v[pivot] < 0:
        v = -v
    num_arcs = len(arcs)
    m = len(u_sorted)
    s = np.zeros((num_arcs, m + 1))
    classes = _tail_classes(arcs, u_sorted)
    sizes = []
    for col, cls in enumerate(classes):
        for k in cls:
            s[k, col] = 1.0
        sizes.append(len(cls))
    for row, k in enumerate(outside):
        s[k, m] = v[row]
    weights = np.array(sizes + [1.0], dtype=float)
    return (s.T @ gram @ s) / weights[:, None]
