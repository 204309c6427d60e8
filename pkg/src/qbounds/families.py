"""Two-center graph families, named constructions, and their quotients.

The family on parameters (p, r, s) consists of two distinguished vertices
u, v together with three independent sets: S2 (p vertices joined to both),
S1 (r vertices joined to u only) and S3 (s vertices joined to v only).
``adjacent`` controls the edge u~v.  Vertex layout is fixed as
[u, v, S2..., S1..., S3...], which makes the block quotient matrices below
literally reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, degree_sequence, is_connected
from .linalg import RationalMatrix, RationalPoly, char_poly_exact
from .partitions import DegenerateCaseError
from .spectra import PreconditionError


class UnsupportedRegimeError(ValueError):
    """No closed-form quotient is available for these parameters."""


@dataclass(frozen=True)
class FamilyParams:
    """(p, r, s, adjacent) with the normalization r >= s."""

    p: int
    r: int
    s: int
    adjacent: bool

    def __post_init__(self):
        for name in ("p", "r", "s"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise PreconditionError("%s must be a non-negative integer" % name)
        if self.r < self.s:
            raise PreconditionError("normalization requires r >= s")

    @property
    def n(self):
        return self.p + self.r + self.s + 2

    @property
    def label(self):
        head = "G" if self.adjacent else "H"
        return "%s(%d,%d,%d)" % (head, self.p, self.r, self.s)


def make_family(params):
    """Build the two-center graph in the canonical vertex layout."""
    p, r, s = params.p, params.r, params.s
    if p + r + s == 0 and not params.adjacent:
        raise DegenerateCaseError("H(0,0,0) has no edges")
    u, v = 0, 1
    s2 = range(2, 2 + p)
    s1 = range(2 + p, 2 + p + r)
    s3 = range(2 + p + r, 2 + p + r + s)
    edges = []
    if params.adjacent:
        edges.append((u, v))
    for w in s2:
        edges.append((u, w))
        edges.append((v, w))
    edges.extend((u, w) for w in s1)
    edges.extend((v, w) for w in s3)
    return Graph(params.n, edges)


def make_named(name, *args):
    """Standard small constructions addressed by name.

    Accepted names: star n, complete n, complete_bipartite a b,
    complete_split p, star_plus_edge n, path n, cycle n,
    union_with_isolated g t.
    """
    if name == "star":
        (n,) = args
        _require(n >= 1, "star needs n >= 1")
        return Graph(n, [(0, i) for i in range(1, n)])
    if name == "complete":
        (n,) = args
        _require(n >= 1, "complete needs n >= 1")
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if name == "complete_bipartite":
        a, b = args
        _require(a >= 1 and b >= 1, "complete_bipartite needs a, b >= 1")
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if name == "complete_split":
        (p,) = args
        _require(p >= 1, "complete_split needs p >= 1")
        edges = [(0, 1)]
        edges.extend((c, w) for c in (0, 1) for w in range(2, 2 + p))
        return Graph(p + 2, edges)
    if name == "star_plus_edge":
        (n,) = args
        _require(n >= 3, "star_plus_edge needs n >= 3")
        return Graph(n, [(0, i) for i in range(1, n)] + [(1, 2)])
    if name == "path":
        (n,) = args
        _require(n >= 1, "path needs n >= 1")
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if name == "cycle":
        (n,) = args
        _require(n >= 3, "cycle needs n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "union_with_isolated":
        g, t = args
        _require(isinstance(g, Graph) and t >= 0, "needs a graph and t >= 0")
        return Graph(g.n + t, g.edges)
    raise ValueError("unknown family name %r" % (name,))


def _require(cond, message):
    if not cond:
        raise PreconditionError(message)


def extract_h(g):
    """Keep only the edges at the two highest-degree vertices.

    Picks u of maximum degree and v of maximum degree among the rest
    (ties to the smallest label), drops every edge not incident to u or
    v, and restricts to N(u) | N(v) | {u, v}.  The result is classified
    by its (p, r, s, adjacent) parameters; by construction it preserves
    d1 + d2.
    """
    if g.n < 3:
        raise PreconditionError("need at least three vertices")
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    ds = degree_sequence(g)
    u, v = ds.d1_vertex, ds.d2_vertex
    nu = set(g.neighbors(u))
    nv = set(g.neighbors(v))
    p = len((nu & nv) - {u, v})
    r = len(nu - nv - {v})
    s = len(nv - nu - {u})
    params = FamilyParams(p, r, s, adjacent=g.has_edge(u, v))
    return make_family(params), params


# ----------------------------------------------------------------------
# closed-form quotients over the five-or-four block equitable partition
# ----------------------------------------------------------------------

def _regime(params):
    p, r, s = params.p, params.r, params.s
    if not params.adjacent:
        if p >= 1 and r >= 1 and s >= 1:
            return "H5"
        if p >= 1 and r >= 1 and s == 0:
            return "H4"
    else:
        if p == 0 and r >= 1 and s >= 1:
            return "G4"
        if p >= 1 and r >= 1 and s >= 1:
            return "G5"
    raise UnsupportedRegimeError(
        "no printed quotient for %s" % (params.label,)
    )


def family_quotient(params):
    """The integer quotient matrix of Q over blocks {u},{v},S2,S1,S3.

    Available in four regimes: non-adjacent centers with s >= 1 or s = 0,
    and adjacent centers with p = 0 or p >= 1 (s >= 1).
    """
    p, r, s = params.p, params.r, params.s
    regime = _regime(params)
    if regime == "H5":
        rows = [
            [p + r, 0, p, r, 0],
            [0, p + s, p, 0, s],
            [1, 1, 2, 0, 0],
            [1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1],
        ]
    elif regime == "H4":
        rows = [
            [p + r, 0, p, r],
            [0, p, p, 0],
            [1, 1, 2, 0],
            [1, 0, 0, 1],
        ]
    elif regime == "G4":
        rows = [
            [r + 1, 1, r, 0],
            [1, s + 1, 0, s],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
        ]
    else:  # G5
        rows = [
            [p + r + 1, 1, p, r, 0],
            [1, p + s + 1, p, 0, s],
            [1, 1, 2, 0, 0],
            [1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1],
        ]
    return RationalMatrix(rows)


def family_char_poly(params):
    """Closed-form characteristic polynomial of the family quotient.

    Ascending coefficients; always agrees with char_poly_exact of
    family_quotient (the 5x5 non-adjacent case is stated here with its
    x^4 and x^2 coefficients corrected so that the identity holds).
    """
    p, r, s = params.p, params.r, params.s
    regime = _regime(params)
    if regime == "H5":
        coeffs = (
            0,
            (s + r) * p + p * p + 2 * p,
            (-2 * r - 2 * p - 2) * s + (-2 * p - 2) * r - 2 * p * p - 6 * p - 2,
            (r + p + 3) * s + (p + 3) * r + p * p + 6 * p + 5,
            -(s + r + 2 * p + 4),
            1,
        )
    elif regime == "H4":
        coeffs = (
            0,
            -p * r - p * p - 2 * p,
            (p + 2) * r + p * p + 4 * p + 2,
            -(r + 2 * p + 3),
            1,
        )
    elif regime == "G4":
        coeffs = (
            0,
            -(r + s + 2),
            (r + 2) * s + 2 * r + 5,
            -(r + s + 4),
            1,
        )
    else:  # G5
        coeffs = (
            -4 * p,
            (p + 2) * s + (p + 2) * r + p * p + 12 * p + 4,
            (-2 * r - 2 * p - 5) * s + (-2 * p - 5) * r - 2 * p * p - 14 * p - 12,
            (r + p + 4) * s + (p + 4) * r + p * p + 8 * p + 13,
            -(s + r + 2 * p + 6),
            1,
        )
    return RationalPoly(coeffs)


def family_spectrum_fillers(params):
    """Eigenvalues of Q(family) not visible in the quotient.

    The equitable-partition proofs account for the rest of the spectrum
    with 2's (from S2) and 1's (from S1, S3); together with the quotient
    roots these fill the whole spectrum.
    """
    p, r, s = params.p, params.r, params.s
    regime = _regime(params)
    twos = max(p - 1, 0)
    ones = (r - 1) if regime == "H4" else (r + s - 2)
    return (2.0,) * twos + (1.0,) * ones
