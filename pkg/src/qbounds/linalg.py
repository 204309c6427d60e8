"""Dense symmetric eigensolvers and exact rational matrix arithmetic.

Floating-point spectra carry an explicit absolute tolerance; every strict
comparison downstream goes through the guard band ``GUARD_BAND`` so that
roundoff can never certify a strict inequality.  The exact side (Fraction
matrices, characteristic polynomials and Sturm-chain root counting) is the
escalation path for verdicts that land inside the guard band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


# Strict claims are certified only when the slack clears this band; within
# the band the verdict is indeterminate unless an exact path resolves it.
GUARD_BAND = 1e-7

# Guaranteed absolute eigenvalue accuracy, as a multiple of max(1, radius).
# LAPACK and the Jacobi sweep both land well below this.
TOL_FACTOR = 1e-12


class SolverError(RuntimeError):
    """Eigensolver failed to converge; carries the remaining residual."""

    def __init__(self, message, residual=None):
        if residual is not None:
            message = "%s (off-diagonal residual %.3e)" % (message, residual)
        super().__init__(message)
        self.residual = residual


class SymMatrix:
    """A real symmetric matrix; entries are validated exactly as stored."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        a.setflags(write=False)
        self._a = a

    @property
    def order(self):
        return self._a.shape[0]

    @property
    def array(self):
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def __repr__(self):
        return "SymMatrix(%r)" % (self._a.tolist(),)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending plus the solver's absolute tolerance."""

    values: tuple
    tol: float

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for a, b in zip(vals, vals[1:]):
            if a < b:
                raise ValueError("spectrum not sorted descending")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def top_sum(self, m):
        """Sum of the m largest eigenvalues."""
        return float(sum(self.values[:m]))

    def bottom_sum(self, m):
        """Sum of the m smallest eigenvalues."""
        if m == 0:
            return 0.0
        return float(sum(self.values[len(self.values) - m:]))


def _as_array(a):
    if isinstance(a, SymMatrix):
        return a.array
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("matrix must be square")
    return arr


def sym_eigenvalues(a, method="lapack"):
    """All eigenvalues of a symmetric matrix, descending, with tolerance.

    ``method`` selects the LAPACK path (default) or the cyclic Jacobi
    sweep; both are deterministic for identical input and agree to far
    better than the advertised tolerance.
    """
    arr = _as_array(a)
    if arr.shape[0] == 0:
        raise ValueError("matrix order must be at least 1")
    if not np.isfinite(arr).all():
        raise ValueError("matrix has non-finite entries")
    if method == "lapack":
        try:
            vals = np.linalg.eigvalsh(arr)
        except np.linalg.LinAlgError as exc:
            raise SolverError("eigenvalue iteration failed: %s" % exc) from exc
        values = tuple(sorted(vals.tolist(), reverse=True))
    elif method == "jacobi":
        values = tuple(sorted(jacobi_eigenvalues(arr), reverse=True))
    else:
        raise ValueError("unknown method %r" % (method,))
    radius = max(1.0, max(abs(v) for v in values))
    return Spectrum(values, TOL_FACTOR * radius)


def jacobi_eigenvalues(a, max_sweeps=60):
    """Cyclic Jacobi rotations on a dense symmetric matrix.

    Sweeps over all off-diagonal pairs, rotating each one to zero, until
    the off-diagonal Frobenius norm is negligible.  Returns the list of
    eigenvalues in ascending order.
    """
    a = np.array(_as_array(a), dtype=float)
    n = a.shape[0]
    if n == 1:
        return [a[0, 0]]
    scale = np.abs(a).max() or 1.0
    threshold = 1e-14 * scale
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        if off <= threshold * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-30 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        off = math.sqrt(max(0.0, np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        raise SolverError("Jacobi sweep did not converge", residual=off)
    return sorted(np.diag(a).tolist())


# ----------------------------------------------------------------------
# exact rational side
# ----------------------------------------------------------------------

class RationalMatrix:
    """Square matrix of exact rationals (not required symmetric)."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        entries = tuple(
            tuple(Fraction(x) for x in row) for row in rows
        )
        m = len(entries)
        for row in entries:
            if len(row) != m:
                raise ValueError("matrix must be square")
        self.entries = entries

    @property
    def order(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def trace(self):
        return sum((row[i] for i, row in enumerate(self.entries)), Fraction(0))

    def to_float_array(self):
        return np.array(
            [[float(x) for x in row] for row in self.entries], dtype=float
        )

    def __repr__(self):
        return "RationalMatrix(%r)" % ([list(map(str, r)) for r in self.entries],)


@dataclass(frozen=True)
class RationalPoly:
    """Monic polynomial det(xI - M); coefficients ascending, exact."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs or cs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        return eval_poly(self, x)


def char_poly_exact(m):
    """Exact characteristic polynomial det(xI - M) by the Leverrier recurrence.

    Works entirely in Fractions; no rounding anywhere.
    """
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix(m)
    order = m.order
    a = [list(row) for row in m.entries]
    work = [row[:] for row in a]
    coeffs_desc = [Fraction(1)]
    for k in range(1, order + 1):
        if k > 1:
            # work <- a @ (work + c_{k-1} I)
            for i in range(order):
                work[i][i] += coeffs_desc[-1]
            nxt = [
                [
                    sum(a[i][t] * work[t][j] for t in range(order))
                    for j in range(order)
                ]
                for i in range(order)
            ]
            work = nxt
        trace = sum(work[i][i] for i in range(order))
        coeffs_desc.append(-trace / k)
    return RationalPoly(tuple(reversed(coeffs_desc)))


def eval_poly(p, x):
    """Exact Horner evaluation at a rational point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(_coeff_list(p)):
        acc = acc * x + c
    return acc


def _coeff_list(p):
    if isinstance(p, RationalPoly):
        return list(p.coeffs)
    return [Fraction(c) for c in p]


def _strip(cs):
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    return cs


def _derivative(cs):
    return [c * k for k, c in enumerate(cs)][1:]


def _poly_rem(num, den):
    """Remainder of exact polynomial division (coefficients ascending)."""
    num = _strip(num[:])
    dn = len(den) - 1
    lead = den[-1]
    while num and len(num) - 1 >= dn:
        shift = len(num) - 1 - dn
        factor = num[-1] / lead
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num = _strip(num[:-1])
    return num


def _poly_gcd(a, b):
    a, b = _strip(a[:]), _strip(b[:])
    while b:
        a, b = b, _poly_rem(a, b)
        b = _strip(b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _sturm_chain(cs):
    chain = [_strip(cs[:])]
    d = _strip(_derivative(cs))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        rem = _strip(_poly_rem(chain[-2], chain[-1]))
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x):
    return _variations([_sign(eval_poly(c, x)) for c in chain])


def _variations_at_plus_inf(chain):
    return _variations([_sign(c[-1]) for c in chain])


def _variations_at_minus_inf(chain):
    return _variations(
        [_sign(c[-1]) * (-1 if (len(c) - 1) % 2 else 1) for c in chain]
    )


def _deflate_root(cs, x0):
    """Divide out (x - x0) as often as it is an exact root."""
    while len(cs) > 1 and eval_poly(cs, x0) == 0:
        # synthetic division, highest coefficient first
        quot = []
        carry = Fraction(0)
        for c in reversed(cs):
            carry = c + carry * x0
            quot.append(carry)
        cs = _strip(list(reversed(quot[:-1])))
    return cs


def count_real_roots_above(p, x0):
    """Real roots of p in the open interval (x0, +inf), with multiplicity.

    Exact: Sturm chains count distinct roots, and gcd deflation adds the
    extra multiplicity layer by layer.
    """
    cs = _strip(_coeff_list(p))
    x0 = Fraction(x0)
    total = 0
    while len(cs) > 1:
        reduced = _deflate_root(cs[:], x0)
        if len(reduced) > 1:
            chain = _sturm_chain(reduced)
            total += _variations_at(chain, x0) - _variations_at_plus_inf(chain)
        cs = _poly_gcd(cs, _derivative(cs))
    return total


def count_real_roots_below(p, x0):
    """Real roots of p in the open interval (-inf, x0), with multiplicity."""
    cs = _strip(_coeff_list(p))
    x0 = Fraction(x0)
    total = 0
    while len(cs) > 1:
        reduced = _deflate_root(cs[:], x0)
        if len(reduced) > 1:
            chain = _sturm_chain(reduced)
            total += _variations_at_minus_inf(chain) - _variations_at(chain, x0)
        cs = _poly_gcd(cs, _derivative(cs))
    return total
