"""Matrix construction and certified largest-eigenvalue computation.

The matrix family here is a*D(G) + A(G) for a weight a >= 0: a = 0 gives the
adjacency matrix, a = 1 the signless Laplacian.  The eigensolver is power
iteration on the (shifted) nonnegative matrix with a deterministic all-ones
start vector and a Rayleigh-quotient certificate: success means the max-norm
residual ||M x - r x|| is at most tol * max(1, r).  Disconnected inputs are
solved per connected block of the support pattern and the maximum is
returned, with the winning Perron vector zero-padded.

Also provides the classical edge-count bounds on the two spectral radii,
quotient matrices of vertex partitions, and a characteristic-polynomial
bisection solver for small (possibly nonsymmetric) quotient matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import math

import numpy as np

from .errors import ConvergenceError, DomainError, GraphInputError, NumericError
from .graphs import Graph

DEFAULT_TOL = 1e-10
MAX_ITERATIONS = 100000

# Shift added to the diagonal during iteration.  It breaks the +r/-r symmetry
# of bipartite adjacency spectra (where plain power iteration oscillates)
# without changing eigenvectors, and keeps the matrix nonnegative.
_SHIFT = 1.0


@dataclass(frozen=True)
class SpectralResult:
    """Certified largest eigenvalue of a nonnegative symmetric matrix."""

    radius: float
    vector: np.ndarray
    residual: float
    iterations: int


def adjacency(g: Graph) -> np.ndarray:
    return g.adj.astype(float)


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(np.asarray(g.degrees, dtype=float))


def signless_laplacian(g: Graph) -> np.ndarray:
    return degree_matrix(g) + adjacency(g)


def a_matrix(g: Graph, a: float) -> np.ndarray:
    """a*D(G) + A(G); a=0 is the adjacency matrix, a=1 the signless Laplacian."""
    if a < 0:
        raise GraphInputError(f"diagonal weight must be nonnegative, got {a}")
    return a * degree_matrix(g) + adjacency(g)


def _validate_matrix(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GraphInputError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise GraphInputError("matrix entries must be finite")
    if (m < 0).any():
        raise GraphInputError("matrix entries must be nonnegative")
    if not np.allclose(m, m.T, rtol=0.0, atol=0.0):
        raise GraphInputError("matrix must be symmetric")
    return m


def _support_components(m: np.ndarray) -> list[np.ndarray]:
    """Index sets of the connected blocks of the off-diagonal support."""
    n = m.shape[0]
    support = m != 0
    np.fill_diagonal(support, False)
    seen = np.zeros(n, dtype=bool)
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = [start]
        while stack:
            v = stack.pop()
            for u in np.flatnonzero(support[v]):
                if not seen[u]:
                    seen[u] = True
                    comp.append(int(u))
                    stack.append(int(u))
        comps.append(np.array(sorted(comp)))
    return comps


def _power_iterate(m: np.ndarray, tol: float, max_iterations: int):
    """Power iteration on one irreducible block.  Returns (radius, x, res, it)."""
    c = m.shape[0]
    shifted = m + _SHIFT * np.eye(c)
    x = np.full(c, 1.0 / math.sqrt(c))
    y = shifted @ x
    best = (-math.inf, x, math.inf, 0)
    for it in range(1, max_iterations + 1):
        lam = float(x @ y)
        residual = float(np.max(np.abs(y - lam * x)))
        radius = lam - _SHIFT
        if residual <= tol * max(1.0, abs(radius)):
            return radius, x, residual, it
        if residual < best[2]:
            best = (radius, x, residual, it)
        x = y / np.linalg.norm(y)
        y = shifted @ x
    raise ConvergenceError(
        f"no certified eigenpair after {max_iterations} iterations "
        f"(best residual {best[2]:.3e})",
        radius=best[0], residual=best[2], iterations=max_iterations)


def spectral_radius(m: np.ndarray, tol: float = DEFAULT_TOL,
                    max_iterations: int = MAX_ITERATIONS) -> SpectralResult:
    """Largest eigenvalue of a nonnegative symmetric matrix, with certificate.

    Deterministic for fixed input.  For block-diagonal (disconnected) inputs
    each block is solved separately; the returned vector is supported on a
    block attaining the maximum, so strict positivity holds only when the
    support pattern is connected.
    """
    if tol <= 0:
        raise GraphInputError("tolerance must be positive")
    m = _validate_matrix(m)
    best_radius = -math.inf
    best_vec: np.ndarray | None = None
    best_res = 0.0
    total_it = 0
    n = m.shape[0]
    for comp in _support_components(m):
        block = m[np.ix_(comp, comp)]
        radius, x, residual, it = _power_iterate(block, tol, max_iterations)
        total_it += it
        if radius > best_radius:
            best_radius = radius
            best_res = residual
            best_vec = np.zeros(n)
            best_vec[comp] = x
    assert best_vec is not None
    best_vec.flags.writeable = False
    return SpectralResult(radius=best_radius, vector=best_vec,
                          residual=best_res, iterations=total_it)


def rho_a(g: Graph, a: float, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue of a*D(G) + A(G)."""
    return spectral_radius(a_matrix(g, a), tol).radius


# ---------------------------------------------------------------------------
# classical bounds


def hong_bound(g: Graph) -> float:
    """Hong's bound sqrt(2m - n + 1) on the adjacency spectral radius."""
    radicand = 2 * g.m - g.n + 1
    if radicand < 0:
        raise DomainError(
            f"2m - n + 1 = {radicand} < 0 (graph too sparse, e.g. disconnected)")
    return math.sqrt(radicand)


def das_bound(g: Graph) -> float:
    """Das's bound 2m/(n-1) + n - 2 on the signless Laplacian spectral radius."""
    if g.n < 2:
        raise GraphInputError("bound requires at least 2 vertices")
    return 2 * g.m / (g.n - 1) + g.n - 2


# ---------------------------------------------------------------------------
# quotient matrices


def _validate_partition(order: int, classes: Sequence[Sequence[int]]) -> list[list[int]]:
    seen: set[int] = set()
    cleaned = []
    for cls in classes:
        cls = [int(v) for v in cls]
        if not cls:
            raise GraphInputError("partition classes must be nonempty")
        for v in cls:
            if not 0 <= v < order:
                raise GraphInputError(f"index {v} outside 0..{order - 1}")
            if v in seen:
                raise GraphInputError(f"index {v} appears in two classes")
            seen.add(v)
        cleaned.append(cls)
    if len(seen) != order:
        raise GraphInputError("partition must cover every index")
    return cleaned


def quotient_matrix(m: np.ndarray, classes: Sequence[Sequence[int]]
                    ) -> tuple[np.ndarray, bool]:
    """Quotient of m under a partition: block-average row sums.

    Returns (B, equitable) where equitable is True iff every block has
    constant row sums.  For integer matrices the check is exact; otherwise
    row sums are compared within a small relative tolerance.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GraphInputError(f"expected a square matrix, got shape {m.shape}")
    classes = _validate_partition(m.shape[0], classes)
    k = len(classes)
    b = np.zeros((k, k))
    equitable = True
    integral = bool(np.all(m == np.round(m)))
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            row_sums = m[np.ix_(ci, cj)].sum(axis=1)
            b[i, j] = row_sums.mean()
            if integral:
                if not np.all(row_sums == row_sums[0]):
                    equitable = False
            elif not np.allclose(row_sums, row_sums[0], rtol=1e-9, atol=1e-12):
                equitable = False
    return b, equitable


# ---------------------------------------------------------------------------
# dense largest real eigenvalue via characteristic polynomial bisection


def _char_poly_coeffs(m: np.ndarray) -> np.ndarray:
    """Coefficients of det(xI - M), leading first, by Faddeev-LeVerrier."""
    n = m.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    mk = np.array(m, dtype=float)
    for k in range(1, n + 1):
        c = -np.trace(mk) / k
        coeffs[k] = c
        if k < n:
            mk = m @ (mk + c * np.eye(n))
    return coeffs


def largest_eigenvalue_dense(m: np.ndarray, tol: float = 1e-13) -> float:
    """Largest real eigenvalue of a small nonnegative matrix.

    Intended for quotient matrices of order <= 8.  Finds the topmost sign
    change of the characteristic polynomial below the max-row-sum Perron
    bound and bisects it down to `tol` (relative).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GraphInputError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > 8:
        raise GraphInputError("dense characteristic-polynomial solver is capped at order 8")
    if not np.isfinite(m).all():
        raise GraphInputError("matrix entries must be finite")
    if (m < 0).any():
        raise GraphInputError("matrix entries must be nonnegative")
    coeffs = _char_poly_coeffs(m)

    def p(x: float) -> float:
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    upper = float(np.max(m.sum(axis=1))) + 1.0
    lower = 0.0
    steps = 4096
    grid = np.linspace(upper, lower, steps + 1)
    hi = grid[0]
    phi = p(hi)
    bracket = None
    for x in grid[1:]:
        px = p(x)
        if phi > 0.0 >= px:
            bracket = (x, hi)
            break
        hi, phi = x, px
    if bracket is None:
        raise NumericError(
            "no sign change of the characteristic polynomial in [0, max row sum]")
    lo, hi = float(bracket[0]), float(bracket[1])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
        if p(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
