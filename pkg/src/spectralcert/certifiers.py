"""Exact combinatorial certifiers.

Every search here is complete: an absent certificate is a proof of
nonexistence within the stated caps.

* ``find_k_tree``: spanning tree with maximum degree at most k, by
  edge-addition DFS over a fixed edge order (most constrained endpoints
  first) with three prunes: degree caps, connectivity of the remaining
  possibility graph, and a per-component outward degree budget.
* ``find_win_violator``: a vertex set S whose removal leaves more than
  (k-2)|S| + 2 components, searched in increasing size (articulation-guided
  fast path, then full enumeration).
* ``perfect_matching``: augmenting-path maximum matching; on failure the
  X-side vertices reachable by alternating paths from an unmatched vertex
  form a neighborhood-deficient set, returned as the counter-certificate.
* ``count_perfect_matchings_brute``: permanent of the biadjacency matrix by
  inclusion-exclusion, the independent oracle for the matching routines.

All searches use ascending vertex order for tie-breaking, so certificates
are deterministic for a fixed input labeling.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, GraphInputError
from .graphs import BipartiteGraph, Graph, _count_components_masked, is_connected

WIN_N_CAP = 20
BRUTE_MATCHING_CAP = 8


@dataclass(frozen=True)
class KTreeCertificate:
    """Edges of a spanning tree with maximum degree at most k."""

    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class WinViolator:
    """Vertex set S with c(G - S) > (k-2)|S| + 2."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class PerfectMatching:
    """X-Y pairs of a perfect matching, listed by X index."""

    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class HallViolator:
    """X-side set S with |N(S)| < |S|."""

    vertices: tuple[int, ...]


Certificate = KTreeCertificate | WinViolator | PerfectMatching | HallViolator


def certificate_to_json(cert: Certificate) -> dict:
    """Stable JSON form: {"type": ..., "data": [...]}, indices 0-based."""
    if isinstance(cert, KTreeCertificate):
        return {"type": "ktree", "data": [list(e) for e in cert.edges]}
    if isinstance(cert, WinViolator):
        return {"type": "win_violator", "data": list(cert.vertices)}
    if isinstance(cert, PerfectMatching):
        return {"type": "matching", "data": [list(p) for p in cert.pairs]}
    if isinstance(cert, HallViolator):
        return {"type": "hall_violator", "data": list(cert.vertices)}
    raise TypeError(f"not a certificate: {cert!r}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# degree-bounded spanning trees


def find_k_tree(g: Graph, k: int) -> KTreeCertificate | None:
    """A spanning tree of g with every degree <= k, or None if none exists.

    Exact search; g must be connected.
    """
    if k < 2:
        raise GraphInputError(f"degree bound must be at least 2, got {k}")
    if not is_connected(g):
        raise GraphInputError("k-tree search requires a connected graph")
    n = g.n
    if n == 1:
        return KTreeCertificate(())

    degs = g.degrees
    edges = sorted(
        g.edges(),
        key=lambda e: (min(degs[e[0]], degs[e[1]]), max(degs[e[0]], degs[e[1]]), e))
    m = len(edges)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * m + 200))

    parent = list(range(n))
    size = [1] * n

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    deg = [0] * n
    tree_adj = [0] * n
    und = [0] * n  # undecided incident edges, as neighbor bitmasks
    for u, v in edges:
        und[u] |= 1 << v
        und[v] |= 1 << u
    chosen: list[tuple[int, int]] = []
    full = (1 << n) - 1

    def feasible() -> bool:
        members: dict[int, int] = {}
        for v in range(n):
            r = find(v)
            members[r] = members.get(r, 0) | 1 << v
        if len(members) == 1:
            return True
        cap_ok = 0
        for v in range(n):
            if deg[v] < k:
                cap_ok |= 1 << v
        avail = [und[v] & cap_ok if deg[v] < k else 0 for v in range(n)]
        # the possibility graph (tree edges plus usable undecided edges)
        # must still be connected
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= tree_adj[low.bit_length() - 1] | avail[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= frontier
        if seen != full:
            return False
        # every fragment still needs at least one edge to the outside
        for block in members.values():
            outward = 0
            mm = block
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                mm ^= low
                cross = avail[v] & ~block
                if cross:
                    outward += min(k - deg[v], cross.bit_count())
            if outward == 0:
                return False
        return True

    def search(i: int) -> bool:
        if len(chosen) == n - 1:
            return True
        if i == m:
            return False
        if not feasible():
            return False
        u, v = edges[i]
        und[u] &= ~(1 << v)
        und[v] &= ~(1 << u)
        ru, rv = find(u), find(v)
        if ru != rv and deg[u] < k and deg[v] < k:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            deg[u] += 1
            deg[v] += 1
            tree_adj[u] |= 1 << v
            tree_adj[v] |= 1 << u
            chosen.append((u, v))
            if search(i + 1):
                return True
            chosen.pop()
            tree_adj[u] &= ~(1 << v)
            tree_adj[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
            parent[rv] = rv
            size[ru] -= size[rv]
        if search(i + 1):
            return True
        und[u] |= 1 << v
        und[v] |= 1 << u
        return False

    if search(0):
        return KTreeCertificate(tuple(sorted(chosen)))
    return None


def is_valid_ktree(g: Graph, k: int, cert: KTreeCertificate) -> bool:
    """Re-validate a witness: spanning, acyclic, connected, degrees <= k."""
    edges = cert.edges
    if len(edges) != g.n - 1 or len(set(edges)) != len(edges):
        return False
    deg = [0] * g.n
    parent = list(range(g.n))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for u, v in edges:
        if not g.has_edge(u, v):
            return False
        deg[u] += 1
        deg[v] += 1
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[rv] = ru
    return max(deg) <= k if edges else g.n == 1


# ---------------------------------------------------------------------------
# component-count violators


def find_win_violator(g: Graph, k: int, n_cap: int = WIN_N_CAP) -> WinViolator | None:
    """Some S with c(G - S) > (k-2)|S| + 2, or None if no subset violates.

    Exhaustive over all nonempty subsets (sizes above (n-3)/(k-1) cannot
    violate and are skipped).  Subsets of articulation vertices are tried
    first since violators concentrate there.
    """
    if k < 2:
        raise GraphInputError(f"degree bound must be at least 2, got {k}")
    if not is_connected(g):
        raise GraphInputError("violator search requires a connected graph")
    if g.n > n_cap:
        raise CapacityError(f"exhaustive violator search capped at {n_cap} vertices")
    n = g.n
    masks = g.neighbor_masks
    full = (1 << n) - 1
    smax = (n - 3) // (k - 1)
    if smax < 1:
        return None

    def violates(sel: tuple[int, ...]) -> bool:
        mask = 0
        for v in sel:
            mask |= 1 << v
        c = _count_components_masked(masks, full & ~mask)
        return c > (k - 2) * len(sel) + 2

    arts = [v for v in range(n)
            if _count_components_masked(masks, full & ~(1 << v)) > 1]
    for s in range(1, min(smax, len(arts)) + 1):
        for sel in combinations(arts, s):
            if violates(sel):
                return WinViolator(sel)
    for s in range(1, smax + 1):
        for sel in combinations(range(n), s):
            if violates(sel):
                return WinViolator(sel)
    return None


# ---------------------------------------------------------------------------
# bipartite perfect matchings


def perfect_matching(b: BipartiteGraph) -> PerfectMatching | HallViolator:
    """A perfect matching, or a neighborhood-deficient X-set if none exists."""
    if not b.is_balanced():
        raise GraphInputError("perfect matching requires a balanced bipartite graph")
    n = b.nx
    adj = b.x_masks
    match_x = [-1] * n
    match_y = [-1] * n

    def augment(x: int, visited: list[bool]) -> bool:
        for y in _bits(adj[x]):
            if visited[y]:
                continue
            visited[y] = True
            if match_y[y] == -1 or augment(match_y[y], visited):
                match_x[x] = y
                match_y[y] = x
                return True
        return False

    matched = 0
    for x in range(n):
        if augment(x, [False] * n):
            matched += 1
    if matched == n:
        return PerfectMatching(tuple((x, match_x[x]) for x in range(n)))

    x0 = next(x for x in range(n) if match_x[x] == -1)
    reach_x = {x0}
    reach_y: set[int] = set()
    frontier = [x0]
    while frontier:
        nxt = []
        for x in frontier:
            for y in _bits(adj[x]):
                if y in reach_y:
                    continue
                reach_y.add(y)
                partner = match_y[y]
                if partner != -1 and partner not in reach_x:
                    reach_x.add(partner)
                    nxt.append(partner)
        frontier = nxt
    return HallViolator(tuple(sorted(reach_x)))


def count_perfect_matchings_brute(b: BipartiteGraph) -> int:
    """Permanent of the biadjacency matrix, by inclusion-exclusion."""
    if not b.is_balanced():
        raise GraphInputError("matching count requires a balanced bipartite graph")
    n = b.nx
    if n > BRUTE_MATCHING_CAP:
        raise CapacityError(f"brute matching count capped at {BRUTE_MATCHING_CAP}")
    if n == 0:
        return 1
    rows = b.x_masks
    total = 0
    for sub in range(1, 1 << n):
        prod = 1
        for r in rows:
            c = (r & sub).bit_count()
            if c == 0:
                prod = 0
                break
            prod *= c
        if prod:
            total += prod if (n - sub.bit_count()) % 2 == 0 else -prod
    return total
