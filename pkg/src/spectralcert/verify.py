"""Theorem- and lemma-level verification harnesses.

Each harness streams graphs (graph6 lines, internally generated corpora, or
parameter grids), compares a computed spectral value against the relevant
threshold, runs the matching exact certifier on the in-scope graphs, and
aggregates per-item verdicts into a ``VerificationReport``.

Verdicts partition every stream: ``vacuous`` (guard or threshold not met),
``confirmed`` (certificate found), ``extremal_equality`` (the unique
exceptional graph), ``violated`` (above threshold, no certificate, not
exceptional).  Threshold comparisons use a configurable margin; items inside
the margin are routed through the extremal recognizer and then the
certifier, and are never reported as violations, since equality cases
cannot be decided in floating point.

Reports are deterministic: identical stream and config give byte-identical
JSON.  Violations carry a re-checkable payload (graph6, value, threshold,
certifier outcome).  Worker counts only change scheduling, never results.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Callable, Iterable, Sequence

import numpy as np

from .certifiers import PerfectMatching, find_k_tree, perfect_matching
from .errors import GraphInputError
from .families import (
    is_ktree_extremal,
    is_matching_extremal,
    ktree_extremal,
    matching_extremal,
    q_matching_extremal,
    rho_matching_extremal,
    sqrt_threshold,
    win_family,
)
from .graphs import (
    BipartiteGraph,
    Graph,
    complete_graph,
    disjoint_union,
    empty_graph,
    from_graph6,
    is_connected,
    join,
    min_degree,
    star_graph,
    to_graph6,
)
from .smallgraphs import are_isomorphic, connected_graphs
from .spectral import DEFAULT_TOL, a_matrix, das_bound, hong_bound, spectral_radius

DEFAULT_MARGIN = 1e-8

VACUOUS = "vacuous"
CONFIRMED = "confirmed"
EXTREMAL = "extremal_equality"
VIOLATED = "violated"
_VERDICTS = (VACUOUS, CONFIRMED, EXTREMAL, VIOLATED)

_CSV_COLUMNS = ["graph6", "n", "m", "rho_a", "threshold", "verdict", "certificate_type"]


@dataclass
class VerificationReport:
    theorem_id: str
    population: str
    counts: dict[str, int]
    violations: list[dict]
    tolerances: dict[str, float]
    seed: int | None
    config: dict
    rows: list[dict] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.counts[VIOLATED] == 0

    def to_json_dict(self) -> dict:
        config = dict(self.config)
        config["population"] = self.population
        return {
            "theorem_id": self.theorem_id,
            "config": config,
            "counts": self.counts,
            "violations": self.violations,
            "tolerances": self.tolerances,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(_CSV_COLUMNS)
            for row in self.rows:
                writer.writerow([row.get("graph6"), row.get("n"), row.get("m"),
                                 row.get("value"), row.get("threshold"),
                                 row.get("verdict"), row.get("certificate_type")])

    def summary(self) -> str:
        c = self.counts
        return (f"{self.theorem_id}: checked={c['checked']} vacuous={c[VACUOUS]} "
                f"confirmed={c[CONFIRMED]} extremal={c[EXTREMAL]} violated={c[VIOLATED]}")


def _classify(value: float, threshold: float, margin: float,
              run_certifier: Callable[[], tuple[bool, str | None]],
              is_extremal: Callable[[], bool]) -> tuple[str, str | None]:
    if value < threshold - margin:
        return VACUOUS, None
    if value > threshold + margin:
        found, ctype = run_certifier()
        if found:
            return CONFIRMED, ctype
        if is_extremal():
            return EXTREMAL, ctype
        return VIOLATED, ctype
    # within the margin: equality territory
    if is_extremal():
        return EXTREMAL, None
    found, ctype = run_certifier()
    if found:
        return CONFIRMED, ctype
    return VACUOUS, ctype


def _finalize(theorem_id: str, population: str, rows: list[dict],
              tolerances: dict[str, float], seed: int | None,
              config: dict) -> VerificationReport:
    counts = {"checked": len(rows)}
    for verdict in _VERDICTS:
        counts[verdict] = sum(1 for r in rows if r["verdict"] == verdict)
    violations = sorted((dict(r) for r in rows if r["verdict"] == VIOLATED),
                        key=lambda r: (str(r.get("graph6")), str(sorted(r.items()))))
    return VerificationReport(theorem_id=theorem_id, population=population,
                              counts=counts, violations=violations,
                              tolerances=dict(tolerances), seed=seed,
                              config=dict(config), rows=rows)


def _map_items(fn, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    from concurrent.futures import ProcessPoolExecutor

    chunksize = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


# ---------------------------------------------------------------------------
# streams


def as_graph6_lines(stream: Iterable[Graph | str | bytes]) -> list[str]:
    """Normalize a stream of graphs or graph6 lines; blank lines dropped."""
    lines = []
    for item in stream:
        if isinstance(item, Graph):
            lines.append(to_graph6(item).decode("ascii"))
            continue
        if isinstance(item, bytes):
            item = item.decode("ascii")
        item = item.strip()
        if item:
            lines.append(item)
    return lines


def connected_corpus_stream(min_n: int, max_n: int) -> list[str]:
    """graph6 lines for every connected graph with min_n <= n <= max_n."""
    lines = []
    for n in range(min_n, max_n + 1):
        lines.extend(to_graph6(g).decode("ascii") for g in connected_graphs(n))
    return lines


def random_connected_stream(n: int, count: int, p: float, seed: int) -> list[str]:
    """graph6 lines of `count` connected binomial random graphs."""
    rng = np.random.default_rng(seed)
    lines = []
    while len(lines) < count:
        upper = np.triu(rng.random((n, n)) < p, 1)
        g = Graph(n, upper | upper.T)
        if is_connected(g):
            lines.append(to_graph6(g).decode("ascii"))
    return lines


def bipartite_from_bits(n: int, bits: int) -> BipartiteGraph:
    """Biadjacency on n+n vertices from an n*n-bit integer, row-major."""
    biadj = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for y in range(n):
            if bits >> (x * n + y) & 1:
                biadj[x, y] = True
    return BipartiteGraph(n, n, biadj)


def bipartite_bit_stream(n: int, sample_count: int | None, seed: int) -> list[int]:
    """Exhaustive bit patterns for n <= 4 (when no sample count is forced),
    uniform random patterns otherwise."""
    if sample_count is None:
        if n > 4:
            raise GraphInputError(
                "exhaustive bipartite streams are limited to part size 4; "
                "pass a sample count for larger sizes")
        return list(range(1 << (n * n)))
    rng = np.random.default_rng(seed)
    top = 1 << (n * n)
    return [int(rng.integers(0, top)) for _ in range(sample_count)]


# ---------------------------------------------------------------------------
# Hamilton-path thresholds (the degree-2 spanning tree case)


@lru_cache(maxsize=None)
def _hamilton_exceptions(variant: str, n: int) -> tuple[Graph, ...]:
    if variant == "rho":
        graphs = [ktree_extremal(n, 2)] if n >= 4 else []
        if n == 6:
            graphs.append(join(complete_graph(2), empty_graph(4)))
            graphs.append(join(complete_graph(1),
                               disjoint_union([star_graph(3), complete_graph(1)])))
        return tuple(graphs)
    if variant == "q":
        graphs = []
        if n == 4:
            graphs.append(star_graph(3))
        if n == 5:
            graphs.append(join(complete_graph(1),
                               disjoint_union([complete_graph(2), empty_graph(2)])))
            graphs.append(star_graph(4))
        if n == 6:
            graphs.append(join(complete_graph(2), empty_graph(4)))
        return tuple(graphs)
    raise GraphInputError(f"unknown variant {variant!r}")


def _hamilton_item(params: tuple, line: str) -> dict:
    variant, tol, margin = params
    g = from_graph6(line)
    row = {"graph6": line, "n": g.n, "m": g.m, "value": None, "threshold": None,
           "verdict": VACUOUS, "certificate_type": None}
    if g.n < 4 or not is_connected(g):
        return row
    a = 0.0 if variant == "rho" else 1.0
    threshold = float(g.n - 3 if variant == "rho" else 2 * g.n - 5)
    value = spectral_radius(a_matrix(g, a), tol).radius
    row["value"] = value
    row["threshold"] = threshold

    def run_certifier():
        found = find_k_tree(g, 2) is not None
        return found, ("ktree" if found else None)

    def is_exceptional():
        return any(g.n == e.n and are_isomorphic(g, e)
                   for e in _hamilton_exceptions(variant, g.n))

    row["verdict"], row["certificate_type"] = _classify(
        value, threshold, margin, run_certifier, is_exceptional)
    return row


def verify_hamilton_condition(stream: Iterable[Graph | str | bytes],
                              variant: str = "rho", *,
                              tol: float = DEFAULT_TOL,
                              margin: float = DEFAULT_MARGIN,
                              workers: int = 1) -> VerificationReport:
    """Check the spectral Hamilton-path conditions on a connected stream.

    variant "rho": adjacency radius > n-3 forces a Hamilton path outside the
    known exceptional graphs; variant "q": signless Laplacian radius >= 2n-5,
    with its own exception list.
    """
    if variant not in ("rho", "q"):
        raise GraphInputError(f"variant must be 'rho' or 'q', got {variant!r}")
    lines = as_graph6_lines(stream)
    rows = _map_items(partial(_hamilton_item, (variant, tol, margin)), lines, workers)
    return _finalize(
        theorem_id=f"hamilton_path_{'adjacency' if variant == 'rho' else 'signless_laplacian'}",
        population=f"{len(lines)} streamed graphs",
        rows=rows, tolerances={"tol": tol, "margin": margin}, seed=None,
        config={"variant": variant})


# ---------------------------------------------------------------------------
# bounded-degree spanning trees


def _ktree_item(params: tuple, line: str) -> dict:
    k, a, thresholds, tol, margin = params
    g = from_graph6(line)
    row = {"graph6": line, "n": g.n, "m": g.m, "value": None, "threshold": None,
           "verdict": VACUOUS, "certificate_type": None}
    if not is_connected(g) or g.n < 2 * k + 16:
        return row
    threshold = thresholds[g.n]
    value = spectral_radius(a_matrix(g, a), tol).radius
    row["value"] = value
    row["threshold"] = threshold

    def run_certifier():
        found = find_k_tree(g, k) is not None
        return found, ("ktree" if found else None)

    row["verdict"], row["certificate_type"] = _classify(
        value, threshold, margin, run_certifier,
        lambda: is_ktree_extremal(g, g.n, k))
    return row


def verify_ktree_condition(stream: Iterable[Graph | str | bytes], k: int,
                           a: float, *, tol: float = DEFAULT_TOL,
                           margin: float = DEFAULT_MARGIN,
                           workers: int = 1) -> VerificationReport:
    """Spectral threshold for a degree-<=k spanning tree (k >= 3, n >= 2k+16).

    Streamed graphs below the order guard are counted vacuous.  The per-order
    threshold is the computed radius of the extremal construction.
    """
    if k < 3:
        raise GraphInputError(f"the spanning-tree threshold needs k >= 3, got {k}")
    if a not in (0.0, 1.0, 0, 1):
        raise GraphInputError("the threshold comparison is stated for a in {0, 1}")
    lines = as_graph6_lines(stream)
    orders = sorted({from_graph6(line).n for line in lines})
    thresholds = {
        n: spectral_radius(a_matrix(ktree_extremal(n, k), float(a)), tol).radius
        for n in orders if n >= 2 * k + 16
    }
    rows = _map_items(partial(_ktree_item, (k, float(a), thresholds, tol, margin)),
                      lines, workers)
    return _finalize(
        theorem_id=f"ktree_{'adjacency' if a in (0, 0.0) else 'signless_laplacian'}",
        population=f"{len(lines)} streamed graphs",
        rows=rows, tolerances={"tol": tol, "margin": margin}, seed=None,
        config={"k": k, "a": float(a)})


# ---------------------------------------------------------------------------
# bipartite perfect matchings


def _matching_item(params: tuple, bits: int) -> dict:
    n, delta, a, threshold, tol, margin = params
    b = bipartite_from_bits(n, bits)
    g = b.to_graph()
    row = {"graph6": to_graph6(g).decode("ascii"), "bits": bits, "n": g.n,
           "m": g.m, "value": None, "threshold": None, "verdict": VACUOUS,
           "certificate_type": None}
    if threshold is None or min_degree(b) != delta:
        return row
    value = spectral_radius(a_matrix(g, a), tol).radius
    row["value"] = value
    row["threshold"] = threshold

    def run_certifier():
        result = perfect_matching(b)
        if isinstance(result, PerfectMatching):
            return True, "matching"
        return False, "hall_violator"

    row["verdict"], row["certificate_type"] = _classify(
        value, threshold, margin, run_certifier,
        lambda: is_matching_extremal(b, n, delta))
    return row


def verify_matching_condition(n: int, delta: int, a: float = 0.0,
                              variant: str = "family", *,
                              sample_count: int | None = None, seed: int = 0,
                              tol: float = DEFAULT_TOL,
                              margin: float = DEFAULT_MARGIN,
                              workers: int = 1) -> VerificationReport:
    """Spectral thresholds for perfect matchings in balanced bipartite graphs.

    Streams every n+n biadjacency pattern (exhaustively for n <= 4, random
    with the given seed otherwise) and checks graphs whose minimum degree is
    exactly delta.  variant "family" compares against the closed-form radius
    of the extremal family (adjacency for a=0, signless Laplacian for a=1);
    variant "sqrt" compares the adjacency radius against sqrt(n(n-delta-1)),
    which is valid once n clears its cubic guard in delta (smaller n are all
    vacuous).
    """
    if delta < 1:
        raise GraphInputError(f"minimum degree must be at least 1, got {delta}")
    if variant not in ("family", "sqrt"):
        raise GraphInputError(f"variant must be 'family' or 'sqrt', got {variant!r}")
    if variant == "sqrt" and a not in (0, 0.0):
        raise GraphInputError("the sqrt threshold applies to the adjacency radius only")
    if a not in (0.0, 1.0, 0, 1):
        raise GraphInputError("the threshold comparison is stated for a in {0, 1}")

    threshold: float | None
    if variant == "family":
        threshold = (rho_matching_extremal(n, delta) if a in (0, 0.0)
                     else q_matching_extremal(n, delta))
    else:
        guard = 0.5 * delta**3 + 0.5 * delta**2 + delta + 4
        threshold = sqrt_threshold(n, delta) if n >= guard else None

    items = bipartite_bit_stream(n, sample_count, seed)
    rows = _map_items(
        partial(_matching_item, (n, delta, float(a), threshold, tol, margin)),
        items, workers)
    matrix_kind = "adjacency" if a in (0, 0.0) else "signless_laplacian"
    return _finalize(
        theorem_id=f"matching_{variant}_threshold_{matrix_kind}",
        population=(f"exhaustive {n}+{n} biadjacency patterns" if sample_count is None
                    else f"{sample_count} random {n}+{n} biadjacency patterns"),
        rows=rows, tolerances={"tol": tol, "margin": margin},
        seed=None if sample_count is None else seed,
        config={"n": n, "delta": delta, "a": float(a), "variant": variant})


# ---------------------------------------------------------------------------
# monotonicity sweeps


def _partitions_exact(total: int, parts: int, max_part: int):
    if parts == 1:
        if 1 <= total <= max_part:
            yield (total,)
        return
    for first in range(min(total - parts + 1, max_part), 0, -1):
        for rest in _partitions_exact(total - first, parts - 1, first):
            yield (first,) + rest


def verify_cut_family_monotonicity(max_n: int = 20, max_s: int = 4,
                                   max_t: int = 5, *,
                                   tol: float = DEFAULT_TOL) -> VerificationReport:
    """Concentrating the non-cut cliques into one strictly raises the radius.

    For every cut size s, every clique-size partition with at least two parts
    whose largest part is not already maximal, and a in {0, 1}: the family
    value must be strictly below the concentrated family value.
    """
    rows = []
    for n in range(3, max_n + 1):
        for s in range(1, max_s + 1):
            for t in range(2, max_t + 1):
                rest = n - s
                if rest < t:
                    continue
                big = n - s - t + 1
                concentrated = {
                    a: spectral_radius(
                        a_matrix(win_family(s, (big,) + (1,) * (t - 1)), a), tol).radius
                    for a in (0.0, 1.0)
                }
                for parts in _partitions_exact(rest, t, rest):
                    if parts[0] >= big:
                        continue
                    g = win_family(s, parts)
                    for a in (0.0, 1.0):
                        value = spectral_radius(a_matrix(g, a), tol).radius
                        gap = concentrated[a] - value
                        rows.append({
                            "graph6": to_graph6(g).decode("ascii"),
                            "item": f"n={n} s={s} parts={parts} a={a:g}",
                            "n": n, "m": g.m, "value": value,
                            "threshold": concentrated[a],
                            "verdict": CONFIRMED if gap > tol else VIOLATED,
                            "certificate_type": None,
                        })
    return _finalize(
        theorem_id="cut_family_monotonicity",
        population=f"partition grid n<={max_n}, s<={max_s}, t<={max_t}",
        rows=rows, tolerances={"tol": tol}, seed=None,
        config={"max_n": max_n, "max_s": max_s, "max_t": max_t})


def verify_matching_family_monotonicity(max_n: int = 30, *,
                                        tol: float = DEFAULT_TOL) -> VerificationReport:
    """Shrinking the deficient block strictly raises the family radius.

    Compares the (n, s) matching-extremal radius against (n, s-1) for every
    1 <= s < n/2 and a in {0, 1}; both sides are eigensolved.
    """
    rows = []
    cache: dict[tuple[int, int, float], float] = {}

    def family_radius(n: int, s: int, a: float) -> float:
        key = (n, s, a)
        if key not in cache:
            g = matching_extremal(n, s).to_graph()
            cache[key] = spectral_radius(a_matrix(g, a), tol).radius
        return cache[key]

    for n in range(3, max_n + 1):
        for s in range(1, (n - 1) // 2 + 1):  # exactly 1 <= s < n/2
            for a in (0.0, 1.0):
                value = family_radius(n, s, a)
                larger = family_radius(n, s - 1, a)
                rows.append({
                    "graph6": None,
                    "item": f"n={n} s={s} a={a:g}",
                    "n": 2 * n, "m": None, "value": value, "threshold": larger,
                    "verdict": CONFIRMED if larger - value > tol else VIOLATED,
                    "certificate_type": None,
                })
    return _finalize(
        theorem_id="matching_family_monotonicity",
        population=f"1 <= s < n/2, n <= {max_n}",
        rows=rows, tolerances={"tol": tol}, seed=None,
        config={"max_n": max_n})


# ---------------------------------------------------------------------------
# edge-deleted extremal graphs


def verify_edge_deletion_bound(n: int, delta: int, *,
                               margin: float = DEFAULT_MARGIN,
                               tol: float = DEFAULT_TOL, seed: int = 0,
                               deep_samples: int = 20) -> VerificationReport:
    """Deleting any edge of the matching-extremal graph while preserving the
    minimum degree drops the adjacency radius below sqrt(n(n-delta-1)).

    Enumerates both single-deletion types (a Y1-X2 edge or an X2-Y2 edge),
    checks the strict bound for each, confirms the X2-Y2 deletions stay
    spectrally above the Y1-X2 ones, and samples some double deletions.
    """
    guard = 0.5 * (delta**3 + delta**2 + 2 * delta + 8)
    if n < guard:
        raise GraphInputError(f"order {n} is below the guard {guard} for delta={delta}")
    ext = matching_extremal(n, delta)
    threshold = sqrt_threshold(n, delta)
    rows = []

    def radius_of(b: BipartiteGraph) -> float:
        return spectral_radius(a_matrix(b.to_graph(), 0.0), tol).radius

    ext_value = radius_of(ext)
    rows.append({
        "graph6": to_graph6(ext.to_graph()).decode("ascii"),
        "item": "extremal", "n": 2 * n, "m": ext.m, "value": ext_value,
        "threshold": threshold,
        "verdict": EXTREMAL if ext_value >= threshold - margin else VIOLATED,
        "certificate_type": None,
    })

    # deletion types preserving minimum degree: Y1 x X2 and X2 x Y2
    type1 = [(x, y) for x in range(delta + 1, n) for y in range(delta)]
    type2 = [(x, y) for x in range(delta + 1, n) for y in range(delta, n)]
    values = {1: [], 2: []}
    for kind, pairs in ((1, type1), (2, type2)):
        for x, y in pairs:
            h = ext.delete_edge(x, y)
            assert min_degree(h) == delta
            value = radius_of(h)
            values[kind].append(value)
            rows.append({
                "graph6": to_graph6(h.to_graph()).decode("ascii"),
                "item": f"delete_type{kind} x={x} y={y}", "n": 2 * n, "m": h.m,
                "value": value, "threshold": threshold,
                "verdict": CONFIRMED if value < threshold - margin else VIOLATED,
                "certificate_type": None,
            })
    rows.append({
        "graph6": None, "item": "type2_above_type1", "n": 2 * n, "m": None,
        "value": min(values[2]), "threshold": max(values[1]),
        "verdict": CONFIRMED if min(values[2]) > max(values[1]) else VIOLATED,
        "certificate_type": None,
    })

    rng = np.random.default_rng(seed)
    deletable = type1 + type2
    done = 0
    while done < deep_samples:
        picks = rng.choice(len(deletable), size=2, replace=False)
        h = ext
        try:
            for i in picks:
                h = h.delete_edge(*deletable[int(i)])
        except GraphInputError:
            continue
        if min_degree(h) != delta:
            continue
        value = radius_of(h)
        rows.append({
            "graph6": to_graph6(h.to_graph()).decode("ascii"),
            "item": f"deep_delete {sorted(deletable[int(i)] for i in picks)}",
            "n": 2 * n, "m": h.m, "value": value, "threshold": threshold,
            "verdict": CONFIRMED if value < threshold - margin else VIOLATED,
            "certificate_type": None,
        })
        done += 1

    return _finalize(
        theorem_id="edge_deletion_bound",
        population=f"single and sampled double edge deletions at n={n}, delta={delta}",
        rows=rows, tolerances={"tol": tol, "margin": margin}, seed=seed,
        config={"n": n, "delta": delta, "deep_samples": deep_samples})


# ---------------------------------------------------------------------------
# edge-count bounds


def _bounds_item(params: tuple, line: str) -> dict:
    tol, = params
    g = from_graph6(line)
    row = {"graph6": line, "n": g.n, "m": g.m, "value": None, "threshold": None,
           "verdict": VACUOUS, "certificate_type": None}
    if not is_connected(g):
        return row
    rho = spectral_radius(a_matrix(g, 0.0), tol).radius
    q = spectral_radius(a_matrix(g, 1.0), tol).radius
    hong = hong_bound(g)
    das = das_bound(g) if g.n >= 2 else math.inf
    row["value"] = rho
    row["threshold"] = hong
    row["q"] = q
    row["das"] = das
    ok = rho <= hong + tol and q <= das + tol
    row["verdict"] = CONFIRMED if ok else VIOLATED
    return row


def verify_bounds(stream: Iterable[Graph | str | bytes], *,
                  tol: float = DEFAULT_TOL, workers: int = 1) -> VerificationReport:
    """Edge-count bounds dominate both spectral radii on connected graphs."""
    lines = as_graph6_lines(stream)
    rows = _map_items(partial(_bounds_item, (tol,)), lines, workers)
    return _finalize(
        theorem_id="spectral_bounds",
        population=f"{len(lines)} streamed graphs",
        rows=rows, tolerances={"tol": tol}, seed=None,
        config={})
