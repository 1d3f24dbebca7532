"""Recursive matching partitions, the induced discrete Morse matching and
shelling order on the skeleton of the matching complex, and rank bounds.

A matching G on [n] is partitioned into blocks by repeatedly taking the two
smallest uncovered elements a, b and grouping them with their neighbors;
block sizes are at most 4, and a block of size two is either a matched pair
or two isolated vertices.  The first size-two block drives the Morse
pairing: removing or adding its edge pairs cells, and cells whose partition
has no size-two block are critical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import Complex, Simplex, graph_edge
from .boards import matching_complex, nu_matching

Edge = tuple[int, int]
Matching = tuple[Edge, ...]  # sorted tuple of sorted pairs


def _as_matching(edges: Iterable[Sequence[int]], n: int) -> Matching:
    out = []
    seen: set[int] = set()
    for e in edges:
        a, b = sorted(e)
        if a == b or not (1 <= a <= n and b <= n):
            raise ValueError(f"bad edge {tuple(e)} on [{n}]")
        if a in seen or b in seen:
            raise ValueError(f"edges are not a matching: vertex reuse at {tuple(e)}")
        seen.update((a, b))
        out.append((a, b))
    return tuple(sorted(out))


@dataclass(frozen=True)
class MorsePartition:
    """Ordered blocks (V_i, E_i) covering [n]."""

    blocks: tuple[tuple[tuple[int, ...], tuple[Edge, ...]], ...]

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(v) for v, _ in self.blocks)

    def check_invariants(self, n: int) -> None:
        seen: set[int] = set()
        for idx, (verts, edges) in enumerate(self.blocks):
            if len(verts) > 4:
                raise AssertionError("block larger than 4 vertices")
            if len(verts) <= 1 and idx + 1 < len(self.blocks):
                raise AssertionError("singleton block before the end")
            if len(verts) != 2 and len(edges) != len(verts) // 2:
                raise AssertionError("block edge count violates floor(|V|/2)")
            if seen & set(verts):
                raise AssertionError("blocks overlap")
            seen.update(verts)
        if seen != set(range(1, n + 1)):
            raise AssertionError("blocks do not cover [n]")


def rho_partition(edges: Iterable[Sequence[int]], n: int) -> MorsePartition:
    """The deterministic recursive partition of a matching on [n]."""
    matching = _as_matching(edges, n)
    neighbor = {}
    for a, b in matching:
        neighbor[a] = b
        neighbor[b] = a
    covered: set[int] = set()
    blocks = []
    while True:
        rest = [v for v in range(1, n + 1) if v not in covered]
        if not rest:
            break
        if len(rest) == 1:
            blocks.append(((rest[0],), ()))
            break
        a, b = rest[0], rest[1]
        verts = {a, b}
        if a in neighbor:
            verts.add(neighbor[a])
        if b in neighbor:
            verts.add(neighbor[b])
        edge_set = tuple(sorted((x, y) for x, y in matching
                                if x in verts and y in verts))
        blocks.append((tuple(sorted(verts)), edge_set))
        covered.update(verts)
    return MorsePartition(tuple(blocks))


def mu(edges: Iterable[Sequence[int]], n: int) -> float:
    """Index of the first size-two block, or infinity when none exists."""
    part = rho_partition(edges, n)
    for i, (verts, _) in enumerate(part.blocks, start=1):
        if len(verts) == 2:
            return i
    return math.inf


def is_critical(edges: Iterable[Sequence[int]], n: int) -> bool:
    return mu(edges, n) == math.inf


def lambda_of(edges: Iterable[Sequence[int]], n: int) -> tuple[int, ...]:
    """Block-size partition of n, sorted decreasingly."""
    return tuple(sorted(rho_partition(edges, n).block_sizes(), reverse=True))


def critical_pattern(n: int) -> tuple[int, ...]:
    """Block-size pattern of the critical cells in the bottom nonvanishing
    dimension: all threes, threes and a one, or a four, threes, and a one."""
    r = n % 3
    if r == 0:
        return tuple([3] * (n // 3))
    if r == 1:
        return tuple([3] * (n // 3) + [1])
    return tuple([4] + [3] * ((n - 5) // 3) + [1])


def critical_count_formula(n: int) -> int:
    """Closed-form count of critical cells in dimension nu_matching(n)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    r = n % 3
    if r == 0:
        k = n // 3
        out = 2 ** k
        for j in range(1, k + 1):
            out *= n - 3 * j + 1
        return out
    if r == 1:
        k = (n - 1) // 3
        out = 2 ** k
        for j in range(1, k + 1):
            out *= n - 3 * j + 1
        return out
    kmax = (n - 2) // 3
    total = 0
    for k in range(1, kmax + 1):
        term = 1
        for j in range(1, k + 1):
            term *= n - 3 * j + 1
        for j in range(k, kmax + 1):
            term *= n - 3 * j
        total += term
    return total * 2 ** ((n - 5) // 3)


def all_matchings(n: int, max_edges: int | None = None) -> list[Matching]:
    """Every nonempty matching of K_n with at most max_edges edges."""
    limit = n // 2 if max_edges is None else min(max_edges, n // 2)
    out: list[Matching] = []

    def extend(current: list[Edge], used: set[int], start: int):
        if current:
            out.append(tuple(current))
        if len(current) == limit:
            return
        for a in range(start, n + 1):
            if a in used:
                continue
            for b in range(a + 1, n + 1):
                if b in used:
                    continue
                current.append((a, b))
                used.update((a, b))
                extend(current, used, a + 1)
                used.difference_update((a, b))
                current.pop()

    extend([], set(), 1)
    return sorted(out)


@dataclass
class MorseMatchingReport:
    n: int
    max_dim: int
    pairs: list[tuple[Matching, Matching]]
    critical_by_dim: dict[int, int]
    unpaired: int          # cells whose partner lies above the dimension cap
    acyclic: bool
    first_cycle: list | None = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_dim": self.max_dim,
            "pair_count": len(self.pairs),
            "critical_by_dim": {str(k): v for k, v in sorted(self.critical_by_dim.items())},
            "unpaired_at_cap": self.unpaired,
            "acyclic": self.acyclic,
            "first_cycle": self.first_cycle,
        }


def morse_pairs(n: int, d: int | None = None) -> MorseMatchingReport:
    """Morse pairing and acyclicity over the cells of dimension <= d."""
    full = n // 2 - 1
    if d is None:
        d = full
    cells = all_matchings(n, max_edges=d + 1)
    pair_down: dict[Matching, Matching] = {}
    critical: dict[int, int] = {}
    unpaired = 0
    for g in cells:
        part = rho_partition(g, n)
        first_two = None
        for (verts, edges) in part.blocks:
            if len(verts) == 2:
                first_two = (verts, edges)
                break
        if first_two is None:
            dim = len(g) - 1
            critical[dim] = critical.get(dim, 0) + 1
            continue
        verts, edges = first_two
        if edges:
            g_minus = tuple(e for e in g if e != edges[0])
            if g_minus:
                pair_down[g] = g_minus
            else:
                # the pair partner would be the empty face; cells of X_n with a
                # single edge pair with the empty matching, outside our cells
                unpaired += 1
        else:
            partner = tuple(sorted(g + ((verts[0], verts[1]),)))
            if len(partner) - 1 > d:
                unpaired += 1
    # verify the pairing is a matching on cells
    targets = list(pair_down.values())
    if len(set(targets)) != len(targets):
        raise AssertionError("a cell received two pairing partners")
    acyclic = True
    first_cycle = None
    for k in range(0, d):
        ok, cyc = _slice_acyclic(n, k, pair_down, cells)
        if not ok:
            acyclic = False
            first_cycle = cyc
            break
    return MorseMatchingReport(n=n, max_dim=d, pairs=sorted(pair_down.items()),
                               critical_by_dim=critical, unpaired=unpaired,
                               acyclic=acyclic, first_cycle=first_cycle)


def _slice_acyclic(n: int, k: int, pair_down: Mapping[Matching, Matching],
                   cells: Sequence[Matching]) -> tuple[bool, list | None]:
    """V-path digraph on k-cells: F1 -> F2 when F1 pairs up to H and F2 < H."""
    up = {low: high for high, low in pair_down.items() if len(low) == k + 1}
    succ: dict[Matching, list[Matching]] = {}
    for low, high in up.items():
        succ[low] = [tuple(sorted(set(high) - {e})) for e in high
                     if tuple(sorted(set(high) - {e})) != low]
    state: dict[Matching, int] = {}

    def dfs(v: Matching) -> list | None:
        stack = [(v, iter(succ.get(v, ())))]
        state[v] = 1
        path = [v]
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                if w not in up:
                    continue
                s = state.get(w, 0)
                if s == 1:
                    return path + [w]
                if s == 0:
                    state[w] = 1
                    path.append(w)
                    stack.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()
                path.pop()
        return None

    for v in succ:
        if state.get(v, 0) == 0:
            cyc = dfs(v)
            if cyc is not None:
                return False, [[list(e) for e in g] for g in cyc]
    return True, None


def critical_cells_nu(n: int) -> list[Matching]:
    """Enumerated critical cells of dimension nu_matching(n), cross-checked
    against the block-size pattern criterion."""
    nu = nu_matching(n)
    by_mu = [g for g in all_matchings(n, max_edges=nu + 1)
             if len(g) == nu + 1 and is_critical(g, n)]
    pattern = critical_pattern(n)
    by_pattern = [g for g in all_matchings(n, max_edges=nu + 1)
                  if len(g) == nu + 1 and lambda_of(g, n) == pattern]
    if by_mu != by_pattern:
        raise AssertionError("mu-criterion and block-pattern census disagree")
    return by_mu


# ---------------------------------------------------------------------------
# shelling


def _block_key(block):
    verts, edges = block
    return (len(verts), len(edges), verts, edges)


def lex_facet_order(n: int) -> list[Simplex]:
    """Deterministic linear extension of the lexicographic partition order
    on the facets of the nu_matching(n)-skeleton."""
    nu = nu_matching(n)
    facets = [g for g in all_matchings(n, max_edges=nu + 1) if len(g) == nu + 1]
    facets.sort(key=lambda g: tuple(_block_key(b) for b in rho_partition(g, n).blocks))
    return [tuple(graph_edge(a, b) for a, b in g) for g in facets]


def verify_shelling(complex_: Complex, order: Sequence[Simplex]) -> tuple[bool, list[Simplex]]:
    """Check the codimension-1 prefix condition; emit restriction faces.

    For each facet F_i, every intersection with an earlier facet must lie
    inside an intersection of size |F_i| - 1; R_i collects the vertices
    whose deletion stays in the earlier union.
    """
    dim = complex_.dim
    expected = sorted(complex_.faces(dim))
    got = sorted(order)
    if got != expected:
        raise ValueError("order is not a permutation of the facets")
    restrictions: list[Simplex] = []
    seen: list[set] = []
    for idx, facet in enumerate(order):
        fset = set(facet)
        if idx == 0 or len(facet) == 1:
            restrictions.append(())
            seen.append(fset)
            continue
        inters = {frozenset(fset & earlier) for earlier in seen}
        inters.discard(frozenset(fset))
        maximal = [s for s in inters
                   if not any(s < t for t in inters)]
        if any(len(s) != len(facet) - 1 for s in maximal) or not maximal:
            return False, restrictions
        codim1 = {s for s in inters if len(s) == len(facet) - 1}
        rest = tuple(v for v in facet if frozenset(fset - {v}) in codim1)
        restrictions.append(rest)
        seen.append(fset)
    return True, restrictions


# ---------------------------------------------------------------------------
# rank bounds


class BoundsError(ValueError):
    """A bound branch was requested outside its hypothesis."""


def rank_bounds_matching(n: int, known_ranks: Mapping[int, int]) -> tuple[int, int]:
    """Lower/upper bounds on the rank of the bottom nonvanishing homology
    of M_n, using ranks of smaller complexes where the recurrences need them.
    """
    if n < 2:
        raise BoundsError("bounds start at n = 2")
    if n == 2:
        return 0, 0
    r = n % 3
    upper = critical_count_formula(n)
    lower = 1
    if r == 0:
        lower = n - 1
        if n - 3 in known_ranks:
            upper = min(upper, 2 * (n - 2) * known_ranks[n - 3])
    elif r == 1:
        if n >= 7:
            lower, upper = 1, 1
    else:
        if n >= 8:
            if n - 2 not in known_ranks:
                raise BoundsError(f"lower bound at n={n} needs the rank at n-2")
            lower = (n - 1) * known_ranks[n - 2] - 1
        if n >= 11 and n - 3 in known_ranks:
            upper = min(upper, 2 * (n - 2) * known_ranks[n - 3]
                        + (n - 2) * (n - 3))
    return lower, upper


def rank_bounds_chess(m: int, n: int,
                      known_ranks: Mapping[tuple[int, int], int]) -> tuple[int, int]:
    """Lower/upper bounds on the rank of the bottom nonvanishing homology of
    M_{m,n} (m <= n).  Branches outside their hypotheses raise BoundsError.
    """
    if m > n:
        raise BoundsError("needs m <= n (transpose first)")
    if m + n < 3:
        return 0, 0
    r = (m + n) % 3

    def known(a, b):
        key = (a, b) if (a, b) in known_ranks else (b, a)
        if key not in known_ranks:
            raise BoundsError(f"bound at ({m},{n}) needs the rank at ({a},{b})")
        return known_ranks[key]

    lower = 1
    upper = None
    if r == 1:
        if n <= 2 * m - 5:
            return 1, 1
        raise BoundsError(f"({m},{n}): no branch applies (m+n = 1 mod 3 needs n <= 2m-5)")
    if not (m <= n < 2 * m - 1):
        raise BoundsError(f"({m},{n}): recurrence needs m <= n < 2m-1")
    base = (m - 1) * known(m - 2, n - 1) + (n - 1) * known(m - 1, n - 2)
    if r == 0:
        upper = base
        if n <= 2 * m - 3:
            lower = n
    else:
        upper = base + (m - 1) * (n - 1)
        if n <= 2 * m - 7:
            lower = n * (n - 1) - 1
    return lower, upper
