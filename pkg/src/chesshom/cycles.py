"""Explicit cycles of matching and board complexes, and the chain maps of
the two long exact sequences.

Alpha and beta cycles are 0-dimensional rook differences; pentagons and
hexagons are the explicit 1-cycles used to decompose bottom homology; the
fundamental cycle rho_{A,B} generates the top homology of the pseudomanifold
M_{A,B} when |A| = |B| - 1.  Relation checks downstream run purely as
boundary-membership queries, so all identities here are stated up to the
ascending-label orientation convention of `core`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .core import (Chain, Complex, Vertex, boundary, graph_edge, plain,
                   primed, rook, wedge, wedge_all)
from .boards import (b_board, board_complex, chessboard_complex, chessboard_on,
                     matching_complex)

INF = float("inf")


@dataclass(frozen=True)
class NamedCycle:
    """A cycle together with the complex it lives in and how it was built."""

    chain: Chain
    ambient: Complex
    provenance: str

    def __post_init__(self):
        if not boundary(self.chain).is_zero():
            raise ValueError(f"{self.provenance}: chain is not a cycle")
        if not self.ambient.contains_chain(self.chain):
            raise ValueError(f"{self.provenance}: chain not supported on ambient complex")


def _alpha_chain(i: int, k: int, l: int) -> Chain:
    if k == l:
        raise ValueError("alpha cycle needs two distinct columns")
    return Chain.simplex([rook(i, k)]) - Chain.simplex([rook(i, l)])


def _beta_chain(i: int, j: int, k: int) -> Chain:
    if i == j:
        raise ValueError("beta cycle needs two distinct rows")
    return Chain.simplex([rook(i, k)]) - Chain.simplex([rook(j, k)])


def alpha(i: int, k: int, l: int) -> NamedCycle:
    """The 0-cycle ik' - il' (one row, two columns)."""
    return NamedCycle(_alpha_chain(i, k, l), chessboard_on([i], [k, l]),
                      f"alpha({i},{k}',{l}')")


def beta(i: int, j: int, k: int) -> NamedCycle:
    """The 0-cycle ik' - jk' (two rows, one column)."""
    return NamedCycle(_beta_chain(i, j, k), chessboard_on([i, j], [k]),
                      f"beta({i},{j},{k}')")


def pentagon(a: int, b: int, r: int) -> NamedCycle:
    """The 5-term 1-cycle on ground set {1, 2, a, b, r}."""
    labels = {a, b, r}
    if len(labels) != 3 or labels & {1, 2}:
        raise ValueError("pentagon labels must be three distinct values outside {1,2}")
    e = graph_edge
    chain = (Chain.simplex([e(1, a), e(2, b)])
             + Chain.simplex([e(2, b), e(r, a)])
             + Chain.simplex([e(r, a), e(1, 2)])
             + Chain.simplex([e(1, 2), e(r, b)])
             + Chain.simplex([e(r, b), e(1, a)]))
    return NamedCycle(chain, matching_complex({1, 2, a, b, r}),
                      f"pentagon({a},{b},{r})")


def hexagon_u(i1: int, i2: int, j1: int, j2: int, j3: int) -> NamedCycle:
    """The 6-term 1-cycle on two rows and three columns."""
    if len({i1, i2}) != 2 or len({j1, j2, j3}) != 3:
        raise ValueError("hexagon_u needs 2 distinct rows and 3 distinct columns")
    chain = (Chain.simplex([rook(i1, j1), rook(i2, j2)])
             + Chain.simplex([rook(i2, j2), rook(i1, j3)])
             + Chain.simplex([rook(i1, j3), rook(i2, j1)])
             + Chain.simplex([rook(i2, j1), rook(i1, j2)])
             + Chain.simplex([rook(i1, j2), rook(i2, j3)])
             + Chain.simplex([rook(i2, j3), rook(i1, j1)]))
    return NamedCycle(chain, chessboard_on([i1, i2], [j1, j2, j3]),
                      f"u({i1},{i2},{j1}',{j2}',{j3}')")


def hexagon_v(i1: int, i2: int, i3: int, j1: int, j2: int) -> NamedCycle:
    """The 6-term 1-cycle on three rows and two columns."""
    if len({i1, i2, i3}) != 3 or len({j1, j2}) != 2:
        raise ValueError("hexagon_v needs 3 distinct rows and 2 distinct columns")
    chain = (Chain.simplex([rook(i1, j1), rook(i2, j2)])
             + Chain.simplex([rook(i2, j2), rook(i3, j1)])
             + Chain.simplex([rook(i3, j1), rook(i1, j2)])
             + Chain.simplex([rook(i1, j2), rook(i2, j1)])
             + Chain.simplex([rook(i2, j1), rook(i3, j2)])
             + Chain.simplex([rook(i3, j2), rook(i1, j1)]))
    return NamedCycle(chain, chessboard_on([i1, i2, i3], [j1, j2]),
                      f"v({i1},{i2},{i3},{j1}',{j2}')")


# ---------------------------------------------------------------------------
# rook words and fundamental cycles


def tau_chain(word: Sequence, positions: Sequence[int] | None = None) -> Chain:
    """Oriented simplex of a rook word, as a canonical chain.

    Letter x at position p contributes the rook (x, p); INF letters are
    dropped.  Vertices are taken in increasing position order, then
    canonicalized.
    """
    if positions is None:
        positions = range(1, len(word) + 1)
    vs = [rook(x, p) for x, p in zip(word, positions) if x != INF]
    return Chain.simplex(vs)


def _perm_sign(seq: Sequence, reference: Sequence) -> int:
    index = {x: i for i, x in enumerate(reference)}
    perm = [index[x] for x in seq]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def rho_chain(rows: Iterable[int], cols: Iterable[int]) -> Chain:
    """Fundamental cycle of the pseudomanifold on |A| rows and |A|+1 columns.

    Sum over all placements of the letters A + [INF] into the sorted column
    positions.  A placement is signed by the parity of the number of columns
    after the empty (INF-marked) one; adjacent placements differ by moving
    one rook into the empty column, and this weighting makes every
    codimension-1 face cancel, so the sum is a cycle.  For |A| = 1 it
    reduces to the alpha cycle ik' - il' exactly.
    """
    rows = sorted(set(rows))
    cols = sorted(set(cols))
    if len(rows) != len(cols) - 1 or not cols:
        raise ValueError("fundamental cycle needs |rows| = |cols| - 1 >= 0")
    letters = rows + [INF]
    total = Chain(len(rows) - 1)
    last = len(cols) - 1
    for arrangement in permutations(letters):
        sign = -1 if (last - arrangement.index(INF)) % 2 else 1
        total = total + sign * tau_chain(arrangement, cols)
    return total


def rho_fundamental(rows: Iterable[int], cols: Iterable[int]) -> NamedCycle:
    rows = sorted(set(rows))
    cols = sorted(set(cols))
    return NamedCycle(rho_chain(rows, cols), chessboard_on(rows, cols),
                      f"rho({set(rows)},{set(cols)})")


# ---------------------------------------------------------------------------
# named generators


def z_cycle() -> NamedCycle:
    """The 3-torsion 1-cycle (13,24) + (24,15) + (15,26) + (26,13) in M_7."""
    e = graph_edge
    chain = (Chain.simplex([e(1, 3), e(2, 4)])
             + Chain.simplex([e(2, 4), e(1, 5)])
             + Chain.simplex([e(1, 5), e(2, 6)])
             + Chain.simplex([e(2, 6), e(1, 3)]))
    return NamedCycle(chain, matching_complex(7), "z7")


def bottom_generator_matching(n: int, sigma: Sequence[int] | None = None) -> NamedCycle:
    """Generator of the bottom homology of M_n for n = 0,1 mod 3.

    The wedge of edge-differences
    (s(1)s(2) - s(1)s(3)) ^ (s(4)s(5) - s(4)s(6)) ^ ... through s(N),
    N = 3*floor(n/3), for a permutation s of [n] (identity by default).
    """
    if n % 3 == 2:
        raise ValueError("generator family needs n = 0,1 mod 3")
    if n < 3:
        raise ValueError("need n >= 3")
    s = list(sigma) if sigma is not None else list(range(1, n + 1))
    if sorted(s) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of [n]")
    big_n = 3 * (n // 3)
    factors = []
    for b in range(0, big_n, 3):
        x, y, z = s[b], s[b + 1], s[b + 2]
        factors.append(Chain.simplex([graph_edge(x, y)])
                       - Chain.simplex([graph_edge(x, z)]))
    return NamedCycle(wedge_all(factors), matching_complex(n),
                      f"lemma2.5(n={n})")


def blvz_witness(m: int, n: int) -> NamedCycle:
    """Interleaved alpha/beta wedge witnessing nonvanishing bottom homology
    of M_{m,n} when m + n = 0 mod 3 and m <= n <= 2m-1."""
    if (m + n) % 3 != 0:
        raise ValueError(f"needs m+n = 0 mod 3, got m+n = {m + n}")
    if not m <= n:
        raise ValueError("needs m <= n (transpose the board first)")
    if n > 2 * m - 1:
        raise ValueError(f"needs n <= 2m-1, got n = {n} > {2 * m - 1}")
    k = (2 * n - m) // 3
    factors = [_alpha_chain(i, 2 * i - 1, 2 * i) for i in range(1, k + 1)]
    for idx, col in enumerate(range(2 * k + 1, n + 1)):
        r = k + 2 * idx + 1
        factors.append(_beta_chain(r, r + 1, col))
    return NamedCycle(wedge_all(factors), chessboard_complex(m, n),
                      f"blvz-witness({m},{n})")


def thm_order3_generator(m: int, n: int) -> NamedCycle:
    """The generator of the cyclic order-3 bottom homology of M_{m,n}
    for m + n = 1 mod 3 and m <= n <= 2m-5."""
    if (m + n) % 3 != 1:
        raise ValueError(f"needs m+n = 1 mod 3, got m+n = {m + n}")
    if not m <= n:
        raise ValueError("needs m <= n")
    if n > 2 * m - 5:
        raise ValueError(f"needs n <= 2m-5, got n = {n} > {2 * m - 5}")
    t = (2 * n - m + 1) // 3
    factors = [_alpha_chain(i, 2 * i - 1, 2 * i) for i in range(1, t + 1)]
    for idx, col in enumerate(range(2 * t + 1, n + 1)):
        r = t + 2 * idx + 1
        factors.append(_beta_chain(r, r + 1, col))
    return NamedCycle(wedge_all(factors), chessboard_complex(m, n),
                      f"thm5.6({m},{n})")


def lemma81_witness(n: int) -> NamedCycle:
    """Witness cycle on the staircase board b_board(n).

    For n = 0,2 mod 3 it is the displayed alternating alpha/beta wedge; for
    n = 1 mod 3 the remainder block is a full 4x4 board and the wedge is
    completed by an explicit 2-cycle supported there.
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    r = n % 3
    factors: list[Chain] = []
    if r == 0:
        for i in range(1, n - 1, 3):
            factors.append(_alpha_chain(i, i, i + 1))
            factors.append(_beta_chain(i + 1, i + 2, i + 2))
    elif r == 2:
        for i in range(1, n - 3, 3):
            factors.append(_alpha_chain(i, i, i + 1))
            factors.append(_beta_chain(i + 1, i + 2, i + 2))
        factors.append(_alpha_chain(n - 1, n - 1, n))
    else:
        for i in range(1, n - 5, 3):
            factors.append(_alpha_chain(i, i, i + 1))
            factors.append(_beta_chain(i + 1, i + 2, i + 2))
        # 2-cycle on the 4x4 remainder block rows/cols n-3..n
        u = hexagon_u(n - 3, n - 2, n - 3, n - 2, n - 1).chain
        factors.append(wedge(u, _beta_chain(n - 1, n, n)))
    return NamedCycle(wedge_all(factors), board_complex(b_board(n)),
                      f"lemma8.1({n})")


def named_generator(kind: str, **params) -> NamedCycle:
    """CLI-facing registry of the named cycle constructions."""
    builders = {
        "z7": lambda: z_cycle(),
        "pentagon": lambda: pentagon(params["a"], params["b"], params["r"]),
        "hexagon-u": lambda: hexagon_u(params["i1"], params["i2"], params["j1"],
                                       params["j2"], params["j3"]),
        "hexagon-v": lambda: hexagon_v(params["i1"], params["i2"], params["i3"],
                                       params["j1"], params["j2"]),
        "rho": lambda: rho_fundamental(params["rows"], params["cols"]),
        "thm5.6": lambda: thm_order3_generator(params["m"], params["n"]),
        "lemma2.5": lambda: bottom_generator_matching(params["n"], params.get("sigma")),
        "blvz-witness": lambda: blvz_witness(params["m"], params["n"]),
        "lemma8.1": lambda: lemma81_witness(params["n"]),
    }
    if kind not in builders:
        raise ValueError(f"unknown cycle kind {kind!r}; known: {sorted(builders)}")
    return builders[kind]()


# ---------------------------------------------------------------------------
# long exact sequence chain maps


@dataclass(frozen=True)
class LesMapSpec:
    """Which summand map of a long exact sequence to apply.

    family "matching" distinguishes ground-set elements 1, 2 of [n]; family
    "chessboard" distinguishes row 1 and column 1 of [m] x [n]'.  `indices`
    is (a, i) for the matching phi, ("row", i) or ("col", j) for the
    chessboard phi, and (i, j) for either psi / delta.
    """

    family: str
    size: tuple[int, ...]
    indices: tuple

    def __post_init__(self):
        if self.family not in ("matching", "chessboard"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "matching" and len(self.size) != 1:
            raise ValueError("matching maps take size=(n,)")
        if self.family == "chessboard" and len(self.size) != 2:
            raise ValueError("chessboard maps take size=(m, n)")


def _check_support_matching(z: Chain, allowed: set[int]) -> None:
    atoms = {a for a in z.atoms()}
    bad = atoms - {plain(i) for i in allowed}
    if bad:
        raise ValueError("chain supported outside the map's ground set")


def _check_support_chess(z: Chain, rows: set[int], cols: set[int]) -> None:
    good = {plain(i) for i in rows} | {primed(j) for j in cols}
    if z.atoms() - good:
        raise ValueError("chain supported outside the map's ground set")


def les_phi(spec: LesMapSpec, z: Chain) -> Chain:
    """Chain-level phi: wedge with the distinguished 0-cycle of the summand."""
    if spec.family == "matching":
        (n,), (a, i) = spec.size, spec.indices
        if a not in (1, 2) or not 3 <= i <= n:
            raise ValueError(f"phi indices out of range: a={a}, i={i}")
        _check_support_matching(z, set(range(1, n + 1)) - {1, 2, i})
        head = Chain.simplex([graph_edge(a, i)]) - Chain.simplex([graph_edge(1, 2)])
        return wedge(head, z)
    (m, n), (side, idx) = spec.size, spec.indices
    if side == "row":
        if not 2 <= idx <= m:
            raise ValueError(f"row index out of range: {idx}")
        _check_support_chess(z, set(range(2, m + 1)) - {idx}, set(range(2, n + 1)))
        head = Chain.simplex([rook(1, 1)]) - Chain.simplex([rook(idx, 1)])
    elif side == "col":
        if not 2 <= idx <= n:
            raise ValueError(f"column index out of range: {idx}")
        _check_support_chess(z, set(range(2, m + 1)), set(range(2, n + 1)) - {idx})
        head = Chain.simplex([rook(1, 1)]) - Chain.simplex([rook(1, idx)])
    else:
        raise ValueError("chessboard phi indices are ('row', i) or ('col', j)")
    return wedge(head, z)


def _strip_pair(z: Chain, first: Vertex, second: Vertex) -> Chain:
    """Termwise: coefficient of (first ^ second ^ y) contributes to y."""
    from .core import canonical_orient
    terms: dict = {}
    for s, c in z.items():
        if first in s and second in s:
            rest = tuple(v for v in s if v != first and v != second)
            _, sign = canonical_orient((first, second) + rest)
            terms[rest] = terms.get(rest, 0) + c * sign
    return Chain(z.degree - 2, {s: c for s, c in terms.items() if c})


def les_psi(spec: LesMapSpec, z: Chain) -> Chain:
    """Chain-level psi, applied termwise with 0 on non-matching terms."""
    if spec.family == "matching":
        (n,), (i, j) = spec.size, spec.indices
        if i == j or not (3 <= i <= n and 3 <= j <= n):
            raise ValueError(f"psi indices out of range: ({i},{j})")
        _check_support_matching(z, set(range(1, n + 1)))
        return _strip_pair(z, graph_edge(1, i), graph_edge(2, j))
    (m, n), (i, j) = spec.size, spec.indices
    if not (2 <= i <= m and 2 <= j <= n):
        raise ValueError(f"psi indices out of range: ({i},{j})")
    _check_support_chess(z, set(range(1, m + 1)), set(range(1, n + 1)))
    return _strip_pair(z, rook(1, j), rook(i, 1))


def les_delta(spec: LesMapSpec, z: Chain) -> dict[tuple, Chain]:
    """Connecting map images, keyed by target summand; zero summands omitted."""
    if spec.family == "matching":
        (n,), (i, j) = spec.size, spec.indices
        if i == j or not (3 <= i <= n and 3 <= j <= n):
            raise ValueError(f"delta indices out of range: ({i},{j})")
        _check_support_matching(z, set(range(1, n + 1)) - {1, 2, i, j})
        if z.is_zero():
            return {}
        return {(1, i): z, (2, j): -z}
    (m, n), (i, j) = spec.size, spec.indices
    if not (2 <= i <= m and 2 <= j <= n):
        raise ValueError(f"delta indices out of range: ({i},{j})")
    _check_support_chess(z, set(range(2, m + 1)) - {i}, set(range(2, n + 1)) - {j})
    if z.is_zero():
        return {}
    return {("row", i): -z, ("col", j): z}
