"""Constructors for matching, chessboard, and general board complexes.

The connectivity parameters live here too:

    nu_matching(n)  = floor((n+1)/3) - 1
    nu_chess(m, n)  = min(m, n, floor((m+n+1)/3)) - 1

with the usual case split for m <= n: the floor branch applies when
n <= 2m-1, otherwise the value is m-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Atom, Complex, Vertex, graph_edge, plain, primed, rook, vertex


@dataclass(frozen=True)
class BoardMask:
    """A set of allowed cells inside an m x n board (1-based coordinates)."""

    m: int
    n: int
    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("board dimensions must be positive")
        for i, j in self.cells:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise ValueError(f"cell ({i},{j}) outside {self.m}x{self.n} board")

    def __len__(self) -> int:
        return len(self.cells)

    def contains(self, other: "BoardMask") -> bool:
        return other.cells <= self.cells


def full_mask(m: int, n: int) -> BoardMask:
    return BoardMask(m, n, frozenset((i, j) for i in range(1, m + 1)
                                     for j in range(1, n + 1)))


def diagonal_deleted(n: int) -> BoardMask:
    """The n x n board with the cells (1,1), ..., (n,n) removed."""
    if n < 2:
        raise ValueError("diagonal-deleted board needs n >= 2")
    cells = frozenset((i, j) for i in range(1, n + 1)
                      for j in range(1, n + 1) if i != j)
    return BoardMask(n, n, cells)


def gamma_board(n: int, k: int) -> BoardMask:
    """Cells of the n x n board within bandwidth k: |j - i| <= k."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"bandwidth must satisfy 0 <= k <= n-1, got k={k}, n={n}")
    cells = frozenset((i, j) for i in range(1, n + 1)
                      for j in range(1, n + 1) if abs(j - i) <= k)
    return BoardMask(n, n, cells)


def b_board(n: int) -> BoardMask:
    """The staircase-with-remainder board whose complex witnesses
    nonvanishing homology in degree nu_matching(2n).

    Built from blocks S_i = {(3i+1,3i+1), (3i+1,3i+2), (3i+2,3i+3),
    (3i+3,3i+3)} for i = 0..N plus a remainder block R_n, where N and R_n
    depend on n mod 3.
    """
    if n < 3:
        raise ValueError("b_board needs n >= 3")
    r = n % 3
    if r == 0:
        upper = (n - 3) // 3
        rest: set[tuple[int, int]] = set()
    elif r == 2:
        upper = (n - 5) // 3
        rest = {(n - 1, n - 1), (n - 1, n)}
    else:
        upper = (n - 7) // 3
        rest = {(i, j) for i in range(n - 3, n + 1) for j in range(n - 3, n + 1)}
    cells: set[tuple[int, int]] = set(rest)
    for i in range(0, upper + 1):
        b = 3 * i
        cells.update([(b + 1, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b + 3)])
    return BoardMask(n, n, frozenset(cells))


def permute_mask(mask: BoardMask,
                 row_perm: Mapping[int, int] | Sequence[int] | None = None,
                 col_perm: Mapping[int, int] | Sequence[int] | None = None) -> BoardMask:
    """Relabel rows/columns of a mask by permutations of [m] and [n].

    Sequences are read as 1-based images: perm[i-1] is where row i goes.
    """
    def lookup(perm, i):
        if perm is None:
            return i
        if isinstance(perm, Mapping):
            return perm[i]
        return perm[i - 1]

    cells = frozenset((lookup(row_perm, i), lookup(col_perm, j))
                      for i, j in mask.cells)
    if len(cells) != len(mask.cells):
        raise ValueError("permutation collapsed cells; not a bijection")
    return BoardMask(mask.m, mask.n, cells)


def parse_mask(text: str) -> BoardMask:
    """Mask file format: first line 'm n', then one 'i j' cell per line.

    Blank lines and '#' comments are ignored.
    """
    header: tuple[int, int] | None = None
    cells = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected two integers per line, got {raw!r}")
        a, b = int(parts[0]), int(parts[1])
        if header is None:
            header = (a, b)
        else:
            cells.add((a, b))
    if header is None:
        raise ValueError("empty mask file")
    return BoardMask(header[0], header[1], frozenset(cells))


def load_mask(path) -> BoardMask:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mask(fh.read())


def format_mask(mask: BoardMask) -> str:
    lines = [f"{mask.m} {mask.n}"]
    lines.extend(f"{i} {j}" for i, j in sorted(mask.cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# complexes


def _as_atom(label) -> Atom:
    if isinstance(label, int):
        return plain(label)
    if (isinstance(label, tuple) and len(label) == 2
            and label[0] in (0, 1) and isinstance(label[1], int)):
        return label
    raise ValueError(f"cannot read {label!r} as a ground-set element")


def matching_complex(labels: int | Iterable, name: str | None = None) -> Complex:
    """Matching complex of the complete graph on the given ground set.

    An int n means the ground set [n] = {1..n}; otherwise an iterable of
    ints and/or primed atoms (so the complete graph on [m] and [n]' that
    contains a chessboard complex is available directly).
    """
    if isinstance(labels, int):
        atoms = [plain(i) for i in range(1, labels + 1)]
        default_name = f"M_{labels}"
    else:
        atoms = sorted({_as_atom(x) for x in labels})
        default_name = "M_{" + ",".join(str(a[1]) + ("'" if a[0] else "") for a in atoms) + "}"
    verts = [vertex(a, b) for k, a in enumerate(atoms) for b in atoms[k + 1:]]
    return Complex(verts, name=name or default_name)


def board_complex(mask: BoardMask, name: str | None = None) -> Complex:
    """Complex of nontaking rook placements on the cells of a mask."""
    if not mask.cells:
        raise ValueError("board mask has no cells")
    verts = [rook(i, j) for i, j in sorted(mask.cells)]
    return Complex(verts, name=name or f"M(board {mask.m}x{mask.n}, {len(mask)} cells)")


def chessboard_complex(m: int, n: int, name: str | None = None) -> Complex:
    """Chessboard complex M_{m,n}: nontaking rooks on the full m x n board."""
    if m < 1 or n < 1:
        raise ValueError("chessboard dimensions must be positive")
    return board_complex(full_mask(m, n), name=name or f"M_{{{m},{n}}}")


def chessboard_on(rows: Iterable[int], cols: Iterable[int],
                  name: str | None = None) -> Complex:
    """Chessboard complex on arbitrary row and column label sets."""
    rows = sorted(set(rows))
    cols = sorted(set(cols))
    verts = [vertex(plain(i), primed(j)) for i in rows for j in cols]
    return Complex(verts, name=name or f"M_{{{set(rows)},{set(cols)}'}}")


def matching_on_edges(edges: Iterable[tuple[int, int]], name: str = "") -> Complex:
    """Complex of matchings of an explicit graph on plain atoms."""
    verts = [graph_edge(i, j) for i, j in edges]
    return Complex(verts, name=name or "M(graph)")


def skeleton(c: Complex, d: int) -> Complex:
    return c.skeleton(d)


def nu_matching(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) // 3 - 1


def nu_chess(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    return min(m, n, (m + n + 1) // 3) - 1


def nu_chess_branch(m: int, n: int) -> str:
    """Which branch of the case analysis applies for m <= n (after sorting)."""
    m, n = min(m, n), max(m, n)
    return "floor" if n <= 2 * m - 1 else "side"
