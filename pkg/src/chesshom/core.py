"""Chains and simplicial complexes built from pairwise-disjoint 2-subsets.

Every vertex of the complexes handled here is a 2-element subset of a ground
set of *atoms*: an edge {i, j} of a graph on plain atoms, or a rook placement
{i, j'} pairing a plain row atom with a primed column atom.  A k-face is a set
of k+1 pairwise atom-disjoint vertices, so matching complexes and board
complexes share one representation, and a board complex is literally a
subcomplex of the matching complex on its rows and primed columns.

Orientation convention: a simplex stored with its vertices in ascending label
order is positively oriented.  All chains are kept canonical, which makes the
inner product a plain sparse dot product.  The empty face is included, so the
boundary of a vertex is the empty face and homology computed downstream is
reduced homology.

Coefficients are Python ints throughout (arbitrary precision).
"""

from __future__ import annotations

from typing import Iterable, Iterator

# Atoms are (kind, value) pairs: kind 0 = plain, kind 1 = primed.  The tuple
# ordering puts every plain atom before every primed atom.
Atom = tuple[int, int]
Vertex = tuple[Atom, Atom]
Simplex = tuple[Vertex, ...]


def plain(i: int) -> Atom:
    return (0, i)


def primed(j: int) -> Atom:
    return (1, j)


def atom_str(a: Atom) -> str:
    kind, value = a
    return f"{value}'" if kind else str(value)


def parse_atom(text: str) -> Atom:
    text = text.strip()
    if text.endswith("'"):
        return primed(int(text[:-1]))
    return plain(int(text))


def vertex(a: Atom, b: Atom) -> Vertex:
    """The vertex {a, b}, stored with its atoms sorted."""
    if a == b:
        raise ValueError(f"degenerate vertex {atom_str(a)}{atom_str(b)}")
    return (a, b) if a < b else (b, a)


def graph_edge(i: int, j: int) -> Vertex:
    """Vertex of a matching complex: the edge {i, j} on plain atoms."""
    return vertex(plain(i), plain(j))


def rook(i: int, j: int) -> Vertex:
    """Vertex of a board complex: a rook in row i, column j (atom j')."""
    if i < 1 or j < 1:
        raise ValueError(f"rook coordinates must be positive, got ({i}, {j})")
    return (plain(i), primed(j))


def vertex_str(v: Vertex) -> str:
    return atom_str(v[0]) + atom_str(v[1])


def simplex_str(s: Simplex) -> str:
    return "(" + ",".join(vertex_str(v) for v in s) + ")" if s else "()"


def vertex_atoms(vs: Iterable[Vertex]) -> set[Atom]:
    atoms: set[Atom] = set()
    for v in vs:
        atoms.update(v)
    return atoms


def canonical_orient(vs: Iterable[Vertex]) -> tuple[Simplex, int]:
    """Sort a vertex sequence, returning (canonical simplex, parity sign).

    Rejects repeated vertices: such a tuple is degenerate and carries no
    orientation.
    """
    seq = list(vs)
    if len(set(seq)) != len(seq):
        raise ValueError(f"duplicate vertex in {simplex_str(tuple(seq))}")
    # insertion sort; these tuples are short
    sign = 1
    for i in range(1, len(seq)):
        item = seq[i]
        j = i
        while j > 0 and seq[j - 1] > item:
            seq[j] = seq[j - 1]
            j -= 1
            sign = -sign
        seq[j] = item
    return tuple(seq), sign


class Chain:
    """Sparse signed integer combination of canonical simplices of one degree."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: dict[Simplex, int] | None = None):
        self.degree = degree
        self._terms: dict[Simplex, int] = {}
        if terms:
            for s, c in terms.items():
                if c == 0:
                    continue
                if len(s) != degree + 1:
                    raise ValueError(
                        f"simplex {simplex_str(s)} has dimension {len(s) - 1}, "
                        f"chain has degree {degree}"
                    )
                self._terms[s] = c

    @classmethod
    def zero(cls, degree: int) -> "Chain":
        return cls(degree)

    @classmethod
    def simplex(cls, vs: Iterable[Vertex], coeff: int = 1) -> "Chain":
        """The chain coeff * (oriented simplex vs), canonicalized."""
        canon, sign = canonical_orient(vs)
        return cls(len(canon) - 1, {canon: coeff * sign})

    @classmethod
    def empty_face(cls, coeff: int = 1) -> "Chain":
        """The degree -1 chain coeff * (empty face)."""
        return cls(-1, {(): coeff})

    def items(self) -> Iterator[tuple[Simplex, int]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, s: Simplex) -> int:
        return self._terms.get(s, 0)

    def support(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self._terms))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        raise TypeError("chains are not hashable")

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        terms = dict(self._terms)
        for s, c in other._terms.items():
            new = terms.get(s, 0) + c
            if new:
                terms[s] = new
            else:
                terms.pop(s, None)
        return Chain(self.degree, terms)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k: int) -> "Chain":
        if k == 0:
            return Chain(self.degree)
        return Chain(self.degree, {s: k * c for s, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return f"Chain(deg={self.degree}, 0)"
        parts = []
        for s, c in self.items():
            if c == 1:
                parts.append(f"+{simplex_str(s)}")
            elif c == -1:
                parts.append(f"-{simplex_str(s)}")
            else:
                parts.append(f"{c:+d}*{simplex_str(s)}")
        return " ".join(parts)

    def atoms(self) -> set[Atom]:
        atoms: set[Atom] = set()
        for s in self._terms:
            for v in s:
                atoms.update(v)
        return atoms


def chain_sum(degree: int, chains: Iterable[Chain]) -> Chain:
    total = Chain(degree)
    for c in chains:
        total = total + c
    return total


def boundary(c: Chain) -> Chain:
    """Alternating-sign face sum; the boundary of a vertex is the empty face."""
    if c.degree < 0:
        return Chain(c.degree - 1)
    terms: dict[Simplex, int] = {}
    for s, coeff in c._terms.items():
        sign = 1
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            new = terms.get(face, 0) + sign * coeff
            if new:
                terms[face] = new
            else:
                terms.pop(face, None)
            sign = -sign
    return Chain(c.degree - 1, terms)


def inner_product(a: Chain, b: Chain) -> int:
    """Sparse dot product in the orthonormal canonical-simplex basis."""
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    if len(a._terms) > len(b._terms):
        a, b = b, a
    return sum(c * b._terms.get(s, 0) for s, c in a._terms.items())


def wedge(a: Chain, b: Chain) -> Chain:
    """Bilinear extension of concatenation over disjoint ground sets.

    The sign convention is concatenate-then-canonicalize; it satisfies
    boundary(a ^ b) = boundary(a) ^ b + (-1)**(deg a + 1) * a ^ boundary(b),
    and in particular wedges of cycles are cycles.
    """
    if a.atoms() & b.atoms():
        shared = sorted(a.atoms() & b.atoms())
        raise ValueError(
            "wedge over overlapping ground sets: "
            + ", ".join(atom_str(x) for x in shared)
        )
    degree = a.degree + b.degree + 1
    terms: dict[Simplex, int] = {}
    for s, cs in a._terms.items():
        for t, ct in b._terms.items():
            canon, sign = canonical_orient(s + t)
            new = terms.get(canon, 0) + sign * cs * ct
            if new:
                terms[canon] = new
            else:
                terms.pop(canon, None)
    return Chain(degree, terms)


def wedge_all(chains: Iterable[Chain]) -> Chain:
    result = Chain.empty_face()
    for c in chains:
        result = wedge(result, c)
    return result


class Complex:
    """Simplicial complex of pairwise atom-disjoint vertex sets.

    Faces are enumerated per dimension on demand, each dimension generated
    from the previous one by appending vertices past the current maximum, so
    every face is produced exactly once in canonical order.  Instances are
    immutable; `max_dim` caps the dimension for skeleta.
    """

    def __init__(self, vertices: Iterable[Vertex], name: str = "",
                 max_dim: int | None = None):
        vs = sorted(set(vertices))
        for v in vs:
            if len(v) != 2 or v[0] >= v[1]:
                raise ValueError(f"bad vertex {v!r}")
        self.vertices: tuple[Vertex, ...] = tuple(vs)
        self.name = name or "complex"
        self._cap = max_dim
        self._faces: dict[int, tuple[Simplex, ...]] = {-1: ((),)}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._dim: int | None = None

    def __repr__(self) -> str:
        return f"Complex({self.name}, {len(self.vertices)} vertices)"

    def faces(self, k: int) -> tuple[Simplex, ...]:
        """All k-faces in sorted order; k = -1 is the single empty face."""
        if k < -1 or (self._cap is not None and k > self._cap):
            return ()
        cached = self._faces.get(k)
        if cached is not None:
            return cached
        if k == 0:
            result = tuple((v,) for v in self.vertices)
        else:
            below = self.faces(k - 1)
            out: list[Simplex] = []
            verts = self.vertices
            for f in below:
                used = vertex_atoms(f)
                last = f[-1]
                for v in verts:
                    if v <= last:
                        continue
                    if v[0] in used or v[1] in used:
                        continue
                    out.append(f + (v,))
            result = tuple(out)
        self._faces[k] = result
        return result

    def face_count(self, k: int) -> int:
        return len(self.faces(k))

    def face_index(self, k: int) -> dict[Simplex, int]:
        idx = self._index.get(k)
        if idx is None:
            idx = {f: i for i, f in enumerate(self.faces(k))}
            self._index[k] = idx
        return idx

    def has_face(self, s: Simplex) -> bool:
        if not s:
            return True
        return s in self.face_index(len(s) - 1)

    @property
    def dim(self) -> int:
        """Largest k with a nonempty set of k-faces (-1 for the void case)."""
        if self._dim is None:
            k = 0
            while self.faces(k):
                k += 1
            self._dim = k - 1
        return self._dim

    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.face_count(k) for k in range(self.dim + 1))

    def skeleton(self, d: int) -> "Complex":
        """The subcomplex of faces of dimension at most d."""
        if d < -1:
            raise ValueError("skeleton dimension must be >= -1")
        if d >= self.dim:
            return self
        verts = self.vertices if d >= 0 else ()
        skel = Complex(verts, name=f"{self.name}|skel{d}", max_dim=d)
        # share already-enumerated faces
        for k, fs in self._faces.items():
            if k <= d:
                skel._faces[k] = fs
        return skel

    def contains_chain(self, c: Chain) -> bool:
        return all(self.has_face(s) for s in c.support())


def coboundary(c: Chain, ambient: Complex) -> Chain:
    """Adjoint of the boundary operator inside `ambient`.

    <u, coboundary(v)> = <boundary(u), v> for all chains u of the next degree.
    """
    for s in c.support():
        if not ambient.has_face(s):
            raise ValueError(f"simplex {simplex_str(s)} not a face of {ambient.name}")
    k = c.degree
    terms: dict[Simplex, int] = {}
    if k + 1 > ambient.dim:
        return Chain(k + 1, terms)
    for s, coeff in c._terms.items():
        used = vertex_atoms(s)
        for v in ambient.vertices:
            if v[0] in used or v[1] in used:
                continue
            coface, _ = canonical_orient(s + (v,))
            if not ambient.has_face(coface):
                continue
            pos = coface.index(v)
            sign = -1 if pos % 2 else 1
            new = terms.get(coface, 0) + sign * coeff
            if new:
                terms[coface] = new
            else:
                terms.pop(coface, None)
    return Chain(k + 1, terms)
