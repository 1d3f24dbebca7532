"""Exact integral homology through sparse Smith normal form.

The reduction runs in two phases.  Phase 1 eliminates +-1 pivots chosen by
Markowitz fill count (ties broken by row then column index, so runs are
deterministic); each pivot clears its column with row operations and then its
row and column leave the active submatrix.  Boundary matrices of matching and
board complexes are unit-heavy, so this phase removes almost everything.
Phase 2 densifies the small residual and runs textbook integer Smith normal
form on it with arbitrary-precision arithmetic.

Rank-over-F_p elimination (`rank_mod_p`) serves the universal-coefficient
cross-checks and the modular pre-pass that sizes the residual before the
exact dense phase; modular ranks are advisory, never final.

Boundary-membership queries carry the right-hand side through the row
operations of both phases, so solving d x = z needs no explicit transform
matrices; `torsion_order` reads the answer off the residual's invariant
factors.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable
from weakref import WeakKeyDictionary

from .core import Chain, Complex, Simplex, boundary

# rough bytes per sparse entry (nested dict slots) and per dense residual cell
_SPARSE_ENTRY_BYTES = 150
_DENSE_CELL_BYTES = 40

# fixed word-size primes for the modular pre-pass and betti_mod_p cross-checks
PRECHECK_PRIMES = (2147483629, 2147483587)


class ScaleGuardError(RuntimeError):
    """Raised when a computation would exceed the configured budget."""

    def __init__(self, message: str, sizing: dict | None = None):
        super().__init__(message)
        self.sizing = sizing or {}


@dataclass
class EngineLimits:
    """Memory / wall-clock budget for a reduction."""

    max_bytes: int = 4 << 30
    deadline: float | None = None  # absolute time.monotonic() stamp

    @classmethod
    def with_timeout(cls, seconds: float | None, max_mb: int | None = None) -> "EngineLimits":
        limits = cls()
        if max_mb is not None:
            limits.max_bytes = max_mb << 20
        if seconds is not None:
            limits.deadline = time.monotonic() + seconds
        return limits

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ScaleGuardError("wall-clock budget exceeded")


@dataclass
class EngineStats:
    unit_pivots: int = 0
    residual_rows: int = 0
    residual_cols: int = 0
    residual_nnz: int = 0
    peak_nnz: int = 0
    modp_ranks: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "unit_pivots": self.unit_pivots,
            "residual_rows": self.residual_rows,
            "residual_cols": self.residual_cols,
            "residual_nnz": self.residual_nnz,
            "peak_nnz": self.peak_nnz,
            "modp_ranks": dict(self.modp_ranks),
            "elapsed": round(self.elapsed, 6),
        }


class SparseIntMatrix:
    """Integer matrix stored as row -> {col -> value}, no explicit zeros."""

    def __init__(self, nrows: int, ncols: int,
                 entries: Iterable[tuple[int, int, int]] = ()):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        for i, j, v in entries:
            if v == 0:
                continue
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            row = self.rows.setdefault(i, {})
            if j in row:
                raise ValueError(f"duplicate entry at ({i},{j})")
            row[j] = v

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self) -> list[tuple[int, int, int]]:
        out = []
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                out.append((i, j, row[j]))
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            self.ncols, self.nrows,
            ((j, i, v) for i, j, v in self.entries()))

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            dense[i][j] = v
        return dense

    def copy_rows(self) -> dict[int, dict[int, int]]:
        return {i: dict(r) for i, r in self.rows.items()}

    def write_sms(self, fh) -> None:
        """SMS sparse text format: header 'rows cols M', 1-based entries."""
        fh.write(f"{self.nrows} {self.ncols} M\n")
        for i, j, v in self.entries():
            fh.write(f"{i + 1} {j + 1} {v}\n")
        fh.write("0 0 0\n")

    @classmethod
    def read_sms(cls, fh) -> "SparseIntMatrix":
        header = fh.readline().split()
        if len(header) != 3 or header[2] != "M":
            raise ValueError("bad SMS header")
        nrows, ncols = int(header[0]), int(header[1])
        entries = []
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            i, j, v = int(parts[0]), int(parts[1]), int(parts[2])
            if (i, j, v) == (0, 0, 0):
                break
            entries.append((i - 1, j - 1, v))
        return cls(nrows, ncols, entries)


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d_1 | d_2 | ... of an integer matrix."""

    invariant_factors: tuple[int, ...]
    stats: EngineStats

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


@dataclass(frozen=True)
class HomologyGroup:
    """Free rank plus torsion invariant factors in divisibility order."""

    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion factors {self.torsion} not a divisor chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    @property
    def rank(self) -> int:
        """Smallest size of a generating set: betti + number of torsion factors."""
        return self.betti + len(self.torsion)

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti:
            parts.append(f"Z^{self.betti}")
        for d in self.torsion:
            parts.append(f"Z_{d}")
        return " + ".join(parts)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class _Eliminator:
    """Phase-1 unit elimination shared by SNF, rank, and solve paths."""

    def __init__(self, matrix: SparseIntMatrix, limits: EngineLimits,
                 carry: dict[int, int] | None = None):
        self.limits = limits
        self.rows = matrix.copy_rows()
        self.cols: dict[int, set[int]] = {}
        for i, row in self.rows.items():
            for j in row:
                self.cols.setdefault(j, set()).add(i)
        self.nnz = sum(len(r) for r in self.rows.values())
        self.peak_nnz = self.nnz
        self.carry = dict(carry) if carry is not None else None
        self.pivots = 0
        self.pivot_rows: set[int] = set()
        self._heap: list[tuple[int, int, int]] = []
        for i in sorted(self.rows):
            row = self.rows[i]
            rdeg = len(row) - 1
            for j in sorted(row):
                if row[j] in (1, -1):
                    self._push(i, j, rdeg)

    def _push(self, i: int, j: int, rdeg: int | None = None) -> None:
        if rdeg is None:
            rdeg = len(self.rows[i]) - 1
        cost = rdeg * (len(self.cols[j]) - 1)
        heapq.heappush(self._heap, (cost, i, j))

    def _check_budget(self) -> None:
        self.limits.check_time()
        if self.nnz * _SPARSE_ENTRY_BYTES > self.limits.max_bytes:
            raise ScaleGuardError(
                "sparse fill exceeds memory budget",
                {"nnz": self.nnz, "estimated_bytes": self.nnz * _SPARSE_ENTRY_BYTES},
            )

    def run(self) -> None:
        """Eliminate unit pivots until none remain."""
        rows, cols = self.rows, self.cols
        heap = self._heap
        carry = self.carry
        steps = 0
        while heap:
            cost, pi, pj = heapq.heappop(heap)
            row = rows.get(pi)
            if row is None:
                continue
            pval = row.get(pj)
            if pval is None or pval not in (1, -1):
                continue
            actual = (len(row) - 1) * (len(cols[pj]) - 1)
            if actual > cost:
                heapq.heappush(heap, (actual, pi, pj))
                continue
            # pivot at (pi, pj): clear column pj with row operations
            prow = row
            for ri in sorted(cols[pj]):
                if ri == pi:
                    continue
                trow = rows[ri]
                q = trow[pj] * pval  # trow[pj] / pval since pval is +-1
                rdeg_hint = None
                for cj, cv in prow.items():
                    cur = trow.get(cj)
                    if cur is None:
                        nv = -q * cv
                        trow[cj] = nv
                        cols[cj].add(ri)
                        self.nnz += 1
                        if nv in (1, -1):
                            self._push(ri, cj, rdeg_hint)
                    else:
                        nv = cur - q * cv
                        if nv:
                            trow[cj] = nv
                            if nv in (1, -1) and cur not in (1, -1):
                                self._push(ri, cj, rdeg_hint)
                        else:
                            del trow[cj]
                            cols[cj].discard(ri)
                            self.nnz -= 1
                if carry is not None:
                    yv = carry.get(pi, 0)
                    if yv:
                        ny = carry.get(ri, 0) - q * yv
                        if ny:
                            carry[ri] = ny
                        else:
                            carry.pop(ri, None)
                if not trow:
                    del rows[ri]
            # retire the pivot row and column; clearing the pivot row is a
            # column operation that does not touch the active submatrix
            for cj in prow:
                if cj != pj:
                    cols[cj].discard(pi)
            self.nnz -= len(prow)
            del rows[pi]
            del cols[pj]
            self.pivots += 1
            self.pivot_rows.add(pi)
            if self.peak_nnz < self.nnz:
                self.peak_nnz = self.nnz
            steps += 1
            if steps % 128 == 0:
                self._check_budget()

    def residual(self) -> tuple[list[list[int]], list[int], list[int]]:
        """Densify what is left: (matrix, row ids, col ids), sorted ids."""
        row_ids = sorted(i for i, r in self.rows.items() if r)
        col_ids = sorted({j for i in row_ids for j in self.rows[i]})
        cells = len(row_ids) * len(col_ids)
        if cells * _DENSE_CELL_BYTES > self.limits.max_bytes:
            raise ScaleGuardError(
                "residual densification exceeds memory budget",
                {"residual_rows": len(row_ids), "residual_cols": len(col_ids),
                 "estimated_bytes": cells * _DENSE_CELL_BYTES},
            )
        col_pos = {j: k for k, j in enumerate(col_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for k, i in enumerate(row_ids):
            for j, v in self.rows[i].items():
                dense[k][col_pos[j]] = v
        return dense, row_ids, col_ids

    def residual_echelon(self) -> tuple[list[list[int]], list[int], list[int], list[int]]:
        """Compress the residual by integer row echelon before the dense phase.

        Row operations are unimodular (exact division or two-row xgcd
        combinations), so the row lattice and hence the invariant factors
        are preserved.  Returns (echelon rows densified over their column
        support, echelon carries, zero-row carries, residual row count).
        Carry lists are empty when no carry is tracked.
        """
        row_ids = sorted(i for i, r in self.rows.items() if r)
        carry = self.carry if self.carry is not None else {}
        store: dict[int, dict[int, int]] = {}   # lead col -> row dict
        store_carry: dict[int, int] = {}
        zero_carries: list[int] = []
        steps = 0
        for i in row_ids:
            v = dict(self.rows[i])
            c = carry.get(i, 0)
            stored = False
            while v:
                steps += 1
                if steps % 64 == 0:
                    self.limits.check_time()
                j = min(v)
                if j not in store:
                    store[j] = v
                    store_carry[j] = c
                    stored = True
                    break
                prow = store[j]
                a = prow[j]
                b = v[j]
                if b % a == 0:
                    q = b // a
                    for jj, av in prow.items():
                        nv = v.get(jj, 0) - q * av
                        if nv:
                            v[jj] = nv
                        else:
                            v.pop(jj, None)
                    c -= q * store_carry[j]
                else:
                    x, y, g = _xgcd(a, b)
                    ag, mbg = a // g, -(b // g)
                    new_p: dict[int, int] = {}
                    new_v: dict[int, int] = {}
                    for jj in set(prow) | set(v):
                        av, bv = prow.get(jj, 0), v.get(jj, 0)
                        np_ = x * av + y * bv
                        nv_ = mbg * av + ag * bv
                        if np_:
                            new_p[jj] = np_
                        if nv_:
                            new_v[jj] = nv_
                    cp, cv = store_carry[j], c
                    store[j] = new_p
                    store_carry[j] = x * cp + y * cv
                    v, c = new_v, mbg * cp + ag * cv
            if not stored and not v and c:
                zero_carries.append(c)
        # reduce entries above each pivot to keep magnitudes in check
        for j in sorted(store):
            prow = store[j]
            a = prow[j]
            for j2, other in store.items():
                if j2 == j or j not in other:
                    continue
                q = other[j] // a
                if q:
                    for jj, av in prow.items():
                        nv = other.get(jj, 0) - q * av
                        if nv:
                            other[jj] = nv
                        else:
                            other.pop(jj, None)
                    store_carry[j2] -= q * store_carry[j]
        lead_cols = sorted(store)
        col_ids = sorted({jj for row in store.values() for jj in row})
        col_pos = {jj: k for k, jj in enumerate(col_ids)}
        dense = []
        carries = []
        for j in lead_cols:
            row = [0] * len(col_ids)
            for jj, val in store[j].items():
                row[col_pos[jj]] = val
            dense.append(row)
            carries.append(store_carry[j])
        return dense, carries, zero_carries, len(row_ids)


def _dense_row_gcd_reduce(a: list[list[int]], carry: list[int] | None,
                          limits: EngineLimits) -> list[int]:
    """Exact Smith normal form of a small dense matrix.

    Returns the nonzero diagonal entries in divisibility order.  Row
    operations are mirrored onto `carry` when given, so the caller can read
    membership/divisibility answers straight off the reduced right-hand side.
    The entries of `a` are reordered in place; column swaps and combinations
    are applied directly (they never touch `carry`).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    factors: list[int] = []
    t = 0
    while True:
        limits.check_time()
        # locate a minimal-magnitude nonzero entry in the submatrix
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                v = ai[j]
                if v:
                    av = abs(v)
                    if best is None or av < best[0]:
                        best = (av, i, j)
                        if av == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            if carry is not None:
                carry[t], carry[bi] = carry[bi], carry[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if not v:
                    continue
                p = a[t][t]
                q = v // p
                if q:
                    ai, at = a[i], a[t]
                    for j in range(t, n):
                        ai[j] -= q * at[j]
                    if carry is not None:
                        carry[i] -= q * carry[t]
                if a[i][t]:
                    # remainder smaller than pivot: swap it up and restart
                    a[t], a[i] = a[i], a[t]
                    if carry is not None:
                        carry[t], carry[i] = carry[i], carry[t]
                    dirty = True
            if dirty:
                continue
            # clear row t with column operations
            at = a[t]
            p = at[t]
            dirty = False
            for j in range(t + 1, n):
                v = at[j]
                if not v:
                    continue
                q = v // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if at[j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    dirty = True
                    break
            if not dirty:
                break
        p = abs(a[t][t])
        # enforce the divisor chain: p must divide the rest of the submatrix
        offender = None
        for i in range(t + 1, m):
            ai = a[i]
            for j in range(t + 1, n):
                if ai[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            oi, at = a[offender], a[t]
            for j in range(t, n):
                at[j] += oi[j]
            if carry is not None:
                carry[t] += carry[offender]
            continue
        factors.append(p)
        t += 1
        if t >= m or t >= n:
            break
    return factors


def _rank_mod_p_dense(a: list[list[int]], p: int) -> int:
    m = len(a)
    n = len(a[0]) if m else 0
    a = [[v % p for v in row] for row in a]
    rank = 0
    col = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        arow = a[rank]
        for i in range(rank + 1, m):
            f = a[i][col]
            if f:
                f = (f * inv) % p
                ai = a[i]
                for j in range(col, n):
                    ai[j] = (ai[j] - f * arow[j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def smith_normal_form(matrix: SparseIntMatrix,
                      limits: EngineLimits | None = None) -> SNFResult:
    """Invariant factors of an integer matrix, deterministic for fixed input."""
    limits = limits or EngineLimits()
    start = time.monotonic()
    elim = _Eliminator(matrix, limits)
    elim.run()
    dense, _, _, res_rows = elim.residual_echelon()
    stats = EngineStats(
        unit_pivots=elim.pivots,
        residual_rows=res_rows,
        residual_cols=len(dense[0]) if dense else 0,
        residual_nnz=sum(1 for row in dense for v in row if v),
        peak_nnz=elim.peak_nnz,
    )
    # modular pre-pass on the residual: advisory rank bounds before exact work
    expected = None
    if dense:
        r1 = _rank_mod_p_dense(dense, PRECHECK_PRIMES[0])
        r2 = _rank_mod_p_dense(dense, PRECHECK_PRIMES[1])
        stats.modp_ranks = {PRECHECK_PRIMES[0]: r1, PRECHECK_PRIMES[1]: r2}
        if r1 == r2:
            expected = r1
    residual_factors = _dense_row_gcd_reduce(dense, None, limits)
    if expected is not None and len(residual_factors) < expected:
        raise AssertionError(
            "exact residual rank below modular lower bound "
            f"({len(residual_factors)} < {expected})")
    factors = [1] * elim.pivots + residual_factors
    stats.elapsed = time.monotonic() - start
    return SNFResult(tuple(factors), stats)


def matrix_rank(matrix: SparseIntMatrix, limits: EngineLimits | None = None) -> int:
    return smith_normal_form(matrix, limits).rank


def rank_mod_p(matrix: SparseIntMatrix, p: int,
               limits: EngineLimits | None = None) -> int:
    """Rank over F_p by sparse elimination (any nonzero entry can pivot)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    limits = limits or EngineLimits()
    rows = {i: {j: v % p for j, v in r.items() if v % p}
            for i, r in matrix.rows.items()}
    rows = {i: r for i, r in rows.items() if r}
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    rank = 0
    heap: list[tuple[int, int, int]] = []
    for i in sorted(rows):
        rdeg = len(rows[i]) - 1
        for j in sorted(rows[i]):
            heapq.heappush(heap, (rdeg * (len(cols[j]) - 1), i, j))
    steps = 0
    while heap:
        cost, pi, pj = heapq.heappop(heap)
        row = rows.get(pi)
        if row is None:
            continue
        pval = row.get(pj)
        if pval is None:
            continue
        actual = (len(row) - 1) * (len(cols[pj]) - 1)
        if actual > cost:
            heapq.heappush(heap, (actual, pi, pj))
            continue
        inv = pow(pval, p - 2, p)
        for ri in sorted(cols[pj]):
            if ri == pi:
                continue
            trow = rows[ri]
            q = (trow[pj] * inv) % p
            for cj, cv in row.items():
                cur = trow.get(cj, 0)
                nv = (cur - q * cv) % p
                if nv:
                    if not cur:
                        cols[cj].add(ri)
                        heapq.heappush(
                            heap, ((len(trow)) * (len(cols[cj]) - 1), ri, cj))
                    trow[cj] = nv
                elif cur:
                    del trow[cj]
                    cols[cj].discard(ri)
            if not trow:
                del rows[ri]
        for cj in row:
            if cj != pj:
                cols[cj].discard(pi)
        del rows[pi]
        del cols[pj]
        rank += 1
        steps += 1
        if steps % 128 == 0:
            limits.check_time()
    return rank


# ---------------------------------------------------------------------------
# boundary matrices and homology

_rank_memo: "WeakKeyDictionary[Complex, dict[int, int]]" = WeakKeyDictionary()
_snf_memo: "WeakKeyDictionary[Complex, dict[int, SNFResult]]" = WeakKeyDictionary()


def boundary_matrix(c: Complex, k: int) -> SparseIntMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains of `c`.

    Rows are indexed by (k-1)-faces, columns by k-faces, both in sorted
    order; k = 0 gives the augmentation onto the empty face.
    """
    rows = c.face_index(k - 1)
    cols = c.faces(k)
    entries = []
    for j, f in enumerate(cols):
        sign = 1
        for i in range(len(f)):
            face = f[:i] + f[i + 1 :]
            entries.append((rows[face], j, sign))
            sign = -sign
    return SparseIntMatrix(len(rows), len(cols), entries)


def _boundary_rank(c: Complex, k: int, limits: EngineLimits | None) -> int:
    if k < 0 or k > c.dim:
        return 0
    memo = _rank_memo.setdefault(c, {})
    if k not in memo:
        memo[k] = _boundary_snf(c, k, limits).rank
    return memo[k]


def _boundary_snf(c: Complex, k: int, limits: EngineLimits | None) -> SNFResult:
    memo = _snf_memo.setdefault(c, {})
    if k not in memo:
        memo[k] = smith_normal_form(boundary_matrix(c, k), limits)
        _rank_memo.setdefault(c, {})[k] = memo[k].rank
    return memo[k]


def homology(c: Complex, k: int, limits: EngineLimits | None = None) -> HomologyGroup:
    """Reduced integral homology of `c` in degree k."""
    if k < 0:
        raise ValueError("homology degree must be >= 0")
    nfaces = c.face_count(k)
    if nfaces == 0:
        return HomologyGroup(0)
    rank_k = _boundary_rank(c, k, limits)
    if k + 1 > c.dim:
        return HomologyGroup(nfaces - rank_k)
    above = _boundary_snf(c, k + 1, limits)
    betti = nfaces - rank_k - above.rank
    return HomologyGroup(betti, above.torsion_factors)


def homology_profile(c: Complex, kmax: int,
                     limits: EngineLimits | None = None) -> list[HomologyGroup]:
    """Homology in every degree 0..kmax; boundary ranks are shared."""
    return [homology(c, k, limits) for k in range(kmax + 1)]


def betti_mod_p(c: Complex, k: int, p: int,
                limits: EngineLimits | None = None) -> int:
    """dim of the degree-k reduced homology with F_p coefficients."""
    nfaces = c.face_count(k)
    if nfaces == 0:
        return 0
    r_k = rank_mod_p(boundary_matrix(c, k), p, limits) if k >= 0 else 0
    r_k1 = 0
    if k + 1 <= c.dim:
        r_k1 = rank_mod_p(boundary_matrix(c, k + 1), p, limits)
    return nfaces - r_k - r_k1


def chain_vector(z: Chain, c: Complex) -> dict[int, int]:
    """Coordinates of a chain in the face basis of its degree."""
    index = c.face_index(z.degree)
    vec = {}
    for s, coeff in z.items():
        if s not in index:
            raise ValueError(f"chain not supported on {c.name}: missing face")
        vec[index[s]] = coeff
    return vec


def is_cycle(z: Chain) -> bool:
    return boundary(z).is_zero()


def _solve_divisibility(c: Complex, z: Chain,
                        limits: EngineLimits | None) -> int:
    """Least d >= 1 with d*z in the image of the next boundary map; 0 if none."""
    limits = limits or EngineLimits()
    k = z.degree
    if z.is_zero():
        return 1
    y = chain_vector(z, c)
    if k + 1 > c.dim:
        return 0
    matrix = boundary_matrix(c, k + 1)
    elim = _Eliminator(matrix, limits, carry=y)
    elim.run()
    dense, carry_res, zero_carries, _ = elim.residual_echelon()
    if any(zero_carries):
        return 0
    factors = _dense_row_gcd_reduce(dense, carry_res, limits)
    # rows outside both pivot set and residual are cokernel-free directions:
    # any carried weight there means no multiple of z is a boundary
    residual_rows = set(elim.rows)
    for i, yv in elim.carry.items():
        if yv and i not in residual_rows and i not in elim.pivot_rows:
            return 0
    order = 1
    for idx, yv in enumerate(carry_res):
        if idx < len(factors):
            d = factors[idx]
            g = yv % d
            if g:
                order = lcm(order, d // gcd(d, g))
        elif yv:
            return 0
    return order


def is_boundary(z: Chain, c: Complex, limits: EngineLimits | None = None) -> bool:
    """Does d x = z have an integer solution inside `c`?"""
    return _solve_divisibility(c, z, limits) == 1


def torsion_order(z: Chain, c: Complex, limits: EngineLimits | None = None) -> int:
    """Least d >= 1 with d*z a boundary in `c`; 0 for an infinite-order class."""
    if not is_cycle(z):
        raise ValueError("torsion_order requires a cycle")
    return _solve_divisibility(c, z, limits)


# ---------------------------------------------------------------------------
# dense transforms (small systems: integer kernels for span checks)


def dense_snf_with_transforms(a: list[list[int]]) -> tuple[
        list[list[int]], list[list[int]], list[list[int]]]:
    """(D, U, V) with U*A*V = D, U and V unimodular, D diagonal.

    Dense cubic bookkeeping; only for the small systems behind kernel and
    span checks.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i1, i2, q):  # row i2 -= q * row i1
        d1, d2 = d[i1], d[i2]
        u1, u2 = u[i1], u[i2]
        for j in range(n):
            d2[j] -= q * d1[j]
        for j in range(m):
            u2[j] -= q * u1[j]

    def col_op(j1, j2, q):  # col j2 -= q * col j1
        for row in d:
            row[j2] -= q * row[j1]
        for row in v:
            row[j2] -= q * row[j1]

    t = 0
    while True:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j]:
                    av = abs(d[i][j])
                    if best is None or av < best[0]:
                        best = (av, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            d[t], d[bi] = d[bi], d[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in d:
                row[t], row[bj] = row[bj], row[t]
            for row in v:
                row[t], row[bj] = row[bj], row[t]
        while True:
            again = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    if q:
                        row_op(t, i, q)
                    if d[i][t]:
                        d[t], d[i] = d[i], d[t]
                        u[t], u[i] = u[i], u[t]
                        again = True
            if again:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    if q:
                        col_op(t, j, q)
                    if d[t][j]:
                        for row in d:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        again = True
                        break
            if not again:
                break
        t += 1
        if t >= m or t >= n:
            break
    return d, u, v


def integer_kernel_basis(matrix: SparseIntMatrix) -> list[dict[int, int]]:
    """Basis of the integer kernel, each vector as a sparse column dict."""
    dense = matrix.to_dense()
    if not dense or not dense[0]:
        return [{j: 1} for j in range(matrix.ncols)] if matrix.ncols else []
    d, _, v = dense_snf_with_transforms(dense)
    rank = 0
    for t in range(min(matrix.nrows, matrix.ncols)):
        if d[t][t]:
            rank += 1
    basis = []
    for j in range(rank, matrix.ncols):
        col = {i: v[i][j] for i in range(matrix.ncols) if v[i][j]}
        basis.append(col)
    return basis
