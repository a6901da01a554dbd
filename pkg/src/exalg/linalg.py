"""Exact linear algebra over Q(i) (and plain rationals).

Entries are duck-typed: gmpy2.mpq, int, or :class:`~exalg.scalar.Scalar`
all work, and mixing them promotes as expected.  Row reduction keeps a
fully reduced echelon basis so that reducing one more row is a single
coefficient gather plus one vector subtraction; this is what makes the
bigger eliminations (1378 x 2704 and the equivariance systems) run in
minutes instead of hours.

Pivoting is deterministic everywhere: rows are consumed in the order
given and each pivot is the first nonzero column of the reduced row.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq


def _first_nonzero(arr) -> int | None:
    nz = np.flatnonzero(arr)
    return int(nz[0]) if len(nz) else None


class RowBasis:
    """Incrementally maintained reduced row-echelon basis.

    add() feeds rows in caller order (greedy rank extension); solve()
    expresses a vector over the independent rows seen so far.  With
    ``track=True`` every echelon row remembers its expression in terms
    of the original added rows, so solve() can hand back coefficients
    over the caller's generators.
    """

    def __init__(self, ncols: int, track: bool = False):
        self.ncols = ncols
        self._cap = 16
        self._mat = np.empty((self._cap, ncols), dtype=object)
        self._n = 0
        self._piv: list[int] = []
        self._pivarr = np.empty(0, dtype=np.intp)
        self._track = track
        self._T: list[dict] = []  # row -> {added_index: coeff}
        self.n_added = 0
        self.indep_ids: list[int] = []  # added-index of each stored row

    @property
    def rank(self) -> int:
        return self._n

    def _grow(self):
        if self._n == self._cap:
            self._cap *= 2
            newmat = np.empty((self._cap, self.ncols), dtype=object)
            newmat[: self._n] = self._mat[: self._n]
            self._mat = newmat

    def _reduce(self, arr):
        """Fully reduce arr against the basis; returns (residual, used)
        where used lists (row_position, coefficient) pairs."""
        k = self._n
        if k == 0:
            return arr, []
        coef = arr[self._pivarr]
        nz = [t for t in range(k) if coef[t]]
        if not nz:
            return arr, []
        if 3 * len(nz) < k:
            sub = np.dot(coef[nz], self._mat[nz])
        else:
            sub = np.dot(coef[:k], self._mat[:k])
        return arr - sub, [(t, coef[t]) for t in nz]

    def add(self, row) -> bool:
        """Append a row; True if it extended the span."""
        idx = self.n_added
        self.n_added += 1
        arr = row if isinstance(row, np.ndarray) else np.array(list(row), dtype=object)
        arr, used = self._reduce(arr)
        j = _first_nonzero(arr)
        if j is None:
            return False
        pv = arr[j]
        if pv != 1:
            arr = arr * (1 / pv)
        if self._track:
            tnew = {idx: mpq(1)}
            for t, c in used:
                for a, v in self._T[t].items():
                    acc = tnew.get(a, 0) - c * v
                    if acc:
                        tnew[a] = acc
                    elif a in tnew:
                        del tnew[a]
            if pv != 1:
                inv = 1 / pv
                tnew = {a: v * inv for a, v in tnew.items()}
        k = self._n
        col = self._mat[:k, j]
        rows = [t for t in range(k) if col[t]]
        if rows:
            coefs = col[rows]  # fancy indexing copies; col is a view into _mat
            self._mat[rows] = self._mat[rows] - np.outer(coefs, arr)
            if self._track:
                for t, c in zip(rows, coefs):
                    Tt = self._T[t]
                    for a, v in tnew.items():
                        acc = Tt.get(a, 0) - c * v
                        if acc:
                            Tt[a] = acc
                        elif a in Tt:
                            del Tt[a]
        self._grow()
        self._mat[self._n] = arr
        self._n += 1
        self._piv.append(j)
        self._pivarr = np.array(self._piv, dtype=np.intp)
        if self._track:
            self._T.append(tnew)
        self.indep_ids.append(idx)
        return True

    def contains(self, row) -> bool:
        arr = row if isinstance(row, np.ndarray) else np.array(list(row), dtype=object)
        arr, _ = self._reduce(arr)
        return _first_nonzero(arr) is None

    def solve(self, row):
        """Coefficients {added_index: coeff} expressing row over the
        added rows, or None when it is outside the span.  Requires
        track=True.  Unused/dependent generators get no entry, which is
        the deterministic minimal-support convention."""
        if not self._track:
            raise ValueError("RowBasis built without transform tracking")
        arr = row if isinstance(row, np.ndarray) else np.array(list(row), dtype=object)
        arr, used = self._reduce(arr)
        if _first_nonzero(arr) is not None:
            return None
        out: dict = {}
        for t, c in used:
            for a, v in self._T[t].items():
                acc = out.get(a, 0) + c * v
                if acc:
                    out[a] = acc
                elif a in out:
                    del out[a]
        return out

    def kernel_vectors(self) -> list[dict]:
        """Sparse basis of the right kernel of the stacked added rows
        (equivalently of the echelon rows), one vector per free column,
        in column order."""
        pivset = set(self._piv)
        out = []
        k = self._n
        for f in range(self.ncols):
            if f in pivset:
                continue
            vec = {f: mpq(1)}
            for t in range(k):
                c = self._mat[t, f]
                if c:
                    vec[self._piv[t]] = -c
            out.append(vec)
        return out

    def echelon_rows(self):
        return self._mat[: self._n]

    @property
    def pivots(self) -> list[int]:
        return list(self._piv)


class Mat:
    """Small dense exact matrix (list-of-rows); the workhorse for
    endomorphisms, derivations and operators."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        z = cls.zeros(n)
        for i in range(n):
            z.rows[i][i] = mpq(1)
        return z

    @classmethod
    def from_entries(cls, n, m, entries):
        """entries: iterable of (i, j, value); later duplicates accumulate."""
        z = cls.zeros(n, m)
        for i, j, v in entries:
            z.rows[i][j] += v
        return z

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        brows = other.rows
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i, arow in enumerate(self.rows):
            orow = out[i]
            for k, a in enumerate(arow):
                if a:
                    for j, b in enumerate(brows[k]):
                        if b:
                            orow[j] += a * b
        return Mat(out)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Mat([[c * a for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.nrows))

    def transpose(self):
        return Mat([list(col) for col in zip(*self.rows)])

    def apply(self, vec):
        """Matrix times column vector; iterates over the vector's
        support so sparse vectors stay cheap."""
        out = [0] * self.nrows
        for j, c in enumerate(vec):
            if c:
                for i in range(self.nrows):
                    a = self.rows[i][j]
                    if a:
                        out[i] += a * c
        return out

    def flatten(self):
        return [a for r in self.rows for a in r]

    def commutator(self, other):
        return self @ other - other @ self

    def jordan(self, other):
        """Symmetrized product (AB + BA)/2."""
        both = self @ other + other @ self
        return both.scale(mpq(1, 2))

    def copy(self):
        return Mat(self.rows)

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"


# The external exact-matrix surface: dense grid or coordinate list both
# materialize to Mat, and the subspace operations sit on top of RowBasis.
Matrix = Mat


def rank(m: Mat) -> int:
    rb = RowBasis(m.ncols)
    for row in m.rows:
        rb.add(row)
    return rb.rank


def kernel_basis(m: Mat) -> list[list]:
    """Dense basis vectors of {x : m @ x = 0}, deterministic order."""
    rb = RowBasis(m.ncols)
    for row in m.rows:
        rb.add(row)
    out = []
    for sv in rb.kernel_vectors():
        vec = [mpq(0)] * m.ncols
        for j, c in sv.items():
            vec[j] = c
        out.append(vec)
    return out


def solve_in_span(generators, target):
    """Coefficients over `generators` reproducing `target`, or None.

    Deterministic: generators are consumed in order with greedy rank
    extension, so redundant generators always get coefficient 0.
    """
    gens = list(generators)
    if not gens:
        return None
    n = len(gens[0])
    rb = RowBasis(n, track=True)
    for g in gens:
        rb.add(g)
    sol = rb.solve(target)
    if sol is None:
        return None
    out = [mpq(0)] * len(gens)
    for a, v in sol.items():
        out[a] = v
    return out


class SymIndex:
    """Canonical indexing of unordered pairs (i, j), i <= j, over a basis
    of size n; pairs are ordered row-major."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = [(i, j) for i in range(n) for j in range(i, n)]
        self._index = {p: k for k, p in enumerate(self.pairs)}

    def __len__(self):
        return len(self.pairs)

    def index_of(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self._index[(i, j)]

    def pair_of(self, k: int) -> tuple[int, int]:
        return self.pairs[k]


# ---------------------------------------------------------------------------
# Sparse kernel chaining for the big equivariance systems.


def _sparse_col_combine(cols, vec):
    """Linear combination of sparse columns: vec is {col_index: coeff}."""
    out: dict = {}
    for t, c in vec.items():
        for r, v in cols[t].items():
            acc = out.get(r, 0) + c * v
            if acc:
                out[r] = acc
            elif r in out:
                del out[r]
    return out


def chained_kernel(blocks, nunknowns: int, batch: int = 512):
    """Common kernel of several groups of sparse constraint rows.

    blocks: iterable of row groups, each group an iterable of sparse rows
    ({unknown_index: coeff}).  Maintains the running solution space as
    sparse columns; each batch of rows is restricted to the current
    space, reduced exactly, and the space is cut down to the batch's
    kernel.  Returns a list of sparse columns spanning the intersection.
    """
    K: list[dict] | None = None  # None means the full space
    rowmap: dict[int, dict[int, object]] | None = None

    def _restrict(row):
        if K is None:
            dense = [0] * nunknowns
            for j, c in row.items():
                dense[j] = c
            return dense
        dense = [0] * len(K)
        for j, c in row.items():
            kr = rowmap.get(j)
            if kr:
                for t, v in kr.items():
                    dense[t] += c * v
        return dense

    def _rebuild_rowmap():
        nonlocal rowmap
        rowmap = {}
        for t, col in enumerate(K):
            for r, v in col.items():
                rowmap.setdefault(r, {})[t] = v

    for block in blocks:
        block = list(block)
        pos = 0
        while pos < len(block):
            dim = nunknowns if K is None else len(K)
            if dim == 0:
                return []
            chunk = block[pos : pos + batch]
            pos += batch
            rb = RowBasis(dim)
            for row in chunk:
                restricted = _restrict(row)
                if any(restricted):
                    rb.add(restricted)
            if rb.rank == 0:
                continue
            kern = rb.kernel_vectors()
            if K is None:
                K = kern
            else:
                K = [_sparse_col_combine(K, kv) for kv in kern]
            _rebuild_rowmap()
    if K is None:
        K = [{t: mpq(1)} for t in range(nunknowns)]
    return K
