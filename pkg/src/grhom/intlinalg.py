"""Exact linear algebra over the integers.

Dense matrices of Python ints (arbitrary precision, never floats), Smith
normal form with unimodular transforms, Hermite-reduced kernel bases,
eventual kernels of square matrices, and finitely generated abelian groups
presented as cokernels.

The Smith elimination uses the smallest-absolute-value nonzero pivot with a
row-major tie-break, normalizes the diagonal to be nonnegative, and enforces
the divisibility chain d1 | d2 | ..., so the full decomposition (not only the
invariant factors) is deterministic for a fixed input.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix.

    ``ncols`` is stored explicitly so matrices with zero rows keep their
    shape; a 2 x 0 matrix and a 0 x 2 matrix are different objects.
    """

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix: row length %d != ncols %d"
                                 % (len(row), self.ncols))
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("matrix entries must be ints, got %r" % (x,))

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        rows = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return IntMatrix(rows, self.nrows)

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch: %s @ %s" % (self.shape, other.shape))
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows)
        return IntMatrix(out, other.ncols)

    def apply(self, vec):
        """Matrix-vector product, vec given as a sequence of ints."""
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch: %s applied to length %d"
                             % (self.shape, len(vec)))
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def is_nonneg(self):
        return all(x >= 0 for row in self.rows for x in row)

    def to_decimal_rows(self):
        """Row-major nested lists of decimal strings, for JSON reports."""
        return [[str(x) for x in row] for row in self.rows]


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ a @ v == s with u, v unimodular and s diagonal.

    ``factors`` is the full diagonal of s (length min(nrows, ncols)): the
    divisibility chain d1 | d2 | ... | dk followed by zeros, all nonnegative.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    factors: tuple[int, ...]


@dataclass(frozen=True)
class FpAbelianGroup:
    """Finitely generated abelian group in canonical form.

    rank gives the free part, torsion the invariant factors > 1 in
    divisibility order; equality of instances is isomorphism.
    """

    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for i, d in enumerate(self.torsion):
            if d <= 1:
                raise ValueError("torsion factors must exceed 1, got %d" % d)
            if i and self.torsion[i] % self.torsion[i - 1] != 0:
                raise ValueError("torsion factors must form a divisibility chain")

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def describe(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " x ".join(parts) if parts else "0"

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def _find_pivot(s, t, m, n):
    """Smallest-absolute-value nonzero entry of s[t:, t:], row-major tie-break."""
    best = None
    bi = bj = -1
    for i in range(t, m):
        row = s[i]
        for j in range(t, n):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best:
                    best, bi, bj = ax, i, j
                    if best == 1:
                        return bi, bj
    return None if best is None else (bi, bj)


def _diagonalize(a: IntMatrix, track: bool):
    """Shared Smith elimination; returns (diag rows, u rows, v rows, factors)."""
    m, n = a.nrows, a.ncols
    s = [list(row) for row in a.rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def row_swap(i, k):
        s[i], s[k] = s[k], s[i]
        if track:
            u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def row_addmul(i, k, q):
        # row i += q * row k
        si, sk = s[i], s[k]
        for j in range(n):
            si[j] += q * sk[j]
        if track:
            ui, uk = u[i], u[k]
            for j in range(m):
                ui[j] += q * uk[j]

    def col_addmul(j, k, q):
        # col j += q * col k
        for row in s:
            row[j] += q * row[k]
        if track:
            for row in v:
                row[j] += q * row[k]

    def row_negate(i):
        s[i] = [-x for x in s[i]]
        if track:
            u[i] = [-x for x in u[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = _find_pivot(s, t, m, n)
        if piv is None:
            break
        while True:
            pi, pj = piv
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            if s[t][t] < 0:
                row_negate(t)
            p = s[t][t]
            dirty = False
            for i in range(m):
                if i != t and s[i][t]:
                    row_addmul(i, t, -(s[i][t] // p))
                    if s[i][t]:
                        dirty = True
            if not dirty:
                for j in range(n):
                    if j != t and s[t][j]:
                        col_addmul(j, t, -(s[t][j] // p))
                        if s[t][j]:
                            dirty = True
            if not dirty:
                break
            piv = _find_pivot(s, t, m, n)
        # force divisibility: pivot must divide every remaining entry
        p = s[t][t]
        offender = None
        for i in range(t + 1, m):
            row = s[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_addmul(t, offender, 1)
            continue
        t += 1
    factors = tuple(s[i][i] for i in range(limit))
    return s, u, v, factors


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Full Smith decomposition u @ a @ v == s with deterministic pivoting."""
    s, u, v, factors = _diagonalize(a, track=True)
    return SmithDecomposition(
        u=IntMatrix.from_rows(u, a.nrows),
        s=IntMatrix.from_rows(s, a.ncols),
        v=IntMatrix.from_rows(v, a.ncols),
        factors=factors,
    )


def invariant_factors(a: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form without tracking the transforms (faster)."""
    _, _, _, factors = _diagonalize(a, track=False)
    return factors


def cokernel(a: IntMatrix) -> FpAbelianGroup:
    """Z^nrows modulo the column span of a, in canonical form."""
    factors = invariant_factors(a)
    nonzero = [d for d in factors if d]
    return FpAbelianGroup(rank=a.nrows - len(nonzero),
                          torsion=tuple(d for d in nonzero if d > 1))


def group_from_factors(nrows: int, factors) -> FpAbelianGroup:
    nonzero = [d for d in factors if d]
    return FpAbelianGroup(rank=nrows - len(nonzero),
                          torsion=tuple(d for d in nonzero if d > 1))


def hermite_row_basis(rows, ncols) -> IntMatrix:
    """Canonical row Hermite form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    pivot columns strictly increase, zero rows are dropped. Two inputs span
    the same row lattice iff they produce equal outputs.
    """
    work = [list(r) for r in rows]
    m = len(work)
    r = 0
    for c in range(ncols):
        # gcd elimination in column c among rows >= r
        while True:
            best = None
            bi = -1
            for i in range(r, m):
                x = work[i][c]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best:
                        best, bi = ax, i
            if best is None:
                break
            if bi != r:
                work[r], work[bi] = work[bi], work[r]
            if work[r][c] < 0:
                work[r] = [-x for x in work[r]]
            p = work[r][c]
            done = True
            for i in range(r + 1, m):
                if work[i][c]:
                    q = work[i][c] // p
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][c]:
                        done = False
            if done:
                break
        if r < m and work[r][c]:
            p = work[r][c]
            for i in range(r):
                q = work[i][c] // p
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
            r += 1
    basis = tuple(tuple(row) for row in work[:r])
    return IntMatrix(basis, ncols)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Hermite-reduced basis (as rows) of the integer kernel of a."""
    dec = smith_normal_form(a)
    limit = min(a.nrows, a.ncols)
    free_cols = [j for j in range(a.ncols)
                 if j >= limit or dec.factors[j] == 0]
    vectors = [tuple(dec.v.rows[i][j] for i in range(a.ncols)) for j in free_cols]
    return hermite_row_basis(vectors, a.ncols)


def eventual_kernel(a: IntMatrix) -> IntMatrix:
    """Basis of the union of ker(a^k); the chain stabilizes by k = size."""
    if a.nrows != a.ncols:
        raise ValueError("eventual kernel requires a square matrix, got %s"
                         % (a.shape,))
    n = a.nrows
    if n == 0:
        return IntMatrix((), 0)
    power = a
    for _ in range(n - 1):
        power = power @ a
    return kernel_basis(power)


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    if a.nrows != a.ncols:
        raise ValueError("matrix power requires a square matrix, got %s"
                         % (a.shape,))
    if k < 0:
        raise ValueError("negative matrix power")
    out = IntMatrix.identity(a.nrows)
    base = a
    while k:
        if k & 1:
            out = out @ base
        k >>= 1
        if k:
            base = base @ base
    return out


def mat_pow_apply(a: IntMatrix, vec, k: int):
    """a^k applied to vec by k successive multiplications."""
    if k < 0:
        raise ValueError("negative matrix power")
    vec = tuple(int(x) for x in vec)
    if k == 0:
        return vec
    if len(vec) != a.ncols:
        raise ValueError("dimension mismatch: %s applied to length %d"
                         % (a.shape, len(vec)))
    if k > 1 and a.nrows != a.ncols:
        raise ValueError("iterated application requires a square matrix")
    for _ in range(k):
        vec = a.apply(vec)
    return vec


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if a.nrows != a.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = a.nrows
    if n == 0:
        return 1
    m = [list(row) for row in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def in_column_span(a: IntMatrix, vec) -> bool:
    """Whether vec lies in the integer column span of a."""
    vec = tuple(int(x) for x in vec)
    if len(vec) != a.nrows:
        raise ValueError("dimension mismatch: vector length %d, matrix %s x %s"
                         % (len(vec), a.nrows, a.ncols))
    dec = smith_normal_form(a)
    y = dec.u.apply(vec)
    limit = min(a.nrows, a.ncols)
    for i, yi in enumerate(y):
        d = dec.factors[i] if i < limit else 0
        if d == 0:
            if yi != 0:
                return False
        elif yi % d:
            return False
    return True
