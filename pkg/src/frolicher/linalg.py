"""Dense exact linear algebra over Q and Q(i).

Everything here is deterministic: echelon reduction always takes the leftmost
pivot column and the first row with a nonzero entry in it, so identical inputs
give identical bases.  Subspaces keep a reduced row echelon basis, which makes
subspace equality a plain comparison of basis rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NotContained
from .scalars import conj

__all__ = [
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "kernel_basis",
    "image",
    "intersect",
    "quotient_dim",
    "inner",
    "det",
    "inverse",
    "preimage",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class Matrix:
    """Immutable-by-convention dense matrix of exact scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], rows: int | None = None, cols: int | None = None):
        data = [list(r) for r in entries]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entry grid does not match the declared shape")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        return cls([[columns[j][i] for j in range(cols)] for i in range(rows)], rows, cols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block row must share its height."""
        rows = []
        for brow in blocks:
            h = brow[0].rows if brow else 0
            for i in range(h):
                line = []
                for b in brow:
                    line.extend(b.entries[i])
                rows.append(line)
        ncols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls(rows, len(rows), ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            line = []
            for c in ot:
                s = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                line.append(s)
            out.append(line)
        return Matrix(out, self.rows, other.cols)

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.entries]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.entries], self.rows, self.cols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)], self.cols, self.rows)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose: the adjoint for an orthonormal basis."""
        return Matrix([[conj(a) for a in c] for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)], self.cols, self.rows)

    def conjugate(self) -> "Matrix":
        return Matrix([[conj(a) for a in r] for r in self.entries], self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    __hash__ = None

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a list of row vectors.

    Returns the nonzero reduced rows and their pivot columns.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        found = None
        for i in range(r, nrows):
            if work[i][c]:
                found = i
                break
        if found is None:
            continue
        work[r], work[found] = work[found], work[r]
        piv = work[r][c]
        if piv != 1:
            inv = ONE / piv
            work[r] = [a * inv if a else ZERO for a in work[r]]
        prow = work[r]
        nzc = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = work[i][c]
                if f:
                    row = work[i]
                    for k in nzc:
                        row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.rows <= m.cols:
        return len(rref(m.entries, m.cols)[1])
    return len(rref(m.T.entries, m.rows)[1])


class Subspace:
    """A linear subspace of K^n held by a reduced row echelon basis."""

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        self.ambient_dim = ambient_dim
        self._rows, self._pivots = rref(vecs, ambient_dim) if vecs else ([], [])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).entries)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        vecs = []
        for i in sorted(set(indices)):
            v = [ZERO] * n
            v[i] = ONE
            vecs.append(v)
        return cls(n, vecs)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def vectors(self) -> list[list]:
        return [list(r) for r in self._rows]

    @property
    def basis(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self._rows, self.ambient_dim)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self._rows + other._rows)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        w = list(v)
        for row, c in zip(self._rows, self._pivots):
            f = w[c]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def __le__(self, other: "Subspace") -> bool:
        other._check(self)
        return all(other.contains_vector(r) for r in self._rows)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    __hash__ = None

    def orthogonal_complement(self) -> "Subspace":
        """Complement for the standard Hermitian product <u, v> = sum u_i conj(v_i)."""
        if not self._rows:
            return Subspace.full(self.ambient_dim)
        m = Matrix([[conj(a) for a in r] for r in self._rows], len(self._rows), self.ambient_dim)
        return kernel_basis(m)

    def map(self, m: Matrix) -> "Subspace":
        """Image of this subspace under ``m``."""
        if m.cols != self.ambient_dim:
            raise AmbientMismatch("matrix columns differ from ambient dimension")
        return Subspace(m.rows, [m.apply(r) for r in self._rows])

    def embed(self, n: int, offset: int) -> "Subspace":
        """Place this subspace into coordinates ``offset .. offset+dim`` of K^n."""
        vecs = []
        for r in self._rows:
            v = [ZERO] * n
            v[offset : offset + self.ambient_dim] = r
            vecs.append(v)
        return Subspace(n, vecs)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    """The null space {v : m v = 0} as a subspace of K^cols."""
    n = m.cols
    if m.rows == 0:
        return Subspace.full(n)
    rows, pivots = rref(m.entries, n)
    pivset = set(pivots)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for row, c in zip(rows, pivots):
            if row[f]:
                v[c] = -row[f]
        vecs.append(v)
    return Subspace(n, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of K^rows."""
    if m.cols == 0:
        return Subspace.zero(m.rows)
    return Subspace(m.rows, m.T.entries)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b, computed from the kernel of [A | -B]."""
    a._check(b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    ka, kb = a.dim, b.dim
    rows = []
    for i in range(n):
        rows.append([a._rows[j][i] for j in range(ka)] + [-b._rows[j][i] for j in range(kb)])
    null = kernel_basis(Matrix(rows, n, ka + kb))
    vecs = []
    for x in null._rows:
        v = [ZERO] * n
        for j in range(ka):
            c = x[j]
            if c:
                v = [s + c * t for s, t in zip(v, a._rows[j])]
        vecs.append(v)
    return Subspace(n, vecs)


def quotient_dim(numerator: Subspace, denominator: Subspace) -> int:
    numerator._check(denominator)
    if not denominator <= numerator:
        raise NotContained("denominator is not contained in numerator")
    return numerator.dim - denominator.dim


def inner(u: Sequence, v: Sequence):
    """Hermitian product, linear in the first slot."""
    return sum((a * conj(b) for a, b in zip(u, v) if a and b), ZERO)


def det(m: Matrix):
    """Determinant by fraction-exact Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    work = [list(r) for r in m.entries]
    n = m.rows
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            out = -out
        p = work[c][c]
        out = out * p
        for i in range(c + 1, n):
            f = work[i][c]
            if f:
                f = f / p
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return out


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ZeroDivisionError when singular."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.entries)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in rows[:n]], n, n)


def preimage(m: Matrix, target: Subspace) -> Subspace:
    """{x : m x in target}."""
    if target.ambient_dim != m.rows:
        raise AmbientMismatch("target subspace does not live in the codomain")
    perp = target.orthogonal_complement()
    if perp.dim == 0:
        return Subspace.full(m.cols)
    rows = Matrix([[conj(a) for a in r] for r in perp.vectors], perp.dim, m.rows)
    return kernel_basis(rows @ m)
