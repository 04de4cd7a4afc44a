"""Double complexes, the Doub re-grading, total complexes and spectral sequences.

A :class:`DoubleComplex` is either bounded (finitely many nonzero cells) or
periodic under a shift vector.  Periodic complexes store one fundamental window
of cells ``{(p, q) : 0 <= q < shift_q}`` and answer every query by reducing the
bidegree into that window.

Spectral pages are computed directly from the filtration of the total complex:

    Z_r^p   = {x in F^p Tot^n : D x in F^(p+r) Tot^(n+1)}
    E_r^p,q = Z_r^p / (Z_(r-1)^(p+1) + D Z_(r-1)^(p-r+1))

with n = p + q.  The second filtration is the first filtration of the
transposed complex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from .errors import GcdViolation, MissingSecondDifferential, NotComplexModel, Unbounded
from .linalg import Matrix, Subspace, kernel_basis, quotient_dim
from .model import ModelSpec, monomial_basis, operator_matrix, require_valid

__all__ = [
    "DoubleComplex",
    "CochainComplex",
    "SpectralPage",
    "double_complex_from_model",
    "doub_construction",
    "total_complex",
    "spectral_page",
    "spectral_pages",
    "degeneration_page",
    "random_double_complex",
]

Cell = tuple  # (p, q)


@dataclass
class DoubleComplex:
    """Bigraded spaces with δ1 of order (1,0) and δ2 of order (0,1).

    ``delta1[(p, q)]`` maps cell (p, q) to (p+1, q); ``delta2[(p, q)]`` maps it
    to (p, q+1).  Missing matrices are zero maps.
    """

    cells: dict
    delta1: dict = field(default_factory=dict)
    delta2: dict = field(default_factory=dict)
    periodicity: tuple | None = None
    name: str = ""

    def __post_init__(self):
        self.cells = {c: d for c, d in self.cells.items() if d > 0}
        if self.periodicity is not None:
            sp, sq = self.periodicity
            if sq < 0 or (sq == 0 and sp < 0):
                sp, sq = -sp, -sq
            if (sp, sq) == (0, 0):
                raise ValueError("zero shift vector")
            self.periodicity = (sp, sq)
        self._cache = {}

    # ---- access

    @property
    def is_bounded(self) -> bool:
        return self.periodicity is None

    def reduce(self, p: int, q: int) -> Cell:
        if self.periodicity is None:
            return (p, q)
        sp, sq = self.periodicity
        if sq:
            t = q // sq
        else:
            t = p // sp
        return (p - t * sp, q - t * sq)

    def dim(self, p: int, q: int) -> int:
        return self.cells.get(self.reduce(p, q), 0)

    def d1(self, p: int, q: int) -> Matrix:
        m = self.delta1.get(self.reduce(p, q))
        if m is None:
            return Matrix.zeros(self.dim(p + 1, q), self.dim(p, q))
        return m

    def d2(self, p: int, q: int) -> Matrix:
        m = self.delta2.get(self.reduce(p, q))
        if m is None:
            return Matrix.zeros(self.dim(p, q + 1), self.dim(p, q))
        return m

    @property
    def period(self) -> int | None:
        """Shift of total degree under the periodicity (None when bounded)."""
        if self.periodicity is None:
            return None
        t = abs(sum(self.periodicity))
        if t == 0:
            raise Unbounded("periodic shift preserves total degree: antidiagonals are infinite")
        return t

    def antidiagonal(self, n: int) -> list[Cell]:
        """Nonzero cells with p + q = n, sorted by p."""
        key = ("anti", n)
        if key in self._cache:
            return self._cache[key]
        if self.periodicity is None:
            out = sorted(c for c in self.cells if c[0] + c[1] == n)
        else:
            t = sum(self.periodicity)
            if t == 0:
                raise Unbounded("periodic shift preserves total degree: antidiagonals are infinite")
            sp, sq = self.periodicity
            out = []
            for (p0, q0) in self.cells:
                k, r = divmod(n - p0 - q0, t)
                if r == 0:
                    out.append((p0 + k * sp, q0 + k * sq))
            out.sort()
        self._cache[key] = out
        return out

    def total_degrees(self) -> list[int]:
        """Total degrees to examine: all nonzero ones, or one period window."""
        if self.periodicity is None:
            if not self.cells:
                return []
            tot = [p + q for p, q in self.cells]
            return list(range(min(tot), max(tot) + 1))
        return list(range(self.period))

    def window(self) -> list[Cell]:
        """Cells reported in tables: all of them, or the fundamental window."""
        return sorted(self.cells)

    def transpose(self) -> "DoubleComplex":
        cells = {(q, p): d for (p, q), d in self.cells.items()}
        d1 = {(q, p): m for (p, q), m in self.delta2.items()}
        d2 = {(q, p): m for (p, q), m in self.delta1.items()}
        per = None if self.periodicity is None else (self.periodicity[1], self.periodicity[0])
        tr = DoubleComplex(cells, d1, d2, per, self.name + "ᵀ")
        if per is not None:
            # keep the window convention of the transposed shift
            tr.cells = {tr.reduce(*c): d for c, d in cells.items()}
            tr.delta1 = {tr.reduce(*c): m for c, m in d1.items()}
            tr.delta2 = {tr.reduce(*c): m for c, m in d2.items()}
        return tr

    def check(self) -> list[str]:
        """Violations of δ1² = δ2² = δ1δ2 + δ2δ1 = 0 (empty when valid)."""
        bad = []
        for (p, q) in self.window():
            if not (self.d1(p + 1, q) @ self.d1(p, q)).is_zero():
                bad.append(f"δ1² ≠ 0 at {(p, q)}")
            if not (self.d2(p, q + 1) @ self.d2(p, q)).is_zero():
                bad.append(f"δ2² ≠ 0 at {(p, q)}")
            if not (self.d1(p, q + 1) @ self.d2(p, q) + self.d2(p + 1, q) @ self.d1(p, q)).is_zero():
                bad.append(f"δ1δ2 + δ2δ1 ≠ 0 at {(p, q)}")
        return bad

    # ---- total-degree blocks

    def tot_dim(self, n: int) -> int:
        return sum(self.dim(*c) for c in self.antidiagonal(n))

    def offsets(self, n: int) -> dict:
        out = {}
        o = 0
        for c in self.antidiagonal(n):
            out[c] = o
            o += self.dim(*c)
        return out

    def tot_parts(self, n: int) -> tuple[Matrix, Matrix]:
        """(δ1, δ2) as block matrices Tot^n -> Tot^(n+1)."""
        key = ("parts", n)
        if key in self._cache:
            return self._cache[key]
        src, tgt = self.antidiagonal(n), self.antidiagonal(n + 1)
        tpos = {c: i for i, c in enumerate(tgt)}
        blocks1 = [[Matrix.zeros(self.dim(*t), self.dim(*s)) for s in src] for t in tgt]
        blocks2 = [[Matrix.zeros(self.dim(*t), self.dim(*s)) for s in src] for t in tgt]
        for j, (p, q) in enumerate(src):
            if (p + 1, q) in tpos:
                blocks1[tpos[(p + 1, q)]][j] = self.d1(p, q)
            if (p, q + 1) in tpos:
                blocks2[tpos[(p, q + 1)]][j] = self.d2(p, q)
        ns, nt = self.tot_dim(n), self.tot_dim(n + 1)
        m1 = Matrix.block(blocks1) if tgt and src else Matrix.zeros(nt, ns)
        m2 = Matrix.block(blocks2) if tgt and src else Matrix.zeros(nt, ns)
        self._cache[key] = (m1, m2)
        return m1, m2

    def tot_d(self, n: int) -> Matrix:
        key = ("D", n)
        if key not in self._cache:
            a, b = self.tot_parts(n)
            self._cache[key] = a + b
        return self._cache[key]


@dataclass
class CochainComplex:
    """Z-graded spaces with ``d`` of order ``d_order`` and optionally a second
    differential ``d_lambda`` of order ``lambda_order``.

    With ``period`` set, degrees are read modulo the period (used for the total
    complex of a periodic double complex).
    """

    degrees: dict
    d: dict = field(default_factory=dict)
    d_lambda: dict | None = None
    d_order: int = 1
    lambda_order: int = -1
    period: int | None = None

    def _red(self, j: int) -> int:
        if self.period is None:
            return j
        lo = min(self.degrees)
        return lo + (j - lo) % self.period

    def dim(self, j: int) -> int:
        return self.degrees.get(self._red(j), 0)

    def dmat(self, j: int) -> Matrix:
        m = self.d.get(self._red(j))
        if m is None:
            return Matrix.zeros(self.dim(j + self.d_order), self.dim(j))
        return m

    def lmat(self, j: int) -> Matrix:
        if self.d_lambda is None:
            raise MissingSecondDifferential("complex carries only one differential")
        m = self.d_lambda.get(self._red(j))
        if m is None:
            return Matrix.zeros(self.dim(j + self.lambda_order), self.dim(j))
        return m

    @property
    def has_second(self) -> bool:
        return self.d_lambda is not None

    def degree_list(self) -> list[int]:
        return sorted(j for j, v in self.degrees.items() if v > 0)

    def check(self) -> list[str]:
        bad = []
        for j in self.degree_list():
            if not (self.dmat(j + self.d_order) @ self.dmat(j)).is_zero():
                bad.append(f"d² ≠ 0 at degree {j}")
            if self.d_lambda is not None:
                if not (self.lmat(j + self.lambda_order) @ self.lmat(j)).is_zero():
                    bad.append(f"second differential squares to nonzero at degree {j}")
                lhs = self.dmat(j + self.lambda_order) @ self.lmat(j) + self.lmat(j + self.d_order) @ self.dmat(j)
                if not lhs.is_zero():
                    bad.append(f"differentials do not anticommute at degree {j}")
        return bad


# ---------------------------------------------------------------- constructions


def double_complex_from_model(spec: ModelSpec) -> DoubleComplex:
    """The Dolbeault double complex (δ1 = ∂, δ2 = ∂̄) of a complex model."""
    if not spec.is_complex:
        raise NotComplexModel(f"{spec.name} is not a complex model")
    require_valid(spec)
    n1, n2 = len(spec.holo), len(spec.antiholo)
    cells, d1, d2 = {}, {}, {}
    for p in range(n1 + 1):
        for q in range(n2 + 1):
            cells[(p, q)] = len(monomial_basis(spec, p, q))
            if p < n1:
                d1[(p, q)] = operator_matrix(spec, "del", (p, q))
            if q < n2:
                d2[(p, q)] = operator_matrix(spec, "delbar", (p, q))
    return DoubleComplex(cells, d1, d2, None, spec.name)


def doub_construction(cx: CochainComplex, order1: int, order2: int) -> DoubleComplex:
    """Re-grade (V, δ1, δ2) into Doub^{p,q} = V^(order1·p + order2·q).

    The result is periodic under the shift (-order2, order1) (normalised so the
    q-component is positive); for orders (1, -1) this is the shift (1, 1).
    """
    if not cx.has_second:
        raise MissingSecondDifferential("Doub needs two differentials")
    if order1 == 0 or order2 == 0:
        raise ValueError("differential orders must be nonzero")
    if gcd(abs(order1), abs(order2)) != 1:
        raise GcdViolation(f"gcd(|{order1}|, |{order2}|) = {gcd(abs(order1), abs(order2))} ≠ 1")
    if (order1, order2) != (cx.d_order, cx.lambda_order):
        raise ValueError(f"complex carries differentials of orders {(cx.d_order, cx.lambda_order)}, not {(order1, order2)}")
    dc = DoubleComplex({}, {}, {}, (-order2, order1), "Doub")
    sp, sq = dc.periodicity
    cells, d1, d2 = {}, {}, {}
    for j in cx.degree_list():
        for q in range(sq):
            num = j - order2 * q
            if num % order1:
                continue
            p = num // order1
            cells[(p, q)] = cx.dim(j)
            d1[(p, q)] = cx.dmat(j)
            d2[(p, q)] = cx.lmat(j)
    dc.cells = cells
    dc.delta1 = d1
    dc.delta2 = d2
    return dc


def total_complex(dc: DoubleComplex) -> CochainComplex:
    """Tot^k = ⊕_{p+q=k} cells with D = δ1 + δ2."""
    degs = dc.total_degrees()
    period = dc.period
    return CochainComplex(
        degrees={n: dc.tot_dim(n) for n in degs},
        d={n: dc.tot_d(n) for n in degs},
        period=period,
    )


# ---------------------------------------------------------------- spectral sequences


@dataclass
class SpectralPage:
    r: int
    filtration: str
    dims: dict
    differential_ranks: dict


class _Filtered:
    """First-filtration machinery on one double complex (memoised)."""

    def __init__(self, dc: DoubleComplex):
        self.dc = dc
        self._z = {}
        self._den = {}

    def _fcols(self, n: int, s: int) -> list[int]:
        """Coordinates of F^s Tot^n."""
        cols = []
        off = self.dc.offsets(n)
        for c in self.dc.antidiagonal(n):
            if c[0] >= s:
                cols.extend(range(off[c], off[c] + self.dc.dim(*c)))
        return cols

    def Z(self, r: int, p: int, n: int) -> Subspace:
        key = (r, p, n)
        if key in self._z:
            return self._z[key]
        dc = self.dc
        N = dc.tot_dim(n)
        cols = self._fcols(n, p)
        if not cols:
            res = Subspace.zero(N)
        else:
            D = dc.tot_d(n)
            keep = set(self._fcols(n + 1, p + r))
            rows = [i for i in range(D.rows) if i not in keep]
            if not rows:
                res = Subspace.coordinate(N, cols)
            else:
                sub = Matrix([[D.entries[i][j] for j in cols] for i in rows], len(rows), len(cols))
                ker = kernel_basis(sub)
                vecs = []
                for v in ker.vectors:
                    w = [0] * N
                    for k, j in enumerate(cols):
                        w[j] = v[k]
                    vecs.append(w)
                res = Subspace(N, vecs)
        self._z[key] = res
        return res

    def denominator(self, r: int, p: int, n: int) -> Subspace:
        key = (r, p, n)
        if key in self._den:
            return self._den[key]
        lower = self.Z(r - 1, p + 1, n)
        prev = self.Z(r - 1, p - r + 1, n - 1)
        bnd = prev.map(self.dc.tot_d(n - 1)) if prev.ambient_dim else Subspace.zero(self.dc.tot_dim(n))
        res = lower + bnd
        self._den[key] = res
        return res

    def dim(self, r: int, p: int, q: int) -> int:
        n = p + q
        if self.dc.dim(p, q) == 0:
            return 0
        return quotient_dim(self.Z(r, p, n), self.denominator(r, p, n))

    def rank(self, r: int, p: int, q: int) -> int:
        """Rank of d_r : E_r^{p,q} -> E_r^{p+r, q-r+1}."""
        n = p + q
        if self.dc.dim(p, q) == 0 or self.dc.dim(p + r, q - r + 1) == 0:
            return 0
        z = self.Z(r, p, n)
        imgs = z.map(self.dc.tot_d(n))
        den = self.denominator(r, p + r, n + 1)
        return (imgs + den).dim - den.dim


def _engine(dc: DoubleComplex, filtration: str) -> tuple[_Filtered, bool]:
    if filtration not in ("first", "second"):
        raise ValueError("filtration must be 'first' or 'second'")
    key = ("engine", filtration)
    if key not in dc._cache:
        base = dc if filtration == "first" else dc.transpose()
        dc._cache[key] = _Filtered(base)
    return dc._cache[key], filtration == "second"


def spectral_page(dc: DoubleComplex, filtration: str, r: int) -> SpectralPage:
    """Page E_r of the chosen filtration, keyed by the cells of ``dc``.

    For the second filtration the entry at (p, q) is the page of the filtration
    by q at the cell (p, q): its E_1 is δ1-cohomology.
    """
    if r < 0:
        raise ValueError("page index must be non-negative")
    eng, swap = _engine(dc, filtration)
    dims, ranks = {}, {}
    for (p, q) in dc.window():
        a, b = (q, p) if swap else (p, q)
        dims[(p, q)] = eng.dim(r, a, b)
        ranks[(p, q)] = eng.rank(r, a, b)
    return SpectralPage(r, filtration, dims, ranks)


def _r_max(dc: DoubleComplex) -> int:
    ps = []
    for n in dc.total_degrees():
        for m in (n, n + 1):
            ps.extend(c[0] for c in dc.antidiagonal(m))
            ps.extend(c[1] for c in dc.antidiagonal(m))
    if not ps:
        return 2
    return max(ps) - min(ps) + 2


def spectral_pages(dc: DoubleComplex, filtration: str, max_page: int | None = None) -> list[SpectralPage]:
    top = _r_max(dc) if max_page is None else max_page
    return [spectral_page(dc, filtration, r) for r in range(top + 1)]


def degeneration_page(dc: DoubleComplex, filtration: str) -> int:
    """Smallest r >= 1 with d_s = 0 for every s >= r."""
    last_nonzero = 0
    for r in range(1, _r_max(dc) + 1):
        page = spectral_page(dc, filtration, r)
        if any(page.differential_ranks.values()):
            last_nonzero = r
    return last_nonzero + 1


# ---------------------------------------------------------------- random complexes


def _random_invertible(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    from fractions import Fraction

    from .linalg import rank as _rank

    while True:
        m = Matrix([[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)], n, n)
        if _rank(m) == n:
            break
    # exact inverse via Gauss-Jordan on [m | I]
    from .linalg import rref

    aug = [m.entries[i] + Matrix.identity(n).entries[i] for i in range(n)]
    rows, _ = rref(aug, 2 * n)
    inv = Matrix([r[n:] for r in rows], n, n)
    return m, inv


def random_double_complex(rng: random.Random, size: int = 3, max_dim: int = 4, lemma: bool | None = None):
    """A random valid bounded double complex and whether it satisfies the lemma.

    The complex is a direct sum of squares, dots and zigzags placed on the grid
    0 <= p, q < size, then disguised by a random change of basis in every cell.
    Over a field every bounded double complex has this form, and the d'd''-lemma
    holds exactly when no zigzag of length > 1 occurs; the returned flag is that
    ground truth.  ``lemma`` forces the outcome when given.
    """
    from fractions import Fraction

    cells: dict = {}
    arrows1: list = []  # (src element, tgt element, coeff) elements are (cell, index)
    arrows2: list = []
    has_zigzag = False

    def room(cs):
        need = {}
        for c in cs:
            need[c] = need.get(c, 0) + 1
        return all(0 <= c[0] < size and 0 <= c[1] < size and cells.get(c, 0) + k <= max_dim for c, k in need.items())

    def new(c):
        cells[c] = cells.get(c, 0) + 1
        return (c, cells[c] - 1)

    def coeff():
        return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))

    want_zig = lemma is False or (lemma is None and rng.random() < 0.6)
    pieces = rng.randint(2, 6)
    for k in range(pieces):
        allow_zig = lemma is not True and want_zig
        kind = rng.choice(["dot", "square", "zigzag", "zigzag"] if allow_zig else ["dot", "square"])
        if lemma is False and k == 0:
            kind = "zigzag"
        if kind == "dot":
            c = (rng.randrange(size), rng.randrange(size))
            if room([c]):
                new(c)
        elif kind == "square":
            p, q = rng.randrange(size - 1), rng.randrange(size - 1)
            cs = [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)]
            if room(cs):
                a, b, c, e = (new(x) for x in cs)
                s = coeff()
                arrows1.append((a, b, s))
                arrows2.append((a, c, s))
                arrows2.append((b, e, Fraction(1)))
                arrows1.append((c, e, Fraction(-1)))
        else:
            n = rng.randrange(2 * size - 2)
            nsrc = rng.randint(1, 3)
            p0 = rng.randint(max(0, n - size + 1), min(n, size - 1))
            srcs = [(p0 + i, n - p0 - i) for i in range(nsrc)]
            left = rng.random() < 0.5
            right = rng.random() < 0.5
            tg = [(p + 1, q) for (p, q) in srcs[:-1]]
            if left:
                tg.insert(0, (srcs[0][0], srcs[0][1] + 1))
            if right:
                tg.append((srcs[-1][0] + 1, srcs[-1][1]))
            if nsrc + len(tg) < 2 or not room(srcs + tg):
                continue
            S = [new(c) for c in srcs]
            T = {c: new(c) for c in tg}
            for (p, q), s in zip(srcs, S):
                if (p + 1, q) in T:
                    arrows1.append((s, T[(p + 1, q)], coeff()))
                if (p, q + 1) in T:
                    arrows2.append((s, T[(p, q + 1)], coeff()))
            has_zigzag = True
    if lemma is False and not has_zigzag:
        return random_double_complex(rng, size, max_dim, lemma)

    def build(arrows, step):
        mats = {}
        for c, dsrc in cells.items():
            t = (c[0] + step[0], c[1] + step[1])
            mats[c] = Matrix.zeros(cells.get(t, 0), dsrc)
        for (sc, si), (tc, ti), v in arrows:
            mats[sc].entries[ti][si] = v
        return mats

    d1 = build(arrows1, (1, 0))
    d2 = build(arrows2, (0, 1))
    change = {c: _random_invertible(rng, d) for c, d in cells.items()}
    for mats, step in ((d1, (1, 0)), (d2, (0, 1))):
        for c, m in list(mats.items()):
            t = (c[0] + step[0], c[1] + step[1])
            if t in change and m.rows:
                mats[c] = change[t][0] @ m @ change[c][1]
    dc = DoubleComplex(dict(cells), d1, d2, None, "random")
    return dc, not has_zigzag
