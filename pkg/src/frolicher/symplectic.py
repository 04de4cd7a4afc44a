"""Symplectic star, Lefschetz operators and the hard Lefschetz battery.

All operators act on the exterior algebra of a model with 2q generators and a
closed nondegenerate 2-form ω.  Degree-k forms use the lexicographic basis of
``model.degree_basis``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .cohomology import cochain_dims
from .complexes import CochainComplex
from .errors import DegenerateForm, InvalidModel, NoSymplecticForm
from .linalg import Matrix, Subspace, det, image, inverse, kernel_basis, preimage, rank
from .model import ModelSpec, _sort_sign, degree_basis, operator_matrix, require_valid, volume_form, wedge
from .scalars import I

__all__ = [
    "SymplecticOperators",
    "LefschetzVerdict",
    "build_operators",
    "de_rham_complex",
    "phi_intertwine_check",
    "hard_lefschetz",
    "lefschetz_equivalence_report",
    "lambda_power_identity",
]


@dataclass
class SymplecticOperators:
    """Operator families keyed by source degree k."""

    q: int
    star_s: dict
    L: dict
    Lambda: dict
    d_lambda: dict
    pairing_G: dict
    d: dict
    convention: str = "inverse"
    checks: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return 2 * self.q

    def zero(self, rows_deg: int, cols_deg: int) -> Matrix:
        return Matrix.zeros(_dim(self.n, rows_deg), _dim(self.n, cols_deg))

    def op(self, family: str, k: int) -> Matrix:
        """Matrix of ``family`` on degree k, zero outside the algebra."""
        shift = {"star_s": None, "L": 2, "Lambda": -2, "d_lambda": -1, "d": 1}[family]
        tgt = self.n - k if shift is None else k + shift
        m = getattr(self, family).get(k)
        return m if m is not None else self.zero(tgt, k)


def _dim(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def omega_matrix(spec: ModelSpec) -> Matrix:
    """Antisymmetric Ω with ω = Σ_{i<j} Ω_ij e_i ∧ e_j."""
    n = spec.n_generators
    m = Matrix.zeros(n, n)
    for mono, c in spec.symplectic_form.items():
        i, j = mono
        m.entries[i][j] = m.entries[i][j] + c
        m.entries[j][i] = m.entries[j][i] - c
    return m


def _pairing(g1: Matrix, basis: list) -> Matrix:
    """k-fold determinant extension of the pairing on generators."""
    size = len(basis)
    out = Matrix.zeros(size, size)
    for a, I_ in enumerate(basis):
        for b, J in enumerate(basis):
            if not I_:
                out.entries[a][b] = Fraction(1)
                continue
            minor = Matrix([[g1.entries[i][j] for j in J] for i in I_], len(I_), len(J))
            out.entries[a][b] = det(minor)
    return out


def _assemble(spec: ModelSpec, g1: Matrix, convention: str) -> SymplecticOperators:
    q = spec.half_codim
    n = 2 * q
    top = tuple(range(n))
    vol = volume_form(spec)
    nu = vol.get(top, Fraction(0))
    bases = {k: degree_basis(spec, k) for k in range(n + 1)}
    G = {k: _pairing(g1, bases[k]) for k in range(n + 1)}

    star = {}
    for k in range(n + 1):
        src, tgt = bases[k], bases[n - k]
        pos = {m: i for i, m in enumerate(tgt)}
        m = Matrix.zeros(len(tgt), len(src))
        for j in range(len(src)):
            for a, I_ in enumerate(src):
                g = G[k].entries[a][j]
                if not g:
                    continue
                comp = tuple(i for i in top if i not in I_)
                eps, _ = _sort_sign(I_ + comp)
                m.entries[pos[comp]][j] = m.entries[pos[comp]][j] + g * nu * eps
        star[k] = m

    L = {}
    for k in range(n - 1):
        src, tgt = bases[k], bases[k + 2]
        pos = {m: i for i, m in enumerate(tgt)}
        m = Matrix.zeros(len(tgt), len(src))
        for j, mono in enumerate(src):
            for t, c in wedge(spec.symplectic_form, {mono: Fraction(1)}).items():
                m.entries[pos[t]][j] = m.entries[pos[t]][j] + c
        L[k] = m

    dmat = {k: operator_matrix(spec, "d", k) for k in range(n)}
    ops = SymplecticOperators(q, star, L, {}, {}, G, dmat, convention)
    for k in range(2, n + 1):
        ops.Lambda[k] = star[n - k + 2] @ ops.op("L", n - k) @ star[k]
    for k in range(1, n + 1):
        sign = -1 if (k + 1) % 2 else 1
        ops.d_lambda[k] = (star[n - k + 1] @ ops.op("d", n - k) @ star[k]).scale(sign)
    return ops


def _invariants(spec: ModelSpec, ops: SymplecticOperators) -> dict:
    n = ops.n
    bases = {k: degree_basis(spec, k) for k in range(n + 1)}
    vol = volume_form(spec)
    nu = vol.get(tuple(range(n)), Fraction(0))

    # α ∧ *_s β = G(α, β) vol_ω on basis pairs
    pairing_ok = True
    for k in range(n + 1):
        tb = bases[n - k]
        for b, J in enumerate(bases[k]):
            sb = {tb[i]: c for i, c in enumerate(ops.star_s[k].column(b)) if c}
            for a, I_ in enumerate(bases[k]):
                lhs = wedge({I_: Fraction(1)}, sb).get(tuple(range(n)), Fraction(0))
                if lhs != ops.pairing_G[k].entries[a][b] * nu:
                    pairing_ok = False
    star_sq = all((ops.star_s[n - k] @ ops.star_s[k]) == Matrix.identity(_dim(n, k)) for k in range(n + 1))
    bracket = all(
        ops.op("d_lambda", k) == ops.op("d", k - 2) @ ops.op("Lambda", k) - ops.op("Lambda", k + 1) @ ops.op("d", k)
        for k in range(n + 1)
    )
    return {"pairing": pairing_ok, "star_squared_identity": star_sq, "d_lambda_bracket": bracket}


def build_operators(spec: ModelSpec) -> SymplecticOperators:
    """Assemble *_s, L, Λ, d^Λ and G, verifying their defining identities.

    The pairing on generators is the inverse of Ω or its transpose; the two
    differ by an overall sign on odd degrees.  The first one for which every
    identity holds is kept and recorded in ``convention``.
    """
    if spec.symplectic_form is None:
        raise NoSymplecticForm(f"{spec.name} carries no symplectic form")
    require_valid(spec)
    q = spec.half_codim
    if spec.n_generators != 2 * q:
        raise InvalidModel(f"{spec.n_generators} generators but half codimension {q}")
    key = ("symplectic_ops",)
    if key in spec._cache:
        return spec._cache[key]
    try:
        winv = inverse(omega_matrix(spec))
    except ZeroDivisionError as exc:
        raise DegenerateForm("ω is degenerate") from exc
    last = None
    for name, g1 in (("inverse", winv), ("inverse_transpose", winv.T)):
        ops = _assemble(spec, g1, name)
        ops.checks = _invariants(spec, ops)
        if all(ops.checks.values()):
            spec._cache[key] = ops
            return ops
        last = ops
    raise InvalidModel(f"symplectic operator identities fail: {last.checks}")


def de_rham_complex(spec: ModelSpec) -> CochainComplex:
    """(Λ•, d, d^Λ) of a symplectic model; d raises degree, d^Λ lowers it."""
    ops = build_operators(spec)
    n = ops.n
    degrees = {k: _dim(n, k) for k in range(n + 1)}
    return CochainComplex(degrees, dict(ops.d), dict(ops.d_lambda), 1, -1)


def lambda_power_identity(spec: ModelSpec) -> dict:
    """d Λ^k = Λ^k d + k Λ^{k-1} d^Λ on every degree, for 1 ≤ k ≤ q."""
    ops = build_operators(spec)
    n = ops.n
    out = {}

    def power(j: int, k: int) -> Matrix:
        m = Matrix.identity(_dim(n, j))
        for s in range(k):
            m = ops.op("Lambda", j - 2 * s) @ m
        return m

    for k in range(1, ops.q + 1):
        good = True
        for j in range(n + 1):
            lhs = ops.op("d", j - 2 * k) @ power(j, k)
            rhs = power(j + 1, k) @ ops.op("d", j) + (power(j - 1, k - 1) @ ops.op("d_lambda", j)).scale(k)
            good = good and lhs == rhs
        out[k] = good
    return out


# ---------------------------------------------------------------- Φ = e^{iω} e^{Λ/2i}


def _total(ops: SymplecticOperators, family: str, shift: int) -> Matrix:
    n = ops.n
    offs = [0]
    for k in range(n + 1):
        offs.append(offs[-1] + _dim(n, k))
    N = offs[-1]
    out = Matrix.zeros(N, N)
    for k in range(n + 1):
        t = k + shift
        if not 0 <= t <= n:
            continue
        m = ops.op(family, k) if family != "id" else Matrix.identity(_dim(n, k))
        for i in range(m.rows):
            for j in range(m.cols):
                if m.entries[i][j]:
                    out.entries[offs[t] + i][offs[k] + j] = m.entries[i][j]
    return out


def _exp_nilpotent(m: Matrix, c, terms: int) -> Matrix:
    out = Matrix.identity(m.rows)
    power = Matrix.identity(m.rows)
    for k in range(1, terms + 1):
        power = (power @ m).scale(c)
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


@dataclass
class PhiVerdict:
    invertible: bool
    identity_minus: bool
    identity_plus: bool
    decomposition: bool
    u_dims: dict

    @property
    def ok(self) -> bool:
        return self.invertible and self.identity_minus and self.decomposition


def phi_intertwine_check(spec: ModelSpec) -> PhiVerdict:
    """Build Φ = e^{iω} e^{Λ/2i} on the whole exterior algebra and test it.

    Reports invertibility, the intertwining d∘Φ = Φ∘(d − (1/2i) d^Λ), the same
    identity with the opposite sign in front of d^Λ, and whether the images
    U^{q-k} = Φ(Λ^k) split the algebra as a direct sum.
    """
    ops = build_operators(spec)
    n, q = ops.n, ops.q
    Lt = _total(ops, "L", 2)
    Lam = _total(ops, "Lambda", -2)
    D = _total(ops, "d", 1)
    DL = _total(ops, "d_lambda", -1)
    phi = _exp_nilpotent(Lt, I, q) @ _exp_nilpotent(Lam, 1 / (2 * I), q)
    N = phi.rows
    invertible = rank(phi) == N
    half = 1 / (2 * I)
    minus = D @ phi == phi @ (D - DL.scale(half))
    plus = D @ phi == phi @ (D + DL.scale(half))
    pieces = {}
    off = 0
    total = Subspace.zero(N)
    for k in range(n + 1):
        cols = [phi.column(off + j) for j in range(_dim(n, k))]
        off += _dim(n, k)
        sub = Subspace(N, cols)
        pieces[q - k] = sub.dim
        total = total + sub
    decomposition = sum(pieces.values()) == N and total.dim == N
    return PhiVerdict(invertible, minus, plus, decomposition, pieces)


# ---------------------------------------------------------------- Lefschetz


@dataclass
class LefschetzVerdict:
    per_k: dict
    overall: bool


def hard_lefschetz(spec: ModelSpec) -> LefschetzVerdict:
    """Rank of [α] ↦ [ω^k ∧ α] : H^{q-k} → H^{q+k} for 0 ≤ k ≤ q."""
    ops = build_operators(spec)
    cx = de_rham_complex(spec)
    dr = cochain_dims(cx, "d")
    q = ops.q
    per_k = {}
    for k in range(q + 1):
        src, tgt = q - k, q + k
        lk = Matrix.identity(_dim(ops.n, src))
        for s in range(k):
            lk = ops.op("L", src + 2 * s) @ lk
        reps = dr.representatives[src]
        exact = image(cx.dmat(tgt - 1))
        mapped = reps.map(lk) + exact
        r = mapped.dim - exact.dim
        sd, td = dr.dims[src], dr.dims[tgt]
        per_k[k] = {"map_rank": r, "source_dim": sd, "target_dim": td, "is_iso": r == sd == td}
    return LefschetzVerdict(per_k, all(v["is_iso"] for v in per_k.values()))


@dataclass
class EquivalenceReport:
    hard_lefschetz: bool
    quotient_iso: bool
    closed_representatives: bool
    ddlambda_lemma: bool
    details: dict = field(default_factory=dict)

    @property
    def conditions(self) -> tuple[bool, bool, bool, bool]:
        return (self.hard_lefschetz, self.quotient_iso, self.closed_representatives, self.ddlambda_lemma)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1


def lefschetz_equivalence_report(spec: ModelSpec) -> EquivalenceReport:
    """Evaluate the four Lefschetz-type conditions independently of one another."""
    from .verdicts import zgraded_lemma

    hl = hard_lefschetz(spec)
    cx = de_rham_complex(spec)
    details: dict = {"quotient_map": {}, "closed_reps": {}}
    iso_all = True
    reps_all = True
    for j in cx.degree_list():
        ker_l = kernel_basis(cx.lmat(j))
        im_l = image(cx.lmat(j + 1))
        im_d = image(cx.dmat(j - 1))
        # H(Ω, d^Λ) → H(Ω/dΩ, d^Λ)
        src_dim = ker_l.dim - im_l.dim
        cycles = preimage(cx.lmat(j), image(cx.dmat(j - 2)))
        bounds = im_d + im_l
        tgt_dim = cycles.dim - bounds.dim
        r = (ker_l + bounds).dim - bounds.dim
        iso = r == src_dim == tgt_dim
        details["quotient_map"][j] = {"rank": r, "source_dim": src_dim, "target_dim": tgt_dim, "is_iso": iso}
        iso_all = iso_all and iso
        # every d-closed class has a d^Λ-closed representative
        ok = kernel_basis(cx.dmat(j)) <= ker_l + im_d
        details["closed_reps"][j] = ok
        reps_all = reps_all and ok
    lemma = zgraded_lemma(cx)
    details["hard_lefschetz"] = hl.per_k
    return EquivalenceReport(hl.overall, iso_all, reps_all, lemma.holds, details)
