"""Independent brute-force oracle built on sympy.

Shares no code with the package: the exterior algebra, the derivative, the
contraction Λ and every rank are recomputed here from plain structure
constants, using sympy's permutation parity and sympy matrix ranks.
"""

from __future__ import annotations

from itertools import combinations

import sympy as sp
from sympy.combinatorics import Permutation


def _sign_sorted(seq):
    if len(set(seq)) < len(seq):
        return 0, None
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    parity = Permutation(order).parity() if len(seq) > 1 else 0
    return (-1) ** parity, tuple(sorted(seq))


class Algebra:
    """Λ(e_0..e_{n-1}) with d e_i = Σ c e_a ∧ e_b given as {i: {(a, b): c}}."""

    def __init__(self, n, d_gen, kinds=None):
        self.n = n
        self.d_gen = d_gen
        self.kinds = kinds or ["r"] * n

    def basis(self, k):
        return list(combinations(range(self.n), k))

    def d_mono(self, mono):
        out = {}
        for pos, g in enumerate(mono):
            for (a, b), c in self.d_gen.get(g, {}).items():
                seq = mono[:pos] + (a, b) + mono[pos + 1 :]
                s, m = _sign_sorted(seq)
                if s:
                    out[m] = out.get(m, 0) + (-1) ** pos * s * c
        return out

    def d_matrix(self, k, src=None, tgt=None):
        src = src if src is not None else self.basis(k)
        tgt = tgt if tgt is not None else self.basis(k + 1)
        pos = {m: i for i, m in enumerate(tgt)}
        M = sp.zeros(len(tgt), len(src))
        for j, m in enumerate(src):
            for t, c in self.d_mono(m).items():
                if t in pos:
                    M[pos[t], j] += c
        return M

    def bidegree(self, mono):
        p = sum(1 for i in mono if self.kinds[i] == "h")
        return p, len(mono) - p

    def cell(self, p, q):
        return [m for m in self.basis(p + q) if self.bidegree(m) == (p, q)]

    def contraction(self, pi, k):
        """Λ = Σ_{a<b} π_ab ι_a ι_b on degree k (ι_b applied first)."""
        src, tgt = self.basis(k), self.basis(k - 2) if k >= 2 else []
        pos = {m: i for i, m in enumerate(tgt)}
        M = sp.zeros(len(tgt), len(src))
        for j, m in enumerate(src):
            for a in range(self.n):
                for b in range(a + 1, self.n):
                    if pi[a, b] == 0 or a not in m or b not in m:
                        continue
                    pb = m.index(b)
                    m1 = m[:pb] + m[pb + 1 :]
                    pa = m1.index(a)
                    m2 = m1[:pa] + m1[pa + 1 :]
                    M[pos[m2], j] += pi[a, b] * (-1) ** (pa + pb)
        return M


def _rank(M):
    return M.rank() if M.rows and M.cols else 0


def _null(M):
    return M.cols - _rank(M)


def _hstack(*ms):
    ms = [m for m in ms if m.cols]
    if not ms:
        return sp.zeros(0, 0)
    return sp.Matrix.hstack(*ms)


def _vstack(*ms):
    ms = [m for m in ms if m.rows]
    if not ms:
        return None
    return sp.Matrix.vstack(*ms)


def symplectic_dims(alg: Algebra, omega: dict) -> dict:
    """de Rham, d+d^Λ and dd^Λ dims per degree, with d^Λ = [d, Λ]."""
    n = alg.n
    W = sp.zeros(n, n)
    for (a, b), c in omega.items():
        W[a, b] += c
        W[b, a] -= c
    pi = W.inv()
    size = {k: (len(alg.basis(k)) if 0 <= k <= n else 0) for k in range(-3, n + 4)}

    def d(k):
        if k < 0 or k >= n:
            return sp.zeros(size.get(k + 1, 0) if 0 <= k + 1 <= n else 0, size[k] if 0 <= k <= n else 0)
        return alg.d_matrix(k)

    def lam(k):
        if k < 2 or k > n:
            return sp.zeros(size[k - 2] if 0 <= k - 2 <= n else 0, size[k] if 0 <= k <= n else 0)
        return alg.contraction(pi, k)

    def dl(k):
        if k < 1 or k > n:
            return sp.zeros(size[k - 1] if 0 <= k - 1 <= n else 0, size[k] if 0 <= k <= n else 0)
        return d(k - 2) * lam(k) - lam(k + 1) * d(k) if k >= 2 else -lam(k + 1) * d(k)

    out = {"de_rham": {}, "d_plus_dlambda": {}, "ddlambda": {}, "d_lambda": {}}
    for j in range(n + 1):
        dj, dlj = d(j), dl(j)
        out["de_rham"][j] = _null(dj) - _rank(d(j - 1))
        out["d_lambda"][j] = _null(dlj) - _rank(dl(j + 1))
        both = _vstack(dj, dlj)
        kk = size[j] - (_rank(both) if both is not None else 0)
        # Im(d dΛ) into degree j comes from degree j
        ddl_in = d(j - 1) * dl(j) if j >= 1 else sp.zeros(size[j], size[j])
        out["d_plus_dlambda"][j] = kk - _rank(ddl_in)
        ddl_out = d(j - 1) * dl(j) if j >= 1 else sp.zeros(0, size[j])
        ims = _hstack(d(j - 1), dl(j + 1))
        out["ddlambda"][j] = _null(ddl_out) - _rank(ims)
    return out


def bigraded_dims(alg: Algebra) -> dict:
    """Total, Bott-Chern and Aeppli dims of a complex model by brute force."""
    n1 = sum(1 for k in alg.kinds if k == "h")
    n2 = alg.n - n1

    def op(which, p, q):
        src = alg.cell(p, q) if 0 <= p <= n1 and 0 <= q <= n2 else []
        tp, tq = (p + 1, q) if which == "del" else (p, q + 1)
        tgt = alg.cell(tp, tq) if 0 <= tp <= n1 and 0 <= tq <= n2 else []
        if not src or not tgt:
            return sp.zeros(len(tgt), len(src))
        return alg.d_matrix(p + q, src, tgt)

    bc, ae = {}, {}
    for p in range(n1 + 1):
        for q in range(n2 + 1):
            dim = len(alg.cell(p, q))
            both = _vstack(op("del", p, q), op("delbar", p, q))
            kk = dim - (_rank(both) if both is not None else 0)
            into = op("del", p - 1, q) if p >= 1 else sp.zeros(dim, 0)
            ddb_in = op("del", p - 1, q) * op("delbar", p - 1, q - 1) if p >= 1 and q >= 1 else sp.zeros(dim, 0)
            bc[(p, q)] = kk - _rank(ddb_in)
            ddb_out = op("del", p, q + 1) * op("delbar", p, q)
            ims = _hstack(into, op("delbar", p, q - 1) if q >= 1 else sp.zeros(dim, 0))
            ae[(p, q)] = _null(ddb_out) - _rank(ims)
    tot = {}
    for k in range(alg.n + 1):
        tot[k] = _null(alg.d_matrix(k)) - (_rank(alg.d_matrix(k - 1)) if k >= 1 else 0)
    return {"total": tot, "bott_chern": bc, "aeppli": ae}


# the models below are transcribed independently from the coframes they stand for

HEISENBERG = Algebra(4, {2: {(0, 1): -1}})
HEISENBERG_OMEGA = {(0, 2): 1, (1, 3): 1}

NONLEMMA = Algebra(6, {2: {(0, 1): -1}, 5: {(3, 4): -1}}, kinds=["h", "h", "h", "a", "a", "a"])

LEMMA = Algebra(4, {1: {(2, 0): 1}, 3: {(0, 2): 1}}, kinds=["h", "h", "a", "a"])
