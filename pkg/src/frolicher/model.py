"""Finite invariant-form models.

A model is a free exterior algebra on degree-one generators together with a
differential given by structure constants on the generators.  Complex models
split their generators into holomorphic and antiholomorphic halves paired by a
conjugation; real models may carry a symplectic form instead (or as well).

Monomials are strictly increasing tuples of generator indices ordered
lexicographically.  The wedge sign is the parity of the sorting permutation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb, factorial
from typing import Iterable, Mapping

from .errors import (
    DuplicateGenerator,
    InvalidModel,
    NotComplexModel,
    ParseError,
    UnknownGenerator,
    UnknownModel,
)
from .linalg import Matrix
from .scalars import conj, format_scalar, parse_scalar

__all__ = [
    "Generator",
    "ModelSpec",
    "ValidationReport",
    "Element",
    "wedge",
    "parse_model",
    "load_model",
    "validate",
    "monomial_basis",
    "degree_basis",
    "operator_matrix",
    "builtin",
    "BUILTIN_NAMES",
    "torus_document",
]

Monomial = tuple  # strictly increasing generator indices
Element = dict  # Monomial -> Scalar

GENERATOR_TYPES = {"holo": (1, 0), "antiholo": (0, 1), "real": (1, 0)}


def _sort_sign(idx: Iterable[int]) -> tuple[int, Monomial | None]:
    """Sign of the permutation sorting ``idx``, and the sorted tuple (None on repeats)."""
    seq = list(idx)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def _add_into(acc: Element, mono: Monomial, c) -> None:
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def wedge(a: Element, b: Element) -> Element:
    out: Element = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s, m = _sort_sign(ma + mb)
            if s:
                _add_into(out, m, s * ca * cb)
    return out


def scale(a: Element, c) -> Element:
    return {m: c * v for m, v in a.items() if c * v}


def add(a: Element, b: Element) -> Element:
    out = dict(a)
    for m, v in b.items():
        _add_into(out, m, v)
    return out


@dataclass(frozen=True)
class Generator:
    symbol: str
    kind: str  # "holo" | "antiholo" | "real"

    @property
    def bidegree(self) -> tuple[int, int]:
        return GENERATOR_TYPES[self.kind]


@dataclass(frozen=True)
class ModelSpec:
    name: str
    field: str
    generators: tuple[Generator, ...]
    differential: Mapping[int, Element]
    conjugation: tuple[tuple[int, int], ...] = ()
    symplectic_form: Element | None = None
    half_codim: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    @property
    def is_complex(self) -> bool:
        return any(g.kind != "real" for g in self.generators)

    @property
    def holo(self) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.kind == "holo"]

    @property
    def antiholo(self) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.kind == "antiholo"]

    def index(self, symbol: str) -> int:
        for i, g in enumerate(self.generators):
            if g.symbol == symbol:
                return i
        raise UnknownGenerator(f"unknown generator {symbol!r}")

    def bidegree(self, mono: Monomial) -> tuple[int, int]:
        p = sum(self.generators[i].bidegree[0] for i in mono)
        return p, len(mono) - p

    def conj_map(self) -> dict[int, int]:
        m = {}
        for a, b in self.conjugation:
            m[a] = b
            m[b] = a
        return m

    def d(self, elem: Element) -> Element:
        """Exterior derivative, extended from generators as a degree +1 derivation."""
        out: Element = {}
        for mono, c in elem.items():
            for pos, gi in enumerate(mono):
                dg = self.differential.get(gi)
                if not dg:
                    continue
                left = {mono[:pos]: Fraction(1)}
                right = {mono[pos + 1 :]: Fraction(1)}
                term = wedge(wedge(left, dg), right)
                sgn = -1 if pos % 2 else 1
                for m, v in term.items():
                    _add_into(out, m, sgn * c * v)
        return out

    def conjugate(self, elem: Element) -> Element:
        cm = self.conj_map()
        out: Element = {}
        for mono, c in elem.items():
            s, m = _sort_sign(cm[i] for i in mono)
            _add_into(out, m, s * conj(c))
        return out

    def omega_power(self, k: int) -> Element:
        if self.symplectic_form is None:
            raise InvalidModel("model has no symplectic form")
        acc: Element = {(): Fraction(1)}
        for _ in range(k):
            acc = wedge(acc, self.symplectic_form)
        return acc

    def to_document(self) -> dict:
        """The model-file JSON document describing this spec."""

        def terms(elem):
            return [
                {"coeff": format_scalar(c), "wedge": [self.generators[i].symbol for i in m]}
                for m, c in sorted(elem.items())
            ]

        doc = {
            "name": self.name,
            "field": self.field,
            "generators": [{"symbol": g.symbol, "type": g.kind} for g in self.generators],
            "d": {self.generators[i].symbol: terms(e) for i, e in sorted(self.differential.items()) if e},
            "conjugation": [[self.generators[a].symbol, self.generators[b].symbol] for a, b in self.conjugation],
            "half_codim": self.half_codim,
        }
        if self.symplectic_form is not None:
            doc["omega"] = terms(self.symplectic_form)
        return doc


# ---------------------------------------------------------------- parsing


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _parse_terms(raw, index: Mapping[str, int], text: str, where: str, rational: bool) -> Element:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected a list of terms", *_locate(text, where))
    out: Element = {}
    for term in raw:
        if not isinstance(term, dict) or "coeff" not in term or "wedge" not in term:
            raise ParseError(f"{where}: each term needs 'coeff' and 'wedge'", *_locate(text, where))
        try:
            c = parse_scalar(term["coeff"])
        except ParseError as exc:
            raise ParseError(f"{where}: {exc}", *_locate(text, str(term["coeff"]))) from None
        if rational and not isinstance(c, Fraction):
            raise ParseError(f"{where}: Gaussian coefficient in a rational model", *_locate(text, str(term["coeff"])))
        syms = term["wedge"]
        if not isinstance(syms, list) or not all(isinstance(s, str) for s in syms):
            raise ParseError(f"{where}: 'wedge' must be a list of symbols", *_locate(text, where))
        idx = []
        for s in syms:
            if s not in index:
                raise UnknownGenerator(f"{where}: unknown generator {s!r}", *_locate(text, f'"{s}"'))
            idx.append(index[s])
        sgn, mono = _sort_sign(idx)
        if sgn:
            _add_into(out, mono, sgn * c)
    return out


def parse_model(text: str) -> ModelSpec:
    """Parse a model-file document (UTF-8 JSON) into a :class:`ModelSpec`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object", 1, 1)
    for key in ("name", "field", "generators", "half_codim"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}", 1, 1)
    fld = doc["field"]
    if fld not in ("rational", "gaussian"):
        raise ParseError(f"field must be 'rational' or 'gaussian', got {fld!r}", *_locate(text, '"field"'))
    gens = []
    index: dict[str, int] = {}
    for g in doc["generators"]:
        if not isinstance(g, dict) or "symbol" not in g or "type" not in g:
            raise ParseError("generator entries need 'symbol' and 'type'", *_locate(text, '"generators"'))
        sym, kind = g["symbol"], g["type"]
        if kind not in GENERATOR_TYPES:
            raise ParseError(f"generator type must be holo/antiholo/real, got {kind!r}", *_locate(text, f'"{kind}"'))
        if sym in index:
            first = text.find(f'"{sym}"')
            second = text.find(f'"{sym}"', first + 1)
            line, col = _locate(text, f'"{sym}"') if second < 0 else _locate(text[: second + 1] + "\x00", "\x00")
            raise DuplicateGenerator(f"duplicate generator {sym!r}", line, None if col is None else col - 1)
        index[sym] = len(gens)
        gens.append(Generator(sym, kind))
    rational = fld == "rational"
    diff: dict[int, Element] = {}
    raw_d = doc.get("d", {})
    if not isinstance(raw_d, dict):
        raise ParseError("'d' must map symbols to term lists", *_locate(text, '"d"'))
    for sym, terms in raw_d.items():
        if sym not in index:
            raise UnknownGenerator(f"d: unknown generator {sym!r}", *_locate(text, f'"{sym}"'))
        elem = _parse_terms(terms, index, text, f"d({sym})", rational)
        if elem:
            diff[index[sym]] = elem
    conj_pairs = []
    for pair in doc.get("conjugation", []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("conjugation entries must be symbol pairs", *_locate(text, '"conjugation"'))
        for s in pair:
            if s not in index:
                raise UnknownGenerator(f"conjugation: unknown generator {s!r}", *_locate(text, f'"{s}"'))
        conj_pairs.append((index[pair[0]], index[pair[1]]))
    omega = None
    if doc.get("omega") is not None:
        omega = _parse_terms(doc["omega"], index, text, "omega", rational)
    q = doc["half_codim"]
    if not isinstance(q, int) or isinstance(q, bool) or q < 0:
        raise ParseError("half_codim must be a non-negative integer", *_locate(text, '"half_codim"'))
    return ModelSpec(
        name=str(doc["name"]),
        field=fld,
        generators=tuple(gens),
        differential=diff,
        conjugation=tuple(conj_pairs),
        symplectic_form=omega,
        half_codim=q,
    )


def load_model(path) -> ModelSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    checks: dict[str, bool]
    messages: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [f"{k}: {self.messages.get(k, 'failed')}" for k, v in self.checks.items() if not v]


def _fmt_elem(spec: ModelSpec, e: Element) -> str:
    if not e:
        return "0"
    parts = []
    for m, c in sorted(e.items()):
        parts.append(f"{format_scalar(c)}*" + "∧".join(spec.generators[i].symbol for i in m))
    return " + ".join(parts)


def validate(spec: ModelSpec) -> ValidationReport:
    """Run every structural check and collect the findings (never raises)."""
    checks: dict[str, bool] = {}
    msgs: dict[str, str] = {}
    n = spec.n_generators

    bad = []
    for i in range(n):
        dd = spec.d(spec.differential.get(i, {}))
        if dd:
            bad.append(f"d²({spec.generators[i].symbol}) = {_fmt_elem(spec, dd)}")
    checks["d_squared_zero"] = not bad
    msgs["d_squared_zero"] = "; ".join(bad) if bad else "d∘d = 0 on generators (hence on Λ•)"

    if spec.is_complex:
        bad = []
        for i in range(n):
            forbidden = (0, 2) if spec.generators[i].kind == "holo" else (2, 0)
            for m in spec.differential.get(i, {}):
                if spec.bidegree(m) == forbidden:
                    bad.append(f"d({spec.generators[i].symbol}) has a {forbidden} component")
        checks["bidegree_splitting"] = not bad
        msgs["bidegree_splitting"] = "; ".join(bad) if bad else "d = ∂ + ∂̄"

        ok = True
        why = []
        cm = spec.conj_map()
        if sorted(cm) != list(range(n)) or len(cm) != n:
            ok = False
            why.append("conjugation must pair every generator exactly once")
        else:
            for a, b in spec.conjugation:
                kinds = {spec.generators[a].kind, spec.generators[b].kind}
                if kinds != {"holo", "antiholo"}:
                    ok = False
                    why.append(f"{spec.generators[a].symbol}/{spec.generators[b].symbol} do not pair holo with antiholo")
            if ok:
                for i in range(n):
                    lhs = spec.differential.get(cm[i], {})
                    rhs = spec.conjugate(spec.differential.get(i, {}))
                    if lhs != rhs:
                        ok = False
                        why.append(f"d(conj {spec.generators[i].symbol}) ≠ conj d({spec.generators[i].symbol})")
        checks["conjugation"] = ok
        msgs["conjugation"] = "; ".join(why) if why else "conjugation intertwines ∂ and ∂̄"

        checks["dimension"] = len(spec.holo) == len(spec.antiholo) == spec.half_codim
        msgs["dimension"] = f"{len(spec.holo)} holomorphic, {len(spec.antiholo)} antiholomorphic generators, half_codim {spec.half_codim}"
    else:
        if spec.conjugation:
            checks["conjugation"] = False
            msgs["conjugation"] = "conjugation given on a real model"

    if spec.symplectic_form is not None:
        q = spec.half_codim
        checks["symplectic_dimension"] = n == 2 * q
        msgs["symplectic_dimension"] = f"{n} generators for transverse dimension 2q = {2 * q}"
        dw = spec.d(spec.symplectic_form)
        checks["omega_closed"] = not dw
        msgs["omega_closed"] = "dω = 0" if not dw else f"dω = {_fmt_elem(spec, dw)}"
        bad_deg = [m for m in spec.symplectic_form if len(m) != 2]
        top = spec.omega_power(q) if q and not bad_deg else {}
        checks["omega_maximal_rank"] = bool(top) and n == 2 * q
        msgs["omega_maximal_rank"] = "ω^q ≠ 0" if checks["omega_maximal_rank"] else "ω^q = 0 (degenerate form)"

    return ValidationReport(checks, msgs)


def require_valid(spec: ModelSpec) -> None:
    if "valid" in spec._cache:
        return
    rep = validate(spec)
    if not rep.ok:
        raise InvalidModel("; ".join(rep.failures()))
    spec._cache["valid"] = True


# ---------------------------------------------------------------- bases & matrices


def monomial_basis(spec: ModelSpec, p: int, q: int) -> list[Monomial]:
    """Lexicographically ordered monomials of bidegree (p, q).

    For real models the q-slot is unused: ``(k, 0)`` lists the degree-k monomials.
    """
    if p < 0 or q < 0:
        return []
    key = ("basis", p, q)
    if key not in spec._cache:
        n = spec.n_generators
        spec._cache[key] = [m for m in itertools.combinations(range(n), p + q) if spec.bidegree(m) == (p, q)]
    return spec._cache[key]


def degree_basis(spec: ModelSpec, k: int) -> list[Monomial]:
    if k < 0 or k > spec.n_generators:
        return []
    return list(itertools.combinations(range(spec.n_generators), k))


def element_to_vector(elem: Element, basis: list[Monomial]) -> list:
    pos = {m: i for i, m in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for m, c in elem.items():
        v[pos[m]] = c
    return v


def vector_to_element(vec, basis: list[Monomial]) -> Element:
    return {m: c for m, c in zip(basis, vec) if c}


def _matrix_of(fn, source: list[Monomial], target: list[Monomial]) -> Matrix:
    pos = {m: i for i, m in enumerate(target)}
    m = Matrix.zeros(len(target), len(source))
    for j, mono in enumerate(source):
        for t, c in fn({mono: Fraction(1)}).items():
            if t in pos:
                m.entries[pos[t]][j] = c
    return m


def operator_matrix(spec: ModelSpec, which: str, source) -> Matrix:
    """Matrix of d, ∂ or ∂̄ on the monomial basis of ``source``.

    ``which`` is ``"d"``, ``"del"`` or ``"delbar"``.  ``source`` is a bidegree
    ``(p, q)`` or, for ``d`` only, a total degree ``k``.  ``d`` always lands in
    the total-degree basis; ``del``/``delbar`` land in the (p+1, q)/(p, q+1) cell.
    """
    if which in ("∂", "del"):
        which = "del"
    elif which in ("∂̄", "delbar"):
        which = "delbar"
    elif which != "d":
        raise ValueError(f"unknown operator {which!r}")
    if which != "d" and not spec.is_complex:
        raise NotComplexModel(f"{spec.name} has no bidegree splitting")
    key = ("op", which, source)
    if key in spec._cache:
        return spec._cache[key]
    if which == "d":
        if isinstance(source, tuple):
            p, q = source
            src = monomial_basis(spec, p, q) if spec.is_complex else (degree_basis(spec, p) if q == 0 else [])
            k = p + q
        else:
            k = source
            src = degree_basis(spec, k)
        mat = _matrix_of(spec.d, src, degree_basis(spec, k + 1))
    else:
        p, q = source
        tgt = (p + 1, q) if which == "del" else (p, q + 1)
        tb = monomial_basis(spec, *tgt)
        mat = _matrix_of(spec.d, monomial_basis(spec, p, q), tb)
    spec._cache[key] = mat
    return mat


# ---------------------------------------------------------------- built-ins


BUILTIN_NAMES = ("torus2q", "heisenberg_symplectic", "complex_nonlemma", "complex_lemma")


def torus_document(q: int) -> dict:
    """Complexified flat torus of complex dimension q with the standard Kähler form.

    Generators a1..aq are holomorphic, a(q+1)..a(2q) their conjugates, all closed;
    ω = Σ a_i ∧ a_(q+i).
    """
    if q < 1:
        raise ValueError("torus needs q >= 1")
    syms = [f"a{i}" for i in range(1, 2 * q + 1)]
    return {
        "name": f"torus2q(q={q})",
        "field": "gaussian",
        "generators": [{"symbol": s, "type": "holo" if i < q else "antiholo"} for i, s in enumerate(syms)],
        "d": {},
        "conjugation": [[syms[i], syms[q + i]] for i in range(q)],
        "omega": [{"coeff": "1", "wedge": [syms[i], syms[q + i]]} for i in range(q)],
        "half_codim": q,
    }


def builtin_document(name: str, q: int = 1) -> str:
    if name == "torus2q":
        return json.dumps(torus_document(q), indent=2)
    if name not in BUILTIN_NAMES:
        raise UnknownModel(f"unknown built-in model {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return resources.files("frolicher.builtins").joinpath(f"{name}.json").read_text(encoding="utf-8")


def builtin(name: str, q: int = 1) -> ModelSpec:
    """Return a validated built-in model (``q`` only matters for ``torus2q``)."""
    spec = parse_model(builtin_document(name, q))
    require_valid(spec)
    return spec


def basis_size(spec: ModelSpec, p: int, q: int) -> int:
    if spec.is_complex:
        return comb(len(spec.holo), p) * comb(len(spec.antiholo), q)
    return comb(spec.n_generators, p) if q == 0 else 0


def volume_form(spec: ModelSpec) -> Element:
    """ω^q / q!."""
    q = spec.half_codim
    return scale(spec.omega_power(q), Fraction(1, factorial(q)))
