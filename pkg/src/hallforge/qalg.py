"""Formal generator words, their Hall-algebra evaluation, and relation checks.

Words are Scalar-linear combinations of monomials in tagged symbols:

    ("K", mu) ("Kp", mu)      group-like family and its primed partner,
                              mu any integer vector (inverses included)
    ("e", i, l) ("f", i, l)   loop-quiver generators, level l at vertex i
    ("E", i, l) ("F", i, l)   charge-indexed generators of the variant algebra

The evaluation map sends K-symbols to invertible acyclic classes, e/f level-l
symbols at vertex i to (-1)^l v^(l^2-l) times the Aut-normalized class of the
semisimple stack of l copies of the simple at i (concentrated in degree 1 for
e, degree 0 for f), and E/F symbols to the charge-selected simple classes
with coefficients 1/(q-1) and -v/(q-1).  Monomials multiply left to right in
the semi-derived Hall algebra.

Relation identifiers are semantic: "k-inverse", "k-commute", "k-conj",
"kprime-conj", "ef-cross", "ef-same", "serre-e", "serre-f" for the
loop-quiver presentation, and the "qgkm-" prefixed family for the
charge-indexed variant.  Each verification item builds both sides as words,
evaluates, and compares exactly; failures return the difference as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from time import perf_counter

from .errors import ConfigError, ResourceLimitError
from .quivers import (
    CartanData,
    DimVec,
    Quiver,
    cartan_from_quiver,
    neg_vec,
    scale_vec,
)
from .repfq import FULL, NILPOTENT, IsoClass
from .scalars import Scalar, qbinom, qfact, tau
from .sdh import HallAlgebra, SDHElem

Symbol = tuple
Monomial = tuple[Symbol, ...]


class Word:
    """Scalar-linear combination of symbol monomials; purely formal."""

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: dict[Monomial, Scalar] | None = None):
        self.q = q
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @staticmethod
    def monomial(q: int, syms, coeff: Scalar | int | Fraction = 1) -> "Word":
        if not isinstance(coeff, Scalar):
            coeff = Scalar(Fraction(coeff), Fraction(0), q)
        return Word(q, {tuple(syms): coeff})

    @staticmethod
    def one(q: int) -> "Word":
        return Word.monomial(q, ())

    def __add__(self, other: "Word") -> "Word":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Word(self.q, out)

    def __neg__(self) -> "Word":
        return Word(self.q, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Word") -> "Word":
        return self + (-other)

    def scaled(self, c: Scalar | int | Fraction) -> "Word":
        if not isinstance(c, Scalar):
            c = Scalar(Fraction(c), Fraction(0), self.q)
        return Word(self.q, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "Word") -> "Word":
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Word(self.q, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.q == other.q and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{list(m)}" for m, c in sorted(self.terms.items()))

    def max_degree(self) -> int:
        """Largest total level weight of a monomial (K-symbols weigh nothing)."""
        best = 0
        for m in self.terms:
            best = max(best, sum(s[2] for s in m if s[0] in ("e", "f", "E", "F")))
        return best


def omega(w: Word) -> Word:
    """Algebra involution: swaps the two generator families and the K-columns."""
    swap = {"e": "f", "f": "e", "E": "F", "F": "E", "K": "Kp", "Kp": "K"}
    out: dict[Monomial, Scalar] = {}
    for m, c in w.terms.items():
        mm = tuple((swap[s[0]],) + s[1:] for s in m)
        out[mm] = out.get(mm, Scalar(Fraction(0), Fraction(0), w.q)) + c
    return Word(w.q, out)


def sigma(w: Word) -> Word:
    """Anti-involution: reverses monomials, swaps K with Kp, fixes generators."""
    swap = {"K": "Kp", "Kp": "K"}
    out: dict[Monomial, Scalar] = {}
    for m, c in w.terms.items():
        mm = tuple((swap.get(s[0], s[0]),) + s[1:] for s in reversed(m))
        out[mm] = out.get(mm, Scalar(Fraction(0), Fraction(0), w.q)) + c
    return Word(w.q, out)


def gen_power_divided(q: int, kind: str, i: int, r: int) -> Word:
    """Divided power of a level-1 generator: r letters over the factorial."""
    if r == 0:
        return Word.one(q)
    mono = ((kind, i, 1),) * r
    return Word.monomial(q, mono, qfact(r, q).inverse())


@dataclass(frozen=True)
class Charge:
    """Multiplicities m_i with loop-parameter tuples for the imaginary vertices."""

    quiver: Quiver
    q: int
    params: tuple[tuple[tuple[int, ...], ...], ...]  # per vertex: tuple of lambda-tuples

    def __post_init__(self) -> None:
        cartan = cartan_from_quiver(self.quiver)
        for i, lams in enumerate(self.params):
            g = self.quiver.loop_count(i)
            if cartan.is_real(i):
                if len(lams) != 1:
                    raise ConfigError("real vertices must have multiplicity 1")
            if len(lams) > self.q**g:
                raise ConfigError(
                    f"multiplicity {len(lams)} at vertex {self.quiver.vertices[i]} exceeds q^loops"
                )
            if len(set(lams)) != len(lams):
                raise ConfigError("loop-parameter tuples must be pairwise distinct")
            for lam in lams:
                if len(lam) != g or any(not (0 <= x < self.q) for x in lam):
                    raise ConfigError("bad loop-parameter tuple")

    def multiplicity(self, i: int) -> int:
        return len(self.params[i])

    @staticmethod
    def default(quiver: Quiver, q: int, multiplicities: dict[str, int] | None = None) -> "Charge":
        """Multiplicity map with lexicographically first distinct parameter tuples."""
        cartan = cartan_from_quiver(quiver)
        multiplicities = multiplicities or {}
        params = []
        for i, vid in enumerate(quiver.vertices):
            g = quiver.loop_count(i)
            m = 1 if cartan.is_real(i) else int(multiplicities.get(vid, 1))
            pool = list(iproduct(range(q), repeat=g))
            if m > len(pool):
                raise ConfigError(f"multiplicity {m} at vertex {vid} exceeds q^{g}")
            params.append(tuple(pool[:m]))
        return Charge(quiver, q, tuple(params))


class QuantumContext:
    """Evaluation context: a Hall algebra plus Cartan data, levels, and charge."""

    def __init__(
        self,
        quiver: Quiver,
        q: int,
        mode: str = NILPOTENT,
        max_level: int = 2,
        charge: Charge | None = None,
        hall: HallAlgebra | None = None,
        **hall_kwargs,
    ):
        self.quiver = quiver
        self.q = q
        self.mode = mode
        self.max_level = max_level
        self.cartan = cartan_from_quiver(quiver)
        if hall is not None and (hall.quiver != quiver or hall.q != q or hall.mode != mode):
            raise ConfigError("prebuilt algebra does not match the context parameters")
        self.hall = hall if hall is not None else HallAlgebra(quiver, q, mode, **hall_kwargs)
        self.v = self.hall.v
        if mode == FULL and charge is None:
            charge = Charge.default(quiver, q)
        self.charge = charge
        self._psi_cache: dict[Symbol, SDHElem] = {}
        self._eval_cache: dict[Monomial, SDHElem] = {}

    # -- generator images ------------------------------------------------------
    def _stack_class(self, i: int, l: int) -> IsoClass:
        return self.hall.rep.canonicalize(self.hall.rep.semisimple(i, l))

    def _charged_simple(self, i: int, l: int) -> IsoClass:
        if self.charge is None:
            raise ConfigError("charge-indexed generators need full mode with a charge")
        lams = self.charge.params[i]
        if not 1 <= l <= len(lams):
            raise ConfigError(f"level {l} outside the charge at vertex {self.quiver.vertices[i]}")
        rep = (
            self.hall.rep.simple(i)
            if self.cartan.is_real(i)
            else self.hall.rep.simple_with_params(i, lams[l - 1])
        )
        return self.hall.rep.canonicalize(rep)

    def psi_symbol(self, sym: Symbol) -> SDHElem:
        cached = self._psi_cache.get(sym)
        if cached is not None:
            return cached
        kind = sym[0]
        H = self.hall
        if kind == "K":
            out = H.k_elem(sym[1], self.quiver.zero())
        elif kind == "Kp":
            out = H.k_elem(self.quiver.zero(), sym[1])
        elif kind in ("e", "f"):
            if self.mode != NILPOTENT:
                raise ConfigError("loop-quiver generators live in nilpotent mode")
            _, i, l = sym
            if l not in self.cartan.generator_levels(i, self.max_level):
                raise ConfigError(f"level {l} not available at vertex {self.quiver.vertices[i]}")
            cls = self._stack_class(i, l)
            sign = Scalar(Fraction((-1) ** l), Fraction(0), self.q)
            coeff = sign * self.v ** (l * l - l)
            out = H.bracket_class(cls, starred=(kind == "f")).scaled(coeff)
        elif kind in ("E", "F"):
            if self.mode != FULL:
                raise ConfigError("charge-indexed generators live in full mode")
            _, i, l = sym
            cls = self._charged_simple(i, l)
            if kind == "E":
                out = H.c_elem(cls).scaled(Fraction(1, self.q - 1))
            else:
                out = H.c_elem(None, cls).scaled(-self.v / (self.q - 1))
        else:
            raise ConfigError(f"unknown symbol {sym!r}")
        self._psi_cache[sym] = out
        return out

    def eval_monomial(self, mono: Monomial) -> SDHElem:
        cached = self._eval_cache.get(mono)
        if cached is not None:
            return cached
        out = self.hall.unit()
        for k in range(len(mono)):
            out = self.hall.mul(out, self.psi_symbol(mono[k]))
            partial = mono[: k + 1]
            if partial not in self._eval_cache:
                self._eval_cache[partial] = out
        if mono not in self._eval_cache:
            self._eval_cache[mono] = out
        return out

    def eval_word(self, w: Word) -> SDHElem:
        out = self.hall.zero_elem()
        for mono, coeff in w.terms.items():
            out = out + self.eval_monomial(mono).scaled(coeff)
        return out

    # -- primed-family helpers ----------------------------------------------------
    def k_sym(self, i: int, power: int = 1) -> Symbol:
        return ("K", scale_vec(power, self.quiver.unit(i)))

    def kp_sym(self, i: int, power: int = 1) -> Symbol:
        return ("Kp", scale_vec(power, self.quiver.unit(i)))

    def v_vertex(self, i: int) -> Scalar:
        """v^(a_ii / 2), an integer power since diagonal entries are even."""
        return self.v ** (self.cartan.a(i, i) // 2)


# ---------------------------------------------------------------------------
# Relation construction
# ---------------------------------------------------------------------------

def _efam(family: str) -> tuple[str, str]:
    return ("e", "f") if family == "bb" else ("E", "F")


def build_relation(ctx: QuantumContext, rel: str, params: dict) -> tuple[Word, Word]:
    """Both sides of a defining relation as formal words."""
    q = ctx.q
    mono = Word.monomial
    family = "bb" if not rel.startswith("qgkm-") else "qgkm"
    ename, fname = _efam(family)
    base = rel.removeprefix("qgkm-")

    if base == "k-inverse":
        i = params["i"]
        col = params["column"]  # "K" or "Kp"
        lhs = mono(q, ((col, ctx.quiver.unit(i)), (col, neg_vec(ctx.quiver.unit(i)))))
        return lhs, Word.one(q)

    if base == "k-commute":
        i, j = params["i"], params["j"]
        ci, cj = params["columns"]
        a = mono(q, ((ci, ctx.quiver.unit(i)), (cj, ctx.quiver.unit(j))))
        b = mono(q, ((cj, ctx.quiver.unit(j)), (ci, ctx.quiver.unit(i))))
        return a, b

    if base in ("k-conj", "kprime-conj"):
        i, j, l, gen = params["i"], params["j"], params["l"], params["gen"]
        kind = ename if gen == "e" else fname
        col = "K" if base == "k-conj" else "Kp"
        a_ij = ctx.cartan.a(i, j)
        sign = 1 if (gen == "e") == (base == "k-conj") else -1
        exponent = sign * (l if family == "bb" else 1) * a_ij
        lhs = mono(q, ((col, ctx.quiver.unit(i)), (kind, j, l)))
        rhs = mono(q, ((kind, j, l), (col, ctx.quiver.unit(i)))).scaled(ctx.v**exponent)
        return lhs, rhs

    if base == "ef-cross":
        i, k, j, l = params["i"], params["k"], params["j"], params["l"]
        lhs = mono(q, ((ename, i, k), (fname, j, l))) - mono(q, ((fname, j, l), (ename, i, k)))
        return lhs, Word(q)

    if base == "ef-same":
        # loop-quiver family: higher commutation at one vertex
        i, l, k = params["i"], params["l"], params["k"]
        vi = ctx.v_vertex(i)
        lhs = Word(q)
        rhs = Word(q)
        for r in range(0, min(k, l) + 1):
            m = k - r
            s = l - r
            t = tau(i, r, q) if r else Scalar(Fraction(1), Fraction(0), q)
            left_syms: list[Symbol] = []
            if s:
                left_syms.append(("e", i, s))
            if m:
                left_syms.append(("f", i, m))
            if r:
                left_syms.append(("Kp", scale_vec(r, ctx.quiver.unit(i))))
            right_syms: list[Symbol] = []
            if m:
                right_syms.append(("f", i, m))
            if s:
                right_syms.append(("e", i, s))
            if r:
                right_syms.append(("K", scale_vec(r, ctx.quiver.unit(i))))
            lhs = lhs + mono(q, tuple(left_syms), vi ** (r * (m - s)) * t)
            rhs = rhs + mono(q, tuple(right_syms), vi ** (-r * (m - s)) * t)
        return lhs, rhs

    if base == "ef":
        # charge-indexed family: [E_ik, F_jl] = delta delta (K_i - K'_i)/(v - v^-1)
        i, k, j, l = params["i"], params["k"], params["j"], params["l"]
        lhs = mono(q, (("E", i, k), ("F", j, l))) - mono(q, (("F", j, l), ("E", i, k)))
        rhs = Word(q)
        if i == j and k == l:
            denom = (ctx.v - ctx.v**-1).inverse()
            rhs = (
                mono(q, (("K", ctx.quiver.unit(i)),))
                - mono(q, (("Kp", ctx.quiver.unit(i)),))
            ).scaled(denom)
        return lhs, rhs

    if base in ("serre-e", "serre-f"):
        i, j, l = params["i"], params["j"], params["l"]
        kind = ename if base == "serre-e" else fname
        a_ij = ctx.cartan.a(i, j)
        lfac = l if family == "bb" else 1
        n = 1 - lfac * a_ij
        lhs = Word(q)
        for k in range(n + 1):
            syms = ((kind, i, 1),) * (n - k) + ((kind, j, l),) + ((kind, i, 1),) * k
            c = Scalar(Fraction((-1) ** k), Fraction(0), q) * qbinom(n, k, q)
            lhs = lhs + mono(q, syms, c)
        return lhs, Word(q)

    raise ConfigError(f"unknown relation id {rel!r}")


def relation_degree(ctx: QuantumContext, rel: str, params: dict) -> int:
    lhs, rhs = build_relation(ctx, rel, params)
    return max(lhs.max_degree(), rhs.max_degree())


def verify_relation(ctx: QuantumContext, rel: str, params: dict) -> dict:
    """Evaluate both sides in the Hall algebra and compare exactly."""
    start = perf_counter()
    try:
        lhs, rhs = build_relation(ctx, rel, params)
        diff = ctx.eval_word(lhs) - ctx.eval_word(rhs)
        status = "pass" if not diff else "fail"
        witness = None if not diff else diff.to_json()
    except ResourceLimitError as exc:
        status, witness = "skip", str(exc)
    return {
        "relation": rel,
        "params": {k: _param_json(v) for k, v in params.items()},
        "status": status,
        "witness": witness,
        "seconds": round(perf_counter() - start, 6),
    }


def _param_json(v):
    if isinstance(v, tuple):
        return list(v)
    return v


# ---------------------------------------------------------------------------
# Sweep item generation
# ---------------------------------------------------------------------------

def bb_relation_items(ctx: QuantumContext, max_level: int, max_degree: int) -> list[tuple[str, dict]]:
    items: list[tuple[str, dict]] = []
    n = ctx.quiver.n
    levels = {i: ctx.cartan.generator_levels(i, max_level) for i in range(n)}
    for i in range(n):
        for col in ("K", "Kp"):
            items.append(("k-inverse", {"i": i, "column": col}))
    for i in range(n):
        for j in range(n):
            for cols in (("K", "K"), ("K", "Kp"), ("Kp", "Kp")):
                items.append(("k-commute", {"i": i, "j": j, "columns": cols}))
    for rel in ("k-conj", "kprime-conj"):
        for i in range(n):
            for j in range(n):
                for l in levels[j]:
                    for gen in ("e", "f"):
                        items.append((rel, {"i": i, "j": j, "l": l, "gen": gen}))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in levels[i]:
                for l in levels[j]:
                    items.append(("ef-cross", {"i": i, "k": k, "j": j, "l": l}))
    for i in range(n):
        for l in levels[i]:
            for k in levels[i]:
                items.append(("ef-same", {"i": i, "l": l, "k": k}))
    for rel in ("serre-e", "serre-f"):
        for i in range(n):
            if not ctx.cartan.is_real(i):
                continue
            for j in range(n):
                if i == j:
                    continue
                for l in levels[j]:
                    items.append((rel, {"i": i, "j": j, "l": l}))
    return [it for it in items if relation_degree(ctx, *it) <= max_degree]


def qgkm_relation_items(ctx: QuantumContext, max_degree: int) -> list[tuple[str, dict]]:
    if ctx.charge is None:
        raise ConfigError("charge-indexed sweep needs full mode with a charge")
    items: list[tuple[str, dict]] = []
    n = ctx.quiver.n
    mult = {i: ctx.charge.multiplicity(i) for i in range(n)}
    for i in range(n):
        for col in ("K", "Kp"):
            items.append(("qgkm-k-inverse", {"i": i, "column": col}))
    for i in range(n):
        for j in range(n):
            for cols in (("K", "K"), ("K", "Kp"), ("Kp", "Kp")):
                items.append(("qgkm-k-commute", {"i": i, "j": j, "columns": cols}))
    for rel in ("qgkm-k-conj", "qgkm-kprime-conj"):
        for i in range(n):
            for j in range(n):
                for l in range(1, mult[j] + 1):
                    for gen in ("e", "f"):
                        items.append((rel, {"i": i, "j": j, "l": l, "gen": gen}))
    for i in range(n):
        for j in range(n):
            for k in range(1, mult[i] + 1):
                for l in range(1, mult[j] + 1):
                    items.append(("qgkm-ef", {"i": i, "k": k, "j": j, "l": l}))
    for rel in ("qgkm-serre-e", "qgkm-serre-f"):
        for i in range(n):
            if not ctx.cartan.is_real(i):
                continue
            for j in range(n):
                if i == j:
                    continue
                for l in range(1, mult[j] + 1):
                    items.append((rel, {"i": i, "j": j, "l": l}))
    return [it for it in items if relation_degree(ctx, *it) <= max_degree]
