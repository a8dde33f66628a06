"""Quivers with loops, their symmetric Borcherds-Cartan data and root lattice.

A quiver is an ordered list of vertex ids plus a list of (src, tgt) arrows;
loops are allowed.  Dimension vectors are int tuples indexed like the vertex
list, and double as elements of the root lattice and of the Grothendieck
group of the nilpotent representation category.

Conventions pinned here and relied on everywhere else:

* Cartan matrix: a_ii = 2 - 2 * (loops at i), a_ij = -(arrows i->j) - (arrows j->i).
* Euler form: <x, y> = sum_i x_i y_i - sum_{arrows a} x_src(a) y_tgt(a).
  Its symmetrization satisfies (alpha_i, alpha_j) = a_ij.
* Reflections act only at real vertices (a_ii = 2): s_i(x) = x - (x, alpha_i) alpha_i.
* Reflecting the quiver at a vertex reverses exactly the incident arrows,
  keeping the arrow list order, so functors indexed by arrows stay aligned.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import ConfigError

DimVec = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ConfigError("duplicate vertex ids")
        for s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise ConfigError(f"arrow ({s},{t}) uses undeclared vertex")

    # -- indices ------------------------------------------------------------
    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def loop_count(self, i: int) -> int:
        v = self.vertices[i]
        return sum(1 for s, t in self.arrows if s == v and t == v)

    def arrow_count(self, i: int, j: int) -> int:
        vi, vj = self.vertices[i], self.vertices[j]
        return sum(1 for s, t in self.arrows if s == vi and t == vj)

    def arrow_indices(self) -> tuple[tuple[int, int], ...]:
        idx = {v: k for k, v in enumerate(self.vertices)}
        return tuple((idx[s], idx[t]) for s, t in self.arrows)

    def unit(self, i: int) -> DimVec:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def zero(self) -> DimVec:
        return (0,) * self.n

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"src": s, "tgt": t} for s, t in self.arrows],
        }

    @staticmethod
    def from_json(data: dict) -> "Quiver":
        try:
            vertices = tuple(str(v) for v in data["vertices"])
            arrows = tuple((str(a["src"]), str(a["tgt"])) for a in data["arrows"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed quiver JSON: {exc}") from exc
        return Quiver(vertices, arrows)

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:10]


@dataclass(frozen=True)
class CartanData:
    """Symmetric Borcherds-Cartan matrix of a quiver, with its vertex split."""

    matrix: tuple[tuple[int, ...], ...]
    real_vertices: tuple[int, ...]       # a_ii = 2
    imaginary_vertices: tuple[int, ...]  # a_ii <= 0

    def a(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def is_real(self, i: int) -> bool:
        return i in self.real_vertices

    def generator_levels(self, i: int, max_level: int) -> tuple[int, ...]:
        """Levels l with (i, l) in the generator index set, truncated."""
        if self.is_real(i):
            return (1,)
        return tuple(range(1, max_level + 1))


def cartan_from_quiver(quiver: Quiver) -> CartanData:
    n = quiver.n
    matrix = tuple(
        tuple(
            2 - 2 * quiver.loop_count(i)
            if i == j
            else -quiver.arrow_count(i, j) - quiver.arrow_count(j, i)
            for j in range(n)
        )
        for i in range(n)
    )
    real = tuple(i for i in range(n) if matrix[i][i] == 2)
    imag = tuple(i for i in range(n) if matrix[i][i] <= 0)
    return CartanData(matrix, real, imag)


# ---------------------------------------------------------------------------
# Forms and reflections on the root lattice
# ---------------------------------------------------------------------------

def add_vec(x: DimVec, y: DimVec) -> DimVec:
    return tuple(a + b for a, b in zip(x, y))


def sub_vec(x: DimVec, y: DimVec) -> DimVec:
    return tuple(a - b for a, b in zip(x, y))


def neg_vec(x: DimVec) -> DimVec:
    return tuple(-a for a in x)


def scale_vec(c: int, x: DimVec) -> DimVec:
    return tuple(c * a for a in x)


def euler_form(quiver: Quiver, x: DimVec, y: DimVec) -> int:
    total = sum(a * b for a, b in zip(x, y))
    for s, t in quiver.arrow_indices():
        total -= x[s] * y[t]
    return total


def sym_form(quiver: Quiver, x: DimVec, y: DimVec) -> int:
    return euler_form(quiver, x, y) + euler_form(quiver, y, x)


def simple_reflection(quiver: Quiver, cartan: CartanData, i: int, x: DimVec) -> DimVec:
    if not cartan.is_real(i):
        raise ConfigError(f"reflection only defined at real vertices, got {quiver.vertices[i]}")
    coeff = sum(cartan.a(i, j) * x[j] for j in range(quiver.n))
    return tuple(x[k] - coeff * (1 if k == i else 0) for k in range(quiver.n))


# ---------------------------------------------------------------------------
# Quiver reflection
# ---------------------------------------------------------------------------

def is_sink(quiver: Quiver, vertex: str) -> bool:
    return all(s != vertex for s, _ in quiver.arrows)


def is_source(quiver: Quiver, vertex: str) -> bool:
    return all(t != vertex for _, t in quiver.arrows)


def reflect_quiver(quiver: Quiver, vertex: str) -> Quiver:
    """Reverse every arrow starting or ending at the vertex (in place in the list)."""
    if vertex not in quiver.vertices:
        raise ConfigError(f"unknown vertex {vertex}")
    arrows = tuple(
        (t, s) if (s == vertex) != (t == vertex) else (s, t) for s, t in quiver.arrows
    )
    return Quiver(quiver.vertices, arrows)


# ---------------------------------------------------------------------------
# The standard desk-scale test quivers
# ---------------------------------------------------------------------------

def standard_quiver(name: str) -> Quiver:
    table = {
        "jordan": Quiver(("1",), (("1", "1"),)),
        "two_loop": Quiver(("1",), (("1", "1"), ("1", "1"))),
        "a2": Quiver(("1", "2"), (("1", "2"),)),
        "kronecker": Quiver(("1", "2"), (("1", "2"), ("1", "2"))),
        "loop_arrow": Quiver(("1", "2"), (("1", "1"), ("1", "2"))),
        "two_points": Quiver(("1", "2"), ()),
    }
    try:
        return table[name]
    except KeyError:
        raise ConfigError(f"unknown standard quiver {name!r}; choose from {sorted(table)}")
