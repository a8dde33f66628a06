"""Dense exact linear algebra over the prime field F_q.

Matrices are immutable: a Mat carries its shape explicitly so that
zero-row/zero-column edge cases (which occur constantly once complexes with a
zero component show up) stay unambiguous.  Vectors are plain int tuples and
are treated as columns: ``apply(M, v)`` computes M v.

Subspaces of F_q^n are always kept as tuples of reduced-row-echelon basis
vectors; that canonical form makes subspace equality a tuple comparison and
lets coordinates be read off pivot entries directly.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

Vector = tuple[int, ...]
Subspace = tuple[Vector, ...]  # RREF basis rows


class Mat:
    """Immutable matrix over F_q with explicit shape."""

    __slots__ = ("q", "nrows", "ncols", "rows", "_hash")

    def __init__(self, q: int, nrows: int, ncols: int, rows: tuple[Vector, ...]):
        self.q = q
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = hash((q, nrows, ncols, rows))
        assert len(rows) == nrows and all(len(r) == ncols for r in rows)

    @staticmethod
    def from_rows(q: int, nrows: int, ncols: int, rows) -> "Mat":
        return Mat(q, nrows, ncols, tuple(tuple(x % q for x in r) for r in rows))

    @staticmethod
    def zeros(q: int, nrows: int, ncols: int) -> "Mat":
        row = (0,) * ncols
        return Mat(q, nrows, ncols, (row,) * nrows)

    @staticmethod
    def identity(q: int, n: int) -> "Mat":
        return Mat(q, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.q == other.q
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Mat({self.nrows}x{self.ncols} /F{self.q} {list(map(list, self.rows))})"

    def __add__(self, other: "Mat") -> "Mat":
        q = self.q
        return Mat(
            q,
            self.nrows,
            self.ncols,
            tuple(
                tuple((a + b) % q for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self) -> "Mat":
        q = self.q
        return Mat(q, self.nrows, self.ncols, tuple(tuple((-a) % q for a in r) for r in self.rows))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c: int) -> "Mat":
        q = self.q
        c %= q
        return Mat(q, self.nrows, self.ncols, tuple(tuple((c * a) % q for a in r) for r in self.rows))

    def __mul__(self, other: "Mat") -> "Mat":
        assert self.ncols == other.nrows, "shape mismatch"
        q = self.q
        bt = tuple(zip(*other.rows)) if other.rows else ((),) * other.ncols
        if other.nrows == 0:
            return Mat.zeros(q, self.nrows, other.ncols)
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % q for col in bt)
            for row in self.rows
        )
        return Mat(q, self.nrows, other.ncols, out)

    def apply(self, v: Vector) -> Vector:
        q = self.q
        return tuple(sum(a * b for a, b in zip(row, v)) % q for row in self.rows)

    def transpose(self) -> "Mat":
        rows = tuple(
            tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)
        )
        return Mat(self.q, self.ncols, self.nrows, rows)

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols, self.q)[0])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Mat":
        assert self.nrows == self.ncols
        n, q = self.nrows, self.q
        aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows)]
        pivots = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, n) if aug[i][c] % q), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = pow(aug[r][c], -1, q)
            aug[r] = [(x * inv) % q for x in aug[r]]
            for i in range(n):
                if i != r and aug[i][c] % q:
                    f = aug[i][c]
                    aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        return Mat.from_rows(q, n, n, [row[n:] for row in aug])


def block_diag(q: int, mats: list[Mat]) -> Mat:
    nrows = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    rows = []
    c0 = 0
    for m in mats:
        left = c0
        right = ncols - c0 - m.ncols
        for r in m.rows:
            rows.append((0,) * left + r + (0,) * right)
        c0 += m.ncols
    return Mat(q, nrows, ncols, tuple(rows))


def hstack(q: int, mats: list[Mat]) -> Mat:
    nrows = mats[0].nrows if mats else 0
    rows = tuple(sum((m.rows[i] for m in mats), ()) for i in range(nrows))
    return Mat(q, nrows, sum(m.ncols for m in mats), rows)


def vstack(q: int, mats: list[Mat], ncols: int) -> Mat:
    rows = sum((m.rows for m in mats), ())
    return Mat(q, sum(m.nrows for m in mats), ncols, rows)


# ---------------------------------------------------------------------------
# Row reduction, kernels, images
# ---------------------------------------------------------------------------

def rref(rows, ncols: int, q: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] % q), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][c] % q, -1, q)
        work[r] = [(x * inv) % q for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] % q:
                f = work[i][c]
                work[i] = [(x - f * y) % q for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def subspace_from_rows(rows, ncols: int, q: int) -> Subspace:
    return rref(rows, ncols, q)[0]


def kernel_basis(m: Mat) -> Subspace:
    """RREF basis of {v : M v = 0} inside F_q^ncols."""
    red, pivots = rref(m.rows, m.ncols, m.q)
    q = m.q
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = (-red[i][f]) % q
        basis.append(tuple(v))
    return subspace_from_rows(basis, m.ncols, q)


def column_space_basis(m: Mat) -> Subspace:
    """RREF basis of the image of M inside F_q^nrows."""
    cols = [tuple(m.rows[i][j] for i in range(m.nrows)) for j in range(m.ncols)]
    return subspace_from_rows(cols, m.nrows, m.q)


def full_space(n: int, q: int) -> Subspace:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def reduce_vector(v: Vector, basis: Subspace, q: int) -> Vector:
    """Residue of v modulo the span of an RREF basis."""
    w = list(v)
    for row in basis:
        p = next(i for i, x in enumerate(row) if x)
        if w[p]:
            f = w[p]
            w = [(a - f * b) % q for a, b in zip(w, row)]
    return tuple(w)

def in_span(v: Vector, basis: Subspace, q: int) -> bool:
    return not any(reduce_vector(v, basis, q))


def coords_in_rref(v: Vector, basis: Subspace) -> Vector:
    """Coordinates of v in an RREF basis; assumes v lies in the span."""
    return tuple(v[next(i for i, x in enumerate(row) if x)] for row in basis)


def subspace_sum(a: Subspace, b: Subspace, n: int, q: int) -> Subspace:
    return subspace_from_rows(list(a) + list(b), n, q)


def restrict_map(m: Mat, dom: Subspace, cod: Subspace) -> Mat:
    """Matrix of M restricted to dom, in the RREF bases; M(dom) must lie in cod."""
    cols = []
    for u in dom:
        w = m.apply(u)
        cols.append(coords_in_rref(w, cod))
    rows = tuple(tuple(col[i] for col in cols) for i in range(len(cod)))
    return Mat(m.q, len(cod), len(dom), rows)


def quotient_nonpivots(basis: Subspace, n: int) -> tuple[int, ...]:
    pivots = {next(i for i, x in enumerate(row) if x) for row in basis}
    return tuple(j for j in range(n) if j not in pivots)


def quotient_map(m: Mat, dom_sub: Subspace, cod_sub: Subspace) -> Mat:
    """Matrix of the induced map F^n/dom_sub -> F^m/cod_sub; needs M(dom_sub) in cod_sub."""
    q = m.q
    dom_np = quotient_nonpivots(dom_sub, m.ncols)
    cod_np = quotient_nonpivots(cod_sub, m.nrows)
    cols = []
    for j in dom_np:
        e = tuple(1 if i == j else 0 for i in range(m.ncols))
        w = reduce_vector(m.apply(e), cod_sub, q)
        cols.append(tuple(w[i] for i in cod_np))
    rows = tuple(tuple(col[i] for col in cols) for i in range(len(cod_np)))
    return Mat(q, len(cod_np), len(dom_np), rows)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def all_matrices(nrows: int, ncols: int, q: int):
    """All matrices of the given shape, in lexicographic row order."""
    cells = nrows * ncols
    for entries in product(range(q), repeat=cells):
        yield Mat(
            q,
            nrows,
            ncols,
            tuple(entries[i * ncols : (i + 1) * ncols] for i in range(nrows)),
        )


@lru_cache(maxsize=None)
def nilpotent_matrices(n: int, q: int) -> tuple[Mat, ...]:
    """All nilpotent n x n matrices over F_q (N^n == 0)."""
    out = []
    for m in all_matrices(n, n, q):
        p = Mat.identity(q, n)
        for _ in range(n):
            p = p * m
        if p == Mat.zeros(q, n, n):
            out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def subspaces_of_dim(n: int, k: int, q: int) -> tuple[Subspace, ...]:
    """All k-dimensional subspaces of F_q^n as RREF bases, lexicographically."""
    if k < 0 or k > n:
        return ()
    if k == 0:
        return ((),)
    out = []
    for pivots in combinations(range(n), k):
        free_slots = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        for vals in product(range(q), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, j), val in zip(free_slots, vals):
                rows[i][j] = val
            out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


@lru_cache(maxsize=None)
def _primitive_root(q: int) -> int:
    if q == 2:
        return 1
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = (x * g) % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


@lru_cache(maxsize=None)
def gl_generators(n: int, q: int) -> tuple[Mat, ...]:
    """Generators of GL_n(F_q): all transvections I + E_ij plus a primitive scaling."""
    if n == 0:
        return ()
    gens = []
    zeta = _primitive_root(q)
    if zeta != 1:
        d = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        d[0][0] = zeta
        gens.append(Mat.from_rows(q, n, n, d))
    for i in range(n):
        for j in range(n):
            if i != j:
                t = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                t[i][j] = 1
                gens.append(Mat.from_rows(q, n, n, t))
    return tuple(gens)
