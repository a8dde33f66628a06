"""Finite-field quiver representations: iso-classes, Hom/Ext, Hall numbers.

A representation assigns F_q^(d_v) to each vertex and a matrix to each arrow
(columns index the source).  Two modes exist: ``nilpotent`` restricts to
representations killed by all long enough paths (the image chain
W_{k+1} = sum_a M_a(W_k) must reach zero), ``full`` allows arbitrary matrices.

Isomorphism classes are handled by brute canonicalization: the base-change
group prod_v GL(d_v) acts by conjugation, its orbit through a representation
is walked breadth-first using transvection/scaling generators, and the
lexicographically least encoding in the orbit is the canonical form.  Every
orbit member encountered is memoized, so repeated lookups of subquotients hit
the cache.  The orbit size also yields |Aut| = |prod GL(d_v)| / |orbit|
exactly; an independent brute-force count over the endomorphism space is kept
alongside for cross-checking.

Hall numbers count subrepresentations with prescribed sub/quotient classes by
direct enumeration of arrow-stable subspace tuples.  The extension-side count
used by the multiplication is recovered through the subobject/automorphism
conversion, while an independent cocycle-based count (middle terms of the
standard two-term resolution) is provided as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InternalInconsistencyError, ResourceLimitError
from .fqlinalg import (
    Mat,
    all_matrices,
    coords_in_rref,
    full_space,
    gl_generators,
    in_span,
    kernel_basis,
    nilpotent_matrices,
    quotient_map,
    quotient_nonpivots,
    rref,
    restrict_map,
    subspace_from_rows,
    subspaces_of_dim,
)
from .quivers import DimVec, Quiver, add_vec, euler_form
from .scalars import Scalar, gl_size, sqrt_q

DEFAULT_MAX_TOTAL_DIM = 8
DEFAULT_MAX_TUPLES = 4_000_000
DEFAULT_MAX_ENDO_ENUM = 250_000

NILPOTENT = "nilpotent"
FULL = "full"


@dataclass(frozen=True)
class FqRep:
    """A representation: one dimension per vertex, one matrix per arrow."""

    dims: DimVec
    mats: tuple[Mat, ...]

    def encode(self):
        return (self.dims, tuple(m.rows for m in self.mats))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


class IsoClass:
    """Canonical representative of an isomorphism class, with cached |Aut|."""

    __slots__ = ("rep", "id", "dimvec", "orbit_size", "aut_size", "index")

    def __init__(self, rep: FqRep, id_: str, index: int, orbit_size: int, aut_size: int):
        self.rep = rep
        self.id = id_
        self.index = index
        self.dimvec = rep.dims
        self.orbit_size = orbit_size
        self.aut_size = aut_size

    def __repr__(self) -> str:
        return f"IsoClass({self.id})"

    def __hash__(self) -> int:
        return hash(self.id)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IsoClass) and self.id == other.id


class RepCategory:
    """All computations about representations of one quiver over one F_q."""

    def __init__(
        self,
        quiver: Quiver,
        q: int,
        mode: str = NILPOTENT,
        max_total_dim: int = DEFAULT_MAX_TOTAL_DIM,
        max_tuples: int = DEFAULT_MAX_TUPLES,
        cache_dir: str | None = None,
    ):
        if mode not in (NILPOTENT, FULL):
            raise ValueError(f"unknown mode {mode!r}")
        self.quiver = quiver
        self.q = q
        self.mode = mode
        self.max_total_dim = max_total_dim
        self.max_tuples = max_tuples
        self.cache_dir = cache_dir
        self.arrow_idx = quiver.arrow_indices()
        self._qhash = quiver.content_hash()
        self._canon: dict = {}            # encoding -> IsoClass, all orbit members
        self._by_dim: dict[DimVec, list[IsoClass]] = {}
        self._counter: dict[DimVec, int] = {}
        self._hom_cache: dict = {}
        self._aut_elems: dict = {}
        self._hall_cache: dict = {}

    # -- constructors --------------------------------------------------------
    def zero_rep(self) -> FqRep:
        dims = self.quiver.zero()
        return self._make(dims, [Mat.zeros(self.q, 0, 0) for _ in self.arrow_idx])

    def _make(self, dims: DimVec, mats) -> FqRep:
        fixed = []
        for (s, t), m in zip(self.arrow_idx, mats):
            assert m.nrows == dims[t] and m.ncols == dims[s], "arrow matrix shape mismatch"
            fixed.append(m)
        return FqRep(tuple(dims), tuple(fixed))

    def simple(self, i: int) -> FqRep:
        """Nilpotent simple at vertex i (loops act by zero)."""
        dims = self.quiver.unit(i)
        mats = [Mat.zeros(self.q, dims[t], dims[s]) for s, t in self.arrow_idx]
        return self._make(dims, mats)

    def semisimple(self, i: int, l: int) -> FqRep:
        """Direct sum of l copies of the nilpotent simple at i."""
        dims = tuple(l * x for x in self.quiver.unit(i))
        mats = [Mat.zeros(self.q, dims[t], dims[s]) for s, t in self.arrow_idx]
        return self._make(dims, mats)

    def simple_with_params(self, i: int, lam: tuple[int, ...]) -> FqRep:
        """Full-mode simple at vertex i where the loops act by the scalars lam."""
        if self.mode != FULL:
            raise ValueError("parameterized simples only exist in full mode")
        loops = [k for k, (s, t) in enumerate(self.arrow_idx) if s == i and t == i]
        if len(lam) != len(loops):
            raise ValueError(f"need {len(loops)} loop parameters at vertex {i}")
        dims = self.quiver.unit(i)
        mats = []
        for k, (s, t) in enumerate(self.arrow_idx):
            if k in loops:
                mats.append(Mat.from_rows(self.q, 1, 1, [[lam[loops.index(k)]]]))
            else:
                mats.append(Mat.zeros(self.q, dims[t], dims[s]))
        return self._make(dims, mats)

    def direct_sum(self, x: FqRep, y: FqRep) -> FqRep:
        q = self.q
        dims = add_vec(x.dims, y.dims)
        mats = []
        for k, (s, t) in enumerate(self.arrow_idx):
            a, b = x.mats[k], y.mats[k]
            rows = [r + (0,) * b.ncols for r in a.rows] + [(0,) * a.ncols + r for r in b.rows]
            mats.append(Mat(q, dims[t], dims[s], tuple(rows)))
        return self._make(dims, mats)

    # -- nilpotency ----------------------------------------------------------
    def is_nilpotent(self, rep: FqRep) -> bool:
        """True when every long enough path acts by zero (image chain hits 0)."""
        q = self.q
        spaces = [full_space(d, q) for d in rep.dims]
        for _ in range(rep.total_dim):
            buckets: list[list] = [[] for _ in rep.dims]
            for (s, t), m in zip(self.arrow_idx, rep.mats):
                for u in spaces[s]:
                    buckets[t].append(m.apply(u))
            new = [subspace_from_rows(b, d, q) for b, d in zip(buckets, rep.dims)]
            if new == spaces:
                break
            spaces = new
        return all(len(sp) == 0 for sp in spaces)

    def mode_allows(self, rep: FqRep) -> bool:
        return self.mode == FULL or self.is_nilpotent(rep)

    # -- canonicalization ----------------------------------------------------
    def group_order(self, dims: DimVec) -> int:
        out = 1
        for d in dims:
            out *= gl_size(d, self.q)
        return out

    def _gens(self, dims: DimVec):
        """Base-change generators: (vertex, g, g_inverse) triples."""
        out = []
        for v, d in enumerate(dims):
            for g in gl_generators(d, self.q):
                out.append((v, g, g.inverse()))
        return out

    def _act(self, rep: FqRep, v: int, g: Mat, ginv: Mat) -> FqRep:
        mats = []
        for (s, t), m in zip(self.arrow_idx, rep.mats):
            if t == v:
                m = g * m
            if s == v:
                m = m * ginv
            mats.append(m)
        return FqRep(rep.dims, tuple(mats))

    def canonicalize(self, rep: FqRep) -> IsoClass:
        key = rep.encode()
        cls = self._canon.get(key)
        if cls is not None:
            return cls
        gens = self._gens(rep.dims)
        seen = {key: rep}
        frontier = [rep]
        while frontier:
            nxt = []
            for r in frontier:
                for v, g, ginv in gens:
                    r2 = self._act(r, v, g, ginv)
                    k2 = r2.encode()
                    if k2 not in seen:
                        seen[k2] = r2
                        nxt.append(r2)
            frontier = nxt
        best = min(seen)
        canon = seen[best]
        order = self.group_order(rep.dims)
        if order % len(seen):
            raise InternalInconsistencyError("orbit size does not divide group order")
        cls = self._canon.get(best)
        if cls is None:
            idx = self._counter.get(rep.dims, 0)
            self._counter[rep.dims] = idx + 1
            dimstr = ",".join(map(str, rep.dims))
            cls = IsoClass(
                canon, f"{self._qhash}:{dimstr}:{idx}", idx, len(seen), order // len(seen)
            )
        for k in seen:
            self._canon[k] = cls
        return cls

    # -- enumeration ---------------------------------------------------------
    def _arrow_candidates(self, dims: DimVec):
        cands = []
        total = 1
        for s, t in self.arrow_idx:
            if s == t and self.mode == NILPOTENT:
                pool = nilpotent_matrices(dims[s], self.q)
            else:
                pool = tuple(all_matrices(dims[t], dims[s], self.q))
            cands.append(pool)
            total *= len(pool)
        return cands, total

    def enumerate_reps(self, dims: DimVec) -> list[IsoClass]:
        dims = tuple(dims)
        if dims in self._by_dim:
            return self._by_dim[dims]
        if sum(dims) > self.max_total_dim:
            raise ResourceLimitError(
                f"dimension vector {dims} exceeds total-dimension bound {self.max_total_dim}"
            )
        cached = self._load_cached_enumeration(dims)
        if cached is not None:
            self._by_dim[dims] = cached
            return cached
        cands, total = self._arrow_candidates(dims)
        if total > self.max_tuples:
            raise ResourceLimitError(
                f"enumeration at {dims} needs {total} matrix tuples (bound {self.max_tuples})"
            )
        classes: list[IsoClass] = []
        seen_ids = set()
        for mats in product(*cands):
            rep = FqRep(dims, mats)
            key = rep.encode()
            cls = self._canon.get(key)
            if cls is None:
                if not self.mode_allows(rep):
                    continue
                cls = self.canonicalize(rep)
            if cls.id not in seen_ids:
                seen_ids.add(cls.id)
                classes.append(cls)
        classes.sort(key=lambda c: c.rep.encode())
        self._by_dim[dims] = classes
        self._save_cached_enumeration(dims, classes)
        return classes

    # -- persistent enumeration cache (content-addressed, optional) -----------
    def _cache_file(self):
        if not self.cache_dir:
            return None
        import os

        name = f"reps-{self._qhash}-q{self.q}-{self.mode}.json"
        return os.path.join(self.cache_dir, name)

    def _load_cached_enumeration(self, dims: DimVec):
        path = self._cache_file()
        if path is None:
            return None
        import json
        import os

        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        recs = data.get("dims", {}).get(",".join(map(str, dims)))
        if recs is None:
            return None
        classes = []
        for rec in recs:
            rep_mats = []
            for k, (s, t) in enumerate(self.arrow_idx):
                rows = rec["mats"][k]
                rep_mats.append(Mat.from_rows(self.q, dims[t], dims[s], rows))
            classes.append(self.canonicalize(FqRep(dims, tuple(rep_mats))))
        classes.sort(key=lambda c: c.rep.encode())
        return classes

    def _save_cached_enumeration(self, dims: DimVec, classes: list[IsoClass]) -> None:
        path = self._cache_file()
        if path is None:
            return
        import json
        import os

        os.makedirs(self.cache_dir, exist_ok=True)
        data = {"quiver": self.quiver.to_json(), "q": self.q, "mode": self.mode, "dims": {}}
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    data = json.load(fh)
            except (OSError, ValueError):
                pass
        data.setdefault("dims", {})[",".join(map(str, dims))] = [
            {"mats": [list(map(list, m.rows)) for m in cls.rep.mats]} for cls in classes
        ]
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)

    # -- Hom / Ext / Aut -----------------------------------------------------
    def hom_basis(self, x: FqRep, y: FqRep) -> list[tuple[Mat, ...]]:
        """Basis of intertwiners x -> y (one matrix per vertex)."""
        key = (x.encode(), y.encode())
        cached = self._hom_cache.get(key)
        if cached is not None:
            return cached
        q = self.q
        n = self.quiver.n
        offs = []
        off = 0
        for v in range(n):
            offs.append(off)
            off += y.dims[v] * x.dims[v]
        nvars = off
        rows = []
        for (s, t), (xm, ym) in zip(self.arrow_idx, zip(x.mats, y.mats)):
            # phi_t * X_a - Y_a * phi_s = 0, entrywise
            for i in range(y.dims[t]):
                for j in range(x.dims[s]):
                    row = [0] * nvars
                    for k in range(x.dims[t]):
                        row[offs[t] + i * x.dims[t] + k] = (
                            row[offs[t] + i * x.dims[t] + k] + xm.rows[k][j]
                        ) % q
                    for k in range(y.dims[s]):
                        row[offs[s] + k * x.dims[s] + j] = (
                            row[offs[s] + k * x.dims[s] + j] - ym.rows[i][k]
                        ) % q
                    rows.append(tuple(row))
        basis = []
        for vec in _kernel_of_rows(rows, nvars, q):
            mats = []
            for v in range(n):
                block = [
                    tuple(vec[offs[v] + i * x.dims[v] + j] for j in range(x.dims[v]))
                    for i in range(y.dims[v])
                ]
                mats.append(Mat(q, y.dims[v], x.dims[v], tuple(block)))
            basis.append(tuple(mats))
        self._hom_cache[key] = basis
        return basis

    def hom_dim(self, x: FqRep, y: FqRep) -> int:
        return len(self.hom_basis(x, y))

    def ext1_dim(self, x: FqRep, y: FqRep) -> int:
        """dim Ext^1 via heredity: hom_dim minus the Euler form."""
        val = self.hom_dim(x, y) - euler_form(self.quiver, x.dims, y.dims)
        if val < 0:
            raise InternalInconsistencyError(
                f"negative Ext dimension for {x.dims} -> {y.dims}"
            )
        return val

    def hom_elements(self, x: FqRep, y: FqRep):
        """Every intertwiner x -> y, as a tuple of per-vertex matrices."""
        basis = self.hom_basis(x, y)
        if self.q ** len(basis) > DEFAULT_MAX_ENDO_ENUM:
            raise ResourceLimitError(f"hom space too large to enumerate: q^{len(basis)}")
        zero = tuple(Mat.zeros(self.q, y.dims[v], x.dims[v]) for v in range(self.quiver.n))
        for coeffs in product(range(self.q), repeat=len(basis)):
            morph = zero
            for c, b in zip(coeffs, basis):
                if c:
                    morph = tuple(m + bb.scale(c) for m, bb in zip(morph, b))
            yield morph

    def aut_elements(self, rep: FqRep) -> list[tuple[Mat, ...]]:
        key = rep.encode()
        cached = self._aut_elems.get(key)
        if cached is None:
            cached = [
                f for f in self.hom_elements(rep, rep) if all(m.is_invertible() for m in f)
            ]
            self._aut_elems[key] = cached
        return cached

    def aut_size(self, cls: IsoClass) -> int:
        return cls.aut_size

    def aut_size_bruteforce(self, rep: FqRep) -> int:
        return len(self.aut_elements(rep))

    # -- subrepresentations and Hall numbers ----------------------------------
    def stable_subspace_tuples(self, y: FqRep, sub_dims: DimVec):
        """All arrow-stable subspace tuples of y with the given dimensions."""
        if any(s > d for s, d in zip(sub_dims, y.dims)):
            return
        pools = [subspaces_of_dim(y.dims[v], sub_dims[v], self.q) for v in range(self.quiver.n)]
        for spaces in product(*pools):
            ok = True
            for (s, t), m in zip(self.arrow_idx, y.mats):
                for u in spaces[s]:
                    if not in_span(m.apply(u), spaces[t], self.q):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield spaces

    def sub_rep(self, y: FqRep, spaces) -> FqRep:
        dims = tuple(len(sp) for sp in spaces)
        mats = [
            restrict_map(m, spaces[s], spaces[t]) for (s, t), m in zip(self.arrow_idx, y.mats)
        ]
        return self._make(dims, mats)

    def quotient_rep(self, y: FqRep, spaces) -> FqRep:
        dims = tuple(y.dims[v] - len(spaces[v]) for v in range(self.quiver.n))
        mats = [
            quotient_map(m, spaces[s], spaces[t]) for (s, t), m in zip(self.arrow_idx, y.mats)
        ]
        return self._make(dims, mats)

    def hall_number(self, x: IsoClass, z: IsoClass, y: IsoClass) -> int:
        """Count subrepresentations of y isomorphic to z with quotient isomorphic to x."""
        if add_vec(x.dimvec, z.dimvec) != y.dimvec:
            return 0
        key = (x.id, z.id, y.id)
        cached = self._hall_cache.get(key)
        if cached is not None:
            return cached
        count = 0
        for spaces in self.stable_subspace_tuples(y.rep, z.dimvec):
            if self.canonicalize(self.sub_rep(y.rep, spaces)) != z:
                continue
            if self.canonicalize(self.quotient_rep(y.rep, spaces)) == x:
                count += 1
        self._hall_cache[key] = count
        return count

    def hall_product_classes(self, x: IsoClass, z: IsoClass) -> list[tuple[Fraction, IsoClass]]:
        """Coefficients of [x] . [z] in the extension/hom normalization."""
        out = []
        for y in self.enumerate_reps(add_vec(x.dimvec, z.dimvec)):
            f = self.hall_number(x, z, y)
            if f:
                out.append((Fraction(f * x.aut_size * z.aut_size, y.aut_size), y))
        return out

    # -- independent extension-count oracle -----------------------------------
    def ext1_count_cocycle(self, x: IsoClass, z: IsoClass, y: IsoClass) -> int:
        """|Ext^1(x, z)_y| by enumerating cocycles of the two-term resolution."""
        q = self.q
        xr, zr = x.rep, z.rep
        slots = [(k, zr.dims[t], xr.dims[s]) for k, (s, t) in enumerate(self.arrow_idx)]
        nvars = sum(r * c for _, r, c in slots)
        if q**nvars > self.max_tuples:
            raise ResourceLimitError("cocycle space too large")
        hits = 0
        for entries in product(range(q), repeat=nvars):
            mats = []
            pos = 0
            for k, (s, t) in enumerate(self.arrow_idx):
                r, c = zr.dims[t], xr.dims[s]
                eta = Mat(
                    q, r, c, tuple(tuple(entries[pos + i * c + j] for j in range(c)) for i in range(r))
                )
                pos += r * c
                za, xa = zr.mats[k], xr.mats[k]
                rows = [zr_row + eta_row for zr_row, eta_row in zip(za.rows, eta.rows)]
                rows += [(0,) * za.ncols + xr_row for xr_row in xa.rows]
                mats.append(Mat(q, za.nrows + xa.nrows, za.ncols + xa.ncols, tuple(rows)))
            mid = FqRep(add_vec(zr.dims, xr.dims), tuple(mats))
            if self.canonicalize(mid) == y:
                hits += 1
        coboundaries = sum(zr.dims[v] * xr.dims[v] for v in range(self.quiver.n)) - self.hom_dim(
            xr, zr
        )
        denom = q**coboundaries
        if hits % denom:
            raise InternalInconsistencyError("cocycle count not divisible by coboundaries")
        return hits // denom


def _kernel_of_rows(rows, nvars: int, q: int):
    """Basis of the solution space of a homogeneous system given by rows."""
    if nvars == 0:
        return []
    red, pivots = rref(rows, nvars, q)
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * nvars
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = (-red[i][f]) % q
        basis.append(tuple(v))
    return basis


def module_hall_product(
    cat: RepCategory,
    x: dict[IsoClass, Scalar],
    z: dict[IsoClass, Scalar],
    twisted: bool = False,
) -> dict[IsoClass, Scalar]:
    """Hall product of linear combinations of module classes.

    Untwisted coefficients follow the extension/hom normalization; the twisted
    variant multiplies each pairwise product by v^<dim X, dim Z>.
    """
    out: dict[IsoClass, Scalar] = {}
    v = sqrt_q(cat.q)
    for xc, xs in x.items():
        for zc, zs in z.items():
            factor = xs * zs
            if twisted:
                factor = factor * v ** euler_form(cat.quiver, xc.dimvec, zc.dimvec)
            for coeff, y in cat.hall_product_classes(xc, zc):
                term = factor * Scalar(coeff, Fraction(0), cat.q)
                tot = out.get(y, Scalar(Fraction(0), Fraction(0), cat.q)) + term
                if tot:
                    out[y] = tot
                elif y in out:
                    del out[y]
    return out
