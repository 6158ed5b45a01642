"""Finite complex reflection groups: catalog, closure enumeration, fixed spaces.

A catalog entry carries exact generator matrices over a cyclotomic field.
`build_group` enumerates the full group by breadth-first closure, keyed on a
canonical integer encoding of each matrix (coordinate vectors over the power
basis, scaled by one positive denominator with content 1).  After closure all
group arithmetic is integer-only: generator left-multiplication tables,
right-multiplication tables derived by dynamic programming over the BFS
forest, inverse and conjugation tables, and conjugacy classes.  Matrices are
kept (or re-derived from BFS words) solely for exact fixed-space computations.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .cyclo import Cyclotomic, cyclotomic_polynomial, euler_phi

try:  # stdlib importlib.resources, package data
    from importlib.resources import files as _resource_files
except ImportError:  # pragma: no cover
    _resource_files = None

DEFAULT_BUILD_BUDGET = 2_000_000
LARGE_BUILD_BUDGET = 4_000_000
_KEEP_MATRICES_LIMIT = 400_000

CyMatrix = tuple[tuple[Cyclotomic, ...], ...]


class CatalogError(ValueError):
    """Unknown catalog entry or corrupted catalog data."""


class BudgetError(RuntimeError):
    """A computation was refused because it exceeds the configured budget."""


class ClosureError(RuntimeError):
    """Closure enumeration did not terminate at the expected group order."""


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One well-generated irreducible reflection group, with exact generators."""

    name: str
    rank: int
    conductor: int
    degrees: tuple[int, ...]
    codegrees: tuple[int, ...]
    order: int
    num_reflections: int
    generators: tuple[CyMatrix, ...]
    buildable: bool = True
    notes: str = ""

    @property
    def coxeter_number(self) -> int:
        return self.degrees[-1]

    def validate(self) -> None:
        if self.rank < 1:
            raise CatalogError(f"{self.name}: rank must be positive")
        if tuple(sorted(self.degrees)) != self.degrees:
            raise CatalogError(f"{self.name}: degrees must be ascending")
        if tuple(sorted(self.codegrees, reverse=True)) != self.codegrees:
            raise CatalogError(f"{self.name}: codegrees must be descending")
        if len(self.degrees) != self.rank or len(self.codegrees) != self.rank:
            raise CatalogError(f"{self.name}: need {self.rank} degrees and codegrees")
        order = 1
        for d in self.degrees:
            order *= d
        if order != self.order:
            raise CatalogError(f"{self.name}: order {self.order} != product of degrees {order}")
        nref = sum(d - 1 for d in self.degrees)
        if nref != self.num_reflections:
            raise CatalogError(
                f"{self.name}: reflection count {self.num_reflections} != sum(d_i - 1) = {nref}"
            )
        h = self.coxeter_number
        for d, dstar in zip(self.degrees, self.codegrees):
            if d + dstar != h:
                raise CatalogError(
                    f"{self.name}: well-generation duality fails: {d} + {dstar} != {h}"
                )
        for g in self.generators:
            if len(g) != self.rank or any(len(row) != self.rank for row in g):
                raise CatalogError(f"{self.name}: generator matrices must be {self.rank}x{self.rank}")


def _parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _entry_from_document(doc: dict) -> CatalogEntry:
    try:
        gens = []
        for gmat in doc["generators"]:
            rows = []
            for row in gmat:
                cells = []
                for cell in row:
                    cond, coeffs = cell
                    cells.append(Cyclotomic(int(cond), [_parse_rational(c) for c in coeffs]))
                rows.append(tuple(cells))
            gens.append(tuple(rows))
        entry = CatalogEntry(
            name=doc["name"],
            rank=int(doc["rank"]),
            conductor=int(doc["conductor"]),
            degrees=tuple(int(d) for d in doc["degrees"]),
            codegrees=tuple(int(d) for d in doc["codegrees"]),
            order=int(doc["order"]),
            num_reflections=int(doc["reflections"]),
            generators=tuple(gens),
            buildable=bool(doc.get("buildable", True)),
            notes=doc.get("notes", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"malformed catalog document: {exc}") from exc
    entry.validate()
    return entry


def catalog_names() -> list[str]:
    """Sorted names of every available catalog entry."""
    names = set()
    env = os.environ.get("NCSIEVE_CATALOG")
    if env and os.path.isdir(env):
        names.update(f[:-5] for f in os.listdir(env) if f.endswith(".json"))
    if _resource_files is not None:
        res = _resource_files("ncsieve").joinpath("data").joinpath("catalog")
        if res.is_dir():
            names.update(p.name[:-5] for p in res.iterdir() if p.name.endswith(".json"))
    return sorted(names)


def load_catalog(name: str) -> CatalogEntry:
    """Load and validate one catalog entry by name.

    User catalogs (NCSIEVE_CATALOG directory) shadow the builtin data files.
    """
    fname = f"{name}.json"
    env = os.environ.get("NCSIEVE_CATALOG")
    if env:
        path = os.path.join(env, fname)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return _entry_from_document(json.load(fh))
    if _resource_files is not None:
        res = _resource_files("ncsieve").joinpath("data").joinpath("catalog").joinpath(fname)
        if res.is_file():
            return _entry_from_document(json.loads(res.read_text(encoding="utf-8")))
    raise CatalogError(f"unknown catalog entry {name!r}")


def entry_to_document(entry: CatalogEntry) -> dict:
    """Serialise an entry in the catalog file format (decimal-string integers)."""
    gens = []
    for g in entry.generators:
        gens.append(
            [[[cell.n, [str(c) for c in cell.coeffs]] for cell in row] for row in g]
        )
    return {
        "name": entry.name,
        "rank": entry.rank,
        "conductor": entry.conductor,
        "degrees": list(entry.degrees),
        "codegrees": list(entry.codegrees),
        "order": str(entry.order),
        "reflections": entry.num_reflections,
        "generators": gens,
        "buildable": entry.buildable,
        "notes": entry.notes,
    }


# ---------------------------------------------------------------------------
# integer encoding of cyclotomic matrices
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_rows_int(n: int) -> np.ndarray:
    """zeta_n^t over the power basis for t in [0, n), as an (n, phi(n)) int array."""
    k = euler_phi(n)
    rows = np.zeros((n, k), dtype=np.int64)
    for t in range(min(k, n)):
        rows[t, t] = 1
    if n > 1:
        phi_n = cyclotomic_polynomial(n)
        cur = [-c for c in phi_n[:k]]
        rows[k] = cur
        for t in range(k + 1, n):
            shifted = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(k):
                    shifted[i] -= top * phi_n[i]
            cur = shifted
            rows[t] = cur
    return rows


@lru_cache(maxsize=None)
def _mult_tensor(n: int) -> np.ndarray:
    """T[r,s,:] = coordinates of zeta_n^(r+s); shape (phi, phi, phi)."""
    k = euler_phi(n)
    rows = _basis_rows_int(n)
    tensor = np.zeros((k, k, k), dtype=np.int64)
    for r in range(k):
        for s in range(k):
            tensor[r, s] = rows[(r + s) % n]
    return tensor


class _MatCodec:
    """Canonical integer form for rank x rank matrices over Q(zeta_n).

    A matrix is a pair (den, arr) with arr of shape (rank, rank, phi(n)) in
    int64, gcd(den, content(arr)) = 1 and den > 0.  Matrix products reduce to
    integer einsums against the field multiplication tensor.
    """

    def __init__(self, conductor: int, rank: int):
        self.n = conductor
        self.rank = rank
        self.k = euler_phi(conductor)
        self.tensor = _mult_tensor(conductor)

    def identity(self) -> tuple[int, np.ndarray]:
        arr = np.zeros((self.rank, self.rank, self.k), dtype=np.int64)
        for i in range(self.rank):
            arr[i, i, 0] = 1
        return 1, arr

    def encode(self, mat: CyMatrix) -> tuple[int, np.ndarray]:
        den = 1
        cells = []
        for row in mat:
            crow = []
            for cell in row:
                c = cell.embed(self.n) if cell.n != self.n else cell
                crow.append(c.coeffs)
                for co in c.coeffs:
                    den = lcm(den, co.denominator)
            cells.append(crow)
        arr = np.zeros((self.rank, self.rank, self.k), dtype=np.int64)
        for i, crow in enumerate(cells):
            for j, coeffs in enumerate(crow):
                for t, co in enumerate(coeffs):
                    arr[i, j, t] = int(co * den)
        return self.normalize(den, arr)

    def decode(self, den: int, arr: np.ndarray) -> CyMatrix:
        rows = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                row.append(
                    Cyclotomic(
                        self.n,
                        tuple(Fraction(int(v), den) for v in arr[i, j]),
                        _reduced=True,
                    )
                )
            rows.append(tuple(row))
        return tuple(rows)

    @staticmethod
    def normalize(den: int, arr: np.ndarray) -> tuple[int, np.ndarray]:
        den = int(den)
        g = int(np.gcd.reduce(np.abs(arr), axis=None))
        g = gcd(g, den) if g else den
        if g > 1:
            arr = arr // g
            den //= g
        return den, arr

    def key(self, den: int, arr: np.ndarray) -> bytes:
        return den.to_bytes(8, "little", signed=False) + arr.tobytes()

    def prepare_left(self, den: int, arr: np.ndarray) -> tuple[int, np.ndarray]:
        """Precontract a matrix with the field tensor for fast batched products."""
        if self.k == 1:
            return den, arr[:, :, 0]
        return den, np.einsum("ijr,rst->ijst", arr, self.tensor)

    def left_mul_batch(
        self, prepared: tuple[int, np.ndarray], dens: np.ndarray, batch: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        gden, garr = prepared
        if self.k == 1:
            prod = np.matmul(garr, batch[:, :, :, 0])[..., None]
        else:
            prod = np.einsum("ijst,bjks->bikt", garr, batch)
        if prod.size and np.abs(prod).max() > (1 << 60):
            raise ClosureError("integer overflow risk in matrix closure")
        return gden * dens, prod

    def matmul(
        self, a: tuple[int, np.ndarray], b: tuple[int, np.ndarray]
    ) -> tuple[int, np.ndarray]:
        da, ma = a
        db, mb = b
        if self.k == 1:
            prod = np.matmul(ma[:, :, 0], mb[:, :, 0])[..., None]
        else:
            prod = np.einsum("ijr,jks,rst->ikt", ma, mb, self.tensor)
        return self.normalize(da * db, prod)


# ---------------------------------------------------------------------------
# the built group
# ---------------------------------------------------------------------------


class ReflectionGroup:
    """A fully enumerated reflection group with integer operation tables.

    Elements are dense indices 0..order-1 (0 is the identity) in BFS
    discovery order.  `left_tables[g][x] = g*x` for each catalog generator;
    arbitrary products fold the BFS word of the left operand over those
    tables.  Matrices remain available for exact fixed-space work.
    """

    def __init__(self, entry: CatalogEntry, budget: int = DEFAULT_BUILD_BUDGET):
        entry.validate()
        if not entry.buildable:
            raise BudgetError(
                f"{entry.name}: construction refused (order {entry.order}; "
                "marked non-enumerable in the catalog)"
            )
        if entry.order > budget:
            raise BudgetError(
                f"{entry.name}: order {entry.order} exceeds enumeration budget {budget}"
            )
        self.entry = entry
        self.rank = entry.rank
        self.codec = _MatCodec(entry.conductor, entry.rank)
        self._closure()
        self._finish_tables()
        self._classes()
        self._identify_reflections()
        self._cox_cache: int | None = None
        self._right_cache: dict[int, np.ndarray] = {}
        self._length_cache = None
        self._interval_cache: dict[int, np.ndarray] = {}

    # -- construction ------------------------------------------------------

    def _closure(self) -> None:
        codec = self.codec
        entry = self.entry
        gens = [codec.encode(g) for g in entry.generators]
        prepared = [codec.prepare_left(d, a) for d, a in gens]
        ident = codec.identity()
        expected = entry.order
        ngens = len(gens)
        index: dict[bytes, int] = {codec.key(*ident): 0}
        mats: list[tuple[int, np.ndarray]] = [ident]
        parent = np.zeros(expected, dtype=np.int32)
        genof = np.zeros(expected, dtype=np.int32)
        tables = np.full((ngens, expected), -1, dtype=np.int32)
        layers = [(0, 1)]
        layer = [0]
        count = 1
        while layer:
            batch = np.stack([mats[i][1] for i in layer])
            dens = np.array([mats[i][0] for i in layer], dtype=np.int64)
            layer_start = count
            for gi in range(ngens):
                pdens, parr = codec.left_mul_batch(prepared[gi], dens, batch)
                table = tables[gi]
                for row, x in enumerate(layer):
                    den, arr = codec.normalize(int(pdens[row]), parr[row])
                    kb = codec.key(den, arr)
                    idx = index.get(kb)
                    if idx is None:
                        if count >= expected:
                            raise ClosureError(
                                f"{entry.name}: closure exceeds expected order "
                                f"{expected}; generator data is corrupt"
                            )
                        idx = count
                        count += 1
                        index[kb] = idx
                        mats.append((den, np.ascontiguousarray(arr)))
                        parent[idx] = x
                        genof[idx] = gi
                    table[x] = idx
            if count > layer_start:
                layers.append((layer_start, count))
            layer = list(range(layer_start, count))
        if count != expected:
            raise ClosureError(
                f"{entry.name}: closure terminated at {count} elements, "
                f"expected {expected}"
            )
        self.order = count
        self.num_gens = ngens
        self.parent = parent
        self.genof = genof
        self.layers = layers
        self.left_tables = tables
        self._index = index
        self._mats = mats if self.order <= _KEEP_MATRICES_LIMIT else None
        self._gen_mats = gens
        self._mat_ondemand: dict[int, tuple[int, np.ndarray]] = {}

    def _dp_right_table(self, y: int) -> np.ndarray:
        """R[x] = x*y for all x, by DP over the BFS forest (O(order))."""
        table = np.empty(self.order, dtype=np.int32)
        table[0] = y
        lt = self.left_tables
        genof, parent = self.genof, self.parent
        for start, end in self.layers[1:]:
            idx = np.arange(start, end, dtype=np.int64)
            pa = table[parent[start:end]]
            gs = genof[start:end]
            for gi in range(self.num_gens):
                sel = gs == gi
                if sel.any():
                    table[idx[sel]] = lt[gi][pa[sel]]
        return table

    def _finish_tables(self) -> None:
        # generator element indices and their inverses
        self.gen_indices = [int(self.left_tables[gi][0]) for gi in range(self.num_gens)]
        gen_inv = []
        for gi, gidx in enumerate(self.gen_indices):
            prev, cur = 0, gidx
            while cur != 0:
                prev, cur = cur, int(self.left_tables[gi][cur])
            gen_inv.append(prev)
        self.gen_inverse_indices = gen_inv
        rtabs = [self._dp_right_table(gi) for gi in gen_inv]
        inv = np.empty(self.order, dtype=np.int32)
        inv[0] = 0
        for start, end in self.layers[1:]:
            idx = np.arange(start, end, dtype=np.int64)
            pa = inv[self.parent[start:end]]
            gs = self.genof[start:end]
            for gi in range(self.num_gens):
                sel = gs == gi
                if sel.any():
                    inv[idx[sel]] = rtabs[gi][pa[sel]]
        self.inverse = inv
        self.conj_gen_tables = np.stack(
            [self.left_tables[gi][rtabs[gi]] for gi in range(self.num_gens)]
        )

    def _classes(self) -> None:
        class_of = np.full(self.order, -1, dtype=np.int32)
        reps: list[int] = []
        for x in range(self.order):
            if class_of[x] >= 0:
                continue
            cid = len(reps)
            reps.append(x)
            stack = [x]
            class_of[x] = cid
            while stack:
                y = stack.pop()
                for gi in range(self.num_gens):
                    z = int(self.conj_gen_tables[gi][y])
                    if class_of[z] < 0:
                        class_of[z] = cid
                        stack.append(z)
        self.class_of = class_of
        self.class_reps = reps
        self.class_sizes = np.bincount(class_of, minlength=len(reps))
        self._class_fixdim: list[int | None] = [None] * len(reps)
        self._class_order: list[int | None] = [None] * len(reps)

    def _identify_reflections(self) -> None:
        n = self.rank
        refl_classes = [
            cid for cid, rep in enumerate(self.class_reps) if self.fix_dim(rep) == n - 1
        ]
        mask = np.isin(self.class_of, refl_classes)
        mask[0] = False
        self.reflections = np.flatnonzero(mask).astype(np.int32)
        if len(self.reflections) != self.entry.num_reflections:
            raise ClosureError(
                f"{self.entry.name}: found {len(self.reflections)} reflections, "
                f"catalog expects {self.entry.num_reflections}"
            )

    # -- integer group operations -------------------------------------------

    def word(self, x: int) -> list[int]:
        """Generator word of x: x = g_(w[-1]) * ... * g_(w[0]) applied to identity."""
        out = []
        while x != 0:
            out.append(int(self.genof[x]))
            x = int(self.parent[x])
        return out

    def mul(self, u: int, v: int) -> int:
        """Product u*v by folding u's BFS word over the left tables."""
        chain = []
        x = u
        while x != 0:
            chain.append(int(self.genof[x]))
            x = int(self.parent[x])
        for gi in reversed(chain):
            v = int(self.left_tables[gi][v])
        return v

    def mul_many(self, u: int, vs: np.ndarray) -> np.ndarray:
        """u*v for a whole vector of v's at once."""
        chain = []
        x = u
        while x != 0:
            chain.append(int(self.genof[x]))
            x = int(self.parent[x])
        out = vs
        for gi in reversed(chain):
            out = self.left_tables[gi][out]
        return out

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(g, self.mul(x, self.inv(g)))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(x), -k)
        result, base = 0, x
        while k:
            if k & 1:
                result = self.mul(base, result)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_order(self, x: int) -> int:
        cid = int(self.class_of[x])
        cached = self._class_order[cid]
        if cached is None:
            rep = self.class_reps[cid]
            k, cur = 1, rep
            while cur != 0:
                cur = self.mul(rep, cur)
                k += 1
            cached = k
            self._class_order[cid] = k
        return cached

    def right_table(self, y: int) -> np.ndarray:
        """Full permutation x -> x*y (cached)."""
        tab = self._right_cache.get(y)
        if tab is None:
            tab = self._dp_right_table(y)
            if len(self._right_cache) * self.order < 80_000_000:
                self._right_cache[y] = tab
        return tab

    def left_table(self, y: int) -> np.ndarray:
        """Full permutation x -> y*x (composed from generator tables)."""
        chain = []
        x = y
        while x != 0:
            chain.append(int(self.genof[x]))
            x = int(self.parent[x])
        out = np.arange(self.order, dtype=np.int32)
        for gi in reversed(chain):
            out = self.left_tables[gi][out]
        return out

    # -- exact matrices and fixed spaces ------------------------------------

    def matrix_encoded(self, x: int) -> tuple[int, np.ndarray]:
        if self._mats is not None:
            return self._mats[x]
        if x == 0:
            return self.codec.identity()
        cached = self._mat_ondemand.get(x)
        if cached is None:
            gi = int(self.genof[x])
            cached = self.codec.matmul(self._gen_mats[gi], self.matrix_encoded(int(self.parent[x])))
            if len(self._mat_ondemand) < 100_000:
                self._mat_ondemand[x] = cached
        return cached

    def matrix(self, x: int) -> CyMatrix:
        """Exact cyclotomic matrix of element x."""
        return self.codec.decode(*self.matrix_encoded(x))

    def index_of_matrix(self, mat: CyMatrix) -> int:
        den, arr = self.codec.encode(mat)
        idx = self._index.get(self.codec.key(den, arr))
        if idx is None:
            raise KeyError("matrix does not belong to the group")
        return idx

    def fix_dim(self, x: int) -> int:
        """dim ker(M_x - I), exact; constant on conjugacy classes."""
        cid = int(self.class_of[x])
        cached = self._class_fixdim[cid]
        if cached is None:
            rep = self.class_reps[cid]
            mat = self.matrix(rep)
            rows = [
                [mat[i][j] - (1 if i == j else 0) for j in range(self.rank)]
                for i in range(self.rank)
            ]
            cached = self.rank - matrix_rank(rows)
            self._class_fixdim[cid] = cached
        return cached

    def fix_space_basis(self, x: int) -> list[list[Cyclotomic]]:
        mat = self.matrix(x)
        rows = [
            [mat[i][j] - (1 if i == j else 0) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        return kernel_basis(rows)

    def fixdim_class_counts(self) -> dict[int, int]:
        """Map fixed-space dimension -> number of group elements."""
        counts: dict[int, int] = {}
        for cid, rep in enumerate(self.class_reps):
            d = self.fix_dim(rep)
            counts[d] = counts.get(d, 0) + int(self.class_sizes[cid])
        return counts


# ---------------------------------------------------------------------------
# exact linear algebra over the cyclotomic field
# ---------------------------------------------------------------------------


def _as_cyclo(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-exact Gaussian elimination over the cyclotomic field."""
    m = [[_as_cyclo(c) for c in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if not m[r][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [c * inv for c in m[rank]]
        for r in range(nrows):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def kernel_basis(rows: Sequence[Sequence]) -> list[list[Cyclotomic]]:
    """Basis of the right kernel, exact."""
    m = [[_as_cyclo(c) for c in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if not m[r][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [c * inv for c in m[rank]]
        for r in range(nrows):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    zero = Cyclotomic.from_rational(0)
    one = Cyclotomic.from_rational(1)
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# group construction and validation entry points
# ---------------------------------------------------------------------------

_group_cache: dict[tuple[str, int], ReflectionGroup] = {}


def build_group(
    entry: CatalogEntry, budget: int = DEFAULT_BUILD_BUDGET, use_cache: bool = True
) -> ReflectionGroup:
    """Enumerate the full group; refuses entries beyond the budget."""
    key = (entry.name, entry.order)
    if use_cache and key in _group_cache:
        return _group_cache[key]
    group = ReflectionGroup(entry, budget=budget)
    if use_cache:
        _group_cache[key] = group
    return group


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: str = ""


@dataclass
class GroupReport:
    group: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, details: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), details))


def verify_group_invariants(group: ReflectionGroup) -> GroupReport:
    """Order, reflection count, and the fixed-space polynomial identity.

    The polynomial identity sum_w t^(dim Fix(w)) = prod_i (t + d_i - 1) is
    checked exactly using per-conjugacy-class fixed-space dimensions.
    """
    entry = group.entry
    report = GroupReport(entry.name)
    report.add(
        "order-matches-degree-product",
        group.order == entry.order,
        f"{group.order} vs {entry.order}",
    )
    report.add(
        "reflection-count",
        len(group.reflections) == entry.num_reflections,
        f"{len(group.reflections)} vs {entry.num_reflections}",
    )
    counts = group.fixdim_class_counts()
    lhs = [0] * (entry.rank + 1)
    for dim, cnt in counts.items():
        lhs[dim] = cnt
    rhs = [Fraction(1)]
    for d in entry.degrees:
        rhs = _poly_mul_int_frac(rhs, [Fraction(d - 1), Fraction(1)])
    rhs_int = [int(c) for c in rhs]
    report.add(
        "fixed-space-polynomial",
        lhs == rhs_int,
        f"lhs={lhs} rhs={rhs_int}",
    )
    return report


def _poly_mul_int_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out
