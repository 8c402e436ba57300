"""Subspaces M of Bil(V): bases, enumeration, rank spectra, derived objects.

The enumeration of the q^d - 1 nonzero elements of a subspace is the
hot loop of every theorem check.  Coefficient vectors are listed in a
fixed lexicographic order (index i -> base-q digits of i, most
significant first), so runs are reproducible and the index range can be
split into contiguous blocks for independent workers.

Operations that walk q^d or q^n objects take an explicit step budget
and raise BudgetExceeded instead of silently sampling: a theorem check
is either exhaustive or it did not run.  One step is one enumerated
object times one Gram-matrix cell (n^2 cells per form).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import linalg
from .formcore import (
    ALTERNATING,
    GENERAL,
    GramForm,
    Subspace,
    classify,
    rank,
)
from .gf import Field

DEFAULT_BUDGET = 10**8

KIND_GENERAL = "general"
KIND_SYMMETRIC = "symmetric"
KIND_ALTERNATING = "alternating"
KINDS = (KIND_GENERAL, KIND_SYMMETRIC, KIND_ALTERNATING)

_BLOCK = 1 << 13


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive operation would overrun its step budget."""


def charge(items: int, cell_cost: int, budget: Optional[int], what: str) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    steps = items * max(cell_cost, 1)
    if steps > limit:
        raise BudgetExceeded(f"{what} needs {steps} steps, budget is {limit}")


def _kind_of_basis(forms) -> str:
    if all(classify(f) == ALTERNATING for f in forms):
        return KIND_ALTERNATING
    if all((f.entries == f.entries.T).all() for f in forms):
        return KIND_SYMMETRIC
    return KIND_GENERAL


class FormSubspace:
    """A subspace of Bil(V) given by a linearly independent basis of forms."""

    __slots__ = ("field", "n", "basis", "kind", "_flat")

    def __init__(self, field: Field, n: int, basis):
        basis = tuple(basis)
        for i, f in enumerate(basis):
            if not isinstance(f, GramForm):
                raise ValueError(f"basis entry {i} is not a GramForm")
            if f.field != field or f.n != n:
                raise ValueError(f"basis entry {i} lives on a different space")
        flat = (
            np.stack([f.flat() for f in basis])
            if basis
            else np.zeros((0, n * n), dtype=np.int64)
        )
        # incremental check so a dependent row can be named in diagnostics
        taken = np.zeros((0, n * n), dtype=np.int64)
        for i in range(len(basis)):
            stacked = np.vstack([taken, flat[i : i + 1]])
            red, piv = linalg.rref(field, stacked)
            if len(piv) != len(stacked):
                raise ValueError(f"basis row {i} is dependent on earlier rows")
            taken = stacked
        self.field = field
        self.n = n
        self.basis = basis
        self.kind = _kind_of_basis(basis)
        self._flat = flat

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_flat(self):
        """Basis forms flattened row-major to a (dim, n^2) array."""
        return self._flat

    def canonical_rows(self):
        """RREF of the flattened basis: the canonical representation of M."""
        return linalg.rref(self.field, self._flat)[0] if self.dim else self._flat

    def key(self):
        return tuple(tuple(int(v) for v in row) for row in self.canonical_rows())

    def canonical(self) -> "FormSubspace":
        rows = self.canonical_rows()
        return FormSubspace(
            self.field,
            self.n,
            [GramForm(self.field, r.reshape(self.n, self.n)) for r in rows],
        )

    def form_from_coefficients(self, coeffs) -> GramForm:
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients")
        fld = self.field
        acc = np.zeros(self.n * self.n, dtype=np.int64)
        for c, row in zip(coeffs, self._flat):
            if c:
                acc = fld.add_arr(acc, fld.mul_arr(int(c), row))
        return GramForm(fld, acc.reshape(self.n, self.n))

    def contains_form(self, f: GramForm) -> bool:
        rows, piv = linalg.rref(self.field, self._flat) if self.dim else (self._flat, [])
        return linalg.in_row_span(self.field, rows, piv, f.flat())

    def __eq__(self, other):
        return (
            isinstance(other, FormSubspace)
            and self.field == other.field
            and self.n == other.n
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.field, self.n, self.key()))

    def __repr__(self):
        return (
            f"FormSubspace(GF({self.field.q}), n={self.n}, dim={self.dim}, "
            f"kind={self.kind})"
        )


def span(forms, field: Optional[Field] = None, n: Optional[int] = None) -> FormSubspace:
    """Subspace spanned by arbitrary forms, with a canonical reduced basis."""
    forms = list(forms)
    if forms:
        field = forms[0].field
        n = forms[0].n
        for f in forms[1:]:
            if f.field != field or f.n != n:
                raise ValueError("cannot span forms over mixed fields or dimensions")
    elif field is None or n is None:
        raise ValueError("spanning an empty set needs an explicit field and dimension")
    flat = np.stack([f.flat() for f in forms]) if forms else np.zeros((0, n * n), dtype=np.int64)
    rows = linalg.rref(field, flat)[0] if len(flat) else flat
    return FormSubspace(field, n, [GramForm(field, r.reshape(n, n)) for r in rows])


# ---------------------------------------------------------------------------
# Enumeration


def coefficient_block(M: FormSubspace, start: int, stop: int):
    """Coefficient vectors with enumeration indices in [start, stop)."""
    return linalg.code_vectors(M.field.q, M.dim, start, stop)


def flat_forms_for(M: FormSubspace, coeffs):
    """Flattened forms for a block of coefficient vectors: (B, n^2)."""
    fld = M.field
    coeffs = np.asarray(coeffs, dtype=np.int64)
    acc = np.zeros((coeffs.shape[0], M.n * M.n), dtype=np.int64)
    for j in range(M.dim):
        acc = fld.add_arr(acc, fld.mul_arr(coeffs[:, j : j + 1], M._flat[j][None, :]))
    return acc


def enumerate_nonzero(
    M: FormSubspace, budget: Optional[int] = None
) -> Iterator[tuple[tuple[int, ...], GramForm]]:
    """Yield every (coefficients, form) pair for the q^d - 1 nonzero elements.

    Order is lexicographic in the coefficient codes and identical from
    run to run.
    """
    q, d = M.field.q, M.dim
    charge(q**d, M.n * M.n, budget, "enumerate_nonzero")
    for start in range(1, q**d, _BLOCK):
        stop = min(start + _BLOCK, q**d)
        coeffs = coefficient_block(M, start, stop)
        flats = flat_forms_for(M, coeffs)
        for row_c, row_f in zip(coeffs, flats):
            yield tuple(int(c) for c in row_c), GramForm(M.field, row_f.reshape(M.n, M.n))


@dataclass(frozen=True)
class RankSpectrum:
    """Distinct positive ranks over M^x, ascending, with per-rank counts."""

    ranks: tuple[int, ...]
    counts: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        """Largest rank; 0 for the zero subspace."""
        return self.ranks[-1] if self.ranks else 0

    @property
    def r(self) -> int:
        return len(self.ranks)

    @property
    def is_constant_rank(self) -> bool:
        return self.r == 1

    def count(self, rnk: int) -> int:
        return dict(self.counts).get(rnk, 0)


def rank_spectrum(M: FormSubspace, budget: Optional[int] = None) -> RankSpectrum:
    """Exact rank spectrum of M by full enumeration (batched elimination)."""
    q, d, n = M.field.q, M.dim, M.n
    if d == 0:
        return RankSpectrum((), ())
    charge(q**d, n * n, budget, "rank_spectrum")
    counts = np.zeros(n + 1, dtype=np.int64)
    for start in range(1, q**d, _BLOCK):
        stop = min(start + _BLOCK, q**d)
        flats = flat_forms_for(M, coefficient_block(M, start, stop))
        ranks = linalg.batch_rank(M.field, flats.reshape(-1, n, n))
        counts += np.bincount(ranks, minlength=n + 1)
    present = [r for r in range(1, n + 1) if counts[r]]
    return RankSpectrum(tuple(present), tuple((r, int(counts[r])) for r in present))


# ---------------------------------------------------------------------------
# Kernels M_u, the sets V(M), I(M), A_u, and radical spreads


def _kernel_matrix(M: FormSubspace, u, side: str):
    """n x d matrix whose right null space is the coefficient space of M_u."""
    fld = M.field
    u = np.asarray(u, dtype=np.int64)
    cols = []
    for f in M.basis:
        if side == "left":
            cols.append(fld.matmul_arr(u[None, :], f.entries)[0])
        elif side == "right":
            cols.append(fld.matmul_arr(f.entries, u[:, None])[:, 0])
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not cols:
        return np.zeros((M.n, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def kernel_at(M: FormSubspace, u, side: str = "left") -> FormSubspace:
    """M_u: the forms of M whose chosen radical contains u.

    Solved as a d-unknown linear system over the basis coefficients;
    no enumeration is involved, which keeps this usable as the inner
    loop of the counting identity.
    """
    coeff_rows = linalg.right_null_space(M.field, _kernel_matrix(M, u, side))
    return FormSubspace(
        M.field, M.n, [M.form_from_coefficients(c) for c in coeff_rows]
    )


def kernel_dims_all(M: FormSubspace, side: str, budget: Optional[int] = None):
    """dim M_u for every u in V, ordered by vector index: a (q^n,) array."""
    fld, n, d = M.field, M.n, M.dim
    charge(fld.q**n, d * n, budget, "kernel_dims_all")
    out = np.empty(fld.q**n, dtype=np.int64)
    if d == 0:
        out[:] = 0
        return out
    stack = np.stack([f.entries for f in M.basis])  # (d, n, n)
    total = fld.q**n
    for start in range(0, total, _BLOCK):
        stop = min(start + _BLOCK, total)
        vecs = linalg.code_vectors(fld.q, n, start, stop)
        if side == "left":
            mats = fld.matmul_arr(vecs[:, None, None, :], stack[None, :, :, :])[:, :, 0, :]
        else:
            mats = fld.matmul_arr(stack[None, :, :, :], vecs[:, None, :, None])[:, :, :, 0]
        out[start:stop] = d - linalg.batch_rank(fld, mats)
    return out


@dataclass(frozen=True)
class VSetReport:
    """Point set {v : M_v != 0} and whether it happens to be a subspace."""

    subspace_flag: bool
    points: tuple[tuple[int, ...], ...]
    subspace: Optional[Subspace]


def v_set(M: FormSubspace, side: str, budget: Optional[int] = None) -> VSetReport:
    """V(M) on the chosen side, reported as found.

    The flag states the truth for this input; closure under addition is
    a theorem only under hypotheses, so it is never assumed.
    """
    dims = kernel_dims_all(M, side, budget)
    vecs = linalg.code_vectors(M.field.q, M.n)
    pts = vecs[dims > 0]
    if len(pts) == 0:
        return VSetReport(True, (), Subspace.zero(M.field, M.n))
    spanned = Subspace.from_rows(M.field, M.n, pts)
    flag = len(pts) == M.field.q**spanned.dim
    return VSetReport(
        flag,
        tuple(tuple(int(v) for v in p) for p in pts),
        spanned if flag else None,
    )


def annihilator_Au(M: FormSubspace, u) -> Subspace:
    """A_u = {w : f(u, w) = 0 for all f in M}."""
    fld = M.field
    u = np.asarray(u, dtype=np.int64)
    if M.dim == 0:
        return Subspace.full(fld, M.n)
    rows = np.stack([fld.matmul_arr(u[None, :], f.entries)[0] for f in M.basis])
    return Subspace.from_rows(fld, M.n, linalg.right_null_space(fld, rows))


def totally_isotropic(M: FormSubspace, U: Subspace) -> bool:
    """True iff every form of M vanishes on U x U (basis check suffices)."""
    if U.dim == 0:
        return True
    fld = M.field
    for f in M.basis:
        vals = fld.matmul_arr(fld.matmul_arr(U.rows, f.entries), U.rows.T)
        if vals.any():
            return False
    return True


@dataclass(frozen=True)
class IsotropicSet:
    """I(M)^x and, when the partition hypotheses hold, its A_u classes."""

    vectors: tuple[tuple[int, ...], ...]
    partition: Optional[tuple[tuple[Subspace, int], ...]]


def isotropic_set(M: FormSubspace, budget: Optional[int] = None) -> IsotropicSet:
    """All nonzero w with f(w, w) = 0 for every f in M.

    When M is constant rank with dim M = n and q >= m + 1, the vectors
    are additionally grouped into their A_u classes with dimensions.
    """
    fld = M.field
    if fld.p == 2:
        raise ValueError("isotropic_set requires odd characteristic")
    if M.kind == KIND_GENERAL:
        raise ValueError("isotropic_set requires a symmetric (or alternating) subspace")
    q, n = fld.q, M.n
    charge(q**n, M.dim * n, budget, "isotropic_set")
    vecs = linalg.code_vectors(q, n)
    mask = np.ones(len(vecs), dtype=bool)
    for f in M.basis:
        tv = fld.matmul_arr(vecs, f.entries)
        quad = fld.sum_arr(fld.mul_arr(tv, vecs), axis=1)
        mask &= quad == 0
    mask[0] = False
    iso = vecs[mask]
    vectors = tuple(tuple(int(v) for v in p) for p in iso)

    partition = None
    if M.dim == n and M.dim > 0:
        spec = rank_spectrum(M, budget)
        if spec.is_constant_rank and q >= spec.m + 1:
            groups: dict[tuple, tuple[Subspace, int]] = {}
            for u in iso:
                a_u = annihilator_Au(M, u)
                groups.setdefault(a_u.key(), (a_u, a_u.dim))
            partition = tuple(groups[k] for k in sorted(groups))
    return IsotropicSet(vectors, partition)


@dataclass(frozen=True)
class SpreadReport:
    """The distinct radicals of M^x and their covering/intersection status."""

    radicals: tuple[Subspace, ...]
    t: int
    covers: bool
    pairwise_trivial: bool


def radical_spread(M: FormSubspace, budget: Optional[int] = None) -> SpreadReport:
    """Distinct radicals over M^x for an alternating constant rank subspace."""
    from .formcore import right_radical

    if M.kind != KIND_ALTERNATING:
        raise ValueError("radical_spread requires an alternating subspace")
    spec = rank_spectrum(M, budget)
    if not spec.is_constant_rank:
        raise ValueError(f"radical_spread requires constant rank, spectrum is {spec.ranks}")
    seen: dict[tuple, Subspace] = {}
    for _, f in enumerate_nonzero(M, budget):
        rad = right_radical(f)
        seen.setdefault(rad.key(), rad)
    radicals = tuple(seen[k] for k in sorted(seen))
    union: set[tuple[int, ...]] = set()
    card = 0
    for rad in radicals:
        pts = rad.points()
        card += len(pts) - 1
        union.update(tuple(int(v) for v in p) for p in pts[1:] if p.any())
    # disjointness of the nonzero point sets is exactly additivity of sizes
    pairwise_trivial = card == len(union)
    covers = len(union) == M.field.q**M.n - 1
    return SpreadReport(radicals, len(radicals), covers, pairwise_trivial)


# ---------------------------------------------------------------------------
# Ambient kind spaces and seeded sampling


def kind_space_dim(n: int, kind: str) -> int:
    if kind == KIND_GENERAL:
        return n * n
    if kind == KIND_SYMMETRIC:
        return n * (n + 1) // 2
    if kind == KIND_ALTERNATING:
        return n * (n - 1) // 2
    raise ValueError(f"unknown kind {kind!r}")


def kind_basis(field: Field, n: int, kind: str) -> list[GramForm]:
    """The standard basis of the ambient space of the given kind."""
    out = []
    if kind == KIND_GENERAL:
        for i in range(n):
            for j in range(n):
                m = np.zeros((n, n), dtype=np.int64)
                m[i, j] = 1
                out.append(GramForm(field, m))
    elif kind == KIND_SYMMETRIC:
        for i in range(n):
            for j in range(i, n):
                m = np.zeros((n, n), dtype=np.int64)
                m[i, j] = 1
                m[j, i] = 1
                if i == j:
                    m[i, i] = 1
                out.append(GramForm(field, m))
    elif kind == KIND_ALTERNATING:
        for i in range(n):
            for j in range(i + 1, n):
                m = np.zeros((n, n), dtype=np.int64)
                m[i, j] = 1
                m[j, i] = field.neg(1)
                out.append(GramForm(field, m))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def full_kind_space(field: Field, n: int, kind: str) -> FormSubspace:
    """Alt(V), Symm(V) or Bil(V) itself."""
    return FormSubspace(field, n, kind_basis(field, n, kind))


def random_subspace(field: Field, n: int, d: int, kind: str, seed: int) -> FormSubspace:
    """Uniform d-dimensional subspace of the chosen kind space.

    Deterministic for a fixed seed: d independent coefficient vectors
    are drawn by rejection, and every d-subspace is hit by the same
    number of independent frames, so the span is uniform.
    """
    ambient = kind_basis(field, n, kind)
    dim_kind = len(ambient)
    if d > dim_kind:
        raise ValueError(f"d={d} exceeds dim of the {kind} space ({dim_kind})")
    rng = np.random.default_rng(seed)
    flat = np.stack([f.flat() for f in ambient]) if ambient else np.zeros((0, n * n), dtype=np.int64)
    while True:
        coeffs = rng.integers(0, field.q, size=(d, dim_kind), dtype=np.int64)
        if d == 0:
            break
        rows = np.zeros((d, n * n), dtype=np.int64)
        for j in range(dim_kind):
            rows = field.add_arr(rows, field.mul_arr(coeffs[:, j : j + 1], flat[j][None, :]))
        if linalg.rank(field, rows) == d:
            break
    basis = [GramForm(field, r.reshape(n, n)) for r in rows] if d else []
    return FormSubspace(field, n, basis)
