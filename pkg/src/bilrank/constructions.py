"""The explicit subspace families used as examples and optimality witnesses.

Each constructor returns a FormSubspace together with nothing hidden:
claims about dimension, spectrum or spread structure live in the
`build` dispatcher's declared-claims dict, which the file writer
persists and the verification suite re-derives from scratch.

The odd-dimensional full-rank alternating family is a candidate formula
only: it is brute-force verified (constant rank, spread census) at
construction time for every parameter pair it is asked for, and refused
outright if the check fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .formcore import GramForm
from .gf import Field, Tower, field_for_order, make_tower
from .spanspace import (
    KIND_ALTERNATING,
    FormSubspace,
    full_kind_space,
    radical_spread,
    rank_spectrum,
)


class ConstructionError(RuntimeError):
    """A constructor's self-verification failed; the result is rejected."""


@dataclass(frozen=True)
class ConstructionRequest:
    name: str
    params: dict = dc_field(default_factory=dict)
    seed: Optional[int] = None


def symmetric_trace(K: Field, m: int) -> FormSubspace:
    """The trace family f_z(x, y) = Tr(z * x * y) on L = GF(q^m) over K.

    L is identified with K^m through the power basis of the canonical
    top-field generator; the returned basis is {f_b} for b running over
    that same power basis.  Every nonzero member has full rank m.
    """
    if m < 2:
        raise ValueError("the trace family needs extension degree m >= 2")
    tower = make_tower(K, m)
    top = tower.top
    b = tower.power_basis()
    forms = []
    for z in b:
        entries = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                entries[i, j] = tower.trace(top.mul(z, top.mul(b[i], b[j])))
        forms.append(GramForm(K, entries))
    return FormSubspace(K, m, forms)


def embed_with_radical(N: FormSubspace, n: int) -> FormSubspace:
    """Extend forms on U (dim m) by zero to V (dim n), radical gaining W.

    W is the fixed complement spanned by the last n - m coordinates; it
    lands in the radical of every nonzero element, and spectra are
    untouched.
    """
    if n < N.n:
        raise ValueError(f"target dimension {n} is smaller than the source {N.n}")
    if n == N.n:
        return N
    forms = []
    for f in N.basis:
        entries = np.zeros((n, n), dtype=np.int64)
        entries[: N.n, : N.n] = f.entries
        forms.append(GramForm(N.field, entries))
    return FormSubspace(N.field, n, forms)


def block_symmetric(field: Field, n: int, r: int) -> FormSubspace:
    """All symmetric matrices [[0, A], [A^T, 0]] with A of size r x (n - r).

    Dimension r(n - r); the ranks are exactly {2s : 1 <= s <= r}.
    """
    if not 1 <= r <= n // 2:
        raise ValueError(f"need 1 <= r <= n/2, got r={r}, n={n}")
    forms = []
    for i in range(r):
        for j in range(n - r):
            entries = np.zeros((n, n), dtype=np.int64)
            entries[i, r + j] = 1
            entries[r + j, i] = 1
            forms.append(GramForm(field, entries))
    return FormSubspace(field, n, forms)


def alternating_pencil(field: Field, n: int) -> FormSubspace:
    """span of f_i(x, y) = x_1 y_i - x_i y_1 for i = 2..n: constant rank 2."""
    if n < 2:
        raise ValueError("the pencil needs n >= 2")
    forms = []
    for i in range(1, n):
        entries = np.zeros((n, n), dtype=np.int64)
        entries[0, i] = 1
        entries[i, 0] = field.neg(1)
        forms.append(GramForm(field, entries))
    return FormSubspace(field, n, forms)


def alternating_odd_full(k: int, field: Field, budget: Optional[int] = None) -> FormSubspace:
    """Candidate k-dimensional constant rank k-1 subspace of Alt on GF(q)^k.

    Realised on L = GF(q^k) as f_a(x, y) = Tr(a (x y^q - x^q y)).  The
    formula is never trusted: dimension, spectrum and the all-lines
    spread are verified by enumeration here, and a failure rejects the
    construction.
    """
    if k <= 1 or k % 2 == 0:
        raise ValueError(f"k must be odd and > 1, got {k}")
    q = field.q
    tower = make_tower(field, k)
    top = tower.top
    b = tower.power_basis()
    forms = []
    for a in b:
        entries = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                # x y^q - x^q y evaluated on the basis pair (b_i, b_j)
                v = top.sub(
                    top.mul(b[i], top.pow(b[j], q)),
                    top.mul(top.pow(b[i], q), b[j]),
                )
                entries[i, j] = tower.trace(top.mul(a, v))
        forms.append(GramForm(field, entries))
    try:
        M = FormSubspace(field, k, forms)
    except ValueError as exc:
        raise ConstructionError(f"odd alternating candidate (k={k}, q={q}): {exc}") from exc
    if M.kind != KIND_ALTERNATING:
        raise ConstructionError(
            f"odd alternating candidate (k={k}, q={q}) produced kind {M.kind}"
        )
    spec = rank_spectrum(M, budget)
    if spec.ranks != (k - 1,):
        raise ConstructionError(
            f"odd alternating candidate (k={k}, q={q}) has spectrum {spec.ranks}, "
            f"expected ({k - 1},)"
        )
    spread = radical_spread(M, budget)
    expected_t = (q**k - 1) // (q - 1)
    if not (spread.t == expected_t and spread.covers and spread.pairwise_trivial):
        raise ConstructionError(
            f"odd alternating candidate (k={k}, q={q}) fails the spread census: "
            f"t={spread.t} (expected {expected_t}), covers={spread.covers}, "
            f"pairwise_trivial={spread.pairwise_trivial}"
        )
    return M


def trace_compress(M: FormSubspace, tower: Tower) -> FormSubspace:
    """Push a subspace over L = GF(q^t) down to GF(q) via the trace map.

    V becomes a q-linear space of dimension n*t (slot i of V pairs with
    the t power-basis coordinates), each element's rank multiplies by t,
    and the compressed basis {Tr(lam_a * f)} is checked for independence.
    """
    if tower.t < 2:
        raise ValueError("trace compression needs a tower of degree >= 2")
    if M.field != tower.top:
        raise ValueError("subspace must live over the tower's top field")
    top = tower.top
    K = tower.base
    t = tower.t
    lam = tower.power_basis()
    n_k = M.n * t
    forms = []
    for f in M.basis:
        for a in range(t):
            entries = np.zeros((n_k, n_k), dtype=np.int64)
            for i in range(M.n):
                for bi in range(t):
                    for j in range(M.n):
                        for cj in range(t):
                            val = top.mul(lam[a], top.mul(lam[bi], top.mul(lam[cj], int(f.entries[i, j]))))
                            entries[i * t + bi, j * t + cj] = tower.trace(val)
            forms.append(GramForm(K, entries))
    return FormSubspace(K, n_k, forms)


def bilinear_column_family(L: Field, m: int, r: int) -> FormSubspace:
    """All m x m matrices over L whose last m - r columns vanish.

    Dimension rm over L; nonzero elements have rank 1..r.
    """
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got r={r}, m={m}")
    forms = []
    for i in range(m):
        for j in range(r):
            entries = np.zeros((m, m), dtype=np.int64)
            entries[i, j] = 1
            forms.append(GramForm(L, entries))
    return FormSubspace(L, m, forms)


# ---------------------------------------------------------------------------
# Catalogue dispatch


def _require(params: dict, *names: str) -> list[int]:
    out = []
    for name in names:
        if name not in params or params[name] is None:
            raise ValueError(f"construction parameter --{name} is required here")
        out.append(int(params[name]))
    return out


def build(request: ConstructionRequest, budget: Optional[int] = None) -> tuple[FormSubspace, dict]:
    """Materialise a named construction and the claims it is sold with.

    Returns (subspace, declared) where `declared` holds the
    theory-level expectations (dimension, kind, spectrum, spread size,
    maximality) for downstream re-verification.
    """
    name = request.name
    p = request.params
    declared: dict = {"construction": name, "params": {k: v for k, v in sorted(p.items()) if v is not None}}

    if name == "trace-symmetric":
        q, m = _require(p, "q", "ext")
        K = field_for_order(q)
        n = int(p.get("n") or m)
        M = embed_with_radical(symmetric_trace(K, m), n)
        declared.update(
            dim=m,
            kind=M.kind,
            spectrum=[m],
            maximal=bool(q >= m + 1 and m <= n),
        )
        return M, declared

    if name == "block-symmetric":
        q, n, r = _require(p, "q", "n", "r")
        M = block_symmetric(field_for_order(q), n, r)
        declared.update(dim=r * (n - r), kind=M.kind, spectrum=[2 * s for s in range(1, r + 1)])
        return M, declared

    if name == "alt-pencil":
        q, n = _require(p, "q", "n")
        M = alternating_pencil(field_for_order(q), n)
        declared.update(dim=n - 1, kind=M.kind, spectrum=[2])
        return M, declared

    if name == "alt-full":
        q, n = _require(p, "q", "n")
        M = full_kind_space(field_for_order(q), n, KIND_ALTERNATING)
        declared.update(
            dim=n * (n - 1) // 2,
            kind=M.kind,
            spectrum=[2 * s for s in range(1, n // 2 + 1)],
        )
        return M, declared

    if name == "alt-odd":
        q, k = _require(p, "q", "k")
        t = int(p.get("ext") or 1)
        base = field_for_order(q)
        M = alternating_odd_full(k, field_for_order(q**t), budget)
        if t >= 2:
            M = trace_compress(M, make_tower(base, t))
        declared.update(
            dim=k * t,
            kind=M.kind,
            spectrum=[(k - 1) * t],
            spread_t=(q ** (k * t) - 1) // (q**t - 1),
        )
        return M, declared

    if name == "column-family":
        q, m, r = _require(p, "q", "m", "r")
        s = int(p.get("ext") or 1)
        M = bilinear_column_family(field_for_order(q**s), m, r)
        if s >= 2:
            M = trace_compress(M, make_tower(field_for_order(q), s))
        declared.update(
            dim=r * m * s,
            kind=M.kind,
            spectrum=[u * s for u in range(1, r + 1)],
        )
        return M, declared

    raise ValueError(f"unknown construction {request.name!r}")


CATALOGUE = (
    "trace-symmetric",
    "block-symmetric",
    "alt-pencil",
    "alt-full",
    "alt-odd",
    "column-family",
)
