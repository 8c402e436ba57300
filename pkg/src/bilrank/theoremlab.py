"""Hypothesis-gated checkers for the quantitative theorems.

Every checker evaluates its theorem's hypotheses on the concrete input
and only asserts the conclusion when all of them hold; otherwise the
verdict is "not-applicable" and the conclusion's truth value is still
computed and recorded as informational, because the boundary cases are
exactly where tightness shows.  A "violated" verdict always carries a
witness that can be replayed through formcore, bit for bit.

Floor/ceiling boundaries are implemented exactly as each theorem states
them; constant rank is always re-derived from the spectrum, never read
off metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import linalg
from .formcore import GramForm, left_radical, rank, right_radical, witt_census
from .spanspace import (
    KIND_ALTERNATING,
    BudgetExceeded,
    FormSubspace,
    annihilator_Au,
    charge,
    coefficient_block,
    flat_forms_for,
    isotropic_set,
    kernel_at,
    kernel_dims_all,
    kind_basis,
    radical_spread,
    rank_spectrum,
)

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"
BUDGET_EXCEEDED = "budget-exceeded"

_BLOCK = 1 << 13


@dataclass(frozen=True)
class Hypothesis:
    name: str
    required: str
    actual: str
    satisfied: bool


@dataclass
class VerificationReport:
    theorem_id: str
    hypotheses: tuple[Hypothesis, ...]
    verdict: str
    witness: Optional[dict] = None
    details: dict = dc_field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return all(h.satisfied for h in self.hypotheses)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "hypotheses": [
                {
                    "name": h.name,
                    "required": h.required,
                    "actual": h.actual,
                    "satisfied": h.satisfied,
                }
                for h in self.hypotheses
            ],
            "verdict": self.verdict,
            "witness": self.witness,
            "details": self.details,
        }


def _hyp(name: str, required: str, actual, satisfied: bool) -> Hypothesis:
    return Hypothesis(name, required, str(actual), bool(satisfied))


def _finish(theorem_id, hyps, conclusion_ok, witness=None, details=None) -> VerificationReport:
    """Gate the verdict: assert the conclusion only under satisfied hypotheses."""
    details = dict(details or {})
    if all(h.satisfied for h in hyps):
        verdict = HOLDS if conclusion_ok else VIOLATED
        return VerificationReport(theorem_id, tuple(hyps), verdict, witness if not conclusion_ok else None, details)
    info = {"conclusion_holds": bool(conclusion_ok)}
    if witness is not None:
        info["witness"] = witness
    details["informational"] = info
    return VerificationReport(theorem_id, tuple(hyps), NOT_APPLICABLE, None, details)


def _budget_report(theorem_id, exc: BudgetExceeded) -> VerificationReport:
    return VerificationReport(theorem_id, (), BUDGET_EXCEEDED, None, {"budget_error": str(exc)})


# ---------------------------------------------------------------------------
# Shared enumeration helpers


def _scan_blocks(M: FormSubspace, budget, projective=False, what="scan"):
    """Yield (coeffs, flats, ranks) blocks over the nonzero elements of M.

    With projective=True only coefficient vectors whose leading nonzero
    entry is 1 are kept: one representative per scalar line, enough for
    anything that only depends on radicals or ranks.
    """
    q, d, n = M.field.q, M.dim, M.n
    charge(q**d, n * n, budget, what)
    for start in range(1, q**d, _BLOCK):
        stop = min(start + _BLOCK, q**d)
        coeffs = coefficient_block(M, start, stop)
        if projective:
            lead = coeffs[np.arange(len(coeffs)), np.argmax(coeffs != 0, axis=1)]
            coeffs = coeffs[lead == 1]
            if not len(coeffs):
                continue
        flats = flat_forms_for(M, coeffs)
        ranks = linalg.batch_rank(M.field, flats.reshape(-1, n, n))
        yield coeffs, flats, ranks


def _radical_census(M: FormSubspace, budget):
    """Distinct left/right radical keys over M^x, with example coefficients."""
    lefts: dict[tuple, tuple] = {}
    rights: dict[tuple, tuple] = {}
    for coeffs, flats, _ in _scan_blocks(M, budget, projective=True, what="radical census"):
        for crow, frow in zip(coeffs, flats):
            f = GramForm(M.field, frow.reshape(M.n, M.n))
            lefts.setdefault(left_radical(f).key(), tuple(int(c) for c in crow))
            rights.setdefault(right_radical(f).key(), tuple(int(c) for c in crow))
    return lefts, rights


# ---------------------------------------------------------------------------
# Orthogonality: radical pairs of maximal-rank elements annihilate all of M


def check_orthogonality(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    """g(u, w) = 0 for u, w in the radicals of any maximal-rank element.

    The full radical-pair scan factors exactly through radical bases:
    g restricted to rad_L f x rad_R f is the matrix U G W^T, and that
    being zero is equivalent to g vanishing on every point pair.
    """
    tid = "orthogonality"
    try:
        spec = rank_spectrum(M, budget)
        m = spec.m
        fld = M.field
        hyps = [_hyp("field size", f"q >= m+1 = {m + 1}", f"q = {fld.q}", fld.q >= m + 1)]
        seen_pairs = set()
        violation = None
        checked_elements = 0
        pair_points = 0
        if m:
            for coeffs, flats, ranks in _scan_blocks(M, budget, projective=True, what=tid):
                for crow, frow, rk in zip(coeffs, flats, ranks):
                    if rk != m:
                        continue
                    checked_elements += 1
                    f = GramForm(fld, frow.reshape(M.n, M.n))
                    radl, radr = left_radical(f), right_radical(f)
                    key = (radl.key(), radr.key())
                    if key in seen_pairs:
                        continue
                    seen_pairs.add(key)
                    pair_points += (fld.q**radl.dim) * (fld.q**radr.dim)
                    if radl.dim == 0 or radr.dim == 0:
                        continue
                    for gi, g in enumerate(M.basis):
                        vals = fld.matmul_arr(fld.matmul_arr(radl.rows, g.entries), radr.rows.T)
                        nz = np.argwhere(np.asarray(vals) != 0)
                        if len(nz):
                            i, j = (int(v) for v in nz[0])
                            violation = {
                                "kind": "orthogonality",
                                "f_coefficients": [int(c) for c in crow],
                                "u": [int(v) for v in radl.rows[i]],
                                "w": [int(v) for v in radr.rows[j]],
                                "g_index": gi,
                                "value": int(np.asarray(vals)[i, j]),
                            }
                            break
                    if violation:
                        break
                if violation:
                    break
        details = {
            "max_rank": m,
            "max_rank_lines_checked": checked_elements,
            "distinct_radical_pairs": len(seen_pairs),
            "radical_pair_points_covered": pair_points,
        }
        return _finish(tid, hyps, violation is None, violation, details)
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# The double-count identity (q^d - 1)(q^(n-m) - 1) = sum over u of (q^d(u) - 1)


def check_counting_identity(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    tid = "counting-identity"
    try:
        spec = rank_spectrum(M, budget)
        hyps = [
            _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", spec.is_constant_rank)
        ]
        q, d, n, m = M.field.q, M.dim, M.n, spec.m
        dims = kernel_dims_all(M, "left", budget)
        hist = np.bincount(dims[1:], minlength=d + 1) if q**n > 1 else np.zeros(d + 1, dtype=np.int64)
        rhs = sum(int(c) * (q**k - 1) for k, c in enumerate(hist))
        lhs = (q**d - 1) * (q ** (n - m) - 1)
        witness = None
        if lhs != rhs:
            witness = {
                "kind": "counting-identity",
                "lhs": lhs,
                "rhs": rhs,
                "kernel_dim_histogram": {str(k): int(c) for k, c in enumerate(hist) if c},
            }
        return _finish(tid, hyps, lhs == rhs, witness, {"lhs": lhs, "rhs": rhs})
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# Kernel dimension lower bounds and their alternating refinement


def check_kernel_bounds(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    """dim M_u >= dim M - n for all u; >= dim M - m when M_u holds a
    maximal-rank element and q >= m+1 (with the shared-radical equality
    case); >= dim M - (n-1) for alternating M."""
    tid = "kernel-bounds"
    try:
        spec = rank_spectrum(M, budget)
        q, d, n, m = M.field.q, M.dim, M.n, spec.m
        fld = M.field
        alternating = M.kind == KIND_ALTERNATING
        charge(q**n, max(d * n, 1), budget, tid)
        violation = None
        vecs = linalg.code_vectors(q, n)
        for idx in range(1, q**n):
            u = vecs[idx]
            lead = u[np.argmax(u != 0)]
            if lead != 1:
                continue  # M_{cu} = M_u, one representative per line is exhaustive
            for side in ("left", "right"):
                K = kernel_at(M, u, side)
                if K.dim < d - n:
                    violation = {"kind": "kernel-bound", "u": [int(v) for v in u], "side": side,
                                 "dim_kernel": K.dim, "bound": d - n, "lemma": "dim >= dim M - n"}
                    break
                if alternating and K.dim < d - (n - 1):
                    violation = {"kind": "kernel-bound", "u": [int(v) for v in u], "side": side,
                                 "dim_kernel": K.dim, "bound": d - (n - 1),
                                 "lemma": "alternating dim >= dim M - (n-1)"}
                    break
                if q >= m + 1 and K.dim > 0:
                    kspec = rank_spectrum(K, budget)
                    if m in kspec.ranks:
                        if K.dim < d - m:
                            violation = {"kind": "kernel-bound", "u": [int(v) for v in u], "side": side,
                                         "dim_kernel": K.dim, "bound": d - m,
                                         "lemma": "dim >= dim M - m"}
                            break
                        if K.dim == d - m:
                            other = right_radical if side == "left" else left_radical
                            rads = {
                                other(f).key()
                                for _, f in _named_elements(K, budget)
                                if rank(f) == m
                            }
                            if len(rads) > 1:
                                violation = {"kind": "kernel-bound", "u": [int(v) for v in u],
                                             "side": side, "dim_kernel": K.dim,
                                             "lemma": "equality case: shared radical",
                                             "distinct_radicals": len(rads)}
                                break
            if violation:
                break
        return _finish(tid, [], violation is None, violation, {"max_rank": m})
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


def _named_elements(M: FormSubspace, budget):
    for coeffs, flats, _ in _scan_blocks(M, budget, projective=True, what="elements"):
        for crow, frow in zip(coeffs, flats):
            yield tuple(int(c) for c in crow), GramForm(M.field, frow.reshape(M.n, M.n))


# ---------------------------------------------------------------------------
# The family of dimension bounds


def _common_radical_state(M, spec, budget):
    """(feasible, all_equal) for the radicals over M^x (alternating input)."""
    try:
        lefts, _ = _radical_census(M, budget)
        return True, len(lefts) <= 1
    except BudgetExceeded:
        return False, False


def check_dimension_bounds(M: FormSubspace, budget: Optional[int] = None) -> list[VerificationReport]:
    """One gated report per dimension bound, informational when gated out."""
    try:
        spec = rank_spectrum(M, budget)
    except BudgetExceeded as exc:
        return [_budget_report("dimension-bounds", exc)]
    q, n, d = M.field.q, M.n, M.dim
    m, r = spec.m, spec.r
    p = M.field.p
    symmetric = all((f.entries == f.entries.T).all() for f in M.basis)
    alternating = M.kind == KIND_ALTERNATING
    constant = spec.is_constant_rank
    out = []

    def bound(tid, hyps, limit, strict=False):
        ok = d < limit if strict else d <= limit
        wit = None
        if not ok:
            wit = {"kind": "dimension-bound", "dim": d, "limit": limit, "strict": strict,
                   "spectrum": list(spec.ranks)}
        out.append(_finish(tid, hyps, ok, wit, {"dim": d, "limit": limit, "spectrum": list(spec.ranks)}))

    nonzero = _hyp("nonzero subspace", "dim M >= 1", f"dim M = {d}", d >= 1)
    h_const = _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", constant)
    h_qm = _hyp("field size", f"q >= m+1 = {m + 1}", f"q = {q}", q >= m + 1)
    h_alt = _hyp("alternating", "M <= Alt(V)", M.kind, alternating)
    h_sym = _hyp("symmetric", "M <= Symm(V)", M.kind, symmetric)

    bound("bound-constant-rank-n", [nonzero, h_const, h_qm], n)
    bound(
        "bound-symmetric-rn",
        [nonzero, h_sym,
         _hyp("characteristic", "char K != 2", f"p = {p}", p != 2),
         _hyp("field size", f"q >= n = {n}", f"q = {q}", q >= n)],
        r * n - r * (r - 1) // 2,
    )
    bound("bound-alternating-max", [nonzero, h_alt, h_const, h_qm], max(n - 1, 2 * m - 1))
    bound(
        "bound-alternating-rn",
        [nonzero, h_alt, _hyp("rank range", f"m <= floor(n/2) = {n // 2}", f"m = {m}", m <= n // 2), h_qm],
        r * n - r * (r + 1) // 2,
    )
    bound(
        "bound-symmetric-two-thirds",
        [nonzero, h_sym, h_const,
         _hyp("odd characteristic", "q odd", f"q = {q}", q % 2 == 1),
         h_qm,
         _hyp("rank range", "m <= 2n/3", f"m = {m}, n = {n}", 3 * m <= 2 * n)],
        n,
        strict=True,
    )
    bound(
        "bound-alternating-n-minus-2",
        [nonzero, h_alt, h_const,
         _hyp("rank range", f"4 <= m <= floor(n/2) = {n // 2}", f"m = {m}", 4 <= m <= n // 2),
         h_qm],
        n - 2,
    )
    bound("bound-bilinear-max", [nonzero, h_const, h_qm], max(n, 2 * m - 1))
    bound(
        "bound-bilinear-rn",
        [nonzero, _hyp("rank range", f"m <= ceil(n/2) = {(n + 1) // 2}", f"m = {m}", m <= (n + 1) // 2), h_qm],
        r * n,
    )
    bound(
        "bound-two-ranks-2n",
        [nonzero,
         _hyp("even dimension", "n even", f"n = {n}", n % 2 == 0),
         _hyp("spectrum", "rank(M) = {n/2, n}", f"rank(M) = {list(spec.ranks)}",
              n % 2 == 0 and spec.ranks == (n // 2, n)),
         _hyp("field size", f"q >= n/2+1 = {n // 2 + 1}", f"q = {q}", q >= n // 2 + 1)],
        2 * n,
    )

    # the common-radical lemma needs a radical census, so gate on feasibility
    if alternating and constant and d >= 1:
        feasible, all_equal = _common_radical_state(M, spec, budget)
        if feasible:
            hyps = [nonzero, h_alt, h_const,
                    _hyp("common radical", "all elements of M^x share one radical",
                         f"distinct radicals > 1: {not all_equal}", all_equal)]
            ok = d <= m // 2
            wit = None if ok else {"kind": "dimension-bound", "dim": d, "limit": m // 2,
                                   "strict": False, "spectrum": list(spec.ranks)}
            out.append(_finish("bound-common-radical-half-m", hyps, ok, wit,
                               {"dim": d, "limit": m // 2}))
        else:
            out.append(VerificationReport(
                "bound-common-radical-half-m", (), BUDGET_EXCEEDED, None,
                {"budget_error": "radical census over budget"}))
    else:
        hyps = [nonzero, h_alt, h_const,
                _hyp("common radical", "all elements of M^x share one radical",
                     "not evaluated (kind or rank hypothesis already fails)", False)]
        out.append(_finish("bound-common-radical-half-m", hyps, True, None, {}))
    return out


# ---------------------------------------------------------------------------
# Radical spreads of full-dimensional constant rank alternating subspaces


def check_spread(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    tid = "spread"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        hyps = [
            _hyp("alternating", "M <= Alt(V)", M.kind, M.kind == KIND_ALTERNATING),
            _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", spec.is_constant_rank),
            _hyp("full dimension", f"dim M = n = {n}", f"dim M = {d}", d == n),
            _hyp("field size", f"q >= m+1 = {m + 1}", f"q = {q}", q >= m + 1),
        ]
        if M.kind != KIND_ALTERNATING or not spec.is_constant_rank:
            return _finish(tid, hyps, False, None,
                           {"note": "radical census undefined without alternating constant rank"})
        report = radical_spread(M, budget)
        expected_t = (q**n - 1) // (q ** (n - m) - 1) if m < n else 1
        divides = True if m == n else n % (n - m) == 0
        # the induced partition of M itself: M_i = {g : R_i <= rad g}
        from .spanspace import _kernel_matrix

        induced_sizes = []
        union: set[tuple] = set()
        card = 0
        for rad in report.radicals:
            mats = [_kernel_matrix(M, u, "left") for u in rad.rows]
            stacked = np.vstack(mats) if mats else np.zeros((0, d), dtype=np.int64)
            coeff_rows = linalg.right_null_space(M.field, stacked)
            dim_i = len(coeff_rows)
            induced_sizes.append(dim_i)
            pts = (
                M.field.matmul_arr(linalg.code_vectors(q, dim_i), coeff_rows)
                if dim_i
                else np.zeros((1, d), dtype=np.int64)
            )
            card += len(pts) - 1
            union.update(tuple(int(v) for v in row) for row in pts[1:])
        induced_trivial = card == len(union)
        induced_covers = len(union) == q**d - 1
        ok = (
            report.covers
            and report.pairwise_trivial
            and report.t == expected_t
            and divides
            and induced_trivial
            and induced_covers
        )
        witness = None
        if not ok:
            witness = {
                "kind": "spread",
                "t": report.t,
                "expected_t": expected_t,
                "covers": report.covers,
                "pairwise_trivial": report.pairwise_trivial,
                "induced_covers": induced_covers,
                "induced_trivial": induced_trivial,
            }
        details = {
            "t": report.t,
            "expected_t": expected_t,
            "radical_dims": sorted({rad.dim for rad in report.radicals}),
            "induced_dims": sorted(set(induced_sizes)),
        }
        return _finish(tid, hyps, ok, witness, details)
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# Equality of left or of right radicals at maximal dimension


def check_radical_equality(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    tid = "radical-equality"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        hyps = [
            _hyp("full dimension", f"dim M = n = {n}", f"dim M = {d}", d == n),
            _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", spec.is_constant_rank),
            _hyp("field size", f"q >= m+1 = {m + 1}", f"q = {q}", q >= m + 1),
            _hyp("dimension gap", f"n >= 2m+1 = {2 * m + 1}", f"n = {n}", n >= 2 * m + 1),
        ]
        if d == 0:
            return _finish(tid, hyps, True, None, {"note": "zero subspace"})
        lefts, rights = _radical_census(M, budget)
        ok = len(lefts) == 1 or len(rights) == 1
        witness = None
        if not ok:
            (lk1, lc1), (lk2, lc2) = list(lefts.items())[:2]
            (rk1, rc1), (rk2, rc2) = list(rights.items())[:2]
            witness = {
                "kind": "radical-equality",
                "left_pair": [list(lc1), list(lc2)],
                "right_pair": [list(rc1), list(rc2)],
            }
        return _finish(tid, hyps, ok, witness,
                       {"distinct_left_radicals": len(lefts), "distinct_right_radicals": len(rights)})
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# The isotropic partition and its counting identities


def check_isotropic_partition(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    tid = "isotropic-partition"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        symmetric = all((f.entries == f.entries.T).all() for f in M.basis)
        hyps = [
            _hyp("symmetric", "M <= Symm(V)", M.kind, symmetric),
            _hyp("odd characteristic", "q odd", f"q = {q}", q % 2 == 1),
            _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", spec.is_constant_rank),
            _hyp("full dimension", f"dim M = n = {n}", f"dim M = {d}", d == n),
            _hyp("field size", f"q >= m+1 = {m + 1}", f"q = {q}", q >= m + 1),
        ]
        if not symmetric or q % 2 == 0:
            return _finish(tid, hyps, False, None, {"note": "isotropic set undefined here"})
        iso = isotropic_set(M, budget)
        iso_points = set(iso.vectors)
        classes: dict[tuple, tuple] = {}
        dims_of_M_u = []
        for u in iso.vectors:
            a_u = annihilator_Au(M, u)
            classes.setdefault(a_u.key(), (a_u, a_u.dim))
            dims_of_M_u.append((u, kernel_at(M, u, "left").dim, a_u.dim))
        class_list = [classes[k] for k in sorted(classes)]
        r_classes = len(class_list)
        union: set[tuple] = set()
        card = 0
        covered = True
        for sub, dim_i in class_list:
            pts = {tuple(int(v) for v in row) for row in sub.points()[1:]}
            card += len(pts)
            union |= pts
            covered = covered and pts <= iso_points
        partition_ok = covered and card == len(union) and union == iso_points
        lhs = sum((q**dim_i - 1) ** 2 for _, dim_i in class_list)
        rhs = (q**n - 1) * (q ** (n - m) - 1)
        sum_ok = lhs == rhs
        r_ok = r_classes != 1 and (m >= n or r_classes >= 2)
        dim_match = all(ku == au for _, ku, au in dims_of_M_u) if d == n else True
        ok = partition_ok and sum_ok and r_ok and dim_match
        witness = None
        if not ok:
            witness = {
                "kind": "isotropic-partition",
                "classes": r_classes,
                "squared_sum_lhs": lhs,
                "squared_sum_rhs": rhs,
                "partition_ok": partition_ok,
                "dim_A_u_equals_dim_M_u": dim_match,
            }
        details = {
            "isotropic_nonzero": len(iso.vectors),
            "classes": r_classes,
            "class_dims": sorted({dim_i for _, dim_i in class_list}),
            "squared_sum_lhs": lhs,
            "squared_sum_rhs": rhs,
        }
        return _finish(tid, hyps, ok, witness, details)
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


def check_witt_census_identity(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    """|I(M)^x| = (A - B) q^{-k} with A + B = q^n - 1 over the Witt census."""
    tid = "witt-census"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        symmetric = all((f.entries == f.entries.T).all() for f in M.basis)
        hyps = [
            _hyp("symmetric", "M <= Symm(V)", M.kind, symmetric),
            _hyp("odd characteristic", "q odd", f"q = {q}", q % 2 == 1),
            _hyp("constant even rank", "rank(M) = {2k}", f"rank(M) = {list(spec.ranks)}",
                 spec.is_constant_rank and m % 2 == 0),
            _hyp("full dimension", f"dim M = n = {n}", f"dim M = {d}", d == n),
        ]
        if not symmetric or q % 2 == 0 or not spec.is_constant_rank or m % 2:
            return _finish(tid, hyps, False, None, {"note": "census undefined here"})
        k = m // 2
        charge(q**d, n**3, budget, tid)
        a_count = b_count = 0
        for _, f in _all_elements(M, budget):
            w = witt_census(f).witt_index
            if w == k:
                a_count += 1
            elif w == k - 1:
                b_count += 1
        iso = isotropic_set(M, budget)
        total_ok = a_count + b_count == q**d - 1
        diff = a_count - b_count
        identity_ok = diff % (q**k) == 0 and diff // (q**k) == len(iso.vectors)
        ok = total_ok and identity_ok
        witness = None
        if not ok:
            witness = {"kind": "witt-census", "A": a_count, "B": b_count,
                       "isotropic_nonzero": len(iso.vectors), "q^k": q**k}
        return _finish(tid, hyps, ok, witness,
                       {"A": a_count, "B": b_count, "isotropic_nonzero": len(iso.vectors)})
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


def _all_elements(M: FormSubspace, budget):
    for coeffs, flats, _ in _scan_blocks(M, budget, projective=False, what="elements"):
        for crow, frow in zip(coeffs, flats):
            yield tuple(int(c) for c in crow), GramForm(M.field, frow.reshape(M.n, M.n))


# ---------------------------------------------------------------------------
# Maximality of the embedded trace family


def check_maximality(
    M: FormSubspace,
    budget: Optional[int] = None,
    declared: Optional[dict] = None,
    seed: Optional[int] = None,
    trials: int = 1000,
) -> VerificationReport:
    """Is M maximal among constant rank m subspaces of its kind space?

    Exhaustive when the ambient kind space fits the budget, otherwise a
    seeded sample of candidate extensions.  A found extension is
    conclusive either way and becomes the witness; a clean exhaustive
    scan certifies maximality.
    """
    tid = "maximality"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        fld = M.field
        from .spanspace import DEFAULT_BUDGET

        claims = bool(declared and declared.get("maximal"))
        ambient = kind_basis(fld, n, M.kind)
        dk = len(ambient)
        exhaustive = (q**dk) * (q**d) * n * n <= (DEFAULT_BUDGET if budget is None else budget)
        hyps = [
            _hyp("constant rank", "|rank(M)| = 1", f"rank(M) = {list(spec.ranks)}", spec.is_constant_rank),
            _hyp("declared maximal", "fixture claims maximality", str(claims), claims),
            _hyp("scan mode", "ambient kind space within budget", "exhaustive" if exhaustive else "sampled",
                 exhaustive),
        ]
        if not spec.is_constant_rank:
            return _finish(tid, hyps, False, None, {"note": "only constant rank subspaces are extended"})
        if not exhaustive and seed is None:
            if claims:
                return VerificationReport(
                    tid, tuple(hyps), BUDGET_EXCEEDED, None,
                    {"budget_error": "fixture claims maximality but the ambient kind space "
                                     "is over budget and no sampling seed was given"})
            return VerificationReport(
                tid, tuple(hyps), NOT_APPLICABLE, None,
                {"mode": "skipped", "note": "ambient kind space over budget; nothing declared"})

        elements = np.vstack(
            [np.zeros((1, n * n), dtype=np.int64)]
            + [flats for _, flats, _ in _scan_blocks(M, budget, what=tid)]
        ) if d else np.zeros((1, n * n), dtype=np.int64)
        rows_m, piv_m = (linalg.rref(fld, M.basis_flat()) if d else
                         (np.zeros((0, n * n), dtype=np.int64), []))
        amb_flat = np.stack([f.flat() for f in ambient]) if ambient else np.zeros((0, n * n), dtype=np.int64)

        def extends(h_flat) -> bool:
            if linalg.in_row_span(fld, rows_m, piv_m, h_flat):
                return False
            sums = fld.add_arr(h_flat[None, :], elements)
            ranks = linalg.batch_rank(fld, sums.reshape(-1, n, n))
            return bool((ranks == m).all())

        extension = None
        tried = 0
        if exhaustive:
            total = q**dk
            for start in range(1, total, _BLOCK):
                stop = min(start + _BLOCK, total)
                combos = linalg.code_vectors(q, dk, start, stop)
                cand = np.zeros((len(combos), n * n), dtype=np.int64)
                for j in range(dk):
                    cand = fld.add_arr(cand, fld.mul_arr(combos[:, j : j + 1], amb_flat[j][None, :]))
                for h in cand:
                    tried += 1
                    if extends(h):
                        extension = h
                        break
                if extension is not None:
                    break
        else:
            rng = np.random.default_rng(seed)
            for _ in range(trials):
                combo = rng.integers(0, q, size=dk, dtype=np.int64)
                if not combo.any():
                    continue
                h = np.zeros(n * n, dtype=np.int64)
                for j in range(dk):
                    if combo[j]:
                        h = fld.add_arr(h, fld.mul_arr(int(combo[j]), amb_flat[j]))
                tried += 1
                if extends(h):
                    extension = h
                    break

        maximal = extension is None
        witness = None
        if extension is not None:
            witness = {
                "kind": "extension",
                "extension_rows": [[int(v) for v in row] for row in extension.reshape(n, n)],
                "rank": m,
            }
        details = {
            "mode": "exhaustive" if exhaustive else "sampled",
            "candidates_tried": tried,
            "maximal": maximal if exhaustive else (False if extension is not None else None),
        }
        return _finish(tid, hyps, maximal, witness, details)
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# The filtration of a subspace meeting the rn bound


def check_filtration(M: FormSubspace, budget: Optional[int] = None) -> VerificationReport:
    """Extract the chain M_s (dim sn, s smallest ranks) by the proof's recipe."""
    tid = "filtration"
    try:
        spec = rank_spectrum(M, budget)
        q, n, d, m = M.field.q, M.n, M.dim, spec.m
        r = spec.r
        hyps = [
            _hyp("dimension", f"dim M = rn = {r * n}", f"dim M = {d}", d == r * n),
            _hyp("rank range", f"m <= ceil(n/2) = {(n + 1) // 2}", f"m = {m}", m <= (n + 1) // 2),
            _hyp("field size", f"q >= m+1 = {m + 1}", f"q = {q}", q >= m + 1),
        ]
        chain = [(M, spec)]
        failed_at = None
        current, cur_spec = M, spec
        while cur_spec.r > 1 and failed_at is None:
            target_dim = (cur_spec.r - 1) * n
            found = None
            vecs = linalg.code_vectors(q, n)
            for idx in range(1, q**n):
                u = vecs[idx]
                if u[np.argmax(u != 0)] != 1:
                    continue
                for side in ("left", "right"):
                    K = kernel_at(current, u, side)
                    if K.dim != target_dim:
                        continue
                    kspec = rank_spectrum(K, budget)
                    if kspec.ranks == cur_spec.ranks[:-1]:
                        found = (K, kspec)
                        break
                if found:
                    break
            if found is None:
                failed_at = cur_spec.r
                break
            chain.append(found)
            current, cur_spec = found
        chain_ok = failed_at is None and all(
            sub.dim == s.r * n and s.ranks == spec.ranks[: s.r] for sub, s in chain
        )
        witness = None
        if not chain_ok:
            witness = {
                "kind": "filtration",
                "failed_at_r": failed_at,
                "chain_dims": [sub.dim for sub, _ in chain],
                "chain_spectra": [list(s.ranks) for _, s in chain],
            }
        details = {
            "chain_dims": [sub.dim for sub, _ in chain],
            "chain_spectra": [list(s.ranks) for _, s in chain],
        }
        return _finish(tid, hyps, chain_ok, witness, details)
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


# ---------------------------------------------------------------------------
# Declared-claims consistency (the injectable checker)


def check_declared(M: FormSubspace, declared: Optional[dict], budget: Optional[int] = None) -> VerificationReport:
    """Re-derive everything a fixture file claims about itself.

    True theorems cannot be violated by honest computation, so this is
    where corrupted fixtures fail: any mismatch between a declared
    dimension, kind or spectrum and the re-derived truth is a violation
    with a replayable witness.
    """
    tid = "declared-claims"
    try:
        has = bool(declared)
        hyps = [_hyp("declared claims", "fixture carries declared claims", str(has), has)]
        if not has:
            return _finish(tid, hyps, True, None, {"note": "nothing declared"})
        problems = []
        witness = None
        if "dim" in declared and declared["dim"] != M.dim:
            problems.append("dim")
            witness = witness or {"kind": "dim-mismatch", "declared_dim": declared["dim"], "actual_dim": M.dim}
        if "kind" in declared and declared["kind"] != M.kind:
            problems.append("kind")
            witness = witness or {"kind": "kind-mismatch", "declared_kind": declared["kind"], "actual_kind": M.kind}
        spec = None
        if "spectrum" in declared:
            spec = rank_spectrum(M, budget)
            want = tuple(sorted(declared["spectrum"]))
            if spec.ranks != want:
                problems.append("spectrum")
                if witness is None:
                    witness = _spectrum_witness(M, want, budget)
        if "spread_t" in declared and not problems:
            spec = spec or rank_spectrum(M, budget)
            if M.kind == KIND_ALTERNATING and spec.is_constant_rank:
                rep = radical_spread(M, budget)
                if rep.t != declared["spread_t"] or not (rep.covers and rep.pairwise_trivial):
                    problems.append("spread_t")
                    witness = witness or {
                        "kind": "spread-mismatch",
                        "declared_t": declared["spread_t"],
                        "actual_t": rep.t,
                        "covers": rep.covers,
                        "pairwise_trivial": rep.pairwise_trivial,
                    }
            else:
                problems.append("spread_t")
                witness = witness or {
                    "kind": "spread-mismatch",
                    "declared_t": declared["spread_t"],
                    "actual_t": None,
                    "note": "not constant-rank alternating, census undefined",
                }
        ok = not problems
        return _finish(tid, hyps, ok, witness, {"mismatches": problems})
    except BudgetExceeded as exc:
        return _budget_report(tid, exc)


def _spectrum_witness(M: FormSubspace, declared_ranks, budget) -> dict:
    """First element whose rank falls outside the declared spectrum."""
    allowed = set(declared_ranks)
    for coeffs, flats, ranks in _scan_blocks(M, budget, what="spectrum witness"):
        for crow, frow, rk in zip(coeffs, flats, ranks):
            if int(rk) not in allowed:
                return {
                    "kind": "spectrum-mismatch",
                    "coefficients": [int(c) for c in crow],
                    "rank": int(rk),
                    "declared": sorted(allowed),
                }
    # no stray rank: some declared rank is missing entirely
    spec = rank_spectrum(M, budget)
    return {
        "kind": "spectrum-mismatch",
        "coefficients": None,
        "rank": None,
        "declared": sorted(allowed),
        "actual": list(spec.ranks),
    }


# ---------------------------------------------------------------------------
# Witness replay


def replay_witness(M: FormSubspace, witness: dict) -> bool:
    """Re-run a violation witness through formcore; True iff it reproduces."""
    kind = witness.get("kind")
    if kind == "spectrum-mismatch":
        if witness.get("coefficients") is None:
            return rank_spectrum(M).ranks != tuple(witness["declared"])
        f = M.form_from_coefficients(witness["coefficients"])
        return rank(f) == witness["rank"] and witness["rank"] not in set(witness["declared"])
    if kind == "dim-mismatch":
        return M.dim == witness["actual_dim"] != witness["declared_dim"]
    if kind == "kind-mismatch":
        return M.kind == witness["actual_kind"] != witness["declared_kind"]
    if kind == "orthogonality":
        from .formcore import evaluate

        g = M.basis[witness["g_index"]]
        val = evaluate(g, witness["u"], witness["w"])
        return val == witness["value"] != 0
    if kind == "extension":
        h = GramForm(M.field, witness["extension_rows"])
        if M.contains_form(h):
            return False
        target = witness["rank"]
        for _, g in _all_elements(M, None):
            if rank(GramForm(M.field, M.field.add_arr(h.entries, g.entries))) != target:
                return False
        return rank(h) == target
    if kind == "radical-equality":
        (lc1, lc2) = witness["left_pair"]
        (rc1, rc2) = witness["right_pair"]
        lk = {left_radical(M.form_from_coefficients(c)).key() for c in (lc1, lc2)}
        rk = {right_radical(M.form_from_coefficients(c)).key() for c in (rc1, rc2)}
        return len(lk) == 2 and len(rk) == 2
    if kind == "spread-mismatch":
        if witness.get("actual_t") is None:
            return not rank_spectrum(M).is_constant_rank or M.kind != KIND_ALTERNATING
        return radical_spread(M).t == witness["actual_t"] != witness["declared_t"]
    if kind == "counting-identity":
        rep = check_counting_identity(M)
        return rep.details["lhs"] == witness["lhs"] and rep.details["rhs"] == witness["rhs"]
    raise ValueError(f"unknown witness kind {kind!r}")


# ---------------------------------------------------------------------------
# Suite dispatch


SUITE_NAMES = (
    "declared",
    "orthogonality",
    "counting",
    "kernel-bounds",
    "bounds",
    "spread",
    "radical-equality",
    "isotropic-partition",
    "witt-census",
    "filtration",
    "maximality",
)


def run_suite(
    M: FormSubspace,
    selection=None,
    budget: Optional[int] = None,
    declared: Optional[dict] = None,
    seed: Optional[int] = None,
) -> list[VerificationReport]:
    """Dispatch the selected checkers (all by default) and collect reports."""
    selected = tuple(selection) if selection is not None else SUITE_NAMES
    unknown = set(selected) - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suite selection: {sorted(unknown)}")
    out: list[VerificationReport] = []
    for name in SUITE_NAMES:
        if name not in selected:
            continue
        if name == "declared":
            out.append(check_declared(M, declared, budget))
        elif name == "orthogonality":
            out.append(check_orthogonality(M, budget))
        elif name == "counting":
            out.append(check_counting_identity(M, budget))
        elif name == "kernel-bounds":
            out.append(check_kernel_bounds(M, budget))
        elif name == "bounds":
            out.extend(check_dimension_bounds(M, budget))
        elif name == "spread":
            out.append(check_spread(M, budget))
        elif name == "radical-equality":
            out.append(check_radical_equality(M, budget))
        elif name == "isotropic-partition":
            out.append(check_isotropic_partition(M, budget))
        elif name == "witt-census":
            out.append(check_witt_census_identity(M, budget))
        elif name == "filtration":
            out.append(check_filtration(M, budget))
        elif name == "maximality":
            out.append(check_maximality(M, budget, declared, seed))
    return out
