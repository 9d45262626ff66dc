"""Decision procedures and witness constructors for the majorization orders.

Three relations on nonnegative vectors (shorter input zero-padded first):

* majorize:        f = Dg for a doubly stochastic D.  Finite test: sorted
                   partial-sum dominance plus equal totals.
* weak majorize:   f = Dg for a doubly substochastic D.  Finite test drops
                   the equal-totals condition.
* submajorize:     f = Dg for an increasable doubly substochastic D.  On
                   finite vectors this coincides with weak majorization,
                   because every finite doubly substochastic matrix is
                   increasable; the verdict additionally carries the
                   completion certificate of its witness.

Every accepted relation is certified constructively: a chain of at most
n-1 two-coordinate mixing steps (T-transforms) built by the classical
Hardy-Littlewood-Polya argument, row-scaled when totals differ.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import linprog

from .config import DEFAULT_CLASS_TOL
from .matrices import (
    IncreasabilityCertificate,
    StochMatrix,
    classify_matrix,
    vonneumann_complete,
)
from .vectors import NonNegVector, common_dim, decreasing_rearrangement, partial_sums


@dataclass(frozen=True, eq=False)
class RelationVerdict:
    """Outcome of a relation check.

    When the relation holds and a witness was requested, ``witness`` is a
    matrix of the class the relation demands, with ||witness @ g - f||_inf
    at float precision for exactly-held inputs.  Inputs that hold only
    marginally within the tolerance may leave a residual up to about twice
    it; no witness of the class can do better there, since the residual is
    bounded below by the distance of f from the exactly-related set.
    ``failed_index`` is the first 1-based sorted-partial-sum position that
    is violated when the relation fails (the last position doubles as the
    totals check for strict majorization).
    """

    holds: bool
    witness: Optional[StochMatrix] = None
    certificate: Optional[IncreasabilityCertificate] = None
    failed_index: Optional[int] = None
    message: str = ""


class TTransformStep(NamedTuple):
    """Mix 1-based coordinates i < j by t: identity except the 2x2 block
    [[1-t, t], [t, 1-t]] on rows/columns {i, j}."""

    i: int
    j: int
    t: float


@dataclass(frozen=True, eq=False)
class TTransformChain:
    """T-transform factorization of a majorization witness.

    The steps act on sorted coordinates; ``pre_perm`` sorts g non-increasingly
    and ``post_perm`` sorts f, both 1-based as in
    :class:`~submaj.vectors.Rearrangement`.  ``product`` is the full witness
    in original coordinates:

        product = P_f^T  (T_m ... T_1)  P_g

    where P_v is the permutation matrix with P_v[k, perm[k]] = 1.
    """

    steps: tuple[TTransformStep, ...]
    pre_perm: tuple[int, ...]
    post_perm: tuple[int, ...]
    product: StochMatrix

    def __post_init__(self) -> None:
        n = self.product.n
        if len(self.steps) > max(0, n - 1):
            raise ValueError("T-transform chains use at most n-1 steps")
        for s in self.steps:
            if not (1 <= s.i < s.j <= n):
                raise ValueError(f"step coordinates out of range: {s}")
            if not -1e-15 <= s.t <= 1 + 1e-15:
                raise ValueError(f"step coefficient outside [0, 1]: {s}")

    def to_json_dict(self) -> dict:
        return {
            "steps": [{"i": s.i, "j": s.j, "t": s.t} for s in self.steps],
            "pre_perm": list(self.pre_perm),
            "post_perm": list(self.post_perm),
            "product": self.product.to_json_dict(),
        }


def t_transform_matrix(n: int, step: TTransformStep) -> np.ndarray:
    """Dense matrix of a single T-transform step."""
    m = np.eye(n)
    i, j, t = step.i - 1, step.j - 1, step.t
    m[i, i] = 1 - t
    m[i, j] = t
    m[j, i] = t
    m[j, j] = 1 - t
    return m


def _perm_matrix(perm: tuple[int, ...]) -> np.ndarray:
    n = len(perm)
    p = np.zeros((n, n))
    for k, target in enumerate(perm):
        p[k, target - 1] = 1.0
    return p


def chain_product_from_parts(chain: TTransformChain) -> np.ndarray:
    """Rebuild the witness from steps and sort permutations (for audits)."""
    n = chain.product.n
    acc = np.eye(n)
    for step in chain.steps:
        acc = t_transform_matrix(n, step) @ acc
    return _perm_matrix(chain.post_perm).T @ acc @ _perm_matrix(chain.pre_perm)


def _dominance_failure(
    pf: np.ndarray, pg: np.ndarray, tol: float, require_equal_totals: bool
) -> Optional[int]:
    """First violated 1-based sorted-partial-sum position, or None."""
    bad = np.nonzero(pf > pg + tol)[0]
    if bad.size:
        return int(bad[0]) + 1
    if require_equal_totals and abs(pf[-1] - pg[-1]) > tol:
        return int(pf.size)
    return None


def check_majorize(
    f: NonNegVector,
    g: NonNegVector,
    tol: float = DEFAULT_CLASS_TOL,
    with_witness: bool = True,
) -> RelationVerdict:
    """Decide f majorized by g; certify with a doubly stochastic witness."""
    f2, g2 = common_dim(f, g)
    pf = partial_sums(decreasing_rearrangement(f2).sorted)
    pg = partial_sums(decreasing_rearrangement(g2).sorted)
    bad = _dominance_failure(pf, pg, tol, require_equal_totals=True)
    if bad is not None:
        if pf[bad - 1] > pg[bad - 1] + tol:
            message = (
                f"sorted partial sums fail at position {bad}: "
                f"{pf[bad - 1]:.12g} > {pg[bad - 1]:.12g}"
            )
        else:
            message = (
                f"totals differ at position {bad}: "
                f"{pf[bad - 1]:.12g} vs {pg[bad - 1]:.12g}"
            )
        return RelationVerdict(holds=False, failed_index=bad, message=message)
    witness = hlp_witness(f2, g2, tol).product if with_witness else None
    return RelationVerdict(holds=True, witness=witness, message="majorization holds")


def check_weak_majorize(
    f: NonNegVector,
    g: NonNegVector,
    tol: float = DEFAULT_CLASS_TOL,
    with_witness: bool = True,
) -> RelationVerdict:
    """Decide f weakly majorized by g; certify with a doubly substochastic witness."""
    f2, g2 = common_dim(f, g)
    pf = partial_sums(decreasing_rearrangement(f2).sorted)
    pg = partial_sums(decreasing_rearrangement(g2).sorted)
    bad = _dominance_failure(pf, pg, tol, require_equal_totals=False)
    if bad is not None:
        return RelationVerdict(
            holds=False,
            failed_index=bad,
            message=f"sorted partial sums fail at position {bad}: "
            f"{pf[bad - 1]:.12g} vs {pg[bad - 1]:.12g}",
        )
    witness = weak_witness(f2, g2, tol) if with_witness else None
    return RelationVerdict(holds=True, witness=witness, message="weak majorization holds")


def check_submajorize(
    f: NonNegVector,
    g: NonNegVector,
    tol: float = DEFAULT_CLASS_TOL,
    with_witness: bool = True,
) -> RelationVerdict:
    """Decide f submajorized by g on truncations (zero tails assumed).

    Coincides with the weak check on finite vectors; on acceptance the
    substochastic witness is completed to a doubly stochastic matrix, which
    is exactly its increasability certificate.
    """
    verdict = check_weak_majorize(f, g, tol, with_witness)
    if not verdict.holds or verdict.witness is None:
        return verdict
    cert = vonneumann_complete(verdict.witness, tol)
    return RelationVerdict(
        holds=True,
        witness=verdict.witness,
        certificate=cert,
        message="submajorization holds (finite collapse to the weak relation)",
    )


def hlp_witness(f: NonNegVector, g: NonNegVector, tol: float = DEFAULT_CLASS_TOL) -> TTransformChain:
    """Constructive majorization witness as a chain of at most n-1 T-transforms.

    Works on sorted copies.  While the running vector y differs from the
    target x = f-sorted, pick j as the last position with y[j] > x[j] and k
    as the first later position with y[k] < x[k]; mixing (j, k) by
    t = delta / (y[j] - y[k]) with delta = min(y[j]-x[j], x[k]-y[k]) moves y
    closer while pinning at least one more coordinate exactly.  The final
    product is un-sorted through both rearrangement permutations.
    """
    f2, g2 = common_dim(f, g)
    pre = check_majorize(f2, g2, tol, with_witness=False)
    if not pre.holds:
        raise ValueError(f"majorization precondition fails: {pre.message}")

    rf = decreasing_rearrangement(f2)
    rg = decreasing_rearrangement(g2)
    x = rf.sorted.values.copy()
    y = rg.sorted.values.copy()
    n = x.size
    scale = max(1.0, float(y.max(initial=0.0)))
    eps = 1e-12 * scale

    acc = np.eye(n)
    steps: list[TTransformStep] = []
    while True:
        d = y - x
        pos = np.nonzero(d > eps)[0]
        if pos.size == 0:
            break
        j = int(pos[-1])
        neg = np.nonzero(d[j + 1 :] < 0)[0]
        if neg.size == 0:
            if float(np.abs(d).max()) > 10 * max(tol, eps):
                raise RuntimeError("T-transform construction stalled; input not majorized")
            break
        k = j + 1 + int(neg[0])
        delta = min(d[j], -d[k])
        gap = y[j] - y[k]
        t = min(1.0, max(0.0, delta / gap)) if gap > 0 else 1.0
        if d[j] <= -d[k]:
            y[k] += delta
            y[j] = x[j]  # pin exactly
        else:
            y[j] -= delta
            y[k] = x[k]  # pin exactly
        row_j = acc[j].copy()
        row_k = acc[k].copy()
        acc[j] = (1 - t) * row_j + t * row_k
        acc[k] = t * row_j + (1 - t) * row_k
        steps.append(TTransformStep(j + 1, k + 1, float(t)))

    # Un-sort: product = P_f^T (T_m ... T_1) P_g, applied as permutations.
    pg0 = np.asarray(rg.perm) - 1
    pf0 = np.asarray(rf.perm) - 1
    mid = np.empty_like(acc)
    mid[:, pg0] = acc
    full = np.empty_like(acc)
    full[pf0, :] = mid
    return TTransformChain(
        steps=tuple(steps),
        pre_perm=rg.perm,
        post_perm=rf.perm,
        product=classify_matrix(full, tol),
    )


def intermediate_h(f: NonNegVector, g: NonNegVector, tol: float = DEFAULT_CLASS_TOL) -> NonNegVector:
    """Raise f entrywise to an h with f <= h and h majorized by g.

    Water-fills the total deficit onto f in descending-rearrangement order,
    capping each raise by the remaining sorted-partial-sum headroom of g, so
    dominance is preserved at every prefix and the result is deterministic.
    """
    f2, g2 = common_dim(f, g)
    pre = check_weak_majorize(f2, g2, tol, with_witness=False)
    if not pre.holds:
        raise ValueError(f"weak majorization precondition fails: {pre.message}")

    rf = decreasing_rearrangement(f2)
    x = rf.sorted.values.copy()
    n = x.size
    target = partial_sums(decreasing_rearrangement(g2).sorted)
    prefix = np.cumsum(x)
    deficit = max(0.0, float(target[-1] - prefix[-1]))
    for k in range(n):
        if deficit <= 0:
            break
        headroom = float(np.min(target[k:] - prefix[k:]))
        raise_k = min(deficit, max(0.0, headroom))
        if raise_k > 0:
            x[k] += raise_k
            prefix[k:] += raise_k
            deficit -= raise_k

    h = np.empty(n)
    h[np.asarray(rf.perm) - 1] = x
    return NonNegVector(np.maximum(h, f2.values))


def weak_witness(f: NonNegVector, g: NonNegVector, tol: float = DEFAULT_CLASS_TOL) -> StochMatrix:
    """Doubly substochastic witness for a weak majorization.

    Builds the intermediate h, takes the doubly stochastic witness for
    h majorized by g, and scales row i by f(i)/h(i) (rows with h(i) = 0
    already reproduce f(i) = 0 and keep scale 1).  The all-zero f gets the
    zero matrix directly.
    """
    f2, g2 = common_dim(f, g)
    pre = check_weak_majorize(f2, g2, tol, with_witness=False)
    if not pre.holds:
        raise ValueError(f"weak majorization precondition fails: {pre.message}")
    if not np.any(f2.values > 0):
        return classify_matrix(np.zeros((f2.dim, f2.dim)), tol)

    h = intermediate_h(f2, g2, tol)
    d1 = hlp_witness(h, g2, tol).product.data
    safe = np.where(h.values > 0, h.values, 1.0)
    scales = np.clip(np.where(h.values > 0, f2.values / safe, 1.0), 0.0, 1.0)
    return classify_matrix(d1 * scales[:, None], tol)


def _ranked_indices(values: np.ndarray) -> np.ndarray:
    """Indices sorted by (value descending, index ascending)."""
    return np.argsort(-values, kind="stable")


def strict_permutation(f: NonNegVector, g: NonNegVector, value_tol: float = 0.0) -> Optional[tuple[int, ...]]:
    """1-based permutation pi with g(pi(k)) = f(k), or None.

    Exists iff the full value multisets coincide (entrywise within
    ``value_tol``; exact by default).  Ties are matched by ascending index.
    """
    f2, g2 = common_dim(f, g)
    of = _ranked_indices(f2.values)
    og = _ranked_indices(g2.values)
    if np.any(np.abs(f2.values[of] - g2.values[og]) > value_tol):
        return None
    out = [0] * f2.dim
    for r in range(f2.dim):
        out[int(of[r])] = int(og[r]) + 1
    return tuple(out)


def partial_permutation(
    f: NonNegVector, g: NonNegVector, value_tol: float = 0.0
) -> Optional[dict[int, int]]:
    """Support bijection {f-index: g-index} (1-based), or None.

    Exists iff the multisets of strictly positive values coincide.
    """
    fpos = [i for i in range(f.dim) if f.values[i] > 0]
    gpos = [i for i in range(g.dim) if g.values[i] > 0]
    if len(fpos) != len(gpos):
        return None
    fpos.sort(key=lambda i: (-f.values[i], i))
    gpos.sort(key=lambda i: (-g.values[i], i))
    for a, b in zip(fpos, gpos):
        if abs(f.values[a] - g.values[b]) > value_tol:
            return None
    return {a + 1: b + 1 for a, b in zip(fpos, gpos)}


def permutation_between(f: NonNegVector, g: NonNegVector, mode: str = "strict"):
    """Dispatch to :func:`strict_permutation` or :func:`partial_permutation`."""
    if mode == "strict":
        return strict_permutation(f, g)
    if mode == "partial":
        return partial_permutation(f, g)
    raise ValueError(f'permutation mode must be "strict" or "partial", got {mode!r}')


_ORACLE_MAX_DIM = 6


def oracle_majorize_bruteforce(
    f: NonNegVector,
    g: NonNegVector,
    relation: str = "strong",
    tol: float = DEFAULT_CLASS_TOL,
) -> bool:
    """Independent small-dimension oracle via the permutation polytope.

    Enumerates the distinct permutations of g as explicit polytope vertices
    and minimizes, by linear programming, the sup-norm distance z from f to
    the polytope (strong), or the largest entrywise undershoot of f by a
    polytope point (weak).  The relation holds iff the optimum is at most
    ``tol``.  This computation path is fully separate from the
    sorted-partial-sum checks.  Dimensions above 6 are rejected.
    """
    if relation not in ("strong", "weak"):
        raise ValueError(f'relation must be "strong" or "weak", got {relation!r}')
    f2, g2 = common_dim(f, g)
    n = f2.dim
    if n > _ORACLE_MAX_DIM:
        raise ValueError(f"oracle limited to dim <= {_ORACLE_MAX_DIM}, got {n}")

    vertices = sorted(set(itertools.permutations(g2.values.tolist())))
    v = np.asarray(vertices, dtype=float).T  # n x m
    m = v.shape[1]
    fv = f2.values

    if relation == "strong" and abs(float(fv.sum() - g2.values.sum())) > n * tol:
        return False  # every polytope point has the total of g

    # Variables (lambda_1..lambda_m, z): minimize z subject to the residual
    # bounds; the program is always feasible and bounded below by zero.
    ones = np.ones((n, 1))
    if relation == "strong":
        a_ub = np.block([[v, -ones], [-v, -ones]])
        b_ub = np.concatenate([fv, -fv])
    else:
        a_ub = np.block([[-v, -ones]])
        b_ub = -fv

    res = linprog(
        c=np.concatenate([np.zeros(m), [1.0]]),
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=np.concatenate([np.ones(m), [0.0]]).reshape(1, -1),
        b_eq=np.ones(1),
        bounds=[(0, None)] * m + [(0, None)],
        method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"oracle linear program did not converge: status {res.status}")
    return float(res.fun) <= tol
