"""Ground-truth verification of the closed-form predictions.

Two independent computation paths over the same generative event tree:

  - exact enumeration: walk every joint-table cell, apply the cell's
    reconstruction probability, split the unreconstructed mass by the
    redistribution policy, and sum exact probability mass;
  - seeded Monte Carlo: draw the same tree per-sample with a counter-based
    generator, so results are bit-identical for a given (spec, n, seed)
    regardless of how samples are chunked or parallelized.

Neither path calls anything in :mod:`dualsim.theory`; matching those
formulas to 1e-12 is the package's core acceptance property.

Reconstruction probabilities per joint cell:
  dual   (1,1) -> 1, (0,0) -> delta, mixed cells -> 0
  triple (1,1,1) -> 1; cells with at most one correct hop -> delta;
         cells with exactly one wrong hop -> 0 (a single wrong hop after
         or before correct hops lands in a definitely-wrong cluster).
         ``blanket_delta=True`` switches the two-correct-hops cells to
         delta as well, to quantify how much that cruder rule differs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .outcome_model import (
    DualOutcomeParams,
    RedistributionPolicy,
    TripleOutcomeParams,
    build_dual_joint,
    build_triple_joint,
)

__all__ = [
    "GenerativeSpec",
    "OracleResult",
    "OutcomeCounts",
    "ErrataRecord",
    "enumerate_dual",
    "enumerate_triple",
    "monte_carlo",
    "errata_report",
    "errata_to_text",
]


@dataclass(frozen=True)
class GenerativeSpec:
    """A complete generative model: outcome params plus redistribution policy."""

    params: DualOutcomeParams | TripleOutcomeParams
    policy: RedistributionPolicy

    @property
    def kind(self) -> str:
        return "dual" if isinstance(self.params, DualOutcomeParams) else "triple"


@dataclass(frozen=True)
class OutcomeCounts:
    """Per-outcome tallies from a Monte Carlo run.

    ``case2_*`` splits the redistributed mass: corrected (counted correct),
    aligned (reconstructed but wrong), unreconstructed (wrong).
    """

    case11: int
    case12: int
    case2_corrected: int
    case2_aligned: int
    case2_unreconstructed: int

    @property
    def n_case2(self) -> int:
        return self.case2_corrected + self.case2_aligned + self.case2_unreconstructed


@dataclass(frozen=True)
class OracleResult:
    """Accuracy plus case masses from one oracle evaluation.

    ``stderr`` and ``n_samples`` are 0 for exact enumeration. Monte Carlo
    results additionally carry the integer outcome tallies.
    """

    accuracy: float
    case_masses: tuple[float, float, float]
    stderr: float = 0.0
    n_samples: int = 0
    counts: OutcomeCounts | None = None


def _dual_cells(params: DualOutcomeParams) -> list[tuple[tuple[int, int], float]]:
    t = build_dual_joint(params)
    return [((1, 1), t.p11), ((1, 0), t.p10), ((0, 1), t.p01), ((0, 0), t.p00)]


def _dual_recon_prob(cell: tuple[int, int], delta: float) -> float:
    if cell == (1, 1):
        return 1.0
    if cell == (0, 0):
        return delta
    return 0.0


def _triple_cells(
    params: TripleOutcomeParams,
) -> list[tuple[tuple[int, int, int], float]]:
    t = build_triple_joint(params)
    return [
        ((z12, z23, z31), t.cell(z12, z23, z31))
        for z12 in (1, 0)
        for z23 in (1, 0)
        for z31 in (1, 0)
    ]


def _triple_recon_prob(cell: tuple[int, int, int], delta: float, blanket: bool) -> float:
    ones = sum(cell)
    if ones == 3:
        return 1.0
    if ones <= 1:
        return delta
    return delta if blanket else 0.0


def enumerate_dual(spec: GenerativeSpec) -> OracleResult:
    """Exact event-tree summation of the dual accuracy.

    For each joint cell: reconstructed mass goes to case 1.1 (correct) if
    the first hop was correct, else to case 1.2 (incorrect but kept);
    unreconstructed mass is case 2, of which the policy's alpha share
    becomes correct and the rest stays incorrect.
    """
    if spec.kind != "dual":
        raise ValidationError("enumerate_dual requires a dual GenerativeSpec")
    params = spec.params
    assert isinstance(params, DualOutcomeParams)
    alpha = spec.policy.alpha
    acc = 0.0
    case11 = case12 = case2 = 0.0
    for (y12, _y21), mass in _dual_cells(params):
        r = _dual_recon_prob((y12, _y21), params.delta)
        reconstructed = mass * r
        unreconstructed = mass * (1.0 - r)
        if y12 == 1:
            case11 += reconstructed
        else:
            case12 += reconstructed
        case2 += unreconstructed
        acc += reconstructed * y12 + unreconstructed * alpha
    return OracleResult(accuracy=acc, case_masses=(case11, case12, case2))


def enumerate_triple(spec: GenerativeSpec, blanket_delta: bool = False) -> OracleResult:
    """Exact event-tree summation of the multi-step accuracy.

    Same walk as enumerate_dual over the eight cells of the 3-hop cycle,
    with the reconstruction probabilities documented at module level.
    """
    if spec.kind != "triple":
        raise ValidationError("enumerate_triple requires a triple GenerativeSpec")
    params = spec.params
    assert isinstance(params, TripleOutcomeParams)
    alpha = spec.policy.alpha
    acc = 0.0
    case11 = case12 = case2 = 0.0
    for cell, mass in _triple_cells(params):
        r = _triple_recon_prob(cell, params.delta, blanket_delta)
        reconstructed = mass * r
        unreconstructed = mass * (1.0 - r)
        if cell[0] == 1:
            case11 += reconstructed
        else:
            case12 += reconstructed
        case2 += unreconstructed
        acc += reconstructed * cell[0] + unreconstructed * alpha
    return OracleResult(accuracy=acc, case_masses=(case11, case12, case2))


# Counter-mix generator: sample i's randomness comes only from (seed, i),
# so chunking and worker count cannot change the stream.
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def counter_uniforms(seed: int, counters: np.ndarray) -> np.ndarray:
    """Map (seed, counter) pairs to f64 uniforms in [0, 1), vectorized.

    Implements the splitmix64 output function on state seed + (c+1)*golden;
    statistically solid for simulation purposes and trivially parallel.
    """
    c = counters.astype(np.uint64, copy=False)
    with np.errstate(over="ignore"):
        z = (np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (c + np.uint64(1)) * _GOLD)
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


_CHUNK = 1 << 19


def monte_carlo(spec: GenerativeSpec, n: int, seed: int) -> OracleResult:
    """Seeded i.i.d. sampling of the event tree; stochastic twin of the enumerators.

    Each sample consumes three uniforms (cell, reconstruction flag,
    redistribution outcome) derived from its own index, and results are
    reduced with integer counts, so identical (spec, n, seed) inputs
    yield bit-identical output under any chunking.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    params = spec.params
    if spec.kind == "dual":
        assert isinstance(params, DualOutcomeParams)
        cells = _dual_cells(params)
        recon = np.array([_dual_recon_prob(c, params.delta) for c, _ in cells])
        first_hop = np.array([c[0] for c, _ in cells])
    else:
        assert isinstance(params, TripleOutcomeParams)
        cells = _triple_cells(params)
        recon = np.array([_triple_recon_prob(c, params.delta, False) for c, _ in cells])
        first_hop = np.array([c[0] for c, _ in cells])
    cum = np.cumsum([m for _, m in cells])
    alpha, beta = spec.policy.alpha, spec.policy.beta

    n_correct = 0
    n11 = n12 = n2a = n2b = n2g = 0
    for start in range(0, n, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, n), dtype=np.uint64)
        u_cell = counter_uniforms(seed, idx * np.uint64(3))
        u_recon = counter_uniforms(seed, idx * np.uint64(3) + np.uint64(1))
        u_redis = counter_uniforms(seed, idx * np.uint64(3) + np.uint64(2))

        which = np.searchsorted(cum, u_cell, side="right")
        np.clip(which, 0, len(cells) - 1, out=which)
        reconstructed = u_recon < recon[which]
        hop1 = first_hop[which] == 1

        corrected = ~reconstructed & (u_redis < alpha)
        aligned = ~reconstructed & ~corrected & (u_redis < alpha + beta)

        n11 += int(np.count_nonzero(reconstructed & hop1))
        n12 += int(np.count_nonzero(reconstructed & ~hop1))
        n2a += int(np.count_nonzero(corrected))
        n2b += int(np.count_nonzero(aligned))
        n2g += int(np.count_nonzero(~reconstructed & ~corrected & ~aligned))
        n_correct += int(np.count_nonzero((reconstructed & hop1) | corrected))

    p_hat = n_correct / n
    counts = OutcomeCounts(n11, n12, n2a, n2b, n2g)
    return OracleResult(
        accuracy=p_hat,
        case_masses=(n11 / n, n12 / n, counts.n_case2 / n),
        stderr=math.sqrt(p_hat * (1.0 - p_hat) / n),
        n_samples=n,
        counts=counts,
    )


@dataclass(frozen=True)
class ErrataRecord:
    """One formula comparison: shortcut value vs moment-consistent value."""

    name: str
    shortcut: float
    consistent: float

    @property
    def abs_diff(self) -> float:
        return abs(self.shortcut - self.consistent)


def errata_report(params: TripleOutcomeParams) -> list[ErrataRecord]:
    """Compare shortcut triple-cycle formulas against the consistent cells.

    The shortcut forms drop or factor some dependence cross-terms (they
    are exact at lam1 = lam2 = 0):

        cell(1,0,0):  q12*(1-q23)*(1-q31) + lam2           (drops -2*lam1)
        case 1.1:     the cell(1,1,1)/cell(1,0,0) sum built on that cell
        case 1.2:     delta*(1-q12)*(1-q23*q31 - lam1 + lam2)

    The consistent side comes from build_triple_joint and the enumeration
    case masses, so any nonzero difference pins the shortcut as the
    inconsistent variant.
    """
    q1, q2, q3 = params.q12, params.q23, params.q31
    l1, l2, d = params.lam1, params.lam2, params.delta
    table = build_triple_joint(params)
    neutral = GenerativeSpec(params, RedistributionPolicy(1.0, 0.0, 0.0))
    case11, case12, _ = enumerate_triple(neutral).case_masses

    shortcut_100 = q1 * (1.0 - q2) * (1.0 - q3) + l2
    records = [
        ErrataRecord("cell(1,0,0)", shortcut_100, table.cell(1, 0, 0)),
        ErrataRecord(
            "cell(0,1,0)",
            (1.0 - q1) * q2 * (1.0 - q3) - 2.0 * l1 + l2,
            table.cell(0, 1, 0),
        ),
        ErrataRecord(
            "cell(0,0,1)",
            (1.0 - q1) * (1.0 - q2) * q3 - 2.0 * l1 + l2,
            table.cell(0, 0, 1),
        ),
        ErrataRecord(
            "cell(0,0,0)",
            (1.0 - q1) * (1.0 - q2) * (1.0 - q3) + 3.0 * l1 - l2,
            table.cell(0, 0, 0),
        ),
        ErrataRecord(
            "case11", table.cell(1, 1, 1) + d * shortcut_100, case11
        ),
        ErrataRecord(
            "case12", d * (1.0 - q1) * (1.0 - q2 * q3 - l1 + l2), case12
        ),
    ]
    return records


def errata_to_text(records: list[ErrataRecord]) -> str:
    """One line per formula: name, shortcut value, consistent value, |difference|."""
    lines = ["formula shortcut consistent abs_diff"]
    for r in records:
        lines.append(f"{r.name} {r.shortcut!r} {r.consistent!r} {r.abs_diff!r}")
    return "\n".join(lines) + "\n"
