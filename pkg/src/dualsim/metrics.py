"""Exact accuracy quantities and empirical redistribution estimators.

Correctness is exact cluster membership: a translation of x is correct
when it lands in the ground-truth target cluster of x's cluster. Because
translators are tabular and worlds are finite, every accuracy here is an
exact sum over the world: no sampling, no decoding heuristics beyond the
documented greedy tie-break (argmax, lowest id wins).

The estimator report quantifies what dual training did to the mass that
the baseline chain failed to reconstruct; all chains are decoded greedily
and each report is tagged with that decoding mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .oracle import OutcomeCounts
from .synth_lang import World
from .translator import TabularTranslator

__all__ = [
    "AccuracyReport",
    "EstimatorReport",
    "accuracy",
    "reconstruction_accuracy",
    "estimators",
    "estimators_from_counts",
]


@dataclass(frozen=True)
class AccuracyReport:
    """Exact accuracies of one translator.

    p_hat       greedy accuracy: mu-mass of sources whose argmax
                translation lands in the correct cluster
    p_expected  stochastic-decoding accuracy: mu-weighted probability
                mass the rows place on the correct cluster
    """

    direction: tuple[int, int]
    p_hat: float
    p_expected: float
    mode: str = "greedy-argmax-lowest-id"


@dataclass(frozen=True)
class EstimatorReport:
    """Empirical redistribution estimates over an evaluation set.

    alpha_hat / beta_hat / gamma_hat partition the baseline-failure set
    (None when that set is empty). eta_hat is the fraction of
    baseline-reconstructed items still reconstructed by the second system
    (None when nothing reconstructs); eta_raw is the unconditioned count
    ratio (second-system reconstructions over baseline reconstructions),
    which can exceed 1.
    """

    alpha_hat: float | None
    beta_hat: float | None
    gamma_hat: float | None
    eta_hat: float | None
    eta_raw: float | None
    counts: dict[str, int] = field(default_factory=dict)
    decoding: str = "greedy"


def _check_defined_on(t: TabularTranslator, world: World) -> None:
    n = world.n_sentences
    if t.theta.shape != (n, n):
        raise ValidationError(
            f"translator theta shape {t.theta.shape} does not match world ({n}, {n})"
        )
    world.check_language(t.src_lang)
    world.check_language(t.dst_lang)


def accuracy(t: TabularTranslator, world: World) -> AccuracyReport:
    """Exact greedy and expected accuracy of a translator on a world."""
    _check_defined_on(t, world)
    src_clusters = world.cluster_of[t.src_lang]
    dst_clusters = world.cluster_of[t.dst_lang]
    mu = world.mu[t.src_lang]

    greedy_cluster = dst_clusters[t.greedy_all()]
    p_hat = float(mu @ (greedy_cluster == src_clusters))

    probs = t.prob_matrix()
    # mass each row places on its correct target cluster
    correct_mask = dst_clusters[None, :] == src_clusters[:, None]
    p_expected = float(mu @ (probs * correct_mask).sum(axis=1))
    return AccuracyReport(direction=(t.src_lang, t.dst_lang), p_hat=p_hat, p_expected=p_expected)


def reconstruction_accuracy(t_fwd: TabularTranslator, t_bwd: TabularTranslator, world: World) -> float:
    """Exact return-hop accuracy under the forward translator's output distribution.

    Pushes mu through the forward rows, then scores the backward
    translator greedily at every intermediate sentence:
    ``sum_x mu(x) sum_y Pr(y|x; fwd) * [greedy_bwd(y) lands in y's cluster]``.
    """
    _check_defined_on(t_fwd, world)
    _check_defined_on(t_bwd, world)
    if t_fwd.dst_lang != t_bwd.src_lang or t_fwd.src_lang != t_bwd.dst_lang:
        raise ValidationError(
            f"translators do not compose: {t_fwd.src_lang}->{t_fwd.dst_lang} "
            f"then {t_bwd.src_lang}->{t_bwd.dst_lang}"
        )
    mid_clusters = world.cluster_of[t_fwd.dst_lang]
    back_clusters = world.cluster_of[t_bwd.dst_lang]
    bwd_ok = (back_clusters[t_bwd.greedy_all()] == mid_clusters).astype(float)
    pushforward = world.mu[t_fwd.src_lang] @ t_fwd.prob_matrix()
    return float(pushforward @ bwd_ok)


def _chain(world: World, pair: tuple[TabularTranslator, TabularTranslator], xs: np.ndarray):
    """Greedy round trip: returns (hop1 correct, reconstructed) boolean arrays."""
    fwd, bwd = pair
    src_clusters = world.cluster_of[fwd.src_lang]
    dst_clusters = world.cluster_of[fwd.dst_lang]
    ys = fwd.greedy_all()[xs]
    back = bwd.greedy_all()[ys]
    hop1 = dst_clusters[ys] == src_clusters[xs]
    recon = src_clusters[back] == src_clusters[xs]
    return hop1, recon


def estimators(
    vanilla: tuple[TabularTranslator, TabularTranslator],
    dual: tuple[TabularTranslator, TabularTranslator],
    eval_sentences: np.ndarray,
    world: World,
) -> EstimatorReport:
    """Empirical redistribution estimates comparing two translator pairs.

    Over the evaluation sentences, partition the set the vanilla chain
    fails to reconstruct by what the dual chain does with it (corrected /
    aligned-but-wrong / still unreconstructed); estimate the
    kept-reconstruction rate eta over the complementary set. Undefined
    ratios (empty denominators) are reported as None, never as zero.
    """
    xs = np.asarray(eval_sentences, dtype=np.int64)
    if xs.size == 0:
        raise ValidationError("evaluation set must be nonempty")
    for t in (*vanilla, *dual):
        _check_defined_on(t, world)

    _, v_recon = _chain(world, vanilla, xs)
    d_hop1, d_recon = _chain(world, dual, xs)

    fail = ~v_recon
    n_fail = int(fail.sum())
    n_ok = int(v_recon.sum())
    counts = {
        "n_eval": int(xs.size),
        "n_vanilla_fail": n_fail,
        "n_vanilla_recon": n_ok,
        "n_corrected": int((fail & d_hop1 & d_recon).sum()),
        "n_aligned": int((fail & ~d_hop1 & d_recon).sum()),
        "n_unreconstructed": int((fail & ~d_recon).sum()),
        "n_kept": int((v_recon & d_recon).sum()),
        "n_dual_recon": int(d_recon.sum()),
    }
    alpha = counts["n_corrected"] / n_fail if n_fail else None
    beta = counts["n_aligned"] / n_fail if n_fail else None
    gamma = counts["n_unreconstructed"] / n_fail if n_fail else None
    eta = counts["n_kept"] / n_ok if n_ok else None
    eta_raw = counts["n_dual_recon"] / n_ok if n_ok else None
    return EstimatorReport(
        alpha_hat=alpha, beta_hat=beta, gamma_hat=gamma,
        eta_hat=eta, eta_raw=eta_raw, counts=counts,
    )


def estimators_from_counts(counts: OutcomeCounts) -> EstimatorReport:
    """Estimator report from simulated outcome tallies.

    The tallies come from the generative outcome simulator, where the
    baseline-failure set is exactly the redistributed mass and every
    baseline reconstruction is kept, so eta_hat is 1 whenever defined.
    """
    n_fail = counts.n_case2
    n_ok = counts.case11 + counts.case12
    n_dual_recon = n_ok + counts.case2_corrected + counts.case2_aligned
    return EstimatorReport(
        alpha_hat=counts.case2_corrected / n_fail if n_fail else None,
        beta_hat=counts.case2_aligned / n_fail if n_fail else None,
        gamma_hat=counts.case2_unreconstructed / n_fail if n_fail else None,
        eta_hat=1.0 if n_ok else None,
        eta_raw=n_dual_recon / n_ok if n_ok else None,
        counts={
            "n_eval": n_fail + n_ok,
            "n_vanilla_fail": n_fail,
            "n_vanilla_recon": n_ok,
            "n_corrected": counts.case2_corrected,
            "n_aligned": counts.case2_aligned,
            "n_unreconstructed": counts.case2_unreconstructed,
            "n_kept": n_ok,
            "n_dual_recon": n_dual_recon,
        },
    )
