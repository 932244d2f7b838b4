"""Trainable tabular translators: one categorical distribution per source sentence.

A translator from language i to language j is a score matrix ``theta``
with one row per source sentence and one column per target sentence;
``Pr(y | x) = softmax(theta[x])[y]``. Rows are exact categorical
distributions, so sampling, greedy decoding, log-likelihoods, and their
gradients are all exact; there is no approximation anywhere in the learner.

The log-likelihood gradient for one (x, y) observation touches only row
x: ``d/d theta[x] ln Pr(y|x) = onehot(y) - softmax(theta[x])``. Every
training update in :mod:`dualsim.learner` is built from this one form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["TabularTranslator", "TrainConfig", "row_probs", "log_prob_grad_row"]


def row_probs(theta_row: np.ndarray) -> np.ndarray:
    """Stable softmax of one score row."""
    z = theta_row - theta_row.max()
    e = np.exp(z)
    return e / e.sum()


def log_prob_grad_row(theta_row: np.ndarray, y: int) -> np.ndarray:
    """Gradient of ln Pr(y | x) with respect to the row theta[x]."""
    g = -row_probs(theta_row)
    g[y] += 1.0
    return g


@dataclass
class TabularTranslator:
    """Categorical translation model between two languages.

    ``theta`` is (n_src, n_dst) float64 and must stay finite; the induced
    row distributions are normalized by construction. Training functions
    never mutate a translator in place; they return a new one.
    """

    src_lang: int
    dst_lang: int
    theta: np.ndarray

    def __post_init__(self) -> None:
        self.theta = np.asarray(self.theta, dtype=np.float64)
        if self.theta.ndim != 2:
            raise ValidationError("theta must be a 2-d score matrix")
        if not np.all(np.isfinite(self.theta)):
            raise ValidationError("theta must contain only finite scores")

    @classmethod
    def uniform(cls, src_lang: int, dst_lang: int, n_src: int, n_dst: int) -> TabularTranslator:
        return cls(src_lang, dst_lang, np.zeros((n_src, n_dst)))

    @property
    def n_src(self) -> int:
        return self.theta.shape[0]

    @property
    def n_dst(self) -> int:
        return self.theta.shape[1]

    def probs(self, x: int) -> np.ndarray:
        return row_probs(self.theta[x])

    def prob_matrix(self) -> np.ndarray:
        z = self.theta - self.theta.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)

    def log_prob(self, x: int, y: int) -> float:
        row = self.theta[x]
        m = row.max()
        return float(row[y] - m - np.log(np.exp(row - m).sum()))

    def greedy(self, x: int) -> int:
        # np.argmax takes the first maximum: ties break to the lowest id.
        return int(np.argmax(self.theta[x]))

    def greedy_all(self) -> np.ndarray:
        return np.argmax(self.theta, axis=1)

    def sample(self, x: int, rng: np.random.Generator) -> int:
        u = rng.random()
        return int(np.searchsorted(np.cumsum(self.probs(x)), u, side="right").clip(0, self.n_dst - 1))

    def copy(self) -> TabularTranslator:
        return TabularTranslator(self.src_lang, self.dst_lang, self.theta.copy())


@dataclass(frozen=True)
class TrainConfig:
    """Knobs for all training phases.

    learning_rate        step size for every gradient-ascent update
    steps                number of outer steps in the phase
    supervised_batch     minibatch size for parallel-data updates (the
                         update applies the mean batch gradient)
    reconstruction_batch round-trip samples drawn per reconstruction step
                         and direction, applied one at a time
    supervised_mix       fraction of steps that replay parallel data
                         during the dual / multi-step phases
    update_pivots        keep refining pivot-pair translators with their
                         own reconstruction updates during multi-step
                         training (default: pivots stay frozen)
    seed                 drives all sampling in the phase
    """

    learning_rate: float = 0.5
    steps: int = 2000
    supervised_batch: int = 16
    reconstruction_batch: int = 1
    supervised_mix: float = 0.5
    update_pivots: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.learning_rate > 0.0:
            raise ValidationError(f"learning_rate must be positive, got {self.learning_rate!r}")
        if self.steps < 0:
            raise ValidationError(f"steps must be nonnegative, got {self.steps!r}")
        if self.supervised_batch < 1 or self.reconstruction_batch < 1:
            raise ValidationError("batch sizes must be at least 1")
        if not 0.0 <= self.supervised_mix <= 1.0:
            raise ValidationError(f"supervised_mix must be in [0, 1], got {self.supervised_mix!r}")
