"""Synthetic clustered language worlds and corpus sampling.

A world is ``k`` finite languages, each holding ``m * s`` sentences split
into ``m`` semantic clusters of ``s`` sentences. Cluster ids are shared
across languages and every ground-truth translator is the identity on
cluster ids, which makes all compositions trivially consistent (the
forward map of a backward map is the identity, and any pivot triangle
closes). Sentences are opaque integer ids; there is no text anywhere.

Per-language sentence distributions are controlled by ``skew``: 0 gives
an exactly uniform distribution, larger values an increasingly lopsided
one (log-normal weights, normalized).

Worlds and corpora serialize to a line-oriented text format (one record
per sentence / pair / monolingual draw) documented in the README; floats
round-trip exactly via repr.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "World",
    "OracleTranslator",
    "Corpus",
    "generate_world",
    "oracle_translator",
    "sample_parallel",
    "sample_monolingual",
    "build_corpus",
    "world_to_text",
    "world_from_text",
    "corpus_to_text",
    "corpus_from_text",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class World:
    """Immutable synthetic multi-language world.

    mu          (k, m*s) rows: per-language sentence distributions
    cluster_of  (k, m*s) int rows: sentence id -> cluster id
    """

    n_langs: int
    n_clusters: int
    cluster_size: int
    mu: np.ndarray
    cluster_of: np.ndarray

    def __post_init__(self) -> None:
        n = self.n_clusters * self.cluster_size
        if self.mu.shape != (self.n_langs, n) or self.cluster_of.shape != (self.n_langs, n):
            raise ValidationError("mu / cluster_of shapes do not match world dimensions")
        if not np.all(np.abs(self.mu.sum(axis=1) - 1.0) <= 1e-12):
            raise ValidationError("every per-language distribution must sum to 1 within 1e-12")
        if np.any(self.mu < 0.0):
            raise ValidationError("sentence probabilities must be nonnegative")
        for lang in range(self.n_langs):
            counts = np.bincount(self.cluster_of[lang], minlength=self.n_clusters)
            if len(counts) != self.n_clusters or np.any(counts == 0):
                raise ValidationError(f"language {lang} has an empty cluster")
        _frozen(self.mu)
        _frozen(self.cluster_of)

    @property
    def n_sentences(self) -> int:
        return self.n_clusters * self.cluster_size

    def check_language(self, lang: int) -> int:
        if not 0 <= lang < self.n_langs:
            raise ValidationError(f"language id {lang} out of range [0, {self.n_langs})")
        return lang


@dataclass(frozen=True)
class OracleTranslator:
    """Ground-truth cluster-to-cluster map between two languages.

    Cluster ids are shared, so the map is the identity on ids; it is kept
    as an object so composition and inversion can be exercised explicitly.
    """

    src: int
    dst: int

    def map_cluster(self, cluster: int) -> int:
        return cluster

    def target_cluster(self, world: World, sentence: int) -> int:
        """Correct destination cluster for a source sentence."""
        return int(world.cluster_of[self.src, sentence])

    def compose(self, other: OracleTranslator) -> OracleTranslator:
        if self.dst != other.src:
            raise ValidationError(
                f"cannot compose {self.src}->{self.dst} with {other.src}->{other.dst}"
            )
        return OracleTranslator(self.src, other.dst)


def oracle_translator(world: World, i: int, j: int) -> OracleTranslator:
    world.check_language(i)
    world.check_language(j)
    return OracleTranslator(i, j)


@dataclass(frozen=True)
class Corpus:
    """Sampled training data: parallel pairs per ordered language pair,
    monolingual sentence ids per language.

    ``parallel[(i, j)]`` is an (n, 2) int array of (source id, target id);
    by construction every pair is cluster-correct. Each ordered direction
    carries its own independent draws, so the two translators of a pair
    start from genuinely different supervised knowledge, the asymmetry
    that reconstruction training then transfers across.
    """

    parallel: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    monolingual: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for arr in self.parallel.values():
            _frozen(arr)
        for arr in self.monolingual.values():
            _frozen(arr)


def generate_world(k: int, m: int, s: int, skew: float, seed: int) -> World:
    """Build a k-language world with m clusters of s sentences each.

    Cluster layout is contiguous: sentence ids [c*s, (c+1)*s) form cluster
    c in every language. skew = 0 gives exactly uniform mu; skew > 0 draws
    weights exp(skew * N(0,1)) per sentence and normalizes. Deterministic
    in (arguments, seed).
    """
    if k < 2:
        raise ValidationError(f"need at least 2 languages, got {k}")
    if m < 1 or s < 1:
        raise ValidationError(f"cluster counts must be positive, got m={m}, s={s}")
    if skew < 0.0:
        raise ValidationError(f"skew must be nonnegative, got {skew!r}")
    rng = np.random.default_rng(seed)
    n = m * s
    if skew == 0.0:
        mu = np.full((k, n), 1.0 / n)
    else:
        weights = np.exp(skew * rng.standard_normal((k, n)))
        mu = weights / weights.sum(axis=1, keepdims=True)
    cluster_of = np.tile(np.arange(n) // s, (k, 1))
    return World(n_langs=k, n_clusters=m, cluster_size=s, mu=mu, cluster_of=cluster_of)


def sample_parallel(
    world: World,
    i: int,
    j: int,
    n: int,
    seed,
    within_cluster: str = "mu",
) -> np.ndarray:
    """Draw n cluster-correct parallel pairs from language i to language j.

    Sources follow mu_i; each target is drawn inside the correct cluster,
    either from mu_j restricted and renormalized to that cluster
    (``within_cluster="mu"``, the default) or uniformly over the cluster
    (``within_cluster="uniform"``).
    """
    world.check_language(i)
    world.check_language(j)
    if i == j:
        raise ValidationError("parallel data needs two distinct languages")
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")
    if within_cluster not in ("mu", "uniform"):
        raise ValidationError(f"unknown within_cluster mode {within_cluster!r}")
    rng = np.random.default_rng(seed)
    s = world.cluster_size
    xs = rng.choice(world.n_sentences, size=n, p=world.mu[i])
    clusters = world.cluster_of[i, xs]
    if within_cluster == "mu":
        block = world.mu[j].reshape(world.n_clusters, s)
    else:
        block = np.ones((world.n_clusters, s))
    block = block / block.sum(axis=1, keepdims=True)
    cum = np.cumsum(block, axis=1)
    u = rng.random(n)
    offsets = (u[:, None] > cum[clusters]).sum(axis=1)
    np.clip(offsets, 0, s - 1, out=offsets)
    ys = clusters * s + offsets
    return np.column_stack([xs, ys]).astype(np.int64)


def sample_monolingual(world: World, i: int, n: int, seed) -> np.ndarray:
    """Draw n i.i.d. sentence ids from language i's distribution."""
    world.check_language(i)
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")
    rng = np.random.default_rng(seed)
    return rng.choice(world.n_sentences, size=n, p=world.mu[i]).astype(np.int64)


def build_corpus(
    world: World,
    parallel_per_pair: int,
    monolingual_per_language: int,
    seed: int,
    within_cluster: str = "mu",
) -> Corpus:
    """Sample an independent parallel dataset per ordered language pair
    plus monolingual data per language.

    Sub-seeds are spawned from ``seed`` in a fixed order so the whole
    corpus is reproducible from (world, arguments, seed).
    """
    ss = np.random.SeedSequence(seed)
    pairs = [(i, j) for i in range(world.n_langs) for j in range(world.n_langs) if i != j]
    children = ss.spawn(len(pairs) + world.n_langs)
    parallel: dict[tuple[int, int], np.ndarray] = {}
    for child, (i, j) in zip(children[: len(pairs)], pairs):
        parallel[(i, j)] = sample_parallel(world, i, j, parallel_per_pair, child, within_cluster)
    monolingual: dict[int, np.ndarray] = {}
    for child, lang in zip(children[len(pairs) :], range(world.n_langs)):
        monolingual[lang] = sample_monolingual(world, lang, monolingual_per_language, child)
    return Corpus(parallel=parallel, monolingual=monolingual)


def world_to_text(world: World) -> str:
    """Serialize a world: one header line, then one line per sentence."""
    lines = [f"world {world.n_langs} {world.n_clusters} {world.cluster_size}"]
    for lang in range(world.n_langs):
        for sid in range(world.n_sentences):
            # repr of a Python float round-trips exactly
            lines.append(
                f"sent {lang} {sid} {world.cluster_of[lang, sid]} {float(world.mu[lang, sid])!r}"
            )
    return "\n".join(lines) + "\n"


def world_from_text(text: str) -> World:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("world "):
        raise ValidationError("world text must start with a 'world k m s' header")
    _, k, m, s = lines[0].split()
    k, m, s = int(k), int(m), int(s)
    n = m * s
    mu = np.zeros((k, n))
    cluster_of = np.zeros((k, n), dtype=np.int64)
    for ln in lines[1:]:
        tag, lang, sid, cluster, p = ln.split()
        if tag != "sent":
            raise ValidationError(f"unexpected record {tag!r} in world text")
        mu[int(lang), int(sid)] = float(p)
        cluster_of[int(lang), int(sid)] = int(cluster)
    return World(n_langs=k, n_clusters=m, cluster_size=s, mu=mu, cluster_of=cluster_of)


def corpus_to_text(corpus: Corpus) -> str:
    """Serialize a corpus: 'par i j src tgt' and 'mono i sid' records."""
    lines = []
    for (i, j) in sorted(corpus.parallel):
        for src, tgt in corpus.parallel[(i, j)]:
            lines.append(f"par {i} {j} {src} {tgt}")
    for i in sorted(corpus.monolingual):
        for sid in corpus.monolingual[i]:
            lines.append(f"mono {i} {sid}")
    return "\n".join(lines) + "\n"


def corpus_from_text(text: str) -> Corpus:
    parallel: dict[tuple[int, int], list[tuple[int, int]]] = {}
    monolingual: dict[int, list[int]] = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        parts = ln.split()
        if parts[0] == "par":
            _, i, j, src, tgt = parts
            parallel.setdefault((int(i), int(j)), []).append((int(src), int(tgt)))
        elif parts[0] == "mono":
            _, i, sid = parts
            monolingual.setdefault(int(i), []).append(int(sid))
        else:
            raise ValidationError(f"unexpected record {parts[0]!r} in corpus text")
    return Corpus(
        parallel={k: np.array(v, dtype=np.int64) for k, v in parallel.items()},
        monolingual={k: np.array(v, dtype=np.int64) for k, v in monolingual.items()},
    )
