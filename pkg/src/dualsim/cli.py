"""Command-line front door: theory tables, verification suites, Monte Carlo
simulation, training experiments, and report re-summarization.

One JSON config document drives a run; every field has a default (listed
in DEFAULT_CONFIG) and unknown fields are rejected so a typo like
"lamda1" cannot silently fall back to a default. All randomness flows
from declared seeds, so every command is deterministic given its config.

Exit codes: 0 success, 1 verification failure, 2 invalid input.

CSV output: ',' field separator, '.' decimal separator, mandatory header
row, LF line endings, rows sorted before writing; byte-stable across
reruns of the same config.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import DualSimError, InfeasibleParamsError, ValidationError
from .learner import (
    PHASE_ORDER,
    dual_learning,
    evaluate,
    multistep_dual_learning,
    train_supervised,
)
from .metrics import estimators_from_counts
from .oracle import (
    GenerativeSpec,
    enumerate_dual,
    enumerate_triple,
    errata_report,
    errata_to_text,
    monte_carlo,
)
from .outcome_model import (
    DualOutcomeParams,
    RedistributionPolicy,
    TripleOutcomeParams,
    build_dual_joint,
    build_triple_joint,
    lambda_feasible_range,
    lambda_loose_range,
)
from .synth_lang import build_corpus, generate_world
from .theory import (
    alignment_probability,
    m_factor,
    multistep_condition,
    predict_dual,
    predict_multistep,
    proportional_dual_accuracy,
    proportional_policy,
)
from .translator import TabularTranslator, TrainConfig

DEFAULT_CONFIG: dict[str, Any] = {
    "theory": {
        "kind": "dual",
        "p12": 0.65,
        "p21r": 0.73,
        "lambda": 0.0,
        "q12": 0.6,
        "q23": 0.7,
        "q31": 0.8,
        "lambda1": 0.0,
        "lambda2": 0.0,
        "delta": 0.1,  # scalar or list: a list sweeps one row per value
        "gamma": 0.42,
        "policy": None,  # explicit {alpha, beta, gamma} overrides gamma
    },
    "verify": {
        "draws": 1000,
        "tolerance": 1e-12,
        "seed": 0,
        "use_shortcut_case_formulas": False,
        "errata_params": {
            "q12": 0.5,
            "q23": 0.5,
            "q31": 0.5,
            "lambda1": 0.05,
            "lambda2": 0.0,
            "delta": 0.1,
        },
    },
    "simulate": {
        "kind": "dual",
        "n": 100000,
        "seed": 1,
        "p12": 0.65,
        "p21r": 0.73,
        "lambda": 0.0,
        "q12": 0.6,
        "q23": 0.7,
        "q31": 0.8,
        "lambda1": 0.0,
        "lambda2": 0.0,
        "delta": 0.1,
        "policy": {"alpha": 0.30, "beta": 0.28, "gamma": 0.42},
    },
    "train": {
        "world": {"k": 3, "m": 50, "s": 4, "skew": 0.0, "seed": 0},
        "corpus": {
            "parallel_per_pair": 200,
            "monolingual_per_language": 2000,
            "within_cluster": "mu",
        },
        "train": {
            "learning_rate": 0.5,
            "supervised_steps": 3000,
            "dual_steps": 6000,
            "multistep_steps": 6000,
            "supervised_batch": 16,
            "reconstruction_batch": 1,
            "supervised_mix": 0.5,
            "update_pivots": False,
        },
        "seeds": [1, 2, 3, 4, 5],
        "phases": ["vanilla", "dual", "multistep"],
    },
    "report": {},
}


def _merge_config(defaults: Any, user: Any, path: str) -> Any:
    """Overlay user config on defaults, rejecting unknown keys."""
    if not isinstance(defaults, dict):
        return user
    if user is None:
        return defaults
    if not isinstance(user, dict):
        raise ValidationError(f"config field {path or '<root>'} must be an object")
    merged = dict(defaults)
    for key, value in user.items():
        child = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ValidationError(f"unknown config field: {child}")
        if isinstance(defaults[key], dict) and defaults[key]:
            merged[key] = _merge_config(defaults[key], value, child)
        else:
            merged[key] = value
    return merged


def load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return json.loads(json.dumps(DEFAULT_CONFIG))
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read config {path}: {e}") from e
    try:
        user = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"config {path} is not valid JSON: {e}") from e
    return _merge_config(DEFAULT_CONFIG, user, "")


def _config_hash(cfg: dict[str, Any]) -> str:
    import hashlib

    digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode("utf-8"))
    return digest.hexdigest()[:12]


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _dual_params(block: dict[str, Any]) -> DualOutcomeParams:
    return DualOutcomeParams(
        p12=block["p12"], p21r=block["p21r"], lam=block["lambda"], delta=block["delta"]
    )


def _triple_params(block: dict[str, Any]) -> TripleOutcomeParams:
    return TripleOutcomeParams(
        q12=block["q12"],
        q23=block["q23"],
        q31=block["q31"],
        lam1=block["lambda1"],
        lam2=block["lambda2"],
        delta=block["delta"],
    )


def _policy(block: dict[str, Any] | None) -> RedistributionPolicy | None:
    if block is None:
        return None
    unknown = set(block) - {"alpha", "beta", "gamma"}
    if unknown:
        raise ValidationError(f"unknown policy fields: {sorted(unknown)}")
    return RedistributionPolicy(
        alpha=block.get("alpha", 0.0), beta=block.get("beta", 0.0), gamma=block.get("gamma", 0.0)
    )


def cmd_theory(cfg: dict[str, Any], out_dir: Path | None) -> int:
    block = cfg["theory"]
    deltas = block["delta"] if isinstance(block["delta"], list) else [block["delta"]]
    explicit = _policy(block["policy"])
    rows: list[list[Any]] = []
    if block["kind"] == "dual":
        low, high = lambda_feasible_range(block["p12"], block["p21r"])
        loose_low, loose_high = lambda_loose_range(block["p12"], block["p21r"])
        lam = block["lambda"]
        print(f"lambda tight range: [{low!r}, {high!r}]")
        print(f"lambda loose range: [{loose_low!r}, {loose_high!r}]")
        print(f"lambda={lam!r} within loose range: {loose_low <= lam <= loose_high}")
        header = [
            "delta", "p_align", "alpha", "beta", "gamma",
            "p_case11", "p_case12", "p_case2", "p_d12", "improvement",
        ]
        for delta in deltas:
            params = DualOutcomeParams(block["p12"], block["p21r"], lam, delta)
            build_dual_joint(params)
            policy = explicit or proportional_policy(params, block["gamma"])
            pred = predict_dual(params, policy)
            rows.append(
                [
                    delta, alignment_probability(params),
                    policy.alpha, policy.beta, policy.gamma,
                    pred.p_case11, pred.p_case12, pred.p_case2,
                    pred.p_d12, pred.improvement,
                ]
            )
    elif block["kind"] == "triple":
        header = [
            "delta", "m_factor", "beats_dual",
            "p_case11", "p_case12", "p_case2", "q_m12",
        ]
        for delta in deltas:
            params = TripleOutcomeParams(
                block["q12"], block["q23"], block["q31"],
                block["lambda1"], block["lambda2"], delta,
            )
            if explicit is not None:
                policy = explicit
            else:
                # proportional split between the two reconstructing cases
                pred0 = predict_multistep(params, RedistributionPolicy(1.0, 0.0, 0.0))
                total = pred0.p_case11 + pred0.p_case12
                if total <= 0.0:
                    raise ValidationError("proportional policy undefined for these parameters")
                g = block["gamma"]
                policy = RedistributionPolicy(
                    (1 - g) * pred0.p_case11 / total, (1 - g) * pred0.p_case12 / total, g
                )
            pred = predict_multistep(params, policy)
            rows.append(
                [
                    delta,
                    m_factor(block["q23"], block["q31"], delta),
                    multistep_condition(block["q23"], block["q31"], delta),
                    pred.p_case11, pred.p_case12, pred.p_case2, pred.q_m12,
                ]
            )
    else:
        raise ValidationError(f"theory.kind must be 'dual' or 'triple', got {block['kind']!r}")
    print(",".join(header))
    for row in rows:
        print(",".join(_fmt(v) for v in row))
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(out_dir / "theory.csv", header, rows)
    return 0


def _random_dual_params(rng: np.random.Generator) -> DualOutcomeParams:
    p12 = rng.uniform(0.05, 0.95)
    p21r = rng.uniform(0.05, 0.95)
    low, high = lambda_feasible_range(p12, p21r)
    lam = rng.uniform(low, high)
    return DualOutcomeParams(p12, p21r, lam, rng.uniform(0.0, 1.0))


def _random_policy(rng: np.random.Generator) -> RedistributionPolicy:
    a, b, _ = rng.dirichlet([1.0, 1.0, 1.0])
    # close the simplex exactly in floating point
    g = max(0.0, 1.0 - a - b)
    return RedistributionPolicy(a, b, g)


def _random_triple_params(
    rng: np.random.Generator, with_dependence: bool
) -> TripleOutcomeParams:
    while True:
        q = rng.uniform(0.05, 0.95, size=3)
        if not with_dependence:
            lam1 = lam2 = 0.0
        else:
            lam1 = rng.uniform(-0.05, 0.05)
            lam2 = rng.uniform(-0.05, 0.05)
        params = TripleOutcomeParams(q[0], q[1], q[2], lam1, lam2, rng.uniform(0.0, 1.0))
        try:
            build_triple_joint(params)
            return params
        except InfeasibleParamsError:
            continue


def cmd_verify(cfg: dict[str, Any], out_dir: Path | None) -> int:
    block = cfg["verify"]
    draws = int(block["draws"])
    tol = float(block["tolerance"])
    rng = np.random.default_rng(int(block["seed"]))
    worst = 0.0
    worst_desc = "none"

    def track(diff: float, desc: str) -> None:
        nonlocal worst, worst_desc
        if diff > worst:
            worst, worst_desc = float(diff), desc

    for _ in range(draws):
        params = _random_dual_params(rng)
        policy = _random_policy(rng)
        spec = GenerativeSpec(params, policy)
        pred = predict_dual(params, policy)
        track(abs(pred.p_d12 - enumerate_dual(spec).accuracy), f"dual formula vs enumeration {params}")
        gamma = rng.uniform(0.0, 1.0)
        closed = proportional_dual_accuracy(params, gamma)
        via_policy = predict_dual(params, proportional_policy(params, gamma)).p_d12
        track(abs(closed - via_policy), f"proportional identity {params}")
    print(f"dual checks: {draws} draws")

    for with_dep in (False, True):
        for _ in range(draws):
            params = _random_triple_params(rng, with_dep)
            policy = _random_policy(rng)
            spec = GenerativeSpec(params, policy)
            pred = predict_multistep(params, policy)
            track(
                abs(pred.q_m12 - enumerate_triple(spec).accuracy),
                f"triple formula vs enumeration {params}",
            )
    print(f"triple checks: {2 * draws} draws")

    errata_params = _triple_params(block["errata_params"])
    records = errata_report(errata_params)
    text = errata_to_text(records)
    print(text, end="")
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "errata.txt").write_text(text, encoding="utf-8")

    if block["use_shortcut_case_formulas"]:
        # score the shortcut case formulas as if they were the implementation
        neutral = GenerativeSpec(errata_params, RedistributionPolicy(1.0, 0.0, 0.0))
        exact11, exact12, _ = enumerate_triple(neutral).case_masses
        by_name = {r.name: r for r in records}
        track(abs(by_name["case11"].shortcut - exact11), "shortcut case11 vs enumeration")
        track(abs(by_name["case12"].shortcut - exact12), "shortcut case12 vs enumeration")

    print(f"max |difference|: {worst!r} (tolerance {tol!r})")
    if worst > tol:
        print(f"FAIL worst offender: {worst_desc}")
        return 1
    print("PASS")
    return 0


def cmd_simulate(cfg: dict[str, Any], out_dir: Path | None) -> int:
    block = cfg["simulate"]
    policy = _policy(block["policy"])
    if policy is None:
        raise ValidationError("simulate.policy must be given")
    if block["kind"] == "dual":
        spec = GenerativeSpec(_dual_params(block), policy)
        exact = enumerate_dual(spec)
    elif block["kind"] == "triple":
        spec = GenerativeSpec(_triple_params(block), policy)
        exact = enumerate_triple(spec)
    else:
        raise ValidationError(f"simulate.kind must be 'dual' or 'triple', got {block['kind']!r}")
    result = monte_carlo(spec, int(block["n"]), int(block["seed"]))
    z = (result.accuracy - exact.accuracy) / result.stderr if result.stderr > 0 else 0.0
    print(f"samples: {result.n_samples}")
    print(f"estimate: {result.accuracy!r} stderr: {result.stderr!r}")
    print(f"exact:    {exact.accuracy!r} |diff|: {abs(result.accuracy - exact.accuracy)!r} z: {z:.3f}")
    assert result.counts is not None
    est = estimators_from_counts(result.counts)
    print(
        f"recovered alpha_hat={_fmt(est.alpha_hat)} beta_hat={_fmt(est.beta_hat)} "
        f"gamma_hat={_fmt(est.gamma_hat)} eta_hat={_fmt(est.eta_hat)} "
        f"(n_fail={est.counts['n_vanilla_fail']})"
    )
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(
            out_dir / "simulate.csv",
            ["n", "seed", "estimate", "stderr", "exact", "alpha_hat", "beta_hat", "gamma_hat"],
            [[result.n_samples, block["seed"], result.accuracy, result.stderr,
              exact.accuracy, est.alpha_hat, est.beta_hat, est.gamma_hat]],
        )
    return 0


def _sub_seeds(seed: int, n: int) -> list[int]:
    return [int(c.generate_state(1, np.uint64)[0]) for c in np.random.SeedSequence(seed).spawn(n)]


def run_training_experiment(cfg: dict[str, Any], run_seed: int):
    """One full vanilla -> dual -> multistep run; returns (phases, world, corpus)."""
    block = cfg["train"]
    wb, cb, tb = block["world"], block["corpus"], block["train"]
    phases_wanted = list(block["phases"])
    unknown = [p for p in phases_wanted if p not in PHASE_ORDER]
    if unknown:
        raise ValidationError(f"unknown phases {unknown}; allowed: {list(PHASE_ORDER)}")
    k = int(wb["k"])
    if "multistep" in phases_wanted and k < 3:
        raise ValidationError(
            "multistep phase needs at least 3 languages (k >= 3); "
            "a 2-language world degenerates to plain dual learning"
        )
    world = generate_world(k, int(wb["m"]), int(wb["s"]), float(wb["skew"]), int(wb["seed"]))
    corpus_seed, *phase_seeds = _sub_seeds(run_seed, 4)
    corpus = build_corpus(
        world,
        int(cb["parallel_per_pair"]),
        int(cb["monolingual_per_language"]),
        corpus_seed,
        within_cluster=cb["within_cluster"],
    )
    n = world.n_sentences
    directions = [(i, j) for i in range(k) for j in range(k) if i != j]

    phases: dict[str, dict[tuple[int, int], TabularTranslator]] = {}
    sup_cfg = lambda seed: TrainConfig(  # noqa: E731
        learning_rate=float(tb["learning_rate"]),
        steps=int(tb["supervised_steps"]),
        supervised_batch=int(tb["supervised_batch"]),
        reconstruction_batch=int(tb["reconstruction_batch"]),
        supervised_mix=float(tb["supervised_mix"]),
        update_pivots=bool(tb["update_pivots"]),
        seed=seed,
    )
    vanilla: dict[tuple[int, int], TabularTranslator] = {}
    seeds = _sub_seeds(phase_seeds[0], len(directions))
    for seed, (i, j) in zip(seeds, directions):
        t = TabularTranslator.uniform(i, j, n, n)
        vanilla[(i, j)] = train_supervised(t, corpus.parallel[(i, j)], sup_cfg(seed))
    phases["vanilla"] = vanilla

    if "dual" in phases_wanted or "multistep" in phases_wanted:
        dual_pairs = [(0, 1)]
        if "multistep" in phases_wanted:
            dual_pairs += [(i, p) for p in range(2, k) for i in (0, 1)]
        dual: dict[tuple[int, int], TabularTranslator] = dict(vanilla)
        seeds = _sub_seeds(phase_seeds[1], len(dual_pairs))
        for seed, (i, j) in zip(seeds, dual_pairs):
            cfg_ij = TrainConfig(
                learning_rate=float(tb["learning_rate"]),
                steps=int(tb["dual_steps"]),
                supervised_batch=int(tb["supervised_batch"]),
                reconstruction_batch=int(tb["reconstruction_batch"]),
                supervised_mix=float(tb["supervised_mix"]),
                update_pivots=bool(tb["update_pivots"]),
                seed=seed,
            )
            dual[(i, j)], dual[(j, i)] = dual_learning(
                vanilla[(i, j)], vanilla[(j, i)], corpus, cfg_ij
            )
        if "dual" in phases_wanted:
            phases["dual"] = dual

    if "multistep" in phases_wanted:
        multi_cfg = TrainConfig(
            learning_rate=float(tb["learning_rate"]),
            steps=int(tb["multistep_steps"]),
            supervised_batch=int(tb["supervised_batch"]),
            reconstruction_batch=int(tb["reconstruction_batch"]),
            supervised_mix=float(tb["supervised_mix"]),
            update_pivots=bool(tb["update_pivots"]),
            seed=phase_seeds[2],
        )
        phases["multistep"] = multistep_dual_learning(dual, corpus, multi_cfg, pair=(0, 1))

    return phases, world, corpus


def cmd_train(cfg: dict[str, Any], out_dir: Path | None) -> int:
    block = cfg["train"]
    seeds = [int(s) for s in block["seeds"]]
    if not seeds:
        raise ValidationError("train.seeds must list at least one seed")
    chash = _config_hash(cfg["train"])
    acc_rows: list[list[Any]] = []
    est_rows: list[list[Any]] = []
    all_warnings: list[str] = []
    for run_seed in seeds:
        phases, world, _ = run_training_experiment(cfg, run_seed)
        record = evaluate(phases, world)
        for (phase, (i, j)), rep in record.accuracies.items():
            acc_rows.append([chash, run_seed, phase, i, j, rep.p_hat, rep.p_expected])
        for name, rep in record.estimator_reports.items():
            est_rows.append(
                [
                    chash, run_seed, name,
                    rep.alpha_hat, rep.beta_hat, rep.gamma_hat, rep.eta_hat, rep.eta_raw,
                    rep.counts["n_vanilla_fail"], rep.counts["n_vanilla_recon"],
                ]
            )
        all_warnings += [f"seed {run_seed}: {w}" for w in record.warnings]

    phase_rank = {ph: idx for idx, ph in enumerate(PHASE_ORDER)}
    acc_rows.sort(key=lambda r: (r[1], phase_rank.get(r[2], 99), r[3], r[4]))
    est_rows.sort(key=lambda r: (r[1], r[2]))

    acc_header = ["config_hash", "seed", "phase", "src", "dst", "p_hat", "p_expected"]
    est_header = [
        "config_hash", "seed", "comparison", "alpha_hat", "beta_hat", "gamma_hat",
        "eta_hat", "eta_raw", "n_vanilla_fail", "n_vanilla_recon",
    ]
    summary_header, summary_rows = _summarize(acc_rows)

    if out_dir is None:
        out_dir = Path("out")
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / "accuracy.csv", acc_header, acc_rows)
    _write_csv(out_dir / "estimators.csv", est_header, est_rows)
    _write_csv(out_dir / "summary.csv", summary_header, summary_rows)

    print(",".join(summary_header))
    for row in summary_rows:
        print(",".join(_fmt(v) for v in row))
    for w in all_warnings:
        print(f"warning: {w}")
    print(f"wrote {out_dir / 'accuracy.csv'}, estimators.csv, summary.csv")
    return 0


def _summarize(acc_rows: list[list[Any]]):
    """Mean greedy accuracy per (phase, direction) plus phase-over-phase gains."""
    groups: dict[tuple[str, int, int], list[float]] = {}
    for _, _seed, phase, i, j, p_hat, _pe in acc_rows:
        groups.setdefault((phase, i, j), []).append(p_hat)
    header = ["phase", "src", "dst", "runs", "mean_p_hat"]
    rows: list[list[Any]] = []
    phase_rank = {ph: idx for idx, ph in enumerate(PHASE_ORDER)}
    for (phase, i, j), vals in sorted(
        groups.items(), key=lambda kv: (phase_rank.get(kv[0][0], 99), kv[0][1], kv[0][2])
    ):
        rows.append([phase, i, j, len(vals), float(np.mean(vals))])
    means01 = {
        phase: float(np.mean(vals)) for (phase, i, j), vals in groups.items() if (i, j) == (0, 1)
    }
    for base, second in zip(PHASE_ORDER, PHASE_ORDER[1:]):
        if base in means01 and second in means01:
            rows.append(
                [f"{second}-minus-{base}", 0, 1, len(groups[(second, 0, 1)]),
                 means01[second] - means01[base]]
            )
    return header, rows


def cmd_report(out_dir: Path | None) -> int:
    if out_dir is None:
        out_dir = Path("out")
    path = out_dir / "accuracy.csv"
    if not path.exists():
        raise ValidationError(f"no accuracy CSV at {path}")
    rows: list[list[Any]] = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["config_hash", "seed", "phase", "src", "dst", "p_hat", "p_expected"]
        if header != expected:
            raise ValidationError(f"unexpected accuracy.csv header {header}")
        for line in fh:
            chash, seed, phase, i, j, p_hat, p_exp = line.strip().split(",")
            rows.append([chash, int(seed), phase, int(i), int(j), float(p_hat), float(p_exp)])
    summary_header, summary_rows = _summarize(rows)
    print(",".join(summary_header))
    for row in summary_rows:
        print(",".join(_fmt(v) for v in row))
    _write_csv(out_dir / "summary.csv", summary_header, summary_rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualsim",
        description="simulator and experiment harness for dual and multi-step dual learning",
    )
    parser.add_argument("command", choices=["theory", "verify", "simulate", "train", "report"])
    parser.add_argument("--config", default=None, help="path to a JSON config document")
    parser.add_argument("--seed", type=int, default=None, help="override the command's seed(s)")
    parser.add_argument("--out", default=None, help="directory for CSV/report artifacts")
    parser.add_argument("--tolerance", type=float, default=None, help="override verify tolerance")
    parser.add_argument("--draws", type=int, default=None, help="override verify draw count")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg["verify"]["seed"] = args.seed
            cfg["simulate"]["seed"] = args.seed
            cfg["train"]["seeds"] = [args.seed]
        if args.tolerance is not None:
            cfg["verify"]["tolerance"] = args.tolerance
        if args.draws is not None:
            cfg["verify"]["draws"] = args.draws
        out_dir = Path(args.out) if args.out else None
        if args.command == "theory":
            return cmd_theory(cfg, out_dir)
        if args.command == "verify":
            return cmd_verify(cfg, out_dir)
        if args.command == "simulate":
            return cmd_simulate(cfg, out_dir)
        if args.command == "train":
            return cmd_train(cfg, out_dir)
        return cmd_report(out_dir)
    except (ValidationError, InfeasibleParamsError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DualSimError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
