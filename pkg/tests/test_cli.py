"""CLI verbs, config validation, exit codes, and byte-stable CSV output."""

import json

from dualsim.cli import main

TINY_TRAIN = {
    "train": {
        "world": {"k": 3, "m": 6, "s": 2, "skew": 0.0, "seed": 0},
        "corpus": {"parallel_per_pair": 30, "monolingual_per_language": 200},
        "train": {
            "supervised_steps": 300,
            "dual_steps": 400,
            "multistep_steps": 300,
            "supervised_batch": 8,
        },
        "seeds": [7],
        "phases": ["vanilla", "dual", "multistep"],
    }
}


def write_config(tmp_path, cfg, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


class TestConfigValidation:
    def test_unknown_key_rejected_with_path(self, tmp_path, capsys):
        path = write_config(tmp_path, {"verify": {"lamda1": 1}})
        assert main(["verify", "--config", path]) == 2
        assert "verify.lamda1" in capsys.readouterr().err

    def test_unknown_top_level_key(self, tmp_path, capsys):
        path = write_config(tmp_path, {"verifyy": {}})
        assert main(["verify", "--config", path]) == 2
        assert "verifyy" in capsys.readouterr().err

    def test_broken_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["verify", "--config", str(path)]) == 2
        assert "not valid JSON" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["verify", "--config", "/nonexistent/config.json"]) == 2


class TestTheory:
    def test_default_prints_prediction(self, capsys):
        assert main(["theory"]) == 0
        out = capsys.readouterr().out
        assert "p_d12" in out
        assert "lambda tight range" in out

    def test_preset_policy_delta_sweep(self, tmp_path, capsys):
        cfg = {
            "theory": {
                "kind": "dual",
                "p12": 0.65,
                "p21r": 0.73,
                "delta": [0.05, 0.1, 0.2],
                "policy": {"alpha": 0.30, "beta": 0.28, "gamma": 0.42},
            }
        }
        path = write_config(tmp_path, cfg)
        assert main(["theory", "--config", path, "--out", str(tmp_path / "o")]) == 0
        out = capsys.readouterr().out
        data_lines = [ln for ln in out.splitlines() if ln.startswith("0.")]
        assert len(data_lines) == 3
        assert (tmp_path / "o" / "theory.csv").exists()

    def test_alpha_one_delta_zero_prints_perfect_accuracy(self, tmp_path, capsys):
        cfg = {
            "theory": {
                "kind": "dual",
                "p12": 0.6,
                "p21r": 0.7,
                "delta": 0.0,
                "policy": {"alpha": 1.0, "beta": 0.0, "gamma": 0.0},
            }
        }
        assert main(["theory", "--config", write_config(tmp_path, cfg)]) == 0
        last = capsys.readouterr().out.strip().splitlines()[-1]
        assert last.split(",")[-2] == "1.0"  # p_d12 column

    def test_infeasible_lambda_names_cell(self, tmp_path, capsys):
        cfg = {"theory": {"p12": 0.6, "p21r": 0.7, "lambda": 0.2}}
        assert main(["theory", "--config", write_config(tmp_path, cfg)]) == 2
        assert "(1, 0)" in capsys.readouterr().err

    def test_triple_table(self, tmp_path, capsys):
        cfg = {"theory": {"kind": "triple", "delta": [0.1, 0.3]}}
        assert main(["theory", "--config", write_config(tmp_path, cfg)]) == 0
        assert "m_factor" in capsys.readouterr().out


class TestVerify:
    def test_passes_with_defaults(self, tmp_path, capsys):
        assert main(["verify", "--draws", "60", "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out
        assert "cell(1,0,0)" in out  # errata always emitted
        assert (tmp_path / "errata.txt").exists()

    def test_shortcut_formulas_fail_with_dependence(self, tmp_path, capsys):
        cfg = {"verify": {"draws": 30, "use_shortcut_case_formulas": True}}
        assert main(["verify", "--config", write_config(tmp_path, cfg)]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "shortcut" in out

    def test_impossible_tolerance_fails(self, capsys):
        assert main(["verify", "--draws", "40", "--tolerance", "-1.0"]) == 1


class TestSimulate:
    def test_dual_simulation(self, tmp_path, capsys):
        cfg = {"simulate": {"n": 20000, "seed": 3}}
        path = write_config(tmp_path, cfg)
        assert main(["simulate", "--config", path, "--out", str(tmp_path / "s")]) == 0
        out = capsys.readouterr().out
        assert "estimate" in out and "alpha_hat" in out
        assert (tmp_path / "s" / "simulate.csv").exists()

    def test_triple_simulation(self, tmp_path, capsys):
        cfg = {"simulate": {"kind": "triple", "n": 20000, "seed": 3}}
        assert main(["simulate", "--config", write_config(tmp_path, cfg)]) == 0


class TestTrain:
    def test_reruns_are_byte_identical(self, tmp_path):
        path = write_config(tmp_path, TINY_TRAIN)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert main(["train", "--config", path, "--out", str(out1)]) == 0
        assert main(["train", "--config", path, "--out", str(out2)]) == 0
        for name in ("accuracy.csv", "estimators.csv", "summary.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_summary_orders_phases(self, tmp_path, capsys):
        path = write_config(tmp_path, TINY_TRAIN)
        assert main(["train", "--config", path, "--out", str(tmp_path / "o")]) == 0
        out = capsys.readouterr().out
        assert "vanilla" in out and "dual" in out and "multistep" in out
        assert "multistep-minus-dual" in out

    def test_two_language_world_with_multistep_rejected(self, tmp_path, capsys):
        cfg = json.loads(json.dumps(TINY_TRAIN))
        cfg["train"]["world"]["k"] = 2
        path = write_config(tmp_path, cfg)
        assert main(["train", "--config", path, "--out", str(tmp_path / "o")]) == 2
        assert "degenerates" in capsys.readouterr().err

    def test_seed_flag_overrides_seed_list(self, tmp_path):
        cfg = json.loads(json.dumps(TINY_TRAIN))
        cfg["train"]["phases"] = ["vanilla"]
        cfg["train"]["seeds"] = [1, 2, 3]
        path = write_config(tmp_path, cfg)
        out = tmp_path / "o"
        assert main(["train", "--config", path, "--out", str(out), "--seed", "9"]) == 0
        lines = (out / "accuracy.csv").read_text().splitlines()
        seeds = {ln.split(",")[1] for ln in lines[1:]}
        assert seeds == {"9"}


class TestReport:
    def test_resummarizes_existing_csv(self, tmp_path, capsys):
        path = write_config(tmp_path, TINY_TRAIN)
        out = tmp_path / "o"
        assert main(["train", "--config", path, "--out", str(out)]) == 0
        first = (out / "summary.csv").read_bytes()
        capsys.readouterr()
        assert main(["report", "--out", str(out)]) == 0
        assert "mean_p_hat" in capsys.readouterr().out
        assert (out / "summary.csv").read_bytes() == first

    def test_missing_dir_rejected(self, tmp_path, capsys):
        assert main(["report", "--out", str(tmp_path / "nope")]) == 2
