import json
import subprocess

import pytest


def run_lab(*args):
    """The plotting package consumes the primary tool only via its CLI."""
    proc = subprocess.run(["ssf-lab", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


@pytest.fixture(scope="session")
def golden(tmp_path_factory):
    """Golden artifacts produced by fresh ssf/mu/det runs."""
    root = tmp_path_factory.mktemp("golden")

    def c(x):
        return {"re": float(x), "im": 0.0}

    cfg = {
        "model": {"type": "halfline_laplacian"},
        "perturbation": {
            "sites": [1, 2],
            "weights": [[c(1.0), c(0.3)], [c(0.2), c(0.8)]],
            "j": [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]],
        },
        "lambda_grid": {"start": -1.8, "stop": 1.8, "count": 13},
        "seed": 1,
    }
    cfg_path = root / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))

    records = root / "records.jsonl"
    run_lab("ssf", "--config", str(cfg_path), "--out", str(records))

    records_csv = root / "records.csv"
    run_lab("ssf", "--config", str(cfg_path), "--out", str(records_csv),
            "--format", "csv")

    mu = root / "mu.jsonl"
    with open(mu, "w") as fh:
        for lam in (-0.9, -0.3, 0.4, 1.1):
            fh.write(run_lab("mu", "--config", str(cfg_path),
                             "--lambda", str(lam), "--method", "index"))

    phases = root / "phases.jsonl"
    run_lab("mu", "--config", str(cfg_path), "--lambda", "0.4",
            "--method", "flow", "--out", str(root / "mu_flow.jsonl"),
            "--trace", str(phases))

    det = root / "det.csv"
    run_lab("det", "--config", str(cfg_path), "--lambda", "0.4",
            "--out", str(det))

    return {
        "records": records,
        "records_csv": records_csv,
        "mu": mu,
        "phases": phases,
        "det": det,
        "root": root,
    }
