#!/usr/bin/env python3
"""Basic test to verify the end-to-end workflow"""

import json
import tempfile
from pathlib import Path

from caplab import Experiment, RunConfig
from caplab.exporters import get_exporter


def test_basic_workflow(tmp_path):
    """Caps, solve, verify and nonlin on a small disk"""
    print("Testing caplab core workflow")

    print("\n1. Building config...")
    config = RunConfig.from_dict({
        "domain": {"preset": "disk", "params": {"radius": 1.0}, "grid_h": 0.0625},
        "nonlinearity": {"kind": "power", "p": 3.0, "N": 3},
        "solver": {"mode": "grid", "N": 2},
        "caps": {"n_directions": 8},
        "kelvin": {"x0": [1.0, 0.0], "N": 3},
        "checks": {"enabled": ["cap_monotonicity", "max_location", "global_bound"]},
        "output_dir": str(tmp_path),
    })
    experiment = Experiment(config, tmp_path)
    print(f"   OK Output directory: {experiment.output_dir}")

    print("\n2. Computing caps...")
    caps = experiment.run("caps")
    assert caps.passed
    omega_nodes = caps.report["omega_star"]["nodes"]
    print(f"   OK Omega* has {omega_nodes} nodes")
    assert omega_nodes > 0

    print("\n3. Solving...")
    solve = experiment.run("solve")
    solution = solve.report["solution"]
    print(f"   Max u = {solution['max']:.4f}")
    assert solution["max"] > 0

    print("\n4. Verifying...")
    verify = experiment.run("verify")
    for report in verify.report["verification"]["reports"]:
        print(f"   {report['name']}: {'PASS' if report['pass'] else 'FAIL'} "
              f"(margin {report['margin']:.3g})")
    assert verify.passed

    print("\n5. Checking hypotheses...")
    config.nonlin.lambda1 = 5.7832
    nonlin = experiment.run("nonlin")
    print(f"   H1/H2/H3: {nonlin.report['hypotheses']['pass']}")
    assert nonlin.passed

    print("\n6. Exporting the check table to text...")
    rows = [{"check": r["name"], "pass": r["pass"]}
            for r in verify.report["verification"]["reports"]]
    text_path = tmp_path / "checks_summary.txt"
    get_exporter("text").export({"columns": ["check", "pass"], "rows": rows}, text_path)
    print(f"   OK Exported to: {text_path}")

    written = sorted(p.name for p in Path(tmp_path).iterdir())
    assert {"caps.json", "solve.json", "verify.json", "nonlin.json",
            "effective_config.json"} <= set(written)
    effective = json.loads((tmp_path / "effective_config.json").read_text(encoding="utf-8"))
    assert effective["nonlin"]["lambda1"] == 5.7832

    print("\nSUCCESS: All steps passed.")
    print(f"\nFiles created in: {tmp_path}")
    for name in written:
        print(f"   - {name}")

    return True


if __name__ == "__main__":
    try:
        with tempfile.TemporaryDirectory() as tmp:
            test_basic_workflow(Path(tmp))
    except Exception as e:
        print(f"\nERROR: Test failed: {e}")
        import traceback
        traceback.print_exc()
