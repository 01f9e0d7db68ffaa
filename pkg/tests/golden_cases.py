"""CLI invocations with frozen reports under tests/golden/.

Run ``python tests/golden_cases.py`` from the repository root to rewrite the
golden files after an intentional change to the report format.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

# name -> (argv, extra environment, expected exit code)
CASES = {
    "conormal_cone_all": (["conormal", "corpus/cone3.var", "--d", "2", "--all-charts"], {}, 0),
    "conormal_plane_c4_d3": (["conormal", "corpus/plane_in_c4.var", "--d", "3", "--chart", "1"], {}, 0),
    "nash_umbrella": (["nash", "corpus/umbrella.var", "--all-charts"], {}, 0),
    "fiber_cone_origin": (["fiber", "corpus/cone3.var", "--d", "2", "--point", "0,0,0"], {}, 0),
    "fiber_cone_gaussian": (["fiber", "corpus/cone3.var", "--d", "2", "--point", "2,0,2i"], {}, 0),
    "integral_origin": (["check-integral", "corpus/origin_fiber.zvar", "--n", "3", "--d", "1"], {}, 0),
    "integral_fails": (["check-integral", "corpus/not_integral.zvar", "--n", "3", "--d", "1"], {}, 1),
    "characterize_origin": (["characterize", "corpus/origin_fiber.zvar", "--n", "3", "--d", "1"], {}, 0),
    "whitney_a_umbrella": (["whitney-a", "corpus/umbrella.var", "--y-axes", "3"], {}, 1),
    "whitney_a_saddle": (["whitney-a", "corpus/saddle.var", "--y-axes", "1"], {}, 0),
    "whitney_w_umbrella": (["whitney-w", "corpus/umbrella.var", "--y-axes", "3", "--curves", "8"], {}, 1),
    "delta_5_3_2": (["delta", "--n", "5", "--d", "3", "--t", "2", "--trials", "500", "--seed", "1"], {}, 0),
    "polar_cone": (["polar", "corpus/cone3.var", "--ell", "2", "--k", "1"], {}, 0),
    "transversality_cone": (["transversality", "corpus/cone3.var", "--samples", "10"], {}, 0),
    "empty_variety": (["conormal", "corpus/empty.var", "--d", "1"], {}, 2),
    "bad_point": (["fiber", "corpus/cone3.var", "--d", "2", "--point", "1,0,0"], {}, 2),
    "resource_cap": (["conormal", "corpus/umbrella.var", "--d", "2"], {"CONORMAL_MAX_BASIS": "3"}, 3),
}


def run_case(name: str, hashseed: str = "0") -> subprocess.CompletedProcess:
    argv, env_extra, _ = CASES[name]
    env = dict(os.environ, PYTHONHASHSEED=hashseed, **env_extra)
    return subprocess.run(
        [sys.executable, "-m", "dconormal.cli", *argv, "--json-only"],
        cwd=ROOT, env=env, capture_output=True, text=True, timeout=600,
    )


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    for name, (_, _, code) in CASES.items():
        proc = run_case(name)
        if proc.returncode != code:
            raise SystemExit(f"{name}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
        json.loads(proc.stdout)
        (GOLDEN / f"{name}.json").write_text(proc.stdout)
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
