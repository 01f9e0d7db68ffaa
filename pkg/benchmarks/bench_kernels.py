"""Compare the compiled and pure-Python polynomial kernels.

Each workload runs in a fresh interpreter per backend, because the backend
is chosen once at import time.  Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKLOADS = {
    "katsura4_grevlex": """
        from dconormal.exactpoly import VariableSet, Ideal
        from dconormal.parsing import parse_polynomial
        vs = VariableSet(("u0", "u1", "u2", "u3", "u4"))
        eqs = [
            "u0 + 2*u1 + 2*u2 + 2*u3 + 2*u4 - 1",
            "u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 + 2*u4^2 - u0",
            "2*u0*u1 + 2*u1*u2 + 2*u2*u3 + 2*u3*u4 - u1",
            "u1^2 + 2*u0*u2 + 2*u1*u3 + 2*u2*u4 - u2",
            "2*u1*u2 + 2*u0*u3 + 2*u1*u4 - u3",
        ]
        def work():
            Ideal([parse_polynomial(e, vs) for e in eqs]).groebner()
    """,
    "umbrella_conormal_all_charts": """
        from dconormal.cli import parse_variety
        from dconormal.conormal import conormal_all_charts
        def work():
            X = parse_variety("vars: x y z\\nx^2 - y^2*z")
            conormal_all_charts(X, 2)
    """,
    "cone_polar_draws": """
        from dconormal.cli import parse_variety
        from dconormal.polar import polar_draws
        def work():
            X = parse_variety("vars: x y z\\nx^2 + y^2 + z^2")
            polar_draws(X, 2, 1, draws=5, seed=0)
    """,
    "cyclic4_lex": """
        from dconormal.exactpoly import VariableSet, Ideal, LEX
        from dconormal.parsing import parse_polynomial
        vs = VariableSet(("a", "b", "c", "d"))
        eqs = ["a + b + c + d", "a*b + b*c + c*d + d*a",
               "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]
        def work():
            Ideal([parse_polynomial(e, vs) for e in eqs]).groebner(LEX)
    """,
}

RUNNER = """
import time, json
import dconormal
{body}
best = float("inf")
for _ in range({repeat}):
    t0 = time.perf_counter()
    work()
    best = min(best, time.perf_counter() - t0)
print(json.dumps({{"backend": dconormal.KERNEL_BACKEND, "seconds": best}}))
"""


def run_one(name: str, pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["DCONORMAL_PURE_PYTHON"] = "1"
    else:
        env.pop("DCONORMAL_PURE_PYTHON", None)
    code = RUNNER.format(body=textwrap.dedent(WORKLOADS[name]), repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("workloads", nargs="*", default=list(WORKLOADS))
    args = ap.parse_args(argv)
    rows = []
    for name in args.workloads:
        fast = run_one(name, pure=False, repeat=args.repeat)
        slow = run_one(name, pure=True, repeat=args.repeat)
        rows.append({
            "workload": name,
            "compiled_backend": fast["backend"],
            "compiled_s": round(fast["seconds"], 4),
            "python_s": round(slow["seconds"], 4),
            "speedup": round(slow["seconds"] / fast["seconds"], 2),
        })
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'workload':32} {'backend':8} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
        for r in rows:
            print(f"{r['workload']:32} {r['compiled_backend']:8} {r['compiled_s']:>11.4f} "
                  f"{r['python_s']:>10.4f} {r['speedup']:>7.2f}x")
    if any(r["compiled_backend"] != "cython" for r in rows):
        print("note: the compiled kernel is not built; both columns use the fallback",
              file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
