"""Benchmark the compiled polynomial kernel against the pure-Python twin.

The kernel is chosen at import time, so each backend runs in its own
subprocess with JETSYM_BACKEND set.  Workloads exercise the paths that
dominate real use: canonical-form arithmetic (expansion and large
products) and a full vector prolongation cascade.

Usage: python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workload():
    import random

    from jetsym.expr import normalize
    from jetsym.gauge import GaugeFunction, darboux_derivative
    from jetsym.jets import JetSpec
    from jetsym.parsing import parse
    from jetsym.prolong import PointVectorField, prolong_mu_vector, prolong_standard
    from jetsym.symmetry import (
        DifferentialEquation,
        check_symmetry,
    )

    timings = {}

    t0 = time.perf_counter()
    big = parse("(1 + x + u + u_x + u_xx)^8")
    prod = normalize(big * parse("(1 - x + u^2)^4"))
    timings["expand"] = time.perf_counter() - t0
    assert prod is not None

    spec = JetSpec(("x", "t"), ("u", "v"), 3)
    X = PointVectorField(
        spec,
        (parse("x*u + t"), parse("u*v")),
        (parse("u^2 - x"), parse("x*t + v")),
    )
    gamma = GaugeFunction(spec, (
        (parse("1"), parse("x*u + t*v")),
        (parse("0"), parse("1")),
    ))
    mu = darboux_derivative(gamma)  # flat by construction
    t0 = time.perf_counter()
    for _ in range(3):
        prolong_standard(X, 3)
        prolong_mu_vector(X, mu, 3, path_check=True)
    timings["prolong"] = time.perf_counter() - t0

    ode = JetSpec(("x",), ("u",), 2)
    eq = DifferentialEquation.from_strings(ode, {"u_xx": "(1+x^2)*u + u_x^2"})
    rng = random.Random(1)
    t0 = time.perf_counter()
    for _ in range(20):
        xi = parse(f"{rng.randint(-3, 3)}*x + {rng.randint(-3, 3)}*u")
        phi = parse(f"{rng.randint(-3, 3)}*u^2 + {rng.randint(-3, 3)}")
        F = PointVectorField(ode, (xi,), (phi,))
        check_symmetry(F, eq, "lambda", lam=parse("x + u_x"))
    timings["symmetry"] = time.perf_counter() - t0

    return timings


def run_backend(backend, repeat):
    env = dict(os.environ, JETSYM_BACKEND=backend)
    best = {}
    for _ in range(repeat):
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        t = json.loads(out.stdout)
        for k, v in t.items():
            best[k] = min(best.get(k, v), v)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", action="store_true")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(workload()))
        return

    results = {}
    for backend in ("py", "c"):
        try:
            results[backend] = run_backend(backend, args.repeat)
        except subprocess.CalledProcessError as err:
            print(f"backend {backend!r} unavailable:\n{err.stderr}", file=sys.stderr)

    if "py" not in results:
        sys.exit("pure-Python backend failed; nothing to compare")
    print(f"{'workload':<12}{'python':>10}{'compiled':>10}{'speedup':>9}")
    for name in results["py"]:
        py = results["py"][name]
        if "c" in results:
            cy = results["c"][name]
            print(f"{name:<12}{py:>10.4f}{cy:>10.4f}{py / cy:>8.2f}x")
        else:
            print(f"{name:<12}{py:>10.4f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
