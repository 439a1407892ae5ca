"""Compare the compiled kernels with the numpy fallback.

Times block construction, a permutation-times-dense product and the
SWAP-chain oracle on both backends and checks that their outputs agree.

    python3 benchmarks/bench_backends.py --qubits 10 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from blockgate import _backend
from blockgate.embed import embed_binary, swap_chain_oracle, swap_pair
from blockgate.gates import standard_gate
from blockgate.linalg import matmul, max_deviation


def timed(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qubits", type=int, default=10)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--json", help="write results to this path")
    args = p.parse_args(argv)

    k = args.qubits
    cnot = standard_gate("cnot")
    rng = np.random.default_rng(0)
    dense = rng.standard_normal((2**k, 2**k)) + 0j
    perm = swap_pair(k, 2, k - 1)
    cases = {
        "embed_binary": lambda: embed_binary(cnot, k, 2, k - 1),
        "sparse_matmul": lambda: matmul(perm, dense),
        "oracle": lambda: swap_chain_oracle(cnot, k, (2, k - 1)).matrix,
    }

    backends = _backend.available()
    results: dict[str, dict[str, float]] = {}
    outputs: dict[str, dict[str, np.ndarray]] = {}
    for name in backends:
        with _backend.use_backend(name):
            results[name], outputs[name] = {}, {}
            for case, fn in cases.items():
                results[name][case], outputs[name][case] = timed(fn, args.repeat)

    print(f"k={k}, median of {args.repeat} runs, seconds")
    print(f"{'case':<15}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    worst = 0.0
    for case in cases:
        row = f"{case:<15}" + "".join(f"{results[b][case]:>12.4g}" for b in backends)
        if len(backends) == 2:
            row += f"{results['python'][case] / results['compiled'][case]:>12.2f}x"
            worst = max(worst, max_deviation(outputs["python"][case], outputs["compiled"][case]))
        print(row)
    if len(backends) == 2:
        print(f"max deviation between backends: {worst:.3g}")
    else:
        print("compiled extension not built; only the fallback was timed")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"k": k, "repeat": args.repeat, "seconds": results, "max_deviation": worst}, fh, indent=2)
    return 0 if worst <= 1e-9 else 2


if __name__ == "__main__":
    sys.exit(main())
