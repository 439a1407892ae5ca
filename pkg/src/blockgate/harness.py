"""Randomised oracle verification and construction-time benchmarks."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from blockgate import _backend
from blockgate.embed import embed, embed_binary, embed_nary, swap_chain_oracle
from blockgate.gates import GateSpec, custom_gate
from blockgate.linalg import max_deviation, random_unitary

DEFAULT_SEED = 42
VERIFY_TOL = 1e-9


@dataclass
class TrialResult:
    index: int
    arity: int
    positions: tuple[int, ...]
    deviation: float
    swaps: int


def random_placement(rng: np.random.Generator, k: int, d: int, max_arity: int = 3) -> tuple[GateSpec, tuple[int, ...]]:
    """A Haar-random gate on randomly chosen distinct wires (any order)."""
    top = min(max_arity, k)
    arity = int(rng.integers(1, top + 1))
    u = random_unitary(d**arity, rng)
    positions = tuple(int(p) + 1 for p in rng.choice(k, size=arity, replace=False))
    return custom_gate(u, arity, d, name=f"random{arity}"), positions


def run_trial(seed: int, index: int, k: int, d: int, max_arity: int = 3) -> TrialResult:
    # each trial depends only on (seed, index)
    rng = np.random.default_rng([seed, index])
    gate, positions = random_placement(rng, k, d, max_arity)
    reference, swaps = swap_chain_oracle(gate, k, positions)
    dev = max_deviation(embed(gate, positions, k), reference)
    dev = max(dev, max_deviation(embed_nary(gate, positions, k), reference))
    if gate.arity == 2:
        dev = max(dev, max_deviation(embed_binary(gate, k, *positions), reference))
    return TrialResult(index, gate.arity, positions, dev, swaps)


def verify_trials(trials: int, seed: int = DEFAULT_SEED, k: int = 6, d: int = 2, max_arity: int = 3) -> list[TrialResult]:
    return [run_trial(seed, i, k, d, max_arity) for i in range(trials)]


@dataclass
class BenchRecord:
    run: int
    block_seconds: float
    oracle_seconds: float
    swaps: int
    deviation: float


@dataclass
class BenchReport:
    k: int
    d: int
    gate: str
    positions: tuple[int, ...]
    backend: str
    records: list[BenchRecord] = field(default_factory=list)

    @property
    def median_block(self) -> float:
        return statistics.median(r.block_seconds for r in self.records)

    @property
    def median_oracle(self) -> float:
        return statistics.median(r.oracle_seconds for r in self.records)

    @property
    def max_deviation(self) -> float:
        return max(r.deviation for r in self.records)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "gate": self.gate,
            "positions": list(self.positions),
            "backend": self.backend,
            "median_block_seconds": self.median_block,
            "median_oracle_seconds": self.median_oracle,
            "max_deviation": self.max_deviation,
            "runs": [vars(r) for r in self.records],
        }


def run_benchmark(gate: GateSpec, k: int, positions: tuple[int, ...], repeat: int = 5) -> BenchReport:
    """Time the block construction against the SWAP-chain oracle.

    The block timing covers only the embedding; the oracle timing covers
    building every adjacent-SWAP factor and all full-size products.
    """
    report = BenchReport(k, gate.d, gate.name, tuple(positions), _backend.name())
    for run in range(repeat):
        t0 = time.perf_counter()
        block = embed(gate, positions, k)
        t1 = time.perf_counter()
        reference, swaps = swap_chain_oracle(gate, k, positions)
        t2 = time.perf_counter()
        report.records.append(BenchRecord(run, t1 - t0, t2 - t1, swaps, max_deviation(block, reference)))
        del block, reference
    return report
