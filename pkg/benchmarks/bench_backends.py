"""Compare the numba kernels against the pure-numpy fallback.

Times the two workloads that dominate real runs: the single-site paired
trajectory (thousands of 4x4 conjugations, where call overhead matters)
and the three-site protocol step (64x64, where BLAS does the work).

Run:  python benchmarks/bench_backends.py
"""

import math
import time

import numpy as np

from qcollide import ModelConfig, ProtocolEngine, antipodal_pair, paired_trajectory_distances
from qcollide.backend import numba_available
from qcollide.protocol import initial_joint_state
from qcollide.states import DensityMatrix

PAIRS_1X1 = 200
STEPS = 20
REPEAT_3X3 = 300


def bench_paired_1x1(backend: str) -> float:
    engine = ProtocolEngine(ModelConfig(n_sites=1, eta=math.pi / 2, omega=0.5),
                            integrity_checks=True, backend=backend)
    a, b = antipodal_pair()
    rho_a, rho_b = a.to_density_matrix(), b.to_density_matrix()
    start = time.perf_counter()
    for _ in range(PAIRS_1X1):
        paired_trajectory_distances(engine, rho_a, rho_b, STEPS)
    return time.perf_counter() - start


def bench_step_3x3(backend: str) -> float:
    engine = ProtocolEngine(ModelConfig.uniform(3, eta=1.2, omega=0.5),
                            integrity_checks=False, backend=backend)
    joint = np.array(initial_joint_state(
        DensityMatrix.computational_basis(3, "100")).mat)
    start = time.perf_counter()
    for _ in range(REPEAT_3X3):
        joint = engine.step_matrix(joint)
    return time.perf_counter() - start


def main():
    backends = ["numpy"]
    if numba_available():
        backends.append("numba")
        # trigger compilation outside the timed region
        bench_paired_1x1("numba")
        bench_step_3x3("numba")
    else:
        print("numba not importable; timing the numpy fallback only")

    results = {}
    for name, bench, label in (
        ("paired-1x1", bench_paired_1x1,
         f"{PAIRS_1X1} paired trajectories x {STEPS} steps (4x4, checks on)"),
        ("step-3x3", bench_step_3x3,
         f"{REPEAT_3X3} protocol steps (64x64, checks off)"),
    ):
        results[name] = {b: bench(b) for b in backends}
        line = f"{name:12s} {label:55s}"
        for b in backends:
            line += f"  {b}: {results[name][b]:7.3f}s"
        if "numba" in results[name]:
            speedup = results[name]["numpy"] / results[name]["numba"]
            line += f"  speedup: {speedup:5.1f}x"
        print(line)


if __name__ == "__main__":
    main()
