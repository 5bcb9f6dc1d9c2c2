"""
The optimizer on its own
========================

``run_swarm`` maximizes any function over the unit hypercube. A shifted
sphere is the simplest sanity check.
"""

import matplotlib.pyplot as plt
import numpy as np

from termswarm import SwarmConfig, run_swarm


def sphere(x):
    return -float(((x - 0.3) ** 2).sum())


for seed in range(5):
    result = run_swarm(sphere, SwarmConfig(rng_seed=seed))
    print(f"seed {seed}: best {result.fitness:.2e} at {np.round(result.position, 4)}")

######################################################################
# The global best never gets worse from one iteration to the next.

result = run_swarm(sphere, SwarmConfig(rng_seed=0, max_iterations=100))
plt.semilogy(-np.array(result.trace))
plt.xlabel("iteration")
plt.ylabel("distance to optimum (squared)")
plt.savefig("sphere_trace.png", dpi=100)
