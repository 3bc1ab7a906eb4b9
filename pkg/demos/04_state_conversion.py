"""Optimal pure-state conversion and its dual certificates.

Two pure states of equal superposition rank r are connected by exactly r!
free operators mapping source to target; the best success probability is
the optimum of a small linear matrix inequality, and any feasible dual
matrix certifies an upper bound on it. The d=3 example shows that none of
the l1-maximal states can reach the full-rank computational target
deterministically: a scaled-identity dual caps them at 16/17.
"""

import numpy as np

import superpos as sp
from superpos.linalg import dagger
from superpos.sdp import LmiProblem

b = sp.symmetric_basis_d3()
target = sp.PureState(np.array([1, 0, 0], dtype=complex))
print("target free coefficients (x sqrt 2):",
      np.round(b.to_free_frame(target.amp) * np.sqrt(2), 6))

for i, cand in enumerate(sp.candidate_states_d3()):
    sol = sp.max_conversion_prob(cand, target, b)
    print(f"candidate {i}: optimal probability {sol.value:.9f} "
          f"(dual bound {sol.dual:.9f}, gap {sol.gap:.1e})")

ts = sp.enumerate_transformers(sp.candidate_states_d3()[0], target, b)
problem = LmiProblem.from_matrices([dagger(f) @ f for f in ts.operators])
lam = (16 / 17) * np.eye(3) / 3
feasible, bound = sp.verify_dual(lam, problem)
print(f"\nscaled-identity dual: feasible={feasible}, bound={bound:.9f} = 16/17")

# self-conversion is deterministic and comes with an explicit free channel
psi = sp.PureState.normalized(b.state(0) + 0.5 * b.state(1) + 0.25j * b.state(2))
sol = sp.max_conversion_prob(psi, psi, b)
print(f"\nself-conversion value {sol.value:.9f}; completion attached:",
      sol.completion is not None)

# at zero overlap the uniform superposition reaches every full-rank target
b0 = sp.orthonormal_basis(2)
plus = sp.PureState(np.array([1, 1]) / np.sqrt(2))
phi = sp.PureState(np.array([0.8, 0.6j]))
print("coherence limit, uniform source:",
      sp.max_conversion_prob(plus, phi, b0).value)
