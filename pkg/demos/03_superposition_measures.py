"""The four superposition quantifiers.

All four vanish exactly on free states, never increase on average under
selective free measurements, and (except the pure-state rank) are convex.
Entropic values use the natural logarithm.
"""

import numpy as np

import superpos as sp

b0 = sp.orthonormal_basis(2)
plus = sp.PureState(np.array([1, 1]) / np.sqrt(2))
print("maximally coherent qubit, orthonormal basis:")
print("  l1        ", sp.l1_measure(plus.density(), b0).value)
print("  rel. ent. ", sp.rel_entropy_measure(plus.density(), b0).value, "(= ln 2)")
print("  rank      ", sp.rank_measure(plus, b0).value, "(= ln 2)")
print("  robustness", sp.robustness(plus.density(), b0).value)

b = sp.qubit_free_basis(0.5)
psi = sp.PureState.normalized(b.state(0) + b.state(1))
print("\nequal superposition of overlapping free states (a = 1/2):")
print("  l1        ", sp.l1_measure(psi.density(), b).value)
rep = sp.rel_entropy_measure(psi.density(), b)
print("  rel. ent. ", rep.value, "closest free weights", np.round(rep.extra["weights"], 6))
rob = sp.robustness(psi.density(), b)
print("  robustness", rob.value, "(certificate s =", rob.certificate["s"], ")")

free = sp.free_mixture(b, [0.3, 0.7])
print("\nevery measure vanishes on a free mixture:")
print(" ", sp.l1_measure(free, b).value, sp.rel_entropy_measure(free, b).value,
      sp.robustness(free, b).value, sp.rank_measure(free, b).value)

cands = sp.candidate_states_d3()
b3 = sp.symmetric_basis_d3()
print("\nthe four l1-maximal d=3 states all reach l1 = 4:")
print(" ", [round(sp.l1_measure(c.density(), b3).value, 9) for c in cands])
