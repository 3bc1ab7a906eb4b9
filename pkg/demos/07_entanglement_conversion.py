"""Faithful conversion of superposition into bipartite entanglement.

Copying free-basis labels onto two registers and filtering both sides turns
every pure state into a bipartite state whose Schmidt rank equals its
superposition rank - exactly because the free states are linearly
independent. Extending the label-copying rule to a linearly dependent
"extra" state breaks faithfulness, which is the structural reason linear
independence is the right requirement.
"""

import numpy as np

import superpos as sp

b = sp.symmetric_basis_d3()
conv = sp.faithful_conversion(b)

for label, psi in [
    ("single free state", sp.PureState(b.state(0))),
    ("two-state superposition", sp.PureState.normalized(b.state(0) + b.state(1))),
    ("full-rank state", sp.PureState(np.array([1, 0, 0], dtype=complex))),
]:
    out = sp.PureState.normalized(conv.convert(psi))
    print(f"{label}: superposition rank {sp.superposition_rank(psi, b)} -> "
          f"Schmidt rank {sp.schmidt_rank(out, 3, 3)}")

self_local = sp.faithful_conversion(b, [b.state(i) for i in range(3)])
print(f"\nnon-orthogonal local registers: per-side filter probability "
      f"{self_local.probability}, total {self_local.success_probability}")

# a linearly dependent extension is unfaithful: the copied image of
# (|c_1> + |c_2>)/sqrt(2) on an orthonormal pair is entangled, although the
# extended label set would call it a rank-one free state
b0 = sp.orthonormal_basis(2)
conv0 = sp.faithful_conversion(b0)
extra = sp.PureState.normalized(b0.state(0) + b0.state(1))
image = sp.PureState.normalized(conv0.convert(extra))
print("\nimage Schmidt rank of the dependent extension:", sp.schmidt_rank(image, 2, 2))
