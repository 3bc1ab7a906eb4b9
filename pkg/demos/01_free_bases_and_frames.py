"""Free bases and their reciprocal frames.

A free basis is any normalized, linearly independent set of state vectors;
orthogonality is not required. The reciprocal frame is the unique dual set
biorthogonal to it, and its conditioning (the smallest singular value of the
basis matrix) controls how much of the basis can be "filtered" into an
orthonormal one.
"""

import numpy as np

import superpos as sp

# the computational basis: the orthonormal special case
ortho = sp.orthonormal_basis(3)
print("orthonormal basis: Gram =\n", np.round(ortho.gram.real, 6))
print("filter probability:", sp.filter_probability(ortho))

# a symmetric d=3 basis with pairwise overlap 1/2
b = sp.symmetric_basis_d3()
print("\nsymmetric d=3 basis: Gram =\n", np.round(b.gram.real, 6))
print("reciprocal frame columns (x sqrt(2)):\n", np.round(b.reciprocal.real * np.sqrt(2), 6))
print("biorthogonality defect:",
      np.linalg.norm(b.reciprocal.conj().T @ b.vectors - np.eye(3)))
print("filter probability (= sigma_min^2):", sp.filter_probability(b))

# a qubit basis at arbitrary overlap
for a in (0.0, 0.5, 0.9):
    qb = sp.qubit_free_basis(a)
    print(f"\nqubit basis, overlap {a}: <c1|c2> = {qb.gram[0, 1].real:.6f}, "
          f"filter probability = {sp.filter_probability(qb):.6f}")
