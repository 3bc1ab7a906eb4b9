"""Free Kraus operators: recognition, completion, and the MFO/FO gap.

A Kraus operator is free when it sends every pure free state onto a single
pure free state. Trace-decreasing collections of free operators can always
be completed to a trace-preserving free channel. Channels that merely
preserve the free set (maximally free operations) form a strictly larger
class: the Bloch-geometry channel below is maximally free but admits no
free Kraus decomposition for overlapping bases.
"""

import numpy as np

import superpos as sp

b = sp.qubit_free_basis(0.5)

# recognition: the identity is free, the Hadamard is not (for a = 1/2)
print("identity free form:", sp.is_free_kraus(np.eye(2, dtype=complex), b))
hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
print("Hadamard recognized as free?", sp.is_free_kraus(hadamard, b) is not None)

# completion: a single contraction is completed by free operators
partial = [np.sqrt(0.4) * np.eye(2, dtype=complex)]
completion = sp.complete_free(partial, b)
total = sum(k.conj().T @ k for k in partial + completion)
print("\ncompletion restores identity to", np.abs(total - np.eye(2)).max())
print("completion operators are free:",
      all(sp.is_free_kraus(k, b) is not None for k in completion))

# a selective free measurement never increases superposition on average
channel = sp.free_channel(partial, b)
psi = sp.PureState.normalized(b.state(0) + 1j * b.state(1))
before = sp.l1_measure(psi.density(), b).value
outcomes = sp.measure_selective(channel, psi.density())
after = sum(p * sp.l1_measure(rho, b).value for p, rho in outcomes)
print(f"\nl1 before {before:.6f} >= average after {after:.6f}")

# maximally free but not free: the free-set-preserving Bloch channel
phi_channel = sp.channel_from_bloch(sp.build_phi(0.5, np.pi / 4, 0.0))
print("\nchannel preserves the free set:", sp.is_mfo(phi_channel, b))
print("certificate residual (nonzero => no free Kraus decomposition):",
      sp.fo_certificate_residual(0.5, np.pi / 4))
