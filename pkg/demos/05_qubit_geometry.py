"""Qubit Bloch geometry: the maximal-superposition state and what it buys.

For overlap a > 0 the state at Bloch vector (-1, 0, 0) is the farthest from
the free segment and the only state from which every other qubit state is
reachable deterministically by free operations. Consuming one copy of it
also implements any unitary on another qubit through a two-qubit free
channel.
"""

import numpy as np

import superpos as sp
from superpos.linalg import dagger, partial_trace

a = 0.5
b = sp.qubit_free_basis(a)
m2 = sp.max_superposition_state()
print("maximal state Bloch vector:", np.round(sp.bloch_vector(m2.density()), 9))

# deterministic generation of an arbitrary pure target from the maximal state
theta, phi = 1.1, 2.2
channel = sp.generate_from_m2(theta, phi, a)
out = sp.apply_channel(channel, m2.density())
print("generated target Bloch vector:", np.round(sp.bloch_vector(out), 9))
print("wanted                       :",
      np.round([np.cos(phi) * np.sin(theta), np.sin(phi) * np.sin(theta), np.cos(theta)], 9))

# the free-set-preserving channel family is completely positive everywhere
spectrum = np.linalg.eigvalsh(sp.choi(sp.build_phi(a, theta, phi)))
print("\nChoi spectrum of the Bloch channel:", np.round(spectrum, 9))

# consuming the maximal state implements a unitary on a second qubit
u = np.array([[0, 1], [-1, 0]], dtype=complex)  # a bit-flip-like rotation
ch = sp.inject_unitary(u, a)
rho = sp.qubit_state(0.7, 0.3).density()
joint = sp.DensityMatrix(np.kron(rho.mat, m2.density().mat))
reduced = partial_trace(sp.apply_channel(ch, joint).mat, 2, 2, keep="a")
print("\nunitary injection error:",
      np.abs(reduced - u @ rho.mat @ dagger(u)).max())

# a coarse conversion landscape from the equatorial state
rows = sp.conversion_heatmap(a, (np.pi / 2, 0.0), 8)
print("\n8x16 conversion landscape from (pi/2, 0):")
print("  max cell probability:", rows[:, 2].max())
print("  min cell probability:", rows[:, 2].min())
