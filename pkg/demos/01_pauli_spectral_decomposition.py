"""Spectral decomposition of the sigma_x / sigma_y mixing channel.

The channel phi(X) = p sx X sx + (1-p) sy X sy has peripheral
eigenvalues {1, -1}; everything else decays like |1-2p|^n.  This script
computes the decomposition numerically and compares every piece with
the closed form.
"""

import numpy as np

from ergochan import (
    decay_fit,
    fixed_space,
    pauli_decomposition_expected,
    pauli_xy_channel,
    peripheral_decomposition,
    superoperator,
    verify,
)
from ergochan.linalg import operator_norm

p = 0.3
ch = pauli_xy_channel(p)
print(f"channel: {ch.label}")
print("verification:", verify(ch))

L = superoperator(ch)
fs = fixed_space(L)
print(f"\nfixed-space dimension: {fs.dimension}")
print("basis element (proportional to the identity):")
print(np.round(fs.basis[0], 6))

decomp = peripheral_decomposition(L)
print(f"\nperipheral eigenvalues: {decomp.lambdas}")
print(f"projector ranks: {decomp.projector_ranks}")
print(f"stable spectral radius: {decomp.stable_spectral_radius:.6f}"
      f"  (closed form |1-2p| = {abs(1 - 2 * p)})")

expected = pauli_decomposition_expected(p)
for k, (P, Q) in enumerate(zip(decomp.projectors, expected.projectors)):
    print(f"projector {k} vs closed form: residual {operator_norm(P - Q):.2e}")
print(f"stable part vs closed form: residual "
      f"{operator_norm(decomp.stable - expected.stable):.2e}")

fit = decay_fit(decomp.stable, 20)
print(f"\ndecay certificate: ||S^n|| <= {fit.M:.4f} / {1 + fit.epsilon:.4f}^n")
print("first five norms:", [round(x, 6) for x in fit.norms[:5]])
print("closed form      :", [round(abs(1 - 2 * p) ** n, 6) for n in range(1, 6)])
