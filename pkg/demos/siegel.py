"""Siegel half-plane, Cayley transform and polarization search."""

import numpy as np

from eigenperiod.siegel import (
    cayley_from_bounded,
    cayley_to_bounded,
    find_polarization,
    is_siegel_point,
    random_siegel_point,
    random_sp2g_z,
    riemann_frobenius,
    symplectic_action,
)

rng = np.random.default_rng(7)
Z = random_siegel_point(2, rng)
print("random Z in H_2:", is_siegel_point(Z))

# Sp(4, Z) acts on H_2
M = random_sp2g_z(2, rng)
print("M.Z still in H_2:", is_siegel_point(symplectic_action(M, Z)))

# Cayley transform to the bounded model and back
W = cayley_to_bounded(Z)
print("singular values of W:", np.round(np.linalg.svd(W, compute_uv=False), 4))
print("round trip error:", float(np.max(np.abs(cayley_from_bounded(W) - Z))))

# a product of elliptic curves carries the principal polarization
P = np.diag([1j, 2j])
hits = find_polarization(P, 1)
print(f"polarizations of diag(i, 2i) with entries in [-1, 1]: {len(hits)}")
for A in hits[:3]:
    print(A.tolist(), riemann_frobenius(P, A, "period"))

# a generic torus has none
P = np.sqrt(np.array([[-2, -3], [-5, -7]], dtype=complex))
print("generic torus, entries in [-3, 3]:", len(find_polarization(P, 3)))
