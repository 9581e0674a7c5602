"""
No nonzero tensor is Kähler-like for all three structures
=========================================================

Stack the linear constraints "curvature-like" and "L o J_a = eps_a L,
L(J_a x, J_a y, z, w) = eps_a L(x, y, z, w)" for a = 1, 2, 3 and compute the
exact rank over the rationals. Nullity 0 means the only solution is L = 0.
"""

# %%
import time

from hgman.natural_connection import curvature_like, kahlerlike_nullspace, nullspace_tensor

for n in (1, 2):
    start = time.perf_counter()
    full = kahlerlike_nullspace(n)
    curv = kahlerlike_nullspace(n, kahler=False)
    m = 4 * n
    print(f"dim {m}: unknowns {full.unknowns}, rank {full.rank}, nullity {full.nullity}; "
          f"curvature-like only: nullity {curv.nullity} (expected m^2(m^2-1)/12 = {m * m * (m * m - 1) // 12}); "
          f"{time.perf_counter() - start:.2f} s")

# %%
# Dropping J2 and J3 leaves room: these tensors are Kähler-like for J1 alone.
partial = kahlerlike_nullspace(1, structures=(1,), with_basis=True)
print("J1 only: nullity", partial.nullity)
first = nullspace_tensor(partial.basis[0], 1)
print("first basis tensor is curvature-like:", curvature_like(first))
