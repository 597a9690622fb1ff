"""
Two-dimensional plasma problems and diagonal cuts
=================================================

A uniform anisotropic plasma pushed by a symmetric Gaussian potential stays
mirror symmetric across x = y. In the laser heating problem the absorption
term (v_T = 1) deepens the density well at the centre of the domain.
The cuts are written to CSV for plotting.
"""

import numpy as np

from tmdg import run_case
from tmdg.analysis import diagonal_midpoint_density, extract_diagonal, transpose_symmetry_defect

res = run_case("uniform_plasma_2d", order=2, n=50)
print("uniform plasma, x<->y symmetry defect:", transpose_symmetry_defect(res.u))
arc, prim = extract_diagonal(res.u, res.mesh, res.ops)
np.savetxt("uniform_plasma_diagonal.csv", np.column_stack([arc, prim]), delimiter=",",
           header="arc,rho,vx,vy,pxx,pxy,pyy", comments="", fmt="%.17g")

for v_T in (0.0, 1.0):
    res = run_case("realistic_2d", order=2, n=50, v_T=v_T)
    print(f"realistic, v_T = {v_T}: centre density {diagonal_midpoint_density(res.u, res.mesh, res.ops):.6f}")
    arc, prim = extract_diagonal(res.u, res.mesh, res.ops)
    np.savetxt(f"realistic_vT{int(v_T)}_diagonal.csv", np.column_stack([arc, prim]), delimiter=",",
               header="arc,rho,vx,vy,pxx,pxy,pyy", comments="", fmt="%.17g")
