"""
Displacement operators and their Clifford unitaries
====================================================

The d^2 displacement operators D_(j,k) form a projective representation of
Z_d^2. A unitary U_F with U_F D_u U_F^dag ~ D_(F u) exists for every F in
SL(2, d); for odd d it has a closed form.
"""

import numpy as np

from sicpovm import clifford_group as cg
from sicpovm import pauli_rep

d = 5
ops = pauli_rep.displacement_operators(d)
print("D_(1,0) is the clock matrix:\n", np.round(ops[1, 0], 3))
print("D_(0,1) is the shift matrix:\n", ops[0, 1].real.astype(int))

# trace orthogonality: tr(D_u^dag D_v) = d if u == v else 0
flat = ops.reshape(d * d, d, d)
gram = np.einsum("uab,vab->uv", flat.conj(), flat)
print("max |gram - d I| =", np.abs(gram - d * np.eye(d * d)).max())

# closed form unitary for a random-looking F
F = cg.SLMat(2, 3, 1, 2, d)
U = pauli_rep.metaplectic_unitary(d, F)
print("intertwining deviation for F =", F.tolist(), ":", pauli_rep.verify_intertwining(U, F, d))

# the Zauner unitary is order 3 up to a phase
for n in (4, 5, 6, 7):
    Uz = pauli_rep.zauner_unitary(n)
    W = Uz @ Uz @ Uz
    dec = pauli_rep.eigenspaces(Uz)
    print(f"d={n}: U^3 / phase - I = {np.abs(W / W[0, 0] - np.eye(n)).max():.1e}, "
          f"eigenspace dims {dec.dims}")
