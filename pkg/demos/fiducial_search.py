"""
Searching a Zauner eigenspace for a SIC fiducial
=================================================

A fiducial psi has |<psi|D_u|psi>|^2 = 1/(d+1) for every u != 0; its d^2
displaced copies then form a SIC-POVM. The search runs inside an eigenspace
of the order-3 Zauner unitary, where fiducials are expected to live.
"""

import numpy as np

from sicpovm import fiducial, pauli_rep

for d in range(2, 9):
    r = fiducial.search_fiducial(d, seed=0, restarts=20)
    print(f"d={d}: eigenspace {r.candidate.eigenvalue_index}, "
          f"overlap dev {r.max_overlap_deviation:.1e}, "
          f"completeness {r.povm_completeness_deviation:.1e}, "
          f"certified {r.certified}")

# overlaps for one fiducial
r = fiducial.search_fiducial(5, seed=1)
psi = r.candidate.vector
print("d=5 overlaps:", sorted({round(v, 10) for v in fiducial.overlap_profile(psi).values()}))

# the POVM elements E_u = D_u |psi><psi| D_u^dag / d sum to the identity
povm = fiducial.build_povm(psi)
print("sum of", len(povm), "elements:\n", np.round(sum(povm).real, 12))

# complex conjugation maps a fiducial to a fiducial
print("conjugate deviation:", fiducial.sic_deviation(psi.conj()))

# psi is an eigenvector of the Zauner unitary
U = pauli_rep.zauner_unitary(5)
print("eigenvector residual:", fiducial.eigenvector_residual(U, psi))

# not every eigenspace holds a fiducial: the 1-dimensional ones for d = 4 fail
dec = pauli_rep.eigenspaces(pauli_rep.zauner_unitary(4))
for i, dim in enumerate(dec.dims):
    r = fiducial.search_fiducial(4, eigenvalue_index=i, restarts=5)
    print(f"d=4 eigenspace {i} (dim {dim}): deviation {r.max_overlap_deviation:.1e}")

print(r.to_json())
