"""
Canonical Clifford elements and the matrix Z
=============================================

SL(2, n) acts on the index set Z_n^2 of the displacement operators. Here we
count conjugacy classes of its trace -1 elements and build explicit
conjugators onto Z = [[0, -1], [1, -1]].
"""

from sicpovm import clifford_group as cg

p = 7
Z = cg.zauner(p)
print("Z mod 7 =", Z.tolist(), " Z^3 = I:", (Z ** 3).is_identity())

# a trace -1 matrix and a G with G F G^-1 = Z
F = cg.SLMat(2, 3, 0, 4, p)
G = cg.conjugator_to_zauner(F, p)
print("F =", F.tolist(), "G =", G.tolist(), "G F G^-1 =", (G @ F @ G.inverse()).tolist())

# the affine part: pick zeta so that (I, zeta) conjugates (F, chi) to (F, 0)
e = cg.CliffordElem(F, (3, 5))
zeta = cg.kill_translation(e)
shift = cg.CliffordElem(cg.SLMat.identity(p), zeta)
print("zeta =", zeta, "->", cg.conjugate(shift, e).chi)

# for prime p every trace -1 element is conjugate to Z: a single class
table = cg.enumerate_trace_classes(p)
print("classes of trace -1 in SL(2,7):", table.t_count, "size", table.classes[0][1])

# composite dimensions split into up to three classes
print(" d  dbar  classes  formula")
for d in range(2, 28):
    t = cg.enumerate_trace_classes(d)
    print(f"{d:>2} {t.dbar:>5} {t.t_count:>8} {cg.t_count_formula(d):>8}")

# 9 has two classes; show representatives
print(cg.enumerate_trace_classes(9).to_json())
