"""Function Hopf algebras of finite groups and towers of quotients.

Run:  python demos/08_hopf_algebras.py
"""

from nodalcover import FunctionField, MatrixK, function_hopf, rep_comodule_roundtrip, tower_hull
from nodalcover.curves import chain_curve_for_signature, pi1_presentation
from nodalcover.groups import cyclic_group, symmetric_group
from nodalcover.hopf import QuotientTower
from nodalcover.reps import FiniteQuotientRep

F3 = FunctionField(3)
Z2 = cyclic_group(2)
S3 = symmetric_group(3)

print("== the function algebra on the two-element group ==")
H = function_hopf(Z2, F3)
print(f"dimension {H.dim}")
print(f"coproduct of e_0: {H.comult(H.basis_vec(0))}")
print(f"coproduct of e_1: {H.comult(H.basis_vec(1))}")

print("\n== commutative always, cocommutative exactly when abelian ==")
for G in (Z2, cyclic_group(4), S3):
    A = function_hopf(G, F3)
    print(f"  {G.name}: commutative={A.is_commutative()}, "
          f"cocommutative={A.is_cocommutative()}, abelian={G.is_abelian()}")

print("\n== representations are comodules, exactly ==")
pres = pi1_presentation(chain_curve_for_signature(1, 1))
fq = FiniteQuotientRep.build(
    pres, F3, (Z2,), Z2, [1], [(0, 1)],
    (MatrixK.identity(F3, 1), MatrixK.from_rows(F3, [["2"]])))
print(f"  {rep_comodule_roundtrip(fq)}")

print("\n== a tower of quotients and its dual chain ==")
tower = QuotientTower.build(
    [cyclic_group(2), cyclic_group(4), cyclic_group(8)],
    [[x % 2 for x in range(4)], [x % 4 for x in range(8)]])
report = tower_hull(tower, F3)
print(f"  dimensions {report.dimensions}, duals injective: {report.injective}")
