"""Scratch: integrals module smoke tests against the worked examples."""
import sys
sys.path.insert(0, "src")

from hopfcoh.exact_linalg import GF, QQ, ZZ, Zmod, Matrix, lattice_equal
from hopfcoh.hopf_core import base_change, dual_hopf
from hopfcoh.schemes import (alpha_pr, constant_group_scheme, cyclic_table,
                             group_algebra, klein_table, mu_n,
                             trivial_scheme, builtins_over, as_hopf)
from hopfcoh.rep import (ComoduleData, permutation_comodule, regular_comodule,
                         trivial_comodule, trivial_g_algebra,
                         regular_g_algebra, invariants)
from hopfcoh.integrals import (ComoduleMap, GAlgebraMap,
                               bounded_torsion_certificate, dual_coinvariants,
                               frobenius_isomorphism, left_integrals,
                               power_reductivity_witness,
                               power_surjectivity_check,
                               symmetric_power_comodule, trace_map)

# --- left integrals ---------------------------------------------------------
zc2 = group_algebra(cyclic_table(2), ZZ)
ints = left_integrals(zc2.algebra)
assert ints.cols == 1, ints.cols
col = [row[0] for row in ints.data]
assert col in ([1, 1], [-1, -1]), col
print("ZC2 integrals: span{e_1 + e_s}")

kc2 = constant_group_scheme(cyclic_table(2), ZZ)
ints = left_integrals(as_hopf(kc2).algebra)
assert ints.cols == 1
col = [row[0] for row in ints.data]
assert col in ([1, 0], [-1, 0]), col   # the idempotent at the identity slot
print("k[C2] integrals: the identity-slot idempotent")

qc3 = group_algebra(cyclic_table(3), QQ)
ints = left_integrals(qc3.algebra)
assert ints.cols == 1
col = [row[0] for row in ints.data]
assert col[0] == col[1] == col[2] != 0, col
print("QC3 integrals: span{e_1+e_s+e_s2}")

# --- dual coinvariants rank 1 everywhere -------------------------------------
for h in (as_hopf(kc2), group_algebra(cyclic_table(2), GF(2)), mu_n(2, QQ)):
    dc = dual_coinvariants(h)
    assert dc.cols == 1
print("dual coinvariants rank 1: k[C2]/Z, F2C2, mu_2/Q")

# integrals of the dual algebra = dual coinvariants (as lattices)
for g in builtins_over(ZZ):
    h = as_hopf(g)
    li = left_integrals(dual_hopf(h).algebra)
    dc = dual_coinvariants(h)
    assert li.cols == dc.cols == 1
    assert lattice_equal(li, dc), g.name
print("left_integrals(dual algebra) == dual_coinvariants over Z builtins")

# --- frobenius ---------------------------------------------------------------
fd = frobenius_isomorphism(group_algebra(cyclic_table(2), GF(3)))
print("F3C2 frobenius ok, psi =", [r[0] for r in fd.psi.data])
fd = frobenius_isomorphism(constant_group_scheme(cyclic_table(3), ZZ))
print("k[C3]/Z frobenius ok, norm =", [r[0] for r in fd.norm.data])
fd = frobenius_isomorphism(trivial_scheme(ZZ))
assert fd.phi == Matrix.identity(ZZ, 1).scale(fd.psi.data[0][0])
assert [r[0] for r in fd.norm.data] == [1]
print("trivial group frobenius: norm = 1")

for ring in (ZZ, QQ, GF(2), GF(3), Zmod(4)):
    for g in builtins_over(ring):
        frobenius_isomorphism(g)
print("frobenius passes for every builtin over Z, Q, F2, F3, Z/4")

# --- trace -------------------------------------------------------------------
td = trace_map(constant_group_scheme(cyclic_table(2), ZZ))
assert (td.trace * as_hopf(kc2).unit).data[0][0] == 2
print("k[C2]/Z trace of 1 = 2")
td = trace_map(constant_group_scheme(klein_table(), QQ))
assert all(x == 1 for x in td.trace.data[0])
print("k[Klein]/Q trace = (1,1,1,1)")
td = trace_map(mu_n(2, ZZ))
assert list(td.trace.data[0]) == [2, 0]
print("mu_2/Z trace = (2, 0)")
for ring in (ZZ, QQ, GF(2), GF(3), Zmod(4)):
    for g in builtins_over(ring):
        trace_map(g)
print("trace identities hold for every builtin over Z, Q, F2, F3, Z/4")

# --- bounded torsion certificate ---------------------------------------------
c2 = constant_group_scheme(cyclic_table(2), ZZ)
h2 = as_hopf(c2)
mods = [trivial_comodule(c2), regular_comodule(c2),
        trivial_comodule(base_change(h2, Zmod(4)))]
cert = bounded_torsion_certificate(c2, mods, 4)
assert cert.n == 2 and cert.ok
print("C2 certificate n=2 with 3 modules (incl. Z/4 reduction):", cert.ok)

kl = constant_group_scheme(klein_table(), ZZ)
cert = bounded_torsion_certificate(kl, [trivial_comodule(kl)], 3)
assert cert.n == 4 and cert.ok
print("Klein certificate n=4:", cert.ok)

tz = trivial_scheme(ZZ)
cert = bounded_torsion_certificate(tz, [trivial_comodule(tz)], 3)
assert cert.n == 1 and cert.ok
assert all(t.presentation.is_zero for e in cert.entries for t in e.evidence)
print("trivial group certificate n=1, H^{>0} = 0")

# --- power surjectivity --------------------------------------------------------
a = regular_g_algebra(c2)
ident = GAlgebraMap(a, a, Matrix.identity(ZZ, 2))
rep = power_surjectivity_check(ident, 3)
assert rep.all_found and all(e.exponent == 1 for e in rep.entries)
print("power surjectivity of id: exponent 1 everywhere")

# inclusion k -> Q[x]/(x^2) in the basis {1+x, x}, trivial action
tq = trivial_scheme(QQ)
ht = as_hopf(tq)
mulB = Matrix(QQ, [
    #  b1*b1 b1*b2 b2*b1 b2*b2     with b1 = 1+x, b2 = x
    [1, 0, 0, 0],
    [1, 1, 1, 0],
])
unitB = Matrix(QQ, [[1], [-1]])
from hopfcoh.rep import GAlgebraData
B = GAlgebraData(trivial_comodule(tq, 2, name="dual-numbers"), mulB, unitB)
A = trivial_g_algebra(tq)
incl = GAlgebraMap(A, B, unitB)
rep = power_surjectivity_check(incl, 6)
found = [e.exponent for e in rep.entries]
print("k -> Q[x]/(x^2) exponents:", found,
      [e.witness for e in rep.entries])
assert found[0] is None and found[1] == 2, found
assert not rep.all_found

# --- power reductivity ----------------------------------------------------------
c2f2 = constant_group_scheme(cyclic_table(2), GF(2))
M = permutation_comodule(c2f2, [[0, 1], [1, 0]], name="swap")
L = trivial_comodule(c2f2, 1)
phi = ComoduleMap(M, L, Matrix(GF(2), [[1, 1]]))
d = power_reductivity_witness(phi, 4)
assert d == 2, d
print("S2 swap over F2: witness d = 2")

c2q = constant_group_scheme(cyclic_table(2), QQ)
Mq = permutation_comodule(c2q, [[0, 1], [1, 0]], name="swap")
Lq = trivial_comodule(c2q, 1)
phiq = ComoduleMap(Mq, Lq, Matrix(QQ, [[1, 1]]))
assert power_reductivity_witness(phiq, 4) == 1
print("S2 swap over Q: witness d = 1")

idm = ComoduleMap(L, L, Matrix.identity(GF(2), 1))
assert power_reductivity_witness(idm, 2) == 1
print("identity rank 1: d = 1")

# symmetric power sanity: S^2 of the swap module has invariants {x^2+y^2, xy}
sym, monos = symmetric_power_comodule(M, 2)
inv = invariants(sym)
assert monos == [(0, 0), (0, 1), (1, 1)]
assert inv.cols == 2
print("S^2 swap invariants rank:", inv.cols)

print("integrals smoke all green")
