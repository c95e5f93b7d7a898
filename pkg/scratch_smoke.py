"""Scratch: post-retrofit cohomology smoke suite."""
import sys
sys.path.insert(0, "src")
import time

from hopfcoh.exact_linalg import GF, QQ, ZZ, Zmod
from hopfcoh.hopf_core import base_change
from hopfcoh.schemes import (alpha_pr, as_hopf, constant_group_scheme,
                             cyclic_table, klein_table, mu_n)
from hopfcoh.rep import (regular_comodule,
                         tensor_comodule, trivial_comodule, trivial_g_algebra)
from hopfcoh.cohomology import (ShortExactSequence, acyclicity_check_induced,
                                algebra_cohomology_ring, cohomology_groups,
                                cohomology_presentations, cup_product,
                                long_exact_sequence, torsion_bound)

t0 = time.time()

# --- periodic group cohomology over Z -------------------------------------
c2 = constant_group_scheme(cyclic_table(2), ZZ)
pres = cohomology_presentations(c2, trivial_comodule(c2), 4)
want = [(1, []), (0, []), (0, [2]), (0, []), (0, [2])]
got = [(p.free_rank, list(p.invariant_factors)) for p in pres]
assert got == want, got
print("C2/Z periodic", got)

c4 = constant_group_scheme(cyclic_table(4), ZZ)
pres = cohomology_presentations(c4, trivial_comodule(c4), 4)
got = [(p.free_rank, list(p.invariant_factors)) for p in pres]
assert got == [(1, []), (0, []), (0, [4]), (0, []), (0, [4])], got
print("C4/Z periodic", got)

kl = constant_group_scheme(klein_table(), ZZ)
pres = cohomology_presentations(kl, trivial_comodule(kl), 4)
got = [(p.free_rank, list(p.invariant_factors)) for p in pres]
assert got == [(1, []), (0, []), (0, [2, 2]), (0, [2]), (0, [2, 2, 2])], got
print("Klein/Z", got)

# --- mu_n acyclic over every ring ------------------------------------------
for ring in (ZZ, QQ, GF(3), Zmod(6)):
    g = mu_n(3, ring)
    groups = cohomology_groups(g, trivial_comodule(g), 3)
    assert all(gr.presentation.is_zero for gr in groups[1:]), ring
print("mu_3 acyclic over Z, Q, F3, Z/6")

# --- torsion_bound ----------------------------------------------------------
assert torsion_bound(c2, trivial_comodule(c2), 4) == 2
assert torsion_bound(c4, trivial_comodule(c4), 4) == 4
m3 = mu_n(3, ZZ)
assert torsion_bound(m3, trivial_comodule(m3), 3) is None
print("torsion bounds 2 / 4 / None")

# --- induced acyclicity -----------------------------------------------------
for g in (c2, alpha_pr(2, 1, GF(2))):
    rep = acyclicity_check_induced(g, trivial_comodule(g), 3)
    assert rep.ok, rep.describe()
print("induced acyclicity: C2/Z, alpha_2/F2")

# --- alpha_2/F2 cohomology ring --------------------------------------------
a2 = alpha_pr(2, 1, GF(2))
ring_a2 = algebra_cohomology_ring(a2, trivial_g_algebra(a2), 4)
print("alpha_2 route:", ring_a2.route)
print("alpha_2 gen degrees:", ring_a2.generator_degrees())
print("alpha_2 dims:", ring_a2.dimensions())
print("alpha_2 relations:", [r.monomials for r in ring_a2.relations])
assert ring_a2.generator_degrees() == [1]
assert ring_a2.dimensions() == [1, 1, 1, 1, 1]
assert not ring_a2.relations
nchecks = len(ring_a2.checks.checks)
assert ring_a2.checks.ok
print("alpha_2 checks all ok:", nchecks)

# --- cup products -----------------------------------------------------------
grs = cohomology_groups(c2, trivial_comodule(c2), 5)
x2 = grs[2].classes()[0]
x4 = cup_product(c2, x2, x2)
assert x4.degree == 4 and not all(row[0] == ZZ.zero for row in x4.representative.data)
print("cup: H^2 x H^2 -> H^4 nonzero for C2/Z")
one = grs[0].classes()[0]
same = cup_product(c2, one, x2)
assert same.degree == 2
print("cup with unit class ok")

# --- LES lanes --------------------------------------------------------------
# Bockstein Z -> Z -> Z/2 for C2
mz = trivial_comodule(c2)
c2f = constant_group_scheme(cyclic_table(2), Zmod(2))
mz2 = trivial_comodule(c2f)
from hopfcoh.exact_linalg import Matrix
two = Matrix(ZZ, [[2]])
redmap = Matrix.identity(ZZ, 1)
ses = ShortExactSequence(mz, mz, mz2, two, redmap)
rep = long_exact_sequence(c2, ses, 4)
assert rep.exactness.ok, rep.exactness.describe()
print("LES Bockstein lane ok")

print("smoke done in %.1fs" % (time.time() - t0))
