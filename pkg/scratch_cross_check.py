"""Scratch: sparse cross map vs the dense factored construction."""
import sys
sys.path.insert(0, "src")

from hopfcoh.exact_linalg import GF, QQ, ZZ, Matrix
from hopfcoh.hopf_core import tensor_shuffle
from hopfcoh.schemes import alpha_pr, constant_group_scheme, cyclic_table, mu_n
from hopfcoh.rep import regular_g_algebra, trivial_g_algebra
from hopfcoh.cohomology import _cross_map, _iterated_coaction


def dense_cross(alg, n, m):
    v = alg.comodule
    h = v.hopf
    ring, d, ma = h.ring, h.dim, v.rank
    stage1 = Matrix.identity(ring, ma * d ** n).kron(
        _iterated_coaction(v, n).kron(Matrix.identity(ring, d ** m)))
    dims = [ma] + [d] * n + [ma] + [d] * n + [d] * m
    perm = [0, n + 1]
    for i in range(1, n + 1):
        perm.extend((i, n + 1 + i))
    perm.extend(range(2 * n + 2, 2 * n + 2 + m))
    stage2 = tensor_shuffle(ring, dims, perm)
    stage3 = alg.mul
    for _ in range(n):
        stage3 = stage3.kron(h.mul)
    stage3 = stage3.kron(Matrix.identity(ring, d ** m))
    return stage3 * stage2 * stage1


cases = [
    ("alpha2/F2 trivial", trivial_g_algebra(alpha_pr(2, 1, GF(2)))),
    ("C2/Z regular", regular_g_algebra(
        constant_group_scheme(cyclic_table(2), ZZ))),
    ("mu3/Q regular", regular_g_algebra(mu_n(3, QQ))),
    ("C3/Z trivial", trivial_g_algebra(
        constant_group_scheme(cyclic_table(3), ZZ))),
]
for label, alg in cases:
    for n in range(0, 3):
        for m in range(0, 3):
            a = _cross_map(alg, n, m)
            b = dense_cross(alg, n, m)
            assert a == b, (label, n, m)
    print("ok", label)
print("all cross maps agree")
