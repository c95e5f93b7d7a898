"""Criterion-4 shaped timing sweep: every Z builtin, 3-module family, nmax=4."""
import sys
import time

sys.path.insert(0, "src")

from hopfcoh.exact_linalg import ZZ, Zmod
from hopfcoh.schemes import build_builtin, builtins_over
from hopfcoh.rep import trivial_comodule, regular_comodule
from hopfcoh.hopf_core import base_change
from hopfcoh.integrals import bounded_torsion_certificate

t_all = time.time()
for g in builtins_over(ZZ):
    name = g.name
    h = g.hopf
    mods = [trivial_comodule(h), regular_comodule(h),
            trivial_comodule(base_change(h, Zmod(4)))]
    t0 = time.time()
    cert = bounded_torsion_certificate(g, mods, 4)
    print(f"{name:18s} rank {h.dim}  {time.time() - t0:7.2f}s  bound n={cert.n}")
print(f"TOTAL {time.time() - t_all:.2f}s")
