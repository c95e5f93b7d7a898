"""Validation for the mod-n SNF path: brute-force oracles + np/pure parity."""
import itertools
import random
import sys
import time

sys.path.insert(0, "src")

from hopfcoh.exact_linalg import (
    Matrix, Zmod, ZZ, kernel_basis, subquotient, ContainmentError,
    _snf_work_py, _snf_np, _divisor_chain, ModulePresentation,
)
import hopfcoh.exact_linalg as el

rng = random.Random(7)


def brute_span(cols, n, a):
    """All Z/n combinations of the given columns (tuples length a)."""
    seen = {tuple([0] * a)}
    frontier = [tuple([0] * a)]
    for c in cols:
        new = set()
        for mult in range(1, n):
            add = tuple(mult * x % n for x in c)
            for v in seen:
                w = tuple((p + q) % n for p, q in zip(v, add))
                if w not in seen:
                    new.add(w)
        seen |= new
        # redo closure (combinations of multiple columns)
    # proper closure: keep adding generators until stable
    gens = [tuple(x % n for x in c) for c in cols]
    seen = {tuple([0] * a)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((p + q) % n for p, q in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def fingerprint_from_presentation(pres, n, total_summands=None):
    """|{x : d x = 0}| for each divisor d of n, from invariant factors."""
    facs = [n] * pres.free_rank + list(pres.invariant_factors)
    out = {}
    for d in range(1, n + 1):
        if n % d:
            continue
        c = 1
        for f in facs:
            from math import gcd
            c *= gcd(d, f)
        out[d] = c
    return out


def fingerprint_brute(span_k, span_i, n, a):
    out = {}
    for d in range(1, n + 1):
        if n % d:
            continue
        cnt = 0
        for x in span_k:
            dx = tuple(d * v % n for v in x)
            if dx in span_i:
                cnt += 1
        out[d] = cnt // len(span_i)
    return out


def random_cols(a, k, n):
    return [[rng.randrange(n) for _ in range(a)] for _ in range(k)]


def test_subquotient(trials=400):
    bad = 0
    for t in range(trials):
        n = rng.choice([2, 3, 4, 6, 8, 9, 12])
        a = rng.randrange(1, 5)
        ring = Zmod(n)
        kk = rng.randrange(0, 4)
        K = random_cols(a, kk, n)
        span_k = brute_span(K, n, a)
        # build an image inside the kernel span: random combos of K + n*e_i
        ii = rng.randrange(0, 4)
        I = []
        for _ in range(ii):
            v = [0] * a
            for c in K:
                m = rng.randrange(n)
                v = [(p + m * q) % n for p, q in zip(v, c)]
            I.append(v)
        span_i = brute_span(I, n, a)
        Km = Matrix.from_cols(ring, a, K)
        Im = Matrix.from_cols(ring, a, I)
        pres = subquotient(a, Km, Im)
        fp = fingerprint_from_presentation(pres, n)
        fb = fingerprint_brute(span_k, span_i, n, a)
        if fp != fb:
            bad += 1
            print("MISMATCH", n, a, K, I, pres.describe(), fp, fb)
    print(f"subquotient brute-force: {trials} trials, {bad} mismatches")
    return bad == 0


def test_containment_error(trials=200):
    bad = 0
    hits = 0
    for t in range(trials):
        n = rng.choice([2, 4, 6, 9])
        a = rng.randrange(1, 4)
        ring = Zmod(n)
        K = random_cols(a, rng.randrange(0, 3), n)
        I = random_cols(a, rng.randrange(1, 3), n)
        span_k = brute_span(K, n, a)
        span_i = brute_span(I, n, a)
        contained = span_i <= span_k
        try:
            subquotient(a, Matrix.from_cols(ring, a, K), Matrix.from_cols(ring, a, I))
            got = True
        except ContainmentError:
            got = False
        if got != contained:
            bad += 1
            print("CONTAINMENT MISMATCH", n, a, K, I, contained, got)
        if not contained:
            hits += 1
    print(f"containment: {trials} trials ({hits} non-contained), {bad} mismatches")
    return bad == 0


def test_kernel(trials=400):
    bad = 0
    for t in range(trials):
        n = rng.choice([2, 3, 4, 6, 8, 9, 12])
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        ring = Zmod(n)
        m = Matrix(ring, [[rng.randrange(n) for _ in range(cols)] for _ in range(rows)])
        K = kernel_basis(m)
        # membership: every column actually in the kernel
        prod = m * K
        if not prod.is_zero():
            bad += 1
            print("KERNEL MEMBER FAIL", n, m.data)
            continue
        # completeness: enumerate the true kernel
        true = 0
        for v in itertools.product(range(n), repeat=cols):
            col = Matrix.column(ring, list(v))
            if (m * col).is_zero():
                true += 1
        span = brute_span([list(c) for c in K.columns()], n, cols)
        if len(span) != true:
            bad += 1
            print("KERNEL SPAN FAIL", n, m.data, len(span), true)
    print(f"kernel_basis brute-force: {trials} trials, {bad} mismatches")
    return bad == 0


def test_parity(trials=300):
    if el._np is None:
        print("numpy missing; parity skipped")
        return True
    bad = 0
    combos = [(), ("V",), ("Uinv",), ("U", "V"), ("U", "Uinv", "V", "Vinv")]
    for t in range(trials):
        n = rng.choice([2, 3, 4, 6, 8, 9, 12, 16])
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        a0 = [[rng.randrange(-2 * n, 2 * n) for _ in range(cols)] for _ in range(rows)]
        want = rng.choice(combos)
        a1 = [row[:] for row in a0]
        a2 = [row[:] for row in a0]
        r1 = _snf_work_py(a1, want, n)
        r2 = _snf_np(a2, want, n)
        if r1 != r2 or a1 != a2:
            bad += 1
            print("PARITY FAIL", n, want, a0)
    print(f"np/pure modulus parity: {trials} trials, {bad} mismatches")
    return bad == 0


def test_chain():
    cases = [
        ([2, 3], 6, (6,)),
        ([2, 2], 4, (2, 2)),
        ([4, 2], 8, (2, 4)),
        ([2, 3, 4, 6], 12, (2, 6, 12)),
        ([], 6, ()),
        ([3, 3, 9], 9, (3, 3, 9)),
    ]
    ok = True
    for divs, n, want in cases:
        got = _divisor_chain(divs, n)
        if got != want:
            print("CHAIN FAIL", divs, n, got, want)
            ok = False
    print("divisor chain cases:", "ok" if ok else "FAIL")
    return ok


if __name__ == "__main__":
    t0 = time.time()
    ok = True
    ok &= test_chain()
    ok &= test_parity()
    ok &= test_kernel()
    ok &= test_subquotient()
    ok &= test_containment_error()
    print(f"total {time.time() - t0:.1f}s -> {'ALL OK' if ok else 'FAILURES'}")
