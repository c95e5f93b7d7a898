"""Integrals, Frobenius structure, traces, and the annihilation certificate.

The chain of constructions here runs: coinvariants of the dual module are
free of rank one, the generator defines a Frobenius isomorphism H -> H^*,
its inverse image of the counit is the left norm, and the trace functional
ties the rank of H to an equivariant annihilation bound on positive-degree
cohomology.  Every link is re-verified on the constructed data; a failure
means either a broken theorem (wrong math somewhere upstream) or corrupted
input, and the two get different exception types so callers can tell.

Also here: the bounded power checkers.  Both run finite searches and report
what they found; absence of a witness is never treated as a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from itertools import combinations_with_replacement

from .exact_linalg import (
    ExactLinalgError,
    Matrix,
    ModulePresentation,
    RingSpec,
    UnsupportedRingError,
    ZZ,
    kernel_basis,
    solve,
)
from .hopf_core import (
    AlgebraData,
    CheckResult,
    HopfAlgebraData,
    HopfDataError,
    VerificationReport,
    _compare,
    base_change,
)
from .rep import (
    ComoduleData,
    ComoduleError,
    GAlgebraData,
    dual_hopf_module,
    invariants,
    verify_g_algebra,
)
from .schemes import as_hopf
from .cohomology import _presentations_of


class TheoremViolationError(ExactLinalgError):
    """Verified input data contradicts a statement that should hold."""


class DataCorruptionError(ExactLinalgError):
    """Structure data fails a property that construction already checked."""


# ---------------------------------------------------------------------------
# integrals and coinvariants
# ---------------------------------------------------------------------------

def left_integrals(a: AlgebraData) -> Matrix:
    """Basis of {x : b*x = aug(b)*x for every basis element b}.

    One stacked kernel system; columns are saturated over Z.
    """
    if a.augmentation is None:
        raise HopfDataError("left integrals need an augmentation")
    ring, d = a.ring, a.dim
    rows: List[List] = []
    for b in range(d):
        lb = a.left_mult(b)
        ab = a.augmentation.data[0][b]
        for k in range(d):
            row = list(lb.data[k])
            row[k] = ring.normalize(row[k] - ab)
            rows.append(row)
    return kernel_basis(Matrix(ring, rows))


def _cyclic_generator(ring: RingSpec, gens: Matrix) -> Matrix:
    """Single generator of the column span, or None-equivalent failure.

    Over Z and fields the input already has independent columns, so anything
    other than exactly one column is a failure.  Over Z/n the kernel routine
    may return redundant generators; pick the first column containing all
    the others in its span.
    """
    if gens.cols == 0:
        raise TheoremViolationError("coinvariants are zero, expected rank 1")
    if gens.cols == 1:
        return gens
    if ring.kind in ("Integers",) or ring.is_field:
        raise TheoremViolationError(
            f"coinvariants have {gens.cols} independent generators, expected 1")
    cols = gens.columns()
    for j in range(gens.cols):
        cand = Matrix.from_cols(ring, gens.rows, [cols[j]])
        if solve(cand, gens) is not None:
            return cand
    raise TheoremViolationError("coinvariants are not cyclic, expected rank 1")


def _check_free_rank_one(ring: RingSpec, gen: Matrix) -> None:
    # over Z/n a cyclic module is free iff its annihilator vanishes
    if ring.kind != "IntegersMod":
        return
    n = ring.modulus
    ann = 1
    for row in gen.data:
        g = gcd(int(row[0]), n)
        ann = ann * (n // g) // gcd(ann, n // g)
    if ann != n:
        raise TheoremViolationError(
            "coinvariant generator has a nonzero annihilator, not free")


def dual_coinvariants(h) -> Matrix:
    """Generator of (H^*)^{coH} for the dual module's coaction.

    The cited structure theory makes this projective of rank one over every
    supported base; a different computed rank therefore signals corrupted
    structure data and raises rather than returning.
    """
    h = as_hopf(h)
    hm = dual_hopf_module(h)
    eye = Matrix.identity(h.ring, h.dim)
    gens = kernel_basis(hm.coaction - eye.kron(h.unit))
    gen = _cyclic_generator(h.ring, gens)
    _check_free_rank_one(h.ring, gen)
    return _normalize_generator(gen)


def _normalize_generator(gen: Matrix) -> Matrix:
    """Deterministic scaling: leading entry positive (Z) or one (fields)."""
    ring = gen.ring
    lead = next((row[0] for row in gen.data if row[0]), None)
    if lead is None:
        return gen
    if ring.is_field:
        return gen.scale(ring.inverse(lead))
    if ring.kind == "Integers" and lead < 0:
        return gen.scale(-1)
    return gen


# ---------------------------------------------------------------------------
# Frobenius structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusData:
    """The isomorphism H -> H^* induced by a coinvariant generator.

    psi is the generator (coordinates in the dual basis), phi the matrix of
    a -> psi(- * a), norm the preimage of the counit under phi.
    """

    hopf: HopfAlgebraData
    psi: Matrix      # d x 1
    phi: Matrix      # d x d
    norm: Matrix     # d x 1

    def __post_init__(self):
        d = self.hopf.dim
        for mat, r, c in ((self.psi, d, 1), (self.phi, d, d), (self.norm, d, 1)):
            if mat.rows != r or mat.cols != c:
                raise HopfDataError("frobenius data shape")


def verify_frobenius(fd: FrobeniusData) -> VerificationReport:
    """Re-check every Frobenius invariant on stored data.

    phi must be invertible, left-module-linear for the action dual to right
    multiplication, send the norm to the counit, and agree with the dual
    module's action at the chosen generator after composing with the
    antipode.  The norm must be a left integral.
    """
    h = fd.hopf
    ring, d = h.ring, h.dim
    eye = Matrix.identity(ring, d)
    checks = []

    inv = solve(fd.phi, eye)
    invertible = inv is not None and fd.phi * inv == eye and inv * fd.phi == eye
    checks.append(CheckResult("phi-invertible", invertible))

    bad = None
    for i in range(d):
        if fd.phi * h.left_mult(i) != h.right_mult(i).T * fd.phi:
            bad = i
            break
    checks.append(CheckResult("phi-left-module-linear", bad is None,
                              None if bad is None else (bad, bad)))

    checks.append(_compare("norm-hits-counit",
                           fd.phi * fd.norm, h.counit.T))

    bad = None
    for i in range(d):
        eps_i = h.counit.data[0][i]
        if h.left_mult(i) * fd.norm != fd.norm.scale(eps_i):
            bad = i
            break
    checks.append(CheckResult("norm-left-integral", bad is None,
                              None if bad is None else (bad, bad)))

    hm = dual_hopf_module(h)
    checks.append(_compare("phi-from-dual-module-action",
                           fd.phi * h.antipode,
                           hm.action * fd.psi.kron(eye)))
    return VerificationReport(
        (h.name + "-frobenius") if h.name else "frobenius", tuple(checks))


def frobenius_isomorphism(h) -> FrobeniusData:
    """Build and verify the Frobenius structure of H.

    The antipode is checked for invertibility first: it is bijective for
    every finite free Hopf algebra, so a failure there is corrupted data,
    not a missing hypothesis.  Non-invertibility of phi afterwards would
    contradict the Frobenius theorem itself.
    """
    h = as_hopf(h)
    ring, d = h.ring, h.dim
    eye = Matrix.identity(ring, d)
    s_inv = solve(h.antipode, eye)
    if s_inv is None or h.antipode * s_inv != eye or s_inv * h.antipode != eye:
        raise DataCorruptionError("antipode is not invertible")

    psi = dual_coinvariants(h)
    phi_rows = [[ring.zero()] * d for _ in range(d)]
    for b in range(d):
        for i in range(d):
            s = ring.zero()
            for k in range(d):
                pk = psi.data[k][0]
                if pk:
                    s += pk * h.mul.data[k][b * d + i]
            phi_rows[b][i] = ring.normalize(s)
    phi = Matrix(ring, phi_rows)

    phi_inv = solve(phi, eye)
    if phi_inv is None or phi * phi_inv != eye or phi_inv * phi != eye:
        raise TheoremViolationError(
            "rank-1 coinvariants did not yield an invertible pairing")
    norm = phi_inv * h.counit.T

    fd = FrobeniusData(h, psi, phi, norm)
    report = verify_frobenius(fd)
    if not report.ok:
        bad = ", ".join(c.name for c in report.failures())
        raise TheoremViolationError(f"frobenius invariants fail: {bad}")
    return fd


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceData:
    hopf: HopfAlgebraData
    trace: Matrix    # 1 x d

    def __post_init__(self):
        if self.trace.rows != 1 or self.trace.cols != self.hopf.dim:
            raise HopfDataError("trace must be a 1 x dim row")


def verify_trace(td: TraceData) -> VerificationReport:
    h = td.hopf
    ring, d = h.ring, h.dim
    checks = []
    rank_elt = Matrix(ring, [[d]])
    checks.append(_compare("trace-of-unit-is-rank", td.trace * h.unit, rank_elt))
    eye = Matrix.identity(ring, d)
    checks.append(_compare("trace-is-comodule-map",
                           td.trace.kron(eye) * h.comul, h.unit * td.trace))
    return VerificationReport(
        (h.name + "-trace") if h.name else "trace", tuple(checks))


def trace_map(h) -> TraceData:
    """tr(b) = trace of multiplication by b, verified equivariant.

    The composite with the unit is multiplication by rank(H); colinearity
    against the trivial coaction on the base is the matrix identity
    (tr (x) id) o comul = unit o tr.  Both are theorems, so failures raise.
    """
    h = as_hopf(h)
    ring, d = h.ring, h.dim
    row = []
    for i in range(d):
        li = h.left_mult(i)
        row.append(ring.normalize(sum(li.data[k][k] for k in range(d))))
    td = TraceData(h, Matrix(ring, [row]))
    report = verify_trace(td)
    if not report.ok:
        bad = ", ".join(c.name for c in report.failures())
        raise TheoremViolationError(f"trace identities fail: {bad}")
    return td


# ---------------------------------------------------------------------------
# bounded torsion certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionEvidence:
    degree: int
    presentation: ModulePresentation
    annihilated: bool

    def as_dict(self):
        return {
            "degree": self.degree,
            "free_rank": self.presentation.free_rank,
            "invariant_factors": list(self.presentation.invariant_factors),
            "annihilated": self.annihilated,
        }


@dataclass(frozen=True)
class CertificateEntry:
    module: str
    ring: str
    evidence: Tuple[TorsionEvidence, ...]

    def as_dict(self):
        return {
            "module": self.module,
            "ring": self.ring,
            "evidence": [e.as_dict() for e in self.evidence],
        }


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable record that n kills positive-degree cohomology."""

    n: int
    max_degree: int
    route: str
    entries: Tuple[CertificateEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.annihilated for entry in self.entries
                   for e in entry.evidence)

    def as_dict(self):
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "route": self.route,
            "ok": self.ok,
            "modules": [e.as_dict() for e in self.entries],
        }


def bounded_torsion_certificate(g, modules: Sequence[ComoduleData],
                                nmax: int) -> Certificate:
    """Assert that rank(k[G]) annihilates H^1..H^nmax of each module.

    The group scheme must live over Z; modules may live over Z or over a
    reduction Z/m of the same coordinate ring (their cohomology is then
    computed there).  Evidence per degree is the invariant-factor shape of
    the group, so the certificate can be re-audited without recomputing.
    Any degree escaping annihilation raises: the bound is a theorem.
    """
    gh = as_hopf(g)
    if gh.ring != ZZ:
        raise UnsupportedRingError("the annihilation bound is stated over Z")
    n = gh.dim
    entries = []
    for idx, v in enumerate(modules):
        if v.hopf != gh and v.hopf != base_change(gh, v.ring):
            raise ComoduleError(
                f"module {idx} is not over this coordinate ring or a reduction")
        pres = _presentations_of(v, nmax)
        evidence = []
        for i in range(1, nmax + 1):
            evidence.append(TorsionEvidence(i, pres[i],
                                            pres[i].annihilated_by(n)))
        entries.append(CertificateEntry(v.name or f"module-{idx}",
                                        str(v.ring), tuple(evidence)))
    cert = Certificate(n, nmax, "trace-equivariant annihilation",
                       tuple(entries))
    if not cert.ok:
        bad = [(e.module, t.degree) for e in cert.entries
               for t in e.evidence if not t.annihilated]
        raise TheoremViolationError(
            f"rank fails to annihilate cohomology at {bad}")
    return cert


# ---------------------------------------------------------------------------
# power surjectivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GAlgebraMap:
    """Algebra-and-comodule map between algebras over one coordinate ring."""

    source: GAlgebraData
    target: GAlgebraData
    matrix: Matrix   # target.rank x source.rank

    def __post_init__(self):
        if self.matrix.rows != self.target.rank \
                or self.matrix.cols != self.source.rank:
            raise ComoduleError("g-algebra map shape")
        if self.source.hopf != self.target.hopf:
            raise ComoduleError("g-algebra map across different coordinate rings")


def verify_g_algebra_map(f: GAlgebraMap) -> VerificationReport:
    a, b, m = f.source, f.target, f.matrix
    ring = a.ring
    d = a.hopf.dim
    checks = [
        _compare("map-respects-product", m * a.mul, b.mul * m.kron(m)),
        _compare("map-respects-unit", m * a.unit, b.unit),
        _compare("map-colinear",
                 b.comodule.coaction * m,
                 m.kron(Matrix.identity(ring, d)) * a.comodule.coaction),
    ]
    return VerificationReport("g-algebra-map", tuple(checks))


@dataclass(frozen=True)
class PowerEntry:
    index: int
    invariant: Tuple
    exponent: Optional[int]
    preimage: Optional[Tuple]
    witness: str

    def as_dict(self):
        out = {"index": self.index, "found": self.exponent is not None,
               "witness": self.witness}
        if self.exponent is not None:
            out["exponent"] = self.exponent
        return out


@dataclass(frozen=True)
class PowerSurjectivityReport:
    e_max: int
    entries: Tuple[PowerEntry, ...]

    @property
    def all_found(self) -> bool:
        return all(e.exponent is not None for e in self.entries)

    def as_dict(self):
        return {"e_max": self.e_max, "all_found": self.all_found,
                "generators": [e.as_dict() for e in self.entries]}


def power_surjectivity_check(f: GAlgebraMap, e_max: int) -> PowerSurjectivityReport:
    """Search for powers of invariant generators of B landing in f(A^G).

    For each basis invariant b of the target, the exponents 1..e_max are
    tried in order; a hit at e is recorded together with a preimage and the
    monic integrality witness t^e - a.  A miss is reported as inconclusive,
    never as a refutation.
    """
    report = verify_g_algebra_map(f)
    if not report.ok:
        bad = ", ".join(c.name for c in report.failures())
        raise ComoduleError(f"not a map of G-algebras: {bad}")
    if e_max < 1:
        raise ExactLinalgError("e_max must be at least 1")
    a, b = f.source, f.target
    ring = a.ring
    inv_a = invariants(a.comodule)
    inv_b = invariants(b.comodule)
    image = f.matrix * inv_a
    entries = []
    for j, col in enumerate(inv_b.columns()):
        gen = Matrix.from_cols(ring, b.rank, [col])
        power = gen
        found = None
        pre: Optional[Matrix] = None
        for e in range(1, e_max + 1):
            if e > 1:
                power = b.mul * power.kron(gen)
            coords = solve(image, power)
            if coords is not None:
                found = e
                pre = inv_a * coords
                break
        if found is None:
            entries.append(PowerEntry(j, tuple(col), None, None,
                                      f"not found <= {e_max}"))
        else:
            coeffs = "[" + ", ".join(ring.fmt(row[0]) for row in pre.data) + "]"
            entries.append(PowerEntry(j, tuple(col), found,
                                      tuple(row[0] for row in pre.data),
                                      f"t^{found} - f({coeffs})"))
    return PowerSurjectivityReport(e_max, tuple(entries))


# ---------------------------------------------------------------------------
# power reductivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComoduleMap:
    source: ComoduleData
    target: ComoduleData
    matrix: Matrix   # target.rank x source.rank

    def __post_init__(self):
        if self.matrix.rows != self.target.rank \
                or self.matrix.cols != self.source.rank:
            raise ComoduleError("comodule map shape")
        if self.source.hopf != self.target.hopf:
            raise ComoduleError("comodule map across different coordinate rings")


def verify_comodule_map(f: ComoduleMap) -> VerificationReport:
    d = f.source.hopf.dim
    eye = Matrix.identity(f.source.ring, d)
    checks = [_compare("map-colinear",
                       f.target.coaction * f.matrix,
                       f.matrix.kron(eye) * f.source.coaction)]
    return VerificationReport("comodule-map", tuple(checks))


def _row_is_onto(ring: RingSpec, row: Sequence) -> bool:
    # a 1 x r map onto the base is surjective iff its entries generate 1
    if ring.is_field:
        return any(x for x in row)
    g = 0
    for x in row:
        g = gcd(g, int(x))
    if ring.kind == "Integers":
        return g == 1
    return gcd(g, ring.modulus) == 1


def symmetric_power_comodule(v: ComoduleData, d: int) -> Tuple[ComoduleData, List[Tuple[int, ...]]]:
    """S^d of a comodule with the diagonal coaction, monomial basis.

    Basis monomials are the weakly increasing index tuples of length d in
    graded lexicographic order.  The coaction is computed multiplicatively:
    each tensor factor's coaction is expanded and the results multiplied in
    S^d M (x) H, which needs the coordinate ring commutative.  No divided
    power correction in characteristic p: this is the honest quotient of
    the d-th tensor power.
    """
    if d < 1:
        raise ComoduleError("symmetric power degree must be positive")
    h = v.hopf
    if not h.commutative:
        raise ComoduleError("symmetric powers need a commutative coordinate ring")
    ring, m, dh = v.ring, v.rank, h.dim
    monos = list(combinations_with_replacement(range(m), d))
    index = {mono: p for p, mono in enumerate(monos)}
    nmono = len(monos)
    zero_vec = tuple([ring.zero()] * dh)

    def times_basis(u: Tuple, t: int) -> Tuple:
        # coordinates of (vector u) * h_t inside H
        out = [ring.zero()] * dh
        for aa, ua in enumerate(u):
            if ua:
                for k in range(dh):
                    c = h.mul.data[k][aa * dh + t]
                    if c:
                        out[k] = ring.normalize(out[k] + ua * c)
        return tuple(out)

    one_h = tuple(row[0] for row in h.unit.data)
    cols = []
    for mono in monos:
        # expand prod_i rho(x_i) term by term, starting from 1 (x) 1_H
        acc: Dict[Tuple[int, ...], Tuple] = {(): one_h}
        for i in mono:
            nxt: Dict[Tuple[int, ...], Tuple] = {}
            for key, hv in acc.items():
                for j in range(m):
                    for t in range(dh):
                        c = v.coaction.data[j * dh + t][i]
                        if not c:
                            continue
                        prod = times_basis(hv, t)
                        if all(x == ring.zero() for x in prod):
                            continue
                        nkey = tuple(sorted(key + (j,)))
                        cur = nxt.get(nkey, zero_vec)
                        nxt[nkey] = tuple(
                            ring.normalize(cur[k] + c * prod[k])
                            for k in range(dh))
            acc = nxt
        col = [ring.zero()] * (nmono * dh)
        for key, hv in acc.items():
            p = index[key]
            for t in range(dh):
                col[p * dh + t] = hv[t]
        cols.append(col)
    coact = Matrix.from_cols(ring, nmono * dh, cols)
    sym = ComoduleData(h, nmono, coact,
                       name=f"S^{d}({v.name})" if v.name else f"S^{d}")
    return sym, monos


def power_reductivity_witness(phi: ComoduleMap, d_max: int) -> Optional[int]:
    """Least d with (S^d M)^G -> S^d L surjective, or None if none <= d_max.

    The target must be rank one with the trivial coaction and phi itself
    must be onto.  Each symmetric power gets the diagonal coaction; the
    induced map sends a monomial to the product of the images of its
    factors, and surjectivity onto the rank-one target is the unit-ideal
    test on the composite with the invariants inclusion.
    """
    src, tgt = phi.source, phi.target
    h = src.hopf
    ring = src.ring
    if tgt.rank != 1:
        raise ComoduleError("target must have rank one")
    if tgt.coaction != Matrix.identity(ring, 1).kron(h.unit):
        raise ComoduleError("target must carry the trivial coaction")
    rep = verify_comodule_map(phi)
    if not rep.ok:
        raise ComoduleError("phi is not a comodule map")
    if not _row_is_onto(ring, phi.matrix.data[0]):
        raise ComoduleError("phi is not surjective")
    if d_max < 1:
        raise ExactLinalgError("d_max must be at least 1")
    scalars = phi.matrix.data[0]
    for d in range(1, d_max + 1):
        sym, monos = symmetric_power_comodule(src, d)
        inv = invariants(sym)
        if inv.cols == 0:
            continue
        # induced map on a monomial: the product of the factors' images
        t_row = []
        for mono in monos:
            val = ring.one()
            for i in mono:
                val = ring.normalize(val * scalars[i])
            t_row.append(val)
        composite = Matrix(ring, [t_row]) * inv
        if _row_is_onto(ring, composite.data[0]):
            return d
    return None
