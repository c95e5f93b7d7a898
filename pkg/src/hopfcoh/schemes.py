"""Constructors for the finite flat group schemes the tool knows how to build.

Group schemes are handled through their coordinate Hopf algebras.  Constant
schemes and group algebras come from finite group multiplication tables,
mu_n is the coordinate ring of the n-th roots of unity, alpha_{p^r} the
infinitesimal kernel in characteristic p.  Closed subgroup schemes arise as
quotients by Hopf ideals; the quotient is formed only when it is free over
the base, which the Smith form decides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from .exact_linalg import (
    ExactLinalgError,
    Matrix,
    RingSpec,
    UnsupportedRingError,
    ZZ,
    _snf_work,
    column_basis,
    lattice_equal,
    rank,
    ring_from_token,
    solve,
)
from .hopf_core import (
    HopfAlgebraData,
    HopfDataError,
    verify_hopf,
)


class GroupTableError(ExactLinalgError):
    pass


class HopfIdealError(ExactLinalgError):
    """Generators do not cut out a closed subgroup scheme."""


class CharacteristicError(ExactLinalgError):
    pass


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table of a finite group; table[i][j] = index of g_i g_j."""

    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupTableError("table shape mismatch")
        t = self.table
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise GroupTableError(f"not associative at ({i},{j},{k})")
        if self.identity is None:
            raise GroupTableError("no identity element")
        e = self.identity
        for i in range(n):
            if e not in [t[i][j] for j in range(n)]:
                raise GroupTableError(f"element {i} has no inverse")

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> Optional[int]:
        n = len(self.labels)
        for e in range(n):
            if all(self.table[e][i] == i and self.table[i][e] == i for i in range(n)):
                return e
        return None

    def inverse(self, i: int) -> int:
        e = self.identity
        return next(j for j in range(self.order) if self.table[i][j] == e)

    @property
    def abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(n))


def cyclic_table(n: int) -> GroupTable:
    labels = tuple("e" if i == 0 else f"g{i}" if n > 2 else "g" for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return GroupTable(labels, table)


def klein_table() -> GroupTable:
    # Z/2 x Z/2 written multiplicatively
    labels = ("e", "a", "b", "ab")
    table = tuple(tuple(i ^ j for j in range(4)) for i in range(4))
    return GroupTable(labels, table)


def symmetric3_table() -> GroupTable:
    """S_3 as permutations of {0,1,2}, composition applied right first."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    labels = ("e", "r", "r2", "s", "rs", "r2s")
    idx = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(idx[tuple(p[q[x]] for x in range(3))] for q in perms)
        for p in perms)
    return GroupTable(labels, table)


# ---------------------------------------------------------------------------
# group schemes as commutative Hopf algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSchemeData:
    """A finite flat group scheme, carried by its coordinate ring.

    The Hopf algebra is the ring of functions on the scheme and so must be
    commutative; that is checked entrywise at construction, not trusted from
    the flag.  provenance records the constructor call that produced the
    scheme as (key, value) pairs, starting with the constructor tag.
    """

    hopf: HopfAlgebraData
    name: str = ""
    provenance: Tuple[Tuple[str, object], ...] = ()

    def __post_init__(self):
        if not self.hopf.commutative:
            raise HopfDataError(
                "the coordinate ring of a group scheme must be commutative")
        d = self.hopf.dim
        mul = self.hopf.mul.data
        for i in range(d):
            for j in range(i):
                for k in range(d):
                    if mul[k][i * d + j] != mul[k][j * d + i]:
                        raise HopfDataError(
                            "coordinate ring multiplication is not commutative")

    @property
    def ring(self) -> RingSpec:
        return self.hopf.ring

    @property
    def dim(self) -> int:
        return self.hopf.dim

    @property
    def mul(self) -> Matrix:
        return self.hopf.mul

    @property
    def unit(self) -> Matrix:
        return self.hopf.unit

    @property
    def comul(self) -> Matrix:
        return self.hopf.comul

    @property
    def counit(self) -> Matrix:
        return self.hopf.counit

    @property
    def antipode(self) -> Matrix:
        return self.hopf.antipode

    @property
    def commutative(self) -> bool:
        return True

    @property
    def cocommutative(self) -> bool:
        return self.hopf.cocommutative

    @property
    def basis_labels(self) -> Tuple[str, ...]:
        return self.hopf.basis_labels

    def labels(self) -> Tuple[str, ...]:
        return self.hopf.labels()

    @property
    def algebra(self):
        return self.hopf.algebra

    def left_mult(self, i: int) -> Matrix:
        return self.hopf.left_mult(i)

    def right_mult(self, i: int) -> Matrix:
        return self.hopf.right_mult(i)


def as_hopf(x) -> HopfAlgebraData:
    """Coordinate Hopf algebra of a scheme, or a bare Hopf algebra as is."""
    if isinstance(x, GroupSchemeData):
        return x.hopf
    if isinstance(x, HopfAlgebraData):
        return x
    raise HopfDataError(
        f"expected a group scheme or Hopf algebra, got {type(x).__name__}")


def _as_scheme(x) -> GroupSchemeData:
    if isinstance(x, GroupSchemeData):
        return x
    return GroupSchemeData(hopf=x, name=x.name,
                           provenance=(("constructor", "wrap"),))


def _scheme(hopf: HopfAlgebraData, tag: str, **params) -> GroupSchemeData:
    prov = (("constructor", tag),) + tuple(sorted(params.items()))
    return GroupSchemeData(hopf=hopf, name=hopf.name, provenance=prov)


# ---------------------------------------------------------------------------
# the standard families
# ---------------------------------------------------------------------------

def trivial_scheme(ring: RingSpec) -> GroupSchemeData:
    one = Matrix.identity(ring, 1)
    h = HopfAlgebraData(
        ring=ring, dim=1, mul=one, unit=one, comul=one, counit=one,
        antipode=one, commutative=True, cocommutative=True,
        basis_labels=("1",), name="trivial")
    return _scheme(h, "trivial_scheme", ring=str(ring))


def constant_group_scheme(table: GroupTable, ring: RingSpec,
                          name: str = "") -> GroupSchemeData:
    """Functions on a finite group: basis of indicators f_g, pointwise product."""
    n = table.order
    z, o = ring.zero(), ring.one()
    mul = [[z] * (n * n) for _ in range(n)]
    for i in range(n):
        mul[i][i * n + i] = o
    unit = [[o] for _ in range(n)]
    comul = [[z] * n for _ in range(n * n)]
    for a in range(n):
        for b in range(n):
            comul[a * n + b][table.table[a][b]] = o
    counit = [[o if g == table.identity else z for g in range(n)]]
    antipode = [[z] * n for _ in range(n)]
    for g in range(n):
        antipode[table.inverse(g)][g] = o
    h = HopfAlgebraData(
        ring=ring, dim=n,
        mul=Matrix._raw(ring, n, n * n, mul),
        unit=Matrix._raw(ring, n, 1, unit),
        comul=Matrix._raw(ring, n * n, n, comul),
        counit=Matrix._raw(ring, 1, n, counit),
        antipode=Matrix._raw(ring, n, n, antipode),
        commutative=True,
        cocommutative=table.abelian,
        basis_labels=tuple(f"f_{lbl}" for lbl in table.labels),
        name=name or "constant")
    return _scheme(h, "constant_group_scheme", order=n, ring=str(ring))


def group_algebra(table: GroupTable, ring: RingSpec,
                  name: str = "") -> HopfAlgebraData:
    """Group algebra with grouplike basis; the dual of the constant scheme."""
    n = table.order
    z, o = ring.zero(), ring.one()
    mul = [[z] * (n * n) for _ in range(n)]
    for a in range(n):
        for b in range(n):
            mul[table.table[a][b]][a * n + b] = o
    unit = [[o if g == table.identity else z] for g in range(n)]
    comul = [[z] * n for _ in range(n * n)]
    for g in range(n):
        comul[g * n + g][g] = o
    counit = [[o] * n]
    antipode = [[z] * n for _ in range(n)]
    for g in range(n):
        antipode[table.inverse(g)][g] = o
    return HopfAlgebraData(
        ring=ring, dim=n,
        mul=Matrix._raw(ring, n, n * n, mul),
        unit=Matrix._raw(ring, n, 1, unit),
        comul=Matrix._raw(ring, n * n, n, comul),
        counit=Matrix._raw(ring, 1, n, counit),
        antipode=Matrix._raw(ring, n, n, antipode),
        commutative=table.abelian,
        cocommutative=True,
        basis_labels=tuple(table.labels),
        name=name or "group-algebra")


def mu_n(n: int, ring: RingSpec) -> GroupSchemeData:
    """Coordinate ring k[t]/(t^n - 1) of the n-th roots of unity."""
    if n < 1:
        raise HopfDataError("mu_n needs n >= 1")
    z, o = ring.zero(), ring.one()
    mul = [[z] * (n * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mul[(i + j) % n][i * n + j] = o
    unit = [[o if i == 0 else z] for i in range(n)]
    comul = [[z] * n for _ in range(n * n)]
    for k in range(n):
        comul[k * n + k][k] = o
    counit = [[o] * n]
    antipode = [[z] * n for _ in range(n)]
    for k in range(n):
        antipode[(-k) % n][k] = o
    h = HopfAlgebraData(
        ring=ring, dim=n,
        mul=Matrix._raw(ring, n, n * n, mul),
        unit=Matrix._raw(ring, n, 1, unit),
        comul=Matrix._raw(ring, n * n, n, comul),
        counit=Matrix._raw(ring, 1, n, counit),
        antipode=Matrix._raw(ring, n, n, antipode),
        commutative=True,
        cocommutative=True,
        basis_labels=tuple("1" if k == 0 else f"t^{k}" if k > 1 else "t"
                           for k in range(n)),
        name=f"mu-{n}")
    return _scheme(h, "mu_n", n=n, ring=str(ring))


def alpha_pr(p: int, r: int, ring: RingSpec) -> GroupSchemeData:
    """k[t]/(t^q), q = p^r, with t primitive; needs characteristic p."""
    if ring.characteristic != p:
        raise CharacteristicError(
            f"alpha needs characteristic {p}, ring has {ring.characteristic}")
    if r < 1:
        raise HopfDataError("alpha needs r >= 1")
    q = p ** r
    z, o = ring.zero(), ring.one()
    mul = [[z] * (q * q) for _ in range(q)]
    for i in range(q):
        for j in range(q):
            if i + j < q:
                mul[i + j][i * q + j] = o
    unit = [[o if i == 0 else z] for i in range(q)]
    comul = [[z] * q for _ in range(q * q)]
    for k in range(q):
        for j in range(k + 1):
            c = ring.normalize(comb(k, j))
            if c:
                comul[j * q + (k - j)][k] = c
    counit = [[o if k == 0 else z for k in range(q)]]
    antipode = [[z] * q for _ in range(q)]
    for k in range(q):
        antipode[k][k] = ring.normalize((-1) ** k)
    h = HopfAlgebraData(
        ring=ring, dim=q,
        mul=Matrix._raw(ring, q, q * q, mul),
        unit=Matrix._raw(ring, q, 1, unit),
        comul=Matrix(ring, comul),
        counit=Matrix._raw(ring, 1, q, counit),
        antipode=Matrix(ring, antipode),
        commutative=True,
        cocommutative=True,
        basis_labels=tuple("1" if k == 0 else f"t^{k}" if k > 1 else "t"
                           for k in range(q)),
        name=f"alpha-{q}")
    return _scheme(h, "alpha_pr", p=p, r=r, ring=str(ring))


def product_scheme(g1, g2) -> GroupSchemeData:
    from .hopf_core import tensor_hopf
    h1, h2 = as_hopf(g1), as_hopf(g2)
    name = f"{h1.name}x{h2.name}" if h1.name and h2.name else ""
    h = tensor_hopf(h1, h2, name=name)
    return _scheme(h, "product_scheme",
                   factors=(h1.name or "?", h2.name or "?"))


# ---------------------------------------------------------------------------
# closed subgroup schemes from Hopf ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupData:
    """Closed subgroup scheme presented as a quotient Hopf algebra.

    projection (q x d) and section (d x q) satisfy projection * section = id;
    the kernel of the projection is the saturated Hopf ideal.
    """

    ambient: GroupSchemeData
    sub: GroupSchemeData
    projection: Matrix
    section: Matrix
    ideal_basis: Matrix

    @property
    def ambient_hopf(self) -> HopfAlgebraData:
        return self.ambient.hopf

    @property
    def sub_hopf(self) -> HopfAlgebraData:
        return self.sub.hopf


def _saturate_ideal(h: HopfAlgebraData, gens: Matrix) -> Matrix:
    """Close the span of gens under multiplication by every basis element."""
    d = h.dim
    eye = Matrix.identity(h.ring, d)
    span = column_basis(gens)
    while True:
        left = h.mul * eye.kron(span)
        right = h.mul * span.kron(eye)
        bigger = column_basis(span.hstack(left).hstack(right))
        if lattice_equal(span, bigger):
            return span
        span = bigger


def subgroup_from_ideal(g, gens: Matrix, name: str = "") -> SubgroupData:
    """Quotient of the coordinate ring by the Hopf ideal the columns generate.

    The generators are saturated into an ideal first; then the Hopf ideal
    conditions (counit kills it, antipode and comultiplication preserve it)
    are verified, and the quotient is built from a Smith basis.  Raises
    HopfIdealError when any condition fails or the quotient is not free.
    """
    g = _as_scheme(g)
    h = g.hopf
    ring, d = h.ring, h.dim
    if gens.rows != d:
        raise HopfIdealError(f"generators must live in rank {d}")
    ideal = _saturate_ideal(h, gens)
    eye = Matrix.identity(ring, d)
    if not (h.counit * ideal).is_zero():
        raise HopfIdealError("counit does not vanish on the ideal")
    if solve(ideal, h.antipode * ideal) is None:
        raise HopfIdealError("antipode does not preserve the ideal")
    two_sided = ideal.kron(eye).hstack(eye.kron(ideal))
    if solve(two_sided, h.comul * ideal) is None:
        raise HopfIdealError("comultiplication does not map the ideal into "
                             "I (x) H + H (x) I")

    if ring.is_field:
        return _subgroup_field(g, ideal, name)
    # Smith basis of the inclusion: each diagonal entry must either be a unit
    # (coordinate dies in the quotient) or lie in the relation ideal of the
    # ring (coordinate survives freely); anything else leaves torsion.
    nmod = ring.modulus  # None over Z
    lifted = Matrix(ZZ, ideal.data)
    if nmod is not None:
        lifted = lifted.hstack(Matrix.identity(ZZ, d).scale(nmod))
    work = [[int(x) for x in row] for row in lifted.data]
    res = _snf_work(work, ("U", "Uinv"))
    diag = res["diag"] + [0] * (d - len(res["diag"]))
    keep, bad = [], []
    for i in range(d):
        di = diag[i] if i < len(diag) else 0
        if di in (1, -1):
            continue
        if di == 0 or (nmod is not None and di % nmod == 0):
            keep.append(i)
        else:
            bad.append(int(di))
    if bad:
        raise HopfIdealError(
            f"quotient is not free over {ring}: invariant factors {bad}")
    q = len(keep)
    proj = Matrix(ring, [res["U"][i] for i in keep])
    sect = Matrix(ring, [[res["Uinv"][i][j] for j in keep] for i in range(d)])
    return _assemble_subgroup(g, ideal, proj, sect, q, name)


def _subgroup_field(g: GroupSchemeData, ideal: Matrix, name: str) -> SubgroupData:
    h = g.hopf
    ring, d = h.ring, h.dim
    r = ideal.cols
    # extend the echelon ideal basis to a basis of the whole space
    leads = []
    for j in range(r):
        leads.append(next(i for i in range(d) if ideal.data[i][j]))
    rest = [i for i in range(d) if i not in leads]
    cols = ideal.columns() + [tuple(ring.one() if i == t else ring.zero()
                                    for i in range(d)) for t in rest]
    M = Matrix.from_cols(ring, d, cols)
    Minv = solve(M, Matrix.identity(ring, d))
    proj = Matrix(ring, [Minv.data[i] for i in range(r, d)])
    sect = Matrix(ring, [[M.data[i][j] for j in range(r, d)] for i in range(d)])
    return _assemble_subgroup(g, ideal, proj, sect, d - r, name)


def _assemble_subgroup(g, ideal, proj, sect, q, name) -> SubgroupData:
    from .hopf_core import swap_factors
    h = g.hopf
    ring = h.ring
    quo_comul = proj.kron(proj) * h.comul * sect
    cocomm = swap_factors(ring, q, q) * quo_comul == quo_comul
    quo = HopfAlgebraData(
        ring=ring, dim=q,
        mul=proj * h.mul * sect.kron(sect),
        unit=proj * h.unit,
        comul=quo_comul,
        counit=h.counit * sect,
        antipode=proj * h.antipode * sect,
        commutative=h.commutative,
        cocommutative=cocomm,
        name=name or (f"{h.name}/I" if h.name else "quotient"),
    )
    report = verify_hopf(quo)
    if not report.ok:
        bad = ", ".join(c.name for c in report.failures())
        raise HopfIdealError(f"quotient fails Hopf axioms: {bad}")
    # projection must be a map of Hopf algebras
    squares = [
        (proj * h.mul, quo.mul * proj.kron(proj)),
        (quo.comul * proj, proj.kron(proj) * h.comul),
        (quo.counit * proj, h.counit),
        (proj * h.unit, quo.unit),
        (quo.antipode * proj, proj * h.antipode),
    ]
    for lhs, rhs in squares:
        if lhs != rhs:
            raise HopfIdealError("projection is not a Hopf algebra map")
    sub = _scheme(quo, "subgroup_from_ideal", ambient=g.name or h.name or "?")
    return SubgroupData(ambient=g, sub=sub, projection=proj, section=sect,
                        ideal_basis=ideal)


# ---------------------------------------------------------------------------
# separability and matrix coefficients
# ---------------------------------------------------------------------------

def is_separable(h) -> bool:
    """Nondegeneracy of the trace form of the underlying algebra.

    Defined over fields; the Gram matrix has entries tr(x e_i e_j) where
    tr is the trace of left multiplication.
    """
    h = as_hopf(h)
    if not h.ring.is_field:
        raise UnsupportedRingError("separability test needs a field")
    d = h.dim
    tr = [sum(h.left_mult(k).data[i][i] for i in range(d)) for k in range(d)]
    trace_row = Matrix(h.ring, [tr])
    gram_flat = trace_row * h.mul
    gram = Matrix(h.ring, [[gram_flat.data[0][i * d + j] for j in range(d)]
                           for i in range(d)])
    return rank(gram) == d


def matrix_coefficients(h) -> List[Matrix]:
    """The d x d coefficient matrices; column k of comul reshaped.

    M_k[i][j] is the coefficient of e_i (x) e_j in the comultiplication of
    e_k, so contracting either leg with the counit gives the identity back.
    """
    h = as_hopf(h)
    d = h.dim
    out = []
    for k in range(d):
        out.append(Matrix._raw(
            h.ring, d, d,
            [[h.comul.data[i * d + j][k] for j in range(d)] for i in range(d)]))
    return out


# ---------------------------------------------------------------------------
# the builtin registry
# ---------------------------------------------------------------------------

def _abelian_group_algebra_scheme(table: GroupTable, ring: RingSpec,
                                  name: str) -> GroupSchemeData:
    # kГ is commutative exactly when Г is abelian, and then it is itself the
    # coordinate ring of a group scheme (the Cartier dual of the constant one)
    h = group_algebra(table, ring, name=name)
    return _scheme(h, "group_algebra", order=table.order, ring=str(ring))


def _builtin_constructors() -> Dict[str, Callable[[RingSpec], GroupSchemeData]]:
    return {
        "trivial": lambda ring: trivial_scheme(ring),
        "constant-C2": lambda ring: constant_group_scheme(
            cyclic_table(2), ring, name="constant-C2"),
        "constant-C3": lambda ring: constant_group_scheme(
            cyclic_table(3), ring, name="constant-C3"),
        "constant-C4": lambda ring: constant_group_scheme(
            cyclic_table(4), ring, name="constant-C4"),
        "constant-klein": lambda ring: constant_group_scheme(
            klein_table(), ring, name="constant-klein"),
        "group-algebra-C2": lambda ring: _abelian_group_algebra_scheme(
            cyclic_table(2), ring, name="group-algebra-C2"),
        "group-algebra-C3": lambda ring: _abelian_group_algebra_scheme(
            cyclic_table(3), ring, name="group-algebra-C3"),
        "mu-2": lambda ring: mu_n(2, ring),
        "mu-3": lambda ring: mu_n(3, ring),
        "mu-4": lambda ring: mu_n(4, ring),
        "alpha-2": lambda ring: alpha_pr(2, 1, ring),
        "alpha-3": lambda ring: alpha_pr(3, 1, ring),
        "alpha-4": lambda ring: alpha_pr(2, 2, ring),
    }


# short forms accepted in tokens
_BUILTIN_ALIASES = {"klein": "constant-klein", "C2": "constant-C2",
                    "C3": "constant-C3", "C4": "constant-C4"}


def builtin_names() -> List[str]:
    return sorted(_builtin_constructors())


def build_builtin(token: str) -> GroupSchemeData:
    """Resolve builtin:<name>@<ring>, e.g. builtin:constant-C2@Z."""
    spec = token
    if spec.startswith("builtin:"):
        spec = spec[len("builtin:"):]
    if "@" not in spec:
        raise HopfDataError(
            f"builtin token needs a ring, like {token}@Z")
    name, ring_token = spec.rsplit("@", 1)
    name = _BUILTIN_ALIASES.get(name, name)
    ctors = _builtin_constructors()
    if name not in ctors:
        raise HopfDataError(
            f"unknown builtin {name!r}; know about: {', '.join(sorted(ctors))}")
    ring = ring_from_token(ring_token)
    h = ctors[name](ring)
    return h


def builtins_over(ring: RingSpec) -> List[GroupSchemeData]:
    """Every registry entry constructible over the given ring."""
    out = []
    for name, ctor in sorted(_builtin_constructors().items()):
        try:
            out.append(ctor(ring))
        except (CharacteristicError, UnsupportedRingError):
            continue
    return out
