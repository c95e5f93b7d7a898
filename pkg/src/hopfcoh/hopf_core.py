"""Hopf algebra structure data, axiom verification, duals, serialization.

Index conventions, used everywhere downstream: a rank-d algebra stores its
multiplication as the d x d^2 matrix M with e_i * e_j = sum_k M[k, i*d + j] e_k,
comultiplication as the d^2 x d matrix C with Delta(e_k) = sum C[i*d+j, k]
e_i (x) e_j, the unit as a d x 1 column, the counit as a 1 x d row and the
antipode as a d x d matrix acting on coordinate columns.  Tensor factors are
always flattened lexicographically, (i, j) -> i*d2 + j, which makes the
Kronecker product of matrices the matrix of the tensor product of maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .exact_linalg import (
    Matrix,
    RingSpec,
    ZZ,
    QQ,
    ExactLinalgError,
    solve,
)


class HopfDataError(ExactLinalgError):
    """Structure data with inconsistent shapes or rings."""


class SchemaError(ExactLinalgError):
    """Malformed serialized payload."""


class BaseChangeError(ExactLinalgError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    witness: Optional[Tuple[int, int]] = None

    def as_dict(self):
        out = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = {"row": self.witness[0], "col": self.witness[1]}
        return out


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: Tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def as_dict(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
        }


def _compare(name: str, a: Matrix, b: Matrix) -> CheckResult:
    """Equality check that reports the first differing entry on failure."""
    if a.rows != b.rows or a.cols != b.cols:
        return CheckResult(name, False, (-1, -1))
    if a == b:
        return CheckResult(name, True)
    for i in range(a.rows):
        ra, rb = a.data[i], b.data[i]
        if ra != rb:
            for j in range(a.cols):
                if ra[j] != rb[j]:
                    return CheckResult(name, False, (i, j))
    return CheckResult(name, True)


def _flag_check(name: str, flag: bool, actual: bool) -> CheckResult:
    return CheckResult(name, flag == actual)


@dataclass(frozen=True)
class CoalgebraData:
    ring: RingSpec
    dim: int
    comul: Matrix          # d^2 x d
    counit: Matrix         # 1 x d
    basis_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        d = self.dim
        if self.comul.rows != d * d or self.comul.cols != d:
            raise HopfDataError(f"comul must be {d*d}x{d}")
        if self.counit.rows != 1 or self.counit.cols != d:
            raise HopfDataError(f"counit must be 1x{d}")
        if self.comul.ring != self.ring or self.counit.ring != self.ring:
            raise HopfDataError("coalgebra ring mismatch")
        if self.basis_labels and len(self.basis_labels) != d:
            raise HopfDataError("basis label count mismatch")


@dataclass(frozen=True)
class AlgebraData:
    ring: RingSpec
    dim: int
    mul: Matrix            # d x d^2
    unit: Matrix           # d x 1
    augmentation: Optional[Matrix] = None   # 1 x d algebra map to the base

    def __post_init__(self):
        d = self.dim
        if self.mul.rows != d or self.mul.cols != d * d:
            raise HopfDataError(f"mul must be {d}x{d*d}")
        if self.unit.rows != d or self.unit.cols != 1:
            raise HopfDataError(f"unit must be {d}x1")
        if self.mul.ring != self.ring or self.unit.ring != self.ring:
            raise HopfDataError("algebra ring mismatch")
        if self.augmentation is not None and (
                self.augmentation.rows != 1 or self.augmentation.cols != d):
            raise HopfDataError(f"augmentation must be 1x{d}")

    def left_mult(self, i: int) -> Matrix:
        """Matrix of left multiplication by the i-th basis element."""
        d = self.dim
        data = [[self.mul.data[k][i * d + j] for j in range(d)] for k in range(d)]
        return Matrix._raw(self.ring, d, d, data)

    def right_mult(self, i: int) -> Matrix:
        d = self.dim
        data = [[self.mul.data[k][j * d + i] for j in range(d)] for k in range(d)]
        return Matrix._raw(self.ring, d, d, data)

    def product(self, x: Matrix, y: Matrix) -> Matrix:
        """Product of two coordinate columns."""
        return self.mul * x.kron(y)


@dataclass(frozen=True)
class HopfAlgebraData:
    ring: RingSpec
    dim: int
    mul: Matrix
    unit: Matrix
    comul: Matrix
    counit: Matrix
    antipode: Matrix
    commutative: bool
    cocommutative: bool
    basis_labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        d = self.dim
        shapes = [
            (self.mul, d, d * d), (self.unit, d, 1),
            (self.comul, d * d, d), (self.counit, 1, d),
            (self.antipode, d, d),
        ]
        for m, r, c in shapes:
            if m.rows != r or m.cols != c:
                raise HopfDataError(f"expected {r}x{c}, got {m.rows}x{m.cols}")
            if m.ring != self.ring:
                raise HopfDataError("structure map ring mismatch")
        if self.basis_labels and len(self.basis_labels) != d:
            raise HopfDataError("basis label count mismatch")

    @property
    def algebra(self) -> AlgebraData:
        return AlgebraData(self.ring, self.dim, self.mul, self.unit, self.counit)

    @property
    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(self.ring, self.dim, self.comul, self.counit,
                             self.basis_labels)

    def labels(self) -> Tuple[str, ...]:
        if self.basis_labels:
            return self.basis_labels
        return tuple(f"e{i}" for i in range(self.dim))

    def left_mult(self, i: int) -> Matrix:
        return self.algebra.left_mult(i)

    def right_mult(self, i: int) -> Matrix:
        return self.algebra.right_mult(i)

    def product(self, x: Matrix, y: Matrix) -> Matrix:
        return self.mul * x.kron(y)


# ---------------------------------------------------------------------------
# permutations of tensor factors
# ---------------------------------------------------------------------------

def tensor_shuffle(ring: RingSpec, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Permutation matrix sending e_{x_0} (x) ... (x) e_{x_{k-1}} to the basis
    vector indexed by (x_{perm[0]}, ..., x_{perm[k-1]}).

    Output factor dimensions are dims[perm[i]]; both sides are flattened
    lexicographically.
    """
    k = len(dims)
    if sorted(perm) != list(range(k)):
        raise HopfDataError(f"{perm} is not a permutation")
    total = 1
    for d in dims:
        total *= d
    out_dims = [dims[p] for p in perm]
    z, o = ring.zero(), ring.one()
    rows = [[z] * total for _ in range(total)]
    # enumerate all index tuples once
    for flat in range(total):
        rem = flat
        tup = [0] * k
        for i in range(k - 1, -1, -1):
            tup[i] = rem % dims[i]
            rem //= dims[i]
        out = 0
        for i in range(k):
            out = out * out_dims[i] + tup[perm[i]]
        rows[out][flat] = o
    return Matrix._raw(ring, total, total, rows)


def swap_factors(ring: RingSpec, d1: int, d2: int) -> Matrix:
    return tensor_shuffle(ring, [d1, d2], [1, 0])


# ---------------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------------

def verify_coalgebra(c: CoalgebraData) -> VerificationReport:
    d = c.dim
    ring = c.ring
    eye = Matrix.identity(ring, d)
    lhs = c.comul.kron(eye) * c.comul
    rhs = eye.kron(c.comul) * c.comul
    checks = [
        _compare("coassociativity", lhs, rhs),
        _compare("counit-left", c.counit.kron(eye) * c.comul, eye),
        _compare("counit-right", eye.kron(c.counit) * c.comul, eye),
    ]
    return VerificationReport("coalgebra", tuple(checks))


def verify_algebra(a: AlgebraData) -> VerificationReport:
    d = a.dim
    ring = a.ring
    eye = Matrix.identity(ring, d)
    checks = [
        _compare("associativity", a.mul * a.mul.kron(eye), a.mul * eye.kron(a.mul)),
        _compare("unit-left", a.mul * a.unit.kron(eye), eye),
        _compare("unit-right", a.mul * eye.kron(a.unit), eye),
    ]
    if a.augmentation is not None:
        aug = a.augmentation
        checks.append(_compare("augmentation-multiplicative",
                               aug * a.mul, aug.kron(aug)))
        checks.append(_compare("augmentation-unit", aug * a.unit,
                               Matrix.identity(ring, 1)))
    return VerificationReport("algebra", tuple(checks))


def verify_hopf(h: HopfAlgebraData) -> VerificationReport:
    ring, d = h.ring, h.dim
    eye = Matrix.identity(ring, d)
    checks = list(verify_algebra(h.algebra).checks)
    checks += list(verify_coalgebra(h.coalgebra).checks)

    mid = tensor_shuffle(ring, [d, d, d, d], [0, 2, 1, 3])
    checks.append(_compare(
        "comul-is-algebra-map",
        h.comul * h.mul,
        h.mul.kron(h.mul) * mid * h.comul.kron(h.comul)))
    checks.append(_compare("comul-unit", h.comul * h.unit, h.unit.kron(h.unit)))
    checks.append(_compare("counit-is-algebra-map",
                           h.counit * h.mul, h.counit.kron(h.counit)))
    checks.append(_compare("counit-unit", h.counit * h.unit,
                           Matrix.identity(ring, 1)))

    unit_counit = h.unit * h.counit
    checks.append(_compare("antipode-left",
                           h.mul * h.antipode.kron(eye) * h.comul, unit_counit))
    checks.append(_compare("antipode-right",
                           h.mul * eye.kron(h.antipode) * h.comul, unit_counit))

    sw = swap_factors(ring, d, d)
    checks.append(_flag_check("commutative-flag", h.commutative,
                              h.mul * sw == h.mul))
    checks.append(_flag_check("cocommutative-flag", h.cocommutative,
                              sw * h.comul == h.comul))
    return VerificationReport(h.name or "hopf", tuple(checks))


def antipode_properties_check(h: HopfAlgebraData) -> VerificationReport:
    """Derived antipode identities: algebra/coalgebra antimorphism, bijectivity."""
    ring, d = h.ring, h.dim
    S = h.antipode
    sw = swap_factors(ring, d, d)
    checks = [
        _compare("antipode-antimultiplicative",
                 S * h.mul, h.mul * S.kron(S) * sw),
        _compare("antipode-unit", S * h.unit, h.unit),
        _compare("antipode-anticomultiplicative",
                 h.comul * S, sw * S.kron(S) * h.comul),
        _compare("antipode-counit", h.counit * S, h.counit),
        CheckResult("antipode-bijective",
                    solve(S, Matrix.identity(ring, d)) is not None),
    ]
    return VerificationReport("antipode", tuple(checks))


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------

def convolution(c: CoalgebraData, a: AlgebraData, f: Matrix, g: Matrix) -> Matrix:
    """Convolution f * g = mul . (f (x) g) . comul of maps C -> A."""
    if f.cols != c.dim or g.cols != c.dim or f.rows != a.dim or g.rows != a.dim:
        raise HopfDataError("convolution operand shapes")
    return a.mul * f.kron(g) * c.comul


def convolution_unit(c: CoalgebraData, a: AlgebraData) -> Matrix:
    return a.unit * c.counit


# ---------------------------------------------------------------------------
# duals and tensor products
# ---------------------------------------------------------------------------

def dual_hopf(h: HopfAlgebraData) -> HopfAlgebraData:
    """Dual Hopf algebra on the dual basis.

    Transposing each structure map swaps multiplication with comultiplication
    and unit with counit; the antipode dualizes to its transpose.  Applying
    this twice returns the original structure constants on the nose.
    """
    labels = tuple(lbl + "*" for lbl in h.labels())
    return HopfAlgebraData(
        ring=h.ring,
        dim=h.dim,
        mul=h.comul.T,
        unit=h.counit.T,
        comul=h.mul.T,
        counit=h.unit.T,
        antipode=h.antipode.T,
        commutative=h.cocommutative,
        cocommutative=h.commutative,
        basis_labels=labels,
        name=(h.name + "^*") if h.name else "",
    )


def tensor_hopf(h1: HopfAlgebraData, h2: HopfAlgebraData,
                name: str = "") -> HopfAlgebraData:
    """Tensor product Hopf algebra; basis (i, j) -> i*dim2 + j."""
    if h1.ring != h2.ring:
        raise HopfDataError("tensor factors over different rings")
    ring = h1.ring
    d1, d2 = h1.dim, h2.dim
    mid_in = tensor_shuffle(ring, [d1, d2, d1, d2], [0, 2, 1, 3])
    mid_out = tensor_shuffle(ring, [d1, d1, d2, d2], [0, 2, 1, 3])
    labels = tuple(f"{a}.{b}" for a in h1.labels() for b in h2.labels())
    return HopfAlgebraData(
        ring=ring,
        dim=d1 * d2,
        mul=h1.mul.kron(h2.mul) * mid_in,
        unit=h1.unit.kron(h2.unit),
        comul=mid_out * h1.comul.kron(h2.comul),
        counit=h1.counit.kron(h2.counit),
        antipode=h1.antipode.kron(h2.antipode),
        commutative=h1.commutative and h2.commutative,
        cocommutative=h1.cocommutative and h2.cocommutative,
        basis_labels=labels,
        name=name,
    )


def base_change(h: HopfAlgebraData, target: RingSpec) -> HopfAlgebraData:
    """Extend scalars along the canonical map, when one exists.

    Z maps to every supported ring; Z/n maps onto Z/m and F_m for m | n;
    everything maps to itself.  Other directions are rejected.
    """
    src = h.ring
    if src != target:
        if src.kind == "Integers":
            pass
        elif src.modulus is not None and target.modulus is not None \
                and src.modulus % target.modulus == 0:
            pass
        else:
            raise BaseChangeError(f"no canonical map {src} -> {target}")
    conv = lambda m: m.change_ring(target)
    return HopfAlgebraData(
        ring=target,
        dim=h.dim,
        mul=conv(h.mul),
        unit=conv(h.unit),
        comul=conv(h.comul),
        counit=conv(h.counit),
        antipode=conv(h.antipode),
        commutative=h.commutative,
        cocommutative=h.cocommutative,
        basis_labels=h.basis_labels,
        name=h.name,
    )


# ---------------------------------------------------------------------------
# serialization (schema "hopf-v1")
# ---------------------------------------------------------------------------

def _ring_to_json(ring: RingSpec) -> dict:
    out = {"kind": ring.kind}
    if ring.modulus is not None:
        out["modulus"] = ring.modulus
    return out


def _ring_from_json(obj) -> RingSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("ring must be an object with a 'kind'")
    try:
        return RingSpec(obj["kind"], obj.get("modulus"))
    except ExactLinalgError as e:
        raise SchemaError(str(e))


def hopf_to_json_dict(h: HopfAlgebraData) -> dict:
    d = h.dim
    fmt = h.ring.fmt
    mul = [[[fmt(h.mul.data[k][i * d + j]) for k in range(d)]
            for j in range(d)] for i in range(d)]
    comul = [[[fmt(h.comul.data[i * d + j][k]) for j in range(d)]
              for i in range(d)] for k in range(d)]
    out = {
        "schema": "hopf-v1",
        "ring": _ring_to_json(h.ring),
        "rank": d,
        "basis": list(h.labels()),
        "mul": mul,
        "unit": [fmt(h.unit.data[i][0]) for i in range(d)],
        "comul": comul,
        "counit": [fmt(h.counit.data[0][j]) for j in range(d)],
        "antipode": [[fmt(x) for x in row] for row in h.antipode.data],
        "commutative": h.commutative,
        "cocommutative": h.cocommutative,
    }
    if h.name:
        out["name"] = h.name
    return out


def hopf_from_json_dict(obj) -> HopfAlgebraData:
    if not isinstance(obj, dict):
        raise SchemaError("payload must be an object")
    if obj.get("schema") != "hopf-v1":
        raise SchemaError(f"unsupported schema {obj.get('schema')!r}")
    ring = _ring_from_json(obj.get("ring"))
    try:
        d = int(obj["rank"])
        basis = obj.get("basis") or [f"e{i}" for i in range(d)]
        parse = ring.parse
        raw_mul = obj["mul"]
        raw_comul = obj["comul"]
        mul = [[None] * (d * d) for _ in range(d)]
        for i in range(d):
            for j in range(d):
                coeffs = raw_mul[i][j]
                if len(coeffs) != d:
                    raise SchemaError("mul entry of wrong length")
                for k in range(d):
                    mul[k][i * d + j] = parse(coeffs[k])
        comul = [[None] * d for _ in range(d * d)]
        for k in range(d):
            mat = raw_comul[k]
            for i in range(d):
                if len(mat[i]) != d:
                    raise SchemaError("comul entry of wrong shape")
                for j in range(d):
                    comul[i * d + j][k] = parse(mat[i][j])
        unit = [[parse(x)] for x in obj["unit"]]
        counit = [[parse(x) for x in obj["counit"]]]
        antipode = [[parse(x) for x in row] for row in obj["antipode"]]
        h = HopfAlgebraData(
            ring=ring,
            dim=d,
            mul=Matrix(ring, mul),
            unit=Matrix(ring, unit),
            comul=Matrix(ring, comul),
            counit=Matrix(ring, counit),
            antipode=Matrix(ring, antipode),
            commutative=bool(obj["commutative"]),
            cocommutative=bool(obj["cocommutative"]),
            basis_labels=tuple(str(b) for b in basis),
            name=str(obj.get("name", "")),
        )
    except SchemaError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed hopf-v1 payload: {e}")
    return h


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def hopf_dumps(h: HopfAlgebraData) -> str:
    return dumps_canonical(hopf_to_json_dict(h))


def hopf_loads(text: str) -> HopfAlgebraData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not JSON: {e}")
    return hopf_from_json_dict(obj)
