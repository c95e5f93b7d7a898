"""Exact linear algebra over Z, Q, F_p and Z/n.

Everything downstream (Hopf axioms, comodules, cohomology) reduces to the
primitives in this module: Smith normal form with unimodular witnesses,
kernels, solving, and subquotient presentations.  Matrices are dense and
entries are exact scalars (Python ints, fractions.Fraction); there is no
floating point anywhere.

Ring conventions:
  * Integers      -- entries are plain ints.
  * Rationals     -- entries are Fraction (always normalized).
  * PrimeField(p) -- entries are ints in [0, p).
  * IntegersMod(n)-- entries are ints in [0, n); linear algebra lifts to Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

try:
    import numpy as _np
except ImportError:  # optional accelerator; results are identical without it
    _np = None


class ExactLinalgError(Exception):
    """Base class for errors raised by the exact computation layer."""


class UnsupportedRingError(ExactLinalgError):
    pass


class ContainmentError(ExactLinalgError):
    """Image generators were not contained in the span of the kernel."""


class SolveError(ExactLinalgError):
    pass


INTEGERS = "Integers"
RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"
INTEGERS_MOD = "IntegersMod"


def _is_prime(n: int) -> bool:
    # deterministic trial division; moduli here are desk scale
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """One of the supported exact coefficient rings.

    kind is one of Integers, Rationals, PrimeField, IntegersMod; modulus is
    present exactly for the last two.
    """

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, PRIME_FIELD, INTEGERS_MOD):
            raise UnsupportedRingError(f"unknown ring kind {self.kind!r}")
        if self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise UnsupportedRingError(f"{self.kind} takes no modulus")
        elif self.kind == PRIME_FIELD:
            if self.modulus is None or not _is_prime(self.modulus):
                raise UnsupportedRingError(
                    f"PrimeField modulus must be prime, got {self.modulus}")
        else:
            if self.modulus is None or self.modulus < 2:
                raise UnsupportedRingError(
                    f"IntegersMod modulus must be >= 2, got {self.modulus}")

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        if self.kind in (INTEGERS, RATIONALS):
            return 0
        return self.modulus

    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def normalize(self, x):
        """Canonical representative of x in this ring."""
        if self.kind == INTEGERS:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise UnsupportedRingError(f"{x} is not an integer")
                return int(x)
            return int(x)
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.modulus == 0:
                raise UnsupportedRingError(f"{x} has no image mod {self.modulus}")
            inv = pow(x.denominator % self.modulus, -1, self.modulus)
            return (x.numerator * inv) % self.modulus
        return int(x) % self.modulus

    def is_unit(self, x) -> bool:
        x = self.normalize(x)
        if self.kind == INTEGERS:
            return x in (1, -1)
        if self.kind == RATIONALS:
            return x != 0
        if self.kind == PRIME_FIELD:
            return x % self.modulus != 0
        from math import gcd
        return gcd(x, self.modulus) == 1

    def inverse(self, x):
        x = self.normalize(x)
        if not self.is_unit(x):
            raise UnsupportedRingError(f"{x} is not a unit in {self}")
        if self.kind == INTEGERS:
            return x
        if self.kind == RATIONALS:
            return Fraction(1) / x
        return pow(x, -1, self.modulus)

    def fmt(self, x) -> str:
        if isinstance(x, Fraction) and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        if isinstance(x, Fraction):
            return str(x.numerator)
        return str(x)

    def parse(self, s):
        if isinstance(s, str) and "/" in s:
            num, den = s.split("/", 1)
            return self.normalize(Fraction(int(num), int(den)))
        return self.normalize(int(s))

    def __str__(self):
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME_FIELD:
            return f"F{self.modulus}"
        return f"Z/{self.modulus}"


ZZ = RingSpec(INTEGERS)
QQ = RingSpec(RATIONALS)


def GF(p: int) -> RingSpec:
    return RingSpec(PRIME_FIELD, p)


def Zmod(n: int) -> RingSpec:
    return RingSpec(INTEGERS_MOD, n)


def ring_from_token(token: str) -> RingSpec:
    """Parse ring names as used on the command line: Z, Q, F5, Z/12."""
    token = token.strip()
    if token == "Z":
        return ZZ
    if token == "Q":
        return QQ
    if token.startswith("F"):
        return GF(int(token[1:]))
    if token.startswith("Z/"):
        return Zmod(int(token[2:]))
    raise UnsupportedRingError(f"cannot parse ring token {token!r}")


class Matrix:
    """Immutable dense matrix over a RingSpec.

    data is a tuple of row tuples.  All entries are canonical for the ring.
    Multiplication skips zero entries, which matters for the large but very
    sparse coboundary matrices produced by the cohomology module.
    """

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: RingSpec, entries: Iterable[Iterable]):
        norm = ring.normalize
        data = tuple(tuple(norm(x) for x in row) for row in entries)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ExactLinalgError("ragged rows")
        else:
            w = 0
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", w)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    # -- internal fast path: entries already canonical ------------------
    @classmethod
    def _raw(cls, ring: RingSpec, nrows: int, ncols: int, data) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "ring", ring)
        object.__setattr__(m, "rows", nrows)
        object.__setattr__(m, "cols", ncols)
        object.__setattr__(m, "data", tuple(tuple(r) for r in data))
        return m

    @classmethod
    def zeros(cls, ring: RingSpec, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero()
        return cls._raw(ring, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return cls._raw(ring, n, n,
                        [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ring: RingSpec, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = ring.zero()
        data = [[z] * n for _ in range(n)]
        for i, e in enumerate(entries):
            data[i][i] = ring.normalize(e)
        return cls._raw(ring, n, n, data)

    @classmethod
    def column(cls, ring: RingSpec, entries: Sequence) -> "Matrix":
        return cls(ring, [[e] for e in entries])

    @classmethod
    def row_vector(cls, ring: RingSpec, entries: Sequence) -> "Matrix":
        return cls(ring, [list(entries)])

    @classmethod
    def from_cols(cls, ring: RingSpec, nrows: int, cols: Sequence[Sequence]) -> "Matrix":
        data = [[ring.normalize(c[i]) for c in cols] for i in range(nrows)]
        return cls._raw(ring, nrows, len(cols), data)

    def col(self, j: int) -> Tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> List[Tuple]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> List[List]:
        return [list(r) for r in self.data]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.data == other.data
                and self.rows == other.rows and self.cols == other.cols)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.data))

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(x == z for row in self.data for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        mod = self.ring.modulus if self.ring.kind in (PRIME_FIELD, INTEGERS_MOD) else None
        if mod is None:
            data = [[a + b for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.data, other.data)]
        else:
            data = [[(a + b) % mod for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.data, other.data)]
        return Matrix._raw(self.ring, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        mod = self.ring.modulus if self.ring.kind in (PRIME_FIELD, INTEGERS_MOD) else None
        if mod is None:
            data = [[-a for a in row] for row in self.data]
        else:
            data = [[(-a) % mod for a in row] for row in self.data]
        return Matrix._raw(self.ring, self.rows, self.cols, data)

    def scale(self, c) -> "Matrix":
        c = self.ring.normalize(c)
        mod = self.ring.modulus if self.ring.kind in (PRIME_FIELD, INTEGERS_MOD) else None
        if mod is None:
            data = [[c * a for a in row] for row in self.data]
        else:
            data = [[(c * a) % mod for a in row] for row in self.data]
        return Matrix._raw(self.ring, self.rows, self.cols, data)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ring != other.ring:
            raise ExactLinalgError("ring mismatch in matrix product")
        if self.cols != other.rows:
            raise ExactLinalgError(
                f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        mod = self.ring.modulus if self.ring.kind in (PRIME_FIELD, INTEGERS_MOD) else None
        z = self.ring.zero()
        ocols = other.cols
        odata = other.data
        out = []
        for arow in self.data:
            acc = [z] * ocols
            for k, v in enumerate(arow):
                if v:
                    brow = odata[k]
                    if v == 1:
                        for j in range(ocols):
                            b = brow[j]
                            if b:
                                acc[j] += b
                    else:
                        for j in range(ocols):
                            b = brow[j]
                            if b:
                                acc[j] += v * b
            if mod is not None:
                acc = [x % mod for x in acc]
            out.append(acc)
        return Matrix._raw(self.ring, self.rows, ocols, out)

    @property
    def T(self) -> "Matrix":
        data = [tuple(self.data[i][j] for i in range(self.rows))
                for j in range(self.cols)]
        return Matrix._raw(self.ring, self.cols, self.rows, data)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row/col index (i1,i2) -> i1*rows2 + i2."""
        if self.ring != other.ring:
            raise ExactLinalgError("ring mismatch in kron")
        mod = self.ring.modulus if self.ring.kind in (PRIME_FIELD, INTEGERS_MOD) else None
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        z = self.ring.zero()
        out = [[z] * (c1 * c2) for _ in range(r1 * r2)]
        for i1 in range(r1):
            row1 = self.data[i1]
            for j1 in range(c1):
                a = row1[j1]
                if not a:
                    continue
                rp, cp = i1 * r2, j1 * c2
                for i2 in range(r2):
                    row2 = other.data[i2]
                    orow = out[rp + i2]
                    if a == 1:
                        for j2 in range(c2):
                            b = row2[j2]
                            if b:
                                orow[cp + j2] = b
                    else:
                        for j2 in range(c2):
                            b = row2[j2]
                            if b:
                                orow[cp + j2] = a * b if mod is None else (a * b) % mod
        return Matrix._raw(self.ring, r1 * r2, c1 * c2, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ExactLinalgError("hstack row mismatch")
        data = [ra + rb for ra, rb in zip(self.data, other.data)]
        return Matrix._raw(self.ring, self.rows, self.cols + other.cols, data)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ExactLinalgError("vstack col mismatch")
        return Matrix._raw(self.ring, self.rows + other.rows, self.cols,
                           self.data + other.data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        data = [[self.data[i][j] for j in col_idx] for i in row_idx]
        return Matrix._raw(self.ring, len(row_idx), len(col_idx), data)

    def change_ring(self, target: RingSpec) -> "Matrix":
        return Matrix(target, self.data)

    def to_str_rows(self) -> List[List[str]]:
        f = self.ring.fmt
        return [[f(x) for x in row] for row in self.data]

    def __repr__(self):
        return f"Matrix({self.ring}, {self.rows}x{self.cols})"

    def _check_same_shape(self, other):
        if self.ring != other.ring or self.rows != other.rows or self.cols != other.cols:
            raise ExactLinalgError("shape or ring mismatch")


@dataclass(frozen=True)
class ModulePresentation:
    """Finitely presented module in invariant-factor form.

    Over Z this is Z^free_rank + Z/d_1 + ... with d_i | d_{i+1}; over a field
    the invariant factor list is empty and free_rank is the dimension.  Over
    Z/n a factor equal to n would be a free Z/n summand, so free_rank counts
    those and invariant_factors keeps the proper divisors.
    """

    ring: RingSpec
    free_rank: int
    invariant_factors: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ExactLinalgError(f"factors {self.invariant_factors} not a chain")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def describe(self) -> str:
        parts = []
        base = str(self.ring)
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}")
        for d in self.invariant_factors:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def annihilated_by(self, n: int) -> bool:
        """True when multiplication by n is zero on the presented module."""
        if self.ring.kind == INTEGERS:
            if self.free_rank > 0:
                return False
            return all(n % d == 0 for d in self.invariant_factors)
        if self.ring.is_field:
            p = self.ring.characteristic
            return self.free_rank == 0 or (p != 0 and n % p == 0)
        m = self.ring.modulus
        if self.free_rank > 0 and n % m != 0:
            return False
        return all(n % d == 0 for d in self.invariant_factors)


def torsion_exponent(p: ModulePresentation) -> Optional[int]:
    """Largest invariant factor of a presentation over Z, or None if torsion free."""
    if p.ring.kind != INTEGERS:
        raise UnsupportedRingError("torsion_exponent is defined over Z only")
    if not p.invariant_factors:
        return None
    return p.invariant_factors[-1]


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

def _snf_work(a: List[List[int]], want: Tuple[str, ...],
              modulus: Optional[int] = None):
    """Diagonalize an integer matrix in place by elementary operations.

    Returns a dict with the diagonal and whichever of U, Uinv, V, Vinv were
    requested, each as list-of-lists.  U*A*V = D with det(U), det(V) = +-1.
    Pivots take the entry of least absolute value in the remaining block
    (scanning stops early at a unit, which is already minimal).

    With `modulus` n, entries are freely reduced into (-n/2, n/2] along the
    way.  That is only sound for questions about span(columns) + n*Z^rows:
    the diagonal then carries the elementary divisors of Z^rows modulo that
    lattice as gcd(d_i, n), U*A*V = D holds mod n, and the divisibility
    pass is skipped (the raw diagonal need not form a chain).

    Dispatches to a vectorized twin when numpy is present and the matrix is
    big enough to care; the twin mirrors this routine operation for
    operation, so the output is the same either way.
    """
    if _np is not None and len(a) and len(a[0]) and len(a) * len(a[0]) >= _NP_MIN_ENTRIES:
        try:
            return _snf_np(a, want, modulus)
        except (_NpOverflow, OverflowError):
            pass  # entries outgrew int64; redo with arbitrary precision
    return _snf_work_py(a, want, modulus)


_NP_MIN_ENTRIES = 512
# every update is pre-checked to keep results (and intermediates) below this
_NP_LIMIT = 1 << 63


class _NpOverflow(Exception):
    pass


class _Bound:
    """Running upper bound on max|entries| of one int64 array.

    grow(mult) is called BEFORE an update that adds (mult x entries) to
    entries; keeping the bound under the cap at all times means every
    intermediate product and sum of the update fits in int64.  The exact
    rescan only happens when the estimate crosses the cap, which keeps the
    guard cheap on the (typical) all-small-entries runs.
    """

    __slots__ = ("arr", "bound")

    def __init__(self, arr):
        self.arr = arr
        self.bound = int(_np.abs(arr).max()) if arr.size else 0
        if self.bound >= _NP_LIMIT:
            raise _NpOverflow

    def grow(self, mult: int):
        new = self.bound * (1 + mult)
        if new >= _NP_LIMIT:
            self.bound = int(_np.abs(self.arr).max()) if self.arr.size else 0
            new = self.bound * (1 + mult)
            if new >= _NP_LIMIT:
                raise _NpOverflow
        self.bound = new


def _snf_np(a: List[List[int]], want: Tuple[str, ...],
            modulus: Optional[int] = None):
    """Vectorized replica of _snf_work_py; same pivots, same output.

    Works on an int64 copy and writes back into `a` only on success, so a
    fallback after _NpOverflow sees the input untouched.
    """
    A = _np.array(a, dtype=_np.int64)
    m, n = A.shape
    if modulus is not None:
        half = modulus >> 1

        def red(x):
            # balanced residues keep every pivot and quotient below modulus
            return (x + half) % modulus - half

        A = red(A)
    eye = _np.eye
    U = eye(m, dtype=_np.int64) if "U" in want else None
    Uinv = eye(m, dtype=_np.int64) if "Uinv" in want else None
    V = eye(n, dtype=_np.int64) if "V" in want else None
    Vinv = eye(n, dtype=_np.int64) if "Vinv" in want else None
    bA = _Bound(A)
    bU = _Bound(U) if U is not None else None
    bUinv = _Bound(Uinv) if Uinv is not None else None
    bV = _Bound(V) if V is not None else None
    bVinv = _Bound(Vinv) if Vinv is not None else None

    def row_swap(i, j):
        if i == j:
            return
        A[[i, j], :] = A[[j, i], :]
        if U is not None:
            U[[i, j], :] = U[[j, i], :]
        if Uinv is not None:
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def col_swap(i, j):
        if i == j:
            return
        A[:, [i, j]] = A[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]
        if Vinv is not None:
            Vinv[[i, j], :] = Vinv[[j, i], :]

    def row_add(i, j, q):
        # row i += q * row j
        bA.grow(abs(q))
        A[i, :] += q * A[j, :]
        if modulus is not None:
            A[i, :] = red(A[i, :])
        if U is not None:
            bU.grow(abs(q))
            U[i, :] += q * U[j, :]
            if modulus is not None:
                U[i, :] = red(U[i, :])
        if Uinv is not None:
            bUinv.grow(abs(q))
            Uinv[:, j] -= q * Uinv[:, i]
            if modulus is not None:
                Uinv[:, j] = red(Uinv[:, j])

    def col_add(i, j, q):
        # col i += q * col j
        bA.grow(abs(q))
        A[:, i] += q * A[:, j]
        if modulus is not None:
            A[:, i] = red(A[:, i])
        if V is not None:
            bV.grow(abs(q))
            V[:, i] += q * V[:, j]
            if modulus is not None:
                V[:, i] = red(V[:, i])
        if Vinv is not None:
            bVinv.grow(abs(q))
            Vinv[j, :] -= q * Vinv[i, :]
            if modulus is not None:
                Vinv[j, :] = red(Vinv[j, :])

    def row_neg(i):
        A[i, :] = -A[i, :]
        if U is not None:
            U[i, :] = -U[i, :]
        if Uinv is not None:
            Uinv[:, i] = -Uinv[:, i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # pivot: first +-1 in row-major order, else first minimal |entry|
        sub = A[t:, t:]
        ab = _np.abs(sub)
        width = n - t
        ones = ab == 1
        flat = int(ones.argmax())
        if not ones.ravel()[flat]:
            nzflat = _np.flatnonzero(ab)
            if nzflat.size == 0:
                break
            flat = int(nzflat[int(ab.ravel()[nzflat].argmin())])
        bi, bj = divmod(flat, width)
        row_swap(t, t + bi)
        col_swap(t, t + bj)
        while True:
            if A[t, t] < 0:
                row_neg(t)
            p = int(A[t, t])
            # clear the pivot column; a nonzero remainder becomes the new pivot
            col = A[:, t].copy()
            col[t] = 0
            q = col // p
            rem = col - q * p
            nzr = _np.flatnonzero(rem)
            i0 = int(nzr[0]) if nzr.size else -1
            sel = _np.flatnonzero(q[: i0 + 1] if i0 >= 0 else q)
            if sel.size:
                mult = int(_np.abs(q[sel]).max())
                bA.grow(mult)
                A[sel, :] -= q[sel, None] * A[t, :]
                if modulus is not None:
                    A[sel, :] = red(A[sel, :])
                if U is not None:
                    bU.grow(mult)
                    U[sel, :] -= q[sel, None] * U[t, :]
                    if modulus is not None:
                        U[sel, :] = red(U[sel, :])
                if Uinv is not None:
                    bUinv.grow(mult * sel.size)
                    Uinv[:, t] += Uinv[:, sel] @ q[sel]
                    if modulus is not None:
                        Uinv[:, t] = red(Uinv[:, t])
            if i0 >= 0:
                row_swap(t, i0)
                continue
            # clear the pivot row
            row = A[t, :].copy()
            row[t] = 0
            q = row // p
            rem = row - q * p
            nzr = _np.flatnonzero(rem)
            j0 = int(nzr[0]) if nzr.size else -1
            sel = _np.flatnonzero(q[: j0 + 1] if j0 >= 0 else q)
            if sel.size:
                mult = int(_np.abs(q[sel]).max())
                bA.grow(mult)
                A[:, sel] -= _np.outer(A[:, t], q[sel])
                if modulus is not None:
                    A[:, sel] = red(A[:, sel])
                if V is not None:
                    bV.grow(mult)
                    V[:, sel] -= _np.outer(V[:, t], q[sel])
                    if modulus is not None:
                        V[:, sel] = red(V[:, sel])
                if Vinv is not None:
                    bVinv.grow(mult * sel.size)
                    Vinv[t, :] += q[sel] @ Vinv[sel, :]
                    if modulus is not None:
                        Vinv[t, :] = red(Vinv[t, :])
            if j0 >= 0:
                col_swap(t, j0)
                continue
            break
        t += 1
    r = t
    # enforce the divisibility chain d_1 | d_2 | ... (meaningless mod n: a
    # reduced entry can even be 0, so the chain pass is exact-only)
    changed = modulus is None
    while changed:
        changed = False
        for i in range(r - 1):
            di, dj = int(A[i, i]), int(A[i + 1, i + 1])
            if dj % di != 0:
                changed = True
                col_add(i, i + 1, 1)
                while True:
                    if A[i, i] < 0:
                        row_neg(i)
                    p = int(A[i, i])
                    v = int(A[i + 1, i])
                    if v:
                        q = v // p
                        if q:
                            row_add(i + 1, i, -q)
                        if A[i + 1, i]:
                            row_swap(i, i + 1)
                            continue
                    w = int(A[i, i + 1])
                    if w:
                        q = w // p
                        if q:
                            col_add(i + 1, i, -q)
                        if A[i, i + 1]:
                            col_swap(i, i + 1)
                            continue
                    break
    for i in range(r):
        if A[i, i] < 0:
            row_neg(i)
    for i in range(m):
        a[i][:] = A[i, :].tolist()
    diag = [int(A[i, i]) for i in range(limit)]
    return {"diag": diag,
            "U": U.tolist() if U is not None else None,
            "Uinv": Uinv.tolist() if Uinv is not None else None,
            "V": V.tolist() if V is not None else None,
            "Vinv": Vinv.tolist() if Vinv is not None else None,
            "rank": sum(1 for d in diag if d != 0)}


def _snf_work_py(a: List[List[int]], want: Tuple[str, ...],
                 modulus: Optional[int] = None):
    """Arbitrary-precision reference path; see _snf_work for the contract."""
    m = len(a)
    n = len(a[0]) if m else 0
    half = modulus >> 1 if modulus is not None else 0
    if modulus is not None:
        for row in a:
            for k in range(n):
                row[k] = (row[k] + half) % modulus - half
    U = [[int(i == j) for j in range(m)] for i in range(m)] if "U" in want else None
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)] if "Uinv" in want else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if "V" in want else None
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)] if "Vinv" in want else None

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for r in Uinv:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]
        if Vinv is not None:
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(i, j, q):
        # row i += q * row j
        ai, aj = a[i], a[j]
        for k in range(n):
            v = aj[k]
            if v:
                ai[k] += q * v
        if modulus is not None:
            for k in range(n):
                ai[k] = (ai[k] + half) % modulus - half
        if U is not None:
            ui, uj = U[i], U[j]
            for k in range(m):
                v = uj[k]
                if v:
                    ui[k] += q * v
            if modulus is not None:
                for k in range(m):
                    ui[k] = (ui[k] + half) % modulus - half
        if Uinv is not None:
            for r in Uinv:
                v = r[i]
                if v:
                    r[j] -= q * v
            if modulus is not None:
                for r in Uinv:
                    r[j] = (r[j] + half) % modulus - half

    def col_add(i, j, q):
        # col i += q * col j
        for r in a:
            v = r[j]
            if v:
                r[i] += q * v
        if modulus is not None:
            for r in a:
                r[i] = (r[i] + half) % modulus - half
        if V is not None:
            for r in V:
                v = r[j]
                if v:
                    r[i] += q * v
            if modulus is not None:
                for r in V:
                    r[i] = (r[i] + half) % modulus - half
        if Vinv is not None:
            vi, vj = Vinv[i], Vinv[j]
            for k in range(n):
                v = vi[k]
                if v:
                    vj[k] -= q * v
            if modulus is not None:
                for k in range(n):
                    vj[k] = (vj[k] + half) % modulus - half

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Uinv is not None:
            for r in Uinv:
                r[i] = -r[i]

    dead_rows = [False] * m
    t = 0
    limit = min(m, n)
    while t < limit:
        # locate minimal-absolute-value pivot in the live block
        best = None
        for i in range(t, m):
            if dead_rows[i]:
                continue
            row = a[i]
            row_has = False
            for j in range(t, n):
                v = row[j]
                if v:
                    row_has = True
                    av = -v if v < 0 else v
                    if best is None or av < best[0]:
                        best = (av, i, j)
                        if av == 1:
                            break
            if not row_has:
                dead_rows[i] = True
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            if a[t][t] < 0:
                row_neg(t)
            p = a[t][t]
            # clear the pivot column; a nonzero remainder becomes the new pivot
            restart = False
            for i in range(m):
                if i == t:
                    continue
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        row_add(i, t, -q)
                    if a[i][t]:
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            # clear the pivot row
            for j in range(n):
                if j == t:
                    continue
                v = a[t][j]
                if v:
                    q = v // p
                    if q:
                        col_add(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if not restart:
                break
        t += 1
    r = t
    # enforce the divisibility chain d_1 | d_2 | ... (exact-only, as above)
    changed = modulus is None
    while changed:
        changed = False
        for i in range(r - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di != 0:
                changed = True
                # fold column i+1 into column i, then re-diagonalize the block
                col_add(i, i + 1, 1)
                while True:
                    if a[i][i] < 0:
                        row_neg(i)
                    p = a[i][i]
                    v = a[i + 1][i]
                    if v:
                        q = v // p
                        if q:
                            row_add(i + 1, i, -q)
                        if a[i + 1][i]:
                            row_swap(i, i + 1)
                            continue
                    w = a[i][i + 1]
                    if w:
                        q = w // p
                        if q:
                            col_add(i + 1, i, -q)
                        if a[i][i + 1]:
                            col_swap(i, i + 1)
                            continue
                    break
    for i in range(r):
        if a[i][i] < 0:
            row_neg(i)
    diag = [a[i][i] for i in range(limit)]
    return {"diag": diag, "U": U, "Uinv": Uinv, "V": V, "Vinv": Vinv, "rank":
            sum(1 for d in diag if d != 0)}


def _lift_to_int_rows(m: Matrix) -> List[List[int]]:
    return [[int(x) for x in row] for row in m.data]


def smith_normal_form(m: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form U*m*V = D over Z or Z/n.

    Returns (U, D, V) with U, V invertible over the ring and D diagonal with
    d_i | d_{i+1}.  Fields are rejected; row reduction is the right tool there.
    """
    ring = m.ring
    if ring.is_field:
        raise UnsupportedRingError("use row reduction over a field")
    work = _lift_to_int_rows(m)
    res = _snf_work(work, ("U", "V"))
    # for Z/n the transforms stay invertible after reduction (det = +-1 mod n)
    U = Matrix(ring, res["U"])
    V = Matrix(ring, res["V"])
    D = Matrix(ring, work)
    return U, D, V


def invariant_factors_and_rank(m: Matrix) -> Tuple[List[int], int]:
    """Diagonal data of the SNF without transform tracking (fast path).

    Returns (nonzero diagonal entries as positive ints, rank over Q).
    Accepts matrices over Z or Z/n (lifted).
    """
    if m.ring.is_field:
        raise UnsupportedRingError("use row reduction over a field")
    work = _lift_to_int_rows(m)
    res = _snf_work(work, ())
    diag = [d for d in res["diag"] if d != 0]
    return diag, res["rank"]


# ---------------------------------------------------------------------------
# Row reduction over fields
# ---------------------------------------------------------------------------

def _rref(rows: List[List], ring: RingSpec) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if ring.kind == PRIME_FIELD:
        p = ring.modulus
        inv = lambda x: pow(x, -1, p)
    else:
        inv = lambda x: Fraction(1) / x
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != ring.one():
            iv = inv(piv)
            if ring.kind == PRIME_FIELD:
                rows[r] = [(x * iv) % p for x in rows[r]]
            else:
                rows[r] = [x * iv for x in rows[r]]
        rr = rows[r]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                if ring.kind == PRIME_FIELD:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rr)]
                else:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    """Rank over the fraction field (Q for inputs over Z)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.ring.is_field:
        rows = m.to_lists()
        _, pivots = _rref(rows, m.ring)
        return len(pivots)
    _, r = invariant_factors_and_rank(m)
    return r


def kernel_basis(m: Matrix) -> Matrix:
    """Generators of ker(m) as columns.

    Over fields and Z the columns are an honest basis (over Z automatically a
    basis of a saturated sublattice).  Over Z/n they generate the kernel.
    """
    ring = m.ring
    if m.cols == 0:
        return Matrix.zeros(ring, m.cols, 0)
    if m.rows == 0:
        return Matrix.identity(ring, m.cols)
    if ring.is_field:
        rows = m.to_lists()
        rows, pivots = _rref(rows, ring)
        free = [j for j in range(m.cols) if j not in pivots]
        cols = []
        one = ring.one()
        for f in free:
            v = [ring.zero()] * m.cols
            v[f] = one
            for i, pc in enumerate(pivots):
                v[pc] = ring.normalize(-rows[i][f])
            cols.append(v)
        return Matrix.from_cols(ring, m.cols, cols)
    work = _lift_to_int_rows(m)
    # mod n the diagonalization may reduce freely: U*A*V = D mod n is all
    # the construction below consumes, and it keeps the entries tiny
    nmodulus = ring.modulus if ring.kind == INTEGERS_MOD else None
    res = _snf_work(work, ("V",), nmodulus)
    diag = res["diag"]
    V = res["V"]
    ncols = m.cols
    cols = []
    if ring.kind == INTEGERS:
        for j in range(ncols):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                cols.append([V[i][j] for i in range(ncols)])
    else:
        nmod = ring.modulus
        from math import gcd
        for j in range(ncols):
            d = diag[j] if j < len(diag) else 0
            mult = 1 if d == 0 else nmod // gcd(d, nmod)
            if mult % nmod == 0 and d != 0:
                continue
            cols.append([(V[i][j] * mult) % nmod for i in range(ncols)])
    return Matrix.from_cols(ring, ncols, cols)


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """One solution X of m*X = b, or None when inconsistent.

    b may have several columns; they are solved simultaneously.
    """
    ring = m.ring
    if ring != b.ring or m.rows != b.rows:
        raise ExactLinalgError("solve: shape or ring mismatch")
    if b.cols == 0:
        return Matrix.zeros(ring, m.cols, 0)
    if ring.is_field:
        return _solve_field(m, b)
    if ring.kind == INTEGERS:
        return _solve_int(m, b)
    # Z/n: lift, allow multiples of n on each coordinate
    nmod = ring.modulus
    lifted = Matrix(ZZ, m.data)
    ext = lifted.hstack(Matrix.identity(ZZ, m.rows).scale(nmod))
    sol = _solve_int(ext, Matrix(ZZ, b.data))
    if sol is None:
        return None
    top = [sol.data[i] for i in range(m.cols)]
    return Matrix(ring, top)


def _solve_field(m: Matrix, b: Matrix) -> Optional[Matrix]:
    ring = m.ring
    aug = m.hstack(b).to_lists()
    aug, pivots = _rref(aug, ring)
    ncols = m.cols
    # inconsistent iff a pivot lands in the augmented block
    for i, row in enumerate(aug):
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None and lead >= ncols:
            return None
    z = ring.zero()
    out = [[z] * b.cols for _ in range(ncols)]
    for i, pc in enumerate(pivots):
        if pc < ncols:
            for j in range(b.cols):
                out[pc][j] = aug[i][ncols + j]
    return Matrix(ring, out)


def _solve_int(m: Matrix, b: Matrix) -> Optional[Matrix]:
    work = _lift_to_int_rows(m)
    res = _snf_work(work, ("U", "V"))
    U, V, diag = res["U"], res["V"], res["diag"]
    nrows, ncols = m.rows, m.cols
    bd = [[int(x) for x in row] for row in b.data]
    if _np is not None and nrows * b.cols >= _NP_MIN_ENTRIES:
        try:
            return _substitute_np(U, V, diag, bd, nrows, ncols)
        except (_NpOverflow, OverflowError):
            pass
    # y solves D y = U b, then x = V y
    out_cols = []
    for j in range(b.cols):
        ub = [sum(U[i][k] * bd[k][j] for k in range(nrows) if U[i][k]) for i in range(nrows)]
        y = [0] * ncols
        ok = True
        for i in range(nrows):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if ub[i] != 0:
                    ok = False
                    break
            else:
                if ub[i] % d != 0:
                    ok = False
                    break
                if i < ncols:
                    y[i] = ub[i] // d
        if not ok:
            return None
        x = [sum(V[i][k] * y[k] for k in range(ncols) if y[k]) for i in range(ncols)]
        out_cols.append(x)
    return Matrix.from_cols(ZZ, ncols, out_cols)


def _substitute_np(U, V, diag, bd, nrows: int,
                   ncols: int) -> Optional[Matrix]:
    """Back-substitution phase of _solve_int on int64 arrays.

    Raises _NpOverflow (or OverflowError on conversion) when magnitudes make
    the products unsafe; the caller then redoes the work exactly.
    """
    Ua = _np.array(U, dtype=_np.int64)
    Va = _np.array(V, dtype=_np.int64)
    ba = _np.array(bd, dtype=_np.int64) if bd else _np.zeros(
        (0, 0), dtype=_np.int64)
    mu = int(_np.abs(Ua).max()) if Ua.size else 0
    mb = int(_np.abs(ba).max()) if ba.size else 0
    if (mu * mb + 1) * max(nrows, 1) >= 1 << 62:
        raise _NpOverflow
    ub = Ua @ ba  # nrows x k
    dvec = _np.zeros(nrows, dtype=_np.int64)
    dvec[: len(diag)] = diag
    zero_rows = dvec == 0
    if bool((ub[zero_rows, :] != 0).any()):
        return None
    live = ~zero_rows
    if bool((_np.remainder(ub[live, :], dvec[live, None]) != 0).any()):
        return None
    y = _np.zeros((ncols, ub.shape[1]), dtype=_np.int64)
    live_cols = _np.flatnonzero(live[: ncols])
    y[live_cols, :] = ub[live_cols, :] // dvec[live_cols, None]
    mv = int(_np.abs(Va).max()) if Va.size else 0
    my = int(_np.abs(y).max()) if y.size else 0
    if (mv * my + 1) * max(ncols, 1) >= 1 << 62:
        raise _NpOverflow
    x = Va @ y
    return Matrix.from_cols(ZZ, ncols, x.T.tolist())


def column_basis(m: Matrix) -> Matrix:
    """Basis (over Z and fields) or generating set (Z/n) of the column span."""
    ring = m.ring
    if m.cols == 0 or m.rows == 0:
        return Matrix.zeros(ring, m.rows, 0)
    if ring.is_field:
        # row space of the transpose is the column space; echelon rows are canonical
        rr, _ = _rref([[row[j] for row in m.data] for j in range(m.cols)], ring)
        cols = [r for r in rr if any(r)]
        return Matrix.from_cols(ring, m.rows, cols)
    if ring.kind == INTEGERS:
        work = _lift_to_int_rows(m)
        res = _snf_work(work, ("Uinv",))
        diag, Uinv = res["diag"], res["Uinv"]
        cols = []
        for j, d in enumerate(diag):
            if d != 0:
                cols.append([Uinv[i][j] * d for i in range(m.rows)])
        return Matrix.from_cols(ring, m.rows, cols)
    nmod = ring.modulus
    lifted = Matrix(ZZ, m.data)
    relations = Matrix.identity(ZZ, m.rows).scale(nmod)
    basis = column_basis(lifted.hstack(relations))
    cols = [c for c in basis.columns()
            if any(x % nmod for x in c)]
    return Matrix.from_cols(ring, m.rows, cols)


def preimage_lattice(a: Matrix, span: Matrix) -> Matrix:
    """Generators of {x : a*x lies in the column span of `span`}."""
    if a.ring != span.ring or a.rows != span.rows:
        raise ExactLinalgError("preimage_lattice: mismatch")
    combined = a.hstack(span)
    k = kernel_basis(combined)
    top = [k.data[i] for i in range(a.cols)]
    gens = Matrix(a.ring, top)
    return column_basis(gens)


def in_span(v: Matrix, span: Matrix) -> bool:
    return solve(span, v) is not None


def subquotient(ambient_rank: int, kernel_gens: Matrix, image_gens: Matrix) -> ModulePresentation:
    """Present span(kernel_gens)/span(image_gens) in invariant-factor form.

    The image must be contained in the span of the kernel generators; a
    violation signals a broken differential and raises ContainmentError.
    """
    ring = kernel_gens.ring
    if ring != image_gens.ring:
        raise ExactLinalgError("subquotient: ring mismatch")
    if kernel_gens.rows != ambient_rank or image_gens.rows != ambient_rank:
        raise ExactLinalgError("subquotient: ambient rank mismatch")
    if ring.is_field:
        rk, ri = rank(kernel_gens), rank(image_gens)
        if rank(kernel_gens.hstack(image_gens)) != rk:
            raise ContainmentError("image not contained in kernel span")
        return ModulePresentation(ring, rk - ri, ())
    if ring.kind == INTEGERS:
        K = column_basis(kernel_gens)
        X = solve(K, image_gens)
        if X is None:
            raise ContainmentError("image not contained in kernel span")
        if X.cols == 0:
            return ModulePresentation(ring, K.cols, ())
        diag, r = invariant_factors_and_rank(X)
        factors = tuple(d for d in diag if d not in (0, 1))
        return ModulePresentation(ring, K.cols - r, factors)
    # Z/n: arithmetic stays mod n throughout.  Lifting to Z here (solve
    # against [gens | n*I]) swells the Smith intermediates beyond any fixed
    # width even on small inputs; reduced mod n the entries never grow.
    from math import gcd
    nmod = ring.modulus

    def span_divisors(mat: Matrix) -> List[int]:
        # elementary divisors of Z^a / (span(cols) + n*Z^a), padded to a
        if mat.cols == 0:
            return [nmod] * ambient_rank
        res = _snf_work(_lift_to_int_rows(mat), (), nmod)
        g = [gcd(d, nmod) for d in res["diag"]]
        return g + [nmod] * (ambient_rank - len(g))

    dK = span_divisors(kernel_gens)
    dKI = span_divisors(kernel_gens.hstack(image_gens))
    idx_k = idx_ki = 1
    for g in dK:
        idx_k *= g
    for g in dKI:
        idx_ki *= g
    # adjoining the image can only grow the span; same index means contained
    if idx_k != idx_ki:
        raise ContainmentError("image not contained in kernel span")
    # generators of the kernel span: with U*K*V = D mod n the columns
    # gcd(d_j, n) * Uinv e_j span it modulo n*Z^a, and the ones with
    # divisor n are 0 over Z/n
    gen_cols = []
    if kernel_gens.cols:
        res = _snf_work(_lift_to_int_rows(kernel_gens), ("Uinv",), nmod)
        Uinv = res["Uinv"]
        for j, d in enumerate(res["diag"]):
            g = gcd(d, nmod)
            if g < nmod:
                gen_cols.append([(Uinv[i][j] * g) % nmod
                                 for i in range(ambient_rank)])
    if not gen_cols:
        return ModulePresentation(ring, 0, ())
    C = Matrix.from_cols(ring, ambient_rank, gen_cols)
    # relations: coordinate vectors z with C*z in the image span
    k = kernel_basis(C.hstack(image_gens))
    rel_rows = [k.data[i] for i in range(C.cols)]
    if k.cols == 0:
        rdivs = [nmod] * C.cols
    else:
        res = _snf_work([[int(x) for x in row] for row in rel_rows], (), nmod)
        rdivs = [gcd(d, nmod) for d in res["diag"]]
        rdivs += [nmod] * (C.cols - len(rdivs))
    free = sum(1 for g in rdivs if g == nmod)
    factors = _divisor_chain([g for g in rdivs if 1 < g < nmod], nmod)
    return ModulePresentation(ring, free, factors)


def _divisor_chain(divs: Sequence[int], n: int) -> Tuple[int, ...]:
    """Arrange a multiset of divisors of n into an invariant-factor chain.

    The direct sum of Z/d over the multiset is preserved; prime powers are
    redistributed so that d_1 | d_2 | ... holds (the largest factor collects
    the largest exponent of every prime).
    """
    if not divs:
        return ()
    primes = []
    left = n
    p = 2
    while p * p <= left:
        if left % p == 0:
            primes.append(p)
            while left % p == 0:
                left //= p
        p += 1
    if left > 1:
        primes.append(left)
    chain = [1] * len(divs)
    for p in primes:
        exps = []
        for d in divs:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            exps.append(e)
        exps.sort(reverse=True)
        for k, e in enumerate(exps):
            if e:
                chain[k] *= p ** e
    chain = [c for c in chain if c > 1]
    chain.reverse()
    return tuple(chain)


def lattice_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Generators of the intersection of two column spans."""
    if a.rows != b.rows or a.ring != b.ring:
        raise ExactLinalgError("lattice_intersection: mismatch")
    if a.cols == 0 or b.cols == 0:
        return Matrix.zeros(a.ring, a.rows, 0)
    k = kernel_basis(a.hstack(b))
    top = Matrix(a.ring, [k.data[i] for i in range(a.cols)])
    return column_basis(a * top)


def lattice_equal(a: Matrix, b: Matrix) -> bool:
    """Mutual containment of column spans."""
    if a.cols == 0 and b.cols == 0:
        return True
    if a.cols == 0:
        return b.is_zero()
    if b.cols == 0:
        return a.is_zero()
    return solve(a, b) is not None and solve(b, a) is not None


class QuotientPresenter:
    """span(kernel_gens)/span(image_gens) with generators and coordinates.

    Beyond the bare presentation this keeps enough of the normal-form
    witnesses to lift canonical generators back to the ambient module and to
    read off the class of any ambient vector, which is what equality of
    cohomology classes and cup products run on.
    """

    def __init__(self, ambient_rank: int, kernel_gens: Matrix, image_gens: Matrix):
        ring = kernel_gens.ring
        if image_gens.ring != ring:
            raise ExactLinalgError("quotient: ring mismatch")
        self.ring = ring
        self.ambient_rank = ambient_rank
        if ring.is_field:
            self._init_field(kernel_gens, image_gens)
        elif ring.kind == INTEGERS:
            self._init_integers(kernel_gens, image_gens)
        else:
            self._init_mod(kernel_gens, image_gens)

    # field: canonical complement of the image inside kernel coordinates
    def _init_field(self, kernel_gens, image_gens):
        ring = self.ring
        self._K = column_basis(kernel_gens)
        X = solve(self._K, image_gens)
        if X is None:
            raise ContainmentError("image not contained in kernel span")
        E = column_basis(X)
        leads = []
        for j in range(E.cols):
            lead = next(i for i in range(E.rows) if E.data[i][j])
            leads.append(lead)
        self._field_echelon = E
        self._field_leads = leads
        free_rows = [i for i in range(self._K.cols) if i not in leads]
        self._free_rows = free_rows
        self.presentation = ModulePresentation(ring, len(free_rows), ())
        gens = []
        for rpos in free_rows:
            e = [ring.zero()] * self._K.cols
            e[rpos] = ring.one()
            gens.append(self._K * Matrix.column(ring, e))
        self._gens = gens

    def _init_integers(self, kernel_gens, image_gens):
        ring = self.ring
        self._K = column_basis(kernel_gens)
        X = solve(self._K, image_gens)
        if X is None:
            raise ContainmentError("image not contained in kernel span")
        self._finish_from_lattice(X, modulus=None)

    def _init_mod(self, kernel_gens, image_gens):
        ring = self.ring
        n = ring.modulus
        rel = Matrix.identity(ZZ, self.ambient_rank).scale(n)
        K = column_basis(Matrix(ZZ, kernel_gens.data).hstack(rel))
        I = Matrix(ZZ, image_gens.data).hstack(rel)
        X = solve(K, I)
        if X is None:
            raise ContainmentError("image not contained in kernel span")
        self._K = K
        self._finish_from_lattice(X, modulus=n)

    def _finish_from_lattice(self, X, modulus):
        ring = self.ring
        k = self._K.cols
        if X.cols == 0:
            work = [[0] * 1 for _ in range(k)]
        else:
            work = [[int(v) for v in row] for row in X.data]
        res = _snf_work(work, ("U", "Uinv"))
        diag = res["diag"] + [0] * (k - len(res["diag"]))
        self._U = res["U"]
        Uinv = res["Uinv"]
        r = res["rank"]
        torsion_pos, free_pos, factors = [], [], []
        for j in range(k):
            d = diag[j] if j < k else 0
            if j < r:
                if modulus is None:
                    if d != 1:
                        torsion_pos.append(j)
                        factors.append(d)
                else:
                    if d % modulus == 0:
                        free_pos.append(j)
                    elif d != 1:
                        torsion_pos.append(j)
                        factors.append(d)
            else:
                free_pos.append(j)
        if modulus is not None and any(j >= r for j in free_pos):
            raise ExactLinalgError("Z/n quotient must be torsion over Z")
        self._torsion_pos = torsion_pos
        self._free_pos = free_pos
        self._orders = {j: diag[j] for j in torsion_pos}
        self._modulus = modulus
        self.presentation = ModulePresentation(
            ring, len(free_pos), tuple(factors))
        gens = []
        KZ = self._K
        for j in torsion_pos + free_pos:
            col = [Uinv[i][j] for i in range(k)]
            amb = KZ * Matrix.column(ZZ, col)
            amb = amb.submatrix(range(self.ambient_rank), [0])
            if modulus is not None:
                amb = Matrix(ring, amb.data)
            gens.append(amb)
        self._gens = gens

    def generators(self):
        """Ambient lifts of the canonical generators, torsion first."""
        return list(self._gens)

    def coords(self, v: Matrix):
        """Canonical coordinates of the class of v, aligned with generators().

        Torsion coordinates are reduced modulo their invariant factor; free
        coordinates are exact.  Raises ContainmentError if v is not in the
        span of the kernel generators.
        """
        ring = self.ring
        if ring.is_field:
            a = solve(self._K, v)
            if a is None:
                raise ContainmentError("vector not in kernel span")
            col = [a.data[i][0] for i in range(a.rows)]
            E, leads = self._field_echelon, self._field_leads
            for j, lead in enumerate(leads):
                f = col[lead]
                if f:
                    for i in range(len(col)):
                        col[i] = ring.normalize(col[i] - f * E.data[i][j])
            return tuple(col[i] for i in self._free_rows)
        if self._modulus is not None:
            v = Matrix(ZZ, v.data).vstack(Matrix.zeros(ZZ, self._K.rows - v.rows, v.cols))
        a = solve(self._K, v)
        if a is None:
            raise ContainmentError("vector not in kernel span")
        U = self._U
        k = self._K.cols
        av = [a.data[i][0] for i in range(k)]
        b = [sum(U[i][t] * av[t] for t in range(k) if av[t]) for i in range(k)]
        out = []
        for j in self._torsion_pos:
            out.append(b[j] % self._orders[j])
        for j in self._free_pos:
            out.append(b[j] % self._modulus if self._modulus is not None else b[j])
        return tuple(out)

    def is_zero_class(self, v: Matrix) -> bool:
        return all(x == self.ring.zero() or x == 0 for x in self.coords(v))

    def same_class(self, v: Matrix, w: Matrix) -> bool:
        return self.coords(v) == self.coords(w)
