"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries kept as canonical
representatives in [0, p).  Products are accumulated in int64 and reduced
once afterwards; with p <= 251 and desk-scale dimensions this never
overflows.  Row reduction touches only rows with a nonzero entry in the
pivot column, which keeps the very sparse coboundary matrices cheap.

A small sparse elimination (`sparse_rank`) is provided for the few places
where dense storage would be wasteful (total-complex ranks, Betti numbers
of large quotient complexes).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_PRIME = 251


def is_prime(p: int) -> bool:
    """Trial-division primality check (p is tiny here)."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldP:
    """The prime field F_p, p prime and at most MAX_PRIME."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"modulus {self.p} exceeds supported bound {MAX_PRIME}")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)


def _as_array(entries, p: int) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    return np.mod(a, p)


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of `a` over F_p; returns (R, pivot columns)."""
    r = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        inv = pow(int(r[row, col]), p - 2, p)
        if inv != 1:
            r[row] = (r[row] * inv) % p
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def rank_mod(a: np.ndarray, p: int) -> int:
    return len(rref_mod(a, p)[1])


def kernel_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the right kernel of `a`, as columns."""
    r, pivots = rref_mod(a, p)
    m, n = r.shape
    free = [c for c in range(n) if c not in set(pivots)]
    k = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, c in enumerate(pivots):
            k[c, j] = (-r[i, f]) % p
    # rank-nullity, asserted after every reduction
    assert len(pivots) + k.shape[1] == n
    return column_echelon_mod(k, p)


def column_echelon_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical column-echelon basis of the column space of `a`.

    Equal column spans yield byte-identical results, so this is used as
    the subspace identity everywhere.
    """
    r, pivots = rref_mod(np.asarray(a, dtype=np.int64).T, p)
    return r[: len(pivots)].T.copy()


class FactoredSolve:
    """Cached row reduction of `a` for solving a·x = b repeatedly.

    Stores E with E·a = R in rref; each solve is a single mat-vec plus a
    consistency check, so repeated solves against coboundary matrices are
    cheap.
    """

    def __init__(self, a: np.ndarray, p: int):
        a = np.mod(np.asarray(a, dtype=np.int64), p)
        m, n = a.shape
        aug = np.concatenate([a, np.eye(m, dtype=np.int64)], axis=1)
        r = aug.copy()
        pivots = []
        row = 0
        for col in range(n):  # pivot search limited to the a-block
            if row == m:
                break
            nz = np.nonzero(r[row:, col])[0]
            if nz.size == 0:
                continue
            i = row + int(nz[0])
            if i != row:
                r[[row, i]] = r[[i, row]]
            inv = pow(int(r[row, col]), p - 2, p)
            if inv != 1:
                r[row] = (r[row] * inv) % p
            others = np.nonzero(r[:, col])[0]
            others = others[others != row]
            if others.size:
                r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
            pivots.append(col)
            row += 1
        self.p = p
        self.shape = (m, n)
        self.pivots = tuple(pivots)
        self.rref = r[:, :n]
        self.transform = r[:, n:]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: np.ndarray) -> np.ndarray | None:
        """One solution of a·x = b with free variables 0, or None."""
        p = self.p
        m, n = self.shape
        b = np.mod(np.asarray(b, dtype=np.int64).reshape(m), p)
        y = np.mod(self.transform @ b, p)
        if np.any(y[self.rank:]):
            return None
        x = np.zeros(n, dtype=np.int64)
        for i, c in enumerate(self.pivots):
            x[c] = y[i]
        return x

    def solve_many(self, b: np.ndarray) -> np.ndarray | None:
        """Solve a·X = b columnwise; None if any column is inconsistent."""
        p = self.p
        m, n = self.shape
        b = np.mod(np.asarray(b, dtype=np.int64).reshape(m, -1), p)
        y = np.mod(self.transform @ b, p)
        if np.any(y[self.rank:, :]):
            return None
        x = np.zeros((n, b.shape[1]), dtype=np.int64)
        for i, c in enumerate(self.pivots):
            x[c] = y[i]
        return x


class PrimeFieldMatrix:
    """Immutable dense matrix over F_p."""

    __slots__ = ("field", "a")

    def __init__(self, p: int | FieldP, entries):
        field = p if isinstance(p, FieldP) else FieldP(p)
        a = _as_array(entries, field.p)
        a.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)

    def __setattr__(self, *_):
        raise AttributeError("PrimeFieldMatrix is immutable")

    # -- constructors ------------------------------------------------
    @classmethod
    def zeros(cls, p, rows: int, cols: int) -> "PrimeFieldMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p, n: int) -> "PrimeFieldMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    # -- basic protocol ----------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __repr__(self):
        return f"PrimeFieldMatrix(p={self.p}, shape={self.shape})"

    def __eq__(self, other):
        return (
            isinstance(other, PrimeFieldMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def _wrap(self, a: np.ndarray) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(self.field, a)

    def _check_same_field(self, other: "PrimeFieldMatrix"):
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        self._check_same_field(other)
        return self._wrap(self.a + other.a)

    def __sub__(self, other):
        self._check_same_field(other)
        return self._wrap(self.a - other.a)

    def __neg__(self):
        return self._wrap(-self.a)

    def __mul__(self, scalar: int):
        return self._wrap(self.a * (scalar % self.p))

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return self._wrap(self.a @ other.a)

    def __pow__(self, e: int):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = np.eye(self.rows, dtype=np.int64)
        base = self.a
        while e:
            if e & 1:
                out = np.mod(out @ base, self.p)
            base = np.mod(base @ base, self.p)
            e >>= 1
        return self._wrap(out)

    @property
    def T(self) -> "PrimeFieldMatrix":
        return self._wrap(self.a.T)

    def is_zero(self) -> bool:
        return not np.any(self.a)

    # -- reductions ----------------------------------------------------
    def rref(self) -> tuple["PrimeFieldMatrix", tuple[int, ...]]:
        r, pivots = rref_mod(self.a, self.p)
        return self._wrap(r), pivots

    def rank(self) -> int:
        return rank_mod(self.a, self.p)

    def kernel_basis(self) -> "PrimeFieldMatrix":
        return self._wrap(kernel_mod(self.a, self.p))

    def image_basis(self) -> "PrimeFieldMatrix":
        return self._wrap(column_echelon_mod(self.a, self.p))

    def column_echelon(self) -> "PrimeFieldMatrix":
        return self._wrap(column_echelon_mod(self.a, self.p))

    def solve(self, b) -> np.ndarray | None:
        """One solution x of self·x = b, or None if b is outside the image."""
        return FactoredSolve(self.a, self.p).solve(np.asarray(b, dtype=np.int64))


def subquotient_dim(z: PrimeFieldMatrix, b: PrimeFieldMatrix, p: int | None = None) -> int:
    """dim(span Z / span B); rejects B not contained in span Z."""
    if isinstance(z, PrimeFieldMatrix):
        p = z.p
        z, b = z.a, b.a
    if p is None:
        raise ValueError("modulus required for raw arrays")
    zdim = rank_mod(z, p)
    bdim = rank_mod(b, p)
    joint = rank_mod(np.concatenate([z, b], axis=1), p)
    if joint != zdim:
        raise ValueError("B is not contained in the span of Z (inconsistent filtration)")
    return zdim - bdim


class Subquotient:
    """A subquotient span(Z)/span(B) with canonical representatives.

    Representatives are the columns of Z that add pivots to a row
    reduction of [B | Z]; coordinates of a vector are taken against
    [B | reps] with the B-part discarded.
    """

    def __init__(self, z: np.ndarray, b: np.ndarray, p: int):
        self.p = p
        n = z.shape[0]
        if b.shape[0] != n:
            raise ValueError("ambient dimensions differ")
        z = np.mod(np.asarray(z, dtype=np.int64), p)
        b = np.mod(np.asarray(b, dtype=np.int64), p)
        self.ambient_dim = n
        self.z = column_echelon_mod(z, p)
        self.b = column_echelon_mod(b, p)
        bdim = self.b.shape[1]
        joint, pivots = rref_mod(np.concatenate([self.b, self.z], axis=1), p)
        if len([c for c in pivots if c < bdim]) != bdim:
            raise ValueError("B is not contained in the span of Z")
        rep_cols = [c - bdim for c in pivots if c >= bdim]
        self.reps = self.z[:, rep_cols].copy()
        self.dim = len(rep_cols)
        assert self.dim == self.z.shape[1] - bdim
        self._solver = FactoredSolve(
            np.concatenate([self.b, self.reps], axis=1), p
        )

    def decompose(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Write v = B·xi_b + reps·xi_r; raises if v is outside span(Z)."""
        sol = self._solver.solve(v)
        if sol is None:
            raise ValueError("vector is not in the span of Z")
        bdim = self.b.shape[1]
        return sol[:bdim], sol[bdim:]

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of [v] in the canonical representative basis."""
        return self.decompose(v)[1]

    def contains(self, v: np.ndarray) -> bool:
        return self._solver.solve(v) is not None

    def lift(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64).reshape(self.dim)
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return np.mod(self.reps @ coords, self.p)


def sparse_rank(columns, p: int) -> int:
    """Rank over F_p of a matrix given as an iterable of {row: value} dicts.

    Standard left-to-right reduction keyed on the largest row index of
    each column; only fill-in actually touched is paid for.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: v % p for r, v in col.items() if v % p}
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = col
                rank += 1
                break
            f = (col[low] * pow(piv[low], p - 2, p)) % p
            for r, v in piv.items():
                nv = (col.get(r, 0) - f * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        # fully reduced to zero: contributes nothing
    return rank
