"""Exact linear algebra over GF(p) for small primes.

Vectors and matrices are immutable and hashable. Generic arithmetic works
for p in {2, 3, 5, 7}; a bit-packed fast path (rows as Python int bitsets)
handles p=2 elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidInput

SUPPORTED_PRIMES = (2, 3, 5, 7)


def _check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise InvalidInput(f"unsupported modulus {p}; expected one of {SUPPORTED_PRIMES}")


@dataclass(frozen=True)
class FieldVector:
    """Coordinate vector over GF(p)."""

    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        if any(not (0 <= c < self.p) for c in self.coords):
            object.__setattr__(self, "coords", tuple(c % self.p for c in self.coords))

    @classmethod
    def make(cls, p: int, coords: Iterable[int]) -> "FieldVector":
        return cls(p, tuple(int(c) % p for c in coords))

    @classmethod
    def zero(cls, p: int, n: int) -> "FieldVector":
        return cls(p, (0,) * n)

    @classmethod
    def basis(cls, p: int, n: int, i: int) -> "FieldVector":
        return cls(p, tuple(1 if j == i else 0 for j in range(n)))

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "FieldVector") -> "FieldVector":
        self._check_peer(other)
        return FieldVector(self.p, tuple((a + b) % self.p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        self._check_peer(other)
        return FieldVector(self.p, tuple((a - b) % self.p for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "FieldVector":
        k %= self.p
        return FieldVector(self.p, tuple((k * a) % self.p for a in self.coords))

    def dot(self, other: "FieldVector") -> int:
        self._check_peer(other)
        return sum(a * b for a, b in zip(self.coords, other.coords)) % self.p

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def weight(self) -> int:
        return sum(1 for c in self.coords if c != 0)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c != 0)

    def to_code(self) -> int:
        """Base-p little-endian packing into an int state code."""
        code = 0
        for c in reversed(self.coords):
            code = code * self.p + c
        return code

    @classmethod
    def from_code(cls, p: int, n: int, code: int) -> "FieldVector":
        coords = []
        for _ in range(n):
            coords.append(code % p)
            code //= p
        return cls(p, tuple(coords))

    def to_bits(self) -> int:
        if self.p != 2:
            raise InvalidInput("bit packing requires p=2")
        return self.to_code()

    def restrict(self, indices: Iterable[int]) -> "FieldVector":
        return FieldVector(self.p, tuple(self.coords[i] for i in indices))

    def _check_peer(self, other: "FieldVector") -> None:
        if self.p != other.p or len(self.coords) != len(other.coords):
            raise InvalidInput("vector shape or modulus mismatch")


@dataclass(frozen=True)
class FieldMatrix:
    """Rectangular matrix over GF(p), rows of residues."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_prime(self.p)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise InvalidInput("ragged matrix rows")
        if any(not (0 <= c < self.p) for r in self.rows for c in r):
            object.__setattr__(
                self, "rows", tuple(tuple(c % self.p for c in r) for r in self.rows)
            )

    @classmethod
    def make(cls, p: int, rows: Iterable[Iterable[int]]) -> "FieldMatrix":
        return cls(p, tuple(tuple(int(c) % p for c in r) for r in rows))

    @classmethod
    def identity(cls, p: int, n: int) -> "FieldMatrix":
        return cls(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "FieldMatrix":
        return cls(p, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def from_columns(cls, p: int, cols: Iterable[FieldVector]) -> "FieldMatrix":
        cols = list(cols)
        n = len(cols[0]) if cols else 0
        return cls(p, tuple(tuple(c.coords[i] for c in cols) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def row(self, i: int) -> FieldVector:
        return FieldVector(self.p, self.rows[i])

    def column(self, j: int) -> FieldVector:
        return FieldVector(self.p, tuple(r[j] for r in self.rows))

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.p, tuple(zip(*self.rows)) if self.rows else ())

    def mat_vec(self, v: FieldVector) -> FieldVector:
        if v.p != self.p or len(v) != self.ncols:
            raise InvalidInput("matrix/vector shape mismatch")
        return FieldVector(
            self.p, tuple(sum(a * b for a, b in zip(r, v.coords)) % self.p for r in self.rows)
        )

    def vec_mat(self, v: FieldVector) -> FieldVector:
        """Row vector times matrix."""
        if v.p != self.p or len(v) != self.nrows:
            raise InvalidInput("vector/matrix shape mismatch")
        return FieldVector(
            self.p,
            tuple(
                sum(v.coords[i] * self.rows[i][j] for i in range(self.nrows)) % self.p
                for j in range(self.ncols)
            ),
        )

    def matmul(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.p != other.p or self.ncols != other.nrows:
            raise InvalidInput("matrix product shape mismatch")
        cols = other.transpose().rows
        return FieldMatrix(
            self.p,
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) % self.p for c in cols) for r in self.rows
            ),
        )

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "FieldMatrix":
        col_idx = tuple(col_idx)
        return FieldMatrix(self.p, tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx))

    def rank(self) -> int:
        return len(_rref(self.p, [list(r) for r in self.rows])[1])

    def bit_rows(self) -> list[int]:
        if self.p != 2:
            raise InvalidInput("bit packing requires p=2")
        return [sum(c << j for j, c in enumerate(r)) for r in self.rows]


@dataclass(frozen=True)
class SolutionSet:
    """Affine solution set of A x = b: particular + span(kernel_basis)."""

    particular: Optional[FieldVector]
    kernel_basis: tuple[FieldVector, ...]

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def _inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def _rref(p: int, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """In-place reduced row echelon form; pivots chosen lowest-row, lowest-column."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, nrows) if rows[i][c] % p != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = _inv_mod(rows[r][c], p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p != 0:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _rref_gf2(bitrows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """RREF on int-bitset rows over GF(2); same pivot rule as _rref."""
    rows = bitrows[:]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if (rows[i] >> c) & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and ((rows[i] >> c) & 1):
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _solve_generic(A: FieldMatrix, b: FieldVector) -> SolutionSet:
    p = A.p
    n = A.ncols
    aug = [list(r) + [bc] for r, bc in zip(A.rows, b.coords)]
    if not aug:
        aug = []
    rows, pivots = _rref(p, aug) if aug else ([], [])
    piv_in_b = [c for c in pivots if c == n]
    if piv_in_b:
        particular = None
    else:
        x = [0] * n
        for i, c in enumerate(pivots):
            x[c] = rows[i][n]
        particular = FieldVector(p, tuple(x))
    kernel = _kernel_from_rref(p, n, rows, [c for c in pivots if c < n])
    return SolutionSet(particular, kernel)


def _kernel_from_rref(p, n, rows, pivots) -> tuple[FieldVector, ...]:
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-rows[i][f]) % p
        basis.append(FieldVector(p, tuple(x)))
    return tuple(basis)


def _solve_gf2(A: FieldMatrix, b: FieldVector) -> SolutionSet:
    n = A.ncols
    aug = [r | (bc << n) for r, bc in zip(A.bit_rows(), b.coords)]
    rows, pivots = _rref_gf2(aug, n + 1)
    if pivots and pivots[-1] == n:
        particular = None
    else:
        x = [0] * n
        for i, c in enumerate(pivots):
            x[c] = (rows[i] >> n) & 1
        particular = FieldVector(2, tuple(x))
    piv_cols = [c for c in pivots if c < n]
    piv_set = set(piv_cols)
    free = [j for j in range(n) if j not in piv_set]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, c in enumerate(piv_cols):
            x[c] = (rows[i] >> f) & 1
        basis.append(FieldVector(2, tuple(x)))
    return SolutionSet(particular, tuple(basis))


def solve_affine(A: FieldMatrix, b: FieldVector, use_packed: Optional[bool] = None) -> SolutionSet:
    """Solve A x = b over GF(p).

    Returns a particular solution (or None) plus a spanning basis of ker A.
    The p=2 path runs on bit-packed rows unless use_packed=False forces the
    generic modular path.
    """
    if A.p != b.p or A.nrows != len(b):
        raise InvalidInput("system shape mismatch")
    if use_packed is None:
        use_packed = A.p == 2
    if use_packed and A.p != 2:
        raise InvalidInput("packed path requires p=2")
    return _solve_gf2(A, b) if use_packed else _solve_generic(A, b)


def image_contains(A: FieldMatrix, b: FieldVector) -> bool:
    """Whether b lies in the column space of A."""
    return solve_affine(A, b).particular is not None
