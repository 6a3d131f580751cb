"""Alternating forms, transvections (plain, dual, affine) and quadratic forms.

Conventions: the Gram matrix G has G[i][j] = omega(e_i, e_j), so
omega(x, y) = x^T G y and the curried map sends x to the functional whose
dual-basis row is x^T G (equivalently the column G^T x).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidInput
from .field import FieldMatrix, FieldVector


@dataclass(frozen=True)
class Functional:
    """Element of the dual space, as a row in the dual standard basis."""

    coords: FieldVector

    def __call__(self, x: FieldVector) -> int:
        return self.coords.dot(x)

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.coords + other.coords)

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.coords - other.coords)

    @property
    def p(self) -> int:
        return self.coords.p

    @property
    def is_zero(self) -> bool:
        return self.coords.is_zero

    @classmethod
    def zero(cls, p: int, n: int) -> "Functional":
        return cls(FieldVector.zero(p, n))

    @classmethod
    def make(cls, p: int, coords: Iterable[int]) -> "Functional":
        return cls(FieldVector.make(p, coords))

    def to_code(self) -> int:
        return self.coords.to_code()

    def restrict(self, indices: Iterable[int]) -> "Functional":
        return Functional(self.coords.restrict(indices))


@dataclass(frozen=True)
class SymplecticSpace:
    """GF(p)^dim with an alternating form and a distinguished spanning set."""

    p: int
    dim: int
    gram: FieldMatrix
    spanning_set: tuple[FieldVector, ...]

    def __post_init__(self):
        g = self.gram
        if g.nrows != self.dim or g.ncols != self.dim:
            raise InvalidInput("Gram matrix must be dim x dim")
        for i in range(self.dim):
            if g.entry(i, i) != 0:
                raise InvalidInput("alternating form needs zero diagonal")
            for j in range(i + 1, self.dim):
                if (g.entry(i, j) + g.entry(j, i)) % self.p != 0:
                    raise InvalidInput("Gram matrix must be skew-symmetric")
        for s in self.spanning_set:
            if s.p != self.p or len(s) != self.dim:
                raise InvalidInput("spanning vector shape mismatch")
        if self.dim > 0:
            m = FieldMatrix.from_columns(self.p, self.spanning_set)
            if m.rank() != self.dim:
                raise InvalidInput("spanning_set does not span the space")

    @classmethod
    def create(
        cls,
        p: int,
        gram_rows: Iterable[Iterable[int]],
        spanning_set: Optional[Iterable[FieldVector]] = None,
    ) -> "SymplecticSpace":
        gram = FieldMatrix.make(p, gram_rows)
        dim = gram.nrows
        if spanning_set is None:
            spanning = tuple(FieldVector.basis(p, dim, i) for i in range(dim))
        else:
            spanning = tuple(spanning_set)
        return cls(p, dim, gram, spanning)

    def omega(self, x: FieldVector, y: FieldVector) -> int:
        return self.gram.mat_vec(y).dot(x)

    @property
    def omega_matrix(self) -> FieldMatrix:
        """Matrix of the curried map x -> omega(x) acting on column vectors."""
        return self.gram.transpose()

    @property
    def has_standard_basis(self) -> bool:
        n = self.dim
        return len(self.spanning_set) == n and all(
            self.spanning_set[i] == FieldVector.basis(self.p, n, i) for i in range(n)
        )

    def spanning_is_basis(self) -> bool:
        if len(self.spanning_set) != self.dim:
            return False
        return FieldMatrix.from_columns(self.p, self.spanning_set).rank() == self.dim

    def spanning_gram(self) -> FieldMatrix:
        """Gram matrix of the form evaluated on the spanning set."""
        return FieldMatrix.make(
            self.p,
            [[self.omega(u, v) for v in self.spanning_set] for u in self.spanning_set],
        )


def omega_map(sp: SymplecticSpace, x: FieldVector) -> Functional:
    """The curried functional omega(x)."""
    return Functional(sp.omega_matrix.mat_vec(x))


def transvection_apply(sp: SymplecticSpace, s: FieldVector, k: int, x: FieldVector) -> FieldVector:
    """x + k*omega(x,s)*s."""
    k %= sp.p
    if k == 0:
        raise InvalidInput("transvection needs k != 0")
    return x + s.scale(k * sp.omega(x, s))


def transvection_matrix(sp: SymplecticSpace, s: FieldVector, k: int) -> FieldMatrix:
    """Matrix M with M x = transvection_apply(sp, s, k, x)."""
    k %= sp.p
    if k == 0:
        raise InvalidInput("transvection needs k != 0")
    u = sp.gram.mat_vec(s)  # u . x = omega(x, s)
    n = sp.dim
    rows = [
        tuple((int(i == j) + k * s.coords[i] * u.coords[j]) % sp.p for j in range(n))
        for i in range(n)
    ]
    return FieldMatrix(sp.p, tuple(rows))


def affine_transvection_apply(
    sp: SymplecticSpace, s: FieldVector, k: int, a: int, x: FieldVector
) -> FieldVector:
    """x + k*(omega(x,s)+a)*s."""
    k %= sp.p
    if k == 0:
        raise InvalidInput("affine transvection needs k != 0")
    if sp.omega(s, s) != 0:
        raise InvalidInput("affine transvection needs omega(s,s)=0")
    return x + s.scale(k * ((sp.omega(x, s) + a) % sp.p))


def dual_transvection_apply(
    sp: SymplecticSpace, s: FieldVector, k: int, alpha: Functional
) -> Functional:
    """alpha composed with the transvection at (s, k).

    Row form: a + k*(a.s)*(G s)^T.
    """
    k %= sp.p
    if k == 0:
        raise InvalidInput("transvection needs k != 0")
    a = alpha.coords
    c = (k * a.dot(s)) % sp.p
    if c == 0:
        return alpha
    return Functional(a + sp.gram.mat_vec(s).scale(c))


@dataclass(frozen=True)
class QuadraticForm:
    """GF(2) quadratic form as a lower-triangular matrix: Q(x) = x^T qmat x."""

    qmat: FieldMatrix

    def __post_init__(self):
        if self.qmat.p != 2:
            raise InvalidInput("quadratic forms are GF(2) only")
        n = self.qmat.nrows
        if self.qmat.ncols != n:
            raise InvalidInput("qmat must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.qmat.entry(i, j) != 0:
                    raise InvalidInput("qmat must be lower triangular")

    @classmethod
    def from_gram(cls, gram: FieldMatrix) -> "QuadraticForm":
        """Q with Q(basis vector)=1 and polarization equal to the given form.

        Diagonal is set to 1; the strict lower triangle copies the Gram
        matrix, which pins the polarization Q(x+y)+Q(x)+Q(y) = omega(x,y).
        """
        if gram.p != 2:
            raise InvalidInput("quadratic forms are GF(2) only")
        n = gram.nrows
        rows = [
            tuple(1 if i == j else (gram.entry(i, j) if j < i else 0) for j in range(n))
            for i in range(n)
        ]
        return cls(FieldMatrix(2, tuple(rows)))

    @property
    def dim(self) -> int:
        return self.qmat.nrows

    def __call__(self, x: FieldVector) -> int:
        return quadratic_eval(self, x)


def quadratic_eval(q: QuadraticForm, x: FieldVector) -> int:
    """Q(x) over GF(2)."""
    if x.p != 2:
        raise InvalidInput("quadratic forms are GF(2) only")
    if len(x) != q.dim:
        raise InvalidInput("vector length mismatch")
    supp = x.support()
    total = 0
    for idx, i in enumerate(supp):
        total ^= q.qmat.entry(i, i)
        for j in supp[:idx]:
            total ^= q.qmat.entry(i, j)
    return total
