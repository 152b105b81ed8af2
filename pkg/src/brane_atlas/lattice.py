"""Exact integer-matrix algebra.

Every fixed-locus count in the package is read off a Smith normal form, so
this module stays exact: Python integers guarded by a machine-word bound,
``fractions.Fraction`` for rational right-hand sides, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "INT_BOUND",
    "LatticeOverflowError",
    "IntegerMatrix",
    "SmithDecomposition",
    "CokernelInvariants",
    "ModSolution",
    "smith_normal_form",
    "cokernel_invariants",
    "solve_mod_lattice",
    "solve_integer",
    "rational_solve",
    "rational_inverse",
]

INT_BOUND = 2**63 - 1


class LatticeOverflowError(OverflowError):
    """An intermediate entry left the signed 64-bit range."""


def _checked(x: int) -> int:
    if x > INT_BOUND or x < -INT_BOUND:
        raise LatticeOverflowError(f"integer entry {x} exceeds the 64-bit bound")
    return x


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix with overflow-checked arithmetic."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError(f"non-integer entry {x!r}")
                _checked(x)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntegerMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntegerMatrix:
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.entries for x in r)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries))
        return IntegerMatrix(
            tuple(
                tuple(_checked(sum(a * b for a, b in zip(row, col))) for col in cols)
                for row in self.entries
            )
        )

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector; works for int or Fraction entries."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def _zip(self, other: IntegerMatrix, op) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntegerMatrix(
            tuple(
                tuple(_checked(op(a, b)) for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            )
        )

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(tuple(tuple(-x for x in r) for r in self.entries))

    def scale(self, k: int) -> IntegerMatrix:
        return IntegerMatrix(tuple(tuple(_checked(k * x) for x in r) for r in self.entries))

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(tuple(zip(*self.entries)))

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def kron(self, other: IntegerMatrix) -> IntegerMatrix:
        """Kronecker product; block (i, j) is ``self[i, j] * other``."""
        p, q = other.shape
        return IntegerMatrix(
            tuple(
                tuple(
                    _checked(self.entries[i // p][j // q] * other.entries[i % p][j % q])
                    for j in range(self.cols * q)
                )
                for i in range(self.rows * p)
            )
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and self == IntegerMatrix.identity(self.rows)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def power(self, k: int) -> IntegerMatrix:
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        out = IntegerMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def order(self, limit: int = 1000) -> int | None:
        """Multiplicative order, or None if it exceeds ``limit``."""
        ident = IntegerMatrix.identity(self.rows)
        acc = self
        for k in range(1, limit + 1):
            if acc == ident:
                return k
            acc = acc @ self
        return None

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = _checked((a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev)
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank over Q by fraction-free Gaussian elimination."""
        a = self.tolist()
        m, n = self.shape
        r, prev = 0, 1
        for c in range(n):
            piv = next((i for i in range(r, m) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(r + 1, m):
                for j in range(c + 1, n):
                    a[i][j] = _checked((a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev)
                a[i][c] = 0
            prev = a[r][c]
            r += 1
            if r == m:
                break
        return r

    def is_unimodular(self) -> bool:
        return self.is_square() and abs(self.det()) == 1

    def inverse(self) -> IntegerMatrix:
        """Inverse of a unimodular matrix."""
        inv = rational_inverse(self)
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("matrix is not unimodular")
        return IntegerMatrix.from_rows([[int(x) for x in r] for r in inv])

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"


class SmithDecomposition(NamedTuple):
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


class CokernelInvariants(NamedTuple):
    free_rank: int
    torsion_orders: tuple[int, ...]


class ModSolution(NamedTuple):
    solvable: bool
    particular: tuple[Fraction, ...] | None
    kernel_basis: tuple[tuple[int, ...], ...]


def _row_op(a: list[list[int]], dst: int, src: int, q: int) -> None:
    # a[dst] -= q * a[src]
    rd, rs = a[dst], a[src]
    for j in range(len(rd)):
        rd[j] = _checked(rd[j] - q * rs[j])


def _col_op(a: list[list[int]], dst: int, src: int, q: int) -> None:
    for row in a:
        row[dst] = _checked(row[dst] - q * row[src])


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form by elementary operations with smallest-pivot choice.

    Returns ``(U, D, V)`` with ``U @ A @ V == D``, ``D`` diagonal with
    nonnegative entries forming a divisibility chain. The output is a
    deterministic function of ``A``.

    Raises:
        LatticeOverflowError: if any intermediate entry leaves the 64-bit range.
    """
    m, n = A.shape
    d = A.tolist()
    u = IntegerMatrix.identity(m).tolist()
    v = IntegerMatrix.identity(n).tolist()

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        _swap_rows(d, t, i)
        _swap_rows(u, t, i)
        _swap_cols(d, t, j)
        _swap_cols(v, t, j)

        while True:
            p = d[t][t]
            for i in range(t + 1, m):
                q = d[i][t] // p
                if q:
                    _row_op(d, i, t, q)
                    _row_op(u, i, t, q)
            for j in range(t + 1, n):
                q = d[t][j] // p
                if q:
                    _col_op(d, j, t, q)
                    _col_op(v, j, t, q)

            rem = None
            for i in range(t + 1, m):
                if d[i][t] != 0 and (rem is None or abs(d[i][t]) < rem[0]):
                    rem = (abs(d[i][t]), "r", i)
            for j in range(t + 1, n):
                if d[t][j] != 0 and (rem is None or abs(d[t][j]) < rem[0]):
                    rem = (abs(d[t][j]), "c", j)
            if rem is not None:
                _, kind, k = rem
                if kind == "r":
                    _swap_rows(d, t, k)
                    _swap_rows(u, t, k)
                else:
                    _swap_cols(d, t, k)
                    _swap_cols(v, t, k)
                continue

            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            # pull the offending row into the pivot row; next pass shrinks the pivot
            _row_op(d, t, bad[0], -1)
            _row_op(u, t, bad[0], -1)

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        IntegerMatrix.from_rows(u), IntegerMatrix.from_rows(d), IntegerMatrix.from_rows(v)
    )


def cokernel_invariants(A: IntegerMatrix) -> CokernelInvariants:
    """Free rank ``cols - rank(A)`` and the non-unit Smith invariants of A.

    These describe the kernel of A acting on the torus ``(R/Z)^cols``: a
    subgroup with identity component of dimension ``free_rank`` and
    ``prod(torsion_orders)`` connected components.
    """
    snf = smith_normal_form(A)
    diag = snf.diagonal
    rank = sum(1 for x in diag if x)
    return CokernelInvariants(A.cols - rank, tuple(x for x in diag if x > 1))


def _as_fractions(b: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in b)


def solve_mod_lattice(A: IntegerMatrix, b: Sequence) -> ModSolution:
    """Decide ``A x = b (mod Z^rows)`` for real ``x``.

    Returns a particular rational solution (free coordinates set to zero)
    and an integer basis of the kernel of A, which spans its real kernel.
    """
    b = _as_fractions(b)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    U, D, V = smith_normal_form(A)
    ub = U.apply(b)
    diag = [D[i, i] if i < min(D.shape) else 0 for i in range(A.rows)]
    rank = sum(1 for x in diag if x)

    kernel = []
    for j in range(rank, A.cols):
        col = list(V.column(j))
        lead = next(x for x in col if x != 0)
        if lead < 0:
            col = [-x for x in col]
        kernel.append(tuple(col))

    if any(ub[i].denominator != 1 for i in range(rank, A.rows)):
        return ModSolution(False, None, tuple(kernel))
    y = [ub[i] / diag[i] if i < rank else Fraction(0) for i in range(A.cols)]
    return ModSolution(True, V.apply(y), tuple(kernel))


def obstruction_rows(A: IntegerMatrix) -> tuple[tuple[int, ...], ...]:
    """Integer covectors u with ``A x = b (mod Z)`` solvable iff every ``u . b`` is integral."""
    U, D, _ = smith_normal_form(A)
    rank = sum(1 for i in range(min(D.shape)) if D[i, i])
    return tuple(U.entries[i] for i in range(rank, A.rows))


def solve_integer(A: IntegerMatrix, b: Sequence) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b`` (b rational), or None."""
    b = _as_fractions(b)
    U, D, V = smith_normal_form(A)
    ub = U.apply(b)
    y = []
    for i in range(A.rows):
        d = D[i, i] if i < min(D.shape) else 0
        if d == 0:
            if ub[i] != 0:
                return None
            if i < A.cols:
                y.append(0)
        else:
            q = ub[i] / d
            if q.denominator != 1:
                return None
            y.append(int(q))
    y += [0] * (A.cols - len(y))
    return tuple(int(x) for x in V.apply(y))


def rational_solve(rows: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Some rational solution of ``rows @ x = b`` (free variables zero), or None."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return tuple(x)


def rational_inverse(A: IntegerMatrix) -> list[list[Fraction]]:
    if not A.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = A.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
