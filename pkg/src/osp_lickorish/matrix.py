"""Sparse exact matrices over Q(q) and the dense elimination routines built on them."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .cyclotomic import CycContext, CycNum, Scalar


class Matrix:
    """Row-sparse matrix; ``rows[i]`` maps column index to a nonzero CycNum."""

    __slots__ = ("ctx", "shape", "rows")

    def __init__(self, ctx: CycContext, shape: tuple[int, int], rows: Optional[dict] = None):
        self.ctx = ctx
        self.shape = shape
        self.rows: dict[int, dict[int, CycNum]] = rows if rows is not None else {}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, ctx: CycContext, m: int, n: int) -> "Matrix":
        return cls(ctx, (m, n))

    @classmethod
    def identity(cls, ctx: CycContext, n: int) -> "Matrix":
        one = ctx.one()
        return cls(ctx, (n, n), {i: {i: one} for i in range(n)})

    @classmethod
    def diag(cls, ctx: CycContext, entries: Sequence[Scalar]) -> "Matrix":
        rows = {}
        for i, e in enumerate(entries):
            e = e if isinstance(e, CycNum) else ctx.const(e)
            if e:
                rows[i] = {i: e}
        return cls(ctx, (len(entries), len(entries)), rows)

    @classmethod
    def from_entries(cls, ctx: CycContext, shape: tuple[int, int], entries: Iterable) -> "Matrix":
        """Build from (i, j, value) triples; repeated positions are summed."""
        rows: dict[int, dict[int, CycNum]] = {}
        for i, j, v in entries:
            v = v if isinstance(v, CycNum) else ctx.const(v)
            r = rows.setdefault(i, {})
            r[j] = r[j] + v if j in r else v
        out = cls(ctx, shape, rows)
        out._prune()
        return out

    @classmethod
    def from_dense(cls, ctx: CycContext, dense: Sequence[Sequence[Scalar]]) -> "Matrix":
        m = len(dense)
        n = len(dense[0]) if m else 0
        return cls.from_entries(ctx, (m, n), ((i, j, v) for i, row in enumerate(dense) for j, v in enumerate(row) if v))

    @classmethod
    def from_columns(cls, ctx: CycContext, m: int, columns: Sequence[dict[int, CycNum]]) -> "Matrix":
        return cls.from_entries(ctx, (m, len(columns)), ((i, j, v) for j, col in enumerate(columns) for i, v in col.items()))

    def _prune(self) -> None:
        for i in list(self.rows):
            r = self.rows[i]
            for j in [j for j, v in r.items() if not v]:
                del r[j]
            if not r:
                del self.rows[i]

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        i, j = ij
        return self.rows.get(i, {}).get(j) or self.ctx.zero()

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def items(self):
        for i, r in self.rows.items():
            for j, v in r.items():
                yield i, j, v

    def to_dense(self) -> list[list[CycNum]]:
        z = self.ctx.zero()
        out = [[z] * self.shape[1] for _ in range(self.shape[0])]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict[int, CycNum]:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def columns(self) -> list[dict[int, CycNum]]:
        cols: list[dict[int, CycNum]] = [{} for _ in range(self.shape[1])]
        for i, j, v in self.items():
            cols[j][i] = v
        return cols

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        cpos = {c: k for k, c in enumerate(cols)}
        out = {}
        for a, i in enumerate(rows):
            r = self.rows.get(i)
            if r:
                nr = {cpos[j]: v for j, v in r.items() if j in cpos}
                if nr:
                    out[a] = nr
        return Matrix(self.ctx, (len(rows), len(cols)), out)

    # -- algebra --------------------------------------------------------
    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tr = rows.setdefault(i, {})
            for j, v in r.items():
                tr[j] = tr[j] + v if j in tr else v
        out = Matrix(self.ctx, self.shape, rows)
        out._prune()
        return out

    def __neg__(self) -> "Matrix":
        return Matrix(self.ctx, self.shape, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        c = c if isinstance(c, CycNum) else self.ctx.const(c)
        if not c:
            return Matrix(self.ctx, self.shape)
        return Matrix(self.ctx, self.shape, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __mul__(self, c: Scalar) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        out = {}
        for i, r in self.rows.items():
            acc: dict[int, CycNum] = {}
            for k, a in r.items():
                ok = orows.get(k)
                if ok:
                    for j, b in ok.items():
                        p = a * b
                        acc[j] = acc[j] + p if j in acc else p
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix(self.ctx, (self.shape[0], other.shape[1]), out)

    def kron(self, other: "Matrix") -> "Matrix":
        m2, n2 = other.shape
        out = {}
        for i, r in self.rows.items():
            for i2, r2 in other.rows.items():
                out[i * m2 + i2] = {j * n2 + j2: a * b for j, a in r.items() for j2, b in r2.items()}
        return Matrix(self.ctx, (self.shape[0] * m2, self.shape[1] * n2), out)

    def transpose(self) -> "Matrix":
        out: dict[int, dict[int, CycNum]] = {}
        for i, j, v in self.items():
            out.setdefault(j, {})[i] = v
        return Matrix(self.ctx, (self.shape[1], self.shape[0]), out)

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def trace(self) -> CycNum:
        t = self.ctx.zero()
        for i, r in self.rows.items():
            if i in r:
                t = t + r[i]
        return t

    def is_scalar(self) -> Optional[CycNum]:
        """The scalar c if self == c * identity, else None."""
        n = self.shape[0]
        if self.shape[1] != n:
            return None
        c = self[0, 0] if n else self.ctx.zero()
        for i in range(n):
            r = self.rows.get(i, {})
            if any(j != i for j in r):
                return None
            if (r.get(i) or self.ctx.zero()) != c:
                return None
        return c

    def __repr__(self) -> str:
        return f"Matrix(shape={self.shape}, nnz={self.nnz()})"


def kron_all(mats: Sequence[Matrix]) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def matpow(M: Matrix, e: int) -> Matrix:
    out = Matrix.identity(M.ctx, M.shape[0])
    for _ in range(e):
        out = M @ out
    return out


# -- dense elimination ------------------------------------------------------

def rref(dense: list[list[CycNum]], ctx: CycContext) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form (new list) and pivot columns."""
    A = [list(r) for r in dense]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        sel = next((i for i in range(row, m) if A[i][col]), None)
        if sel is None:
            continue
        A[row], A[sel] = A[sel], A[row]
        inv = A[row][col].inv()
        A[row] = [v * inv if v else v for v in A[row]]
        prow = A[row]
        nz = [j for j in range(col, n) if prow[j]]
        for i in range(m):
            if i != row:
                f = A[i][col]
                if f:
                    Ai = A[i]
                    for j in nz:
                        Ai[j] = Ai[j] - f * prow[j]
        pivots.append(col)
        row += 1
    return A, pivots


def kernel(M: Matrix) -> list[dict[int, CycNum]]:
    """Basis of the right null space, as sparse column vectors."""
    ctx = M.ctx
    n = M.shape[1]
    if M.shape[0] == 0:
        return [{j: ctx.one()} for j in range(n)]
    R, piv = rref(M.to_dense(), ctx)
    pivset = set(piv)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = {free: ctx.one()}
        for r, pc in enumerate(piv):
            c = R[r][free]
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def rank(M: Matrix) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return len(rref(M.to_dense(), M.ctx)[1])


def inverse(M: Matrix) -> Matrix:
    n, n2 = M.shape
    if n != n2:
        raise ValueError("inverse of a non-square matrix")
    ctx = M.ctx
    if n == 0:
        return Matrix(ctx, (0, 0))
    z, one = ctx.zero(), ctx.one()
    dense = M.to_dense()
    aug = [row + [one if i == j else z for j in range(n)] for i, row in enumerate(dense)]
    R, piv = rref(aug, ctx)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix.from_dense(ctx, [r[n:] for r in R])


def solve_homogeneous(equations: list[dict[int, CycNum]], nvars: int, ctx: CycContext) -> list[dict[int, CycNum]]:
    """Null space of a linear system given as sparse coefficient rows."""
    M = Matrix.from_entries(ctx, (len(equations), nvars), ((i, j, v) for i, eq in enumerate(equations) for j, v in eq.items()))
    M._prune()
    nonempty = [i for i in range(len(equations)) if i in M.rows]
    return kernel(M.submatrix(nonempty, list(range(nvars))))
