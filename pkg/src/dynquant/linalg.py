"""Sparse exact matrices over a ScalarField and small linear solvers."""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .scalars import Scalar, ScalarField


class NotInvertible(ArithmeticError):
    pass


class ShapeMismatch(ValueError):
    pass


Vector = Dict[Hashable, Scalar]


def vec_add(a: Vector, b: Vector, c: Optional[Scalar] = None) -> Vector:
    """a + c*b (new dict)."""
    out = dict(a)
    for k, x in b.items():
        y = x if c is None else x * c
        if k in out:
            z = out[k] + y
            if z.is_zero:
                del out[k]
            else:
                out[k] = z
        elif not y.is_zero:
            out[k] = y
    return out


def vec_iadd(a: Vector, b: Vector, c: Optional[Scalar] = None) -> None:
    for k, x in b.items():
        y = x if c is None else x * c
        if k in a:
            z = a[k] + y
            if z.is_zero:
                del a[k]
            else:
                a[k] = z
        elif not y.is_zero:
            a[k] = y


def vec_scale(a: Vector, c: Scalar) -> Vector:
    if c.is_zero:
        return {}
    return {k: x * c for k, x in a.items()}


class RationalMatrix:
    """Matrix with Scalar entries, stored sparsely by (row, col) index."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: ScalarField, rows: Sequence[str], cols: Sequence[str],
                 entries: Optional[Dict[Tuple[int, int], Scalar]] = None):
        self.field = field
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        clean = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise ShapeMismatch(f"entry {(i, j)} outside {self.shape}")
            if not isinstance(x, Scalar):
                x = field(x)
            if not x.is_zero:
                clean[(i, j)] = x
        self.entries = clean

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    @classmethod
    def identity(cls, field: ScalarField, labels: Sequence[str]) -> "RationalMatrix":
        return cls(field, labels, labels, {(i, i): field.one for i in range(len(labels))})

    @classmethod
    def zeros(cls, field: ScalarField, rows: Sequence[str], cols: Sequence[str]) -> "RationalMatrix":
        return cls(field, rows, cols, {})

    @classmethod
    def from_columns(cls, field: ScalarField, rows: Sequence[str], cols: Sequence[str],
                     columns: Sequence[Vector]) -> "RationalMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                ent[(i, j)] = x
        return cls(field, rows, cols, ent)

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        return self.entries.get(ij, self.field.zero)

    def column(self, j: int) -> Vector:
        return {i: x for (i, jj), x in self.entries.items() if jj == j}

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        cols: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (i, j), x in self.entries.items():
            cols.setdefault(j, []).append((i, x))
        for j, c in vec.items():
            for i, x in cols.get(j, ()):
                vec_iadd(out, {i: x * c})
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        by_row: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (k, j), y in other.entries.items():
            by_row.setdefault(k, []).append((j, y))
        acc: Dict[Tuple[int, int], Scalar] = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc[key] + x * y if key in acc else x * y
        return RationalMatrix(self.field, self.rows, other.cols, acc)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        ent = dict(self.entries)
        for k, y in other.entries.items():
            ent[k] = ent[k] + y if k in ent else y
        return RationalMatrix(self.field, self.rows, self.cols, ent)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(self.field(-1))

    def __neg__(self) -> "RationalMatrix":
        return self.scale(self.field(-1))

    def scale(self, c: Scalar) -> "RationalMatrix":
        return RationalMatrix(self.field, self.rows, self.cols, {k: x * c for k, x in self.entries.items()})

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def is_identity(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        return all(i == j and x == 1 for (i, j), x in self.entries.items()) and len(self.entries) == n

    def first_difference(self, other: "RationalMatrix") -> Optional[Tuple[int, int]]:
        self._same_shape(other)
        for key in sorted(set(self.entries) | set(other.entries)):
            if self[key] != other[key]:
                return key
        return None

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.field, self.cols, self.rows, {(j, i): x for (i, j), x in self.entries.items()})

    def map(self, fn: Callable[[Scalar], Scalar]) -> "RationalMatrix":
        return RationalMatrix(self.field, self.rows, self.cols, {k: fn(x) for k, x in self.entries.items()})

    def map_indexed(self, fn: Callable[[int, int, Scalar], Scalar]) -> "RationalMatrix":
        return RationalMatrix(self.field, self.rows, self.cols, {(i, j): fn(i, j, x) for (i, j), x in self.entries.items()})

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        """Tensor product in lexicographic pair order."""
        n2, m2 = other.shape
        ent = {}
        for (i, j), x in self.entries.items():
            for (k, l), y in other.entries.items():
                ent[(i * n2 + k, j * m2 + l)] = x * y
        rows = [f"{a}⊗{b}" for a in self.rows for b in other.rows]
        cols = [f"{a}⊗{b}" for a in self.cols for b in other.cols]
        return RationalMatrix(self.field, rows, cols, ent)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int], rows=None, cols=None) -> "RationalMatrix":
        """New matrix N with N[row_perm[i], col_perm[j]] = M[i, j]."""
        ent = {(row_perm[i], col_perm[j]): x for (i, j), x in self.entries.items()}
        rows = rows if rows is not None else [self.rows[row_perm.index(k)] for k in range(len(self.rows))]
        cols = cols if cols is not None else [self.cols[col_perm.index(k)] for k in range(len(self.cols))]
        return RationalMatrix(self.field, rows, cols, ent)

    def inverse(self) -> "RationalMatrix":
        """Gauss-Jordan elimination over the scalar field."""
        n, m = self.shape
        if n != m:
            raise ShapeMismatch("inverse of a non-square matrix")
        rows: List[Dict[int, Scalar]] = [dict() for _ in range(n)]
        for (i, j), x in self.entries.items():
            rows[i][j] = x
        inv: List[Dict[int, Scalar]] = [{i: self.field.one} for i in range(n)]
        for c in range(n):
            p = next((r for r in range(c, n) if c in rows[r]), None)
            if p is None:
                raise NotInvertible("matrix is singular over the scalar field")
            rows[c], rows[p] = rows[p], rows[c]
            inv[c], inv[p] = inv[p], inv[c]
            piv = rows[c][c]
            if piv != 1:
                pinv = self.field.one / piv
                rows[c] = vec_scale(rows[c], pinv)
                inv[c] = vec_scale(inv[c], pinv)
            for r in range(n):
                if r != c and c in rows[r]:
                    f = -rows[r][c]
                    rows[r] = vec_add(rows[r], rows[c], f)
                    inv[r] = vec_add(inv[r], inv[c], f)
        ent = {(i, j): x for i in range(n) for j, x in inv[i].items()}
        return RationalMatrix(self.field, self.cols, self.rows, ent)

    def to_dense(self) -> List[List[Scalar]]:
        n, m = self.shape
        return [[self[(i, j)] for j in range(m)] for i in range(n)]

    def to_json(self, style: str = "plain", metadata: Optional[dict] = None) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": {f"{i},{j}": self.entries[(i, j)].format(style) for (i, j) in sorted(self.entries)},
            "metadata": dict(metadata or {}),
        }

    @classmethod
    def from_json(cls, field: ScalarField, data: dict) -> "RationalMatrix":
        ent = {}
        for key, text in data["entries"].items():
            i, j = (int(x) for x in key.split(","))
            ent[(i, j)] = field.parse(text)
        return cls(field, data["rows"], data["cols"], ent)

    def __repr__(self) -> str:
        body = ", ".join(f"{self.rows[i]}<-{self.cols[j]}: {x}" for (i, j), x in sorted(self.entries.items()))
        return f"RationalMatrix{self.shape}[{body}]"


def solve_linear(field: ScalarField, equations: Iterable[Vector], rhs: Sequence[Scalar],
                 unknowns: Sequence[Hashable]) -> Tuple[Optional[Dict[Hashable, Scalar]], int]:
    """Solve sum_u eq[u] x_u = rhs over the field.

    Returns (solution or None if inconsistent, rank).  Free unknowns are set
    to zero; callers compare the rank with len(unknowns) for uniqueness.
    """
    index = {u: k for k, u in enumerate(unknowns)}
    n = len(unknowns)
    rows: List[Tuple[Dict[int, Scalar], Scalar]] = []
    for eq, b in zip(equations, rhs):
        row = {index[u]: x for u, x in eq.items() if not x.is_zero}
        if row or not b.is_zero:
            rows.append((row, b))
    pivots: List[Tuple[int, Dict[int, Scalar], Scalar]] = []
    for row, b in rows:
        for col, prow, pb in pivots:
            if col in row:
                f = -row[col]
                row = vec_add(row, prow, f)
                b = b + pb * f
        if not row:
            if not b.is_zero:
                return None, len(pivots)
            continue
        col = min(row)
        inv = field.one / row[col]
        row = vec_scale(row, inv)
        b = b * inv
        # keep previous pivot rows reduced in this column
        new_pivots = []
        for c2, r2, b2 in pivots:
            if col in r2:
                f = -r2[col]
                r2 = vec_add(r2, row, f)
                b2 = b2 + b * f
            new_pivots.append((c2, r2, b2))
        pivots = new_pivots + [(col, row, b)]
    sol = {u: field.zero for u in unknowns}
    for col, row, b in pivots:
        # free variables are zero, so x_col = b
        sol[unknowns[col]] = b
    return sol, len(pivots)
