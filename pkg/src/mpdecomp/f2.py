"""Bit-packed linear algebra over F2.

Columns are arbitrary-precision integers, bit i = row i, so a column
addition is one XOR and the pivot of a column is its highest set bit.
Storage is column-major; row access and transposition are explicit
(and pay for the swap) rather than hidden behind a stride.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError


class F2Matrix:
    """A binary matrix stored as one int per column."""

    __slots__ = ("n_rows", "cols")

    def __init__(self, n_rows: int, cols: Optional[Sequence[int]] = None):
        if n_rows < 0:
            raise InputError(f"negative row count {n_rows}")
        self.n_rows = n_rows
        self.cols: List[int] = list(cols) if cols is not None else []
        bound = 1 << n_rows
        for j, c in enumerate(self.cols):
            if c < 0 or c >= bound:
                raise InputError(f"column {j} has bits outside {n_rows} rows")

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "F2Matrix":
        return cls(n_rows, [0] * n_cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def from_entries(
        cls, n_rows: int, n_cols: int, entries: Iterable[Tuple[int, int]]
    ) -> "F2Matrix":
        m = cls.zeros(n_rows, n_cols)
        for i, j in entries:
            if not (0 <= i < n_rows and 0 <= j < n_cols):
                raise InputError(f"entry ({i},{j}) outside {n_rows}x{n_cols}")
            m.cols[j] ^= 1 << i
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "F2Matrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        m = cls.zeros(n_rows, n_cols)
        for i, r in enumerate(rows):
            if len(r) != n_cols:
                raise InputError("ragged dense matrix")
            for j, v in enumerate(r):
                if v & 1:
                    m.cols[j] |= 1 << i
        return m

    # -- shape and access --------------------------------------------------

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    def entry(self, i: int, j: int) -> int:
        return (self.cols[j] >> i) & 1

    def column(self, j: int) -> int:
        return self.cols[j]

    def row(self, i: int) -> int:
        mask = 1 << i
        out = 0
        for j, c in enumerate(self.cols):
            if c & mask:
                out |= 1 << j
        return out

    def entries(self) -> Iterator[Tuple[int, int]]:
        for j, c in enumerate(self.cols):
            while c:
                low = c & -c
                yield low.bit_length() - 1, j
                c ^= low

    def to_dense(self) -> List[List[int]]:
        return [
            [(self.cols[j] >> i) & 1 for j in range(self.n_cols)]
            for i in range(self.n_rows)
        ]

    # -- operations --------------------------------------------------------

    def low(self, j: int) -> Optional[int]:
        """Largest row index carrying a 1 in column j, or None if zero."""
        c = self.cols[j]
        return c.bit_length() - 1 if c else None

    def add_col(self, src: int, dst: int) -> None:
        if src == dst:
            raise InputError("column added to itself")
        self.cols[dst] ^= self.cols[src]

    def add_row(self, src: int, dst: int) -> None:
        if src == dst:
            raise InputError("row added to itself")
        m_src = 1 << src
        m_dst = 1 << dst
        for j, c in enumerate(self.cols):
            if c & m_src:
                self.cols[j] = c ^ m_dst

    def transpose(self) -> "F2Matrix":
        out = F2Matrix.zeros(self.n_cols, self.n_rows)
        for i, j in self.entries():
            out.cols[i] |= 1 << j
        return out

    def matmul(self, other: "F2Matrix") -> "F2Matrix":
        if self.n_cols != other.n_rows:
            raise InputError(
                f"shape mismatch: {self.n_rows}x{self.n_cols} times "
                f"{other.n_rows}x{other.n_cols}"
            )
        out = F2Matrix.zeros(self.n_rows, other.n_cols)
        for j, oc in enumerate(other.cols):
            acc = 0
            k = 0
            while oc:
                if oc & 1:
                    acc ^= self.cols[k]
                oc >>= 1
                k += 1
            out.cols[j] = acc
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "F2Matrix":
        out = F2Matrix.zeros(len(rows), len(cols))
        for jj, j in enumerate(cols):
            c = self.cols[j]
            v = 0
            for ii, i in enumerate(rows):
                if (c >> i) & 1:
                    v |= 1 << ii
            out.cols[jj] = v
        return out

    def rank(self) -> int:
        """Column elimination; counts pivot lows."""
        pivots: dict = {}
        for c in self.cols:
            cur = c
            while cur:
                lw = cur.bit_length() - 1
                if lw in pivots:
                    cur ^= pivots[lw]
                else:
                    pivots[lw] = cur
                    break
        return len(pivots)

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.n_rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.n_rows == other.n_rows
            and self.cols == other.cols
        )

    def __hash__(self):  # mutable container
        raise TypeError("F2Matrix is not hashable")

    def __repr__(self) -> str:
        body = ";".join(format(c, "x") for c in self.cols)
        return f"F2Matrix({self.n_rows}x{self.n_cols}:{body})"


@dataclass
class ColOpLog:
    """Ordered record of column additions performed on one matrix.

    Each pair is (source, target) with source < target; replaying the pairs
    on the original matrix reproduces the reduction exactly.
    """

    ops: List[Tuple[int, int]] = field(default_factory=list)

    def replay(self, mat: F2Matrix) -> F2Matrix:
        out = mat.copy()
        for s, t in self.ops:
            if s >= t:
                raise InputError(f"log pair ({s},{t}) is not left-to-right")
            out.add_col(s, t)
        return out

    def combination(self, target: int, n_cols: int) -> int:
        """Bitmask over original columns whose sum was folded into target.

        Tracks coefficients through the whole log, so source columns that
        were themselves rewritten before being used resolve to the original
        basis.  The target's own unit coefficient is dropped.
        """
        coeff = [1 << j for j in range(n_cols)]
        for s, t in self.ops:
            coeff[t] ^= coeff[s]
        return coeff[target] & ~(1 << target)


def reduce_matrix(mat: F2Matrix) -> Tuple[F2Matrix, ColOpLog]:
    """Left-to-right additions until no two nonzero columns share a low."""
    out = mat.copy()
    log = ColOpLog()
    owner: dict = {}  # low -> column that claimed it
    for j in range(out.n_cols):
        while out.cols[j]:
            lw = out.cols[j].bit_length() - 1
            src = owner.get(lw)
            if src is None:
                owner[lw] = j
                break
            out.add_col(src, j)
            log.ops.append((src, j))
    return out, log


def col_reduce(S: F2Matrix, c: int) -> Tuple[int, ColOpLog]:
    """Reduce the stacked matrix [S|c]; return the final state of c.

    The returned column is zero exactly when c lies in the column span of
    S.  The log covers every addition made in [S|c]; the ones that landed
    in c are the pairs whose target equals S.n_cols.
    """
    if c < 0 or c >> S.n_rows:
        raise InputError(f"target column has bits outside {S.n_rows} rows")
    stacked = F2Matrix(S.n_rows, list(S.cols) + [c])
    reduced, log = reduce_matrix(stacked)
    return reduced.cols[-1], log


def express_in_span(S: F2Matrix, c: int) -> Optional[int]:
    """Coefficients of c over the original columns of S, or None.

    None means c is independent of S.  Otherwise the returned bitmask b
    satisfies c == XOR of S.cols[j] for the set bits j of b.
    """
    residual, log = col_reduce(S, c)
    if residual:
        return None
    return log.combination(S.n_cols, S.n_cols + 1)
