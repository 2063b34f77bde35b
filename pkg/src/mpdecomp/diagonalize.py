"""Total diagonalization of a graded matrix under admissible operations.

The outer loop introduces columns one at a time and keeps a set of blocks
(paired row/column index sets) that are already mutually decoupled.  For
each block it asks whether the block's rows can be cleared outside the
block's own columns; the answer is found by linearizing the candidate
region into one long bit vector and reducing it against one vector per
admissible operation.  Blocks that fail merge with the incoming column.

The linearization order walks the last column first and rows upward inside
a column, so a reduction can only ever touch columns at or after the one
being introduced: earlier columns sit at the high-bit end, a reduced
vector never gains bits above its pivot, and the already-diagonalized
prefix stays untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import InputError, TiedGradesError
from .f2 import F2Matrix, col_reduce
from .graded import AdmissibleOps, GradedMatrix, admissible_ops
from .grades import GradeOrderContext, tied_pairs, topo_order


@dataclass(frozen=True)
class IndexBlock:
    """A paired set of row and column indices, each kept sorted."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.rows)) != self.rows or tuple(sorted(self.cols)) != self.cols:
            raise InputError("block index sets must be sorted")


class Op(NamedTuple):
    kind: str  # 'row' or 'col'
    source: int
    target: int


@dataclass
class Diagonalization:
    matrix: GradedMatrix
    blocks: List[IndexBlock]
    certificate: List[Op]
    perturbed: bool


def _block_key(b: IndexBlock):
    return (0, b.rows[0]) if b.rows else (1, b.cols[0])


def lin(mat: F2Matrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    """Flatten the (rows x cols) region, last column first, rows ascending.

    Bit k of the result corresponds to position k of that walk, so the
    highest set bit (the pivot under reduction) lies in the earliest
    column of the region.
    """
    n_rt = len(rows)
    n_ct = len(cols)
    v = 0
    for cpos, j in enumerate(cols):
        c = mat.cols[j]
        base = (n_ct - 1 - cpos) * n_rt
        for rpos, i in enumerate(rows):
            if (c >> i) & 1:
                v |= 1 << (base + rpos)
    return v


def lin_inv(v: int, rows: Sequence[int], cols: Sequence[int]) -> F2Matrix:
    """Inverse of lin: rebuild the region as a len(rows) x len(cols) matrix."""
    n_rt = len(rows)
    n_ct = len(cols)
    if v < 0 or v >> (n_rt * n_ct):
        raise InputError("flattened vector longer than the region")
    out = F2Matrix.zeros(n_rt, n_ct)
    for cpos in range(n_ct):
        seg = (v >> ((n_ct - 1 - cpos) * n_rt)) & ((1 << n_rt) - 1)
        out.cols[cpos] = seg
    return out


def _write_region(
    mat: F2Matrix, rows: Sequence[int], cols: Sequence[int], v: int
) -> None:
    # scatter a lin-flattened vector back into the parent matrix
    n_rt = len(rows)
    n_ct = len(cols)
    row_mask = 0
    for i in rows:
        row_mask |= 1 << i
    for cpos, j in enumerate(cols):
        seg = (v >> ((n_ct - 1 - cpos) * n_rt)) & ((1 << n_rt) - 1)
        scattered = 0
        for rpos, i in enumerate(rows):
            if (seg >> rpos) & 1:
                scattered |= 1 << i
        mat.cols[j] = (mat.cols[j] & ~row_mask) | scattered


def block_reduce(
    A: GradedMatrix,
    ops: AdmissibleOps,
    T: IndexBlock,
    t: int,
    certificate: Optional[List[Op]] = None,
) -> bool:
    """Try to clear A on T's rows over T's columns up to column t.

    T pairs the rows of one block B with every column outside B.  One
    source vector is built per admissible operation that feeds the region:
    column additions out of B into a column of T at or before t, and row
    additions from outside T's rows into them.  The target vector is
    reduced against the sources; whatever remains is written back over all
    of T (columns after t included, they record side effects of row
    operations).  Realized operations are appended to the certificate.

    Returns True when the region at columns <= t ended up all zero.
    """
    rows_t = T.rows
    cols_t = T.cols
    if not rows_t:
        return True
    n_rt = len(rows_t)
    n_ct = len(cols_t)
    rows_t_set = set(rows_t)
    cols_b = [j for j in range(A.n_cols) if j not in set(cols_t)]
    cols_b_set = set(cols_b)

    c = lin(A.mat, rows_t, cols_t)

    sources: List[Op] = []
    vecs: List[int] = []
    for cpos, j in enumerate(cols_t):
        if j > t:
            continue
        base = (n_ct - 1 - cpos) * n_rt
        for i in ops.col_sources(j):
            if i not in cols_b_set:
                continue
            col_i = A.mat.cols[i]
            v = 0
            for rpos, r in enumerate(rows_t):
                if (col_i >> r) & 1:
                    v |= 1 << (base + rpos)
            sources.append(Op("col", i, j))
            vecs.append(v)
    for kpos, k in enumerate(rows_t):
        for l in ops.row_sources(k):
            if l in rows_t_set:
                continue
            mask_l = 1 << l
            v = 0
            for cpos, j in enumerate(cols_t):
                if A.mat.cols[j] & mask_l:
                    v |= 1 << ((n_ct - 1 - cpos) * n_rt + kpos)
            sources.append(Op("row", l, k))
            vecs.append(v)

    S = F2Matrix(n_rt * n_ct, vecs)
    reduced, log = col_reduce(S, c)
    _write_region(A.mat, rows_t, cols_t, reduced)

    if certificate is not None and reduced != c:
        combo = log.combination(S.n_cols, S.n_cols + 1)
        for idx, op in enumerate(sources):
            if (combo >> idx) & 1:
                certificate.append(op)

    mask_le_t = 0
    for cpos, j in enumerate(cols_t):
        if j <= t:
            base = (n_ct - 1 - cpos) * n_rt
            mask_le_t |= ((1 << n_rt) - 1) << base
    return reduced & mask_le_t == 0


def tot_diagonalize(
    A: GradedMatrix,
    ctx: Optional[GradeOrderContext] = None,
    *,
    perturb_ties: bool = False,
    iteration_hook: Optional[Callable[[int, GradedMatrix], None]] = None,
) -> Diagonalization:
    """Decompose A into the finest block structure admissible ops can reach.

    Rows and columns must already be in topo order.  Exactly equal grades
    are refused unless perturb_ties is set, in which case the earlier index
    is treated as strictly smaller and the result is flagged perturbed.
    The certificate lists every realized operation in application order;
    replaying it on the input reproduces the returned matrix.
    """
    if topo_order(A.row_grades, ctx) != list(range(A.n_rows)):
        raise InputError("rows are not in topo order; sort before diagonalizing")
    if topo_order(A.col_grades, ctx) != list(range(A.n_cols)):
        raise InputError("columns are not in topo order; sort before diagonalizing")

    row_ties = tied_pairs(A.row_grades)
    col_ties = tied_pairs(A.col_grades)
    perturbed = bool(row_ties or col_ties)
    if perturbed and not perturb_ties:
        kind = "row" if row_ties else "column"
        if row_ties and col_ties:
            kind = "row and column"
        raise TiedGradesError(kind, row_ties + col_ties)

    work = A.copy()
    ops = admissible_ops(work)
    blocks = [IndexBlock((i,), ()) for i in range(work.n_rows)]
    certificate: List[Op] = []

    for t in range(work.n_cols):
        merged_rows: List[int] = []
        merged_cols: List[int] = [t]
        survivors: List[IndexBlock] = []
        for B in sorted(blocks, key=_block_key):
            col_set = set(B.cols)
            T = IndexBlock(
                B.rows, tuple(j for j in range(work.n_cols) if j not in col_set)
            )
            if block_reduce(work, ops, T, t, certificate):
                survivors.append(B)
            else:
                merged_rows.extend(B.rows)
                merged_cols.extend(B.cols)
        blocks = survivors + [
            IndexBlock(tuple(sorted(merged_rows)), tuple(sorted(merged_cols)))
        ]
        if iteration_hook is not None:
            iteration_hook(t, work)

    return Diagonalization(
        matrix=work,
        blocks=sorted(blocks, key=_block_key),
        certificate=certificate,
        perturbed=perturbed,
    )


def replay_certificate(A: GradedMatrix, certificate: Sequence[Op]) -> GradedMatrix:
    """Apply a certificate to a fresh copy of A, grade checks included."""
    out = A.copy()
    for op in certificate:
        if op.kind == "col":
            out.add_col(op.source, op.target)
        elif op.kind == "row":
            out.add_row(op.source, op.target)
        else:
            raise InputError(f"unknown op kind {op.kind!r}")
    return out
