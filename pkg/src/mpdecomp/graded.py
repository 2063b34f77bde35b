"""Graded binary matrices and the operations their grades admit.

A graded matrix couples an F2Matrix with one grade per row and column.
Homogeneity (every 1 sits where row grade <= column grade) is the data
invariant everything else relies on; construction rejects violations, and
the two addition operations only accept grade-compatible pairs, so the
invariant is preserved by use.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InputError
from .f2 import F2Matrix
from .grades import Grade, GradeOrderContext, leq, topo_order


@dataclass
class GradedMatrix:
    mat: F2Matrix
    row_grades: List[Grade]
    col_grades: List[Grade]
    row_labels: List[str] = field(default_factory=list)
    col_labels: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.row_grades) != self.mat.n_rows:
            raise InputError(
                f"{self.mat.n_rows} rows but {len(self.row_grades)} row grades"
            )
        if len(self.col_grades) != self.mat.n_cols:
            raise InputError(
                f"{self.mat.n_cols} columns but {len(self.col_grades)} column grades"
            )
        d = self.d
        for g in self.row_grades + self.col_grades:
            if g.d != d:
                raise InputError("mixed grade dimensions in one matrix")
        if not self.row_labels:
            self.row_labels = [f"r{i}" for i in range(self.mat.n_rows)]
        if not self.col_labels:
            self.col_labels = [f"c{j}" for j in range(self.mat.n_cols)]
        if len(self.row_labels) != self.mat.n_rows:
            raise InputError("row label count does not match rows")
        if len(self.col_labels) != self.mat.n_cols:
            raise InputError("column label count does not match columns")
        self.validate_homogeneity()

    @property
    def d(self) -> int:
        if self.row_grades:
            return self.row_grades[0].d
        if self.col_grades:
            return self.col_grades[0].d
        return 1

    @property
    def n_rows(self) -> int:
        return self.mat.n_rows

    @property
    def n_cols(self) -> int:
        return self.mat.n_cols

    def validate_homogeneity(self) -> None:
        """Every nonzero entry must satisfy row grade <= column grade."""
        for i, j in self.mat.entries():
            if not leq(self.row_grades[i], self.col_grades[j]):
                raise InputError(
                    f"entry ({i},{j}) is 1 but row grade "
                    f"{self.row_grades[i]} is not <= column grade "
                    f"{self.col_grades[j]}"
                )

    # -- grade-checked operations -------------------------------------------

    def add_col(self, src: int, dst: int) -> None:
        """Add column src into dst; needs grade(src) <= grade(dst)."""
        if src == dst or not leq(self.col_grades[src], self.col_grades[dst]):
            raise InputError(
                f"column addition {src}->{dst} not allowed: "
                f"{self.col_grades[src]} vs {self.col_grades[dst]}"
            )
        self.mat.add_col(src, dst)

    def add_row(self, src: int, dst: int) -> None:
        """Add row src into dst; needs grade(dst) <= grade(src)."""
        if src == dst or not leq(self.row_grades[dst], self.row_grades[src]):
            raise InputError(
                f"row addition {src}->{dst} not allowed: "
                f"{self.row_grades[src]} vs {self.row_grades[dst]}"
            )
        self.mat.add_row(src, dst)

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> F2Matrix:
        return self.mat.submatrix(rows, cols)

    def copy(self) -> "GradedMatrix":
        return GradedMatrix(
            self.mat.copy(),
            list(self.row_grades),
            list(self.col_grades),
            list(self.row_labels),
            list(self.col_labels),
        )


@dataclass(frozen=True)
class AdmissibleOps:
    """The strictly-ordered operation menu of one graded matrix.

    colop holds (i, j): column i may be added into column j, which needs
    grade(c_i) <= grade(c_j).  rowop holds (l, k): row l may be added into
    row k, which needs grade(r_k) <= grade(r_l); the source row carries the
    larger grade.  Equal grades are ordered by index (the virtual
    perturbation), so both relations are irreflexive, transitively closed
    and acyclic.
    """

    colop: frozenset
    rowop: frozenset

    def col_sources(self, j: int) -> List[int]:
        return sorted(i for (i, jj) in self.colop if jj == j)

    def row_sources(self, k: int) -> List[int]:
        return sorted(l for (l, kk) in self.rowop if kk == k)


def _strictly_below(a: Grade, ia: int, b: Grade, ib: int) -> bool:
    # product order, equal grades broken by index: earlier acts as smaller
    if a.coords == b.coords:
        return ia < ib
    return leq(a, b)


def admissible_ops(M: GradedMatrix) -> AdmissibleOps:
    colop = frozenset(
        (i, j)
        for i in range(M.n_cols)
        for j in range(M.n_cols)
        if i != j and _strictly_below(M.col_grades[i], i, M.col_grades[j], j)
    )
    rowop = frozenset(
        (l, k)
        for l in range(M.n_rows)
        for k in range(M.n_rows)
        if l != k and _strictly_below(M.row_grades[k], k, M.row_grades[l], l)
    )
    return AdmissibleOps(colop=colop, rowop=rowop)


def sort_by_grade(
    M: GradedMatrix, ctx: Optional[GradeOrderContext] = None
) -> Tuple[GradedMatrix, List[int], List[int]]:
    """Permute rows and columns into topo order.

    Returns the sorted matrix plus the two permutations, each mapping new
    position -> original index.
    """
    row_perm = topo_order(M.row_grades, ctx)
    col_perm = topo_order(M.col_grades, ctx)
    mat = M.mat.submatrix(row_perm, col_perm)
    return (
        GradedMatrix(
            mat,
            [M.row_grades[i] for i in row_perm],
            [M.col_grades[j] for j in col_perm],
            [M.row_labels[i] for i in row_perm],
            [M.col_labels[j] for j in col_perm],
        ),
        row_perm,
        col_perm,
    )
