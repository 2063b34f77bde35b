"""Invariants read off a decomposed presentation.

Everything here is rank counting.  The dimension function of a cokernel
at a grade u is (generators born by u) minus (rank of the relations born
by u); graded Betti numbers in degrees 0 and 1 are the row and column
grades of a minimized presentation, and with two parameters the kernel of
that presentation is free, so its generators are the whole of degree 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .diagonalize import IndexBlock
from .errors import InputError
from .graded import GradedMatrix
from .grades import Grade, leq
from .presentation import BASIS_2PARAM, Presentation, kernel_gens


@dataclass(frozen=True)
class GradeBox:
    """An axis-aligned box of grades, inclusive on both ends."""

    lo: Grade
    hi: Grade

    def __post_init__(self) -> None:
        if not leq(self.lo, self.hi):
            raise InputError(f"empty box: {self.lo} is not <= {self.hi}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    def grades(self):
        for point in product(*(range(l, h + 1) for l, h in zip(self.lo, self.hi))):
            yield Grade(point)

    def index_of(self, u: Grade) -> Tuple[int, ...]:
        return tuple(x - l for x, l in zip(u, self.lo))


def default_box(P: Presentation, d: Optional[int] = None) -> GradeBox:
    """Componentwise min of all grades up to max plus a margin of one."""
    grades = list(P.matrix.row_grades) + list(P.matrix.col_grades)
    if not grades:
        dd = d if d is not None else P.matrix.d
        return GradeBox(Grade((0,) * dd), Grade((1,) * dd))
    dd = grades[0].d
    lo = Grade(tuple(min(g[k] for g in grades) for k in range(dd)))
    hi = Grade(tuple(max(g[k] for g in grades) + 1 for k in range(dd)))
    return GradeBox(lo, hi)


def _check_covers(P: Presentation, box: GradeBox) -> None:
    for g in list(P.matrix.row_grades) + list(P.matrix.col_grades):
        if not (leq(box.lo, g) and leq(g, box.hi)):
            raise InputError(f"box {box.lo}..{box.hi} does not cover grade {g}")


def dimension_function(P: Presentation, box: GradeBox) -> np.ndarray:
    """Pointwise dimension of coker(P) over the box (dense array)."""
    _check_covers(P, box)
    M = P.matrix
    out = np.zeros(box.shape, dtype=np.int64)
    all_rows = list(range(M.n_rows))
    for u in box.grades():
        n_gen = sum(1 for g in M.row_grades if leq(g, u))
        cols = [j for j, g in enumerate(M.col_grades) if leq(g, u)]
        rank = M.mat.submatrix(all_rows, cols).rank()
        out[box.index_of(u)] = n_gen - rank
    return out


@dataclass
class BettiTable:
    """Multiset of (degree, grade) with the degree cap that was computed."""

    entries: Dict[Tuple[int, Grade], int] = field(default_factory=dict)
    max_degree_computed: int = 1

    def add(self, degree: int, grade: Grade, count: int = 1) -> None:
        key = (degree, grade)
        self.entries[key] = self.entries.get(key, 0) + count

    def degree(self, j: int) -> List[Grade]:
        out: List[Grade] = []
        for (deg, g), cnt in self.entries.items():
            if deg == j:
                out.extend([g] * cnt)
        return sorted(out, key=lambda g: g.coords)

    def merged_with(self, other: "BettiTable") -> "BettiTable":
        out = BettiTable(
            dict(self.entries),
            max_degree_computed=min(self.max_degree_computed, other.max_degree_computed),
        )
        for (deg, g), cnt in other.entries.items():
            out.add(deg, g, cnt)
        return out


def restrict_presentation(P: Presentation, block: IndexBlock) -> Presentation:
    M = P.matrix
    sub = GradedMatrix(
        M.mat.submatrix(block.rows, block.cols),
        [M.row_grades[i] for i in block.rows],
        [M.col_grades[j] for j in block.cols],
        [M.row_labels[i] for i in block.rows],
        [M.col_labels[j] for j in block.cols],
    )
    return Presentation(sub, case_tag=P.case_tag, minimized=P.minimized)


def betti01(P: Presentation) -> BettiTable:
    """Degrees 0 and 1 from a minimized presentation's own grades."""
    if not P.minimized:
        raise InputError("Betti numbers need a minimized presentation")
    table = BettiTable(max_degree_computed=1)
    for g in P.matrix.row_grades:
        table.add(0, g)
    for g in P.matrix.col_grades:
        table.add(1, g)
    return table


def betti_higher_2param(P: Presentation) -> List[Grade]:
    """Degree 2 for two parameters: grades of a basis of ker(P)."""
    if P.d != 2:
        raise InputError(f"degree-2 Betti numbers computed only for d == 2, have d == {P.d}")
    if not P.minimized:
        raise InputError("Betti numbers need a minimized presentation")
    return [k.grade for k in kernel_gens(P.matrix, BASIS_2PARAM)]


def persistent_betti(
    P: Presentation, blocks: Sequence[IndexBlock]
) -> List[Tuple[IndexBlock, BettiTable]]:
    """One Betti table per generator-carrying block of a decomposition.

    Blocks without rows present the zero module and are skipped; every
    kept block has a nonempty degree 0.  With two parameters degree 2 is
    included and the tables are complete.
    """
    out = []
    for block in blocks:
        if not block.rows:
            continue
        sub = restrict_presentation(P, block)
        table = betti01(sub)
        if P.d == 2:
            for g in betti_higher_2param(sub):
                table.add(2, g)
            table.max_degree_computed = 2
        out.append((block, table))
    return out


def betti_euler_function(table: BettiTable, box: GradeBox) -> np.ndarray:
    """Alternating cumulative sum of a Betti table over a box.

    Equals the dimension function whenever the table covers the full
    resolution, which is the case for d == 2 tables from this module.
    """
    out = np.zeros(box.shape, dtype=np.int64)
    for u in box.grades():
        total = 0
        for (deg, g), cnt in table.entries.items():
            if leq(g, u):
                total += cnt if deg % 2 == 0 else -cnt
        out[box.index_of(u)] = total
    return out


@dataclass
class Blockcode:
    """Dimension function of one indecomposable over a shared box."""

    block: IndexBlock
    origin: Grade
    values: np.ndarray

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.values.shape)


def blockcodes(
    P: Presentation, blocks: Sequence[IndexBlock], box: GradeBox
) -> List[Blockcode]:
    out = []
    for block in blocks:
        if not block.rows:
            continue
        sub = restrict_presentation(P, block)
        values = dimension_function(sub, box)
        out.append(Blockcode(block=block, origin=box.lo, values=values))
    return out
