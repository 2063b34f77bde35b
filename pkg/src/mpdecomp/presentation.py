"""Graded presentations of homology modules and their construction.

A presentation is a graded matrix read as: rows generate, columns relate.
For degree 0 the boundary matrix of edges is already one.  For higher
degrees the rows must first be changed to a generating set of the cycle
submodule; with two parameters that set is a basis and one rewrite
suffices, with more parameters the generating set need not be free and
the syzygies among the generators join the boundary columns as extra
relations.

Cycle generators are found by a sweep over the grid spanned by the column
grades: at each grid point the active columns (grade below the point) are
reduced left to right, and a column that dies yields a generator at the
earliest points where that happens.  With two parameters each column dies
at a unique minimal grade; in general it can die along an antichain and
every minimal grade is kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InternalCheckError
from .f2 import F2Matrix, express_in_span
from .graded import GradedMatrix
from .grades import Grade, leq, topo_order

H0 = "H0"
TWO_PARAM = "TWO_PARAM"
D_PARAM = "D_PARAM"
RAW = "RAW"
_CASES = (H0, TWO_PARAM, D_PARAM, RAW)

BASIS_2PARAM = "BASIS_2PARAM"
GENSET_DPARAM = "GENSET_DPARAM"


@dataclass(frozen=True)
class KernelElement:
    """A cycle: grade of birth plus coordinates over the ambient columns."""

    grade: Grade
    coords: int


@dataclass
class Presentation:
    matrix: GradedMatrix
    case_tag: str
    minimized: bool = False

    def __post_init__(self) -> None:
        if self.case_tag not in _CASES:
            raise InputError(f"unknown case tag {self.case_tag!r}")

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols


def kernel_gens(M: GradedMatrix, mode: str) -> List[KernelElement]:
    """Generators of ker(M), coordinates over the columns of M.

    Parameters
    ----------
    M : GradedMatrix
        The ambient matrix; its column grades drive the sweep grid.
    mode : str
        BASIS_2PARAM returns a basis (d == 2 only, where the kernel is
        free and one minimal death grade per column exists).
        GENSET_DPARAM returns a generating set, registering a column once
        per minimal grade of its death antichain.
    """
    if mode not in (BASIS_2PARAM, GENSET_DPARAM):
        raise InputError(f"unknown kernel mode {mode!r}")
    if mode == BASIS_2PARAM and M.d != 2:
        raise InputError(f"basis mode needs 2 parameters, matrix has {M.d}")
    if M.n_cols == 0:
        return []

    order = topo_order(M.col_grades)
    axes = [sorted({g[k] for g in M.col_grades}) for k in range(M.d)]
    recorded: Dict[int, List[Grade]] = {}
    out: List[KernelElement] = []

    for point in product(*axes):
        z = Grade(point)
        active = [j for j in order if leq(M.col_grades[j], z)]
        pivots: Dict[int, Tuple[int, int]] = {}
        for j in active:
            cur = M.mat.cols[j]
            comb = 1 << j
            while cur:
                lw = cur.bit_length() - 1
                if lw in pivots:
                    pcol, pcomb = pivots[lw]
                    cur ^= pcol
                    comb ^= pcomb
                else:
                    pivots[lw] = (cur, comb)
                    break
            if cur:
                continue
            prior = recorded.setdefault(j, [])
            if mode == BASIS_2PARAM:
                if prior:
                    continue
            elif any(leq(zp, z) for zp in prior):
                continue
            prior.append(z)
            out.append(KernelElement(grade=z, coords=comb))
    return out


def rewrite_in_basis(
    cols: GradedMatrix,
    basis: Sequence[KernelElement],
    basis_labels: Optional[Sequence[str]] = None,
) -> GradedMatrix:
    """Express every column of `cols` over the given cycle generators.

    Each column is matched only against generators born at or below its
    grade, so the result is homogeneous by construction.  A column that
    cannot be expressed means the basis does not generate the image, which
    is an internal error, not bad input.
    """
    ambient = cols.n_rows
    for b in basis:
        if b.coords >> ambient:
            raise InputError("kernel element has coordinates outside the ambient")
    labels = (
        list(basis_labels)
        if basis_labels is not None
        else [f"z{i}" for i in range(len(basis))]
    )
    out_cols: List[int] = []
    for j in range(cols.n_cols):
        u = cols.col_grades[j]
        sub = [idx for idx, b in enumerate(basis) if leq(b.grade, u)]
        S = F2Matrix(ambient, [basis[idx].coords for idx in sub])
        coeffs = express_in_span(S, cols.mat.cols[j])
        if coeffs is None:
            raise InternalCheckError(
                f"column {j} (grade {u}) is not generated by the cycle basis"
            )
        v = 0
        for pos, idx in enumerate(sub):
            if (coeffs >> pos) & 1:
                v |= 1 << idx
        out_cols.append(v)
    return GradedMatrix(
        F2Matrix(len(basis), out_cols),
        [b.grade for b in basis],
        list(cols.col_grades),
        labels,
        list(cols.col_labels),
    )


def _hconcat(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    if a.n_rows != b.n_rows or a.row_grades != b.row_grades:
        raise InputError("cannot concatenate matrices with different row spaces")
    return GradedMatrix(
        F2Matrix(a.n_rows, list(a.mat.cols) + list(b.mat.cols)),
        list(a.row_grades),
        list(a.col_grades) + list(b.col_grades),
        list(a.row_labels),
        list(a.col_labels) + list(b.col_labels),
    )


def pres_h0(F) -> Presentation:
    """Degree 0: vertices generate, edges relate, nothing to rewrite."""
    from .filtration import boundary_matrix

    return Presentation(boundary_matrix(F, 1), case_tag=H0)


def pres_2param(F, p: int) -> Presentation:
    """Degree p >= 1 presentation for a 2-parameter filtration."""
    from .filtration import boundary_matrix

    if F.d != 2:
        raise InputError(f"two-parameter construction on a {F.d}-parameter input")
    if p < 1:
        raise InputError(f"degree must be >= 1, got {p}; degree 0 has its own path")
    bp = boundary_matrix(F, p)
    basis = kernel_gens(bp, BASIS_2PARAM)
    labels = [f"z{i}" for i in range(len(basis))]
    dp1 = boundary_matrix(F, p + 1)
    return Presentation(rewrite_in_basis(dp1, basis, labels), case_tag=TWO_PARAM)


def pres_dparam(F, p: int) -> Presentation:
    """Degree p >= 1 presentation for any parameter count.

    Cycle generators need not be independent here, so the syzygies among
    them are appended as relation columns next to the rewritten boundaries.
    """
    from .filtration import boundary_matrix

    if p < 1:
        raise InputError(f"degree must be >= 1, got {p}; degree 0 has its own path")
    bp = boundary_matrix(F, p)
    gens = kernel_gens(bp, GENSET_DPARAM)
    labels = [f"z{i}" for i in range(len(gens))]
    dp1 = boundary_matrix(F, p + 1)
    dbar = rewrite_in_basis(dp1, gens, labels)

    gen_matrix = GradedMatrix(
        F2Matrix(bp.n_cols, [g.coords for g in gens]),
        list(bp.col_grades),
        [g.grade for g in gens],
        list(bp.col_labels),
        labels,
    )
    syzygies = kernel_gens(gen_matrix, GENSET_DPARAM)
    syz = GradedMatrix(
        F2Matrix(len(gens), [s.coords for s in syzygies]),
        [g.grade for g in gens],
        [s.grade for s in syzygies],
        labels,
        [f"y{i}" for i in range(len(syzygies))],
    )
    return Presentation(_hconcat(dbar, syz), case_tag=D_PARAM)


def minimize(P: Presentation) -> Presentation:
    """Split off unit pivots until no entry has equal row and column grade.

    Each pivot (i, j) with grade(r_i) == grade(c_j) is cleared along its
    row and column by grade-legal additions and both lines are deleted;
    the cokernel never changes.  Relation columns left with no entries are
    dropped for the same reason.  Pivots are taken smallest (grade, row,
    column) first, so the result is deterministic.
    """
    M = P.matrix.copy()
    while True:
        best = None
        for i, j in M.mat.entries():
            if M.row_grades[i].coords == M.col_grades[j].coords:
                key = (M.row_grades[i].coords, i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, i, j = best
        for j2 in range(M.n_cols):
            if j2 != j and M.mat.entry(i, j2):
                M.add_col(j, j2)
        for i2 in range(M.n_rows):
            if i2 != i and M.mat.entry(i2, j):
                M.add_row(i, i2)
        keep_rows = [r for r in range(M.n_rows) if r != i]
        keep_cols = [c for c in range(M.n_cols) if c != j]
        M = GradedMatrix(
            M.mat.submatrix(keep_rows, keep_cols),
            [M.row_grades[r] for r in keep_rows],
            [M.col_grades[c] for c in keep_cols],
            [M.row_labels[r] for r in keep_rows],
            [M.col_labels[c] for c in keep_cols],
        )
    nonzero = [c for c in range(M.n_cols) if M.mat.cols[c]]
    if len(nonzero) != M.n_cols:
        M = GradedMatrix(
            M.mat.submatrix(range(M.n_rows), nonzero),
            list(M.row_grades),
            [M.col_grades[c] for c in nonzero],
            list(M.row_labels),
            [M.col_labels[c] for c in nonzero],
        )
    return Presentation(M, case_tag=P.case_tag, minimized=True)


# -- raw presentation files -------------------------------------------------


def parse_presentation(text: str) -> Presentation:
    """Parse the mppres format::

        mppres 1
        params <d>
        rows <n>
        r <g1> ... <gd>          (n times)
        cols <m>
        c <g1> ... <gd> : <row_index> ...   (m times)
    """
    lines = text.splitlines()
    pos = 0

    def next_tokens(expect: str):
        nonlocal pos
        while pos < len(lines):
            pos += 1
            line = lines[pos - 1].split("#", 1)[0].strip()
            if line:
                return pos, line.split()
        raise InputError(f"unexpected end of input, expected {expect}")

    line_no, tokens = next_tokens("'mppres 1' header")
    if tokens != ["mppres", "1"]:
        raise InputError(f"line {line_no}: expected header 'mppres 1'")
    line_no, tokens = next_tokens("'params <d>'")
    if len(tokens) != 2 or tokens[0] != "params" or not tokens[1].lstrip("-").isdigit():
        raise InputError(f"line {line_no}: expected 'params <d>'")
    d = int(tokens[1])
    if d < 1:
        raise InputError(f"line {line_no}: parameter count must be positive")

    def parse_grade(line_no: int, toks) -> Grade:
        if len(toks) != d:
            raise InputError(
                f"line {line_no}: expected {d} grade coordinates, got {len(toks)}"
            )
        try:
            return Grade(tuple(int(t) for t in toks))
        except ValueError:
            raise InputError(f"line {line_no}: non-integer grade in {toks}") from None

    line_no, tokens = next_tokens("'rows <n>'")
    if len(tokens) != 2 or tokens[0] != "rows" or not tokens[1].isdigit():
        raise InputError(f"line {line_no}: expected 'rows <n>'")
    n = int(tokens[1])
    row_grades = []
    for _ in range(n):
        line_no, tokens = next_tokens("a row grade line")
        if not tokens or tokens[0] != "r":
            raise InputError(f"line {line_no}: expected 'r <grade>'")
        row_grades.append(parse_grade(line_no, tokens[1:]))

    line_no, tokens = next_tokens("'cols <m>'")
    if len(tokens) != 2 or tokens[0] != "cols" or not tokens[1].isdigit():
        raise InputError(f"line {line_no}: expected 'cols <m>'")
    m = int(tokens[1])
    col_grades = []
    cols = []
    for _ in range(m):
        line_no, tokens = next_tokens("a column line")
        if not tokens or tokens[0] != "c" or ":" not in tokens:
            raise InputError(f"line {line_no}: expected 'c <grade> : <rows>'")
        sep = tokens.index(":")
        g = parse_grade(line_no, tokens[1:sep])
        col_grades.append(g)
        v = 0
        for tok in tokens[sep + 1 :]:
            try:
                i = int(tok)
            except ValueError:
                raise InputError(f"line {line_no}: non-integer row index {tok!r}") from None
            if not 0 <= i < n:
                raise InputError(f"line {line_no}: row index {i} outside 0..{n - 1}")
            if not leq(row_grades[i], g):
                raise InputError(
                    f"line {line_no}: entry at row {i} breaks homogeneity: "
                    f"row grade {row_grades[i]} is not <= column grade {g}"
                )
            v |= 1 << i
        cols.append(v)

    matrix = GradedMatrix(F2Matrix(n, cols), row_grades, col_grades)
    return Presentation(matrix, case_tag=RAW)


def format_presentation(P: Presentation) -> str:
    """Serialize a presentation in the mppres format; inverse of parsing."""
    M = P.matrix
    out = ["mppres 1", f"params {M.d}", f"rows {M.n_rows}"]
    for g in M.row_grades:
        out.append("r " + " ".join(str(x) for x in g))
    out.append(f"cols {M.n_cols}")
    for j in range(M.n_cols):
        g = M.col_grades[j]
        idx = [str(i) for i in range(M.n_rows) if M.mat.entry(i, j)]
        out.append("c " + " ".join(str(x) for x in g) + " : " + " ".join(idx))
    return "\n".join(out) + "\n"
