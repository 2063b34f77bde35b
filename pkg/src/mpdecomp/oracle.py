"""Brute-force reference answers for small instances.

Everything in here is deliberately independent of the main algorithms: the
finest block structure is found by enumerating admissible transformation
pairs rather than by reduction, and ranks come from a numpy row echelon
rather than the packed-column elimination.  Slow and simple on purpose.
"""
from __future__ import annotations

from typing import Dict, FrozenSet, List, Set, Tuple

import numpy as np

from .diagonalize import IndexBlock
from .errors import InputError, InternalCheckError
from .f2 import F2Matrix
from .graded import GradedMatrix, admissible_ops
from .grades import leq
from .presentation import Presentation

Partition = FrozenSet[Tuple[Tuple[int, ...], Tuple[int, ...]]]


def block_partition(M: F2Matrix) -> List[IndexBlock]:
    """Connected components of the row/column incidence of nonzero entries.

    Untouched rows and columns come out as singleton blocks with the other
    side empty.
    """
    n, m = M.n_rows, M.n_cols
    parent = list(range(n + m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    touched_rows: Set[int] = set()
    touched_cols: Set[int] = set()
    for i, j in M.entries():
        union(i, n + j)
        touched_rows.add(i)
        touched_cols.add(j)

    groups: Dict[int, Tuple[List[int], List[int]]] = {}
    for i in sorted(touched_rows):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for j in sorted(touched_cols):
        groups.setdefault(find(n + j), ([], []))[1].append(j)

    blocks = [IndexBlock(tuple(rows), tuple(cols)) for rows, cols in groups.values()]
    blocks.extend(IndexBlock((i,), ()) for i in range(n) if i not in touched_rows)
    blocks.extend(IndexBlock((), (j,)) for j in range(m) if j not in touched_cols)
    return sorted(blocks, key=lambda b: (0, b.rows[0]) if b.rows else (1, b.cols[0]))


def _as_partition(blocks: List[IndexBlock]) -> Partition:
    return frozenset((b.rows, b.cols) for b in blocks)


def brute_force_finest(M: GradedMatrix, budget: int = 20) -> List[IndexBlock]:
    """Finest block partition over all admissible transformation pairs.

    Enumerates every matrix I + sum of admissible elementary deltas on
    each side (closure under products makes that exhaustive), transforms M,
    and takes the partition with the most blocks.  All maximizers must
    induce the same partition, otherwise something is deeply wrong and an
    internal error is raised.
    """
    ops = admissible_ops(M)
    rowop = sorted(ops.rowop)
    colop = sorted(ops.colop)
    n_bits = len(rowop) + len(colop)
    if n_bits > budget:
        raise InputError(
            f"{n_bits} admissible operations exceed the oracle budget of {budget}"
        )

    n, m = M.n_rows, M.n_cols
    a = np.array(M.mat.to_dense(), dtype=np.uint8).reshape(n, m)

    p_variants = []
    for mask in range(1 << len(rowop)):
        p = np.eye(n, dtype=np.uint8)
        for bit, (l, k) in enumerate(rowop):
            if (mask >> bit) & 1:
                p[k, l] ^= 1
        p_variants.append(p)
    q_variants = []
    for mask in range(1 << len(colop)):
        q = np.eye(m, dtype=np.uint8)
        for bit, (i, j) in enumerate(colop):
            if (mask >> bit) & 1:
                q[i, j] ^= 1
        q_variants.append(q)

    best_count = -1
    best_partitions: Set[Partition] = set()
    seen: Set[bytes] = set()
    for p in p_variants:
        pa = (p @ a) % 2
        for q in q_variants:
            paq = (pa @ q) % 2
            key = paq.tobytes()
            if key in seen:
                continue
            seen.add(key)
            cols = []
            for j in range(m):
                v = 0
                for i in range(n):
                    if paq[i, j]:
                        v |= 1 << i
                cols.append(v)
            blocks = block_partition(F2Matrix(n, cols))
            if len(blocks) > best_count:
                best_count = len(blocks)
                best_partitions = {_as_partition(blocks)}
            elif len(blocks) == best_count:
                best_partitions.add(_as_partition(blocks))
    # partial diagonalizations may tie each other, but the true maximum
    # must be achieved by a single partition when grades are distinct
    if len(best_partitions) != 1:
        raise InternalCheckError(
            "two maximizers disagree on the finest partition; "
            "tied grades were probably not broken"
        )
    return sorted(
        (IndexBlock(rows, cols) for rows, cols in best_partitions.pop()),
        key=lambda b: (0, b.rows[0]) if b.rows else (1, b.cols[0]),
    )


def _row_echelon_rank(a: np.ndarray) -> int:
    """Rank over F2 by forward elimination on rows."""
    a = a.copy() % 2
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if a[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(n_rows):
            if r != rank and a[r, col]:
                a[r, :] ^= a[rank, :]
        rank += 1
        if rank == n_rows:
            break
    return rank


def dim_oracle(P: Presentation, u) -> int:
    """Dimension of coker(P) at u, via the independent echelon rank."""
    M = P.matrix
    n_gen = sum(1 for g in M.row_grades if leq(g, u))
    cols = [j for j, g in enumerate(M.col_grades) if leq(g, u)]
    if not cols or M.n_rows == 0:
        return n_gen
    dense = np.array(M.mat.to_dense(), dtype=np.uint8)[:, cols]
    return n_gen - _row_echelon_rank(dense)
