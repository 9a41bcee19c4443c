"""Ranked posets, NRT and bottleneck weights.

Conventions used throughout the package:

* A matrix word has ``s`` rows and ``r`` columns.  Row 1 holds the values of
  the 0-th hyperderivative and sits on the *top* rank of the poset; row ``i``
  sits on level ``s - i + 1`` counted from the bottom (levels are 1-indexed,
  ranks are 0-indexed, so level ``L`` has rank ``L - 1``).
* Vertex labels follow the chain-union scheme: level ``L`` carries labels
  ``(L-1)*r + 1 .. L*r`` left to right.  In ``U(s, r, b_row)`` the level
  ``s - b_row + 1`` collapses to the single label ``(s - b_row)*r + 1``.
* ``b_row`` in ``1..s`` is the index of the constant matrix row; the matching
  hyperderivative order is ``b_row - 1``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec


class PosetError(ValueError):
    pass


class NotRanked(PosetError):
    pass


class LengthMismatch(ValueError):
    pass


class NotConstantRow(ValueError):
    pass


class Poset:
    """A finite poset on vertices ``0..n-1`` with display labels.

    ``leq[i, j]`` is True when vertex i <= vertex j.
    """

    def __init__(self, leq: np.ndarray, labels: Sequence[int] | None = None, name: str = ""):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise PosetError("relation must be square")
        if not leq.diagonal().all():
            raise PosetError("relation is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("relation is not antisymmetric")
        li = leq.astype(np.int64)
        if ((li @ li > 0) & ~leq).any():
            raise PosetError("relation is not transitive")
        self.n = n
        self.leq = leq
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(self.labels) != n:
            raise PosetError("one label per vertex required")
        self.name = name
        lt = leq & ~np.eye(n, dtype=bool)
        lti = lt.astype(np.int64)
        self.covers = lt & ~(lti @ lti > 0)  # covers[y, x]: x covers y
        self.rank = self._rank_function()

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None, name: str = "") -> "Poset":
        """Transitive closure of covering pairs ``(lower, upper)`` given as vertex indices."""
        leq = np.eye(n, dtype=bool)
        for y, x in covers:
            leq[y, x] = True
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("covering relation contains a cycle")
        return cls(leq, labels, name)

    def _rank_function(self) -> tuple[int, ...]:
        n = self.n
        rank = [-1] * n
        minimal = [x for x in range(n) if not self.covers[:, x].any()]
        queue = deque(minimal)
        for x in minimal:
            rank[x] = 0
        while queue:
            y = queue.popleft()
            for x in np.flatnonzero(self.covers[y]):
                if rank[x] == -1:
                    rank[x] = rank[y] + 1
                    queue.append(x)
                elif rank[x] != rank[y] + 1:
                    raise NotRanked(f"poset {self.name or ''} has no rank function")
        for y, x in zip(*np.nonzero(self.covers)):
            if rank[x] != rank[y] + 1:
                raise NotRanked(f"poset {self.name or ''} has no rank function")
        return tuple(rank)

    def index_of(self, label: int) -> int:
        return self.labels.index(label)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs as (lower label, upper label), sorted."""
        return sorted((self.labels[y], self.labels[x]) for y, x in zip(*np.nonzero(self.covers)))

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if not self.covers[x].any()]

    def lower_ideal(self, vertices: Iterable[int]) -> set[int]:
        """Down-closure by breadth-first search along covering edges."""
        seen = set(vertices)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in np.flatnonzero(self.covers[:, x]):
                y = int(y)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name or "P"}" {{', "  rankdir=BT;"]
        for x in range(self.n):
            lines.append(f'  v{self.labels[x]} [label="{self.labels[x]}"];')
        for lo, hi in self.hasse_edges():
            lines.append(f"  v{lo} -> v{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "name": self.name,
            "vertices": list(self.labels),
            "rank": {str(self.labels[x]): self.rank[x] for x in range(self.n)},
            "edges": [list(e) for e in self.hasse_edges()],
        }, indent=2)

    def __repr__(self):
        return f"Poset({self.name or self.n})"


@dataclass(frozen=True)
class BottleneckShape:
    s: int
    r: int
    b_row: int

    def __post_init__(self):
        if self.s < 1:
            raise PosetError(f"s must be >= 1, got {self.s}")
        if self.r < 2:
            raise PosetError(f"r must be >= 2, got {self.r}")
        if not 1 <= self.b_row <= self.s:
            raise PosetError(f"b_row must lie in 1..{self.s}, got {self.b_row}")

    @property
    def deriv_order(self) -> int:
        return self.b_row - 1

    @property
    def collapsed_level(self) -> int:
        return self.s - self.b_row + 1

    @property
    def length(self) -> int:
        return self.r * self.s - self.r + 1


def chain_union(s: int, r: int) -> Poset:
    """r disjoint chains of s vertices, labelled level by level from the bottom."""
    covers = [(v - r, v) for v in range(r, r * s)]
    return Poset.from_covers(r * s, covers, name=f"C({s},{r})")


def _bottleneck_layout(shape: BottleneckShape) -> list[tuple[int, int | None, int]]:
    """(level, column or None for the collapsed vertex, label) in label order."""
    s, r = shape.s, shape.r
    out = []
    for level in range(1, s + 1):
        if level == shape.collapsed_level:
            out.append((level, None, (level - 1) * r + 1))
        else:
            out.extend((level, j, (level - 1) * r + j + 1) for j in range(r))
    return out


def bottleneck(shape: BottleneckShape) -> Poset:
    layout = _bottleneck_layout(shape)
    where = {(lv, col): i for i, (lv, col, _) in enumerate(layout)}
    covers = []
    for i, (lv, col, _) in enumerate(layout):
        if lv == 1:
            continue
        if col is None:
            covers.extend((where[(lv - 1, j)], i) for j in range(shape.r))
        elif lv - 1 == shape.collapsed_level:
            covers.append((where[(lv - 1, None)], i))
        else:
            covers.append((where[(lv - 1, col)], i))
    return Poset.from_covers(len(layout), covers, [lab for _, _, lab in layout],
                             name=f"U({shape.s},{shape.r},{shape.b_row})")


# -- matrix words ---------------------------------------------------------------


@dataclass(frozen=True)
class MatrixWord:
    """An s x r matrix of element codes, optionally tagged with a bottleneck shape."""

    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]
    shape: BottleneckShape | None = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if len({len(row) for row in rows}) > 1:
            raise LengthMismatch("ragged matrix")
        if self.shape is not None:
            if (self.s, self.r) != (self.shape.s, self.shape.r):
                raise LengthMismatch(f"matrix is {self.s}x{self.r}, shape expects {self.shape.s}x{self.shape.r}")
            row = rows[self.shape.b_row - 1]
            if len(set(row)) > 1:
                raise NotConstantRow(f"row {self.shape.b_row} is not constant: {list(row)}")

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def r(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.s, self.r)

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def _as_array(A) -> np.ndarray:
    if isinstance(A, MatrixWord):
        return A.array()
    return np.asarray(A, dtype=np.int64)


def nrt_weights(batch: np.ndarray) -> np.ndarray:
    """NRT weight of each matrix in an (N, s, r) batch."""
    s = batch.shape[1]
    nz = batch != 0
    first = nz.argmax(axis=1)
    return np.where(nz.any(axis=1), s - first, 0).sum(axis=1)


def bottleneck_weights(batch: np.ndarray, b_row: int) -> np.ndarray:
    """Bottleneck weight of each matrix in an (N, s, r) batch, by the three-case rule.

    Rows 1..b_row-1 zero and row b_row zero: the NRT weight.  Rows above
    b_row zero, row b_row nonzero: (s - b_row) r + 1.  Otherwise the NRT
    weight of the top b_row - 1 rows plus (s - b_row) r + 1.
    """
    _, s, r = batch.shape
    base = (s - b_row) * r + 1
    top_zero = ~(batch[:, :b_row - 1, :] != 0).any(axis=(1, 2))
    row_zero = ~(batch[:, b_row - 1, :] != 0).any(axis=1)
    out = np.empty(batch.shape[0], dtype=np.int64)
    case1 = top_zero & row_zero
    case2 = top_zero & ~row_zero
    case3 = ~top_zero
    if case1.any():
        out[case1] = nrt_weights(batch[case1])
    out[case2] = base
    if case3.any():
        out[case3] = nrt_weights(batch[case3, :b_row - 1, :]) + base
    return out


def nrt_weight(A) -> int:
    """Sum over nonzero columns of s - i + 1, i the first nonzero row from the top."""
    arr = _as_array(A)
    if arr.size == 0:
        return 0
    return int(nrt_weights(arr[None])[0])


def _check_constant(arr: np.ndarray, b_row: int):
    row = arr[b_row - 1]
    if (row != row[0]).any():
        raise NotConstantRow(f"row {b_row} is not constant: {row.tolist()}")


def bottleneck_weight(A, shape: BottleneckShape | None = None) -> int:
    if shape is None:
        shape = getattr(A, "shape", None)
        if not isinstance(shape, BottleneckShape):
            raise ValueError("a BottleneckShape is required")
    arr = _as_array(A)
    if arr.shape != (shape.s, shape.r):
        raise LengthMismatch(f"matrix {arr.shape} does not match shape ({shape.s}, {shape.r})")
    _check_constant(arr, shape.b_row)
    return int(bottleneck_weights(arr[None], shape.b_row)[0])


def flatten(A, shape: BottleneckShape | None = None) -> list[int]:
    """Vertex-indexed vector of a Mat^(b) matrix, in the label order of ``bottleneck(shape)``."""
    if shape is None:
        shape = getattr(A, "shape", None)
        if not isinstance(shape, BottleneckShape):
            raise ValueError("a BottleneckShape is required")
    arr = _as_array(A)
    if arr.shape != (shape.s, shape.r):
        raise LengthMismatch(f"matrix {arr.shape} does not match shape ({shape.s}, {shape.r})")
    _check_constant(arr, shape.b_row)
    out = []
    for level, col, _ in _bottleneck_layout(shape):
        row = shape.s - level  # 0-indexed matrix row
        out.append(int(arr[row, 0 if col is None else col]))
    return out


def unflatten(vector: Sequence[int], shape: BottleneckShape) -> np.ndarray:
    """Inverse of :func:`flatten`."""
    layout = _bottleneck_layout(shape)
    if len(vector) != len(layout):
        raise LengthMismatch(f"vector of length {len(vector)}, expected {len(layout)}")
    arr = np.zeros((shape.s, shape.r), dtype=np.int64)
    for (level, col, _), x in zip(layout, vector):
        row = shape.s - level
        if col is None:
            arr[row, :] = x
        else:
            arr[row, col] = x
    return arr


def flatten_chain(A) -> list[int]:
    """Row-to-rank flattening onto ``chain_union(s, r)``: row i lands on level s - i + 1."""
    arr = _as_array(A)
    return [int(x) for x in arr[::-1].reshape(-1)]


def p_weight(P: Poset, v: Sequence[int]) -> int:
    """Size of the lower order ideal generated by the support of v."""
    if len(v) != P.n:
        raise LengthMismatch(f"vector of length {len(v)} for a poset on {P.n} vertices")
    support = [i for i, x in enumerate(v) if int(x) != 0]
    return len(P.lower_ideal(support))


def p_distance(P: Poset, u: Sequence[int], w: Sequence[int], field: FieldSpec) -> int:
    return p_weight(P, [field.sub(int(a), int(b)) for a, b in zip(u, w)])
