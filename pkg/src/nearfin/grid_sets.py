"""Exact symbolic subsets of the grid N x N.

A :class:`SetExpr` denotes ``(finite_in | union(tails)) - finite_out`` where each
tail is an infinite arithmetic progression that meets every row at most once:
either the tail of a column (:class:`ColumnTail`) or a ray that climbs one row
and ``col_step`` columns per element (:class:`Ray`).  Every tail lies on a
*line* ``col = slope * row + intercept`` (slope 0 for columns), and two distinct
lines meet in at most one point, which is what makes all queries here decidable.

Coordinates are 1-based.
"""

from __future__ import annotations

import math
import operator
from itertools import accumulate
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union


class Point(NamedTuple):
    row: int
    col: int


class MalformedSet(ValueError):
    """Raised for coordinates or steps outside the positive integers."""


class IncomparableTails(ValueError):
    """Raised when a difference that must be finite is actually infinite."""


Line = tuple  # (slope, intercept)


def _check_point(p) -> Point:
    r, c = p
    if not (isinstance(r, int) and isinstance(c, int)) or r < 1 or c < 1:
        raise MalformedSet(f"grid points need positive integer coordinates, got {p!r}")
    return Point(r, c)


@dataclass(frozen=True)
class ColumnTail:
    """``{(r, col) : r >= start_row}``."""

    col: int
    start_row: int

    def __post_init__(self):
        _check_point((self.start_row, self.col))

    @property
    def line(self) -> Line:
        return (0, self.col)

    def col_at(self, row: int) -> int:
        return self.col

    def contains(self, p) -> bool:
        return p[1] == self.col and p[0] >= self.start_row

    def starting_at(self, row: int) -> "ColumnTail":
        return ColumnTail(self.col, row)


@dataclass(frozen=True)
class Ray:
    """``{(start.row + i, start.col + i * col_step) : i >= 0}``."""

    start: Point
    col_step: int

    def __post_init__(self):
        object.__setattr__(self, "start", _check_point(self.start))
        if not isinstance(self.col_step, int) or self.col_step < 1:
            raise MalformedSet(f"ray col_step must be a positive integer, got {self.col_step!r}")

    @property
    def start_row(self) -> int:
        return self.start.row

    @property
    def line(self) -> Line:
        return (self.col_step, self.start.col - self.col_step * self.start.row)

    def col_at(self, row: int) -> int:
        return self.start.col + (row - self.start.row) * self.col_step

    def contains(self, p) -> bool:
        r, c = p
        return r >= self.start.row and c == self.col_at(r)

    def starting_at(self, row: int) -> "Ray":
        return Ray(Point(row, self.col_at(row)), self.col_step)


Tail = Union[ColumnTail, Ray]


def line_meet_row(a: Line, b: Line) -> int | None:
    """Row where two distinct lines cross at an integer grid point, if any."""
    (s1, k1), (s2, k2) = a, b
    if s1 == s2:
        return None
    r, rem = divmod(k2 - k1, s1 - s2)
    if rem or r < 1 or s1 * r + k1 < 1:
        return None
    return r


@dataclass(frozen=True)
class SetExpr:
    finite_in: frozenset = field(default_factory=frozenset)
    tails: tuple = ()
    finite_out: frozenset = field(default_factory=frozenset)

    @classmethod
    def empty(cls) -> "SetExpr":
        return cls()

    @classmethod
    def finite(cls, points: Iterable) -> "SetExpr":
        return cls(frozenset(_check_point(p) for p in points))

    @classmethod
    def column(cls, col: int, start_row: int = 1) -> "SetExpr":
        return cls(tails=(ColumnTail(col, start_row),))

    @classmethod
    def ray(cls, row: int, col: int, col_step: int = 1) -> "SetExpr":
        return cls(tails=(Ray(Point(row, col), col_step),))

    @property
    def is_finite(self) -> bool:
        return not self.tails

    def __contains__(self, p) -> bool:
        return contains(self, p)

    def __repr__(self):
        parts = []
        if self.finite_in:
            parts.append("in=" + str(_sorted_pts(self.finite_in)))
        parts.extend(_tail_text(t) for t in self.tails)
        if self.finite_out:
            parts.append("out=" + str(_sorted_pts(self.finite_out)))
        return "SetExpr(" + ", ".join(parts) + ")"


def _sorted_pts(pts) -> list:
    return [tuple(p) for p in sorted(pts)]


def _tail_text(t: Tail) -> str:
    if isinstance(t, ColumnTail):
        return f"coltail {t.col} {t.start_row}"
    return f"ray {t.start.row} {t.start.col} {t.col_step}"


def _tail_key(t: Tail):
    return t.line


def normalize(S: SetExpr) -> SetExpr:
    """Canonical form: pairwise disjoint tails on distinct lines, finite_in
    disjoint from the tails, finite_out inside the tails."""
    finite_in = {_check_point(p) for p in S.finite_in}
    finite_out = {_check_point(p) for p in S.finite_out}
    for t in S.tails:
        if not isinstance(t, (ColumnTail, Ray)):
            raise MalformedSet(f"unknown tail {t!r}")

    by_line: dict = {}
    for t in S.tails:
        cur = by_line.get(t.line)
        if cur is None or t.start_row < cur.start_row:
            by_line[t.line] = t
    tails = sorted(by_line.values(), key=_tail_key)

    # Cut the later tail of each crossing pair just past the crossing point;
    # its earlier points move into finite_in.
    changed = True
    while changed:
        changed = False
        for i in range(len(tails)):
            for j in range(i + 1, len(tails)):
                a, b = tails[i], tails[j]
                r = line_meet_row(a.line, b.line)
                if r is None or r < a.start_row or r < b.start_row:
                    continue
                finite_in.update(Point(q, b.col_at(q)) for q in range(b.start_row, r))
                tails[j] = b.starting_at(r + 1)
                changed = True

    finite_in -= finite_out
    finite_in = {p for p in finite_in if not any(t.contains(p) for t in tails)}
    finite_out = {p for p in finite_out if any(t.contains(p) for t in tails)}
    return SetExpr(frozenset(finite_in), tuple(tails), frozenset(finite_out))


def is_normalized(S: SetExpr) -> bool:
    try:
        return normalize(S) == S
    except MalformedSet:
        return False


def contains(S: SetExpr, p) -> bool:
    if p in S.finite_out:
        return False
    return p in S.finite_in or any(t.contains(p) for t in S.tails)


def structural_row(S: SetExpr) -> int:
    """Largest row index mentioned by the representation (0 for the empty set)."""
    rows = [p[0] for p in S.finite_in]
    rows += [p[0] for p in S.finite_out]
    rows += [t.start_row for t in S.tails]
    return max(rows, default=0)


def materialize_rows(S: SetExpr, n: int) -> frozenset:
    """``S`` intersected with rows ``1..n``."""
    pts = {p for p in S.finite_in if p[0] <= n}
    for t in S.tails:
        pts.update(Point(r, t.col_at(r)) for r in range(t.start_row, n + 1))
    return frozenset(p for p in pts if p not in S.finite_out)


def iter_points(S: SetExpr, start_row: int = 1) -> Iterator[Point]:
    """Points of ``S`` in row-major order (ties by column); infinite if ``S`` is."""
    last = structural_row(S)
    r = start_row
    while S.tails or r <= last:
        row = {p for p in S.finite_in if p[0] == r}
        row.update(Point(r, t.col_at(r)) for t in S.tails if t.start_row <= r)
        yield from sorted(p for p in row if p not in S.finite_out)
        r += 1


@dataclass(frozen=True)
class DeficiencyProfile:
    """``d(n) = n - |S ∩ rows 1..n|``, exact for every ``n``.

    ``values[n - 1]`` holds ``d(n)`` for ``n <= stabilization_row``; past that
    row ``d`` moves by ``eventual_slope`` per row.
    """

    stabilization_row: int
    values: tuple
    eventual_slope: int

    def at(self, n: int) -> int:
        if n < 1:
            raise ValueError("rows start at 1")
        N = self.stabilization_row
        if n <= N:
            return self.values[n - 1]
        return self.values[-1] + self.eventual_slope * (n - N)

    @property
    def eventual_value(self) -> int | float | None:
        """``d∞``: the limit when it is finite, ``inf`` for growth, ``None`` when
        ``d`` eventually decreases without bound."""
        if self.eventual_slope > 0:
            return math.inf
        if self.eventual_slope < 0:
            return None
        return self.values[-1]

    @property
    def prefix_min(self) -> int:
        return min(self.values)

    def suffix_min(self, r: int) -> int | float:
        """``min d(n)`` over ``n >= r``; ``-inf`` when the slope is negative."""
        if self.eventual_slope < 0:
            return -math.inf
        N = self.stabilization_row
        if r > N:
            return self.at(r)
        return min(self.values[r - 1:])


def deficiency_profile(S: SetExpr) -> DeficiencyProfile:
    N = structural_row(S) + 1
    point_delta = [0] * (N + 1)
    for p in S.finite_in:
        point_delta[p[0]] += 1
    for p in S.finite_out:
        point_delta[p[0]] -= 1
    starts = [0] * (N + 1)
    for t in S.tails:
        starts[t.start_row] += 1
    # count(n) = sum over rows <= n of (finite delta + number of tails started)
    per_row = map(operator.add, point_delta, accumulate(starts))
    counts = accumulate(per_row)
    next(counts)  # row 0
    values = list(map(operator.sub, range(1, N + 1), counts))
    return DeficiencyProfile(N, tuple(values), 1 - len(S.tails))


def dominant_column(S: SetExpr) -> int | None:
    """Column holding all but finitely many points of an infinite ``S``."""
    if len(S.tails) == 1 and isinstance(S.tails[0], ColumnTail):
        return S.tails[0].col
    return None


def _comparison_row(F: SetExpr, B: SetExpr) -> int:
    """A row past which ``F`` and ``B`` are both just their tails and no
    tail of one crosses a tail of the other."""
    bound = max(structural_row(F), structural_row(B))
    for a in F.tails:
        for b in B.tails:
            r = line_meet_row(a.line, b.line)
            if r is not None:
                bound = max(bound, r)
    return bound + 1


def diff(F: SetExpr, B: SetExpr) -> SetExpr:
    """Exact ``F - B``."""
    R = _comparison_row(F, B)
    b_lines = {t.line for t in B.tails}
    head = {p for p in materialize_rows(F, R - 1) if not contains(B, p)}
    tails = tuple(t.starting_at(max(t.start_row, R)) for t in F.tails if t.line not in b_lines)
    return normalize(SetExpr(frozenset(head), tails))


def diff_size(F: SetExpr, B: SetExpr) -> int | float:
    D = diff(F, B)
    return math.inf if D.tails else len(D.finite_in)


def diff_points(F: SetExpr, B: SetExpr) -> frozenset:
    """``F - B`` as an explicit point set; it must be finite."""
    D = diff(F, B)
    if D.tails:
        raise IncomparableTails(f"{F!r} minus {B!r} is infinite")
    return D.finite_in


def is_subset(B: SetExpr, F: SetExpr) -> bool:
    if not {t.line for t in B.tails} <= {t.line for t in F.tails}:
        return False
    R = _comparison_row(F, B)
    return all(contains(F, p) for p in materialize_rows(B, R))


def same_set(A: SetExpr, B: SetExpr) -> bool:
    return is_subset(A, B) and is_subset(B, A)


def insert(S: SetExpr, p) -> SetExpr:
    p = _check_point(p)
    if p in S.finite_out:
        return SetExpr(S.finite_in, S.tails, S.finite_out - {p})
    if contains(S, p):
        return S
    return SetExpr(S.finite_in | {p}, S.tails, S.finite_out)


def remove(S: SetExpr, p) -> SetExpr:
    p = _check_point(p)
    if p in S.finite_in:
        return SetExpr(S.finite_in - {p}, S.tails, S.finite_out)
    if contains(S, p):
        return SetExpr(S.finite_in, S.tails, S.finite_out | {p})
    return S


# -- serialization ---------------------------------------------------------


def to_record(S: SetExpr) -> dict:
    tails = []
    for t in S.tails:
        if isinstance(t, ColumnTail):
            tails.append({"type": "column", "col": t.col, "start_row": t.start_row})
        else:
            tails.append({"type": "ray", "start": [t.start.row, t.start.col], "col_step": t.col_step})
    return {
        "finite_in": [list(p) for p in _sorted_pts(S.finite_in)],
        "tails": tails,
        "finite_out": [list(p) for p in _sorted_pts(S.finite_out)],
    }


def from_record(rec: dict) -> SetExpr:
    try:
        tails = []
        for t in rec.get("tails", []):
            if t["type"] == "column":
                tails.append(ColumnTail(int(t["col"]), int(t["start_row"])))
            elif t["type"] == "ray":
                r, c = t["start"]
                tails.append(Ray(Point(int(r), int(c)), int(t["col_step"])))
            else:
                raise MalformedSet(f"unknown tail type {t['type']!r}")
        fin = [Point(int(r), int(c)) for r, c in rec.get("finite_in", [])]
        out = [Point(int(r), int(c)) for r, c in rec.get("finite_out", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedSet):
            raise
        raise MalformedSet(f"bad set record: {exc}") from exc
    return normalize(SetExpr(frozenset(fin), tuple(tails), frozenset(out)))


def parse_set(text: str) -> SetExpr:
    """Parse the short textual form used on the command line.

    Clauses are separated by ``;``::

        coltail COL START_ROW
        ray ROW COL STEP
        point ROW COL
        except ROW COL
        empty
    """
    fin, tails, out = set(), [], set()
    for clause in text.split(";"):
        words = clause.split()
        if not words:
            continue
        kind, args = words[0], words[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise MalformedSet(f"non-integer argument in {clause.strip()!r}") from None
        arity = {"coltail": 2, "ray": 3, "point": 2, "pt": 2, "except": 2, "empty": 0}
        if kind not in arity or len(nums) != arity[kind]:
            raise MalformedSet(f"cannot parse set clause {clause.strip()!r}")
        if kind == "coltail":
            tails.append(ColumnTail(nums[0], nums[1]))
        elif kind == "ray":
            tails.append(Ray(Point(nums[0], nums[1]), nums[2]))
        elif kind in ("point", "pt"):
            fin.add(_check_point(tuple(nums)))
        elif kind == "except":
            out.add(_check_point(tuple(nums)))
    return normalize(SetExpr(frozenset(fin), tuple(tails), frozenset(out)))


def format_set(S: SetExpr) -> str:
    parts = [f"point {r} {c}" for r, c in _sorted_pts(S.finite_in)]
    parts += [_tail_text(t) for t in S.tails]
    parts += [f"except {r} {c}" for r, c in _sorted_pts(S.finite_out)]
    return "; ".join(parts) if parts else "empty"
