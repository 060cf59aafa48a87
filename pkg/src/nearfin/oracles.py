"""Independence oracles for the grid matroids M1 and M and the toy matroid on N.

M1 lives on N x N: a set is independent when every prefix of ``n`` rows holds
at most ``n`` of its points.  M keeps the finite M1-sets and the infinite ones
without a dominant column; an infinite set whose points are all but finitely
many in column ``l`` is independent in M only when it is an M1-independent set
with at least ``l`` points deleted.

Everything about a grid set is read off its :class:`DeficiencyProfile`:
independence is ``d(n) >= 0`` everywhere, and the number of points that can
still be added is the eventual value ``d∞``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from . import grid_sets as gs
from .grid_sets import Point, SetExpr


class DependentInput(ValueError):
    pass


class NotABase(ValueError):
    pass


class NotInGround(ValueError):
    pass


class Undecidable(ValueError):
    pass


# -- M1 -------------------------------------------------------------------


def _finite_rows_ok(S: SetExpr) -> bool:
    # k-th smallest row must be >= k
    return all(r >= i for i, r in enumerate(sorted(p[0] for p in S.finite_in), 1))


def _m1_profile(S: SetExpr):
    """Profile of an infinite M1-independent set, else ``None``."""
    prof = gs.deficiency_profile(S)
    if prof.eventual_slope < 0 or prof.prefix_min < 0:
        return None
    return prof


def m1_is_independent(S: SetExpr) -> bool:
    if not S.tails:
        return _finite_rows_ok(S)
    return _m1_profile(S) is not None


def m1_capacity(S: SetExpr) -> int | float:
    """How many points can still be added to ``S`` inside M1 (``d∞``)."""
    if not S.tails:
        if not _finite_rows_ok(S):
            raise DependentInput(f"{S!r} is dependent in M1")
        return math.inf
    prof = _m1_profile(S)
    if prof is None:
        raise DependentInput(f"{S!r} is dependent in M1")
    return prof.eventual_value


def m1_is_base(S: SetExpr) -> bool:
    return m1_is_independent(S) and m1_capacity(S) == 0


# -- M --------------------------------------------------------------------


def m_is_independent(S: SetExpr) -> bool:
    if not S.tails:
        return _finite_rows_ok(S)
    prof = _m1_profile(S)
    if prof is None:
        return False
    l = gs.dominant_column(S)
    return l is None or prof.eventual_value >= l


def m_capacity(S: SetExpr) -> int | float:
    """How many points can still be added to ``S`` inside M."""
    if not m_is_independent(S):
        raise DependentInput(f"{S!r} is dependent in M")
    cap = m1_capacity(S)
    l = gs.dominant_column(S)
    # added points keep the dominant column, so each one eats into the slack above l
    return cap if l is None else cap - l


def m_is_base(S: SetExpr) -> bool:
    if not S.tails:
        return False
    prof = _m1_profile(S)
    if prof is None:
        return False
    l = gs.dominant_column(S)
    return prof.eventual_value == (0 if l is None else l)


def m_augment(S: SetExpr, B: SetExpr) -> Point | None:
    """First point of ``B - S`` (row-major) keeping ``S`` independent in M.

    Returns ``None`` when ``S`` is already a base.  Past the rows where ``S``
    and ``B`` still have structure every candidate gets the same verdict, so
    the scan stops one row after that.
    """
    if not m_is_independent(S):
        raise DependentInput(f"{S!r} is dependent in M")
    if not m_is_base(B):
        raise NotABase(f"{B!r} is not a base of M")
    if m_is_base(S):
        return None
    last = gs._comparison_row(S, B) + 1
    for p in gs.iter_points(B):
        if p.row > last:
            break
        if gs.contains(S, p):
            continue
        if m_is_independent(gs.insert(S, p)):
            return p
    raise RuntimeError(f"no element of {B!r} augments {S!r}")


# -- toy matroid on N -----------------------------------------------------


@dataclass(frozen=True)
class Finite:
    elems: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset(_check_nat(e) for e in self.elems))


@dataclass(frozen=True)
class Cofinite:
    """``N`` minus ``missing``."""

    missing: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "missing", frozenset(_check_nat(e) for e in self.missing))


FiniteSubset1D = Finite | Cofinite


def _check_nat(e) -> int:
    if not isinstance(e, int) or e < 1:
        raise gs.MalformedSet(f"expected a positive integer, got {e!r}")
    return e


def toy_is_independent(S) -> bool:
    return isinstance(S, Finite) or len(S.missing) >= 2


def toy_is_base(S) -> bool:
    return isinstance(S, Cofinite) and len(S.missing) == 2


def toy_fin_is_independent(S) -> bool:
    return True


# -- universes: set algebra shared by oracles on one ground set -------------


class Tagged(NamedTuple):
    side: str  # "L" or "R"
    element: object


class SumSet(NamedTuple):
    left: object
    right: object


class GridUniverse:
    kind = "grid"

    def contains_element(self, e) -> bool:
        return isinstance(e, tuple) and len(e) == 2 and all(isinstance(x, int) and x >= 1 for x in e)

    def coerce(self, S) -> SetExpr:
        if isinstance(S, SetExpr):
            return S
        return SetExpr.finite(S)

    def from_elements(self, elems) -> SetExpr:
        return SetExpr(frozenset(elems))

    def member(self, S, e) -> bool:
        return gs.contains(S, e)

    def insert(self, S, e):
        return gs.insert(S, e)

    def remove(self, S, e):
        return gs.normalize(gs.remove(S, e))

    def is_finite(self, S) -> bool:
        return not S.tails

    def is_subset(self, A, B) -> bool:
        return gs.is_subset(A, B)

    def diff_size(self, F, B):
        return gs.diff_size(F, B)

    def window_elements(self, R: int, C: int) -> list:
        return [Point(r, c) for r in range(1, R + 1) for c in range(1, C + 1)]

    def iter_candidates(self, W: int):
        return iter(self.window_elements(W, W))

    def to_record(self, S) -> dict:
        return gs.to_record(S)

    def from_record(self, rec) -> SetExpr:
        return gs.from_record(rec)

    def format_element(self, e) -> str:
        return f"({e[0]},{e[1]})"


class NatUniverse:
    kind = "nat"

    def contains_element(self, e) -> bool:
        return isinstance(e, int) and e >= 1

    def coerce(self, S):
        if isinstance(S, (Finite, Cofinite)):
            return S
        return Finite(frozenset(S))

    def from_elements(self, elems):
        return Finite(frozenset(elems))

    def member(self, S, e) -> bool:
        return e in S.elems if isinstance(S, Finite) else e not in S.missing

    def insert(self, S, e):
        if isinstance(S, Finite):
            return Finite(S.elems | {e})
        return Cofinite(S.missing - {e})

    def remove(self, S, e):
        if isinstance(S, Finite):
            return Finite(S.elems - {e})
        return Cofinite(S.missing | {e})

    def is_finite(self, S) -> bool:
        return isinstance(S, Finite)

    def is_subset(self, A, B) -> bool:
        if isinstance(A, Finite):
            return all(self.member(B, e) for e in A.elems)
        return isinstance(B, Cofinite) and B.missing <= A.missing

    def diff_size(self, F, B):
        if isinstance(F, Finite):
            return sum(1 for e in F.elems if not self.member(B, e))
        if isinstance(B, Finite):
            return math.inf
        return len(B.missing - F.missing)

    def window_elements(self, R: int, C: int) -> list:
        return list(range(1, R * C + 1))

    def iter_candidates(self, W: int):
        return iter(range(1, W * W + 1))

    def to_record(self, S) -> dict:
        if isinstance(S, Finite):
            return {"finite": sorted(S.elems)}
        return {"cofinite": sorted(S.missing)}

    def from_record(self, rec):
        try:
            if "finite" in rec:
                return Finite(frozenset(int(e) for e in rec["finite"]))
            return Cofinite(frozenset(int(e) for e in rec["cofinite"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise gs.MalformedSet(f"bad toy set record: {exc}") from exc

    def format_element(self, e) -> str:
        return str(e)


class FiniteUniverse:
    """Subsets of an explicit finite ground list."""

    kind = "finite"

    def __init__(self, ground):
        self.ground = tuple(ground)
        self._ground_set = frozenset(self.ground)

    def contains_element(self, e) -> bool:
        return e in self._ground_set

    def coerce(self, S) -> frozenset:
        S = frozenset(S)
        if not S <= self._ground_set:
            raise NotInGround(f"{sorted(S - self._ground_set, key=repr)} not in ground")
        return S

    from_elements = coerce

    def member(self, S, e) -> bool:
        return e in S

    def insert(self, S, e):
        return S | {e}

    def remove(self, S, e):
        return S - {e}

    def is_finite(self, S) -> bool:
        return True

    def is_subset(self, A, B) -> bool:
        return A <= B

    def diff_size(self, F, B):
        return len(F - B)

    def window_elements(self, R: int, C: int) -> list:
        return list(self.ground)

    def iter_candidates(self, W: int):
        return iter(self.ground)

    def to_record(self, S) -> dict:
        return {"elements": sorted(S, key=repr)}

    def from_record(self, rec):
        return self.coerce(_untuple(e) for e in rec["elements"])

    def format_element(self, e) -> str:
        return str(e)


def _untuple(e):
    return tuple(e) if isinstance(e, list) else e


class SumUniverse:
    kind = "sum"

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _side(self, side):
        return self.left if side == "L" else self.right

    def contains_element(self, e) -> bool:
        return isinstance(e, Tagged) and e.side in "LR" and self._side(e.side).contains_element(e.element)

    def coerce(self, S) -> SumSet:
        if isinstance(S, SumSet):
            return SumSet(self.left.coerce(S.left), self.right.coerce(S.right))
        if isinstance(S, tuple) and len(S) == 2 and not isinstance(S, Tagged):
            return SumSet(self.left.coerce(S[0]), self.right.coerce(S[1]))
        return self.from_elements(S)

    def from_elements(self, elems) -> SumSet:
        left, right = [], []
        for e in elems:
            (left if e.side == "L" else right).append(e.element)
        return SumSet(self.left.from_elements(left), self.right.from_elements(right))

    def member(self, S, e) -> bool:
        part = S.left if e.side == "L" else S.right
        return self._side(e.side).member(part, e.element)

    def insert(self, S, e):
        if e.side == "L":
            return SumSet(self.left.insert(S.left, e.element), S.right)
        return SumSet(S.left, self.right.insert(S.right, e.element))

    def remove(self, S, e):
        if e.side == "L":
            return SumSet(self.left.remove(S.left, e.element), S.right)
        return SumSet(S.left, self.right.remove(S.right, e.element))

    def is_finite(self, S) -> bool:
        return self.left.is_finite(S.left) and self.right.is_finite(S.right)

    def is_subset(self, A, B) -> bool:
        return self.left.is_subset(A.left, B.left) and self.right.is_subset(A.right, B.right)

    def diff_size(self, F, B):
        return self.left.diff_size(F.left, B.left) + self.right.diff_size(F.right, B.right)

    def window_elements(self, R: int, C: int) -> list:
        return [Tagged("L", e) for e in self.left.window_elements(R, C)] + [
            Tagged("R", e) for e in self.right.window_elements(R, C)
        ]

    def iter_candidates(self, W: int):
        for e in self.left.iter_candidates(W):
            yield Tagged("L", e)
        for e in self.right.iter_candidates(W):
            yield Tagged("R", e)

    def to_record(self, S) -> dict:
        return {"left": self.left.to_record(S.left), "right": self.right.to_record(S.right)}

    def from_record(self, rec) -> SumSet:
        try:
            return SumSet(self.left.from_record(rec["left"]), self.right.from_record(rec["right"]))
        except (KeyError, TypeError) as exc:
            raise gs.MalformedSet(f"bad direct-sum record: {exc}") from exc

    def format_element(self, e) -> str:
        return f"{e.side}:{self._side(e.side).format_element(e.element)}"


GRID = GridUniverse()
NAT = NatUniverse()


# -- oracle interface -----------------------------------------------------


class MatroidOracle:
    """Ground membership plus an independence predicate.

    ``capacity(S)`` is the largest number of elements that can be added to the
    independent set ``S`` while staying independent; ``avoid`` excludes
    elements from the candidates (used by deletions).
    """

    name = "?"
    universe = GRID

    def ground_contains(self, e) -> bool:
        return self.universe.contains_element(e)

    def coerce(self, S):
        return self.universe.coerce(S)

    def is_independent(self, S) -> bool:
        raise NotImplementedError

    def capacity(self, S, avoid=frozenset()):
        raise NotImplementedError

    def is_base(self, S) -> bool:
        S = self.coerce(S)
        return self.is_independent(S) and self.capacity(S) == 0

    def coloop_evidence(self, T) -> bool:
        """Whether every element of ``T`` is known to be a coloop."""
        return not T

    def base_pair(self):
        """A base ``B`` of this matroid and a base ``F ⊇ B`` of its finitarization."""
        raise NotImplementedError(f"no canonical base pair for {self.name}")

    def __repr__(self):
        return f"<oracle {self.name}>"


class M1Oracle(MatroidOracle):
    name = "m1"

    def is_independent(self, S) -> bool:
        return m1_is_independent(self.coerce(S))

    def capacity(self, S, avoid=frozenset()):
        # avoid is finite and the capacity is realised on arbitrarily high rows
        return m1_capacity(self.coerce(S))

    def is_base(self, S) -> bool:
        return m1_is_base(self.coerce(S))

    def finitarization(self):
        return self

    def base_pair(self):
        col = SetExpr.column(1)
        return col, col


class MOracle(MatroidOracle):
    name = "m"

    def is_independent(self, S) -> bool:
        return m_is_independent(self.coerce(S))

    def capacity(self, S, avoid=frozenset()):
        return m_capacity(self.coerce(S))

    def is_base(self, S) -> bool:
        return m_is_base(self.coerce(S))

    def augment(self, S, B):
        return m_augment(self.coerce(S), self.coerce(B))

    def finitarization(self):
        # finite sets of M and M1 agree, and M1 is finitary
        return M1

    def base_pair(self):
        return SetExpr.column(1, 2), SetExpr.column(1)


class ToyOracle(MatroidOracle):
    """Subsets of N missing at least two elements."""

    name = "toy"
    universe = NAT

    def is_independent(self, S) -> bool:
        return toy_is_independent(self.coerce(S))

    def capacity(self, S, avoid=frozenset()):
        S = self.coerce(S)
        if not toy_is_independent(S):
            raise DependentInput(f"{S!r} is dependent in toy")
        if isinstance(S, Finite):
            return math.inf
        return min(len(S.missing - frozenset(avoid)), len(S.missing) - 2)

    def is_base(self, S) -> bool:
        return toy_is_base(self.coerce(S))

    def finitarization(self):
        return FREE_NAT

    def base_pair(self):
        return Cofinite(frozenset({1, 2})), Cofinite()


class FreeNatOracle(MatroidOracle):
    """Every subset of N is independent."""

    name = "freenat"
    universe = NAT

    def is_independent(self, S) -> bool:
        return toy_fin_is_independent(self.coerce(S))

    def capacity(self, S, avoid=frozenset()):
        S = self.coerce(S)
        if isinstance(S, Finite):
            return math.inf
        return len(S.missing - frozenset(avoid))

    def finitarization(self):
        return self

    def base_pair(self):
        return Cofinite(), Cofinite()


M1 = M1Oracle()
M = MOracle()
TOY = ToyOracle()
FREE_NAT = FreeNatOracle()
