"""Brute-force ground truth for matroids on at most 20 elements.

A family of subsets is stored as a boolean array indexed by bitmask: bit ``i``
of the mask stands for ``ground[i]``.  All the checks below are vectorised over
the whole ``2**n`` cube, so a 20-element ground set takes a few seconds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid_sets import Point

MAX_GROUND = 20


class WindowTooLarge(ValueError):
    pass


def _all_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint32)


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks).astype(np.int64)


def _superset_closure(family: np.ndarray, n: int) -> np.ndarray:
    """``out[X]`` is true iff some member of ``family`` is a subset of ``X``."""
    out = family.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return out


def _subset_closure(family: np.ndarray, n: int) -> np.ndarray:
    """``out[X]`` is true iff ``X`` is a subset of some member of ``family``."""
    out = family.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return out


class FiniteMatroid:
    """Explicit ground list and independence family.

    With ``strict=True`` (the default) the family must contain the empty set
    and be closed under taking subsets.  Pass ``strict=False`` to hold an
    arbitrary family, e.g. one whose axioms are about to be audited.
    """

    def __init__(self, ground, indep, strict: bool = True):
        self.ground = tuple(ground)
        n = len(self.ground)
        if n > MAX_GROUND:
            raise WindowTooLarge(f"{n} elements exceeds the enumeration cap of {MAX_GROUND}")
        if len(set(self.ground)) != n:
            raise ValueError("ground elements must be distinct")
        indep = np.array(indep, dtype=bool)
        if indep.shape != (1 << n,):
            raise ValueError(f"family array must have length 2**{n}")
        self.indep = indep
        self.indep.flags.writeable = False
        self._index = {e: i for i, e in enumerate(self.ground)}
        if strict:
            if not indep[0]:
                raise ValueError("the empty set must be independent")
            bad = _first_i2_violation(self)
            if bad is not None:
                raise ValueError(f"family is not closed under subsets: {self.subset(bad[0])}")

    @property
    def n(self) -> int:
        return len(self.ground)

    @classmethod
    def from_sets(cls, ground, sets, strict: bool = True) -> "FiniteMatroid":
        ground = tuple(ground)
        arr = np.zeros(1 << len(ground), dtype=bool)
        idx = {e: i for i, e in enumerate(ground)}
        for s in sets:
            arr[sum(1 << idx[e] for e in s)] = True
        return cls(ground, arr, strict=strict)

    @classmethod
    def from_predicate(cls, ground, pred, strict: bool = True) -> "FiniteMatroid":
        ground = tuple(ground)
        n = len(ground)
        if n > MAX_GROUND:
            raise WindowTooLarge(f"{n} elements exceeds the enumeration cap of {MAX_GROUND}")
        arr = np.fromiter(
            (pred([ground[i] for i in range(n) if m >> i & 1]) for m in range(1 << n)),
            dtype=bool,
            count=1 << n,
        )
        return cls(ground, arr, strict=strict)

    @classmethod
    def from_bases(cls, ground, bases) -> "FiniteMatroid":
        ground = tuple(ground)
        fam = cls.from_sets(ground, bases, strict=False).indep
        return cls(ground, _subset_closure(fam, len(ground)))

    @classmethod
    def free(cls, ground) -> "FiniteMatroid":
        ground = tuple(ground)
        return cls(ground, np.ones(1 << len(ground), dtype=bool))

    def mask(self, subset) -> int:
        return sum(1 << self._index[e] for e in subset)

    def subset(self, mask: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.ground) if mask >> i & 1)

    def sorted_subset(self, mask: int) -> list:
        return [e for i, e in enumerate(self.ground) if mask >> i & 1]

    def is_independent(self, subset) -> bool:
        return bool(self.indep[self.mask(subset)])

    def independent_sets(self) -> list:
        return [self.subset(int(m)) for m in np.flatnonzero(self.indep)]

    def __eq__(self, other):
        return (
            isinstance(other, FiniteMatroid)
            and self.ground == other.ground
            and np.array_equal(self.indep, other.indep)
        )

    __hash__ = None

    def __repr__(self):
        return f"FiniteMatroid(n={self.n}, independent={int(self.indep.sum())})"


def _augmentable(fm: FiniteMatroid) -> np.ndarray:
    """Bitmask of elements ``e ∉ A`` with ``A + e`` in the family, for every ``A``."""
    masks = _all_masks(fm.n)
    aug = np.zeros(1 << fm.n, dtype=np.uint32)
    for i in range(fm.n):
        bit = np.uint32(1 << i)
        outside = (masks & bit) == 0
        ok = outside & fm.indep[masks | bit]
        aug |= np.where(ok, bit, np.uint32(0))
    return aug


def _first_i2_violation(fm: FiniteMatroid):
    masks = _all_masks(fm.n)
    for i in range(fm.n):
        bit = np.uint32(1 << i)
        bad = fm.indep & ((masks & bit) != 0) & ~fm.indep[masks & ~bit]
        hits = np.flatnonzero(bad)
        if hits.size:
            return int(hits[0]), i
    return None


def _base_mask_array(fm: FiniteMatroid) -> np.ndarray:
    return fm.indep & (_augmentable(fm) == 0)


# -- reports --------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: list | None = None

    def line(self, fmt=str) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}"
        if self.detail:
            head += f": {self.detail}"
        if self.counterexample is not None:
            head += " counterexample [" + ", ".join(fmt(e) for e in self.counterexample) + "]"
        return head

    def record(self, fmt=str) -> dict:
        rec = {"status": "PASS" if self.passed else "FAIL", "name": self.name, "detail": self.detail}
        if self.counterexample is not None:
            rec["counterexample"] = [fmt(e) for e in self.counterexample]
        return rec


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)
    fmt: object = repr

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, *args, **kwargs) -> CheckResult:
        res = CheckResult(*args, **kwargs)
        self.results.append(res)
        return res

    def lines(self) -> list:
        return [r.line(self.fmt) for r in self.results]

    def text(self) -> str:
        return "\n".join([self.title] + self.lines()) + "\n"

    def record(self) -> dict:
        return {"title": self.title, "passed": self.passed, "results": [r.record(self.fmt) for r in self.results]}


AxiomReport = Report


# -- axioms ---------------------------------------------------------------


def check_axioms(fm: FiniteMatroid) -> Report:
    """I1-I3 by exhaustive enumeration; I4 holds for every finite family."""
    rep = Report(f"axioms on {fm.n} elements ({int(fm.indep.sum())} independent sets)")
    rep.add("I1", bool(fm.indep[0]), "empty set independent",
            None if fm.indep[0] else [])

    bad = _first_i2_violation(fm)
    if bad is None:
        rep.add("I2", True, "family closed under subsets")
    else:
        mask, i = bad
        rep.add("I2", False, f"dropping element {i} of the ground list leaves a dependent set",
                fm.sorted_subset(mask))

    # (B, A) with B maximal and A independent non-maximal violates I3 exactly
    # when B avoids every element that augments A; the superset closure of the
    # bases answers that for all A at once.
    aug = _augmentable(fm)
    full = np.uint32((1 << fm.n) - 1)
    is_base = fm.indep & (aug == 0)
    nonmax = fm.indep & (aug != 0)
    has_base_inside = _superset_closure(is_base, fm.n)
    blocked = nonmax & has_base_inside[full & ~aug]
    hits = np.flatnonzero(blocked)
    n_pairs = int(nonmax.sum()) * int(is_base.sum())
    if hits.size == 0:
        rep.add("I3", True, f"{int(nonmax.sum())} non-maximal sets x {int(is_base.sum())} bases ({n_pairs} pairs)")
    else:
        A = int(hits[0])
        rep.add("I3", False, "a base misses every augmenting element of this set", fm.sorted_subset(A))
    rep.add("I4", True, "finite ground: every subfamily has maximal elements")
    return rep


# -- derived families -----------------------------------------------------


def bases(fm: FiniteMatroid) -> list:
    return [fm.subset(int(m)) for m in np.flatnonzero(_base_mask_array(fm))]


def circuits(fm: FiniteMatroid) -> list:
    masks = _all_masks(fm.n)
    minimal = ~fm.indep
    for i in range(fm.n):
        bit = np.uint32(1 << i)
        minimal &= ((masks & bit) == 0) | fm.indep[masks & ~bit]
    return [fm.subset(int(m)) for m in np.flatnonzero(minimal)]


def coloops(fm: FiniteMatroid) -> frozenset:
    """Elements lying in every base; checked against "in no circuit"."""
    bs = bases(fm)
    by_bases = frozenset(fm.ground).intersection(*bs) if bs else frozenset()
    in_circuit = frozenset().union(*circuits(fm))
    by_circuits = frozenset(fm.ground) - in_circuit
    if by_bases != by_circuits:
        raise AssertionError(f"coloop definitions disagree: {by_bases} vs {by_circuits}")
    return by_bases


def loops(fm: FiniteMatroid) -> frozenset:
    return frozenset(e for i, e in enumerate(fm.ground) if not fm.indep[1 << i])


def dualize(fm: FiniteMatroid) -> FiniteMatroid:
    """Independent sets of the dual: subsets of complements of bases."""
    full = (1 << fm.n) - 1
    comp = np.zeros(1 << fm.n, dtype=bool)
    comp[full ^ np.flatnonzero(_base_mask_array(fm))] = True
    return FiniteMatroid(fm.ground, _subset_closure(comp, fm.n))


def restrict(fm: FiniteMatroid, keep) -> FiniteMatroid:
    keep = [e for e in fm.ground if e in set(keep)]
    pos = [fm.ground.index(e) for e in keep]
    sub = _all_masks(len(keep))
    full = np.zeros_like(sub)
    for j, i in enumerate(pos):
        full |= np.where(sub >> np.uint32(j) & 1, np.uint32(1 << i), np.uint32(0))
    return FiniteMatroid(keep, fm.indep[full], strict=False)


def delete(fm: FiniteMatroid, D) -> FiniteMatroid:
    D = set(D)
    return restrict(fm, [e for e in fm.ground if e not in D])


def contract(fm: FiniteMatroid, T) -> FiniteMatroid:
    """Contraction by an independent set ``T``: ``S`` independent iff ``S ∪ T`` is."""
    T = set(T)
    if not fm.is_independent(T):
        raise ValueError("contraction set must be independent")
    keep = [e for e in fm.ground if e not in T]
    t_mask = fm.mask(T)
    pos = [fm.ground.index(e) for e in keep]
    sub = _all_masks(len(keep))
    full = np.full_like(sub, t_mask)
    for j, i in enumerate(pos):
        full |= np.where(sub >> np.uint32(j) & 1, np.uint32(1 << i), np.uint32(0))
    return FiniteMatroid(keep, fm.indep[full])


def rank(fm: FiniteMatroid) -> int:
    return int(_popcount(np.flatnonzero(fm.indep).astype(np.uint32)).max())


# -- reference families and cross-checks ----------------------------------


def prefix_rule_window(R: int, C: int) -> FiniteMatroid:
    """The family "at most n points in the first n rows" on the R x C window,
    computed directly from row counts (row-major ground order)."""
    n = R * C
    if n > MAX_GROUND:
        raise WindowTooLarge(f"{R}x{C} window exceeds the enumeration cap")
    masks = _all_masks(n)
    ok = np.ones(1 << n, dtype=bool)
    running = np.zeros(1 << n, dtype=np.int64)
    row_bits = np.uint32((1 << C) - 1)
    for r in range(R):
        running += _popcount((masks >> np.uint32(r * C)) & row_bits)
        ok &= running <= r + 1
    ground = [Point(r, c) for r in range(1, R + 1) for c in range(1, C + 1)]
    return FiniteMatroid(ground, ok)


def crosscheck(oracle, R: int, C: int, samples: int, seed: int = 0, reference=None) -> Report:
    """Compare ``oracle`` with an enumerated family on random window subsets.

    ``reference`` defaults to :func:`prefix_rule_window`, the right answer for
    every oracle whose finite independent sets are those of M1.
    """
    ref = reference if reference is not None else prefix_rule_window(R, C)
    ground = list(ref.ground)
    rng = np.random.default_rng(seed)
    masks = rng.integers(0, 1 << len(ground), size=samples, dtype=np.int64)
    rep = Report(f"crosscheck {oracle.name} on {R}x{C}, {samples} samples, seed {seed}")
    mismatches = 0
    first = None
    for m in masks:
        m = int(m)
        elems = [ground[i] for i in range(len(ground)) if m >> i & 1]
        got = oracle.is_independent(oracle.universe.from_elements(elems))
        if got != bool(ref.indep[m]):
            mismatches += 1
            if first is None:
                first = elems
    rep.add("verdicts agree", mismatches == 0, f"{mismatches} mismatches", first)
    return rep
