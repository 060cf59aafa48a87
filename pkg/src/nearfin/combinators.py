"""Building new matroid oracles from old ones.

Oracle expressions use a small prefix grammar, e.g. ``trunc(1,m)``,
``del([(1,1),(2,2)],m)``, ``sum(m,toy)``, ``fin(m)`` or
``con([R:1],sum(m,free(2)))``.  :func:`parse_oracle` reads it and every
oracle's ``name`` prints it back.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from . import finite_engine as fe
from .finite_engine import FiniteMatroid
from .grid_sets import Point
from .oracles import (
    FREE_NAT,
    M,
    M1,
    TOY,
    DependentInput,
    FiniteUniverse,
    MatroidOracle,
    NotInGround,
    SumSet,
    SumUniverse,
    Tagged,
    Undecidable,
)


class NotACalibratedColoop(ValueError):
    pass


class OracleSyntaxError(ValueError):
    pass


def _format_elements(universe, elems) -> str:
    return "[" + ",".join(universe.format_element(e) for e in sorted(elems, key=_elem_key)) + "]"


def _elem_key(e):
    if isinstance(e, Tagged):
        return (e.side, _elem_key(e.element))
    return (0, e) if isinstance(e, int) else (1, tuple(e))


class FiniteOracle(MatroidOracle):
    """Oracle view of an explicit :class:`FiniteMatroid`."""

    def __init__(self, fm: FiniteMatroid, name: str = "finite"):
        self.fm = fm
        self.name = name
        self.universe = FiniteUniverse(fm.ground)

    def is_independent(self, S) -> bool:
        return self.fm.is_independent(self.coerce(S))

    def capacity(self, S, avoid=frozenset()):
        S = self.coerce(S)
        if not self.fm.is_independent(S):
            raise DependentInput(f"{sorted(S, key=repr)} is dependent")
        s_mask = self.fm.mask(S)
        a_mask = self.fm.mask(e for e in avoid if e in self.universe._ground_set and e not in S)
        masks = np.flatnonzero(self.fm.indep).astype(np.uint32)
        ok = ((masks & s_mask) == s_mask) & ((masks & a_mask) == 0)
        return int(np.bitwise_count(masks[ok]).max()) - len(S)

    def finitarization(self):
        return self

    def coloop_evidence(self, T) -> bool:
        return frozenset(T) <= fe.coloops(self.fm)

    def base_pair(self):
        B = fe.bases(self.fm)[0]
        return B, B


class Truncated(MatroidOracle):
    """Infinite sets must leave room for ``k`` more elements."""

    def __init__(self, inner: MatroidOracle, k: int):
        if k < 0:
            raise ValueError("truncation depth must be nonnegative")
        self.inner = inner
        self.k = k
        self.universe = inner.universe
        self.name = f"trunc({k},{inner.name})"

    def ground_contains(self, e) -> bool:
        return self.inner.ground_contains(e)

    def is_independent(self, S) -> bool:
        S = self.coerce(S)
        if not self.inner.is_independent(S):
            return False
        if self.universe.is_finite(S):
            return True
        return self.inner.capacity(S) >= self.k

    def capacity(self, S, avoid=frozenset()):
        S = self.coerce(S)
        if not self.is_independent(S):
            raise DependentInput(f"{S!r} is dependent in {self.name}")
        cap = self.inner.capacity(S, avoid)
        if self.universe.is_finite(S):
            return cap
        return cap - self.k

    def finitarization(self):
        # same finite independent sets as the inner oracle
        return finitarize(self.inner)


class Deleted(MatroidOracle):
    def __init__(self, inner: MatroidOracle, D, label: str = "del"):
        self.inner = inner
        self.D = frozenset(D)
        self.universe = inner.universe
        self.label = label
        self.name = f"{label}({_format_elements(self.universe, self.D)},{inner.name})"

    def ground_contains(self, e) -> bool:
        return e not in self.D and self.inner.ground_contains(e)

    def _check(self, S):
        S = self.coerce(S)
        hit = [d for d in self.D if self.universe.member(S, d)]
        if hit:
            raise NotInGround(f"{hit} removed from the ground set of {self.name}")
        return S

    def is_independent(self, S) -> bool:
        return self.inner.is_independent(self._check(S))

    def capacity(self, S, avoid=frozenset()):
        return self.inner.capacity(self._check(S), frozenset(avoid) | self.D)

    def finitarization(self):
        return type(self)(finitarize(self.inner), self.D, self.label)


class Contracted(Deleted):
    """Contraction by coloops, which coincides with their deletion."""

    def __init__(self, inner, T, label: str = "con"):
        super().__init__(inner, T, label)


class DirectSum(MatroidOracle):
    def __init__(self, left: MatroidOracle, right: MatroidOracle):
        self.left = left
        self.right = right
        self.universe = SumUniverse(left.universe, right.universe)
        self.name = f"sum({left.name},{right.name})"

    def ground_contains(self, e) -> bool:
        if not isinstance(e, Tagged):
            return False
        side = self.left if e.side == "L" else self.right
        return side.ground_contains(e.element)

    def is_independent(self, S) -> bool:
        S = self.coerce(S)
        return self.left.is_independent(S.left) and self.right.is_independent(S.right)

    def capacity(self, S, avoid=frozenset()):
        S = self.coerce(S)
        la = frozenset(e.element for e in avoid if e.side == "L")
        ra = frozenset(e.element for e in avoid if e.side == "R")
        return self.left.capacity(S.left, la) + self.right.capacity(S.right, ra)

    def is_base(self, S) -> bool:
        S = self.coerce(S)
        return self.left.is_base(S.left) and self.right.is_base(S.right)

    def finitarization(self):
        return DirectSum(finitarize(self.left), finitarize(self.right))

    def coloop_evidence(self, T) -> bool:
        la = frozenset(e.element for e in T if e.side == "L")
        ra = frozenset(e.element for e in T if e.side == "R")
        return self.left.coloop_evidence(la) and self.right.coloop_evidence(ra)

    def base_pair(self):
        bl, fl = self.left.base_pair()
        br, fr = self.right.base_pair()
        return SumSet(bl, br), SumSet(fl, fr)


class GenericFinitarization(MatroidOracle):
    """"Every finite subset is independent", decided by enumeration on finite
    inputs only."""

    max_elements = fe.MAX_GROUND

    def __init__(self, inner: MatroidOracle):
        self.inner = inner
        self.universe = inner.universe
        self.name = f"fin({inner.name})"

    def ground_contains(self, e) -> bool:
        return self.inner.ground_contains(e)

    def is_independent(self, S) -> bool:
        S = self.coerce(S)
        if not self.universe.is_finite(S):
            raise Undecidable(f"{self.name} cannot decide infinite inputs")
        elems = _finite_elements(self.universe, S)
        if len(elems) > self.max_elements:
            raise Undecidable(f"{len(elems)} elements is too many to enumerate")
        from_elements = self.universe.from_elements
        return all(
            self.inner.is_independent(from_elements(itertools.compress(elems, flags)))
            for flags in itertools.product((0, 1), repeat=len(elems))
        )

    def capacity(self, S, avoid=frozenset()):
        raise Undecidable(f"{self.name} has no capacity procedure")

    def finitarization(self):
        return self


def _finite_elements(universe, S) -> list:
    kind = universe.kind
    if kind == "grid":
        return sorted(S.finite_in)
    if kind == "nat":
        return sorted(S.elems)
    if kind == "finite":
        return sorted(S, key=repr)
    return [Tagged("L", e) for e in _finite_elements(universe.left, S.left)] + [
        Tagged("R", e) for e in _finite_elements(universe.right, S.right)
    ]


class BadFamily(MatroidOracle):
    """A deliberately broken family on the grid: ∅, {(1,1)}, {(1,1),(1,2)}.

    ``{(1,2)}`` is missing, so subset closure fails.  Used to exercise the
    failure paths of the axiom checker.
    """

    name = "badfamily"
    _members = {frozenset(), frozenset({(1, 1)}), frozenset({(1, 1), (1, 2)})}

    def is_independent(self, S) -> bool:
        S = self.coerce(S)
        return not S.tails and not S.finite_out and frozenset(S.finite_in) in self._members

    def capacity(self, S, avoid=frozenset()):
        raise Undecidable("badfamily is not a matroid")


# -- public combinators ---------------------------------------------------


def finitarize(o: MatroidOracle) -> MatroidOracle:
    fin = getattr(o, "finitarization", None)
    return fin() if fin is not None else GenericFinitarization(o)


def truncate(o: MatroidOracle, k: int) -> MatroidOracle:
    return Truncated(o, k)


def delete(o: MatroidOracle, D) -> MatroidOracle:
    D = frozenset(D)
    if not D:
        return o
    return Deleted(o, D)


def contract_coloops(o: MatroidOracle, T, evidence: FiniteMatroid | None = None, assume: bool = False):
    """``o / T`` for a set ``T`` of coloops, which equals ``o - T``.

    Coloop status comes from ``evidence`` (a finite matroid whose coloops must
    include ``T``), from the oracle itself when it can tell, or from the
    caller via ``assume=True``.
    """
    T = frozenset(T)
    if not T:
        return o
    if evidence is not None:
        ok = all(t in evidence.ground for t in T) and T <= fe.coloops(evidence)
    else:
        ok = assume or o.coloop_evidence(T)
    if not ok:
        raise NotACalibratedColoop(f"{sorted(T, key=repr)} are not all coloops of {o.name}")
    return Contracted(o, T)


def direct_sum(o1: MatroidOracle, o2: MatroidOracle) -> MatroidOracle:
    return DirectSum(o1, o2)


def restrict_window(o: MatroidOracle, R: int, C: int) -> FiniteMatroid:
    """The restriction of ``o`` to the window's elements, enumerated.

    For grid oracles the window is ``[1..R] x [1..C]`` in row-major order.
    The family is taken as-is (no subset-closure check) so that broken
    oracles can still be audited.
    """
    ground = [e for e in o.universe.window_elements(R, C) if o.ground_contains(e)]
    n = len(ground)
    if n > fe.MAX_GROUND:
        raise fe.WindowTooLarge(f"window has {n} elements, cap is {fe.MAX_GROUND}")
    rev = ground[::-1]
    from_elements = o.universe.from_elements
    is_indep = o.is_independent
    # product() counts in binary with the last flag fastest, so reversing the
    # ground makes position i of the result line up with mask bit i
    arr = np.fromiter(
        (is_indep(from_elements(itertools.compress(rev, flags)))
         for flags in itertools.product((0, 1), repeat=n)),
        dtype=bool,
        count=1 << n,
    )
    return FiniteMatroid(ground, arr, strict=False)


# -- expression grammar ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        out.append(int(num) if num is not None else (name if name is not None else sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise OracleSyntaxError(f"expected {expect!r} at token {self.i} of {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not isinstance(tok, int):
            raise OracleSyntaxError(f"expected an integer in {self.text!r}, got {tok!r}")
        return tok

    def element(self):
        tok = self.peek()
        if tok in ("L", "R"):
            self.take()
            self.take(":")
            return Tagged(tok, self.element())
        if tok == "(":
            self.take("(")
            r = self.integer()
            self.take(",")
            c = self.integer()
            self.take(")")
            return Point(r, c)
        return self.integer()

    def elements(self) -> list:
        self.take("[")
        out = []
        if self.peek() != "]":
            out.append(self.element())
            while self.peek() == ",":
                self.take(",")
                out.append(self.element())
        self.take("]")
        return out

    def expr(self) -> MatroidOracle:
        name = self.take()
        atoms = {"m": M, "m1": M1, "toy": TOY, "freenat": FREE_NAT, "badfamily": BadFamily()}
        if name in atoms:
            return atoms[name]
        if not isinstance(name, str) or name not in ("trunc", "del", "con", "sum", "fin", "free"):
            raise OracleSyntaxError(f"unknown oracle {name!r} in {self.text!r}")
        self.take("(")
        if name == "trunc":
            k = self.integer()
            self.take(",")
            out = truncate(self.expr(), k)
        elif name in ("del", "con"):
            elems = self.elements()
            self.take(",")
            inner = self.expr()
            bad = [e for e in elems if not inner.universe.contains_element(e)]
            if bad:
                raise OracleSyntaxError(f"{bad} are not elements of {inner.name}")
            out = delete(inner, elems) if name == "del" else contract_coloops(inner, elems)
        elif name == "sum":
            a = self.expr()
            self.take(",")
            out = direct_sum(a, self.expr())
        elif name == "fin":
            out = finitarize(self.expr())
        else:
            n = self.integer()
            out = FiniteOracle(FiniteMatroid.free(range(1, n + 1)), f"free({n})")
        self.take(")")
        return out


def parse_oracle(text: str) -> MatroidOracle:
    p = _Parser(text)
    out = p.expr()
    if p.peek() is not None:
        raise OracleSyntaxError(f"trailing input in {text!r}")
    return out


__all__ = [
    "BadFamily",
    "Contracted",
    "Deleted",
    "DirectSum",
    "FiniteOracle",
    "GenericFinitarization",
    "NotACalibratedColoop",
    "OracleSyntaxError",
    "Truncated",
    "contract_coloops",
    "delete",
    "direct_sum",
    "finitarize",
    "parse_oracle",
    "restrict_window",
    "truncate",
]
