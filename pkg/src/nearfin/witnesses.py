"""Base-pair certificates: a base ``B`` of a matroid inside a base ``F`` of its
finitarization, with ``|F - B| = k``.

The canonical family for M takes ``F`` to be the whole of column ``k`` and
``B`` the same column without its first ``k`` points, so the gap grows without
bound.  Certificates are plain JSON and :func:`verify_certificate` recomputes
every verdict; stored verdicts are informational only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import grid_sets as gs
from .combinators import contract_coloops, delete, finitarize, parse_oracle, truncate, direct_sum
from .finite_engine import Report
from .grid_sets import Point, SetExpr
from .oracles import M, NotABase, SumSet

FORMAT_VERSION = 1
WITNESS_WINDOW = 32


class CertificateFormatError(ValueError):
    pass


class UnsupportedTransport(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    verdict: bool
    detail: str = ""


@dataclass
class Certificate:
    k: int
    F: object
    B: object
    oracle: str = "m"
    checks: tuple = ()
    transported_via: str | None = None
    format_version: int = FORMAT_VERSION

    def record(self) -> dict:
        u = parse_oracle(self.oracle).universe
        return {
            "format_version": self.format_version,
            "oracle": self.oracle,
            "k": self.k,
            "F": u.to_record(self.F),
            "B": u.to_record(self.B),
            "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail} for c in self.checks],
            "transported_via": self.transported_via,
        }

    def to_json(self) -> str:
        return json.dumps(self.record(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            rec = json.loads(text)
            oracle = parse_oracle(rec.get("oracle", "m"))
            u = oracle.universe
            k = rec["k"]
            if not isinstance(k, int) or isinstance(k, bool):
                raise CertificateFormatError(f"k must be an integer, got {k!r}")
            return cls(
                k=k,
                F=u.from_record(rec["F"]),
                B=u.from_record(rec["B"]),
                oracle=oracle.name,
                checks=tuple(Check(c["name"], bool(c["verdict"]), c.get("detail", "")) for c in rec.get("checks", [])),
                transported_via=rec.get("transported_via"),
                format_version=rec.get("format_version", FORMAT_VERSION),
            )
        except CertificateFormatError:
            raise
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise CertificateFormatError(f"malformed certificate: {exc}") from exc


# -- checks -----------------------------------------------------------------


def window_augmenter(oracle, S, W: int):
    """First window element outside ``S`` whose addition keeps ``S`` independent.

    A ``None`` answer is only evidence of maximality: no finite window can
    certify that an infinite set is a base.
    """
    u = oracle.universe
    for e in u.iter_candidates(W):
        if not oracle.ground_contains(e) or u.member(S, e):
            continue
        if oracle.is_independent(u.insert(S, e)):
            return e
    return None


def _run_checks(oracle, F, B, k: int, window_limit: int) -> Report:
    fin = finitarize(oracle)
    u = oracle.universe
    rep = Report(f"certificate k={k} for {oracle.name} (finitarization {fin.name})", fmt=u.format_element)

    rep.add("B subset of F", u.is_subset(B, F))
    b_ind = oracle.is_independent(B)
    rep.add("B independent in M", b_ind, oracle.name)
    rep.add("B is a base of M", b_ind and oracle.is_base(B), "symbolic")
    if window_limit > 0:
        e = window_augmenter(oracle, B, window_limit) if b_ind else None
        rep.add("no window element augments B in M", b_ind and e is None,
                f"{window_limit}x{window_limit} window, necessary condition only",
                None if e is None else [e])
    f_ind = fin.is_independent(F)
    rep.add("F independent in M^fin", f_ind, fin.name)
    rep.add("F is a base of M^fin", f_ind and fin.is_base(F), "symbolic")
    if window_limit > 0:
        e = window_augmenter(fin, F, window_limit) if f_ind else None
        rep.add("no window element augments F in M^fin", f_ind and e is None,
                f"{window_limit}x{window_limit} window, necessary condition only",
                None if e is None else [e])
    gap = u.diff_size(F, B) if rep.results[0].passed else math.inf
    rep.add("gap |F - B| = k", gap == k, f"|F - B| = {gap}, k = {k}")
    return rep


def verify_certificate(c: Certificate, window_limit: int = 100) -> Report:
    """Recompute every check of ``c`` from its sets alone."""
    oracle = parse_oracle(c.oracle)
    u = oracle.universe
    F, B = u.coerce(c.F), u.coerce(c.B)
    return _run_checks(oracle, F, B, c.k, window_limit)


def certify(oracle, F, B, k: int | None = None, window_limit: int = WITNESS_WINDOW, via=None) -> Certificate:
    if isinstance(oracle, str):
        oracle = parse_oracle(oracle)
    u = oracle.universe
    F, B = u.coerce(F), u.coerce(B)
    if k is None:
        k = u.diff_size(F, B)
    rep = _run_checks(oracle, F, B, k, window_limit)
    checks = tuple(Check(r.name, r.passed, r.detail) for r in rep.results)
    return Certificate(k=k, F=F, B=B, oracle=oracle.name, checks=checks, transported_via=via)


def witness_pair(k: int) -> tuple:
    """``(F, B)``: all of column ``k``, and column ``k`` minus its first ``k`` points."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return SetExpr.column(k), SetExpr.column(k, k + 1)


def witness(k: int, window_limit: int = WITNESS_WINDOW) -> Certificate:
    F, B = witness_pair(k)
    return certify(M, F, B, k, window_limit)


# -- gaps -------------------------------------------------------------------


def base_gap(B, oracle=M):
    """``|F - B|`` for any base ``F`` of the finitarization containing ``B``.

    All such completions add exactly the finitarization's capacity at ``B``;
    for M this is the dominant column of ``B``, or 0 without one.
    """
    B = oracle.coerce(B)
    if not oracle.is_base(B):
        raise NotABase(f"{B!r} is not a base of {oracle.name}")
    return finitarize(oracle).capacity(B)


def sample_completion(S: SetExpr, rng: np.random.Generator, low_bias: float = 0.5) -> SetExpr:
    """A random base of M1 containing the M1-independent set ``S``.

    Points go either to a random row past the stabilization row or to a low
    row whose deficiency stays positive from there on.
    """
    S = gs.normalize(S)
    while True:
        prof = gs.deficiency_profile(S)
        d_inf = prof.eventual_value
        if d_inf is None or prof.prefix_min < 0:
            raise ValueError(f"{S!r} is dependent in M1")
        if d_inf == 0:
            return S
        if d_inf == math.inf:
            raise ValueError("finite sets have no finite completion")
        N = prof.stabilization_row
        low = [r for r in range(1, N + 1) if prof.suffix_min(r) >= 1]
        if low and rng.random() < low_bias:
            row = int(rng.choice(low))
        else:
            row = N + 1 + int(rng.integers(0, 10))
        while True:
            p = Point(row, int(rng.integers(1, N + 12)))
            if not gs.contains(S, p):
                break
        S = gs.insert(S, p)


def complete_to_base(oracle, S, max_window: int = 128):
    """Greedily add window elements (row-major) until ``S`` is a base."""
    u = oracle.universe
    S = u.coerce(S)
    if not oracle.is_independent(S):
        raise ValueError(f"{S!r} is dependent in {oracle.name}")
    W = 8
    while not oracle.is_base(S):
        e = window_augmenter(oracle, S, W)
        if e is None:
            if W >= max_window:
                raise RuntimeError(f"could not complete {S!r} within a {W}x{W} window")
            W *= 2
            continue
        S = u.insert(S, e)
    return S


# -- transport --------------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    j: int

    def describe(self) -> str:
        return f"truncation({self.j})"


@dataclass(frozen=True)
class DirectSumWith:
    other: str = "toy"

    def describe(self) -> str:
        return f"direct_sum({self.other})"


@dataclass(frozen=True)
class Deletion:
    elements: tuple

    def describe(self) -> str:
        return "deletion(" + " ".join(str(tuple(e)) if isinstance(e, tuple) else str(e) for e in self.elements) + ")"


@dataclass(frozen=True)
class Contraction:
    elements: tuple

    def describe(self) -> str:
        return "contraction(" + " ".join(str(e) for e in self.elements) + ")"


def _remove_all(u, S, elems):
    for e in elems:
        if u.member(S, e):
            S = u.remove(S, e)
    return S


def _first_members(u, S, j: int, W: int = 64) -> list:
    out = []
    for e in u.iter_candidates(W):
        if len(out) == j:
            break
        if u.member(S, e):
            out.append(e)
    if len(out) < j:
        raise UnsupportedTransport(f"fewer than {j} elements of the base inside a {W}x{W} window")
    return out


def transport(c: Certificate, op, window_limit: int = WITNESS_WINDOW) -> Certificate:
    """Carry a base-pair certificate to a matroid built from ``c``'s matroid."""
    oracle = parse_oracle(c.oracle)
    u = oracle.universe
    F, B = u.coerce(c.F), u.coerce(c.B)
    pre = _run_checks(oracle, F, B, c.k, window_limit=0)
    if not pre.passed:
        raise ValueError(f"input certificate is not valid: {pre.text()}")

    if isinstance(op, Truncation):
        new = truncate(oracle, op.j)
        B2 = _remove_all(u, B, _first_members(u, B, op.j))
        if not new.is_base(B2):
            B2 = complete_to_base(new, B2)
        F2 = F
    elif isinstance(op, DirectSumWith):
        other = parse_oracle(op.other)
        new = direct_sum(oracle, other)
        bn, fn = other.base_pair()
        B2, F2 = SumSet(B, bn), SumSet(F, fn)
    elif isinstance(op, Deletion):
        D = [tuple(e) if isinstance(e, list) else e for e in op.elements]
        D = [Point(*e) if u.kind == "grid" else e for e in D]
        new = delete(oracle, D)
        fin_new = finitarize(new)
        B2 = complete_to_base(new, _remove_all(u, B, D))
        F2 = _remove_all(u, F, D)
        if not (u.is_subset(B2, F2) and fin_new.is_independent(F2) and fin_new.is_base(F2)):
            F2 = complete_to_base(fin_new, B2)
    elif isinstance(op, Contraction):
        T = list(op.elements)
        new = contract_coloops(oracle, T)
        if not all(u.member(B, t) and u.member(F, t) for t in T):
            raise UnsupportedTransport("coloops must lie in both bases")
        B2, F2 = _remove_all(u, B, T), _remove_all(u, F, T)
    else:
        raise UnsupportedTransport(f"cannot transport through {op!r}")

    via = op.describe() if c.transported_via is None else f"{c.transported_via} | {op.describe()}"
    return certify(new, F2, B2, None, window_limit, via=via)


__all__ = [
    "Certificate",
    "CertificateFormatError",
    "Check",
    "Contraction",
    "Deletion",
    "DirectSumWith",
    "Truncation",
    "UnsupportedTransport",
    "base_gap",
    "certify",
    "complete_to_base",
    "sample_completion",
    "transport",
    "verify_certificate",
    "window_augmenter",
    "witness",
    "witness_pair",
]
