"""Symbolic oracles, brute-force checks and base-pair certificates for a
nearly finitary matroid on N x N that is not k-nearly finitary for any k."""

from .combinators import (
    contract_coloops,
    delete,
    direct_sum,
    finitarize,
    parse_oracle,
    restrict_window,
    truncate,
)
from .finite_engine import FiniteMatroid, bases, check_axioms, circuits, coloops, crosscheck, dualize, loops
from .grid_sets import ColumnTail, DeficiencyProfile, Point, Ray, SetExpr, deficiency_profile, normalize
from .oracles import FREE_NAT, M, M1, TOY, Cofinite, Finite
from .witnesses import Certificate, base_gap, transport, verify_certificate, witness

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "Cofinite",
    "ColumnTail",
    "DeficiencyProfile",
    "FREE_NAT",
    "Finite",
    "FiniteMatroid",
    "M",
    "M1",
    "Point",
    "Ray",
    "SetExpr",
    "TOY",
    "base_gap",
    "bases",
    "check_axioms",
    "circuits",
    "coloops",
    "contract_coloops",
    "crosscheck",
    "deficiency_profile",
    "delete",
    "direct_sum",
    "dualize",
    "finitarize",
    "loops",
    "normalize",
    "parse_oracle",
    "restrict_window",
    "transport",
    "truncate",
    "verify_certificate",
    "witness",
]
