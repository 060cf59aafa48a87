import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearfin import finite_engine as fe
from nearfin.combinators import (
    FiniteOracle,
    GenericFinitarization,
    NotACalibratedColoop,
    OracleSyntaxError,
    contract_coloops,
    delete,
    direct_sum,
    finitarize,
    parse_oracle,
    restrict_window,
    truncate,
)
from nearfin.finite_engine import FiniteMatroid
from nearfin.grid_sets import Point, SetExpr
from nearfin.oracles import FREE_NAT, M, M1, TOY, Cofinite, NotInGround, SumSet, Tagged, Undecidable

from strategies import infinite_sets, random_infinite_set, seeded, set_exprs
from window_oracles import window_truncation_member


def with_coloops(base_fm, extra):
    """``base_fm`` plus free elements ``extra``, which are coloops."""
    ground = list(base_fm.ground) + list(extra)
    return FiniteMatroid.from_predicate(ground, lambda S: base_fm.is_independent({e for e in S if e not in extra}))


def u24():
    return FiniteMatroid.from_predicate(["a", "b", "c", "d"], lambda S: len(S) <= 2)


# -- finitarization ---------------------------------------------------------


def test_finitarize_known_oracles():
    assert finitarize(M) is M1
    assert finitarize(M1) is M1
    assert finitarize(TOY) is FREE_NAT
    assert finitarize(M).is_independent(SetExpr.column(3))
    assert finitarize(TOY).is_independent(Cofinite(frozenset({5})))
    fo = FiniteOracle(u24())
    assert finitarize(fo) is fo


def test_finitarize_is_a_fixpoint():
    for o in (M, M1, TOY, truncate(M, 2), delete(M, [Point(1, 1)]), direct_sum(M, TOY)):
        f = finitarize(o)
        assert finitarize(f).name == f.name


def test_generic_finitarization_is_partial():
    g = GenericFinitarization(M1)
    assert g.is_independent(SetExpr.finite([(1, 1), (2, 1)]))
    assert not g.is_independent(SetExpr.finite([(1, 1), (1, 2)]))
    with pytest.raises(Undecidable):
        g.is_independent(SetExpr.column(1))


# -- truncation -------------------------------------------------------------


@pytest.mark.parametrize("c", [1, 2, 7])
def test_truncation_rejects_full_columns(c):
    assert not truncate(M1, 1).is_independent(SetExpr.column(c))


def test_truncation_example():
    assert truncate(M1, 2).is_independent(SetExpr.column(5, 3))
    assert window_truncation_member(SetExpr.column(5, 3), 60, 2)
    assert not truncate(M1, 3).is_independent(SetExpr.column(5, 3))


def test_truncation_keeps_finite_sets():
    S = SetExpr.finite([(1, 1), (2, 2)])
    assert truncate(M1, 5).is_independent(S)
    assert truncate(M1, 5).capacity(S) == M1.capacity(S)


def test_truncation_zero_matches_m1_on_samples():
    rng = seeded(3)
    t0 = truncate(M1, 0)
    for _ in range(1000):
        S = random_infinite_set(rng)
        assert t0.is_independent(S) == M1.is_independent(S)


@given(set_exprs, st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_truncation_monotone_in_k(S, k):
    if truncate(M1, k + 1).is_independent(S):
        assert truncate(M1, k).is_independent(S)
    if truncate(M, k + 1).is_independent(S):
        assert truncate(M, k).is_independent(S)


@given(infinite_sets, st.integers(0, 4))
@settings(max_examples=150, deadline=None)
def test_truncation_matches_deletion_superset_search(S, k):
    assert truncate(M1, k).is_independent(S) == window_truncation_member(S, 60, k)


def test_truncated_base_pair():
    t = truncate(M, 1)
    B = SetExpr.column(2, 4)
    assert t.is_base(B) and not t.is_base(SetExpr.column(2, 3))
    assert finitarize(t) is M1


# -- deletion ---------------------------------------------------------------


def test_delete_examples():
    d = delete(M, [Point(1, 1)])
    assert d.is_independent(SetExpr.column(3, 4))
    d = delete(M, [Point(1, 3)])
    assert not d.is_independent(SetExpr.column(3, 2))
    assert d.is_independent(SetExpr.column(3, 4))
    with pytest.raises(NotInGround):
        d.is_independent(SetExpr.column(3, 1))
    assert not d.ground_contains(Point(1, 3))


def test_delete_on_window():
    fm = restrict_window(M1, 2, 2)
    fo = FiniteOracle(fm)
    d = restrict_window(delete(fo, [Point(1, 2)]), 1, 1)
    want = {S for S in fm.independent_sets() if Point(1, 2) not in S}
    assert set(d.independent_sets()) == want


@pytest.mark.parametrize("R,C", [(2, 2), (3, 3), (2, 4)])
def test_delete_commutes_with_restrict(R, C):
    D = [Point(1, 1), Point(2, 2)]
    a = restrict_window(delete(M, D), R, C)
    b = fe.delete(restrict_window(M, R, C), D)
    assert a == b


def test_delete_capacity_avoids_deleted_elements():
    fo = FiniteOracle(u24())
    d = delete(fo, ["c", "d"])
    assert d.capacity(frozenset()) == 2
    assert delete(fo, ["b", "c", "d"]).capacity(frozenset()) == 1


# -- contraction ------------------------------------------------------------


def test_contract_coloops_matches_definition():
    fm = with_coloops(u24(), ["x", "y"])
    assert fe.coloops(fm) == {"x", "y"}
    fo = FiniteOracle(fm)
    for T in (["x"], ["x", "y"]):
        c = contract_coloops(fo, T, evidence=fm)
        got = restrict_window(c, 1, 1)
        assert got == fe.contract(fm, T)
        assert got == fe.delete(fm, T)


def test_contract_with_empty_set_is_identity():
    assert contract_coloops(M, []) is M


def test_contract_rejects_non_coloops():
    fm = restrict_window(M1, 2, 2)
    with pytest.raises(NotACalibratedColoop):
        contract_coloops(FiniteOracle(fm), [Point(1, 1)], evidence=fm)
    with pytest.raises(NotACalibratedColoop):
        contract_coloops(M, [Point(1, 1)])


def test_contract_on_direct_sum_with_free_part():
    free = FiniteOracle(FiniteMatroid.free([1, 2]), "free(2)")
    s = direct_sum(M, free)
    c = contract_coloops(s, [Tagged("R", 1)])
    assert c.is_independent(SumSet(SetExpr.column(3, 4), frozenset({2})))
    with pytest.raises(NotInGround):
        c.is_independent(SumSet(SetExpr(), frozenset({1})))


# -- direct sum -------------------------------------------------------------


def test_direct_sum_examples():
    s = direct_sum(M, FiniteOracle(FiniteMatroid.free(["a", "b"])))
    assert s.is_independent(SumSet(SetExpr.column(3, 4), frozenset({"a"})))
    assert not s.is_independent(SumSet(SetExpr.column(3), frozenset()))


def test_direct_sum_bases_are_pairwise_unions():
    s = direct_sum(M1, M1)
    fm = restrict_window(s, 2, 2)
    one = restrict_window(M1, 2, 2)
    want = {frozenset(Tagged("L", e) for e in a) | frozenset(Tagged("R", e) for e in b)
            for a in fe.bases(one) for b in fe.bases(one)}
    assert set(fe.bases(fm)) == want
    assert fe.check_axioms(fm).passed


def test_direct_sum_is_componentwise_on_windows():
    s = direct_sum(M, truncate(M1, 1))
    fm = restrict_window(s, 2, 2)
    left, right = restrict_window(M, 2, 2), restrict_window(truncate(M1, 1), 2, 2)
    for S in fm.independent_sets():
        assert left.is_independent({e.element for e in S if e.side == "L"})
        assert right.is_independent({e.element for e in S if e.side == "R"})
    assert int(fm.indep.sum()) == int(left.indep.sum()) * int(right.indep.sum())


def test_toy_sum_capacity():
    s = direct_sum(M, TOY)
    B, F = s.base_pair()
    assert s.is_base(B)
    assert finitarize(s).is_base(F)
    assert finitarize(s).capacity(B) == 3


# -- restriction ------------------------------------------------------------


@pytest.mark.parametrize("R", [1, 2, 3, 4])
@pytest.mark.parametrize("C", [1, 2, 3, 4])
def test_m_and_m1_windows_agree(R, C):
    assert restrict_window(M, R, C) == restrict_window(M1, R, C)


def test_restrict_window_counts():
    fm = restrict_window(M1, 2, 2)
    assert int(fm.indep.sum()) == 10 and len(fe.bases(fm)) == 5


# -- grammar ----------------------------------------------------------------


@pytest.mark.parametrize(
    "text,name",
    [
        ("m", "m"),
        ("m1", "m1"),
        ("toy", "toy"),
        ("trunc(2, m1)", "trunc(2,m1)"),
        ("del([(1,1), (2,2)],m)", "del([(1,1),(2,2)],m)"),
        ("sum(m,toy)", "sum(m,toy)"),
        ("fin(m)", "m1"),
        ("fin(trunc(1,m))", "m1"),
        ("sum(m,free(2))", "sum(m,free(2))"),
        ("con([R:1],sum(m,free(2)))", "con([R:1],sum(m,free(2)))"),
    ],
)
def test_parse_oracle(text, name):
    assert parse_oracle(text).name == name


@pytest.mark.parametrize("text", ["", "mm", "trunc(m1)", "trunc(2,m1", "del([(1,1)],toy)", "m extra", "con([(1,1)],m)"])
def test_parse_errors(text):
    with pytest.raises((OracleSyntaxError, NotACalibratedColoop)):
        parse_oracle(text)


def test_names_round_trip():
    for text in ("trunc(3,sum(m,toy))", "del([(1,1),(2,2)],trunc(1,m))", "sum(m1,free(3))"):
        o = parse_oracle(text)
        assert parse_oracle(o.name).name == o.name
