import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from spacetime_games.core import RawAssignment
from spacetime_games.errors import GameStructureError, TensorTooLargeError, UnknownSymbolError
from spacetime_games.histories import enumerate_complete_histories
from spacetime_games.strategic import (
    Strategy,
    check_tensor_size,
    from_normal_form,
    reduce_strategy,
    reduced_strategic_form,
    reduced_strategy_space,
    resolve,
    resolve_reduced,
    strategic_form,
    strategy_label,
    strategy_space,
)

from conftest import dag_games


def profile(g, text):
    """Full profile from a comma-separated action list in point order."""
    return RawAssignment(zip(g.point_ids, text.split(",")))


@pytest.mark.parametrize(
    "agent, size",
    [("A", 6), ("B", 4), ("H", 2), ("J", 2)],
)
def test_running_strategy_spaces(running, agent, size):
    assert len(strategy_space(running, agent)) == size


def test_epr_ulysses_has_four_strategies(epr):
    labels = [strategy_label(epr, "U", s.assignment) for s in strategy_space(epr, "U")]
    assert labels == ["g,r", "g,s", "b,r", "b,s"]


def test_strategy_space_unknown_agent(running):
    with pytest.raises(UnknownSymbolError):
        strategy_space(running, "Z")


def test_resolve_running(running):
    # Points in id order: A.1, A.2, B.1, B.2, H.1, J.1.
    p = profile(running, "b,l,c,e,j,g")
    assert running.format_assignment(resolve(running, p)) == "b,-,e,g,j,l"


def test_resolve_pd(pd):
    assert pd.format_assignment(resolve(pd, profile(pd, "d,d"))) == "d,d"


def test_resolve_epr(epr):
    # Points in id order: A.1, B.1, U.1, U.2, V.1, V.2.
    history = resolve(epr, profile(epr, "c,c,g,r,b,r"))
    assert epr.format_assignment(history) == "c,g,-,c,b,-"
    assert epr.payoff(history) == (10.0, 15.0, 10.0, 12.0)


def test_resolve_rejects_partial_profile(pd):
    with pytest.raises(GameStructureError):
        resolve(pd, RawAssignment({"A.1": "c"}))


def test_running_strategic_form(running):
    nf = strategic_form(running)
    assert nf.agents == ("A", "B", "H", "J")
    assert nf.shape == (6, 4, 2, 2)
    assert nf.cells == 96
    assert nf.payoff_tensor.shape == (6, 4, 2, 2, 4)
    assert len(set(nf.history_annotation.values())) == 14


def test_epr_strategic_form(epr):
    nf = strategic_form(epr)
    assert nf.shape == (2, 2, 4, 4)
    assert len(set(nf.history_annotation.values())) == 16


def test_pd_strategic_form(pd):
    nf = strategic_form(pd)
    assert nf.strategy_labels == (("c", "d"), ("c", "d"))
    assert nf.payoff(("c", "d")) == (0.0, 5.0)
    assert nf.history_annotation[("d", "d")] == "d,d"


@pytest.mark.parametrize(
    "agent, text, expected",
    [
        ("A", "b,k", "b,k"),
        ("A", "a,k", "a,-"),
        ("B", "c,e", "c,e"),
    ],
)
def test_reduce_strategy_running(running, agent, text, expected):
    points = [p.id for p in running.points_of(agent)]
    s = Strategy(agent, RawAssignment(zip(points, text.split(","))))
    reduced = reduce_strategy(running, s)
    assert strategy_label(running, agent, reduced.assignment) == expected


def test_running_reduced_spaces(running):
    sizes = {a: len(reduced_strategy_space(running, a)) for a in running.agents}
    assert sizes == {"A": 4, "B": 4, "H": 2, "J": 2}
    space = reduced_strategy_space(running, "A")
    labels = [strategy_label(running, "A", s.assignment) for s in space]
    assert labels == ["a,-", "b,k", "b,l", "b,m"]


def test_running_reduced_form(running):
    nf = reduced_strategic_form(running)
    assert nf.shape == (4, 4, 2, 2)
    assert len(set(nf.history_annotation.values())) == 14


def test_epr_has_nothing_to_reduce(epr):
    assert reduced_strategic_form(epr).same_tensor(strategic_form(epr))


def test_pd_reduced_form_is_the_strategic_form(pd):
    assert reduced_strategic_form(pd).same_tensor(strategic_form(pd))


@pytest.mark.parametrize(
    "bindings, expected",
    [
        ({"A.1": "a", "B.1": "c", "B.2": "e", "J.1": "g", "H.1": "i"}, "a,c,-,g,i,-"),
        (
            {"A.1": "b", "A.2": "m", "B.1": "c", "B.2": "e", "J.1": "g", "H.1": "j"},
            "b,-,e,g,j,m",
        ),
    ],
)
def test_resolve_reduced_running(running, bindings, expected):
    history = resolve_reduced(running, RawAssignment(bindings))
    assert running.format_assignment(history) == expected


def test_resolve_reduced_pd(pd):
    assert pd.format_assignment(resolve_reduced(pd, profile(pd, "c,d"))) == "c,d"


def test_tensor_guard():
    check_tensor_size([10, 10], max_cells=100)
    with pytest.raises(TensorTooLargeError) as info:
        check_tensor_size([10, 11], max_cells=100)
    assert info.value.cells == 110


def test_strategic_form_respects_guard(running):
    with pytest.raises(TensorTooLargeError):
        strategic_form(running, max_cells=95)


def test_profiles_resolving_alike_share_payoffs(running):
    nf = strategic_form(running)
    by_history = {}
    for labels in nf.profiles():
        by_history.setdefault(nf.history_annotation[labels], set()).add(nf.payoff(labels))
    assert all(len(values) == 1 for values in by_history.values())


def _full_profiles(g):
    spaces = [strategy_space(g, a) for a in g.agents]
    for combo in itertools.product(*spaces):
        merged = RawAssignment()
        for s in combo:
            merged = merged.union(s.assignment)
        yield merged


@settings(max_examples=200, deadline=None)
@given(dag_games())
def test_every_profile_has_exactly_one_complete_history(g):
    complete = enumerate_complete_histories(g)
    for p in _full_profiles(g):
        matches = [h for h in complete if h.is_restriction(p)]
        assert matches == [resolve(g, p)]


@settings(max_examples=200, deadline=None)
@given(dag_games())
def test_every_reduced_profile_has_exactly_one_complete_history(g):
    complete = enumerate_complete_histories(g)
    spaces = [reduced_strategy_space(g, a) for a in g.agents]
    for combo in itertools.product(*spaces):
        rp = RawAssignment()
        for s in combo:
            rp = rp.union(s.assignment)
        matches = [h for h in complete if h.is_restriction(rp)]
        assert matches == [resolve_reduced(g, rp)]


@settings(max_examples=200, deadline=None)
@given(dag_games())
def test_reduced_form_is_a_quotient_of_the_strategic_form(g):
    full, reduced = strategic_form(g), reduced_strategic_form(g)
    assert set(full.history_annotation.values()) == set(reduced.history_annotation.values())
    assert np.isin(reduced.payoff_tensor, full.payoff_tensor).all()


def test_normal_form_embeds_as_simultaneous_moves(pd):
    nf = strategic_form(pd)
    g = from_normal_form(nf)
    assert g.located
    assert len(g.prec) == 0
    assert [p.actions for p in g.points] == [("c", "d"), ("c", "d")]
    assert strategic_form(g).same_tensor(nf)


@settings(max_examples=200, deadline=None)
@given(dag_games())
def test_embedded_strategic_form_round_trips(g):
    nf = strategic_form(g)
    embedded = from_normal_form(nf)
    assert len(enumerate_complete_histories(embedded)) == nf.cells
    assert strategic_form(embedded).same_tensor(nf)
