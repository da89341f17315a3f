import dataclasses

import pytest
from hypothesis import given, settings

from spacetime_games.core import (
    DecisionPoint,
    DecisionPointId,
    SpacetimeGame,
    check_consistency,
    transitive_reduction,
)
from spacetime_games.errors import GameStructureError, NotPerfectInformationError
from spacetime_games.extensive import (
    Linearization,
    Verdict,
    enumerate_linearizations,
    from_perfect_information,
    has_perfect_recall,
    is_spacetime_interpretable,
    linearize,
    prefix_histories,
    strategic_form_efg,
    to_extensive,
    validate_efg,
)
from spacetime_games.strategic import reduced_strategic_form, strategic_form

from conftest import dag_games, perfect_information_trees


def ids(*texts):
    return tuple(DecisionPointId.parse(t) for t in texts)


def chain():
    return SpacetimeGame.build(
        [DecisionPoint(p, ("a", "b")) for p in ids("A.1", "B.1", "C.1")],
        precedence=[("A.1", "B.1"), ("B.1", "C.1")],
        allow_spacelike_agent=True,
    )


class TestLinearize:
    def test_chain(self):
        assert linearize(chain()).order == ids("A.1", "B.1", "C.1")

    def test_pd(self, pd):
        assert linearize(pd).order == ids("A.1", "B.1")

    def test_running_extends_precedence(self, running):
        order = linearize(running).order
        assert order == ids("A.1", "B.1", "B.2", "J.1", "H.1", "A.2")
        for p, q in running.prec:
            assert order.index(p) < order.index(q)


class TestEnumerateLinearizations:
    def test_chain(self):
        assert len(enumerate_linearizations(chain())) == 1

    def test_pd(self, pd):
        assert len(enumerate_linearizations(pd)) == 2

    def test_running(self, running):
        found = enumerate_linearizations(running)
        assert len(found) == 20
        assert not found.truncated
        assert len({lin.order for lin in found}) == 20
        assert linearize(running) in found.orders

    def test_cap_truncates(self, epr, caplog):
        found = enumerate_linearizations(epr, cap=50)
        assert len(found) == 50
        assert found.truncated
        assert "cap of 50" in caplog.text
        assert len(enumerate_linearizations(epr, cap=100)) == 80


class TestPrefixHistories:
    def test_pd(self, pd):
        assert [pd.format_assignment(h) for h in prefix_histories(pd)] == ["-,-", "c,-", "d,-"]

    def test_epr_declared_order(self, epr):
        prefixes = prefix_histories(epr, Linearization(epr.order))
        strings = [epr.format_assignment(h) for h in prefixes]
        assert len(strings) == 15
        assert strings[0] == "-,-,-,-,-,-"
        assert strings[:4] == ["-,-,-,-,-,-", "c,-,-,-,-,-", "c,g,-,-,-,-", "c,g,-,c,-,-"]
        assert "f,-,s,f,-,-" in strings

    def test_rejects_non_linearization(self, running):
        with pytest.raises(GameStructureError):
            prefix_histories(
                running, Linearization(ids("A.2", "A.1", "B.1", "B.2", "J.1", "H.1"))
            )


class TestToExtensive:
    def test_epr(self, epr):
        e = to_extensive(epr)
        assert len(e.information_sets) == 6
        assert len(e.nodes) == 15
        assert len(e.outcomes) == 16

    def test_pd(self, pd):
        e = to_extensive(pd)
        assert e.players[e.root] == "A"
        assert e.information_set("B.1").nodes == ("c,-", "d,-")
        assert len(e.outcomes) == 4

    def test_promise(self, promise):
        e = to_extensive(promise)
        assert len(e.nodes) == 2
        assert len(e.outcomes) == 3
        assert all(len(iset.nodes) == 1 for iset in e.information_sets)

    def test_running(self, running):
        e = to_extensive(running)
        assert len(e.nodes) == 12
        assert len(e.outcomes) == 14
        assert len(prefix_histories(running)) == 12

    def test_outcomes_carry_payoffs(self, running):
        e = to_extensive(running)
        h = running.parse_assignment("b,-,e,g,j,k")
        assert e.utilities["b,-,e,g,j,k"] == running.payoff(h)

    def test_play_follows_choices(self, promise):
        e = to_extensive(promise)
        assert e.play({"A.1": "c", "B.1": "d"}) == "c,d"
        assert e.play({"A.1": "d", "B.1": "c"}) == "d,-"


class TestValidate:
    def test_constructed_trees_are_valid(self, any_game):
        assert validate_efg(to_extensive(any_game)).is_clean

    def test_counter_is_valid(self, counter):
        assert validate_efg(counter).is_clean

    def test_information_set_mixing_players(self, pd):
        e = to_extensive(pd)
        players = {**e.players, "d,-": "A"}
        report = validate_efg(dataclasses.replace(e, players=players))
        assert not report.is_clean
        assert any("player function" in v for v in report.violations)

    def test_two_roots(self, pd):
        e = to_extensive(pd)
        broken = dataclasses.replace(
            e, outcomes=(*e.outcomes, "orphan"), utilities={**e.utilities, "orphan": (0.0, 0.0)}
        )
        report = validate_efg(broken)
        assert any("single connected component" in v for v in report.violations)

    def test_successor_not_injective(self, pd):
        e = to_extensive(pd)
        successors = {**e.successors, ("d,-", "d"): "d,c"}
        report = validate_efg(dataclasses.replace(e, successors=successors))
        assert any("not injective" in v for v in report.violations)

    def test_node_outside_partition(self, pd):
        e = to_extensive(pd)
        report = validate_efg(dataclasses.replace(e, information_sets=e.information_sets[:1]))
        assert any("information partition" in v for v in report.violations)


class TestPerfectRecall:
    def test_running(self, running):
        assert has_perfect_recall(to_extensive(running))

    def test_counter(self, counter):
        assert has_perfect_recall(counter)

    def test_absent_minded(self, absent_minded):
        assert not has_perfect_recall(absent_minded)


class TestStrategicFormEfg:
    def test_running_matches_spacetime_form(self, running):
        assert strategic_form_efg(to_extensive(running)).same_tensor(strategic_form(running))

    def test_promise(self, promise):
        nf = strategic_form_efg(to_extensive(promise))
        assert nf.strategy_labels == (("c", "d"), ("c", "d"))
        assert nf.payoff(("c", "d")) == (0.0, 3.0)
        assert nf.history_annotation[("d", "c")] == "d,-"

    def test_pd(self, pd):
        assert strategic_form_efg(to_extensive(pd)).same_tensor(strategic_form(pd))

    def test_every_linearization_gives_the_same_form(self, running):
        expected = strategic_form(running)
        for lin in enumerate_linearizations(running):
            assert strategic_form_efg(to_extensive(running, lin)).same_tensor(expected)


class TestInterpretability:
    def test_counter_fails_knowledge_transitivity(self, counter):
        verdict = is_spacetime_interpretable(counter)
        assert verdict.verdict is Verdict.NO
        assert str(verdict) == "No: knowledge transitivity violated (C/B/A)"
        assert verdict.information_sets == ("A.1", "B.1", "C.1")

    def test_absent_minded_fails_perfect_recall(self, absent_minded):
        verdict = is_spacetime_interpretable(absent_minded)
        assert verdict.verdict is Verdict.NO
        assert "perfect recall" in verdict.reason

    def test_invalid_tree_is_rejected(self, pd):
        e = to_extensive(pd)
        verdict = is_spacetime_interpretable(
            dataclasses.replace(e, information_sets=e.information_sets[:1])
        )
        assert verdict.verdict is Verdict.NO
        assert verdict.reason.startswith("not a valid extensive form")

    def test_epr_round_trip(self, epr):
        verdict = is_spacetime_interpretable(to_extensive(epr))
        assert verdict.verdict is Verdict.YES
        witness_edges = set(transitive_reduction(verdict.witness.prec))
        assert witness_edges == set(transitive_reduction(epr.prec))
        assert verdict.to_dict()["verdict"] == "Yes"

    def test_witness_is_verified(self, running):
        e = to_extensive(running)
        verdict = is_spacetime_interpretable(e)
        assert verdict.verdict is Verdict.YES
        rebuilt = to_extensive(verdict.witness, verdict.linearization)
        assert len(verdict.mapping) == len(e.nodes) + len(e.outcomes)
        assert set(verdict.mapping.values()) == set(rebuilt.nodes) | set(rebuilt.outcomes)
        assert reduced_strategic_form(verdict.witness).same_tensor(reduced_strategic_form(running))

    def test_budget_exhaustion_is_unknown(self, epr, caplog):
        verdict = is_spacetime_interpretable(to_extensive(epr), bound=0)
        assert verdict.verdict is Verdict.UNKNOWN
        assert "budget" in verdict.reason
        assert "stopped after 0 linearizations" in caplog.text

    def test_negative_budget_stops_at_once(self, promise):
        verdict = is_spacetime_interpretable(to_extensive(promise), bound=-3)
        assert verdict.verdict is Verdict.UNKNOWN
        assert verdict.reason == "search budget of -3 linearizations exhausted"


def _children_differ_at_one_point(g, e):
    for h in e.nodes:
        parent = g.parse_assignment(h)
        added = set()
        for _, child in e.children(h):
            extra = set(g.parse_assignment(child).items()) - set(parent.items())
            if len(extra) != 1:
                return False
            added.add(next(iter(extra))[0])
        if len(added) != 1:
            return False
    return True


def test_children_differ_at_a_single_point(any_game):
    for lin in enumerate_linearizations(any_game):
        assert _children_differ_at_one_point(any_game, to_extensive(any_game, lin))


@settings(max_examples=200, deadline=None)
@given(dag_games())
def test_form_is_invariant_under_linearization(g):
    expected = strategic_form(g)
    for lin in enumerate_linearizations(g, cap=10):
        assert strategic_form_efg(to_extensive(g, lin)).same_tensor(expected)


@settings(max_examples=100, deadline=None)
@given(dag_games(max_points=5, chain_agents=True))
def test_round_trip_is_interpretable(g):
    e = to_extensive(g)
    assert has_perfect_recall(e)
    verdict = is_spacetime_interpretable(e)
    assert verdict.verdict is Verdict.YES
    assert reduced_strategic_form(verdict.witness).same_tensor(reduced_strategic_form(g))


class TestFromPerfectInformation:
    def test_promise_tree_is_reproduced(self, promise):
        e = to_extensive(promise)
        g = from_perfect_information(e)
        assert [str(p) for p in g.order] == ["A.1", "B.1"]
        assert g.located
        assert len(g.prec) == 1
        assert to_extensive(g) == e
        assert strategic_form(g).same_tensor(strategic_form(promise))

    def test_imperfect_information_is_rejected(self, pd, counter):
        with pytest.raises(NotPerfectInformationError):
            from_perfect_information(to_extensive(pd))
        with pytest.raises(NotPerfectInformationError):
            from_perfect_information(counter)

    def test_invalid_tree_is_rejected(self, promise):
        e = to_extensive(promise)
        broken = dataclasses.replace(e, utilities={**e.utilities, "d,-": (2.0,)})
        with pytest.raises(GameStructureError):
            from_perfect_information(broken)

    @settings(max_examples=200, deadline=None)
    @given(perfect_information_trees())
    def test_chain_has_the_same_strategic_form(self, e):
        g = from_perfect_information(e)
        assert check_consistency(g).is_clean
        assert len(g.prec) == len(g.points) * (len(g.points) - 1) // 2
        assert strategic_form(g).same_tensor(strategic_form_efg(e))
        tree = to_extensive(g)
        assert (len(tree.nodes), len(tree.outcomes)) == (len(e.nodes), len(e.outcomes))
