"""Sliding plans and the registered agent programs on small fixed graphs."""

from __future__ import annotations

import pytest

from dispersim.algorithms import SlidingPlan, disp_plan, make_algorithm
from dispersim.engine import ComponentKnowledge, NodeKnowledge, run
from dispersim.graphs import Schedule, Snapshot


def ck_of(*nodes):
    return ComponentKnowledge(
        nodes={nd.key: nd for nd in nodes}
    )


def nk(key, ids, holes=(), links=()):
    return NodeKnowledge(key=key, ids=tuple(ids), hole_ports=tuple(holes),
                         links=tuple(links))


def static(snapshot, rounds):
    return Schedule([snapshot] * rounds)


def path4():
    return Snapshot.from_pairs(4, [(0, 1), (1, 2), (2, 3)])


def star(n):
    return Snapshot.from_pairs(n, [(0, i) for i in range(1, n)])


# --- disp_plan ---


def test_plan_none_without_multinode_or_hole():
    assert disp_plan(ck_of(nk(1, (1,), holes=(0,)))) is None
    assert disp_plan(ck_of(nk(1, (1, 2)), nk(3, (3,), links=((0, 1),)))) is None


def test_plan_direct_hole_at_coordinator():
    plan = disp_plan(ck_of(nk(1, (1, 2), holes=(2, 0))))
    assert plan == SlidingPlan(((1, 0),))
    assert plan.hole_port == 0


def test_plan_shifts_along_path():
    ck = ck_of(
        nk(1, (1, 5), links=((0, 2),)),
        nk(2, (2,), holes=(1,), links=((0, 1),)),
    )
    assert disp_plan(ck) == SlidingPlan(((1, 0), (2, 1)))


def test_plan_prefers_least_key_coordinator_and_target():
    # two multinodes: coordinator is the one holding agent 1;
    # two equal-distance holes: target is the least key
    ck = ck_of(
        nk(1, (1, 9), links=((0, 2), (1, 3))),
        nk(2, (2,), holes=(0,), links=((0, 1),)),
        nk(3, (3, 4), holes=(0,), links=((0, 1),)),
    )
    plan = disp_plan(ck)
    assert plan == SlidingPlan(((1, 0), (2, 0)))


def test_plan_parent_choice_is_least_key_discoverer():
    # keys 1 and 2 both link to 4; BFS must route 4 through 1
    ck = ck_of(
        nk(1, (1, 8), links=((0, 2), (1, 4))),
        nk(2, (2,), links=((0, 1), (1, 4))),
        nk(4, (4,), holes=(0,), links=((0, 1), (1, 2))),
    )
    plan = disp_plan(ck)
    assert plan.moves == ((1, 1), (4, 0))


# --- algorithm behavior on fixed graphs ---


def test_alg1_explicit_on_static_path():
    # all four agents start together; plans disperse them in 3 rounds and
    # T=1 lets everyone terminate one quiet round later
    res = run(static(path4(), 10), {1: 1, 2: 1, 3: 1, 4: 1},
              make_algorithm("alg1_explicit", T=1), max_rounds=10, T=1)
    assert res.dispersed_at == 2
    assert res.all_terminated_at == 3
    assert not res.budget_exhausted
    assert sorted(res.final.positions.values()) == [0, 1, 2, 3]


def test_alg1_implicit_never_terminates():
    res = run(static(path4(), 10), {1: 1, 2: 1, 3: 1, 4: 1},
              make_algorithm("alg1_implicit"), max_rounds=10, T=1)
    assert res.dispersed_at == 2
    assert res.all_terminated_at is None
    assert res.budget_exhausted


def test_alg1_explicit_requires_T():
    with pytest.raises(ValueError):
        make_algorithm("alg1_explicit")


def test_alg2_explores_star_and_terminates():
    res = run(static(star(4), 10), {1: 0, 2: 0, 3: 0},
              make_algorithm("alg2"), max_rounds=10)
    assert res.explored_at == 2
    assert res.all_terminated_at == 2
    assert res.dispersed_at == 1
    # the last two movers leave the center for distinct leaves
    assert sorted(res.final.positions.values()) == [1, 2, 3]


def test_alg2_can_end_with_a_multinode():
    # two agents, both seeing the same single hole, may both enter it on
    # their terminating round; exploration still succeeded
    two = Snapshot.from_pairs(3, [(0, 2), (1, 2)])
    res = run(static(two, 5), {1: 0, 2: 1}, make_algorithm("alg2"),
              max_rounds=5)
    assert res.explored_at == 0
    assert res.all_terminated_at == 0
    assert res.final.positions == {1: 2, 2: 2}


def test_dispersed_one_round_full_and_partial():
    # k = n dispersed: nothing to see, everyone terminates in place
    res = run(static(path4(), 3), {1: 0, 2: 1, 3: 2, 4: 3},
              make_algorithm("dispersed_one_round"), max_rounds=3)
    assert res.explored_at == 0
    assert res.all_terminated_at == 0
    assert res.final.positions == {1: 0, 2: 1, 3: 2, 4: 3}
    # k = n-1 dispersed on a star: the center agent fills the last hole
    res = run(static(star(4), 3), {1: 0, 2: 1, 3: 2},
              make_algorithm("dispersed_one_round"), max_rounds=3)
    assert res.explored_at == 0
    assert res.all_terminated_at == 0
    assert res.final.positions[1] == 3


def test_alg3_walks_holes_when_quiet():
    # k = n-1 dispersed: the single hole gets entered on the first quiet
    # round by the least agent beside it, then the walk chases the hole
    res = run(static(path4(), 6), {1: 0, 2: 1, 3: 2},
              make_algorithm("alg3"), max_rounds=6)
    assert res.explored_at == 0
    assert res.all_terminated_at is None
    movers = [a for a, act in res.records[0].actions.items()
              if act.port is not None]
    assert movers == [3]  # only agent 3 sits beside the hole at round 0


def test_greedy_port0_marches():
    res = run(static(path4(), 2), {1: 3}, make_algorithm("greedy_port0"),
              max_rounds=2)
    assert res.records[0].actions[1].port == 0
    assert res.final.positions[1] == 1  # 3 -> 2 -> 1 via port 0


def test_zero_hop_visibility_disables_hole_hunting():
    # without per-port views no plan ever finds a hole: everyone stays
    res = run(static(path4(), 4), {1: 1, 2: 1}, make_algorithm("alg1_implicit"),
              visibility="zero", max_rounds=4)
    assert res.final.positions == {1: 1, 2: 1}
    assert res.dispersed_at is None


def test_unknown_algorithm_rejected():
    with pytest.raises(ValueError):
        make_algorithm("alg9")
