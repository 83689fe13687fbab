"""Agent programs: dispersion and exploration on dynamic graphs.

All of them are pure functions of (private state, local view, received
broadcasts).  The cooperative ones share one subroutine: from the
broadcasts they stitch the occupied part of their component and compute a
sliding plan that shifts one agent each along a shortest occupied path
from the coordinating multinode to the nearest hole, filling exactly one
hole per executed plan.  Every agent of the component computes the same
plan from the same broadcasts and moves only if the plan names it.

Registered names:

* ``disp``               execute a sliding plan whenever one exists, else stay
* ``alg1_explicit``      dispersion that terminates after T quiet rounds
* ``alg1_implicit``      dispersion without termination
* ``alg2``               exploration with termination (needs 1-hop views)
* ``alg3``               perpetual exploration: dispersion plans plus a
                         least-ID hole walker when no multinode is around
* ``dispersed_one_round``one-shot exploration from a dispersed start
* ``greedy_port0``       strawman: always exit through port 0
* ``stay``               strawman: never move
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .engine import (
    Action,
    Algorithm,
    AgentState,
    Broadcast,
    ComponentKnowledge,
    LocalView,
    STAY,
    stitch_component,
)


@dataclass(frozen=True)
class SlidingPlan:
    """Ordered (agent ID, exit port) moves along an occupied path; the last
    entry exits through the terminal hole port."""

    moves: tuple[tuple[int, int], ...]

    @property
    def hole_port(self) -> int:
        return self.moves[-1][1]

    def port_for(self, agent: int) -> int | None:
        for a, p in self.moves:
            if a == agent:
                return p
        return None


def disp_plan(ck: ComponentKnowledge) -> SlidingPlan | None:
    """Shortest shift from the coordinating multinode to the nearest hole.

    Coordinator = occupied node whose least co-located agent ID is least
    among multinodes.  BFS over known occupied nodes processes keys in
    ascending order, so parents and the target (least key at minimal
    distance owning a hole port) are deterministic.  Returns None when the
    knowledge holds no multinode or no hole port.
    """
    multis = ck.multinode_keys()
    if not multis:
        return None
    start = multis[0]
    parent: dict[int, int | None] = {start: None}
    frontier = [start]
    target = None
    while frontier:
        frontier.sort()
        for key in frontier:
            if ck.nodes[key].hole_ports:
                target = key
                break
        if target is not None:
            break
        nxt = []
        for key in frontier:
            for _, nb in ck.nodes[key].links:
                if nb in ck.nodes and nb not in parent:
                    parent[nb] = key
                    nxt.append(nb)
        frontier = nxt
    if target is None:
        return None
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()  # coordinator .. target
    moves = []
    for here, there in zip(path, path[1:]):
        port = next(p for p, nb in ck.nodes[here].links if nb == there)
        moves.append((ck.nodes[here].ids[0], port))
    moves.append((ck.nodes[target].ids[0], min(ck.nodes[target].hole_ports)))
    return SlidingPlan(tuple(moves))


def _plan_action(agent: int, msgs: tuple[Broadcast, ...]) -> Action:
    plan = disp_plan(stitch_component(msgs))
    if plan is None:
        return STAY
    port = plan.port_for(agent)
    return STAY if port is None else Action(port=port)


def _hears_multinode(msgs: tuple[Broadcast, ...]) -> bool:
    return any(b.count > 1 for b in msgs)


def _make_alg1(T: int, explicit: bool) -> Algorithm:
    if explicit and (T is None or T < 1):
        raise ValueError("alg1_explicit needs the window length T >= 1")

    def step(state: AgentState, view: LocalView, msgs):
        if _hears_multinode(msgs):
            return _plan_action(state.id, msgs), replace(state, t=0)
        t = state.t + 1
        if explicit and t >= T:
            return Action(terminate=True), replace(state, t=t)
        return STAY, replace(state, t=t)

    return Algorithm("alg1_explicit" if explicit else "alg1_implicit", step)


def _alg2_step(state: AgentState, view: LocalView, msgs):
    if _hears_multinode(msgs):
        return _plan_action(state.id, msgs), state
    holes = view.hole_ports()
    if holes:
        return Action(port=min(holes), terminate=True), state
    return Action(terminate=True), state


def _alg3_step(state: AgentState, view: LocalView, msgs):
    if _hears_multinode(msgs):
        return _plan_action(state.id, msgs), state
    # quiet component: the least-ID agent seeing a hole walks into it
    walkers = [b.sender for b in msgs if b.view.hole_ports()]
    if walkers and min(walkers) == state.id:
        return Action(port=min(view.hole_ports())), state
    return STAY, state


def _disp_step(state: AgentState, view: LocalView, msgs):
    return _plan_action(state.id, msgs), state


def _one_round_step(state: AgentState, view: LocalView, msgs):
    holes = view.hole_ports()
    if holes:
        return Action(port=min(holes), terminate=True), state
    return Action(terminate=True), state


def _greedy_step(state: AgentState, view: LocalView, msgs):
    if view.degree > 0:
        return Action(port=0), state
    return STAY, state


def _stay_step(state: AgentState, view: LocalView, msgs):
    return STAY, state


ALGORITHM_NAMES = (
    "disp",
    "alg1_explicit",
    "alg1_implicit",
    "alg2",
    "alg3",
    "dispersed_one_round",
    "greedy_port0",
    "stay",
)


def make_algorithm(name: str, *, T: int | None = None) -> Algorithm:
    """Instantiate a registered algorithm; only alg1_explicit consumes T."""
    if name == "disp":
        return Algorithm("disp", _disp_step)
    if name == "alg1_explicit":
        return _make_alg1(T, explicit=True)
    if name == "alg1_implicit":
        return _make_alg1(T if T else 1, explicit=False)
    if name == "alg2":
        return Algorithm("alg2", _alg2_step)
    if name == "alg3":
        return Algorithm("alg3", _alg3_step)
    if name == "dispersed_one_round":
        return Algorithm("dispersed_one_round", _one_round_step)
    if name == "greedy_port0":
        return Algorithm("greedy_port0", _greedy_step)
    if name == "stay":
        return Algorithm("stay", _stay_step)
    raise ValueError(f"unknown algorithm {name!r}; known: {ALGORITHM_NAMES}")
