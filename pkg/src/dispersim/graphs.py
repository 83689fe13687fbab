"""Port-labeled dynamic graphs and time-windowed connectivity checks.

A dynamic graph here is a finite sequence of per-round snapshots over a
fixed node set 0..n-1.  Every snapshot is a simple undirected graph whose
edge endpoints are labeled with ports: the ports at a node of degree d are
exactly 0..d-1.  Port labels carry no meaning from one round to the next.

Three properties classify a sequence by sliding windows of T rounds
(only complete windows, i.e. window starts r in [0, rounds-T], are checked):

* ``t_interval``        the intersection of every window is connected
* ``t_path``            every node pair shares a component in at least one
                        round of every window
* ``connectivity_time`` the union of every window is connected
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

PROPERTIES = ("t_interval", "t_path", "connectivity_time")


class GraphError(ValueError):
    """Malformed snapshot, schedule, or window query."""


@dataclass(frozen=True)
class Edge:
    """Undirected edge u-v with the port labels at each endpoint."""

    u: int
    v: int
    port_u: int
    port_v: int


class Snapshot:
    """One round of a dynamic graph: a simple port-labeled graph on n nodes.

    Validates on construction that endpoints are in range, there are no
    self-loops or duplicate edges, and the ports at every node are exactly
    a permutation of 0..deg-1.
    """

    __slots__ = ("n", "edges", "pairs", "ports")

    def __init__(self, n: int, edges) -> None:
        if n < 1:
            raise GraphError(f"snapshot needs at least one node, got n={n}")
        normalized = []
        for e in edges:
            u, v, pu, pv = e.u, e.v, e.port_u, e.port_v
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if u > v:
                u, v, pu, pv = v, u, pv, pu
            normalized.append(Edge(u, v, pu, pv))
        normalized.sort(key=lambda e: (e.u, e.v))
        pairs = set()
        ports: dict[int, dict[int, int]] = {v: {} for v in range(n)}
        for e in normalized:
            if (e.u, e.v) in pairs:
                raise GraphError(f"duplicate edge {e.u}-{e.v}")
            pairs.add((e.u, e.v))
            for a, pa, b in ((e.u, e.port_u, e.v), (e.v, e.port_v, e.u)):
                if pa in ports[a]:
                    raise GraphError(f"node {a} uses port {pa} twice")
                ports[a][pa] = b
        for v, pmap in ports.items():
            if pmap and sorted(pmap) != list(range(len(pmap))):
                raise GraphError(
                    f"node {v} ports {sorted(pmap)} are not 0..{len(pmap) - 1}"
                )
        self.n = n
        self.edges = tuple(normalized)
        self.pairs = frozenset(pairs)
        self.ports = ports

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Snapshot":
        """Build a snapshot with canonical ports: each node numbers its
        neighbors in ascending node order."""
        nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
        seen = set()
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"pair {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        port_of = {
            v: {w: i for i, w in enumerate(sorted(ws))} for v, ws in nbrs.items()
        }
        edges = [
            Edge(u, v, port_of[u][v], port_of[v][u]) for u, v in sorted(seen)
        ]
        return cls(n, edges)

    def degree(self, v: int) -> int:
        return len(self.ports[v])

    def neighbor(self, v: int, port: int) -> int:
        """Node reached from v through the given port."""
        try:
            return self.ports[v][port]
        except KeyError:
            raise GraphError(f"node {v} has no port {port}") from None

    def port_items(self, v: int):
        """(port, neighbor) pairs at v in ascending port order."""
        return sorted(self.ports[v].items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Snapshot)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Snapshot(n={self.n}, edges={len(self.edges)})"


def _components_from_pairs(n: int, pairs) -> list[list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def components(snapshot: Snapshot) -> list[list[int]]:
    """Connected components, each sorted, ordered by least member."""
    return _components_from_pairs(snapshot.n, snapshot.pairs)


def _diameter(n: int, pairs) -> float:
    """Longest shortest path; math.inf when disconnected."""
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for s in range(n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if len(dist) < n:
            return math.inf
        best = max(best, max(dist.values()))
    return best


class Schedule:
    """A finite trace of snapshots over a fixed node set."""

    def __init__(self, snapshots) -> None:
        snapshots = list(snapshots)
        if not snapshots:
            raise GraphError("schedule needs at least one round")
        n = snapshots[0].n
        for i, s in enumerate(snapshots):
            if s.n != n:
                raise GraphError(f"round {i} has n={s.n}, expected {n}")
        self.n = n
        self.snapshots = tuple(snapshots)
        self._diameter_cache: float | None = None

    @property
    def rounds(self) -> int:
        return len(self.snapshots)

    def snapshot(self, r: int) -> Snapshot:
        if not 0 <= r < self.rounds:
            raise GraphError(f"round {r} outside trace of {self.rounds} rounds")
        return self.snapshots[r]

    def dynamic_diameter(self) -> float:
        """Max over rounds of the per-round diameter (inf if ever split)."""
        if self._diameter_cache is None:
            self._diameter_cache = max(
                _diameter(self.n, s.pairs) for s in self.snapshots
            )
        return self._diameter_cache

    def to_text(self) -> str:
        lines = [f"n={self.n} rounds={self.rounds}"]
        for r, s in enumerate(self.snapshots):
            parts = [
                f"{e.u}-{e.v}:{e.port_u},{e.port_v}" for e in s.edges
            ]
            lines.append(f"r={r}:" + ("" if not parts else " " + " ".join(parts)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Schedule":
        lines = text.splitlines()
        header = None
        body_start = 0
        for i, raw in enumerate(lines):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            header = line
            body_start = i + 1
            break
        if header is None:
            raise GraphError("empty schedule file")
        m = re.fullmatch(r"n=(\d+) rounds=(\d+)", header)
        if not m:
            raise GraphError(f"line {body_start}: bad header {header!r}")
        n, rounds = int(m.group(1)), int(m.group(2))
        snaps: list[Snapshot | None] = [None] * rounds
        for i in range(body_start, len(lines)):
            line = lines[i].split("#", 1)[0].strip()
            if not line:
                continue
            lineno = i + 1
            m = re.fullmatch(r"r=(\d+):(.*)", line)
            if not m:
                raise GraphError(f"line {lineno}: expected 'r=<r>: <edges>'")
            r = int(m.group(1))
            if not 0 <= r < rounds:
                raise GraphError(f"line {lineno}: round {r} outside 0..{rounds - 1}")
            if snaps[r] is not None:
                raise GraphError(f"line {lineno}: round {r} listed twice")
            edges = []
            for tok in m.group(2).split():
                em = re.fullmatch(r"(\d+)-(\d+):(\d+),(\d+)", tok)
                if not em:
                    raise GraphError(f"line {lineno}: bad edge token {tok!r}")
                edges.append(Edge(*(int(g) for g in em.groups())))
            try:
                snaps[r] = Snapshot(n, edges)
            except GraphError as exc:
                raise GraphError(f"line {lineno}: {exc}") from None
        missing = [r for r, s in enumerate(snaps) if s is None]
        if missing:
            raise GraphError(f"missing rounds: {missing}")
        return cls(snaps)

    @classmethod
    def load(cls, path) -> "Schedule":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    def __eq__(self, other) -> bool:
        return isinstance(other, Schedule) and self.snapshots == other.snapshots

    def __repr__(self) -> str:
        return f"Schedule(n={self.n}, rounds={self.rounds})"


def window_graph(schedule: Schedule, r: int, T: int, mode: str) -> Snapshot:
    """Intersection or union of rounds r..r+T-1, ports dropped (the result
    carries canonical ports over the combined edge set)."""
    if mode not in ("intersection", "union"):
        raise GraphError(f"unknown window mode {mode!r}")
    if T < 1:
        raise GraphError(f"window length must be >= 1, got {T}")
    if not 0 <= r <= schedule.rounds - T:
        raise GraphError(
            f"window [{r}, {r + T - 1}] outside trace of {schedule.rounds} rounds"
        )
    pairs = set(schedule.snapshots[r].pairs)
    for i in range(r + 1, r + T):
        if mode == "intersection":
            pairs &= schedule.snapshots[i].pairs
        else:
            pairs |= schedule.snapshots[i].pairs
    return Snapshot.from_pairs(schedule.n, pairs)


@dataclass(frozen=True)
class ConnectivityReport:
    """Outcome of one property check at one window length."""

    property: str
    T: int
    holds: bool
    witness: tuple[int, tuple[int, int]] | None
    dynamic_diameter: float

    def describe(self) -> str:
        verdict = "holds" if self.holds else "fails"
        out = f"{self.property} at T={self.T}: {verdict}"
        if self.witness is not None:
            r, (u, v) = self.witness
            out += f" (window at r={r}, pair {u}-{v})"
        d = self.dynamic_diameter
        out += f"; dynamic diameter {'inf' if d == math.inf else int(d)}"
        return out


def check_property(schedule: Schedule, prop: str, T: int) -> ConnectivityReport:
    """Check one window property over all complete windows of the trace.

    The witness of a failure is the first failing window start together
    with the least node pair split by it.
    """
    if prop not in PROPERTIES:
        raise GraphError(f"unknown property {prop!r}")
    if T < 1:
        raise GraphError(f"T must be >= 1, got {T}")
    if T > schedule.rounds:
        raise GraphError(
            f"insufficient trace: T={T} but only {schedule.rounds} rounds"
        )
    n = schedule.n
    witness = None
    if prop == "t_path":
        # label[r][v] = least member of v's component at round r
        labels = []
        for s in schedule.snapshots:
            lab = [0] * n
            for comp in components(s):
                for v in comp:
                    lab[v] = comp[0]
            labels.append(lab)
        for r in range(schedule.rounds - T + 1):
            win = labels[r : r + T]
            for u in range(n):
                for v in range(u + 1, n):
                    if not any(lab[u] == lab[v] for lab in win):
                        witness = (r, (u, v))
                        break
                if witness:
                    break
            if witness:
                break
    else:
        mode = "intersection" if prop == "t_interval" else "union"
        for r in range(schedule.rounds - T + 1):
            comps = _components_from_pairs(
                n, window_graph(schedule, r, T, mode).pairs
            )
            if len(comps) > 1:
                witness = (r, (comps[0][0], comps[1][0]))
                break
    return ConnectivityReport(
        property=prop,
        T=T,
        holds=witness is None,
        witness=witness,
        dynamic_diameter=schedule.dynamic_diameter(),
    )


def minimal_T(schedule: Schedule, prop: str) -> int | None:
    """Least T in 1..rounds at which the property holds, or None."""
    for T in range(1, schedule.rounds + 1):
        if check_property(schedule, prop, T).holds:
            return T
    return None
