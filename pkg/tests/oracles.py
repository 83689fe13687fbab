"""Brute-force reference implementations used only by tests.

Deliberately naive and structurally different from the package code:
reachability via boolean matrix closure, partitions as frozensets.
"""

from __future__ import annotations


def reach_matrix(n, pairs):
    """Boolean reachability closure of one edge set."""
    reach = [[i == j for j in range(n)] for i in range(n)]
    for u, v in pairs:
        reach[u][v] = reach[v][u] = True
    for _ in range(n):
        changed = False
        for i in range(n):
            for j in range(n):
                if not reach[i][j] and any(
                    reach[i][k] and reach[k][j] for k in range(n)
                ):
                    reach[i][j] = True
                    changed = True
        if not changed:
            break
    return reach


def partition(n, pairs):
    """Components as a frozenset of frozensets."""
    reach = reach_matrix(n, pairs)
    return frozenset(
        frozenset(j for j in range(n) if reach[i][j]) for i in range(n)
    )


def is_connected(n, pairs):
    return len(partition(n, pairs)) == 1


def window_pairs(pair_sets, r, T, union):
    acc = set(pair_sets[r])
    for i in range(r + 1, r + T):
        if union:
            acc |= pair_sets[i]
        else:
            acc &= pair_sets[i]
    return acc


def oracle_holds(n, pair_sets, prop, T):
    """Exhaustive window-by-window property check."""
    R = len(pair_sets)
    assert 1 <= T <= R
    for r in range(R - T + 1):
        if prop == "t_interval":
            if not is_connected(n, window_pairs(pair_sets, r, T, union=False)):
                return False
        elif prop == "connectivity_time":
            if not is_connected(n, window_pairs(pair_sets, r, T, union=True)):
                return False
        elif prop == "t_path":
            reaches = [
                reach_matrix(n, pair_sets[i]) for i in range(r, r + T)
            ]
            for u in range(n):
                for v in range(u + 1, n):
                    if not any(m[u][v] for m in reaches):
                        return False
        else:
            raise AssertionError(prop)
    return True
