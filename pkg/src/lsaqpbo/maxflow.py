"""s-t max-flow / min-cut for submodular binary energies.

Labels follow the cut side: a variable on the source side of the minimum
cut gets label 1, a variable on the sink side gets label 0.  The source
side returned is the set reachable from the source in the final residual
graph, so a variable with no terminal capacity ends up labelled 0.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .energy import BinaryEnergy, NonSubmodularError, eval_energy

RESIDUAL_RTOL = 1e-12


class FlowNetwork:
    """Directed network with paired residual arcs.

    Arc ``k`` and arc ``k ^ 1`` are each other's reverse.  Node ``n`` is the
    source and ``n + 1`` the sink, where ``n`` is the number of variables.
    """

    def __init__(self, num_vars: int, offset: float = 0.0):
        self.num_vars = num_vars
        self.source = num_vars
        self.sink = num_vars + 1
        self.offset = offset
        self.head: list[int] = []
        self.capacity: list[float] = []
        self.residual: list[float] = []
        self.adj: list[list[int]] = [[] for _ in range(num_vars + 2)]

    @property
    def num_nodes(self) -> int:
        return self.num_vars + 2

    @property
    def num_arcs(self) -> int:
        return len(self.head)

    def add_arc(self, u: int, v: int, cap: float, rev_cap: float = 0.0) -> int:
        if cap < 0 or rev_cap < 0:
            raise ValueError("arc capacities must be nonnegative")
        k = len(self.head)
        self.head += [v, u]
        self.capacity += [cap, rev_cap]
        self.residual += [cap, rev_cap]
        self.adj[u].append(k)
        self.adj[v].append(k + 1)
        return k

    def tail(self, k: int) -> int:
        return self.head[k ^ 1]

    def flow(self) -> np.ndarray:
        """Net flow on every arc (antisymmetric between an arc and its pair)."""
        cap = np.asarray(self.capacity)
        res = np.asarray(self.residual)
        return cap - res

    def cut_cost(self, labels) -> float:
        """Capacity of the cut induced by ``labels`` (label 1 = source side)."""
        side = np.append(np.asarray(labels, dtype=bool), [True, False])
        head = np.asarray(self.head)
        tail = head.reshape(-1, 2)[:, ::-1].ravel()
        cap = np.asarray(self.capacity)
        cut = side[tail] & ~side[head]
        return float(cap[cut].sum())


def build_flow_network(e: BinaryEnergy) -> FlowNetwork:
    """Graph whose cut costs plus ``offset`` reproduce ``e`` on every labeling.

    A term ``w s_p s_q`` with ``w <= 0`` is rewritten as
    ``w s_q + (-w) [s_p = 0, s_q = 1]``: ``w`` moves to the unary of ``q`` and
    an arc ``q -> p`` of capacity ``-w`` pays for the disagreement.  Each
    residual unary ``a`` becomes an arc to the sink (``a > 0``, paid when the
    label is 1) or from the source (``a < 0``, ``a`` moved to the offset and
    ``-a`` paid when the label is 0).
    """
    if not e.is_submodular():
        raise NonSubmodularError("build_flow_network needs all pairwise w <= 0")
    n = e.num_vars
    a = e.unary.copy()
    if e.num_pairs:
        np.add.at(a, e.pair_q, e.pair_w)
    offset = float(e.constant + a[a < 0].sum())

    net = FlowNetwork(n, offset)
    s, t = net.source, net.sink
    for p, ap in enumerate(a.tolist()):
        if ap > 0:
            net.add_arc(p, t, ap)
        elif ap < 0:
            net.add_arc(s, p, -ap)
    for p, q, w in zip(e.pair_p.tolist(), e.pair_q.tolist(), e.pair_w.tolist()):
        if w < 0:
            net.add_arc(q, p, -w)
    return net


def _bfs_levels(net: FlowNetwork, eps: float) -> list[int]:
    level = [-1] * net.num_nodes
    level[net.source] = 0
    queue = deque([net.source])
    head, res, adj = net.head, net.residual, net.adj
    while queue:
        u = queue.popleft()
        for k in adj[u]:
            v = head[k]
            if level[v] < 0 and res[k] > eps:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def _blocking_flow(net: FlowNetwork, level: list[int], eps: float) -> float:
    head, res, adj = net.head, net.residual, net.adj
    s, t = net.source, net.sink
    ptr = [0] * net.num_nodes
    total = 0.0
    path: list[int] = []
    u = s
    while True:
        if u == t:
            f = min(res[k] for k in path)
            cut = None
            for i, k in enumerate(path):
                res[k] -= f
                res[k ^ 1] += f
                if cut is None and res[k] <= eps:
                    cut = i
            total += f
            del path[cut:]
            u = head[path[-1]] if path else s
            continue
        arcs = adj[u]
        i = ptr[u]
        nxt = level[u] + 1
        while i < len(arcs):
            k = arcs[i]
            if res[k] > eps and level[head[k]] == nxt:
                break
            i += 1
        ptr[u] = i
        if i < len(arcs):
            path.append(arcs[i])
            u = head[arcs[i]]
        elif u == s:
            return total
        else:
            level[u] = -1
            path.pop()
            u = head[path[-1]] if path else s
            ptr[u] += 1


def max_flow(net: FlowNetwork) -> tuple[float, np.ndarray]:
    """Run Dinic's algorithm in place.

    Returns the flow value and the canonical minimum-cut labeling (nodes
    reachable from the source in the residual graph get label 1).
    Residual capacities at or below ``1e-12`` times the largest capacity
    count as saturated.
    """
    cmax = max(net.capacity, default=0.0)
    eps = RESIDUAL_RTOL * cmax
    value = 0.0
    while True:
        level = _bfs_levels(net, eps)
        if level[net.sink] < 0:
            break
        value += _blocking_flow(net, level, eps)
    reach = _bfs_levels(net, eps)
    labels = np.array([lv >= 0 for lv in reach[: net.num_vars]], dtype=np.uint8)
    return value, labels


def minimize_submodular(e: BinaryEnergy) -> tuple[np.ndarray, float]:
    """Global minimum of a submodular energy.

    Returns ``(labeling, eval_energy(e, labeling))``.
    """
    if not e.is_submodular():
        raise NonSubmodularError("minimize_submodular needs all pairwise w <= 0")
    if e.num_pairs == 0 or not np.any(e.pair_w < 0):
        # separable: the cut picks label 1 exactly where the unary is negative
        s = (e.unary < 0).astype(np.uint8)
    else:
        _, s = max_flow(build_flow_network(e))
    return s, eval_energy(e, s)
