"""Dynkin diagrams and positive-root counting by reflection closure.

The positive-root counts feed the orbit-count cross-check; they are
enumerated from the Cartan matrix rather than read from a table, so the
count formula and the closed forms are independent derivations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quiver import AlgebraPresentation


@dataclass(frozen=True)
class DynkinDescriptor:
    family: str  # 'A', 'D' or 'E'
    rank: int

    def __post_init__(self):
        if self.family == "A" and self.rank >= 1:
            return
        if self.family == "D" and self.rank >= 4:
            return
        if self.family == "E" and self.rank in (6, 7, 8):
            return
        raise ValueError(f"not a Dynkin type: {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_dynkin(text: str) -> DynkinDescriptor:
    text = text.strip().upper().replace("_", "")
    if not text or text[0] not in "ADE" or not text[1:].isdigit():
        raise ValueError(f"cannot parse Dynkin type {text!r}")
    return DynkinDescriptor(text[0], int(text[1:]))


def cartan_matrix(t: DynkinDescriptor) -> np.ndarray:
    """Simply-laced Cartan matrix with the standard Bourbaki numbering."""
    n = t.rank
    c = 2 * np.eye(n, dtype=np.int64)

    def join(i, j):
        c[i, j] = c[j, i] = -1

    if t.family == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif t.family == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    else:  # E: chain 0-1-2-3-... with the branch node attached to vertex 2
        for i in range(n - 2):
            join(i, i + 1)
        join(2, n - 1)
    return c


def positive_roots(t: DynkinDescriptor) -> list[tuple[int, ...]]:
    """All positive roots, enumerated by closing the simple roots under
    the simple reflections s_i(v) = v - <v, alpha_i^vee> alpha_i."""
    c = cartan_matrix(t)
    n = t.rank
    simples = [tuple(int(x) for x in row) for row in np.eye(n, dtype=np.int64)]
    seen: set[tuple[int, ...]] = set(simples)
    frontier = list(simples)
    while frontier:
        v = frontier.pop()
        va = np.array(v, dtype=np.int64)
        for i in range(n):
            pairing = int(c[i] @ va)
            w = va.copy()
            w[i] -= pairing
            tw = tuple(int(x) for x in w)
            if tw not in seen:
                seen.add(tw)
                frontier.append(tw)
    return sorted(v for v in seen if all(x >= 0 for x in v) and any(x > 0 for x in v))


def positive_root_count(t: DynkinDescriptor) -> int:
    return len(positive_roots(t))


def detect_dynkin(pres: AlgebraPresentation) -> DynkinDescriptor | None:
    """Dynkin type of the underlying graph of a hereditary presentation;
    None when the presentation has relations or the graph is not ADE."""
    if pres.relations:
        return None
    q = pres.quiver
    n = len(q.vertices)
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    edges = 0
    for a in q.arrows:
        if a.source == a.target:
            return None
        if a.target in adj[a.source]:
            return None  # multiple edge
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
        edges += 1
    if edges != n - 1 or not _connected(adj):
        return None  # not a tree
    degrees = sorted(len(s) for s in adj.values())
    if degrees and degrees[-1] <= 2:
        return DynkinDescriptor("A", n)
    if degrees[-1] > 3 or degrees.count(3) > 1:
        return None
    # exactly one branch vertex of degree 3: branch arm lengths decide
    branch = next(v for v in adj if len(adj[v]) == 3)
    arms = sorted(_arm_length(adj, branch, w) for w in adj[branch])
    if arms[0] == 1 and arms[1] == 1:
        return DynkinDescriptor("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinDescriptor("E", n)
    return None


def _connected(adj) -> bool:
    verts = list(adj)
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _arm_length(adj, branch, start) -> int:
    length = 1
    prev, cur = branch, start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            return length
        prev, cur = cur, nxt[0]
        length += 1
