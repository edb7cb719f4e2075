"""Finite graphs of groups and their fundamental groups, split one edge at a time.

Removing an edge e0 either keeps the graph connected, and the group is an
HNN extension of the remaining fundamental group, or disconnects it into
two pieces amalgamated over the edge group.  Only finite (including
trivial) edge groups are supported, because the embeddings into composite
groups are then checked element by element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import HNN, Amalgam, FiniteEmbedding, Group, TrivialEmbedding


class TrivialTree(ValueError):
    pass


@dataclass
class Edge:
    name: str
    source: str
    target: str
    sigma: Group
    s: Callable  # Sigma_e -> vertex group of source
    r: Callable  # Sigma_e -> vertex group of target


def _as_map(m):
    if isinstance(m, dict):
        return m.__getitem__
    if hasattr(m, "image"):
        return m.image
    return m


class GraphOfGroups:
    def __init__(self, vertices: dict, edges=()):
        self.vertices = dict(vertices)
        self.edges = []
        for e in edges:
            self.add_edge(*e) if not isinstance(e, Edge) else self.edges.append(e)

    def add_edge(self, name, source, target, sigma, s, r):
        for v in (source, target):
            if v not in self.vertices:
                raise KeyError(f"unknown vertex {v!r}")
        if not sigma.finite:
            raise NotImplementedError("only finite edge groups are supported")
        e = Edge(name, source, target, sigma, _as_map(s), _as_map(r))
        self.edges.append(e)
        return e

    def edge(self, name) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise KeyError(f"unknown edge {name!r}")

    def components(self, edges=None) -> list:
        edges = self.edges if edges is None else edges
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in edges:
            parent[find(e.source)] = find(e.target)
        comps = {}
        for v in self.vertices:
            comps.setdefault(find(v), []).append(v)
        return [sorted(c, key=str) for c in comps.values()]

    def connected(self) -> bool:
        return len(self.components()) == 1

    def restrict(self, verts, edges) -> "GraphOfGroups":
        vs = set(verts)
        return GraphOfGroups({v: self.vertices[v] for v in self.vertices if v in vs},
                             [e for e in edges if e.source in vs and e.target in vs])

    def split(self, e0=None) -> dict:
        """One splitting step.

        Connected remainder: {"kind": "hnn", "base": remainder, "edge": e0}
        with Sigma the image of the target map and theta = s o r^-1.
        Disconnected: {"kind": "amalgam", "left": piece containing the
        source, "right": piece containing the target, "edge": e0}.
        """
        if not self.connected():
            raise ValueError("graph of groups must be connected")
        if not self.edges:
            raise TrivialTree("a single vertex without edges does not split")
        e = self.edges[0] if e0 is None else (e0 if isinstance(e0, Edge) else self.edge(e0))
        rest = [x for x in self.edges if x is not e]
        comps = self.components(rest)
        if len(comps) == 1:
            return {"kind": "hnn", "base": GraphOfGroups(self.vertices, rest), "edge": e}
        left = next(c for c in comps if e.source in c)
        right = next(c for c in comps if e.target in c)
        return {"kind": "amalgam", "left": self.restrict(left, rest),
                "right": self.restrict(right, rest), "edge": e}

    def fundamental_group(self, e0=None):
        """(group, inclusions) where inclusions[v] maps the vertex group of v into it."""
        if not self.connected():
            raise ValueError("graph of groups must be connected")
        if not self.edges:
            (v, G), = self.vertices.items()
            return G, {v: lambda x: x}
        sp = self.split(e0)
        e = sp["edge"]
        if sp["kind"] == "hnn":
            P, inc = sp["base"].fundamental_group()
            A = _embed(P, e.sigma, lambda s: inc[e.target](e.r(s)))
            B = _embed(P, e.sigma, lambda s: inc[e.source](e.s(s)))
            G = HNN(P, A, B, t=e.name)
            return G, {v: _compose(G.inject, f) for v, f in inc.items()}
        P1, inc1 = sp["left"].fundamental_group()
        P2, inc2 = sp["right"].fundamental_group()
        A = _embed(P1, e.sigma, lambda s: inc1[e.source](e.s(s)))
        B = _embed(P2, e.sigma, lambda s: inc2[e.target](e.r(s)))
        G = Amalgam(P1, P2, A, B)
        out = {v: _compose(lambda x, G=G: G.inject(0, x), f) for v, f in inc1.items()}
        out.update({v: _compose(lambda x, G=G: G.inject(1, x), f) for v, f in inc2.items()})
        return G, out


def _compose(f, g):
    return lambda x: f(g(x))


def _embed(host, sigma, f):
    if sigma.order() == 1:
        return TrivialEmbedding(host, sigma)
    return FiniteEmbedding(host, sigma, f)
