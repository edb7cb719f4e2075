"""The random graph as the Urysohn space over S = {0, 1, 2}.

Distance 1 is an edge, distance 2 a non-edge.  The tower realizes every
one-point extension, which for this S is the random-graph axiom: for
disjoint finite U, V there is a vertex adjacent to all of U and none of V.
"""
import itertools
import random

from urysohn import DistanceSet, IsometryAgent, TowerSpace, check_metric

S = DistanceSet.parse("0,1,2")
T = TowerSpace(S)
pts = T.random_window(12, random.Random(1), 1)
X = T.window_space(pts)
print(f"window of {len(pts)} points, metric violations: {len(check_metric(X))}")
edges = sum(X.dist(a, b) == 1 for a, b in itertools.combinations(pts, 2))
print(f"{edges} edges among {len(pts) * (len(pts) - 1) // 2} pairs")

U, V = pts[:3], pts[3:6]
z = T.realize([(u, 1) for u in U] + [(v, 2) for v in V])
print(f"new vertex {z}: adjacent to {[u for u in U if T.distance(z, u) == 1]}, "
      f"not to {[v for v in V if T.distance(z, v) == 2]}")

# back and forth between two independently built copies
T2 = TowerSpace(S)
other = T2.random_window(12, random.Random(2), 1)
agent = IsometryAgent(T, T2)
for p in pts:
    agent.image(p)
for p in other:
    agent.preimage(p)
print(f"partial isometry between the copies now has {len(agent.reps)} pairs")
