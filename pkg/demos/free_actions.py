"""Strongly free and mixing actions induced on an equivariant tower.

Seeding the tower with a group G (discrete metric, distance M between
distinct elements) gives an isometric G-action in which every g != 1 moves
every point as far as possible, and only finitely many g bring a given
finite set back near itself.
"""
import random

from urysohn.distance_set import DistanceSet
from urysohn.groups import check_mixing_ball, group_from_json, induced_action, strong_freeness_check

G = group_from_json({"type": "free_product", "factors": [{"type": "integers", "gen": "a"},
                                                          {"type": "integers", "gen": "b"}]})
A = induced_action(G, DistanceSet.parse("0,1,2"))
T = A.space
rng = random.Random(0)

pts = [T.base(g) for g in G.ball(1)]
for _ in range(6):
    pts.append(T.realize(T.random_extension(rng, rng.sample(pts, 2), 1), param=rng.choice(list(G.ball(1)))))

ball = [g for g in G.ball(3) if g != G.identity]
rep = strong_freeness_check(A, [(rng.choice(ball), rng.choice(pts)) for _ in range(100)])
print(f"strong freeness: {rep['checked']} samples, ok={rep['ok']}")

F = pts[-3:]
rep = check_mixing_ball(A, F, 6)
print(f"mixing on a 3-point set: exception set of size {rep['exception_set_size']}, "
      f"{rep['scanned']} elements of the radius-6 ball checked, ok={rep['ok']}")
