"""Strongly disconnecting actions on the rational Urysohn space.

Over unbounded distances the tower is rescaled level by level.  For a
finite set F there is a threshold N such that for every integer K >= N
some group element puts every point of F at distance exactly K from every
translate of F.  The witnesses are huge powers, which big integers handle.
"""
from urysohn.groups import Integers
from urysohn.unbounded import UnboundedTower, check_disconnection, disconnection_witness

G = Integers()
T = UnboundedTower(G)
F = [T.base(0), T.base(3)]
N = T.threshold(F)
print(f"threshold for F = {{x0, 3.x0}}: N = {N}")
for K in (N, N + 1, 2 * N, 40):
    g = disconnection_witness(T, F, K)
    ok = check_disconnection(T, F, g, K) == []
    print(f"K = {K:3d}: witness has {len(str(g))} digits, all four distances equal K: {ok}")
