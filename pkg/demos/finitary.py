"""Finite shadows of the permutation-group side.

Primitive actions, biindex of set stabilizers, and the transfer character
on permutations of N that commensurate the even numbers.
"""
from urysohn.finperm import (FinPermutation, RuleSet, biindex_subsets, is_primitive,
                             partition_automorphism_gens, subsets_action, symmetric_gens,
                             transfer_character)

print("S6 natural action primitive:", is_primitive(symmetric_gens(6), 6))
print("pair-preserving group primitive:", is_primitive(partition_automorphism_gens(3), 6))
for k in (1, 2, 3):
    print(f"biindex of the stabilizer of a {k}-set in S6: {biindex_subsets(6, k)}")
_, induced = subsets_action(symmetric_gens(6), 6, 3)
print("S6 on 3-subsets primitive:", is_primitive(induced, 20), "(complements form blocks)")

X = RuleSet.evens()
shift = FinPermutation.paired_shift()
print("tr(paired shift) =", transfer_character(shift, X))
print("tr(paired shift^3) =", transfer_character(shift * shift * shift, X))
print("tr((0 1)(2 5)) =", transfer_character(FinPermutation.from_cycles("(0 1)(2 5)"), X))
