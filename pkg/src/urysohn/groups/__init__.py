"""Groups with normal forms, subgroups, and actions on equivariant towers."""

from .core import (Group, FiniteTable, Cyclic, Integers, FreeGroup, FreeProduct,
                   Amalgam, HNN, Embedding, TrivialEmbedding, FiniteEmbedding,
                   CyclicEmbedding, InvalidLetter, trivial_group, parse_word, format_word)
from .actions import (Subgroup, TrivialSubgroup, WholeGroup, EmbeddedSubgroup, AmalgamSigma,
                      HNNSubgroup, FactorSubgroup, amalgam_factor, hnn_base, GroupAction,
                      induced_action, finite_action, act, strong_freeness_check,
                      mixing_witness, check_mixing_ball, hcf_conditions, hcf_action_witness,
                      hcf_group_witness, hcf_group_violations, equivariant_extend,
                      left_invariant_metric, DirectSumZ2, SearchExhausted, IdentityElement,
                      NoCertificate, CertificateMissing)
from .graphs import GraphOfGroups, Edge, TrivialTree
from .presentation import SchemaError, group_from_json, graph_from_json, embeddings_from_json


def reduce(G, word):
    return G.reduce(word)
