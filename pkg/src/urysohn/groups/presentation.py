"""Group presentations as JSON.

    {"type": "integers", "gen": "a"}
    {"type": "free", "gens": ["a", "b"]}
    {"type": "cyclic", "n": 2, "gen": "c"}
    {"type": "table", "name": "S3", "perms": {"x": [1, 0, 2], "y": [0, 2, 1]}}
    {"type": "free_product", "factors": [spec, ...]}
    {"type": "amalgam", "factors": [spec, spec], "sigma": sigma}
    {"type": "hnn", "base": spec, "sigma": sigma, "t": "t"}
    {"type": "graph", "vertices": {"u": spec}, "edges": [edge, ...], "split": name}

sigma is {"type": "trivial"}, {"type": "cyclic", "images": [w1, w2]} (k -> w^k
in each host) or {"type": "finite", "group": spec, "images": [[...], [...]]}
(generator images as words).  For an HNN extension the two hosts are both
the base: the first list gives A, the second B = theta(A).  Graph edges are
{"name", "source", "target", "sigma": spec or null, "s": [...], "r": [...]}.
"""

from __future__ import annotations

from .core import (HNN, Amalgam, Cyclic, CyclicEmbedding, FiniteEmbedding, FiniteTable,
                   FreeGroup, FreeProduct, Group, Integers, TrivialEmbedding, trivial_group)
from .graphs import GraphOfGroups


class SchemaError(ValueError):
    pass


def group_from_json(spec: dict) -> Group:
    try:
        kind = spec["type"]
    except (KeyError, TypeError):
        raise SchemaError(f"group spec needs a 'type': {spec!r}")
    if kind == "integers":
        return Integers(spec.get("gen", "a"))
    if kind == "free":
        return FreeGroup(tuple(spec.get("gens", ("a", "b"))))
    if kind == "cyclic":
        return Cyclic(int(spec["n"]), spec.get("gen", "a"))
    if kind == "trivial":
        return trivial_group()
    if kind == "table":
        return FiniteTable.from_permutations({k: tuple(v) for k, v in spec["perms"].items()},
                                             spec.get("name", "G"))
    if kind == "free_product":
        return FreeProduct([group_from_json(f) for f in spec["factors"]])
    if kind == "amalgam":
        G1, G2 = (group_from_json(f) for f in spec["factors"])
        e1, e2 = embeddings_from_json(spec.get("sigma", {"type": "trivial"}), G1, G2)
        return Amalgam(G1, G2, e1, e2, spec.get("name"))
    if kind == "hnn":
        H = group_from_json(spec["base"])
        A, B = embeddings_from_json(spec.get("sigma", {"type": "trivial"}), H, H)
        return HNN(H, A, B, spec.get("t", "t"), spec.get("name"))
    if kind == "graph":
        return graph_from_json(spec).fundamental_group(spec.get("split"))[0]
    raise SchemaError(f"unknown group type {kind!r}")


def _hom(sigma: Group, host: Group, images):
    """The homomorphism of a finite group given by generator images (words in host)."""
    gens = [g for _, g in sigma.gen_items()]
    if len(images) != len(gens):
        raise SchemaError("one image per generator is needed")
    img = {n: host.reduce(w) for (n, _), w in zip(sigma.gen_items(), images)}

    def f(s):
        out = host.identity
        for n, e in sigma.word(s):
            out = host.mul(out, host.power(img[n], e))
        return out
    return f


def embeddings_from_json(spec: dict, H1: Group, H2: Group):
    kind = spec.get("type", "trivial")
    if kind == "trivial":
        return TrivialEmbedding(H1), TrivialEmbedding(H2)
    if kind == "cyclic":
        w1, w2 = spec["images"]
        S = Integers(spec.get("gen", "s"))
        return CyclicEmbedding(H1, H1.reduce(w1), S), CyclicEmbedding(H2, H2.reduce(w2), S)
    if kind == "finite":
        S = group_from_json(spec["group"])
        i1, i2 = spec["images"]
        return FiniteEmbedding(H1, S, _hom(S, H1, i1)), FiniteEmbedding(H2, S, _hom(S, H2, i2))
    raise SchemaError(f"unknown subgroup type {kind!r}")


def graph_from_json(spec: dict) -> GraphOfGroups:
    verts = {v: group_from_json(g) for v, g in spec["vertices"].items()}
    G = GraphOfGroups(verts)
    for e in spec.get("edges", []):
        sg = e.get("sigma")
        S = trivial_group() if sg is None else group_from_json(sg)
        src, tgt = verts[e["source"]], verts[e["target"]]
        if S.order() == 1:
            s, r = (lambda x, h=src: h.identity), (lambda x, h=tgt: h.identity)
        else:
            s, r = _hom(S, src, e["s"]), _hom(S, tgt, e["r"])
        G.add_edge(e["name"], e["source"], e["target"], S, s, r)
    return G
