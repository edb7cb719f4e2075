"""Command-line front end.

Every command prints (or writes with --out) a JSON certificate with a
"kind" field; `urysohn verify FILE` re-checks any certificate from
scratch.  Exit codes: 0 success, 1 failed verification or search, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from . import finperm as fp
from .distance_set import DistanceSet, fmt, q
from .genericity import (PRESETS, SetupError, StepFailure, dumps, preset, run_scheduler,
                         setup_from_json, tree_to_setup, verify_transcript)
from .groups import (SchemaError, SearchExhausted, check_mixing_ball,
                     group_from_json, induced_action, strong_freeness_check)
from .metric_core import (FiniteMetricSpace, KatetovFunction, KatetovViolation, amalgam,
                          check_metric)
from .tower import TowerSpace, homogeneity_certificate
from .unbounded import (BelowThreshold, UnboundedTower, check_disconnection,
                        disconnection_witness, strongly_disconnecting_action)


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, msg, cert=None):
        super().__init__(msg)
        self.cert = cert


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog.split()[-1] if ' ' in self.prog else 'usage'}: {message}")


# argument helpers

def load_json_arg(text):
    """Inline JSON, a path to a JSON file, or '-' for stdin."""
    if text is None:
        return None
    if text == "-":
        return json.load(sys.stdin)
    s = text.strip()
    if s[:1] in "{[\"":
        return json.loads(s)
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    raise UsageError(f"{text!r} is neither JSON nor an existing file")


def load_group(text):
    if text in PRESETS:
        return group_from_json(PRESETS[text]["group"])
    spec = load_json_arg(text)
    if spec.get("kind") in ("amalgam", "finite_factor", "hnn", "free_product_unbounded"):
        spec = spec["group"]
    return group_from_json(spec)


def emit(args, cert):
    text = dumps(cert)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0 if cert.get("ok", True) else 1


def _seed(args):
    return getattr(args, "seed", None) or 0


def _budget(args, name, default):
    v = getattr(args, f"budget_{name}", None)
    return default if v is None else v


def _ids(text):
    return [int(x) for x in text.replace(",", " ").split()]


# metric / katetov / amalgam

def cmd_metric_check(args):
    X = FiniteMetricSpace.from_json(load_json_arg(args.space))
    bad = check_metric(X)
    return emit(args, {"kind": "metric-check", "space": X.to_json(), "ok": not bad,
                       "violations": [[str(x) for x in v] for v in bad]})


def cmd_katetov_extend(args):
    X = FiniteMetricSpace.from_json(load_json_arg(args.space))
    f = load_json_arg(args.f)
    supp = [(p, q(v)) for p, v in (f["support"] if isinstance(f, dict) else f)]
    g = KatetovFunction(X, supp)
    return emit(args, {"kind": "realization", "space": X.to_json(),
                       "support": [[str(p), fmt(v)] for p, v in g.support],
                       "values": {str(p): fmt(g(p)) for p in X.points}, "ok": True})


def cmd_amalgam(args):
    spaces = [FiniteMetricSpace.from_json(load_json_arg(s)) for s in args.spaces]
    base = [b for b in args.base.split(",") if b] if args.base else []
    Z = amalgam(spaces, base)
    bad = check_metric(Z)
    return emit(args, {"kind": "metric-check", "space": Z.to_json(), "base": base,
                       "ok": not bad, "violations": [[str(x) for x in v] for v in bad]})


# tower

def _tower_window(args):
    S = DistanceSet.parse(args.S)
    T = TowerSpace(S)
    n = _budget(args, "points", None) or args.points
    if args.random:
        pts = T.random_window(n, random.Random(_seed(args)), args.denominator)
    else:
        pts = T.enumerate(n, args.denominator)
    return S, T, pts


def _distance_cert(T, S, pts, kind="metric-check", group=None):
    X = T.window_space(pts)
    bad = check_metric(X)
    return {"kind": kind, "S": S.to_json(), "group": group, "points": T.table(), "window": pts,
            "dist": [[fmt(v) for v in row] for row in X.dist_matrix],
            "ok": not bad, "violations": [[str(x) for x in v] for v in bad[:20]]}


def cmd_build(args):
    S, T, pts = _tower_window(args)
    return emit(args, _distance_cert(T, S, pts))


def cmd_realize(args):
    S, T, pts = _tower_window(args)
    f = [(int(p), q(v)) for p, v in load_json_arg(args.f)]
    x = T.realize(f)
    vals = {str(p): fmt(T.distance(x, p)) for p, _ in f}
    ok = all(T.distance(x, p) == v for p, v in f)
    cert = _distance_cert(T, S, pts + ([x] if x not in pts else []), "realization")
    cert.update({"f": [[p, fmt(v)] for p, v in f], "point": x, "values": vals})
    cert["ok"] = cert["ok"] and ok
    return emit(args, cert)


def cmd_extend(args):
    S = DistanceSet.parse(args.S)
    T = TowerSpace(S)
    n = _budget(args, "points", None) or args.points
    pts = T.enumerate(n, args.denominator)
    phi = [tuple(p) for p in load_json_arg(args.phi)] if args.phi else []
    cert = homogeneity_certificate(T, phi, n, args.denominator)
    cert.update({"S": S.to_json(), "points": T.table(), "window": pts})
    return emit(args, cert)


# groups and actions

def cmd_group_reduce(args):
    G = load_group(args.group)
    g = G.reduce(args.word)
    return emit(args, {"kind": "witness", "group": args.group, "word": args.word,
                       "normal_form": G.to_json(g), "length": str(G.length(g)),
                       "identity": g == G.identity, "ok": True})


def cmd_action_build(args):
    G = load_group(args.group)
    A = induced_action(G, DistanceSet.parse(args.S))
    T = A.space
    rng = random.Random(_seed(args))
    radius = _budget(args, "radius", args.radius)
    pts = [T.base(g) for g in G.ball(radius)]
    pts += [T.realize(T.random_extension(rng, rng.sample(pts, min(2, len(pts)))), check=False)
            for _ in range(args.extra)]
    pts = list(dict.fromkeys(pts))
    return emit(args, _distance_cert(T, T.S, pts, group=load_json_arg(args.group)
                                      if args.group not in PRESETS else args.group))


def cmd_action_check(args):
    G = load_group(args.group)
    S = DistanceSet.parse(args.S)
    A = induced_action(G, S)
    T = A.space
    rng = random.Random(_seed(args))
    radius = _budget(args, "radius", args.radius)
    ball = [g for g in G.ball(radius) if g != G.identity]
    window = [T.base(G.identity)] + [T.base(g) for g in ball[:3]]
    while len(window) < 6:
        window.append(T.realize(T.random_extension(rng, rng.sample(window, 2)), check=False))
    if args.property == "free":
        sample = [(rng.choice(ball), rng.choice(window)) for _ in range(args.samples)]
        res = strong_freeness_check(A, sample)
    elif args.property == "mixing":
        res = check_mixing_ball(A, window[:3], radius)
        res["violations"] = [list(map(str, v)) for v in res["violations"]]
    else:
        from .groups import TrivialSubgroup, WholeGroup, hcf_action_witness, hcf_conditions
        sigma = TrivialSubgroup(G)
        g = hcf_action_witness(A, sigma, WholeGroup(G), window[:3], radius)
        res = {"ok": not hcf_conditions(A, sigma, g, window[:3]), "witness": G.to_json(g)}
    return emit(args, {"kind": "witness", "property": args.property, "group": args.group,
                       "S": S.to_json(), "points": T.table(), **res})


# genericity

def _setup_from_args(args):
    if args.preset:
        return preset(args.preset, S=args.S)
    spec = load_json_arg(args.setup)
    if spec.get("type") == "graph" or "vertices" in spec:
        graph = {k: v for k, v in spec.items() if k not in ("type", "split", "S")}
        return tree_to_setup(graph, spec.get("split"), S=args.S or spec.get("S", "0,1,2"))
    if args.S:
        spec = dict(spec, S=args.S)
    return setup_from_json(spec)


def cmd_generic_run(args):
    if not args.preset and not args.setup:
        raise UsageError("give --preset or --setup")
    setup = _setup_from_args(args)
    steps = _budget(args, "steps", args.steps)
    try:
        _, tr = run_scheduler(setup, steps, _seed(args))
    except (SearchExhausted, StepFailure) as e:
        tr = dict(e.transcript, ok=False, error=str(e))
        emit(args, tr)
        raise VerificationFailed(str(e))
    tr["ok"] = True
    return emit(args, tr)


def cmd_generic_verify(args):
    tr = load_json_arg(args.file)
    return emit(args, verify_certificate(tr))


# unbounded

def cmd_unbounded_build(args):
    G = load_group(args.group)
    T = strongly_disconnecting_action(G, args.levels)
    pts = [T.base(g) for g in G.ball(args.radius)]
    dist = [[fmt(T.distance(a, b)) for b in pts] for a in pts]
    return emit(args, {"kind": "witness", "property": "unbounded-window", "group": args.group,
                       "levels": T.levels_json(args.levels),
                       "points": T.table(), "window": pts, "dist": dist, "ok": True})


def cmd_unbounded_witness(args):
    G = load_group(args.group)
    T = UnboundedTower(G)
    F = [T.base(G.reduce(w)) for w in args.F.split(",")]
    N = T.threshold(F)
    K = N if args.K is None else args.K
    g = disconnection_witness(T, F, K, args.factor)
    bad = check_disconnection(T, F, g, K)
    return emit(args, {"kind": "witness", "property": "disconnection", "group": args.group,
                       "F": args.F.split(","), "threshold": N, "K": K,
                       "element": G.to_json(g), "ok": not bad,
                       "violations": [list(p) for p in bad]})


# finitary permutations

def _perm_gens(text):
    return [fp.FinPermutation.parse(t) for t in text.split(";") if t.strip()]


def cmd_perm_blocks(args):
    perms = _perm_gens(args.gens)
    gens = [g.on_window(args.n) for g in perms]
    labels = list(range(args.n))
    if args.k:
        subs, gens = fp.subsets_action(gens, args.n, args.k)
        labels = [sorted(s) for s in subs]
    m = len(labels)
    prim = fp.is_primitive(gens, m)
    out = {"kind": "finperm-result", "query": "blocks", "gens": args.gens, "n": args.n,
           "k": args.k, "primitive": prim, "ok": True}
    if args.pair:
        a, b = _ids(args.pair)
        B = fp.minimal_block(gens, m, a, b)
        out["block"] = [labels[i] for i in B]
        out["system"] = [[labels[i] for i in C] for C in fp.block_system(gens, m, B)]
    elif not prim:
        b = next(b for b in range(1, m) if len(fp.minimal_block(gens, m, 0, b)) < m)
        B = fp.minimal_block(gens, m, 0, b)
        out["block"] = [labels[i] for i in B]
        out["system"] = [[labels[i] for i in C] for C in fp.block_system(gens, m, B)]
    return emit(args, out)


def cmd_perm_biindex(args):
    value = fp.biindex_subsets(args.n, args.k)
    return emit(args, {"kind": "finperm-result", "query": "biindex", "n": args.n, "k": args.k,
                       "biindex": value, "ok": True})


def cmd_perm_tr(args):
    sigma = fp.FinPermutation.parse(args.sigma)
    X = fp.RuleSet.parse(args.X)
    ok, d = fp.commensurated(sigma, X)
    out = {"kind": "finperm-result", "query": "tr", "sigma": sigma.describe(), "X": X.to_json(),
           "commensurated": ok, "ok": True}
    if ok:
        out["symmetric_difference"] = sorted(d)
        out["tr"] = fp.transfer_character(sigma, X)
    return emit(args, out)


def cmd_perm_schlichting(args):
    if args.type == "kset":
        delta = {"type": "kset", "set": _ids(args.set)}
    elif args.type == "commensurated":
        delta = {"type": "commensurated", "X": args.X}
    else:
        delta = {"type": args.type, "k": args.k}
    res = fp.schlichting_orbit(_perm_gens(args.gens), delta, args.depth)
    res.update({"query": "schlichting", "gens": args.gens, "delta": {k: v for k, v in delta.items()},
                "ok": True})
    return emit(args, res)


# verification

def verify_certificate(cert) -> dict:
    """Re-check a certificate from scratch; the empty certificate passes vacuously."""
    if not cert:
        return {"kind": "verification", "ok": True, "checked": 0}
    kind = cert.get("kind")
    if kind == "scheduler-transcript":
        return verify_transcript(cert)
    if kind in ("metric-check", "realization", "extension") and "points" in cert:
        return _verify_tower_cert(cert)
    if kind == "metric-check":
        X = FiniteMetricSpace.from_json(cert["space"])
        bad = check_metric(X)
        return {"kind": "verification", "ok": not bad, "violations": [list(map(str, v)) for v in bad]}
    if kind == "witness" and cert.get("property") == "disconnection":
        G = load_group(cert["group"])
        T = UnboundedTower(G)
        F = [T.base(G.reduce(w)) for w in cert["F"]]
        bad = check_disconnection(T, F, G.from_json(cert["element"]), cert["K"])
        return {"kind": "verification", "ok": not bad, "violations": [list(p) for p in bad]}
    if kind == "witness" and cert.get("property") == "unbounded-window":
        T = UnboundedTower(load_group(cert["group"]))
        errors = []
        for t in cert["points"]:
            if T.load_term(t) != t["id"]:
                errors.append(f"point {t['id']} does not re-create")
        pts = cert["window"]
        for i, a in enumerate(pts):
            for j, b in enumerate(pts):
                if not errors and fmt(T.distance(a, b)) != cert["dist"][i][j]:
                    errors.append(f"d({a},{b}) is {fmt(T.distance(a, b))}")
        return {"kind": "verification", "ok": not errors, "errors": errors}
    if kind == "finperm-result":
        return _verify_finperm(cert)
    if kind == "realization":
        X = FiniteMetricSpace.from_json(cert["space"])
        g = KatetovFunction(X, [(p, q(v)) for p, v in cert["support"]])
        bad = [p for p, v in cert["values"].items() if g(p) != q(v)]
        return {"kind": "verification", "ok": not bad, "violations": bad}
    if kind == "witness":
        return {"kind": "verification", "ok": bool(cert.get("ok")), "note": "no independent check"}
    raise SchemaError(f"unknown certificate kind {kind!r}")


def _verify_tower_cert(cert) -> dict:
    S = DistanceSet.from_json(cert["S"])
    group = cert.get("group")
    if group is None:
        T = TowerSpace(S)
    else:
        T = TowerSpace(S, group=load_group(group if isinstance(group, str) else json.dumps(group)))
    errors = []
    for t in cert["points"]:
        if T.load_term(t) != t["id"]:
            errors.append(f"point {t['id']} does not re-create")
            return {"kind": "verification", "ok": False, "errors": errors}
    pts = cert.get("window") or [p for p, _ in cert.get("graph", [])]
    if "dist" in cert:
        for i, j in itertools.combinations_with_replacement(range(len(pts)), 2):
            d = T.distance(pts[i], pts[j])
            for a, b in ((i, j), (j, i)):
                if q(cert["dist"][a][b]) != d:
                    errors.append(f"d({pts[a]},{pts[b]}) is {fmt(d)}, certificate says {cert['dist'][a][b]}")
        bad = check_metric(T.window_space(pts))
        errors += [f"metric: {v}" for v in bad[:10]]
    if cert["kind"] == "realization":
        for p, v in cert["f"]:
            if T.distance(cert["point"], p) != q(v):
                errors.append(f"realized point is not at {v} from {p}")
    if cert["kind"] == "extension":
        graph = [tuple(p) for p in cert["graph"]]
        for (x, u), (y, w) in itertools.combinations(graph, 2):
            if T.distance(x, y) != T.distance(u, w):
                errors.append(f"pairs ({x},{u}) and ({y},{w}) change a distance")
        for x, z in cert["phi"]:
            if (x, z) not in graph and [x, z] not in cert["graph"]:
                errors.append(f"phi pair ({x},{z}) is not in the graph")
    return {"kind": "verification", "ok": not errors, "errors": errors[:50]}


def _verify_finperm(cert) -> dict:
    query = cert.get("query")
    if query == "biindex":
        G = fp.closure(fp.symmetric_gens(cert["n"]), cert["n"])
        subs, _ = fp.subsets_action([], cert["n"], cert["k"])
        H = [g for g in G if frozenset(g[x] for x in range(cert["k"])) == frozenset(range(cert["k"]))]
        value = fp.double_cosets(G, H)
        return {"kind": "verification", "ok": value == cert["biindex"], "double_cosets": value}
    if query == "tr":
        sigma = fp.FinPermutation.parse(cert["sigma"])
        X = fp.RuleSet.from_json(cert["X"])
        ok, d = fp.commensurated(sigma, X)
        good = ok == cert["commensurated"]
        if ok:
            out_ = sum(1 for n in d if n not in X)
            in_ = sum(1 for n in d if n in X)
            good = good and out_ - in_ == cert["tr"] and sorted(d) == cert["symmetric_difference"]
        return {"kind": "verification", "ok": good}
    if query == "blocks":
        gens = [g.on_window(cert["n"]) for g in _perm_gens(cert["gens"])]
        labels = list(range(cert["n"]))
        if cert.get("k"):
            subs, gens = fp.subsets_action(gens, cert["n"], cert["k"])
            labels = [sorted(s) for s in subs]
        ok = True
        if "block" in cert:
            idx = [labels.index(b) for b in cert["block"]]
            ok = fp.is_block(gens, idx) and 1 < len(idx) < len(labels)
            ok = ok and not cert["primitive"]
        elif not cert["primitive"]:
            ok = False
        else:
            ok = all(len(fp.minimal_block(gens, len(labels), 0, b)) == len(labels)
                     for b in range(1, len(labels)))
        return {"kind": "verification", "ok": ok}
    if query == "schlichting":
        res = fp.schlichting_orbit(_perm_gens(cert["gens"]), cert["delta"], cert["depth"])
        return {"kind": "verification", "ok": res["nodes"] == cert["nodes"] and res["edges"] == cert["edges"]}
    raise SchemaError(f"unknown finperm query {query!r}")


def cmd_verify(args):
    cert = load_json_arg(args.file)
    rep = verify_certificate(cert)
    emit(args, rep)
    if not rep["ok"]:
        raise VerificationFailed("certificate did not verify")
    return 0


# parser

def _global_flags(p, suppress=True):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=d, help="seed for every random choice")
    for name in ("points", "steps", "radius", "window"):
        p.add_argument(f"--budget-{name}", type=int, default=d, dest=f"budget_{name}")
    p.add_argument("--json-errors", action="store_true", default=d,
                   help="report errors as JSON on standard error")


def build_parser():
    common = _Parser(add_help=False)
    _global_flags(common)
    top = _Parser(prog="urysohn", description=__doc__.splitlines()[0])
    _global_flags(top, suppress=False)
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(parent, name, fn, **kw):
        p = parent.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--out")
        return p

    def group(name, help):
        g = sub.add_parser(name, help=help)
        return g.add_subparsers(dest="sub", parser_class=_Parser, required=True)

    m = group("metric", "finite S-metric spaces")
    p = cmd(m, "check", cmd_metric_check)
    p.add_argument("space")

    k = group("katetov", "Katetov functions")
    p = cmd(k, "extend", cmd_katetov_extend)
    p.add_argument("--space", required=True)
    p.add_argument("--f", required=True)

    p = cmd(sub, "amalgam", cmd_amalgam, help="amalgam of finite spaces")
    p.add_argument("spaces", nargs="+")
    p.add_argument("--base", default="")

    def tower_flags(p):
        p.add_argument("--S", default="0,1,2")
        p.add_argument("--points", type=int, default=20)
        p.add_argument("--denominator", type=int, default=2)
        p.add_argument("--random", action="store_true")

    u = group("urysohn", "Katetov towers")
    for name, fn in (("build", cmd_build), ("realize", cmd_realize), ("extend", cmd_extend)):
        p = cmd(u, name, fn)
        tower_flags(p)
        if name == "realize":
            p.add_argument("--f", required=True, help='[[point, "value"], ...]')
        if name == "extend":
            p.add_argument("--phi", help="[[x, z], ...]")
    p = cmd(sub, "build", cmd_build, help="alias of urysohn build")
    tower_flags(p)

    g = group("group", "group normal forms")
    p = cmd(g, "reduce", cmd_group_reduce)
    p.add_argument("--group", required=True, help="preset name, JSON or file")
    p.add_argument("word")

    a = group("action", "induced actions on towers")
    p = cmd(a, "build", cmd_action_build)
    p.add_argument("--group", required=True)
    p.add_argument("--S", default="0,1,2")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--extra", type=int, default=4)
    p = cmd(a, "check", cmd_action_check)
    p.add_argument("--group", required=True)
    p.add_argument("--S", default="0,1,2")
    p.add_argument("--property", choices=["free", "mixing", "hcf"], required=True)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)

    gn = group("generic", "the genericity scheduler")
    p = cmd(gn, "run", cmd_generic_run)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--setup", help="setup or graph-of-groups JSON")
    p.add_argument("--S")
    p.add_argument("--steps", type=int, default=15)
    p = cmd(gn, "verify", cmd_generic_verify)
    p.add_argument("file")

    un = group("unbounded", "strongly disconnecting actions over Q+")
    p = cmd(un, "build", cmd_unbounded_build)
    p.add_argument("--group", default='{"type": "integers", "gen": "a"}')
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--radius", type=int, default=3)
    p = cmd(un, "witness", cmd_unbounded_witness)
    p.add_argument("--group", default='{"type": "integers", "gen": "a"}')
    p.add_argument("--F", default="1,a", help="comma-separated group elements")
    p.add_argument("--K", type=int)
    p.add_argument("--factor", type=int, default=0)

    pm = group("perm", "finitary permutation groups")
    p = cmd(pm, "blocks", cmd_perm_blocks)
    p.add_argument("--gens", required=True, help="';'-separated cycle notation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0, help="act on k-subsets")
    p.add_argument("--pair")
    p = cmd(pm, "biindex", cmd_perm_biindex)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = cmd(pm, "tr", cmd_perm_tr)
    p.add_argument("--sigma", required=True)
    p.add_argument("--X", default="evens")
    p = cmd(pm, "schlichting", cmd_perm_schlichting)
    p.add_argument("--gens", required=True)
    p.add_argument("--type", choices=["kset", "commensurated", "partition"], default="kset")
    p.add_argument("--set", default="0,1")
    p.add_argument("--X", default="evens")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)

    p = cmd(sub, "verify", cmd_verify, help="re-check any certificate")
    p.add_argument("file")
    return top


USAGE_ERRORS = (UsageError, SchemaError, SetupError, json.JSONDecodeError, KeyError,
                FileNotFoundError, KatetovViolation, BelowThreshold, fp.NotBijective,
                fp.NotTransitive, fp.TrivialX, fp.UnknownStabilizerType, fp.WindowTooSmall,
                fp.NotCommensurating, ValueError)


def _report(args_json, code, exc):
    if args_json:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                     "exit": code}) + "\n")
    else:
        sys.stderr.write(f"urysohn: {exc}\n")
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    json_errors = "--json-errors" in argv
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "fn"):
            raise UsageError("choose a command; see --help")
        return args.fn(args)
    except VerificationFailed as e:
        return _report(json_errors, 1, e)
    except (SearchExhausted, StepFailure) as e:
        return _report(json_errors, 1, e)
    except USAGE_ERRORS as e:
        return _report(json_errors, 2, e)


if __name__ == "__main__":
    sys.exit(main())
