"""Groups with normal forms: finite tables, Z, free groups, free products,
amalgamated products and HNN extensions.

Elements are hashable canonical values, so equality of group elements is
equality of normal forms.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Callable, Optional

try:  # decimal conversion of huge exponents is quadratic with plain ints
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = None


def _int(text: str) -> int:
    if _mpz is not None and len(text) > 1000:
        return int(_mpz(text))
    return int(text)


def _str(n: int) -> str:
    if _mpz is not None and n.bit_length() > 3000:
        return str(_mpz(n))
    return str(n)


class InvalidLetter(ValueError):
    pass


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_word(text: str) -> list:
    """Split "a b^-1 c^3" into [("a", 1), ("b", -1), ("c", 3)]."""
    text = text.replace("*", " ").strip()
    if text in ("", "1", "e"):
        return []
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise InvalidLetter(f"bad token {tok!r}")
        out.append((m.group(1), _int(m.group(2) or "1")))
    return out


def format_word(word) -> str:
    if not word:
        return "1"
    return " ".join(n if e == 1 else f"{n}^{_str(e)}" for n, e in word)


def compress(word) -> list:
    out = []
    for n, e in word:
        if out and out[-1][0] == n:
            e += out.pop()[1]
        if e:
            out.append((n, e))
    return out


class Group:
    identity = None
    finite = False
    name = "G"

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def key(self, a):
        raise NotImplementedError

    def gen_items(self) -> list:
        """Named generators as (name, element)."""
        raise NotImplementedError

    def word(self, g) -> list:
        """A word [(name, exponent), ...] over the named generators equal to g."""
        raise NotImplementedError

    # derived

    def letter(self, name):
        for n, g in self.gen_items():
            if n == name:
                return g
        raise InvalidLetter(f"unknown generator {name!r} in {self.name}")

    def power(self, g, k: int):
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        base = g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def prod(self, *gs):
        out = self.identity
        for g in gs:
            out = self.mul(out, g)
        return out

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def reduce(self, word):
        """Normal form of a raw word (text or list of (name, exponent))."""
        if isinstance(word, str):
            word = parse_word(word)
        out = self.identity
        for n, e in word:
            out = self.mul(out, self.power(self.letter(n), e))
        return out

    parse = reduce

    def format(self, g) -> str:
        return format_word(self.word(g))

    def to_json(self, g):
        return self.format(g)

    def from_json(self, obj):
        return self.reduce(obj)

    def cayley_gens(self) -> list:
        out = []
        for _, g in self.gen_items():
            out.append(g)
            gi = self.inv(g)
            if gi != g:
                out.append(gi)
        return out

    def ball(self, r: int, gens=None) -> list:
        """Elements of word length <= r in (length, key) order."""
        gens = self.cayley_gens() if gens is None else gens
        seen = {self.identity}
        layer = [self.identity]
        out = [self.identity]
        for _ in range(r):
            nxt = set()
            for g in layer:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in seen:
                        nxt.add(h)
            seen |= nxt
            layer = sorted(nxt, key=self.key)
            out.extend(layer)
            if not layer:
                break
        return out

    def iter_ball(self, gens=None, limit: Optional[int] = None):
        """Breadth-first enumeration (length, then key), optionally bounded in length."""
        gens = self.cayley_gens() if gens is None else gens
        seen = {self.identity}
        layer = [self.identity]
        r = 0
        yield self.identity
        while layer and (limit is None or r < limit):
            r += 1
            nxt = set()
            for g in layer:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in seen:
                        nxt.add(h)
            seen |= nxt
            layer = sorted(nxt, key=self.key)
            yield from layer

    def length(self, g) -> int:
        """Cayley word length (breadth-first search; subclasses override with formulas)."""
        if g == self.identity:
            return 0
        gens = self.cayley_gens()
        seen = {self.identity}
        layer = [self.identity]
        r = 0
        while layer:
            r += 1
            nxt = []
            for h in layer:
                for s in gens:
                    k = self.mul(h, s)
                    if k == g:
                        return r
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            layer = nxt
        raise ValueError("element not reachable")

    def elements(self) -> list:
        if not self.finite:
            raise ValueError(f"{self.name} is infinite")
        return self.ball(self.order())

    def __repr__(self):
        return self.name


class FiniteTable(Group):
    """A finite group from a multiplication table on 0..n-1 with identity 0."""

    finite = True

    def __init__(self, table, gens: dict, name="G"):
        self.table = [list(r) for r in table]
        n = len(self.table)
        self.n = n
        self.identity = 0
        self._gens = list(gens.items())
        self.name = name
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
            raise ValueError("0 must be the identity")
        self._inv = [None] * n
        for x in range(n):
            for y in range(n):
                if self.table[x][y] == 0:
                    self._inv[x] = y
                    break
            if self._inv[x] is None:
                raise ValueError("table is not a group")
        self._words = None

    def order(self):
        return self.n

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def key(self, a):
        return a

    def gen_items(self):
        return self._gens

    def word(self, g):
        if self._words is None:
            words = {0: []}
            dq = deque([0])
            while dq:
                x = dq.popleft()
                for n, s in self._gens:
                    y = self.mul(x, s)
                    if y not in words:
                        words[y] = compress(words[x] + [(n, 1)])
                        dq.append(y)
            if len(words) != self.n:
                raise ValueError("generators do not generate the table")
            self._words = words
        return self._words[g]

    def elements(self):
        return list(range(self.n))

    @classmethod
    def from_permutations(cls, gens: dict, name="G"):
        """The permutation group generated by the given tuples."""
        gens = {k: tuple(v) for k, v in gens.items()}
        n = len(next(iter(gens.values())))
        ident = tuple(range(n))
        elems = [ident]
        index = {ident: 0}
        dq = deque([ident])
        while dq:
            x = dq.popleft()
            for s in gens.values():
                y = tuple(x[s[i]] for i in range(n))
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    dq.append(y)
        table = [[index[tuple(a[b[i]] for i in range(n))] for b in elems] for a in elems]
        return cls(table, {k: index[v] for k, v in gens.items()}, name)


class Cyclic(Group):
    finite = True

    def __init__(self, n: int, gen="a"):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        self.gen = gen
        self.identity = 0
        self.name = f"Z/{n}"

    def order(self):
        return self.n

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    def key(self, a):
        return a

    def gen_items(self):
        return [(self.gen, 1 % self.n)] if self.n > 1 else []

    def word(self, g):
        return [(self.gen, g)] if g else []

    def elements(self):
        return list(range(self.n))

    def length(self, g):
        return min(g, self.n - g)


_TRIVIAL = None


def trivial_group() -> Cyclic:
    """The shared trivial group (so trivial embeddings agree on their source)."""
    global _TRIVIAL
    if _TRIVIAL is None:
        _TRIVIAL = Cyclic(1, "e1")
        _TRIVIAL.name = "1"
    return _TRIVIAL


class Integers(Group):
    def __init__(self, gen="a"):
        self.gen = gen
        self.identity = 0
        self.name = "Z"

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def key(self, a):
        return (abs(a), a < 0)

    def gen_items(self):
        return [(self.gen, 1)]

    def word(self, g):
        return [(self.gen, g)] if g else []

    def power(self, g, k):
        return g * k

    def length(self, g):
        return abs(g)


class FreeGroup(Group):
    """Free group on named generators; elements are reduced tuples of +-(i+1)."""

    def __init__(self, names=("a", "b")):
        self.names = tuple(names)
        self.identity = ()
        self.name = "F" + str(len(self.names))

    def mul(self, a, b):
        if not a:
            return b
        if not b:
            return a
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i] == -b[i]:
            i += 1
        return a[:len(a) - i] + b[i:]

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def key(self, a):
        return (len(a), a)

    def gen_items(self):
        return [(n, (i + 1,)) for i, n in enumerate(self.names)]

    def word(self, g):
        out = []
        for x in g:
            n = self.names[abs(x) - 1]
            e = 1 if x > 0 else -1
            if out and out[-1][0] == n:
                out[-1] = (n, out[-1][1] + e)
            else:
                out.append((n, e))
        return out

    def length(self, g):
        return len(g)

    def commutator(self, x, y):
        return self.prod(x, y, self.inv(x), self.inv(y))


def _check_names(groups):
    seen = set()
    for G in groups:
        for n, _ in G.gen_items():
            if n in seen:
                raise ValueError(f"generator name {n!r} used twice")
            seen.add(n)


class FreeProduct(Group):
    """Free product of factor groups; elements are alternating syllables (i, x)."""

    def __init__(self, factors):
        self.factors = list(factors)
        _check_names(self.factors)
        self.identity = ()
        self.name = "*".join(G.name for G in self.factors)
        self._letters = {}
        for i, G in enumerate(self.factors):
            for n, g in G.gen_items():
                self._letters[n] = ((i, g),)

    def inject(self, i, x):
        return () if x == self.factors[i].identity else ((i, x),)

    def mul(self, a, b):
        out = list(a)
        for i, x in b:
            if out and out[-1][0] == i:
                _, y = out.pop()
                z = self.factors[i].mul(y, x)
                if z != self.factors[i].identity:
                    out.append((i, z))
            else:
                out.append((i, x))
        return tuple(out)

    def inv(self, a):
        return tuple((i, self.factors[i].inv(x)) for i, x in reversed(a))

    def power(self, g, k: int):
        if len(g) == 1:
            i, x = g[0]
            return self.inject(i, self.factors[i].power(x, k))
        return Group.power(self, g, k)

    def key(self, a):
        return (self.length(a),tuple((i, self.factors[i].key(x)) for i, x in a))

    def gen_items(self):
        return [(n, g) for n, g in self._letters.items()]

    def word(self, g):
        out = []
        for i, x in g:
            out.extend(self.factors[i].word(x))
        return out

    def length(self, g):
        return sum(self.factors[i].length(x) for i, x in g)


class Embedding:
    """An injective homomorphism from an abstract group Sigma into a host.

    Besides the image map it decides membership, pulls back elements of the
    image, and picks canonical left coset representatives: left_rep(x)
    returns (r, s) with x = r * image(s), r depending only on the coset.
    """

    def __init__(self, host: Group, abstract: Group):
        self.host = host
        self.abstract = abstract

    def image(self, s):
        raise NotImplementedError

    def pullback(self, x):
        """s with image(s) = x, or None when x is not in the image."""
        raise NotImplementedError

    def contains(self, x) -> bool:
        return self.pullback(x) is not None

    def left_rep(self, x):
        raise NotImplementedError

    @property
    def trivial(self) -> bool:
        return self.abstract.finite and self.abstract.order() == 1

    def generator_images(self) -> list:
        return [self.image(g) for _, g in self.abstract.gen_items()]


class TrivialEmbedding(Embedding):
    def __init__(self, host, abstract=None):
        super().__init__(host, abstract if abstract is not None else trivial_group())

    def image(self, s):
        return self.host.identity

    def pullback(self, x):
        return self.abstract.identity if x == self.host.identity else None

    def left_rep(self, x):
        return x, self.abstract.identity


class FiniteEmbedding(Embedding):
    """Embedding of a finite group given by a map on its elements."""

    def __init__(self, host, abstract, f: Callable):
        super().__init__(host, abstract)
        self._img = {s: f(s) for s in abstract.elements()}
        self._back = {v: s for s, v in self._img.items()}
        if len(self._back) != len(self._img):
            raise ValueError("embedding is not injective")
        for a in abstract.elements():
            for b in abstract.elements():
                if host.mul(self._img[a], self._img[b]) != self._img[abstract.mul(a, b)]:
                    raise ValueError("embedding is not a homomorphism")
        self._reps = {}

    def image(self, s):
        return self._img[s]

    def pullback(self, x):
        return self._back.get(x)

    def left_rep(self, x):
        hit = self._reps.get(x)
        if hit is None:
            H = self.host
            r = min((H.mul(x, y) for y in self._back), key=H.key)
            hit = (r, self._back[H.mul(H.inv(r), x)])
            self._reps[x] = hit
        return hit


class CyclicEmbedding(Embedding):
    """k -> c^k from Z into a free group (or Z)."""

    def __init__(self, host, c, abstract=None):
        super().__init__(host, abstract if abstract is not None else Integers("s"))
        if c == host.identity:
            raise ValueError("generator of an infinite cyclic subgroup must be nontrivial")
        self.c = c
        self._reps = {}

    def image(self, k):
        return self.host.power(self.c, k)

    def _bound(self, x):
        return 2 * self.host.length(x) + 2 * self.host.length(self.c) + 2

    def pullback(self, x):
        H = self.host
        if x == H.identity:
            return 0
        B = H.length(x) + 1
        cur, curi = H.identity, H.identity
        ci = H.inv(self.c)
        for k in range(1, B + 1):
            cur = H.mul(cur, self.c)
            curi = H.mul(curi, ci)
            if cur == x:
                return k
            if curi == x:
                return -k
        return None

    def left_rep(self, x):
        hit = self._reps.get(x)
        if hit is not None:
            return hit
        H = self.host
        B = self._bound(x)
        best, best_k = x, 0
        up, down = x, x
        ci = H.inv(self.c)
        for k in range(1, B + 1):
            up = H.mul(up, self.c)
            down = H.mul(down, ci)
            for y, kk in ((up, k), (down, -k)):
                if H.key(y) < H.key(best):
                    best, best_k = y, kk
        hit = (best, -best_k)
        self._reps[x] = hit
        return hit


class Amalgam(Group):
    """Gamma_1 *_Sigma Gamma_2.

    Normal form: r_1 ... r_k s with r_j nontrivial canonical left coset
    representatives from alternating factors and s in the abstract Sigma.
    """

    def __init__(self, G1: Group, G2: Group, emb1: Embedding, emb2: Embedding, name=None):
        if emb1.host is not G1 or emb2.host is not G2:
            raise ValueError("embeddings must land in the factors")
        if emb1.abstract is not emb2.abstract:
            raise ValueError("both embeddings must start from the same Sigma")
        _check_names([G1, G2])
        self.factors = [G1, G2]
        self.embs = [emb1, emb2]
        self.Sigma = emb1.abstract
        self.identity = ((), self.Sigma.identity)
        self.name = name or f"{G1.name}*_{self.Sigma.name}{G2.name}"
        self._letters = {}
        for i, G in enumerate(self.factors):
            for n, g in G.gen_items():
                self._letters[n] = (i, g)

    def _rmul(self, syl, tail, i, h):
        G = self.factors[i]
        emb = self.embs[i]
        if syl and syl[-1][0] == i:
            _, r = syl.pop()
            x = G.mul(G.mul(r, emb.image(tail)), h)
        else:
            x = G.mul(emb.image(tail), h)
        r, s = emb.left_rep(x)
        if r != G.identity:
            syl.append((i, r))
        return s

    def inject(self, i, x):
        syl = []
        tail = self._rmul(syl, self.Sigma.identity, i, x)
        return (tuple(syl), tail)

    def sigma(self, s):
        return ((), s)

    def mul(self, a, b):
        syl = list(a[0])
        tail = a[1]
        for i, r in b[0]:
            tail = self._rmul(syl, tail, i, r)
        return (tuple(syl), self.Sigma.mul(tail, b[1]))

    def inv(self, a):
        syl = []
        tail = self.Sigma.inv(a[1])
        for i, r in reversed(a[0]):
            tail = self._rmul(syl, tail, i, self.factors[i].inv(r))
        return (tuple(syl), tail)

    def key(self, a):
        return (len(a[0]), tuple((i, self.factors[i].key(r)) for i, r in a[0]),
                self.Sigma.key(a[1]))

    def gen_items(self):
        return [(n, self.inject(i, g)) for n, (i, g) in self._letters.items()]

    def word(self, g):
        out = []
        for i, r in g[0]:
            out.extend(self.factors[i].word(r))
        if g[1] != self.Sigma.identity:
            out.extend(self.factors[0].word(self.embs[0].image(g[1])))
        return compress(out)

    def syllables(self, g) -> list:
        """g as a product of factor elements (i, x); the Sigma tail is folded into the last one."""
        out = [(i, r) for i, r in g[0]]
        if g[1] != self.Sigma.identity:
            if out:
                i, r = out.pop()
                out.append((i, self.factors[i].mul(r, self.embs[i].image(g[1]))))
            else:
                out.append((0, self.embs[0].image(g[1])))
        return out

    def factor_of(self, g):
        """Index of a factor containing g (0 for Sigma and the identity), or None."""
        if not g[0]:
            return 0
        if len(g[0]) == 1:
            return g[0][0][0]
        return None

    def length(self, g):
        if self.Sigma.finite and self.Sigma.order() == 1:
            return sum(self.factors[i].length(x) for i, x in g[0])
        return Group.length(self, g)


class HNN(Group):
    """HNN(H, Sigma, theta) with t a t^-1 = theta(a) for a in Sigma.

    A is the embedding of the abstract Sigma as a subgroup of H, B the
    embedding of its image under theta.  Normal form: r_1 t^e_1 ... r_k t^e_k h
    with r_j canonical coset representatives (of B before t, of A before
    t^-1) and no pinch.
    """

    def __init__(self, H: Group, A: Embedding, B: Embedding, t="t", name=None):
        if A.host is not H or B.host is not H:
            raise ValueError("embeddings must land in H")
        if A.abstract is not B.abstract:
            raise ValueError("A and B must share the abstract Sigma")
        if any(n == t for n, _ in H.gen_items()):
            raise ValueError(f"generator name {t!r} is reserved for the stable letter")
        self.H = H
        self.A = A
        self.B = B
        self.Sigma = A.abstract
        self.tname = t
        self.identity = ((), H.identity)
        self.name = name or f"HNN({H.name})"
        letters = []
        tail = self._rmul_t(letters, H.identity, 1)
        self.t = (tuple(letters), tail)

    def theta(self, h):
        """theta on A(Sigma) inside H."""
        s = self.A.pullback(h)
        if s is None:
            raise ValueError("element not in Sigma")
        return self.B.image(s)

    def theta_inv(self, h):
        s = self.B.pullback(h)
        if s is None:
            raise ValueError("element not in theta(Sigma)")
        return self.A.image(s)

    def inject(self, h):
        return ((), h)

    def _rmul_t(self, letters, tail, eps):
        H = self.H
        if eps == 1:
            r, s = self.B.left_rep(tail)
            new = self.A.image(s)
        else:
            r, s = self.A.left_rep(tail)
            new = self.B.image(s)
        if r == H.identity and letters and letters[-1][1] == -eps:
            prev, _ = letters.pop()
            return H.mul(prev, new)
        letters.append((r, eps))
        return new

    def mul(self, a, b):
        letters = list(a[0])
        tail = a[1]
        H = self.H
        for r, eps in b[0]:
            tail = H.mul(tail, r)
            tail = self._rmul_t(letters, tail, eps)
        return (tuple(letters), H.mul(tail, b[1]))

    def inv(self, a):
        H = self.H
        letters = []
        tail = H.inv(a[1])
        for r, eps in reversed(a[0]):
            tail = self._rmul_t(letters, tail, -eps)
            tail = H.mul(tail, H.inv(r))
        return (tuple(letters), tail)

    def key(self, a):
        H = self.H
        return (len(a[0]), tuple((H.key(r), e) for r, e in a[0]), H.key(a[1]))

    def gen_items(self):
        return [(n, self.inject(g)) for n, g in self.H.gen_items()] + [(self.tname, self.t)]

    def word(self, g):
        out = []
        for r, e in g[0]:
            out.extend(self.H.word(r))
            out.append((self.tname, e))
        out.extend(self.H.word(g[1]))
        return compress(out)

    def t_letters(self, g) -> int:
        return len(g[0])

    def pieces(self, g) -> list:
        """g as a sequence of H-elements ("h", x) and stable letters ("t", +-1), applied right to left."""
        out = []
        for r, e in g[0]:
            if r != self.H.identity:
                out.append(("h", r))
            out.append(("t", e))
        if g[1] != self.H.identity:
            out.append(("h", g[1]))
        return out
