"""Independent brute-force models used as test oracles.

Nothing here imports the package: groups are permutation or signed
permutation groups found by breadth-first search, Hecke algebras are
dicts over sympy expressions driven by the textbook multiplication rule.
"""

from __future__ import annotations

from itertools import permutations

import sympy


class PermCoxeter:
    """A finite Coxeter group realised by explicit generator actions on tuples.

    ``gens`` are functions on a point tuple; elements are stored as images of
    the base point, lengths come from breadth-first search on the Cayley graph.
    """

    def __init__(self, base, gens):
        self.gens = gens
        self.base = base
        self.length = {base: 0}
        frontier = [base]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g(x)
                    if y not in self.length:
                        self.length[y] = self.length[x] + 1
                        nxt.append(y)
            frontier = nxt
        self.elements = sorted(self.length, key=lambda x: (self.length[x], x))

    def from_word(self, word):
        # right action: x -> x.s means apply the generator to the coordinates
        x = self.base
        for i in word:
            x = self.right(x, i)
        return x

    def right(self, x, i):
        return self.gens[i](x)


def _swap(i):
    def f(x):
        x = list(x)
        x[i], x[i + 1] = x[i + 1], x[i]
        return tuple(x)
    return f


def _negate_last(x):
    return x[:-1] + (-x[-1],)


def symmetric_group(n):
    return PermCoxeter(tuple(range(1, n + 1)), [_swap(i) for i in range(n - 1)])


def hyperoctahedral_2():
    return PermCoxeter((1, 2), [_swap(0), _negate_last])


def direct_product_a1a1():
    def flip(k):
        def f(x):
            x = list(x)
            x[k] = -x[k]
            return tuple(x)
        return f
    return PermCoxeter((1, 1), [flip(0), flip(1)])


class BruteHecke:
    """Generic Hecke algebra on a PermCoxeter group with q[i] per generator."""

    def __init__(self, group, q):
        self.W = group
        self.q = q

    def times_gen(self, h, i):
        out = {}
        W = self.W
        for x, c in h.items():
            y = W.right(x, i)
            if W.length[y] > W.length[x]:
                out[y] = out.get(y, 0) + c
            else:
                out[y] = out.get(y, 0) + c * self.q[i]
                out[x] = out.get(x, 0) + c * (self.q[i] - 1)
        return {k: sympy.expand(v) for k, v in out.items() if sympy.expand(v) != 0}

    def word_of(self, x):
        """Some reduced word of x, found by descending the length."""
        W = self.W
        word = []
        while W.length[x] > 0:
            for i in range(len(W.gens)):
                y = W.right(x, i)
                if W.length[y] < W.length[x]:
                    word.append(i)
                    x = y
                    break
        return list(reversed(word))

    def mul(self, a, b):
        out = {}
        for y, cb in b.items():
            part = dict(a)
            for i in self.word_of(y):
                part = self.times_gen(part, i)
            for k, v in part.items():
                out[k] = out.get(k, 0) + v * cb
        return {k: sympy.expand(v) for k, v in out.items() if sympy.expand(v) != 0}

    def T(self, x):
        return {x: sympy.Integer(1)}

    def Tstar(self, x):
        out = {self.W.base: sympy.Integer(1)}
        for i in self.word_of(x):
            s = self.W.right(self.W.base, i)
            out = self.mul(out, {s: sympy.Integer(1), self.W.base: -(self.q[i] - 1)})
        return out

    def q_of(self, x):
        out = sympy.Integer(1)
        for i in self.word_of(x):
            out = out * self.q[i]
        return out


def descent_counts(n):
    """For S_n, the number of permutations whose right descent set is exactly D, for every D."""
    out = {}
    for p in permutations(range(n)):
        d = frozenset(i for i in range(n - 1) if p[i] > p[i + 1])
        out[d] = out.get(d, 0) + 1
    return out


def bott_series(exponents, n):
    """Coefficients of prod (1 + ... + t^e) / (1 - t^e) up to t^n."""
    t = sympy.symbols("t")
    f = sympy.Integer(1)
    for e in exponents:
        f = f * sum(t ** k for k in range(e + 1)) / (1 - t ** e)
    s = sympy.series(f, t, 0, n + 1).removeO()
    return [int(s.coeff(t, k)) for k in range(n + 1)]
