"""The extension W(1) of an extended affine Weyl group by a finite abelian group.

Elements are triples ``(t, lam, w)`` meaning ``t * sigma(lam, w)`` where
``t`` lies in ``Zk = prod Z/k_i`` (written additively) and ``sigma`` is the
canonical lift: the lift of the length-zero part followed by the chosen
lifts of the affine simple reflections along the canonical reduced word.

The group law is fixed by three pieces of data:

* the action of the finite Weyl group on ``Zk`` (translations act trivially),
* the squares ``lift(s)^2`` in ``Zk`` for every affine simple reflection
  (all zero for the split extension),
* lifts of length-zero elements conjugate lifted reflections to lifted
  reflections and multiply without correction.

With these, ``sigma(x) lift(s)`` is ``sigma(xs)`` when the length goes up and
``(xs)(lift(s)^2) sigma(xs)`` when it goes down, which is all that the
product needs.
"""

from __future__ import annotations

from functools import lru_cache

from .coxeter import WeylGroup


class TorusData:
    """``Zk = prod Z/orders[i]`` with the finite Weyl group acting through
    integer matrices attached to the simple reflections."""

    def __init__(self, orders=(), simple_action=None):
        self.orders = tuple(int(o) for o in orders)
        self.k = len(self.orders)
        self.simple_action = {}
        for i, m in (simple_action or {}).items():
            self.simple_action[int(i)] = tuple(tuple(int(x) for x in row) for row in m)
        self.zero = tuple([0] * self.k)

    @property
    def trivial(self):
        return self.k == 0 or all(o == 1 for o in self.orders)

    def norm(self, t):
        return tuple(x % o for x, o in zip(t, self.orders))

    def add(self, a, b):
        if not self.k:
            return ()
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def elements(self):
        from itertools import product
        return [tuple(t) for t in product(*[range(o) for o in self.orders])]

    def generators(self):
        return [tuple(int(i == j) for j in range(self.k)) for i in range(self.k) if self.orders[i] > 1]

    def act_simple(self, i, t):
        m = self.simple_action.get(i)
        if m is None:
            return t
        return tuple(sum(m[r][c] * t[c] for c in range(self.k)) % self.orders[r] for r in range(self.k))


class ExtendedGroup:
    """W(1) over a top-level :class:`WeylGroup`, seen through the Levi ``W``.

    Multiplication is that of the top group; lengths, reduced words and
    generators are those of ``W`` (the top group itself unless this object
    was produced by :meth:`levi`).
    """

    def __init__(self, top, torus=None, squares=None, W=None, parent=None):
        self.top = top
        self.W = W if W is not None else top
        self.torus = torus if torus is not None else TorusData()
        self.squares = {}
        for name, t in (squares or {}).items():
            self.squares[name] = self.torus.norm(tuple(t))
        self.split = not any(any(t) for t in self.squares.values())
        self._top_sq = [self.squares.get(g.name, self.torus.zero) for g in top.gens]
        self.parent = parent if parent is not None else self
        self._act_cache = {}
        self.fw = top.fw

    # -- construction -----------------------------------------------------------
    def levi(self, subset):
        W = self.top.levi(subset)
        g = ExtendedGroup(self.top, self.torus, self.squares, W=W, parent=self.parent)
        g._act_cache = self._act_cache
        return g

    @property
    def zk_trivial(self):
        return self.torus.trivial

    # -- torus action ----------------------------------------------------------
    def act(self, w, t):
        """Finite Weyl group element (index) acting on t in Zk."""
        if not self.torus.k or w == 0 or not self.torus.simple_action:
            return t
        key = (w, t)
        r = self._act_cache.get(key)
        if r is None:
            r = t
            for i in reversed(self.fw.word(w)):
                r = self.torus.act_simple(i, r)
            self._act_cache[key] = r
        return r

    # -- group law ---------------------------------------------------------------
    def identity(self):
        return (self.torus.zero, self.top.zero, 0)

    def lift(self, x):
        """Canonical lift of a W element (lam, w)."""
        return (self.torus.zero, x[0], x[1])

    def torus_element(self, t):
        return (self.torus.norm(tuple(t)), self.top.zero, 0)

    @staticmethod
    def project(x):
        return (x[1], x[2])

    def mul(self, x, y):
        t, lam, w = x
        u, mu, v = y
        top = self.top
        xy = top.mul((lam, w), (mu, v))
        if not self.torus.k:
            return ((),) + xy
        tt = self.torus.add(t, self.act(w, u))
        if not self.split:
            tt = self.torus.add(tt, self._cocycle((lam, w), (mu, v)))
        return (tt,) + xy

    def _cocycle(self, x, y):
        return self._cocycle_cached(x, y)

    @lru_cache(maxsize=200000)
    def _cocycle_cached(self, x, y):
        top = self.top
        omega, word = top.reduced_word(y)
        cur = top.mul(x, omega)
        beta = self.torus.zero
        for g in word:
            down = top.is_right_descent(cur, g)
            cur = top.mul(cur, top.gens[g].element)
            if down:
                beta = self.torus.add(beta, self.act(cur[1], self._top_sq[g]))
        return beta

    def inv(self, x):
        t, lam, w = x
        xi = self.top.inv((lam, w))
        if not self.torus.k:
            return ((),) + xi
        # (s, xi) * (t, x) = (s + xi.t + beta(xi, x), 1) must vanish
        e = self.mul((self.torus.zero,) + xi, x)
        return (self.torus.neg(e[0]),) + xi

    def prod(self, *xs):
        out = self.identity()
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, x, n):
        if n < 0:
            return self.power(self.inv(x), -n)
        out = self.identity()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def conj(self, a, x):
        return self.mul(self.mul(a, x), self.inv(a))

    # -- lengths and words -------------------------------------------------------
    def length(self, x):
        return self.W.length((x[1], x[2]))

    def contains(self, x):
        return self.W.contains((x[1], x[2]))

    def gen_lift(self, g):
        return self.lift(self.W.gens[g].element)

    def is_right_descent(self, x, g):
        return self.W.is_right_descent((x[1], x[2]), g)

    def decompose(self, x):
        """(t, omega, word): x = t * lift(omega) * lift(s_word[0]) * ... ."""
        return self._decompose(x)

    @lru_cache(maxsize=200000)
    def _decompose(self, x):
        W = self.W
        omega, word = W.reduced_word((x[1], x[2]))
        y = self.lift(omega)
        for g in word:
            y = self.mul(y, self.gen_lift(g))
        # x = t * y
        t = self.mul(x, self.inv(y))
        assert t[1] == self.top.zero and t[2] == 0, "decomposition failed"
        return t[0], omega, word

    def compose(self, t, omega, word):
        y = self.mul(self.torus_element(t), self.lift(omega))
        for g in word:
            y = self.mul(y, self.gen_lift(g))
        return y

    def sort_key(self, x):
        t, omega, word = self.decompose(x)
        return (self.length(x), self.W.omega_coords(omega), word, t)

    def elements_up_to(self, max_length, omega_window=1, torus=True):
        base = [self.lift(x) for x in self.W.elements_up_to(max_length, omega_window)]
        if not torus or not self.torus.k:
            return base
        return [self.mul(self.torus_element(t), x) for t in self.torus.elements() for x in base]

    # -- orthogonal factorisation -------------------------------------------------
    def affine_subgroup_contains(self, x, subset):
        """Whether x lies in the subgroup generated by the lifted affine
        reflections of the Levi ``subset`` together with their squares."""
        W = self.top.levi(subset)
        lamw = (x[1], x[2])
        if not W.contains(lamw):
            return False
        omega, word = W.reduced_word(lamw)
        if omega != W.identity():
            return False
        return True

    def factor_orthogonal(self, x, m_subset, m2_subset):
        """x = x_M * x_2 with x_2 the lift of the finite M2-part of x.

        Assumes the two simple root sets are orthogonal.
        """
        fw = self.fw
        lam, w = x[1], x[2]
        wm, w2 = fw.decompose(w, m2_subset, side="right")
        # w = wm * w2 with w2 in W_M2 and wm minimal in wm W_M2, so wm in W_M
        x2 = self.lift((self.top.zero, w2))
        xm = self.mul(x, self.inv(x2))
        return xm, x2

    def orthogonal_factorize(self, x, m_subset):
        """(u, x_M, x_2) with x = u * x_M * x_2, u of length zero, x_M a product
        of lifted reflections of the Levi ``m_subset`` and x_2 of its complement.

        The Levi must be a union of components of the Dynkin diagram.  The
        torus part of x is kept in u.
        """
        W = self.W
        rd = self.top.rd
        m = set(m_subset)
        m2 = [i for i in W.subset if i not in m]
        if any(rd.cartan[i][j] for i in m for j in m2):
            raise ValueError("Levi is not orthogonal to its complement")
        t, omega, word = self.decompose(x)
        xm = self.identity()
        x2 = self.identity()
        for g in word:
            if set(W.gens[g].component) <= m:
                xm = self.mul(xm, self.gen_lift(g))
            else:
                x2 = self.mul(x2, self.gen_lift(g))
        u = self.mul(self.torus_element(t), self.lift(omega))
        return u, xm, x2

    def __repr__(self):
        return f"ExtendedGroup({self.W!r}, Zk={self.torus.orders})"
