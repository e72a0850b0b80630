"""Finite and extended affine Weyl groups with exact integer data.

A root datum is given by simple roots (integer functionals on a lattice
``Lambda = Z^n``) and simple coroots (vectors in ``Lambda``).  The finite Weyl
group is enumerated once as integer matrices acting on ``Lambda``.

Elements of the extended affine Weyl group ``Lambda x| W0`` are pairs
``(lam, w)`` where ``lam`` is a tuple and ``w`` indexes the finite group.
The product is ``(lam, w)(mu, v) = (lam + w mu, wv)`` and ``(lam, w)``
acts on the apartment by ``x -> w x - lam``; with this sign an element
``lam`` that is dominant on the roots outside a Levi contracts the
corresponding unipotent radical, and the alcove is the one in the dominant
chamber touching the origin.

A :class:`WeylGroup` is attached to a subset ``J`` of the simple roots and
describes the Levi group ``Lambda x| W0_J`` with its own affine simple
reflections, length function and length-zero subgroup.  ``J`` equal to all
simple roots gives the group itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .linalg import smith_normal_form

_CARTAN_FROM_M = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}
_M_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _matvec(m, n, v):
    return tuple(sum(m[i * n + j] * v[j] for j in range(n)) for i in range(n))


def _vecmat(v, m, n):
    return tuple(sum(v[i] * m[i * n + j] for i in range(n)) for j in range(n))


def _matmul(a, b, n):
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n))
                 for i in range(n) for j in range(n))


class RootDatum:
    """Simple roots/coroots in ``Z^n``, the positive roots, and the finite Weyl group."""

    def __init__(self, roots, coroots, names=None):
        self.roots = [tuple(int(x) for x in r) for r in roots]
        self.coroots = [tuple(int(x) for x in c) for c in coroots]
        if len(self.roots) != len(self.coroots):
            raise ValueError("need as many coroots as roots")
        self.n = len(self.roots[0]) if self.roots else len(self.coroots[0]) if self.coroots else 0
        self.r = len(self.roots)
        if any(len(x) != self.n for x in self.roots + self.coroots):
            raise ValueError("roots and coroots must live in the same lattice rank")
        self.names = list(names) if names else [f"s{i + 1}" for i in range(self.r)]
        self.cartan = [[_dot(self.roots[i], self.coroots[j]) for j in range(self.r)]
                       for i in range(self.r)]
        for i in range(self.r):
            if self.cartan[i][i] != 2:
                raise ValueError(f"<alpha_{i + 1}, alpha_{i + 1}^v> must be 2")
        self.coxeter_matrix = [[1 if i == j else _M_FROM_PRODUCT.get(self.cartan[i][j] * self.cartan[j][i])
                                for j in range(self.r)] for i in range(self.r)]
        for i in range(self.r):
            for j in range(self.r):
                if self.coxeter_matrix[i][j] is None:
                    raise ValueError("Cartan matrix is not of finite type")
        self._build_roots()
        self.weyl = FiniteWeylGroup(self)

    @classmethod
    def from_cartan(cls, cartan, names=None):
        r = len(cartan)
        roots = [tuple(cartan[i]) for i in range(r)]
        coroots = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        return cls(roots, coroots, names)

    @classmethod
    def from_coxeter_matrix(cls, m, names=None):
        r = len(m)
        a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                if m[i][j] != m[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if m[i][j] not in _CARTAN_FROM_M:
                    raise ValueError(f"m = {m[i][j]} is not crystallographic")
                a[i][j], a[j][i] = _CARTAN_FROM_M[m[i][j]]
        return cls.from_cartan(a, names)

    def _build_roots(self):
        r = self.r
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        coeffs = list(simple)
        corts = list(self.coroots)
        seen = {c: k for k, c in enumerate(coeffs)}
        k = 0
        while k < len(coeffs):
            c, cv = coeffs[k], corts[k]
            for i in range(r):
                if c == simple[i]:
                    continue
                pair = sum(c[j] * self.cartan[j][i] for j in range(r))
                new = tuple(c[j] - (pair if j == i else 0) for j in range(r))
                if new in seen:
                    continue
                nc = tuple(x - _dot(self.roots[i], cv) * y for x, y in zip(cv, self.coroots[i]))
                seen[new] = len(coeffs)
                coeffs.append(new)
                corts.append(nc)
            k += 1
        order = sorted(range(len(coeffs)), key=lambda i: (sum(coeffs[i]), [-x for x in coeffs[i]]))
        self.pos_coeffs = [coeffs[i] for i in order]
        self.pos_coroots = [corts[i] for i in order]
        self.pos_roots = [tuple(sum(c[j] * self.roots[j][t] for j in range(r)) for t in range(self.n))
                          for c in self.pos_coeffs]
        self.nroots = len(self.pos_roots)
        self.root_index = {}
        for k, f in enumerate(self.pos_roots):
            if f in self.root_index or tuple(-x for x in f) in self.root_index:
                raise ValueError("roots are not distinct as functionals on the lattice")
            self.root_index[f] = k + 1
            self.root_index[tuple(-x for x in f)] = -(k + 1)
        self.simple_root_index = [self.pos_coeffs.index(s) for s in simple]

    def support(self, k):
        return frozenset(i for i, c in enumerate(self.pos_coeffs[k]) if c)

    def components(self, subset):
        subset = sorted(subset)
        comps = []
        left = set(subset)
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in list(left):
                    if j not in comp and self.cartan[i][j] != 0:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(tuple(sorted(comp)))
        return sorted(comps)

    def highest_root(self, component):
        comp = set(component)
        cands = [k for k in range(self.nroots) if self.support(k) <= comp]
        return max(cands, key=lambda k: (sum(self.pos_coeffs[k]), self.pos_coeffs[k]))

    def signature(self):
        return {"roots": [list(x) for x in self.roots], "coroots": [list(x) for x in self.coroots]}


class FiniteWeylGroup:
    """The finite Weyl group as integer matrices on the lattice.

    Elements are indices; index 0 is the identity and the enumeration is
    ordered by length and then by reduced word.
    """

    def __init__(self, rd, max_order=20000):
        self.rd = rd
        n = rd.n
        self.n = n
        ident = tuple(int(i == j) for i in range(n) for j in range(n))
        gens = []
        for i in range(rd.r):
            a, c = rd.roots[i], rd.coroots[i]
            gens.append(tuple(int(p == q) - c[p] * a[q] for p in range(n) for q in range(n)))
        self.gen_mats = gens
        mats = [ident]
        index = {ident: 0}
        words = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for i, g in enumerate(gens):
                    m = _matmul(mats[w], g, n)
                    if m not in index:
                        index[m] = len(mats)
                        mats.append(m)
                        words.append(words[w] + (i,))
                        nxt.append(index[m])
                        if len(mats) > max_order:
                            raise ValueError("finite Weyl group too large")
            frontier = nxt
        self.mats = mats
        self.index = index
        self.order = len(mats)
        self._mul = {}
        self.simple = [index[g] for g in gens]
        nr = rd.nroots
        self.root_act = []
        for m in mats:
            row = []
            for f in rd.pos_roots:
                row.append(rd.root_index[_vecmat(f, m, n)])
            self.root_act.append(tuple(row))
        self.inv = [index[self._mat_inverse(m)] for m in mats]
        # neg[w] = set of positive roots k with alpha_k o w negative, i.e. w^-1 alpha_k < 0
        self.neg = [frozenset(k for k in range(nr) if self.root_act[w][k] < 0) for w in range(self.order)]
        self.length = [len(x) for x in self.neg]
        self.reflection = []
        for k in range(nr):
            a, c = rd.pos_roots[k], rd.pos_coroots[k]
            self.reflection.append(index[tuple(int(p == q) - c[p] * a[q] for p in range(n) for q in range(n))])
        self._words = {}
        self.longest = max(range(self.order), key=lambda w: self.length[w])

    def _mat_inverse(self, m):
        n = self.n
        # w has finite order, so w^-1 = w^(k-1)
        p = m
        ident = tuple(int(i == j) for i in range(n) for j in range(n))
        prev = ident
        while p != ident:
            prev = p
            p = _matmul(p, m, n)
        return prev

    def mul(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            r = self.index[_matmul(self.mats[a], self.mats[b], self.n)]
            self._mul[key] = r
        return r

    def act(self, w, v):
        return _matvec(self.mats[w], self.n, v)

    def root_sign(self, w, k):
        """Signed index of the functional alpha_k o w."""
        return self.root_act[w][k]

    def word(self, w, subset=None):
        """Reduced word (simple indices) by stripping the smallest right descent."""
        key = (w, subset)
        if key in self._words:
            return self._words[key]
        rd = self.rd
        out = []
        x = w
        allowed = range(rd.r) if subset is None else sorted(subset)
        while x != 0:
            for i in allowed:
                if rd.simple_root_index[i] in self.neg[self.inv[x]]:
                    # alpha_i o x^-1 < 0  <=>  x alpha_i < 0  <=>  right descent
                    out.append(i)
                    x = self.mul(x, self.simple[i])
                    break
            else:
                raise ValueError("element not in the parabolic subgroup")
        res = tuple(reversed(out))
        self._words[key] = res
        return res

    def from_word(self, word):
        w = 0
        for i in word:
            w = self.mul(w, self.simple[i])
        return w

    def is_right_descent(self, w, i):
        return self.rd.simple_root_index[i] in self.neg[self.inv[w]]

    def is_left_descent(self, w, i):
        return self.rd.simple_root_index[i] in self.neg[w]

    def in_parabolic(self, w, subset):
        sub = set(subset)
        return all(self.rd.support(k) <= sub for k in self.neg[w])

    def parabolic(self, subset):
        return [w for w in range(self.order) if self.in_parabolic(w, subset)]

    def longest_in(self, subset):
        elems = self.parabolic(subset)
        return max(elems, key=lambda w: self.length[w])

    def min_coset_reps(self, subset, side="left"):
        """``side='left'``: minimal in W_J w (no left descents in J); ``'right'``: minimal in w W_J."""
        subset = sorted(subset)
        if side == "left":
            out = [w for w in range(self.order) if not any(self.is_left_descent(w, i) for i in subset)]
        elif side == "right":
            out = [w for w in range(self.order) if not any(self.is_right_descent(w, i) for i in subset)]
        else:
            raise ValueError("side must be 'left' or 'right'")
        return sorted(out, key=lambda w: (self.length[w], self.word(w)))

    def double_coset_reps(self, left, right):
        """Minimal representatives of W_left \\ W / W_right."""
        return [w for w in range(self.order)
                if not any(self.is_left_descent(w, i) for i in left)
                and not any(self.is_right_descent(w, i) for i in right)]

    def decompose(self, w, subset, side="left"):
        """Write w = u d (side 'left', u in W_J, d min in W_J d) or w = d u (side 'right')."""
        if side == "left":
            u = 0
            d = w
            while True:
                i = next((i for i in sorted(subset) if self.is_left_descent(d, i)), None)
                if i is None:
                    return u, d
                d = self.mul(self.simple[i], d)
                u = self.mul(u, self.simple[i])
        d = w
        u = 0
        while True:
            i = next((i for i in sorted(subset) if self.is_right_descent(d, i)), None)
            if i is None:
                return d, u
            d = self.mul(d, self.simple[i])
            u = self.mul(self.simple[i], u)

    def bruhat_le(self, x, y):
        """Subword criterion on the reduced word of y."""
        if self.length[x] > self.length[y]:
            return False
        if x == y:
            return True
        wy = self.word(y)
        if not wy:
            return x == 0
        i = wy[-1]
        ys = self.mul(y, self.simple[i])
        if self.is_right_descent(x, i):
            return self.bruhat_le(self.mul(x, self.simple[i]), ys)
        return self.bruhat_le(x, ys)


@dataclass(frozen=True)
class Generator:
    """An affine simple reflection: group element, affine root and name."""

    name: str
    element: tuple
    root: int          # signed positive-root index of the linear part
    shift: int         # constant term of the affine root
    component: tuple


class WeylGroup:
    """The (Levi of the) extended affine Weyl group for simple roots ``J``.

    ``kind='finite'`` gives the finite Weyl group ``W0_J`` only (no
    translations, no affine reflections).
    """

    def __init__(self, rd, subset=None, kind="affine", top=None):
        self.rd = rd
        self.fw = rd.weyl
        self.kind = kind
        self.subset = tuple(sorted(range(rd.r) if subset is None else subset))
        self.top = top if top is not None else self
        self.is_top = top is None or (self.subset == top.subset)
        self.n = rd.n
        self.zero = tuple([0] * rd.n)
        sub = set(self.subset)
        self.pos = [k for k in range(rd.nroots) if rd.support(k) <= sub]
        self.pos_set = frozenset(self.pos)
        self.components = rd.components(self.subset)
        gens = []
        if kind == "affine":
            for comp in self.components:
                th = rd.highest_root(comp)
                lam = tuple(-x for x in rd.pos_coroots[th])
                el = (lam, self.fw.reflection[th])
                if self.is_top and len(self.components) == 1:
                    name = "s0"
                else:
                    name = "s0_" + "-".join(str(i + 1) for i in comp)
                gens.append(Generator(name, el, -(th + 1), 1, comp))
        for i in self.subset:
            k = rd.simple_root_index[i]
            comp = next(c for c in self.components if i in c)
            gens.append(Generator(rd.names[i], (self.zero, self.fw.simple[i]), k + 1, 0, comp))
        self.gens = gens
        self.gen_index = {g.name: i for i, g in enumerate(gens)}
        self.gen_by_element = {g.element: i for i, g in enumerate(gens)}
        self._length = {}
        self._word = {}
        self._setup_omega()

    # -- basic group operations -------------------------------------------------
    def identity(self):
        return (self.zero, 0)

    def mul(self, x, y):
        lam, w = x
        mu, v = y
        if v == 0 and not any(mu):
            return x
        if w == 0 and not any(lam):
            return y
        wm = self.fw.act(w, mu) if w else mu
        return (tuple(a + b for a, b in zip(lam, wm)), self.fw.mul(w, v))

    def inv(self, x):
        lam, w = x
        wi = self.fw.inv[w]
        return (tuple(-a for a in self.fw.act(wi, lam)), wi)

    def prod(self, *xs):
        out = self.identity()
        for x in xs:
            out = self.mul(out, x)
        return out

    def translation(self, lam):
        return (tuple(lam), 0)

    def contains(self, x):
        lam, w = x
        if self.kind == "finite" and any(lam):
            return False
        return self.fw.in_parabolic(w, self.subset)

    # -- length -------------------------------------------------------------
    def length(self, x):
        r = self._length.get(x)
        if r is not None:
            return r
        lam, w = x
        pos = self.rd.pos_roots
        neg = self.fw.neg[w]
        total = 0
        for k in self.pos:
            c = -_dot(pos[k], lam)
            total += abs(c - 1) if k in neg else abs(c)
        self._length[x] = total
        return total

    def affine_root_sign(self, x, g):
        """Sign (+1/-1) of the image of the affine root of ``g`` under ``x``."""
        lam, w = x
        gen = self.gens[g]
        wi = self.fw.inv[w]
        r = gen.root
        k = abs(r) - 1
        s = self.fw.root_act[wi][k]
        if r < 0:
            s = -s
        beta = self.rd.pos_roots[abs(s) - 1]
        m = _dot(beta, lam) * (1 if s > 0 else -1) + gen.shift
        if m > 0 or (m == 0 and s > 0):
            return 1
        return -1

    def is_right_descent(self, x, g):
        return self.affine_root_sign(x, g) < 0

    def is_left_descent(self, x, g):
        return self.affine_root_sign(self.inv(x), g) < 0

    def right_descents(self, x):
        return [g for g in range(len(self.gens)) if self.is_right_descent(x, g)]

    def left_descents(self, x):
        return [g for g in range(len(self.gens)) if self.is_left_descent(x, g)]

    def reduced_word(self, x):
        """(omega, word) with x = omega * s_word[0] * ... and omega of length 0."""
        r = self._word.get(x)
        if r is not None:
            return r
        out = []
        y = x
        while True:
            g = next((g for g in range(len(self.gens)) if self.is_right_descent(y, g)), None)
            if g is None:
                break
            out.append(g)
            y = self.mul(y, self.gens[g].element)
        res = (y, tuple(reversed(out)))
        self._word[x] = res
        return res

    def from_word(self, word, omega=None):
        x = omega if omega is not None else self.identity()
        for g in word:
            x = self.mul(x, self.gens[g].element)
        return x

    def word_names(self, word):
        return [self.gens[g].name for g in word]

    # -- length-zero subgroup -------------------------------------------------
    def _setup_omega(self):
        if self.kind == "finite":
            self.omega_invariants = []
            self.omega_free = 0
            self._omega_u = None
            self.omega_generators = []
            return
        rd = self.rd
        n = rd.n
        cols = [rd.coroots[i] for i in self.subset]
        if cols:
            cmat = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
            d, u, _ = smith_normal_form(cmat)
            diag = [d[i][i] if i < len(cols) else 0 for i in range(n)]
        else:
            u = [[int(i == j) for j in range(n)] for i in range(n)]
            diag = [0] * n
        uinv = _int_inverse(u)
        self._omega_u = u
        self._omega_uinv = uinv
        self._omega_slots = [i for i in range(n) if diag[i] != 1]
        self._omega_mod = [diag[i] for i in self._omega_slots]
        self.omega_invariants = [m for m in self._omega_mod if m]
        self.omega_free = sum(1 for m in self._omega_mod if m == 0)
        self.omega_generators = []
        for t, i in enumerate(self._omega_slots):
            coords = tuple(int(s == t) for s in range(len(self._omega_slots)))
            self.omega_generators.append(self.omega_from_coords(coords))

    def omega_coords(self, x):
        """Coordinates of the class of x in Lambda / (coroot lattice of J)."""
        if self.kind == "finite":
            return ()
        lam = x[0]
        u = self._omega_u
        out = []
        for i, m in zip(self._omega_slots, self._omega_mod):
            c = _dot(u[i], lam)
            out.append(c % m if m else c)
        return tuple(out)

    def omega_from_coords(self, coords):
        if self.kind == "finite":
            return self.identity()
        return self._omega_from_coords(tuple(coords))

    @lru_cache(maxsize=None)
    def _omega_from_coords(self, coords):
        n = self.n
        full = [0] * n
        for c, i in zip(coords, self._omega_slots):
            full[i] = c
        lam = tuple(_dot([self._omega_uinv[r][s] for s in range(n)], full) for r in range(n))
        omega, _ = self.reduced_word(self.translation(lam))
        return omega

    def omega_order(self, i):
        m = self._omega_mod[i]
        return m if m else None

    def conj_gen(self, omega, g):
        """Index of omega s_g omega^-1 among the generators."""
        y = self.mul(self.mul(omega, self.gens[g].element), self.inv(omega))
        return self.gen_by_element[y]

    # -- misc -----------------------------------------------------------------
    def levi(self, subset):
        return WeylGroup(self.rd, subset, self.kind, top=self.top)

    def positive_part(self, x, levi_subset, sign=1):
        """Whether the translation of x pairs >= 0 (sign=1) or <= 0 (sign=-1)
        with every positive root outside the Levi ``levi_subset``."""
        lam = x[0]
        sub = set(levi_subset)
        for k in self.pos:
            if self.rd.support(k) <= sub:
                continue
            v = _dot(self.rd.pos_roots[k], lam) * sign
            if v < 0:
                return False
        return True

    def dominant_central(self, levi_subset):
        """A translation orthogonal to the Levi roots and strictly positive on
        the other simple roots of this group."""
        rd = self.rd
        idx = list(self.subset)
        target = [0 if i in levi_subset else 1 for i in idx]
        # solve sum_j c_j <alpha_i, alpha_j^v> = target_i over QQ (Cartan of J)
        from fractions import Fraction
        a = [[Fraction(rd.cartan[i][j]) for j in idx] + [Fraction(target[t])] for t, i in enumerate(idx)]
        m = len(idx)
        for c in range(m):
            p = next(r for r in range(c, m) if a[r][c] != 0)
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(m):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        coeffs = [a[t][m] for t in range(m)]
        from math import lcm
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        lam = [0] * self.n
        for c, i in zip(coeffs, idx):
            for t in range(self.n):
                lam[t] += int(c * den) * rd.coroots[i][t]
        return tuple(lam)

    def elements_up_to(self, max_length, omega_window=1):
        """Elements omega * w with ell(w) <= max_length and omega in a window."""
        if self.kind == "finite":
            omegas = [self.identity()]
        else:
            ranges = []
            for m in self._omega_mod:
                ranges.append(range(m) if m else range(-omega_window, omega_window + 1))
            omegas = [self.omega_from_coords(c) for c in product(*ranges)]
        aff = [self.identity()]
        seen = {self.identity()}
        frontier = [self.identity()]
        for _ in range(max_length):
            nxt = []
            for x in frontier:
                for g in range(len(self.gens)):
                    if self.is_right_descent(x, g):
                        continue
                    y = self.mul(x, self.gens[g].element)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            aff.extend(nxt)
            frontier = nxt
        return [self.mul(o, a) for o in omegas for a in aff]

    def __repr__(self):
        return f"WeylGroup(J={[i + 1 for i in self.subset]}, kind={self.kind})"


def _int_inverse(u):
    n = len(u)
    from fractions import Fraction
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


class CoxeterSystem(WeylGroup):
    """A finite crystallographic Coxeter system built from its Coxeter matrix."""

    def __init__(self, matrix, names=None):
        rd = RootDatum.from_coxeter_matrix(matrix, names)
        super().__init__(rd, kind="finite")
        self.matrix = [list(r) for r in matrix]
