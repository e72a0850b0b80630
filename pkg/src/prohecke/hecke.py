"""Generic pro-p Iwahori Hecke algebras over W(1).

An algebra is attached to an :class:`~prohecke.weyl_ext.ExtendedGroup` (the
whole group or one of its Levi subgroups), a coefficient ring, the
parameters ``q_s`` and the group-algebra elements ``c_s``:

    T_w T_w' = T_ww'            when lengths add,
    T_s^2    = q_s T_{s^2} + c_s T_s.

Elements are kept in the T basis as dicts ``{W(1) element: coefficient}``.
The second basis is ``T*_s = T_s - c_s`` extended multiplicatively along
reduced words; conversions are triangular in the length.

Text form: ``q^2*T[s1.s2] + (q-1)*T*[s0]``.  A basis label lists the torus
part ``t(..)``, the length-zero part ``o(..)`` (coordinates of its class) and
the reduced word, separated by dots; ``T[]`` is the unit.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .rings import PolynomialRing, ZZ


class HeckeElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = terms if terms is not None else {}

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        other = self.alg.coerce(other)
        return HeckeElement(self.alg, _add(self.terms, other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.alg.coerce(other)
        return HeckeElement(self.alg, _add(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return self.alg.coerce(other) - self

    def __neg__(self):
        return HeckeElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.alg.multiply(self, other)
        c = self.alg.ring(other)
        if c == 0:
            return HeckeElement(self.alg, {})
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w != 0:
                out[k] = w
        return HeckeElement(self.alg, out)

    def __rmul__(self, other):
        if isinstance(other, HeckeElement):
            return self.alg.multiply(other, self)
        return self.__mul__(other)

    def __pow__(self, e):
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            try:
                other = self.alg.coerce(other)
            except Exception:
                return False
        a = {k: v for k, v in self.terms.items() if v != 0}
        b = {k: v for k, v in other.terms.items() if v != 0}
        if a.keys() != b.keys():
            return False
        return all(a[k] == b[k] for k in a)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self):
        return all(v == 0 for v in self.terms.values())

    def coefficient(self, x):
        return self.terms.get(x, self.alg.ring.zero)

    def support(self):
        return [k for k, v in self.terms.items() if v != 0]

    def star_terms(self):
        return self.alg.to_star(self)

    def map_coefficients(self, f, alg=None):
        alg = alg or self.alg
        out = {}
        for k, v in self.terms.items():
            w = f(v)
            if w != 0:
                out[k] = w
        return HeckeElement(alg, out)

    def __repr__(self):
        return self.alg.render(self)

    def render(self, basis="T"):
        return self.alg.render(self, basis=basis)


def _add(a, b, sign):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + (v if sign == 1 else -v)
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _iadd(out, k, v):
    w = out.get(k)
    w = v if w is None else w + v
    if w == 0:
        out.pop(k, None)
    else:
        out[k] = w


class HeckeAlgebra:
    """The Hecke algebra of ``group`` with parameters ``q`` and ``c``.

    ``q`` maps each affine simple reflection name of the top group to a ring
    element (constant on conjugacy classes).  ``c`` maps a name to a dict
    ``{t: coefficient}`` on ``Zk``; by default ``c_s = (q_s - 1) T_1``.
    """

    def __init__(self, group, ring=None, q=None, c=None, parent=None, levi_subset=None, zprime=None):
        self.group = group
        self.W = group.W
        top = group.top
        self.top_algebra = parent.top_algebra if parent is not None else self
        self.parent = parent
        self.levi_subset = tuple(levi_subset) if levi_subset is not None else self.W.subset
        if parent is None:
            self.classes = parameter_classes(group)
            if ring is None:
                names = sorted({cl for cl in self.classes.values()}, key=_class_sort)
                ring = PolynomialRing(names)
            self.ring = ring
            if q is None:
                q = {g.name: ring.gen(self.classes[g.name]) for g in top.gens}
            self.q_top = {k: ring(v) for k, v in q.items()}
            for g in top.gens:
                if g.name not in self.q_top:
                    raise ValueError(f"missing parameter for {g.name}")
            for a in top.gens:
                for b in top.gens:
                    if self.classes[a.name] == self.classes[b.name] and self.q_top[a.name] != self.q_top[b.name]:
                        raise ValueError("parameters must be constant on conjugacy classes")
            tz = group.torus.zero
            self.zprime_top = {g.name: [group.torus.norm(tuple(t)) for t in (zprime or {}).get(g.name, [])]
                               for g in top.gens}
            self.c_top = {}
            for g in top.gens:
                if c is not None and g.name in c:
                    self.c_top[g.name] = {group.torus.norm(tuple(t)): ring(v) for t, v in c[g.name].items()
                                          if ring(v) != 0}
                else:
                    v = self.q_top[g.name] - 1
                    self.c_top[g.name] = {tz: v} if v != 0 else {}
        else:
            self.classes = parent.top_algebra.classes
            self.ring = parent.ring
            self.q_top = parent.top_algebra.q_top
            self.c_top = parent.top_algebra.c_top
            self.zprime_top = parent.top_algebra.zprime_top
        self._setup_generators()
        self._prod = {}
        self._star = {}
        self._rmul = {}
        self._lmul = {}

    # -- setup -------------------------------------------------------------------
    def _setup_generators(self):
        G = self.group
        top = G.top
        self.gen_lift = []
        self.gen_q = []
        self.gen_c = []
        self.gen_right_tail = []   # per generator: list of (torus elt s^-1 t s, coeff)
        self.gen_left_tail = []
        self.gen_class = []
        self.gen_zprime = []       # generators of Z'_{k,s}
        for gi, g in enumerate(self.W.gens):
            lift = G.lift(g.element)
            name, conj = conjugate_to_simple(top, g.element)
            qv = self.q_top[name]
            # transport c along lift(r) = conj * lift(s) * conj^-1 up to a torus element
            s_lift = G.lift(top.gens[top.gen_index[name]].element)
            conj_l = G.lift(conj)
            r_hat = G.conj(conj_l, s_lift)
            t0 = G.mul(r_hat, G.inv(lift))      # r_hat = t0 * lift
            t1 = G.torus.neg(t0[0]) if G.torus.k else ()
            shift = G.act(g.element[1], t1) if G.torus.k else ()
            cvals = {}
            for t, v in self.c_top[name].items():
                tt = G.act(conj[1], t) if G.torus.k else t
                tt = G.torus.add(shift, tt) if G.torus.k else ()
                cvals[tt] = cvals.get(tt, 0) + v
            cvals = {t: v for t, v in cvals.items() if v != 0}
            self.gen_lift.append(lift)
            self.gen_q.append(qv)
            self.gen_c.append(cvals)
            self.gen_class.append(self.classes[name])
            self.gen_zprime.append([G.act(conj[1], t) for t in self.zprime_top[name]] if G.torus.k else [])
            inv = G.inv(lift)
            tails = []
            for t, v in cvals.items():
                tails.append((G.mul(G.mul(inv, G.torus_element(t)), lift), v))
            self.gen_right_tail.append(tails)
            self.gen_left_tail.append([(G.torus_element(t), v) for t, v in cvals.items()])

    def levi(self, subset):
        """The Hecke algebra of the Levi subgroup with simple roots ``subset``."""
        key = tuple(sorted(subset))
        cache = self.top_algebra.__dict__.setdefault("_levis", {})
        if key not in cache:
            if key == self.top_algebra.W.subset:
                cache[key] = self.top_algebra
            else:
                grp = self.top_algebra.group.levi(key)
                cache[key] = HeckeAlgebra(grp, parent=self.top_algebra, levi_subset=key)
        return cache[key]

    @property
    def is_top(self):
        return self.parent is None

    # -- elements --------------------------------------------------------------
    def zero(self):
        return HeckeElement(self, {})

    def one(self):
        return self.T(self.group.identity())

    def T(self, x, coeff=None):
        if isinstance(x, str):
            x = self.parse_label(x)
        c = self.ring.one if coeff is None else self.ring(coeff)
        return HeckeElement(self, {x: c} if c != 0 else {})

    def Tstar(self, x):
        if isinstance(x, str):
            x = self.parse_label(x)
        return HeckeElement(self, dict(self.star_basis(x)))

    def Tgen(self, g):
        if isinstance(g, str):
            g = self.W.gen_index[g]
        return self.T(self.gen_lift[g])

    def c_element(self, g):
        if isinstance(g, str):
            g = self.W.gen_index[g]
        return HeckeElement(self, {self.group.torus_element(t): v for t, v in self.gen_c[g].items()})

    def coerce(self, x):
        if isinstance(x, HeckeElement):
            if x.alg is not self:
                raise ValueError("elements of different algebras")
            return x
        c = self.ring(x)
        return HeckeElement(self, {self.group.identity(): c} if c != 0 else {})

    # -- multiplication --------------------------------------------------------
    def rmul_gen(self, x, g):
        """T_x T_{lift(s_g)} as a tuple of (element, coefficient)."""
        key = (x, g)
        r = self._rmul.get(key)
        if r is not None:
            return r
        G = self.group
        y = G.mul(x, self.gen_lift[g])
        if not G.is_right_descent(x, g):
            r = ((y, self.ring.one),)
        else:
            out = {}
            if self.gen_q[g] != 0:
                out[y] = self.gen_q[g]
            for tail, v in self.gen_right_tail[g]:
                _iadd(out, G.mul(x, tail), v)
            r = tuple(out.items())
        self._rmul[key] = r
        return r

    def lmul_gen(self, g, x):
        """T_{lift(s_g)} T_x."""
        key = (g, x)
        r = self._lmul.get(key)
        if r is not None:
            return r
        G = self.group
        y = G.mul(self.gen_lift[g], x)
        if not self.W.is_left_descent((x[1], x[2]), g):
            r = ((y, self.ring.one),)
        else:
            out = {}
            if self.gen_q[g] != 0:
                out[y] = self.gen_q[g]
            for t, v in self.gen_left_tail[g]:
                _iadd(out, G.mul(t, x), v)
            r = tuple(out.items())
        self._lmul[key] = r
        return r

    def basis_product(self, x, y):
        key = (x, y)
        r = self._prod.get(key)
        if r is not None:
            return r
        G = self.group
        t, omega, word = G.decompose(y)
        head = G.mul(G.mul(x, G.torus_element(t)), G.lift(omega))
        cur = {head: self.ring.one}
        for g in word:
            nxt = {}
            for z, c in cur.items():
                for w, d in self.rmul_gen(z, g):
                    _iadd(nxt, w, c * d)
            cur = nxt
        r = tuple(cur.items())
        self._prod[key] = r
        return r

    def basis_product_left(self, x, y):
        """T_x T_y computed by letting the letters of x act on T_y from the left."""
        G = self.group
        t, omega, word = G.decompose(x)
        cur = {y: self.ring.one}
        for g in reversed(word):
            nxt = {}
            for z, c in cur.items():
                for w, d in self.lmul_gen(g, z):
                    _iadd(nxt, w, c * d)
            cur = nxt
        head = G.mul(G.torus_element(t), G.lift(omega))
        return {G.mul(head, z): c for z, c in cur.items()}

    def multiply(self, a, b):
        out = {}
        for y, cb in b.terms.items():
            if cb == 0:
                continue
            for x, ca in a.terms.items():
                if ca == 0:
                    continue
                cc = ca * cb
                for z, d in self.basis_product(x, y):
                    _iadd(out, z, cc * d)
        return HeckeElement(self, out)

    def rmul_gen_star(self, x, g):
        """T*_x T*_{lift(s_g)} in the T* basis (same rule as T with c negated)."""
        key = (x, g)
        cache = self.__dict__.setdefault("_rmul_star", {})
        r = cache.get(key)
        if r is not None:
            return r
        G = self.group
        y = G.mul(x, self.gen_lift[g])
        if not G.is_right_descent(x, g):
            r = ((y, self.ring.one),)
        else:
            out = {}
            if self.gen_q[g] != 0:
                out[y] = self.gen_q[g]
            for tail, v in self.gen_right_tail[g]:
                _iadd(out, G.mul(x, tail), -v)
            r = tuple(out.items())
        cache[key] = r
        return r

    def basis_product_star(self, x, y):
        """T*-coordinates of T*_x T*_y."""
        key = (x, y)
        cache = self.__dict__.setdefault("_prod_star", {})
        r = cache.get(key)
        if r is not None:
            return r
        G = self.group
        t, omega, word = G.decompose(y)
        head = G.mul(G.mul(x, G.torus_element(t)), G.lift(omega))
        cur = {head: self.ring.one}
        for g in word:
            nxt = {}
            for z, c in cur.items():
                for w, d in self.rmul_gen_star(z, g):
                    _iadd(nxt, w, c * d)
            cur = nxt
        r = tuple(cur.items())
        cache[key] = r
        return r

    def multiply_star(self, a, b):
        """Product of two elements given by T*-coordinate dicts."""
        out = {}
        for y, cb in b.items():
            if cb == 0:
                continue
            for x, ca in a.items():
                if ca == 0:
                    continue
                cc = ca * cb
                for z, d in self.basis_product_star(x, y):
                    _iadd(out, z, cc * d)
        return out

    # -- the T* basis -----------------------------------------------------------
    def star_basis(self, x):
        """T*_x written in the T basis (a dict)."""
        r = self._star.get(x)
        if r is not None:
            return r
        G = self.group
        t, omega, word = G.decompose(x)
        cur = {G.mul(G.torus_element(t), G.lift(omega)): self.ring.one}
        for g in word:
            nxt = {}
            for z, c in cur.items():
                for w, d in self.rmul_gen(z, g):
                    _iadd(nxt, w, c * d)
                for tt, v in self.gen_c[g].items():
                    _iadd(nxt, G.mul(z, G.torus_element(tt)), -(c * v))
            cur = nxt
        self._star[x] = cur
        return cur

    def to_star(self, h):
        """Coordinates of h in the T* basis (a dict)."""
        rest = {k: v for k, v in h.terms.items() if v != 0}
        out = {}
        L = self.group.length
        while rest:
            x = max(rest, key=lambda k: (L(k), self.group.sort_key(k)))
            a = rest[x]
            out[x] = a
            for z, c in self.star_basis(x).items():
                _iadd(rest, z, -(a * c))
            rest.pop(x, None)
        return out

    def from_star(self, coords):
        out = {}
        for x, a in coords.items():
            if a == 0:
                continue
            for z, c in self.star_basis(x).items():
                _iadd(out, z, a * c)
        return HeckeElement(self, out)

    # -- parameters ---------------------------------------------------------------
    def q_factor(self, x):
        """q_x: product of the parameters along a reduced word of x."""
        _, _, word = self.group.decompose(x)
        out = self.ring.one
        for g in word:
            out = out * self.gen_q[g]
        return out

    def q_factor_split(self, x, m_subset):
        """(q_M(x), q_{M2}(x)) for a Levi ``m_subset`` orthogonal to its
        complement M2, from the letters of the orthogonal factorisation."""
        _, xm, x2 = self.group.orthogonal_factorize(x, m_subset)
        return self.q_factor(xm), self.q_factor(x2)

    # -- Levi maps ---------------------------------------------------------------
    def in_positive(self, x, sign=1):
        """x in W_{M+}(1) (sign=1) or W_{M-}(1) (sign=-1) for this Levi."""
        top = self.top_algebra
        return top.W.positive_part((x[1], x[2]), self.levi_subset, sign)

    def theta(self, h):
        """T^M_m -> T_m on the positive part."""
        top = self.top_algebra
        out = {}
        for x, v in h.terms.items():
            if v == 0:
                continue
            if not self.in_positive(x, 1):
                raise ValueError("theta is only defined on the positive part")
            out[x] = v
        return HeckeElement(top, out)

    def theta_star(self, h):
        """T^{M,*}_m -> T*_m on the positive or negative part."""
        top = self.top_algebra
        coords = self.to_star(h)
        for x in coords:
            if not (self.in_positive(x, 1) or self.in_positive(x, -1)):
                raise ValueError("theta* is only defined on the positive and negative parts")
        return top.from_star(coords)

    def theta_star_coords(self, h):
        return self.to_star(h)

    # -- rendering ------------------------------------------------------------------
    def label(self, x):
        t, omega, word = self.group.decompose(x)
        parts = []
        if self.group.torus.k and any(t):
            parts.append("t(" + ",".join(str(v) for v in t) + ")")
        if omega != self.W.identity():
            parts.append("o(" + ",".join(str(v) for v in self.W.omega_coords(omega)) + ")")
        parts.extend(self.W.gens[g].name for g in word)
        return ".".join(parts)

    def parse_label(self, s):
        G = self.group
        s = s.strip()
        x = G.identity()
        if not s:
            return x
        for part in s.split("."):
            part = part.strip()
            if part.startswith("t("):
                vals = tuple(int(v) for v in part[2:-1].split(","))
                x = G.mul(x, G.torus_element(vals))
            elif part.startswith("o("):
                vals = tuple(int(v) for v in part[2:-1].split(",")) if part[2:-1].strip() else ()
                x = G.mul(x, G.lift(self.W.omega_from_coords(vals)))
            else:
                if part not in self.W.gen_index:
                    raise ValueError(f"unknown generator {part!r}")
                x = G.mul(x, self.gen_lift[self.W.gen_index[part]])
        return x

    def render(self, h, basis="T"):
        if basis == "T*":
            coords = self.to_star(h)
            tag = "T*"
        else:
            coords = {k: v for k, v in h.terms.items() if v != 0}
            tag = "T"
        if not coords:
            return "0"
        keys = sorted(coords, key=self.group.sort_key)
        out = []
        for k in keys:
            c = coords[k]
            lab = f"{tag}[{self.label(k)}]"
            cs = self.ring.render(c).replace(" ", "")
            neg = False
            if _is_simple_coeff(cs):
                if cs.startswith("-"):
                    neg, cs = True, cs[1:]
                body = lab if cs == "1" else f"{cs}*{lab}"
            else:
                body = f"({cs})*{lab}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def parse(self, s):
        terms = _split_terms(s)
        total = self.zero()
        for sign, term in terms:
            m = re.search(r"(T\*?)\[([^\]]*)\]\s*$", term)
            if m:
                coeff_s = term[:m.start()].strip()
                if coeff_s.endswith("*"):
                    coeff_s = coeff_s[:-1].strip()
                x = self.parse_label(m.group(2))
                basis = self.T(x) if m.group(1) == "T" else self.Tstar(x)
            else:
                coeff_s = term.strip()
                basis = self.one()
            c = self.ring.parse(coeff_s) if coeff_s else self.ring.one
            if sign < 0:
                c = -c
            total = total + basis * c
        return total

    def __repr__(self):
        return f"HeckeAlgebra({self.W!r}, {self.ring!r})"


def _is_simple_coeff(cs):
    body = cs[1:] if cs.startswith("-") else cs
    return "+" not in body and "-" not in body


def _split_terms(s):
    out = []
    depth = 0
    cur = ""
    sign = 1
    s = s.strip()
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "^")):
            out.append((sign, cur))
            cur = ""
            sign = 1 if ch == "+" else -1
        elif depth == 0 and ch == "-" and not cur.strip():
            sign = -sign
        elif depth == 0 and ch == "+" and not cur.strip():
            pass
        else:
            cur += ch
        i += 1
    if cur.strip():
        out.append((sign, cur))
    return out


def _class_sort(name):
    return (len(name), name)


def conjugate_to_simple(top, r):
    """For a reflection r of the top group, (name of a conjugate simple
    reflection s, element y) with r = y s y^-1."""
    y = top.identity()
    cur = r
    for _ in range(10000):
        g = top.gen_by_element.get(cur)
        if g is not None:
            return top.gens[g].name, y
        L = top.length(cur)
        for h in range(len(top.gens)):
            s = top.gens[h].element
            c2 = top.mul(top.mul(s, cur), s)
            if top.length(c2) < L:
                cur = c2
                y = top.mul(y, s)
                break
        else:
            raise ValueError("not a reflection")
    raise RuntimeError("conjugation search did not terminate")


def coxeter_order(top, a, b):
    """Order of s_a s_b in the top group (None when infinite)."""
    x = top.mul(top.gens[a].element, top.gens[b].element)
    y = x
    for k in range(1, 13):
        if y == top.identity():
            return k
        y = top.mul(y, x)
    return None


def parameter_classes(group):
    """Name of the parameter attached to each affine simple reflection: one
    per conjugacy class (odd braid edges and conjugation by length zero)."""
    top = group.top
    names = [g.name for g in top.gens]
    parent = {n: n for n in names}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            key = sorted([ra, rb], key=lambda n: top.gen_index[n])
            parent[key[1]] = key[0]

    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            m = coxeter_order(top, i, j)
            if m is not None and m % 2 == 1:
                union(names[i], names[j])
    for om in top.omega_generators:
        for g in range(len(names)):
            union(names[g], names[top.conj_gen(om, g)])
    roots = sorted({find(n) for n in names}, key=lambda n: top.gen_index[n])
    if len(roots) == 1:
        label = {roots[0]: "q"}
    else:
        label = {r: "q" + r[1:] for r in roots}
    return {n: label[find(n)] for n in names}


def specialize(h, target_alg, values=None):
    """Image of h under a ring map into ``target_alg`` (same group)."""
    src = h.alg.ring
    tgt = target_alg.ring
    if isinstance(src, PolynomialRing):
        if values is None:
            values = [tgt(target_alg.q_top[_first_with_class(h.alg, v)]) for v in src.names]
        f = lambda c: src.evaluate(c, values, tgt)
    else:
        f = lambda c: tgt(c)
    return h.map_coefficients(f, alg=target_alg)


def _first_with_class(alg, var):
    for name, cl in alg.classes.items():
        if cl == var:
            return name
    raise KeyError(var)
