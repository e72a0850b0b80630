"""Right modules over Hecke algebras, given by the matrices of generators.

A module over the algebra of a (Levi) group W_D(1) is described by

* one matrix per affine simple reflection of the Levi (action of ``T`` of its lift),
* one matrix per generator of the length-zero group (action of ``T`` of the
  canonical lift of that generator),
* one matrix per cyclic factor of ``Zk``.

Vectors are rows and matrices act on the right.  Every other basis element
``T_x`` acts through the canonical factorisation ``x = t * lift(omega) * s1 * s2 ...``.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from . import linalg
from .hecke import HeckeElement


class ModuleRelationError(ValueError):
    """Raised when generator matrices violate a defining relation."""

    def __init__(self, failures):
        self.failures = failures
        super().__init__("defining relations fail: " + ", ".join(failures[:8]))


def generator_elements(alg):
    """Labelled W(1) elements whose matrices define a module over ``alg``."""
    G = alg.group
    out = []
    for g, gen in enumerate(alg.W.gens):
        out.append(("T[" + gen.name + "]", alg.gen_lift[g]))
    for j, om in enumerate(alg.W.omega_generators):
        out.append((f"T[omega{j}]", G.lift(om)))
    for i, t in enumerate(G.torus.generators()):
        out.append((f"T[t{i}]", G.torus_element(t)))
    return out


class HeckeModule:
    """A finite free right module over ``alg`` given by generator matrices."""

    def __init__(self, alg, rank, refl, omega=(), torus=(), name="", check=True):
        self.alg = alg
        self.ring = alg.ring
        self.group = alg.group
        self.rank = int(rank)
        self.name = name
        ring = self.ring
        self.refl = [linalg.coerce(ring, m).reshape(rank, rank) for m in refl]
        self.omega = [linalg.coerce(ring, m).reshape(rank, rank) for m in omega]
        self.torus = [linalg.coerce(ring, m).reshape(rank, rank) for m in torus]
        if len(self.refl) != len(alg.W.gens):
            raise ValueError(f"expected {len(alg.W.gens)} reflection matrices, got {len(self.refl)}")
        if len(self.omega) != len(alg.W.omega_generators):
            raise ValueError(f"expected {len(alg.W.omega_generators)} length-zero matrices")
        self._torus_gens = self.group.torus.generators()
        if len(self.torus) != len(self._torus_gens):
            raise ValueError(f"expected {len(self._torus_gens)} torus matrices")
        self._act = {}
        self._act_star = {}
        self._omega_inv = {}
        if check:
            bad = self.certificate()
            if bad:
                raise ModuleRelationError(bad)

    @classmethod
    def from_action(cls, alg, rank, action, name="", check=True):
        """Build from a function giving the matrix of ``T_x`` for generators x."""
        els = generator_elements(alg)
        nr = len(alg.W.gens)
        no = len(alg.W.omega_generators)
        mats = [action(x) for _, x in els]
        return cls(alg, rank, mats[:nr], mats[nr:nr + no], mats[nr + no:], name=name, check=check)

    # -- basic matrices ----------------------------------------------------------
    def identity(self):
        return linalg.identity(self.ring, self.rank)

    def zero_matrix(self):
        return linalg.zeros(self.ring, self.rank, self.rank)

    def generator_matrices(self):
        return list(zip([lab for lab, _ in generator_elements(self.alg)],
                        self.refl + self.omega + self.torus))

    def _omega_inverse(self, j):
        m = self._omega_inv.get(j)
        if m is None:
            m = linalg.inverse(self.ring, self.omega[j])
            self._omega_inv[j] = m
        return m

    def act_torus(self, t):
        m = self.identity()
        if not self.group.torus.k:
            return m
        for gi, e in enumerate(self._torus_gens):
            i = e.index(1)
            if t[i]:
                m = m @ linalg.mat_pow(self.ring, self.torus[gi], t[i])
        return m

    def act_omega(self, omega):
        G = self.group
        W = self.alg.W
        coords = W.omega_coords(omega)
        m = self.identity()
        p = G.identity()
        for j, a in enumerate(coords):
            if a == 0:
                continue
            g = G.lift(W.omega_generators[j])
            if a > 0:
                p = G.mul(p, G.power(g, a))
                m = m @ linalg.mat_pow(self.ring, self.omega[j], a)
            else:
                p = G.mul(p, G.power(g, a))
                m = m @ linalg.mat_pow(self.ring, self._omega_inverse(j), -a)
        rest = G.mul(G.lift(omega), G.inv(p))
        assert rest[2] == 0 and not any(rest[1])
        return self.act_torus(rest[0]) @ m

    def act_c(self, g):
        m = self.zero_matrix()
        for t, v in self.alg.gen_c[g].items():
            m = m + self.act_torus(t) * v
        return m

    def act(self, x):
        """Matrix of T_x."""
        r = self._act.get(x)
        if r is None:
            if not self.group.contains(x):
                raise ValueError("element outside the group of the acting algebra")
            t, omega, word = self.group.decompose(x)
            r = self.act_torus(t) @ self.act_omega(omega)
            for g in word:
                r = r @ self.refl[g]
            self._act[x] = r
        return r

    def act_star(self, x):
        """Matrix of T*_x."""
        r = self._act_star.get(x)
        if r is None:
            t, omega, word = self.group.decompose(x)
            r = self.act_torus(t) @ self.act_omega(omega)
            for g in word:
                r = r @ (self.refl[g] - self.act_c(g))
            self._act_star[x] = r
        return r

    def act_element(self, h):
        if h.alg is not self.alg and h.alg.group.W.subset != self.alg.W.subset:
            raise ValueError("element of a different algebra")
        m = self.zero_matrix()
        for x, c in h.terms.items():
            if c != 0:
                m = m + self.act(x) * c
        return m

    def act_star_coords(self, coords):
        m = self.zero_matrix()
        for x, c in coords.items():
            if c != 0:
                m = m + self.act_star(x) * c
        return m

    # -- certificate --------------------------------------------------------------
    def relations(self):
        """Yield (label, lhs, rhs) for every defining relation."""
        G = self.group
        W = self.alg.W
        alg = self.alg
        ring = self.ring
        n = len(W.gens)
        for g in range(n):
            sq = G.mul(alg.gen_lift[g], alg.gen_lift[g])
            lhs = self.refl[g] @ self.refl[g]
            rhs = self.act_torus(sq[0]) * alg.gen_q[g] + self.act_c(g) @ self.refl[g]
            yield f"quadratic {W.gens[g].name}", lhs, rhs
        for a in range(n):
            for b in range(a + 1, n):
                m = _order(W, a, b)
                if m is None:
                    continue
                lhs = self.identity()
                rhs = self.identity()
                for k in range(m):
                    lhs = lhs @ self.refl[a if k % 2 == 0 else b]
                    rhs = rhs @ self.refl[b if k % 2 == 0 else a]
                yield f"braid {W.gens[a].name},{W.gens[b].name}", lhs, rhs
        om_lifts = [G.lift(o) for o in W.omega_generators]
        for j, ol in enumerate(om_lifts):
            oi = G.inv(ol)
            for g in range(n):
                y = G.mul(G.mul(ol, alg.gen_lift[g]), oi)
                yield (f"omega{j} conjugates {W.gens[g].name}",
                       self.omega[j] @ self.refl[g], self.act(y) @ self.omega[j])
            for i in range(len(om_lifts)):
                if i != j:
                    yield (f"omega{j}*omega{i}", self.omega[j] @ self.omega[i],
                           self.act(G.mul(ol, om_lifts[i])))
            order = W.omega_order(j)
            if order:
                yield (f"omega{j}^{order}", linalg.mat_pow(ring, self.omega[j], order),
                       self.act(G.power(ol, order)))
            else:
                det = linalg.det(ring, self.omega[j])
                ok = ring.is_unit(det)
                yield f"omega{j} invertible", self.identity() if ok else self.zero_matrix(), self.identity()
        tg = self._torus_gens
        for a, ea in enumerate(tg):
            ta = G.torus_element(ea)
            order = G.torus.orders[ea.index(1)]
            yield f"t{a}^{order}", linalg.mat_pow(ring, self.torus[a], order), self.identity()
            for b in range(a + 1, len(tg)):
                yield (f"t{a}*t{b}", self.torus[a] @ self.torus[b], self.torus[b] @ self.torus[a])
            for g in range(n):
                lift = alg.gen_lift[g]
                y = G.mul(G.mul(G.inv(lift), ta), lift)
                yield (f"t{a} past {W.gens[g].name}", self.torus[a] @ self.refl[g],
                       self.refl[g] @ self.act_torus(y[0]))
            for j, ol in enumerate(om_lifts):
                y = G.mul(G.mul(G.inv(ol), ta), ol)
                yield (f"t{a} past omega{j}", self.torus[a] @ self.omega[j],
                       self.omega[j] @ self.act_torus(y[0]))

    def certificate(self):
        """Labels of the violated relations (empty when the module is valid)."""
        return [lab for lab, lhs, rhs in self.relations() if not linalg.mat_eq(lhs, rhs)]

    # -- transport ----------------------------------------------------------------
    def specialize(self, target_alg, f):
        """Apply the ring map ``f`` entrywise; ``target_alg`` has the same group."""
        conv = lambda m: _map_matrix(m, f, target_alg.ring)
        return HeckeModule(target_alg, self.rank, [conv(m) for m in self.refl],
                           [conv(m) for m in self.omega], [conv(m) for m in self.torus],
                           name=self.name)

    def __repr__(self):
        return f"HeckeModule({self.name or 'unnamed'}, rank={self.rank}, over {self.alg.W!r})"


def _map_matrix(m, f, ring):
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = ring(f(v))
    return out


def _order(W, a, b):
    x = W.mul(W.gens[a].element, W.gens[b].element)
    y = x
    for k in range(1, 13):
        if y == W.identity():
            return k
        y = W.mul(y, x)
    return None


# -- characters ------------------------------------------------------------------
def character(alg, refl, omega=None, torus=None, name="character"):
    """Rank-one module from scalar values on the generators."""
    ring = alg.ring
    G = alg.group
    no = len(alg.W.omega_generators)
    nt = len(G.torus.generators())
    omega = list(omega) if omega is not None else [1] * no
    torus = list(torus) if torus is not None else [1] * nt
    one = lambda v: linalg.matrix(ring, [[v]])
    return HeckeModule(alg, 1, [one(v) for v in refl], [one(v) for v in omega],
                       [one(v) for v in torus], name=name)


def trivial_module(alg):
    """T_w acts by q_w and T*_w by 1."""
    return character(alg, list(alg.gen_q), name="trivial")


def sign_module(alg):
    """T_s acts by -1 (needs c_s to act by q_s - 1)."""
    return character(alg, [-1] * len(alg.W.gens), name="sign")


# -- maps ------------------------------------------------------------------------
class ModuleMap:
    """``x -> x A`` between right modules; ``A`` has ``source.rank`` rows."""

    def __init__(self, source, target, matrix, name="", check=True):
        self.source = source
        self.target = target
        self.matrix = linalg.coerce(source.ring, matrix).reshape(source.rank, target.rank)
        self.name = name
        if check:
            bad = self.defect()
            if bad:
                raise ValueError(f"map {name} is not equivariant for " + ", ".join(bad))

    def defect(self):
        src = self.source
        tgt = self.target
        bad = []
        for (lab, a), (_, b) in zip(src.generator_matrices(), tgt.generator_matrices()):
            if not linalg.mat_eq(a @ self.matrix, self.matrix @ b):
                bad.append(lab)
        return bad

    @property
    def is_equivariant(self):
        return not self.defect()

    def rank(self):
        return linalg.rank(self.source.ring, self.matrix)

    @property
    def is_injective(self):
        return self.rank() == self.source.rank

    @property
    def is_isomorphism(self):
        if self.source.rank != self.target.rank:
            return False
        return self.source.ring.is_unit(linalg.det(self.source.ring, self.matrix))

    def then(self, other, name=""):
        return ModuleMap(self.source, other.target, self.matrix @ other.matrix, name=name, check=False)

    def inverse(self, name=""):
        inv = linalg.inverse(self.source.ring, self.matrix)
        return ModuleMap(self.target, self.source, inv, name=name, check=False)


# -- quotients ---------------------------------------------------------------------
class QuotientModule(HeckeModule):
    """M / N for a submodule N spanned by ``vectors``.

    The reduction uses unit pivots only, which proves that the quotient is free
    with basis the non-pivot coordinate vectors.  ``projection`` is the matrix
    of M -> M/N and ``section`` the matrix of the chosen basis lift.
    """

    def __init__(self, module, vectors, name=""):
        ring = module.ring
        ech = linalg.EchelonForm(ring, vectors, module.rank)
        if not ech.complete:
            raise ValueError("submodule is not a direct summand with unit pivots")
        self.parent = module
        self.echelon = ech
        free = ech.free_columns()
        self.free = free
        n = module.rank
        k = len(free)
        proj = linalg.zeros(ring, n, k)
        for i in range(n):
            e = [ring.zero] * n
            e[i] = ring.one
            r = ech.reduce(e)
            for j, c in enumerate(free):
                proj[i, j] = r[c]
        sec = linalg.zeros(ring, k, n)
        for j, c in enumerate(free):
            sec[j, c] = ring.one
        self.projection = proj
        self.section = sec
        stable = []
        for lab, m in module.generator_matrices():
            for row in ech.rows:
                img = np.array(row, dtype=object) @ m
                if any(x != 0 for x in ech.reduce(list(img))):
                    stable.append(lab)
                    break
        if stable:
            raise ValueError("submodule is not stable under " + ", ".join(stable))
        conv = lambda m: sec @ m @ proj
        super().__init__(module.alg, k, [conv(m) for m in module.refl],
                         [conv(m) for m in module.omega], [conv(m) for m in module.torus],
                         name=name or f"quotient of {module.name}")

    @property
    def submodule_rank(self):
        return len(self.echelon.rows)

    def projection_map(self):
        return ModuleMap(self.parent, self, self.projection, name="projection")


def cokernel(target, maps, name=""):
    """Cokernel of a family of maps into ``target``."""
    vectors = []
    for f in maps:
        if f.target is not target and f.target.rank != target.rank:
            raise ValueError("map does not land in the target")
        vectors.extend(list(row) for row in f.matrix)
    return QuotientModule(target, vectors, name=name)


def submodule_rows(module, vectors):
    """Span of the submodule generated by ``vectors`` (spinning over a field)."""
    ring = module.ring
    mats = [m for _, m in module.generator_matrices()]
    mats += [module._omega_inverse(j) for j in range(len(module.omega))
             if not module.alg.W.omega_order(j)]
    ech = linalg.EchelonForm(ring, [], module.rank)
    queue = [list(v) for v in vectors]
    while queue:
        v = ech.reduce(queue.pop())
        if all(x == 0 for x in v):
            continue
        p = next((j for j in range(module.rank) if v[j] != 0 and ring.is_unit(v[j])), None)
        if p is None:
            raise ValueError("spinning needs unit pivots")
        ech._add(v, p)
        arr = np.array(v, dtype=object)
        for m in mats:
            queue.append(list(arr @ m))
    return ech


# -- tensor products -----------------------------------------------------------------
def tensor_modules(E, X, name=""):
    """E (x) X with T*_w acting diagonally."""
    if E.alg is not X.alg:
        raise ValueError("tensor factors must be modules over the same algebra")
    alg = E.alg
    G = alg.group
    refl = []
    for g in range(len(alg.W.gens)):
        star = linalg.kron(E.refl[g] - E.act_c(g), X.refl[g] - X.act_c(g))
        c = linalg.zeros(alg.ring, E.rank * X.rank, E.rank * X.rank)
        for t, v in alg.gen_c[g].items():
            c = c + linalg.kron(E.act_torus(t), X.act_torus(t)) * v
        refl.append(star + c)
    omega = [linalg.kron(a, b) for a, b in zip(E.omega, X.omega)]
    torus = [linalg.kron(a, b) for a, b in zip(E.torus, X.torus)]
    mod = HeckeModule(alg, E.rank * X.rank, refl, omega, torus, name=name or f"{E.name} (x) {X.name}")
    mod.factors = (E, X)
    return mod


# -- Hom spaces over a field -----------------------------------------------------------
def hom_space(A, B):
    """Basis of the equivariant matrices X with rho_A(g) X = X rho_B(g) (field only)."""
    ring = A.ring
    n, m = A.rank, B.rank
    mats = list(zip([a for _, a in A.generator_matrices()], [b for _, b in B.generator_matrices()]))
    cols = []
    # unknown X[i,k] indexed by i*m + k; equation (a X - X b)[i,l] = 0
    for a, b in mats:
        for i in range(n):
            for l in range(m):
                col = [ring.zero] * (n * m)
                for j in range(n):
                    if a[i, j] != 0:
                        col[j * m + l] = col[j * m + l] + a[i, j]
                for k in range(m):
                    if b[k, l] != 0:
                        col[i * m + k] = col[i * m + k] - b[k, l]
                cols.append(col)
    if not cols:
        return [linalg.identity(ring, n * m)[i].reshape(n, m) for i in range(n * m)]
    sys = linalg.zeros(ring, n * m, len(cols))
    for c, col in enumerate(cols):
        for r, v in enumerate(col):
            sys[r, c] = v
    basis = linalg.left_kernel(ring, sys)
    return [np.array(v, dtype=object).reshape(n, m) for v in basis]


def find_isomorphism(A, B, tries=None):
    """Some equivariant invertible matrix A -> B over a field, or None."""
    if A.rank != B.rank:
        return None
    basis = hom_space(A, B)
    if not basis:
        return None
    ring = A.ring
    coeff_sets = tries or [tuple(range(1, len(basis) + 1)), tuple([1] * len(basis))]
    for cs in coeff_sets + [tuple((7 * k * k + 3) for k in range(len(basis)))]:
        x = linalg.zeros(ring, A.rank, B.rank)
        for c, b in zip(cs, basis):
            x = x + b * c
        if linalg.det(ring, x) != 0:
            return x
    for cs in product(range(-2, 3), repeat=min(len(basis), 4)):
        x = linalg.zeros(ring, A.rank, B.rank)
        for c, b in zip(cs, basis):
            x = x + b * c
        if linalg.det(ring, x) != 0:
            return x
    return None


def specialize_module(module, alg, values):
    """Module over ``alg`` (same group, other ring) by substituting values for the
    polynomial variables of ``module.ring``."""
    src = module.ring
    tgt = alg.ring
    f = lambda c: src.evaluate(c, values, tgt) if hasattr(src, "evaluate") else tgt(c)
    return module.specialize(alg, f)


def as_element(alg, coords):
    return HeckeElement(alg, dict(coords))
