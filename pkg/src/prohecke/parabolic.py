"""Parabolic constructions: extension, induction, coinduction and twisting.

All Levi algebras come from one top algebra (``H.levi(subset)``), so elements
of W(1) are shared and ``T^M_x`` and ``T_x`` are indexed by the same tuple.

Induction ``V (x)_{H_M+} H_L`` has basis ``v (x) T_d`` for ``d`` minimal in
``W_M d``.  To rewrite ``v (x) T_x`` we multiply on the left by a power of
``T_mu`` for a translation ``mu`` central in ``W_M`` and strictly dominant for
``L``; once every term ``T_y`` of ``T_mu^n T_x`` factors as ``T_m T_d`` with
``m`` in the positive monoid, ``v (x) T_x = v rho(T^M_mu)^-n rho(T^M_m) (x) T_d``.

Coinduction ``Hom_{H_M-}(H_L, V)`` is handled the same way on the other side
with ``T*`` and an antidominant translation.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .modules import HeckeModule, generator_elements


class BudgetError(RuntimeError):
    """A localization or length budget was exhausted."""


class NotExtensibleError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"module is not extensible: {witness} acts nontrivially")


# -- helpers ----------------------------------------------------------------------
def coset_reps(fw, m_subset, l_subset, side):
    """Minimal representatives of W_M \\ W_L (side 'left') or W_L / W_M ('right')."""
    reps = [w for w in fw.min_coset_reps(m_subset, side) if fw.in_parabolic(w, l_subset)]
    return sorted(reps, key=lambda w: (fw.length[w], fw.word(w)))


def is_orthogonal(rd, a, b):
    return all(rd.cartan[i][j] == 0 and rd.cartan[j][i] == 0 for i in a for j in b)


def finite_lift(G, w):
    return G.lift((G.top.zero, w))


def lattice_lift(H2, lam):
    """Lift of the translation ``lam`` (in the coroot lattice of the Levi of
    ``H2``) as a product of lifted affine reflections of that Levi."""
    W2 = H2.W
    G = H2.group
    omega, word = W2.reduced_word(W2.translation(lam))
    if omega != W2.identity():
        raise ValueError(f"{lam} is not in the coroot lattice of the Levi")
    x = G.identity()
    for g in word:
        x = G.mul(x, H2.gen_lift[g])
    return x


def complement_generators(H, l_subset, m2_subset):
    """Generators of Lambda(1) cap 1W_{M'_2}: lifts of the simple coroots of
    M2, squares of lifted M2 reflections and the Z'_{k,s} generators."""
    H2 = H.levi(m2_subset)
    G = H2.group
    rd = H.W.rd
    out = []
    for a in sorted(m2_subset):
        out.append((f"coroot {rd.names[a]}", lattice_lift(H2, tuple(rd.coroots[a]))))
    if G.torus.k:
        for g, gen in enumerate(H2.W.gens):
            sq = G.mul(H2.gen_lift[g], H2.gen_lift[g])
            if any(sq[0]):
                out.append((f"square {gen.name}", sq))
            for t in H2.gen_zprime[g]:
                out.append((f"zprime {gen.name}", G.torus_element(t)))
    return out


# -- extension -----------------------------------------------------------------------
def is_extensible(V, HL):
    """(ok, witness): whether T^M of each generator of Lambda(1) cap 1W_{M'_2}
    acts trivially on V, with M2 the complement of M in L."""
    M = V.alg.levi_subset
    L = HL.levi_subset
    m2 = tuple(i for i in L if i not in M)
    rd = HL.W.rd
    if not is_orthogonal(rd, M, m2):
        raise ValueError("extension needs the Levi to be orthogonal to its complement")
    ident = V.identity()
    for label, z in complement_generators(HL.top_algebra, L, m2):
        if not linalg.mat_eq(V.act(z), ident):
            return False, label
    return True, None


def extension_split(HL, m_subset, x):
    """(x_M, q_{M2}(x)) with x = x_M * lift(w2), w2 the M2-part of the finite part."""
    G = HL.group
    fw = G.fw
    L = HL.levi_subset
    m2 = tuple(i for i in L if i not in m_subset)
    lam, w = x[1], x[2]
    wm, w2 = fw.decompose(w, m2, side="right")
    x2 = finite_lift(G, w2)
    xm = G.mul(x, G.inv(x2))
    H2 = HL.levi(m2)
    q2 = H2.q_factor(H2.group.lift((lam, w2)))
    return xm, q2


def extend(V, HL, route="T"):
    """The extension e_{H_L}(V) of a module over H_M, M orthogonal to L minus M.

    ``route='T'`` uses ``T_x -> q_{M2}(x) T^M_{x_M}``; ``route='T*'`` uses
    ``T*_x -> T^{M,*}_{x_M}`` and recovers ``T_s`` as ``T*_s + c_s``.
    """
    M = V.alg.levi_subset
    L = HL.levi_subset
    if not set(M) <= set(L):
        raise ValueError("Levi of V must be contained in the target Levi")
    ok, witness = is_extensible(V, HL)
    if not ok:
        raise NotExtensibleError(witness)
    if tuple(M) == tuple(L):
        return V

    def act_T(x):
        xm, q2 = extension_split(HL, M, x)
        return V.act(xm) * q2

    def act_Tstar(x):
        xm, _ = extension_split(HL, M, x)
        return V.act_star(xm)

    if route == "T":
        mod = HeckeModule.from_action(HL, V.rank, act_T, name=f"e({V.name})")
    else:
        G = HL.group
        mats = []
        for lab, x in generator_elements(HL):
            m = act_Tstar(x)
            if lab.startswith("T[") and x in HL.gen_lift:
                g = HL.gen_lift.index(x)
                for t, v in HL.gen_c[g].items():
                    m = m + V.act(G.torus_element(t)) * v
            mats.append(m)
        nr = len(HL.W.gens)
        no = len(HL.W.omega_generators)
        mod = HeckeModule(HL, V.rank, mats[:nr], mats[nr:nr + no], mats[nr + no:], name=f"e({V.name})")
    mod.base = V
    return mod


def p_of_v(V, H=None):
    """Simple roots of P(V): those of M plus the alpha orthogonal to M whose
    complement generators act trivially."""
    H = H or V.alg.top_algebra
    M = tuple(V.alg.levi_subset)
    rd = H.W.rd
    ident = V.identity()
    out = set(M)
    for a in H.W.subset:
        if a in M or not is_orthogonal(rd, M, (a,)):
            continue
        if all(linalg.mat_eq(V.act(z), ident) for _, z in complement_generators(H, M + (a,), (a,))):
            out.add(a)
    return tuple(sorted(out))


# -- induction -------------------------------------------------------------------------
class InducedModule(HeckeModule):
    """``V (x)_{H_M+, theta} H_L`` on the basis ``v_i (x) T_d``."""

    def __init__(self, V, HL, max_power=16, name=""):
        self.V = V
        self.HL = HL
        HM = V.alg
        M = tuple(HM.levi_subset)
        L = tuple(HL.levi_subset)
        if not set(M) <= set(L):
            raise ValueError("Levi of V must be contained in the target Levi")
        self.M = M
        self.L = L
        G = HL.group
        fw = G.fw
        self.reps = coset_reps(fw, M, L, "left")
        self.slot = {d: k for k, d in enumerate(self.reps)}
        self.rank_v = V.rank
        self.max_power = max_power
        lam = HL.W.dominant_central(M)
        self.mu = G.lift(HL.W.translation(lam))
        self.tau = V.act(self.mu)
        self.tau_inv = linalg.inverse(V.ring, self.tau)
        self._coords = {}
        self.rep_lifts = [finite_lift(G, d) for d in self.reps]
        size = len(self.reps) * V.rank
        mats = [self._right_matrix(x) for _, x in generator_elements(HL)]
        nr = len(HL.W.gens)
        no = len(HL.W.omega_generators)
        super().__init__(HL, size, mats[:nr], mats[nr:nr + no], mats[nr + no:],
                         name=name or f"Ind({V.name})")

    def _split(self, y):
        G = self.HL.group
        u, d = G.fw.decompose(y[2], self.M, side="left")
        dl = finite_lift(G, d)
        m = G.mul(y, G.inv(dl))
        if not self.HL.W.positive_part((m[1], m[2]), self.M, 1):
            return None
        if G.length(y) != G.length(m) + G.length(dl):
            return None
        return m, d

    def basis_coords(self, x):
        """Matrix K with v (x) T_x = v K in the induced basis."""
        r = self._coords.get(x)
        if r is not None:
            return r
        HL = self.HL
        G = HL.group
        V = self.V
        nv = V.rank
        power = G.identity()
        tinv = V.identity()
        for n in range(self.max_power + 1):
            if n:
                power = G.mul(power, self.mu)
                tinv = tinv @ self.tau_inv
            blocks = {}
            ok = True
            for y, c in HL.basis_product(power, x):
                s = self._split(y)
                if s is None:
                    ok = False
                    break
                m, d = s
                b = V.act(m) * c
                blocks[d] = blocks[d] + b if d in blocks else b
            if ok:
                out = linalg.zeros(V.ring, nv, len(self.reps) * nv)
                for d, b in blocks.items():
                    k = self.slot[d]
                    out[:, k * nv:(k + 1) * nv] = tinv @ b
                self._coords[x] = out
                return out
        raise BudgetError(f"localization did not converge within {self.max_power} steps")

    def tensor_coords(self, h):
        """Matrix K(h) with v (x) h = v K(h)."""
        out = linalg.zeros(self.V.ring, self.V.rank, len(self.reps) * self.V.rank)
        for x, c in h.terms.items():
            if c != 0:
                out = out + self.basis_coords(x) * c
        return out

    def _right_matrix(self, e):
        HL = self.HL
        nv = self.V.rank
        rows = []
        for dl in self.rep_lifts:
            acc = None
            for x, c in HL.basis_product(dl, e):
                b = self.basis_coords(x) * c
                acc = b if acc is None else acc + b
            rows.append(acc)
        return np.vstack(rows) if rows else linalg.zeros(self.V.ring, 0, 0)

    def vector(self, v, d=0):
        """Coordinates of v (x) T_d."""
        nv = self.V.rank
        out = [self.ring.zero] * self.rank
        k = self.slot[d]
        for i in range(nv):
            out[k * nv + i] = self.ring(v[i])
        return np.array(out, dtype=object)

    def map_from(self, V2, f):
        """Ind(f) for an equivariant matrix f : V2 -> V (block diagonal)."""
        k = len(self.reps)
        blocks = {(i, i): f for i in range(k)}
        return linalg.block(self.ring, blocks, [V2.rank] * k, [self.V.rank] * k)


def induce(V, HL=None, **kw):
    HL = HL or V.alg.top_algebra
    if tuple(V.alg.levi_subset) == tuple(HL.levi_subset):
        return V
    return InducedModule(V, HL, **kw)


# -- coinduction -----------------------------------------------------------------------
class CoinducedModule(HeckeModule):
    """``Hom_{H_M-, theta*}(H_L, V)`` in the basis ``f_{d,v}`` (value v at T_d,
    zero at the other T_d'), d minimal in d W_M."""

    def __init__(self, V, HL, max_power=16, name=""):
        self.V = V
        self.HL = HL
        M = tuple(V.alg.levi_subset)
        L = tuple(HL.levi_subset)
        if not set(M) <= set(L):
            raise ValueError("Levi of V must be contained in the target Levi")
        self.M = M
        self.L = L
        G = HL.group
        fw = G.fw
        self.reps = coset_reps(fw, M, L, "right")
        self.slot = {d: k for k, d in enumerate(self.reps)}
        self.rep_lifts = [finite_lift(G, d) for d in self.reps]
        self.max_power = max_power
        lam = HL.W.dominant_central(M)
        self.mu_minus = G.lift(HL.W.translation(tuple(-x for x in lam)))
        self.sigma = V.act_star(self.mu_minus)
        self.sigma_inv = linalg.inverse(V.ring, self.sigma)
        self._eval = {}
        nv = V.rank
        size = len(self.reps) * nv
        ring = V.ring
        # change of coordinates: f(T_d) = F* C[:, d]
        C = linalg.zeros(ring, size, size)
        for k, dl in enumerate(self.rep_lifts):
            C[:, k * nv:(k + 1) * nv] = self.eval_star_coords(HL.to_star(HL.T(dl)))
        self.change = C
        self.change_inv = linalg.inverse(ring, C)
        mats = []
        for _, e in generator_elements(HL):
            star = self._star_matrix(e)
            mats.append(self.change_inv @ star @ C)
        nr = len(HL.W.gens)
        no = len(HL.W.omega_generators)
        super().__init__(HL, size, mats[:nr], mats[nr:nr + no], mats[nr + no:],
                         name=name or f"Coind({V.name})")

    def _split(self, y):
        G = self.HL.group
        d, u = G.fw.decompose(y[2], self.M, side="right")
        dl = finite_lift(G, d)
        m = G.mul(G.inv(dl), y)
        if not self.HL.W.positive_part((m[1], m[2]), self.M, -1):
            return None
        if G.length(y) != G.length(m) + G.length(dl):
            return None
        return d, m

    def eval_star(self, x):
        """Matrix E with f(T*_x) = F* E, F* the stacked values f(T*_d)."""
        r = self._eval.get(x)
        if r is not None:
            return r
        HL = self.HL
        G = HL.group
        V = self.V
        nv = V.rank
        power = G.identity()
        sinv = V.identity()
        for n in range(self.max_power + 1):
            if n:
                power = G.mul(power, self.mu_minus)
                sinv = sinv @ self.sigma_inv
            blocks = {}
            ok = True
            for y, c in HL.basis_product_star(x, power):
                s = self._split(y)
                if s is None:
                    ok = False
                    break
                d, m = s
                b = V.act_star(m) * c
                blocks[d] = blocks[d] + b if d in blocks else b
            if ok:
                out = linalg.zeros(V.ring, len(self.reps) * nv, nv)
                for d, b in blocks.items():
                    k = self.slot[d]
                    out[k * nv:(k + 1) * nv, :] = b @ sinv
                self._eval[x] = out
                return out
        raise BudgetError(f"localization did not converge within {self.max_power} steps")

    def eval_star_coords(self, coords):
        nv = self.V.rank
        out = linalg.zeros(self.V.ring, len(self.reps) * nv, nv)
        for x, c in coords.items():
            if c != 0:
                out = out + self.eval_star(x) * c
        return out

    def _star_matrix(self, e):
        HL = self.HL
        G = HL.group
        nv = self.V.rank
        size = len(self.reps) * nv
        out = linalg.zeros(self.V.ring, size, size)
        gi = HL.gen_lift.index(e) if e in HL.gen_lift else None
        for k, dl in enumerate(self.rep_lifts):
            if gi is not None:
                coords = dict(HL.basis_product_star(e, dl))
                for t, v in HL.gen_c[gi].items():
                    y = G.mul(G.torus_element(t), dl)
                    coords[y] = coords.get(y, 0) + v
            else:
                coords = {G.mul(e, dl): HL.ring.one}
            out[:, k * nv:(k + 1) * nv] = self.eval_star_coords(coords)
        return out

    def evaluate(self, h):
        """Matrix E(h) with f(h) = F E(h), F the T-coordinates of f."""
        return self.change_inv @ self.eval_star_coords(self.HL.to_star(h))

    def vector(self, v, d=0):
        """T-coordinates of f_{d,v}."""
        nv = self.V.rank
        out = [self.ring.zero] * self.rank
        k = self.slot[d]
        for i in range(nv):
            out[k * nv + i] = self.ring(v[i])
        return np.array(out, dtype=object)


def coinduce(V, HL=None, **kw):
    HL = HL or V.alg.top_algebra
    if tuple(V.alg.levi_subset) == tuple(HL.levi_subset):
        return V
    return CoinducedModule(V, HL, **kw)


# -- twisting ---------------------------------------------------------------------------
def longest_quotient(fw, subset):
    """w^M = w w_M for the longest elements of W and W_M."""
    return fw.mul(fw.longest, fw.longest_in(subset))


def twisted_subset(fw, subset, reading="wQ"):
    """Simple roots of the twisted Levi.

    ``reading='wQ'`` conjugates by w^M (image of Delta_M under w^M);
    ``reading='wQbar'`` conjugates the opposite parabolic by w, whose Levi has
    simple roots -w(Delta_M).
    """
    rd = fw.rd
    out = []
    for j in subset:
        k = rd.simple_root_index[j]
        if reading == "wQ":
            w = longest_quotient(fw, subset)
            s = fw.root_act[fw.inv[w]][k]
        elif reading == "wQbar":
            s = -fw.root_act[fw.inv[fw.longest]][k]
        else:
            raise ValueError(f"unknown reading {reading!r}")
        if s < 0:
            raise ValueError("twisted root is not positive")
        idx = s - 1
        simple = [i for i in range(rd.r) if rd.simple_root_index[i] == idx]
        if not simple:
            raise ValueError("twisted root is not simple")
        out.append(simple[0])
    return tuple(sorted(out))


def twist(V, H=None):
    """The module w^M.V over H_{w.M}: T_x acts as T^M of (w^M)^-1 x w^M."""
    H = H or V.alg.top_algebra
    HM = V.alg
    M = tuple(HM.levi_subset)
    G = H.group
    fw = G.fw
    wM = longest_quotient(fw, M)
    new = twisted_subset(fw, M)
    HW = H.levi(new)
    hat = finite_lift(G, wM)
    hat_inv = G.inv(hat)

    def action(x):
        return V.act(G.mul(G.mul(hat_inv, x), hat))

    mod = HeckeModule.from_action(HW, V.rank, action, name=f"tw({V.name})")
    mod.twist_element = hat
    mod.base = V
    return mod
