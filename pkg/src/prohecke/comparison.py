"""Parabolic induction of e(V) (x) St and its comparison with coinduction.

A :class:`ParabolicTriple` fixes the top algebra ``H`` and a module ``V`` over a
Levi ``H_M``; parabolics ``Q`` containing ``M`` are tuples of simple roots.
Every map is a matrix acting on row vectors, so "first f, then g" is
``f @ g``.  All checks return plain dicts so that callers can turn them into
report entries.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .hecke import HeckeElement
from .modules import ModuleMap, cokernel, tensor_modules, trivial_module
from .parabolic import (
    CoinducedModule,
    InducedModule,
    coset_reps,
    extend,
    finite_lift,
    longest_quotient,
    p_of_v,
    twist,
    twisted_subset,
)


def _key(subset):
    return tuple(sorted(subset))


def _fw_identity(fw):
    return fw.from_word([])


def _basis_vector(ring, n, i):
    v = [ring.zero] * n
    v[i] = ring.one
    return v


def intermediate_subsets(low, high):
    """All sets Q with low <= Q <= high, smallest first."""
    low = set(low)
    extra = sorted(set(high) - low)
    out = []
    for k in range(len(extra) + 1):
        for c in combinations(extra, k):
            out.append(_key(low | set(c)))
    return out


def coset_sum(H, alg, small, big):
    """Sum of T_d over d minimal in W_small \\ W_big, as an element of ``alg``."""
    fw = H.group.fw
    G = H.group
    terms = {}
    for d in coset_reps(fw, small, big, "left"):
        terms[finite_lift(G, d)] = alg.ring.one
    return HeckeElement(alg, terms)


def trivial_induction(H, Q, L):
    """X_Q^L: the trivial character of H_Q induced to H_L."""
    return InducedModule(trivial_module(H.levi(Q)), H.levi(L), name=f"X_{list(Q)}^{list(L)}")


class ParabolicTriple:
    """Parabolic constructions attached to (H, V) with V over H_M."""

    def __init__(self, V, H=None, max_power=16):
        self.V = V
        self.H = H or V.alg.top_algebra
        self.M = _key(V.alg.levi_subset)
        self.PV = p_of_v(V, self.H)
        self.fw = self.H.group.fw
        self.max_power = max_power
        self._cache = {}

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def top(self):
        return _key(self.H.W.subset)

    def parabolics(self):
        """Q with M <= Q <= P(V)."""
        return intermediate_subsets(self.M, self.PV)

    def pairs(self):
        """Pairs Q < Q' of admissible parabolics."""
        qs = self.parabolics()
        return [(a, b) for a in qs for b in qs if set(a) < set(b)]

    # -- building blocks -------------------------------------------------------------
    def e(self, Q):
        """e_Q(V), a module over H_Q."""
        Q = _key(Q)
        return self._memo(("e", Q), lambda: extend(self.V, self.H.levi(Q)))

    def ind(self, Q, L=None):
        """Ind_Q^L(e_Q V)."""
        Q = _key(Q)
        L = self.top if L is None else _key(L)
        return self._memo(("ind", Q, L),
                          lambda: InducedModule(self.e(Q), self.H.levi(L), max_power=self.max_power))

    def coind(self, Q):
        Q = _key(Q)
        return self._memo(("coind", Q),
                          lambda: CoinducedModule(self.e(Q), self.H, max_power=self.max_power))

    def X(self, Q, L):
        Q, L = _key(Q), _key(L)
        return self._memo(("X", Q, L), lambda: trivial_induction(self.H, Q, L))

    # -- maps between inductions ------------------------------------------------------
    def _iota_between(self, src, tgt, Q, Q2, L):
        """v (x) T_d' in Ind_{Q2} to v (x) e_Q^{Q2} T_d' in Ind_Q."""
        HL = self.H.levi(L)
        e = coset_sum(self.H, HL, Q, Q2)
        nv = src.V.rank
        rows = []
        for dl in src.rep_lifts:
            k = tgt.tensor_coords(e * HL.T(dl))
            for i in range(nv):
                rows.append(k[i])
        mat = np.vstack(rows) if rows else linalg.zeros(src.ring, 0, tgt.rank)
        return ModuleMap(src, tgt, mat, name=f"iota({list(Q)},{list(Q2)})")

    def iota(self, Q, Q2, L=None):
        """Ind_{Q2}^L(e_{Q2} V) -> Ind_Q^L(e_Q V)."""
        Q, Q2 = _key(Q), _key(Q2)
        L = self.top if L is None else _key(L)
        return self._memo(("iota", Q, Q2, L),
                          lambda: self._iota_between(self.ind(Q2, L), self.ind(Q, L), Q, Q2, L))

    def iota_X(self, Q, Q2, L):
        Q, Q2, L = _key(Q), _key(Q2), _key(L)
        return self._memo(("iotaX", Q, Q2, L),
                          lambda: self._iota_between(self.X(Q2, L), self.X(Q, L), Q, Q2, L))

    def steinberg(self, Q, L):
        """St_Q^L: X_Q^L modulo the images of X_{Q'}^L for Q < Q' <= L."""
        Q, L = _key(Q), _key(L)

        def build():
            maps = [self.iota_X(Q, Q2, L) for Q2 in intermediate_subsets(Q, L) if Q2 != Q]
            return cokernel(self.X(Q, L), maps, name=f"St_{list(Q)}^{list(L)}")

        return self._memo(("St", Q, L), build)

    def kappa(self, Q, L=None):
        """Ind_Q^L(e_Q V) -> e_L(V) (x) X_Q^L, v (x) T_d to (v (x) 1) T_d."""
        Q = _key(Q)
        L = self.PV if L is None else _key(L)

        def build():
            src = self.ind(Q, L)
            X = self.X(Q, L)
            T = tensor_modules(self.e(L), X)
            nv = self.V.rank
            rows = []
            for dl in src.rep_lifts:
                act = T.act(dl)
                for i in range(nv):
                    # v_i (x) f_Q sits at index i * rank(X)
                    v = np.array(_basis_vector(self.V.ring, nv * X.rank, i * X.rank), dtype=object)
                    rows.append(v @ act)
            return ModuleMap(src, T, np.vstack(rows), name=f"kappa({list(Q)})", check=False)

        return self._memo(("kappa", Q, L), build)

    # -- I_H and its cokernel description ------------------------------------------------
    def I_H(self, Q):
        """Ind_{P(V)}^H(e(V) (x) St_Q^{P(V)})."""
        Q = _key(Q)

        def build():
            L = self.PV
            E = tensor_modules(self.e(L), self.steinberg(Q, L))
            return InducedModule(E, self.H, max_power=self.max_power, name=f"I_H({list(Q)})")

        return self._memo(("IH", Q), build)

    def induced_cokernel(self, Q):
        """Ind_Q^H(e_Q V) modulo the images of Ind_{Q'}^H(e_{Q'} V), Q < Q' <= P(V)."""
        Q = _key(Q)

        def build():
            maps = [self.iota(Q, Q2) for Q2 in intermediate_subsets(Q, self.PV) if Q2 != Q]
            return cokernel(self.ind(Q), maps, name=f"coker Ind({list(Q)})")

        return self._memo(("Icoker", Q), build)

    def comparison(self, Q):
        """Matrix of induced_cokernel(Q) -> I_H(Q) built from v (x) T_d -> (v (x) f_Q) T_d.

        Returns (map, residual) where residual lists the parabolics whose
        images fail to die in I_H (empty when the map is well defined).
        """
        Q = _key(Q)
        L = self.PV
        target = self.I_H(Q)
        X = self.X(Q, L)
        big = InducedModule(tensor_modules(self.e(L), X), self.H, max_power=self.max_power)
        src = self.ind(Q)
        nv = self.V.rank
        ring = self.V.ring
        ident = _fw_identity(self.fw)
        rows = []
        for dl in src.rep_lifts:
            act = big.act(dl)
            for i in range(nv):
                v = [ring.zero] * (nv * X.rank)
                v[i * X.rank] = ring.one
                rows.append(big.vector(v, ident) @ act)
        lift = np.vstack(rows)
        St = self.steinberg(Q, L)
        pi = linalg.kron(linalg.identity(ring, nv), St.projection)
        ind_pi = linalg.block(
            ring, {(k, k): pi for k in range(len(big.reps))},
            [nv * X.rank] * len(big.reps), [nv * St.rank] * len(big.reps))
        composite = lift @ ind_pi
        residual = [list(Q2) for Q2 in intermediate_subsets(Q, L) if Q2 != Q
                    and not linalg.is_zero(self.iota(Q, Q2).matrix @ composite)]
        coker = self.induced_cokernel(Q)
        return ModuleMap(coker, target, coker.section @ composite, name="comparison", check=False), residual

    # -- coinduction side -------------------------------------------------------------------
    def i_map(self, Q, Q2):
        """Coind_{Q2}(e_{Q2} V) -> Coind_Q(e_Q V), restriction of functions."""
        Q, Q2 = _key(Q), _key(Q2)

        def build():
            src = self.coind(Q2)
            tgt = self.coind(Q)
            cols = [src.evaluate(self.H.T(dl)) for dl in tgt.rep_lifts]
            return ModuleMap(src, tgt, np.hstack(cols), name=f"i({list(Q)},{list(Q2)})", check=False)

        return self._memo(("i", Q, Q2), build)

    def coinduced_cokernel(self, Q):
        Q = _key(Q)

        def build():
            maps = [self.i_map(Q, Q2) for Q2 in intermediate_subsets(Q, self.PV) if Q2 != Q]
            return cokernel(self.coind(Q), maps, name=f"CI_H({list(Q)})")

        return self._memo(("CI", Q), build)

    # -- twisting ---------------------------------------------------------------------------
    def twisted(self):
        """The triple for the twisted module over H_{w.M}."""
        return self._memo(("tw",), lambda: ParabolicTriple(twist(self.V, self.H), self.H, self.max_power))

    def twisted_parabolic(self, Q, reading="wQ"):
        return twisted_subset(self.fw, _key(Q), reading)

    def mu(self, Q):
        """Ind_{w.Q}(e_{w.Q} w.V) -> Coind_Q(e_Q V), v (x) 1 to f_{w^Q, v}."""
        Q = _key(Q)

        def build():
            tw = self.twisted()
            src = tw.ind(self.twisted_parabolic(Q))
            tgt = self.coind(Q)
            wq = longest_quotient(self.fw, Q)
            nv = self.V.rank
            ring = self.V.ring
            rows = []
            for dl in src.rep_lifts:
                act = tgt.act(dl)
                for i in range(nv):
                    rows.append(tgt.vector(_basis_vector(ring, nv, i), wq) @ act)
            return ModuleMap(src, tgt, np.vstack(rows), name=f"mu({list(Q)})", check=False)

        return self._memo(("mu", Q), build)

    def mu_inverse(self, Q):
        """f_{d,v} -> v (x) T*_{w^Q d^-1} (lifts)."""
        Q = _key(Q)

        def build():
            tw = self.twisted()
            tgt = tw.ind(self.twisted_parabolic(Q))
            src = self.coind(Q)
            G = self.H.group
            hat = finite_lift(G, longest_quotient(self.fw, Q))
            nv = self.V.rank
            rows = []
            for dl in src.rep_lifts:
                k = tgt.tensor_coords(self.H.Tstar(G.mul(hat, G.inv(dl))))
                for i in range(nv):
                    rows.append(k[i])
            return ModuleMap(src, tgt, np.vstack(rows), name=f"mu^-1({list(Q)})", check=False)

        return self._memo(("muinv", Q), build)

    def i_formula_sides(self, Q, Q2):
        """Both sides of the formula for mu_{Q2}^-1 i mu_Q on v (x) 1 ... read on
        the generating block: rows of mu_{Q'} i mu_Q^-1 for v (x) 1, and the
        coordinates of the closed-form sum of q_d T*_{w^Q (w^{Q'} d)^-1}."""
        Q, Q2 = _key(Q), _key(Q2)
        G = self.H.group
        fw = self.fw
        tw = self.twisted()
        tgt = tw.ind(self.twisted_parabolic(Q))
        nv = self.V.rank
        composite = self.mu(Q2).matrix @ self.i_map(Q, Q2).matrix @ self.mu_inverse(Q).matrix
        lhs = composite[:nv]
        hq = finite_lift(G, longest_quotient(fw, Q))
        hq2 = finite_lift(G, longest_quotient(fw, Q2))
        terms = HeckeElement(self.H, {})
        for d in coset_reps(fw, Q, Q2, "right"):
            dl = finite_lift(G, d)
            x = G.mul(hq, G.inv(G.mul(hq2, dl)))
            terms = terms + self.H.Tstar(x) * self.H.q_factor(dl)
        rhs = tgt.tensor_coords(terms)
        return lhs, rhs


# -- checks --------------------------------------------------------------------------------
def check_kappa(triple, Q, L=None):
    """kappa_Q is an equivariant isomorphism Ind_Q^L(e_Q V) -> e_L(V) (x) X_Q^L."""
    k = triple.kappa(Q, L)
    return {"equivariant": not k.defect(), "isomorphism": k.is_isomorphism}


def check_kappa_square(triple, Q, Q2, L=None):
    """iota(Q,Q') then kappa_Q equals kappa_{Q'} then id (x) iota_X(Q,Q')."""
    L = triple.PV if L is None else _key(L)
    left = triple.iota(Q, Q2, L).matrix @ triple.kappa(Q, L).matrix
    ix = triple.iota_X(Q, Q2, L).matrix
    right = triple.kappa(Q2, L).matrix @ linalg.kron(linalg.identity(triple.V.ring, triple.V.rank), ix)
    return {"commutes": linalg.mat_eq(left, right)}


def check_cokernel_vs_steinberg(triple, Q):
    """When P(V) = G, the cokernel of the iota maps is e(V) (x) St_Q via kappa_Q."""
    if _key(triple.PV) != triple.top:
        raise ValueError("needs P(V) = G")
    Q = _key(Q)
    L = triple.top
    coker = triple.induced_cokernel(Q)
    St = triple.steinberg(Q, L)
    target = tensor_modules(triple.e(L), St)
    pi = linalg.kron(linalg.identity(triple.V.ring, triple.V.rank), St.projection)
    m = ModuleMap(coker, target, coker.section @ triple.kappa(Q, L).matrix @ pi, check=False)
    kills = all(linalg.is_zero(triple.iota(Q, Q2, L).matrix @ triple.kappa(Q, L).matrix @ pi)
                for Q2 in intermediate_subsets(Q, L) if Q2 != Q)
    return {"images_vanish": kills, "equivariant": not m.defect(), "isomorphism": m.is_isomorphism,
            "certificate": not target.certificate()}


def check_comparison(triple, Q):
    """The two descriptions of I_H(P(V), V, Q) agree."""
    m, residual = triple.comparison(Q)
    return {"images_vanish": not residual, "equivariant": not m.defect(), "isomorphism": m.is_isomorphism}


def check_mu(triple, Q):
    mu = triple.mu(Q)
    inv = triple.mu_inverse(Q)
    ring = triple.V.ring
    return {
        "equivariant": not mu.defect(),
        "isomorphism": mu.is_isomorphism,
        "inverse_formula": linalg.mat_eq(mu.matrix @ inv.matrix, linalg.identity(ring, mu.source.rank)),
    }


def check_i_formula(triple, Q, Q2):
    lhs, rhs = triple.i_formula_sides(Q, Q2)
    return {"matrix_equal": linalg.mat_eq(lhs, rhs)}


def check_square(triple, Q, Q2):
    """mu_{Q'} then i(Q,Q') equals iota(w.Q, w.Q') then mu_Q."""
    tw = triple.twisted()
    wq, wq2 = triple.twisted_parabolic(Q), triple.twisted_parabolic(Q2)
    left = triple.mu(Q2).matrix @ triple.i_map(Q, Q2).matrix
    right = tw.iota(wq, wq2).matrix @ triple.mu(Q).matrix
    return {"commutes": linalg.mat_eq(left, right)}


def check_coinduced_iso(triple, Q):
    """CI_H(Q) is isomorphic to the twisted induced cokernel, hence to I_H of the twisted triple."""
    Q = _key(Q)
    tw = triple.twisted()
    wq = triple.twisted_parabolic(Q)
    readings_agree = wq == triple.twisted_parabolic(Q, "wQbar")
    CI = triple.coinduced_cokernel(Q)
    Itw = tw.induced_cokernel(wq)
    mu = triple.mu(Q).matrix
    kills = all(linalg.is_zero(tw.iota(wq, wq2).matrix @ mu @ CI.projection)
                for wq2 in intermediate_subsets(wq, tw.PV) if wq2 != wq)
    m = ModuleMap(Itw, CI, Itw.section @ mu @ CI.projection, check=False)
    comp, residual = tw.comparison(wq)
    via_IH = ModuleMap(comp.target, CI, linalg.inverse(triple.V.ring, comp.matrix) @ m.matrix, check=False) \
        if comp.is_isomorphism else None
    return {
        "readings_agree": readings_agree,
        "images_vanish": kills,
        "equivariant": not m.defect(),
        "isomorphism": m.is_isomorphism,
        "from_I_H": bool(via_IH is not None and not via_IH.defect() and via_IH.is_isomorphism and not residual),
    }


def check_twist_extension(triple, Q):
    """Extending the twisted module equals twisting the extension."""
    tw = triple.twisted()
    wq = triple.twisted_parabolic(Q)
    a = tw.e(wq)
    b = twist(triple.e(Q), triple.H)
    same_alg = a.alg is b.alg
    eq = same_alg and all(linalg.mat_eq(x, y) for (_, x), (_, y) in
                          zip(a.generator_matrices(), b.generator_matrices()))
    return {"equal": bool(eq)}


# -- tensor products with X_Q and Steinberg quotients -------------------------------------
def check_tensor_split(E, X, m_subset, elements):
    """E (x) X with diagonal T* is a module, and T_w, T*_w act as
    (u w_M) (x) (u w_2) for w = u w_M w_2."""
    T = tensor_modules(E, X)
    G = T.alg.group
    bad_t, bad_star = [], []
    for w in elements:
        u, xm, x2 = G.orthogonal_factorize(w, m_subset)
        a, b = G.mul(u, xm), G.mul(u, x2)
        if not linalg.mat_eq(T.act(w), linalg.kron(E.act(a), X.act(b))):
            bad_t.append(w)
        if not linalg.mat_eq(T.act_star(w), linalg.kron(E.act_star(a), X.act_star(b))):
            bad_star.append(w)
    return {"certificate": not T.certificate(), "T_split": not bad_t, "Tstar_split": not bad_star,
            "checked": len(elements), "witness": (bad_t or bad_star or [None])[0]}


def check_trivial_extension(H, m_subset):
    """X_P equals the extension of the M2-module induced from the trivial
    character of the torus (identity matrix on the common basis)."""
    top = _key(H.W.subset)
    M = _key(m_subset)
    M2 = tuple(i for i in top if i not in M)
    XP = trivial_induction(H, M, top)
    X2 = trivial_induction(H, (), M2) if M2 else trivial_module(H.levi(()))
    E = extend(X2, H)
    same_basis = [tuple(H.group.fw.word(d)) for d in XP.reps] == \
        [tuple(H.group.fw.word(d)) for d in getattr(X2, "reps", [_fw_identity(H.group.fw)])]
    m = ModuleMap(XP, E, linalg.identity(H.ring, XP.rank), check=False) if XP.rank == E.rank else None
    return {"same_basis": same_basis, "identity_equivariant": bool(m is not None and not m.defect())}


def steinberg_integrality(triple, Q, L, values):
    """Generic freeness of St_Q^L (unit pivots over the parameter ring) and the
    integer cokernel after sending every parameter to each value in ``values``."""
    from .rings import ZZ

    Q, L = _key(Q), _key(L)
    try:
        St = triple.steinberg(Q, L)
    except ValueError:
        St = None
    X = triple.X(Q, L)
    rows = []
    for Q2 in intermediate_subsets(Q, L):
        if Q2 != Q:
            rows.extend(list(r) for r in triple.iota_X(Q, Q2, L).matrix)
    ring = X.ring
    out = {"rank_X": X.rank, "rank_St": St.rank if St is not None else None,
           "generic_free": St is not None, "specializations": []}
    for val in values:
        vals = [ZZ(val)] * len(getattr(ring, "names", []))
        ev = (lambda c: ring.evaluate(c, vals, ZZ)) if hasattr(ring, "evaluate") else ZZ
        free, torsion = linalg.integer_cokernel([[ev(c) for c in r] for r in rows], X.rank)
        out["specializations"].append({"q": val, "free_rank": free, "torsion": [int(t) for t in torsion]})
    return out
