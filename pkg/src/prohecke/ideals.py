"""The ideals J and J_M of the orthogonal setting and the extension map e*.

Fix a Levi M whose simple roots are orthogonal to the remaining ones (M2).
N is the normal subgroup of W(1) generated by the lifted affine reflections
of M2 and the groups Z'_{k,s} for those reflections; N_M = N cap W_M(1).
J is spanned by T*_w - T*_{w n} (n in N), so an element lies in J exactly
when its T*-coefficients sum to zero on every coset w N.

Two coset keys are computed independently:

* ``key_G`` factors w = u x_M x_2 along a reduced word and keeps
  (torus part of u mod T2, image of u x_M in W);
* ``key_M`` (for w in W_M(1)) reduces the translation modulo the coroot
  lattice of M2 with Smith normal form data and the torus mod T2.
"""

from __future__ import annotations

from itertools import product as iproduct

from .hecke import HeckeElement
from .parabolic import finite_lift, is_orthogonal, lattice_lift
from .weyl_ext import ExtendedGroup


class OrthogonalIdealContext:
    def __init__(self, H, m_subset):
        self.H = H
        self.G: ExtendedGroup = H.group
        self.W = H.W
        rd = self.W.rd
        self.M = tuple(sorted(m_subset))
        self.M2 = tuple(i for i in self.W.subset if i not in self.M)
        if not is_orthogonal(rd, self.M, self.M2):
            raise ValueError("Levi is not orthogonal to its complement")
        self.HM = H.levi(self.M)
        self.H2 = H.levi(self.M2)
        self.W2 = self.W.levi(self.M2)
        self.T2 = self._torus_kernel()
        self._torus_rep = {}

    # -- the torus part of N ---------------------------------------------------------
    def _torus_kernel(self):
        G = self.G
        torus = G.torus
        if not torus.k:
            return frozenset([torus.zero])
        seeds = []
        for g in range(len(self.H2.W.gens)):
            lift = self.H2.gen_lift[g]
            sq = G.mul(lift, lift)
            seeds.append(sq[0])
            seeds.extend(self.H2.gen_zprime[g])
        fw = G.fw
        gens = {G.act(w, t) for t in seeds for w in range(fw.order)}
        out = {torus.zero}
        frontier = [torus.zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = torus.add(a, g)
                    if b not in out:
                        out.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(out)

    def torus_rep(self, t):
        """Smallest element of t + T2."""
        r = self._torus_rep.get(t)
        if r is None:
            torus = self.G.torus
            r = min(torus.add(t, s) for s in self.T2)
            self._torus_rep[t] = r
        return r

    # -- coset keys -------------------------------------------------------------------
    def rep_G(self, x):
        """Length-minimal representative of x N (u x_M with reduced torus part)."""
        G = self.G
        u, xm, _ = G.orthogonal_factorize(x, self.M)
        core = G.mul(G.mul(G.inv(G.torus_element(u[0])), u), xm)
        t = self.torus_rep(u[0])
        return G.mul(G.torus_element(t), core)

    def key_G(self, x):
        return self.rep_G(x)

    def reduce_translation(self, lam):
        """Canonical representative of lam modulo the coroot lattice of M2."""
        W2 = self.W2
        u = W2._omega_u
        if u is None or not self.M2:
            return tuple(lam)
        n = len(lam)
        coords = [sum(u[i][j] * lam[j] for j in range(n)) for i in range(n)]
        slots = dict(zip(W2._omega_slots, W2._omega_mod))
        red = []
        for i, c in enumerate(coords):
            if i not in slots:
                red.append(0)
            elif slots[i]:
                red.append(c % slots[i])
            else:
                red.append(c)
        uinv = W2._omega_uinv
        return tuple(sum(uinv[i][j] * red[j] for j in range(n)) for i in range(n))

    def rep_M(self, x):
        """Representative of x N_M for x in W_M(1), via lattice reduction."""
        G = self.G
        if not self.HM.group.contains(x):
            raise ValueError("element is not in W_M(1)")
        lam = x[1]
        red = self.reduce_translation(lam)
        lam2 = tuple(a - b for a, b in zip(lam, red))
        y = G.mul(x, G.inv(lattice_lift(self.H2, lam2))) if any(lam2) else x
        assert y[1] == red
        return (self.torus_rep(y[0]), y[1], y[2])

    def key_M(self, x):
        return self.rep_M(x)

    def in_N(self, x):
        return self.key_G(x) == self.key_G(self.G.identity())

    # -- reduction modulo the ideals -----------------------------------------------------
    def reduce(self, h, side="G"):
        """Normal form of h modulo J (side 'G') or J_M (side 'M'), as T*-coordinates."""
        alg = self.H if side == "G" else self.HM
        key = self.rep_G if side == "G" else self.rep_M
        coords = alg.to_star(h) if isinstance(h, HeckeElement) else h
        out = {}
        for x, c in coords.items():
            if c == 0:
                continue
            k = key(x)
            out[k] = out.get(k, alg.ring.zero) + c
        return {k: v for k, v in out.items() if v != 0}

    def in_ideal(self, h, side="G"):
        return not self.reduce(h, side)

    def e_star(self, h):
        """theta*: T^{M,*}_w -> T*_w, extended linearly to all of H_M (T*-coordinates)."""
        coords = self.HM.to_star(h) if isinstance(h, HeckeElement) else h
        return dict(coords)

    # -- decompositions used by the certificates -------------------------------------------
    def levi_part(self, x):
        """An element of W_M(1) cap x N: strip the lifted finite M2 part of x."""
        G = self.G
        wm, w2 = G.fw.decompose(x[2], self.M2, side="right")
        return G.mul(x, G.inv(finite_lift(G, w2)))

    def rho2(self):
        """Sum of the positive coroots of M2 (a translation in its coroot lattice)."""
        rd = self.W.rd
        lam = [0] * rd.n
        for k in self.W2.pos:
            for t in range(rd.n):
                lam[t] += rd.pos_coroots[k][t]
        return tuple(lam)

    def negative_part(self, x, max_steps=64):
        """(z, n) with z = x n^-1 in W_{M-}(1) and n in N_M (x in W_M(1))."""
        G = self.G
        rho = self.rho2()
        for k in range(max_steps):
            n = lattice_lift(self.H2, tuple(k * a for a in rho)) if k else G.identity()
            z = G.mul(x, G.inv(n))
            if self.W.positive_part((z[1], z[2]), self.M, -1):
                return z, n
        raise RuntimeError("no negative representative found")


# -- checks --------------------------------------------------------------------------------
def _star(alg, x):
    return {x: alg.ring.one}


def _sub(alg, a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, alg.ring.zero) - v
    return {k: v for k, v in out.items() if v != 0}


def _scale(alg, a, c):
    return {k: v * c for k, v in a.items() if v * c != 0}


def check_ideal_equalities(ctx, elements, kernel_elements):
    """Left and right ideals equal the span J'.

    Direction 1: T*_w (T*_n - 1) and (T*_n - 1) T*_w reduce to zero.
    Direction 2: T*_{wn} - T*_w and T*_{nw} - T*_w are rewritten exactly as
    combinations of left (resp. right) ideal generators.
    """
    H = ctx.H
    G = ctx.G
    one = _star(H, G.identity())
    failures = []
    for w in elements:
        for n in kernel_elements:
            gen = _sub(H, _star(H, n), one)
            if ctx.reduce(H.multiply_star(_star(H, w), gen)):
                failures.append(("left generator not in span", w, n))
            if ctx.reduce(H.multiply_star(gen, _star(H, w))):
                failures.append(("right generator not in span", w, n))
            # left certificate: w = x y with y = x_2, x = u x_M
            u, xm, y = G.orthogonal_factorize(w, ctx.M)
            x = G.mul(u, xm)
            yn = G.mul(y, n)
            lhs = _sub(H, _star(H, G.mul(w, n)), _star(H, w))
            rhs = _sub(H, H.multiply_star(_star(H, x), _sub(H, _star(H, yn), one)),
                       H.multiply_star(_star(H, x), _sub(H, _star(H, y), one)))
            if lhs != rhs:
                failures.append(("left certificate", w, n))
            # right certificate: w = y' x with y' = u x_2 u^-1
            y2 = G.mul(G.mul(u, y), G.inv(u))
            ny = G.mul(n, y2)
            lhs = _sub(H, _star(H, G.mul(n, w)), _star(H, w))
            rhs = _sub(H, H.multiply_star(_sub(H, _star(H, ny), one), _star(H, x)),
                       H.multiply_star(_sub(H, _star(H, y2), one), _star(H, x)))
            if lhs != rhs:
                failures.append(("right certificate", w, n))
    return {"checked": len(elements) * len(kernel_elements), "failures": failures[:5],
            "ok": not failures}


def check_levi_ideal(ctx, elements, lattice_elements):
    """In H_M, T^{M,*}_w (T^{M,*}_l - 1) = T^{M,*}_{wl} - T^{M,*}_w and the mirrored identity."""
    HM = ctx.HM
    G = ctx.G
    one = _star(HM, G.identity())
    bad = []
    for w in elements:
        for lam in lattice_elements:
            gen = _sub(HM, _star(HM, lam), one)
            if HM.multiply_star(_star(HM, w), gen) != _sub(HM, _star(HM, G.mul(w, lam)), _star(HM, w)):
                bad.append(("left", w, lam))
            if HM.multiply_star(gen, _star(HM, w)) != _sub(HM, _star(HM, G.mul(lam, w)), _star(HM, w)):
                bad.append(("right", w, lam))
            if ctx.reduce(HM.multiply_star(_star(HM, w), gen), side="M"):
                bad.append(("not in span", w, lam))
    return {"ok": not bad, "failures": bad[:5]}


def check_keys_agree(ctx, levi_elements):
    """The two coset keys induce the same partition of W_M(1)."""
    by_g = {}
    by_m = {}
    for x in levi_elements:
        by_g.setdefault(ctx.key_G(x), set()).add(x)
        by_m.setdefault(ctx.key_M(x), set()).add(x)
    part_g = sorted(sorted(s) for s in by_g.values())
    part_m = sorted(sorted(s) for s in by_m.values())
    return {"ok": part_g == part_m, "classes": len(part_g)}


def check_extension_maps(ctx, elements, levi_elements):
    """Surjectivity and injectivity of H_M / J_M <- H_{M-} / .. -> H / J on a truncation."""
    G = ctx.G
    W = ctx.W
    H, HM = ctx.H, ctx.HM
    bad = []
    # left map onto H_M / J_M
    for x in levi_elements:
        z, n = ctx.negative_part(x)
        if not W.positive_part((z[1], z[2]), ctx.M, -1) or ctx.key_M(z) != ctx.key_M(x):
            bad.append(("left surjectivity", x))
    # right map onto H / J
    for w in elements:
        x = ctx.levi_part(w)
        if not HM.group.contains(x) or not ctx.in_N(G.mul(G.inv(x), w)):
            bad.append(("levi part", w))
            continue
        z, _ = ctx.negative_part(x)
        if ctx.key_G(z) != ctx.key_G(w):
            bad.append(("right surjectivity", w))
    # injectivity: negative elements in one N-coset lie in one N_M-coset
    neg = [x for x in levi_elements if W.positive_part((x[1], x[2]), ctx.M, -1)]
    classes = {}
    for x in neg:
        classes.setdefault(ctx.key_G(x), set()).add(ctx.key_M(x))
    split = [k for k, v in classes.items() if len(v) > 1]
    if split:
        bad.append(("injectivity", split[0]))
    return {"ok": not bad, "failures": bad[:5], "negative_elements": len(neg),
            "checked": len(elements) + len(levi_elements)}


def check_e_star_homomorphism(ctx, generators):
    """e*(ab) = e*(a) e*(b) mod J for pairs of generators of H_M (T*-coordinates)."""
    H, HM = ctx.H, ctx.HM
    bad = []
    for (la, a), (lb, b) in iproduct(generators, repeat=2):
        prod = ctx.e_star(HM.multiply_star(a, b))
        img = H.multiply_star(ctx.e_star(a), ctx.e_star(b))
        if ctx.reduce(_sub(H, prod, img)):
            bad.append((la, lb))
    return {"ok": not bad, "failures": bad[:5], "pairs": len(generators) ** 2}


def levi_generators(ctx):
    """T^{M,*} of the generators of W_M(1) and of the inverses of length-zero ones."""
    from .modules import generator_elements

    HM = ctx.HM
    G = ctx.G
    out = []
    for lab, x in generator_elements(HM):
        out.append((lab, _star(HM, x)))
        if HM.group.length(x) == 0 and G.inv(x) != x:
            out.append((lab + "^-1", _star(HM, G.inv(x))))
    return out


def check_extension_T(ctx, elements):
    """T_w + J = e*(T^M_{w_M} q_{M2}(w) + J_M), for two choices of w_M."""
    H, HM = ctx.H, ctx.HM
    G = ctx.G
    bad = []
    shift = lattice_lift(ctx.H2, ctx.rho2()) if ctx.M2 and ctx.W.kind == "affine" else G.identity()
    for w in elements:
        _, q2 = H.q_factor_split(w, ctx.M)
        lhs = H.to_star(H.T(w))
        wm = ctx.levi_part(w)
        for choice in (wm, G.mul(wm, shift)):
            rhs = ctx.e_star(_scale(HM, HM.to_star(HM.T(choice)), q2))
            if ctx.reduce(_sub(H, lhs, rhs)):
                bad.append(w)
                break
    return {"ok": not bad, "failures": bad[:5], "checked": len(elements)}
