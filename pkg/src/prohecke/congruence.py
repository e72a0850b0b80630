"""Generic Hecke rings of finite Coxeter systems, the right ideal generated
by the T*_w - 1 for w in a parabolic subgroup, and exact certificates for the
congruence between the two coset sums.

Elements are dense coefficient lists indexed by the enumerated group (or a
standard parabolic subgroup of it).  Ideal membership is decided in the T*
basis, where the ideal basis has integer coordinates, so no division in
Z[q] is ever needed; the determinant of the basis matrix is recorded.
"""

from __future__ import annotations

from itertools import chain, combinations

from . import linalg
from .rings import PolynomialRing, ZZ

MAX_ORDER = 1152
SPECIALIZATIONS = (0, 1, 2, 3, 5)


class BudgetError(RuntimeError):
    pass


def subsets(seq):
    seq = list(seq)
    return [tuple(c) for c in chain.from_iterable(combinations(seq, k) for k in range(len(seq) + 1))]


class GenericFiniteHecke:
    """Hecke ring of the parabolic subgroup W_subset of ``fw`` with
    parameters ``q[i]`` (one per simple index) in ``ring``.

    T_s^2 = q_s + (q_s - 1) T_s and T*_s = T_s - (q_s - 1).
    """

    def __init__(self, fw, ring, q, subset=None, check=True):
        self.fw = fw
        self.ring = ring
        self.subset = tuple(sorted(range(fw.rd.r) if subset is None else subset))
        self.q = {i: ring(q[i]) for i in self.subset}
        elems = fw.parabolic(self.subset)
        if len(elems) > MAX_ORDER:
            raise BudgetError(f"|W| = {len(elems)} exceeds the cap {MAX_ORDER}")
        elems.sort(key=lambda w: (fw.length[w], fw.word(w, self.subset)))
        self.elements = elems
        self.index = {w: k for k, w in enumerate(elems)}
        self.dim = len(elems)
        self.longest = elems[-1]
        self._build_star()
        if check:
            bad = self.self_test()
            if bad:
                raise ArithmeticError(f"T_w T*_(w^-1) != q_w for {bad[:3]}")

    # -- basics ---------------------------------------------------------------------
    def zero(self):
        return [self.ring.zero] * self.dim

    def basis(self, w):
        v = self.zero()
        v[self.index[w]] = self.ring.one
        return v

    def word(self, w):
        return self.fw.word(w, self.subset)

    def length(self, w):
        return self.fw.length[w]

    def q_of(self, w):
        out = self.ring.one
        for i in self.word(w):
            out = out * self.q[i]
        return out

    def add(self, a, b, scale=1):
        return [x + y * scale for x, y in zip(a, b)]

    def scale(self, a, c):
        return [x * c for x in a]

    # -- multiplication in the T basis ----------------------------------------------
    def times_Ts(self, x, i):
        """x T_s for the simple reflection of index i."""
        fw = self.fw
        s = fw.simple[i]
        q = self.q[i]
        out = self.zero()
        for k, a in enumerate(x):
            if a == 0:
                continue
            w = self.elements[k]
            ws = self.index[fw.mul(w, s)]
            if fw.is_right_descent(w, i):
                out[ws] = out[ws] + a * q
                out[k] = out[k] + a * (q - 1)
            else:
                out[ws] = out[ws] + a
        return out

    def times_Tstar_s(self, x, i):
        return self.add(self.times_Ts(x, i), x, -(self.q[i] - 1))

    def times_T(self, x, w):
        for i in self.word(w):
            x = self.times_Ts(x, i)
        return x

    def mul(self, x, y):
        """Product in the T basis."""
        out = self.zero()
        for k, b in enumerate(y):
            if b != 0:
                out = self.add(out, self.times_T(x, self.elements[k]), b)
        return out

    # -- the T* basis ------------------------------------------------------------------
    def _build_star(self):
        fw = self.fw
        star = {0: self.basis(0)}
        for w in self.elements[1:]:
            i = self.word(w)[-1]
            star[w] = self.times_Tstar_s(star[fw.mul(w, fw.simple[i])], i)
        self.star = star

    def Tstar(self, w):
        return list(self.star[w])

    def to_star(self, x):
        """T-basis coefficients -> T*-basis coefficients (triangular in the length)."""
        x = list(x)
        out = self.zero()
        for k in range(self.dim - 1, -1, -1):
            c = x[k]
            if c == 0:
                continue
            out[k] = c
            x = self.add(x, self.star[self.elements[k]], -c)
        return out

    def from_star(self, c):
        out = self.zero()
        for k, a in enumerate(c):
            if a != 0:
                out = self.add(out, self.star[self.elements[k]], a)
        return out

    def self_test(self):
        """Elements w with T_w T*_(w^-1) != q_w."""
        bad = []
        for w in self.elements:
            lhs = self.mul(self.basis(w), self.star[self.fw.inv[w]])
            rhs = self.scale(self.basis(0), self.q_of(w))
            if lhs != rhs:
                bad.append(w)
        return bad

    def specialize(self, values, target=ZZ):
        """Same group with every variable of the polynomial ring sent to ``values``."""
        src = self.ring
        if isinstance(values, int):
            values = [values] * len(src.names)
        vals = [target(v) for v in values]
        q = {i: src.evaluate(v, vals, target) for i, v in self.q.items()}
        return GenericFiniteHecke(self.fw, target, q, self.subset)


def evaluate_vector(ring, vec, values, target=ZZ):
    if isinstance(values, int):
        values = [values] * len(ring.names)
    vals = [target(v) for v in values]
    return [ring.evaluate(a, vals, target) for a in vec]


class StarIdeal:
    """Right ideal of ``H`` generated by T*_w - 1 for w in W_J.

    ``rows`` lists the basis (T*_{w1} - 1) T*_{w2}, w1 in W_J minus 1 and w2
    minimal in W_J w2, followed by the complement T*_{w2}; all in T*
    coordinates and computed by genuine multiplication.
    """

    def __init__(self, H, J):
        self.H = H
        fw = H.fw
        self.J = tuple(sorted(J))
        if not set(self.J) <= set(H.subset):
            raise ValueError("J must be a subset of the simple reflections")
        self.WJ = [w for w in H.elements if fw.in_parabolic(w, self.J)]
        self.reps = [w for w in H.elements
                     if not any(fw.is_left_descent(w, i) for i in self.J)]
        one = H.basis(0)
        labels, rows = [], []
        for w1 in self.WJ:
            if w1 == 0:
                continue
            left = H.add(H.Tstar(w1), one, -1)
            for w2 in self.reps:
                rows.append(H.to_star(H.mul(left, H.Tstar(w2))))
                labels.append(("ideal", w1, w2))
        for w2 in self.reps:
            rows.append(H.to_star(H.Tstar(w2)))
            labels.append(("complement", w2))
        self.labels = labels
        self.n_ideal = len(labels) - len(self.reps)
        self.matrix = linalg.matrix(H.ring, rows, H.dim)
        self._inverse = None

    def determinant(self):
        return linalg.det(self.H.ring, self.matrix)

    @property
    def inverse(self):
        if self._inverse is None:
            self._inverse = linalg.inverse(self.H.ring, self.matrix)
        return self._inverse

    def coordinates(self, x):
        """Coordinates of x (T basis) in the basis ``rows``."""
        star = linalg.matrix(self.H.ring, [self.H.to_star(x)], self.H.dim)
        return list((star @ self.inverse)[0])

    def certificate(self, x):
        """(member, {label: coefficient}) for x in the T basis."""
        c = self.coordinates(x)
        member = all(a == 0 for a in c[self.n_ideal:])
        cert = {self.labels[k]: c[k] for k in range(self.n_ideal) if c[k] != 0}
        return member, cert

    def rebuild(self, cert):
        """The element sum c_b b in the T basis."""
        H = self.H
        out = H.zero()
        one = H.basis(0)
        for (_, w1, w2), c in cert.items():
            b = H.mul(H.add(H.Tstar(w1), one, -1), H.Tstar(w2))
            out = H.add(out, b, c)
        return out


# -- records ---------------------------------------------------------------------------------
def _render(ring, x):
    return ring.render(x) if hasattr(ring, "render") else str(x)


def _word_label(H, w):
    return ".".join(H.fw.rd.names[i] for i in H.word(w)) or "1"


def _render_cert(H, cert):
    out = {}
    for (_, w1, w2), c in cert.items():
        out[f"(T*[{_word_label(H, w1)}]-1)T*[{_word_label(H, w2)}]"] = _render(H.ring, c)
    return dict(sorted(out.items()))


def _first_difference(H, a, b):
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return {"element": _word_label(H, H.elements[k]), "lhs": _render(H.ring, x),
                    "rhs": _render(H.ring, y)}
    return None


def verify_basis(H, J):
    """Ideal basis plus coset T*'s is a basis of H; the span of the ideal rows
    is a right ideal containing the generators."""
    I = StarIdeal(H, J)
    det = I.determinant()
    unit = H.ring.is_unit(det)
    closed = True
    if unit:
        for k in range(I.n_ideal):
            row = H.from_star(list(I.matrix[k]))
            for i in H.subset:
                if not I.certificate(H.times_Tstar_s(row, i))[0]:
                    closed = False
        gens = all(I.certificate(H.add(H.Tstar(w), H.basis(0), -1))[0] for w in I.WJ)
    else:
        gens = False
    return {
        "J": list(J),
        "dim": H.dim,
        "ideal_rank": I.n_ideal,
        "complement_rank": len(I.reps),
        "determinant": _render(H.ring, det),
        "full_rank": unit,
        "right_ideal": closed,
        "contains_generators": gens,
        "ok": unit and closed and gens,
    }


def verify_sum_identity(H):
    """sum_w T_w = sum_w T_w T*_s for every simple s."""
    total = [H.ring.one] * H.dim
    out = {}
    for i in H.subset:
        rhs = H.times_Tstar_s(total, i)
        out[H.fw.rd.names[i]] = {"holds": rhs == total, "counterexample": _first_difference(H, total, rhs)}
    return {"per_s": out, "ok": all(v["holds"] for v in out.values())}


def congruence_sides(H, J):
    """(sum_d T_d, sum_d q_{w_J d w} T*_d) over d minimal in W_J d."""
    fw = H.fw
    I = StarIdeal(H, J)
    wJ = fw.longest_in(I.J) if I.J else 0
    w0 = H.longest
    lhs, rhs = H.zero(), H.zero()
    for d in I.reps:
        lhs = H.add(lhs, H.basis(d))
        rhs = H.add(rhs, H.Tstar(d), H.q_of(fw.mul(fw.mul(wJ, d), w0)))
    return I, lhs, rhs


def verify_generic_congruence(H, J):
    I, lhs, rhs = congruence_sides(H, J)
    diff = H.add(lhs, rhs, -1)
    member, cert = I.certificate(diff)
    rebuilt = I.rebuild(cert) == diff
    return {
        "J": list(J),
        "cosets": len(I.reps),
        "member": member,
        "certificate_rebuilds": rebuilt,
        "certificate": _render_cert(H, cert),
        "ok": member and rebuilt,
        "_cert": cert,
        "_diff": diff,
    }


def verify_coset_congruences(H, J):
    """sum_d T_d == sum_d T_d T*_s modulo the ideal, for each simple s."""
    I = StarIdeal(H, J)
    lhs = H.zero()
    for d in I.reps:
        lhs = H.add(lhs, H.basis(d))
    out = {}
    for i in H.subset:
        member, _ = I.certificate(H.add(lhs, H.times_Tstar_s(lhs, i), -1))
        out[H.fw.rd.names[i]] = member
    return {"per_s": out, "ok": all(out.values())}


def verify_step1_identities(H, J):
    """Coset set equality and q_{w_J} q_{w_J d w} T*_d = T_{w_J} T_{w_J d w} T*_w."""
    fw = H.fw
    I = StarIdeal(H, J)
    wJ = fw.longest_in(I.J) if I.J else 0
    w0 = H.longest
    reps = set(I.reps)
    image = {fw.mul(fw.mul(wJ, d), w0) for d in I.reps}
    bad = []
    lengths_ok = True
    for d in I.reps:
        x = fw.mul(fw.mul(wJ, d), w0)
        if H.length(x) != H.length(w0) - H.length(wJ) - H.length(d):
            lengths_ok = False
        lhs = H.scale(H.Tstar(d), H.q_of(wJ) * H.q_of(x))
        rhs = H.mul(H.mul(H.basis(wJ), H.basis(x)), H.Tstar(w0))
        split = H.mul(H.basis(wJ), H.basis(x)) == H.basis(fw.mul(d, w0))
        if lhs != rhs or not split:
            bad.append(_word_label(H, d))
    return {
        "J": list(J),
        "set_equality": image == reps,
        "lengths": lengths_ok,
        "failures": bad,
        "ok": image == reps and lengths_ok and not bad,
    }


def verify_specializations(H, J, values=SPECIALIZATIONS):
    """Re-check the generic congruence after q -> v in Z.

    Two routes per value: the generic certificate evaluated at v must rebuild
    the evaluated difference, and a ring built directly over Z with q = v must
    find the difference in its own ideal.
    """
    rec = verify_generic_congruence(H, J)
    cert, diff = rec["_cert"], rec["_diff"]
    out = {}
    for v in values:
        Hv = H.specialize(v)
        Iv = StarIdeal(Hv, J)
        cert_v = {k: H.ring.evaluate(c, [ZZ(v)] * len(H.ring.names), ZZ) for k, c in cert.items()}
        cert_v = {k: c for k, c in cert_v.items() if c != 0}
        route_cert = Iv.rebuild(cert_v) == evaluate_vector(H.ring, diff, v)
        _, lhs, rhs = congruence_sides(Hv, J)
        member, _ = Iv.certificate(Hv.add(lhs, rhs, -1))
        det = Iv.determinant()
        out[str(v)] = {"certificate": route_cert, "direct": member, "unit_determinant": ZZ.is_unit(det)}
    ok = all(all(x.values()) for x in out.values())
    return {"J": list(J), "values": out, "ok": ok}


def generic_ring(instance, subset=None):
    """Generic finite Hecke ring of the finite Weyl group of ``instance``
    with its own polynomial parameters."""
    alg = instance.algebra
    rd = instance.root_datum
    q = {i: alg.q_top[rd.names[i]] for i in range(rd.r)}
    return GenericFiniteHecke(rd.weyl, alg.ring, q, subset)


def verify_system(instance, values=SPECIALIZATIONS):
    """Every check of this module for every J on one finite system."""
    H = generic_ring(instance)
    out = {"instance": instance.name, "order": H.dim, "sum_identity": verify_sum_identity(H), "J": {}}
    ok = out["sum_identity"]["ok"]
    for J in subsets(H.subset):
        key = "{" + ",".join(H.fw.rd.names[i] for i in J) + "}"
        gen = verify_generic_congruence(H, J)
        rec = {
            "basis": verify_basis(H, J),
            "congruence": {k: v for k, v in gen.items() if not k.startswith("_")},
            "coset_congruences": verify_coset_congruences(H, J),
            "step1": verify_step1_identities(H, J),
            "specializations": verify_specializations(H, J, values),
        }
        out["J"][key] = rec
        ok = ok and all(r["ok"] for r in rec.values())
    out["ok"] = ok
    return out


# -- the reduction inside a pro-p algebra -------------------------------------------------
def _finite_lift(alg, w):
    """Product of the lifted simple reflections along the reduced word of w."""
    G = alg.group
    rd = alg.W.rd
    x = G.identity()
    for i in rd.weyl.word(w):
        x = G.mul(x, alg.gen_lift[alg.W.gen_index[rd.names[i]]])
    return x


def augmentation(alg, h, fw, allowed):
    """Send T_{t lift(w)} to T_w: the quotient by the ideal generated by T_t - 1."""
    out = {}
    for (t, lam, w), c in h.terms.items():
        if any(lam) or w not in allowed:
            raise ValueError("element outside the finite subring")
        out[w] = out.get(w, alg.ring.zero) + c
    return out


def verify_final_reduction(alg, m_subset, q_subset, q2_subset):
    """The congruence of coset sums of lifted elements inside the pro-p
    algebra ``alg``, modulo the ideal of T*_{lift w} - 1 (w in W_{Q2}) and
    T_t - 1, by reduction to the generic finite ring specialised at the q_s
    of ``alg``.

    Q2 and Q2' are Q and Q' with the roots of M removed, M being orthogonal
    to the rest of Q'.
    """
    rd = alg.W.rd
    fw = rd.weyl
    M = set(m_subset)
    J = tuple(sorted(set(q_subset) - M))
    K = tuple(sorted(set(q2_subset) - M))
    if not set(J) <= set(K):
        raise ValueError("need Q inside Q'")
    q = {i: alg.q_top[rd.names[i]] for i in K}
    Hs = GenericFiniteHecke(fw, alg.ring, q, K)
    allowed = set(Hs.elements)
    # c_s augments to q_s - 1 for the lifted simple reflections of Q2'
    c_aug = {}
    for i in K:
        g = alg.W.gen_index[rd.names[i]]
        c_aug[rd.names[i]] = sum(alg.gen_c[g].values(), alg.ring.zero) == alg.gen_q[g] - 1
    I = StarIdeal(Hs, J)
    wJ = fw.longest_in(J) if J else 0
    wK = Hs.longest
    lhs = alg.zero()
    rhs = alg.zero()
    for d in I.reps:
        lift = _finite_lift(alg, d)
        lhs = lhs + alg.T(lift)
        x = fw.mul(fw.mul(wJ, d), wK)
        rhs = rhs + alg.Tstar(lift) * alg.q_factor(_finite_lift(alg, x))
    aug = augmentation(alg, lhs - rhs, fw, allowed)
    diff = Hs.zero()
    for w, c in aug.items():
        diff[Hs.index[w]] = diff[Hs.index[w]] + c
    member, cert = I.certificate(diff)
    # second route: the certificate over free parameters, specialised to alg
    classes = []
    for i in K:
        if alg.q_top[rd.names[i]] not in classes:
            classes.append(alg.q_top[rd.names[i]])
    free = PolynomialRing([f"x{k}" for k in range(len(classes))])
    Hg = GenericFiniteHecke(fw, free, {i: free.gen(classes.index(q[i])) for i in K}, K)
    gen = verify_generic_congruence(Hg, J)
    special = {k: free.evaluate(c, classes, alg.ring) for k, c in gen["_cert"].items()}
    special = {k: c for k, c in special.items() if c != 0}
    rebuilt = I.rebuild(cert) == diff
    return {
        "Q2": [rd.names[i] for i in J],
        "Q2_prime": [rd.names[i] for i in K],
        "c_augments_to_q_minus_1": c_aug,
        "member": member,
        "certificate": _render_cert(Hs, cert),
        "certificate_rebuilds": rebuilt,
        "generic_specialises": gen["ok"] and I.rebuild(special) == diff,
        "ok": member and rebuilt and all(c_aug.values()) and gen["ok"] and I.rebuild(special) == diff,
    }
