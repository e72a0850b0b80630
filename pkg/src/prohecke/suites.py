"""Named verification suites.

A suite runs a fixed list of checks over one or more instances and returns
JSON-ready records.  Every record has a status:

``proved``              the statement was checked on a complete finite set
                        (all relations of a finite-rank module, a whole
                        finite group, an exact certificate);
``verified-at-budget``  it holds on every sampled or length-bounded case;
``refuted``             a witness is attached;
``inconclusive``        a budget was exceeded or the check does not apply.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from itertools import product

from . import comparison as cmp
from . import congruence as cong
from . import ideals
from . import linalg
from . import relations
from . import supersingular as ss
from .instances import load_instance
from .modules import character, sign_module, trivial_module
from .parabolic import BudgetError, extend, is_extensible, is_orthogonal

PROVED = "proved"
AT_BUDGET = "verified-at-budget"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
STATUSES = (PROVED, AT_BUDGET, REFUTED, INCONCLUSIVE)


@dataclass
class Budget:
    max_length: int | None = None
    seed: int = 0
    samples: int = 10000
    spin_cap: int = 200000
    primes: tuple = (2, 3)
    specializations: tuple = cong.SPECIALIZATIONS

    def length(self, default):
        return default if self.max_length is None else self.max_length

    def as_dict(self):
        d = asdict(self)
        d["primes"] = list(self.primes)
        d["specializations"] = list(self.specializations)
        return d


@dataclass
class Suite:
    id: str
    title: str
    statements: list
    instances: list
    runner: object = field(repr=False)


# -- JSON normalisation ------------------------------------------------------------------------
def jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return jsonable(x.tolist())
    if hasattr(x, "v") and hasattr(x, "n"):
        return int(x.v)
    return str(x)


class Recorder:
    def __init__(self, instance_name):
        self.instance = instance_name
        self.checks = []

    def add(self, check, statement, ok, exhaustive, details=None, witness=None, context=None):
        rec = {"check": check, "instance": self.instance, "statement": statement}
        if context:
            rec["context"] = context
        if ok:
            rec["status"] = PROVED if exhaustive else AT_BUDGET
        else:
            rec["status"] = REFUTED
            rec["witness"] = witness if witness is not None else details
        if details is not None:
            rec["details"] = details
        self.checks.append(jsonable(rec))

    def inconclusive(self, check, statement, reason, context=None):
        rec = {"check": check, "instance": self.instance, "statement": statement,
               "status": INCONCLUSIVE, "reason": reason}
        if context:
            rec["context"] = context
        self.checks.append(jsonable(rec))

    def guard(self, check, statement, fn, context=None):
        """Run ``fn()``; budget errors become inconclusive, anything else a refutation."""
        try:
            fn()
        except BudgetError as exc:
            self.inconclusive(check, statement, f"budget: {exc}", context)
        except Exception as exc:  # a crash is reported, never hidden
            self.add(check, statement, False, False, witness={"error": f"{type(exc).__name__}: {exc}"},
                     context=context)


# -- modules used by the parabolic suites -------------------------------------------------
DEFAULT_MODULES = {
    "affine_A1xA1": ["trivial@0", "sign@0"],
    "affine_A2_GL3": ["trivial@", "omega=-1,-1,-1@", "omega=-1,1,1@", "omega=1,-1,1@"],
}


def parse_levi(text):
    text = text.strip()
    return tuple(sorted(int(v) for v in text.split(",") if v.strip())) if text else ()


def build_module(alg, spec):
    """``kind@levi`` with kind trivial, sign or omega=v1,v2,... (values on the
    length-zero generators, reflections acting trivially)."""
    kind, _, levi = spec.partition("@")
    HL = alg.levi(parse_levi(levi))
    if kind == "trivial":
        return trivial_module(HL)
    if kind == "sign":
        return sign_module(HL)
    if kind.startswith("omega="):
        vals = [int(v) for v in kind[len("omega="):].split(",")]
        if len(vals) != len(HL.W.omega_generators):
            raise ValueError(f"{spec}: need {len(HL.W.omega_generators)} values")
        return character(HL, list(HL.gen_q), omega=vals, name=f"chi{vals}")
    raise ValueError(f"unknown module kind {kind!r}")


def module_specs(inst, override):
    return list(override) if override else DEFAULT_MODULES.get(inst.name, ["trivial@"])


def orthogonal_levis(alg):
    rd = alg.W.rd
    top = tuple(alg.W.subset)
    out = []
    for M in cong.subsets(top):
        comp = tuple(i for i in top if i not in M)
        if M != top and is_orthogonal(rd, M, comp):
            out.append(M)
    return out


def _all_elements(inst):
    fw = inst.group.fw
    return inst.group.elements_up_to(fw.length[fw.longest])


# -- braid_quadratic ---------------------------------------------------------------------------
def run_braid_quadratic(inst, budget, modules=None):
    rec = Recorder(inst.name)
    H = inst.algebra
    finite = inst.kind == "finite"
    L = budget.length(4)
    window = _all_elements(inst) if finite else inst.group.elements_up_to(min(L, 2))
    st = "Quadratic, braid and length-zero conjugation relations hold as operators on the regular module."

    def f1():
        r = relations.check_relations(H, window)
        rec.add("relations", st, not r["failures"], finite, {"relations": r["relations"], "window": r["window"]},
                witness=r["failures"][:3])

    rec.guard("relations", st, f1)
    els = _all_elements(inst) if finite else inst.group.elements_up_to(L)
    st2 = "T_w T*_(w^-1) = T*_(w^-1) T_w = q_w."

    def f2():
        r = relations.check_q_identity(H, els)
        rec.add("q_identity", st2, not r["failures"], finite, {"elements": r["elements"]}, witness=r["failures"][:3])

    rec.guard("q_identity", st2, f2)
    st3 = "Associativity on random basis triples; left and right product routines and native T* products agree."
    pool = inst.group.elements_up_to(min(L, 4))

    def f3():
        r = relations.check_associativity(H, pool, budget.samples, budget.seed)
        rec.add("associativity", st3, not r["failures"], False,
                {"samples": r["samples"], "pool": len(pool)}, witness=r["failures"][:3])

    rec.guard("associativity", st3, f3)
    return rec.checks


# -- ideal_props ---------------------------------------------------------------------------------
def run_ideal_props(inst, budget, modules=None):
    rec = Recorder(inst.name)
    H = inst.algebra
    G = H.group
    L = budget.length(6)
    els = G.elements_up_to(L)
    small = G.elements_up_to(min(L, 3))
    for M in orthogonal_levis(H):
        ctx = ideals.OrthogonalIdealContext(H, M)
        context = {"M": list(M)}
        kern = [x for x in small if ctx.in_N(x)]
        levi = [x for x in els if ctx.HM.group.contains(x)]

        def f_ideal():
            r = ideals.check_ideal_equalities(ctx, small, kern)
            rec.add("ideal_equality", STATEMENTS["ideal_props"][0], r["ok"], False,
                    {"pairs": r["checked"]}, witness=r["failures"], context=context)

        rec.guard("ideal_equality", STATEMENTS["ideal_props"][0], f_ideal, context)

        def f_levi():
            lat = [x for x in levi if ctx.in_N(x)][:6]
            r = ideals.check_levi_ideal(ctx, [x for x in levi if G.length(x) <= 3], lat)
            rec.add("levi_ideal", "The same description holds for the ideal of H_M.", r["ok"], False,
                    witness=r["failures"], context=context)

        rec.guard("levi_ideal", "The same description holds for the ideal of H_M.", f_levi, context)

        def f_keys():
            r = ideals.check_keys_agree(ctx, levi)
            rec.add("coset_keys", "Two independent coset reductions give the same partition of W_M(1).",
                    r["ok"], False, {"classes": r["classes"]}, context=context)

        rec.guard("coset_keys", "coset keys", f_keys, context)

        def f_ext():
            r = ideals.check_extension_maps(ctx, els, levi)
            rec.add("extension_maps", STATEMENTS["ideal_props"][1], r["ok"], False,
                    {"checked": r["checked"], "negative_elements": r["negative_elements"]},
                    witness=r["failures"], context=context)

        rec.guard("extension_maps", STATEMENTS["ideal_props"][1], f_ext, context)

        def f_hom():
            r = ideals.check_e_star_homomorphism(ctx, ideals.levi_generators(ctx))
            rec.add("e_star_homomorphism", STATEMENTS["ideal_props"][2], r["ok"], True,
                    {"pairs": r["pairs"]}, witness=r["failures"], context=context)

        rec.guard("e_star_homomorphism", STATEMENTS["ideal_props"][2], f_hom, context)

        def f_T():
            r = ideals.check_extension_T(ctx, els)
            rec.add("extension_T", STATEMENTS["ideal_props"][3], r["ok"], False,
                    {"checked": r["checked"]}, witness=r["failures"], context=context)

        rec.guard("extension_T", STATEMENTS["ideal_props"][3], f_T, context)
    return rec.checks


# -- parabolic suites ----------------------------------------------------------------------------
def _triples(inst, modules):
    for spec in module_specs(inst, modules):
        V = build_module(inst.algebra, spec)
        yield spec, cmp.ParabolicTriple(V)


def _ok(d):
    return all(v for k, v in d.items() if isinstance(v, bool))


def run_extension_e_star(inst, budget, modules=None):
    rec = Recorder(inst.name)
    H = inst.algebra
    for M in orthogonal_levis(H):
        st = STATEMENTS["extension_e_star"][2]

        def f_triv(M=M):
            r = cmp.check_trivial_extension(H, M)
            rec.add("trivial_extension", st, _ok(r), True, r, context={"M": list(M)})

        rec.guard("trivial_extension", st, f_triv, {"M": list(M)})
    for spec, T in _triples(inst, modules):
        ctx = {"module": spec, "P(V)": list(T.PV)}
        for Q in cmp.intermediate_subsets(T.M, T.top):
            c = dict(ctx, Q=list(Q))
            st = STATEMENTS["extension_e_star"][0]

            def f_ext(Q=Q, c=c):
                HQ = H.levi(Q)
                ok, wit = is_extensible(T.V, HQ)
                expected = set(Q) <= set(T.PV)
                if not ok:
                    rec.add("extensible", st, ok == expected, True, {"extensible": False, "generator": wit},
                            context=c)
                    return
                a = extend(T.V, HQ, "T")
                b = extend(T.V, HQ, "T*")
                same = all(linalg.mat_eq(x, y) for (_, x), (_, y) in
                           zip(a.generator_matrices(), b.generator_matrices()))
                good = same and not a.certificate() and expected
                rec.add("extensible", st, good, True,
                        {"extensible": True, "routes_agree": same, "certificate": not a.certificate()},
                        context=c)

            rec.guard("extensible", st, f_ext, c)
        for Q in T.parabolics():
            c = dict(ctx, Q=list(Q))
            st = STATEMENTS["extension_e_star"][1]

            def f_tw(Q=Q, c=c):
                r = cmp.check_twist_extension(T, Q)
                rec.add("twist_extension", st, r["equal"], True, r, context=c)

            rec.guard("twist_extension", st, f_tw, c)
    return rec.checks


def run_tensor_module(inst, budget, modules=None):
    rec = Recorder(inst.name)
    L = budget.length(3)
    for spec, T in _triples(inst, modules):
        top = T.PV
        E = T.e(top)
        els = E.alg.group.elements_up_to(L)
        for Q in T.parabolics():
            c = {"module": spec, "Q": list(Q), "L": list(top)}
            for label, build in (("X", lambda Q=Q: T.X(Q, top)), ("St", lambda Q=Q: T.steinberg(Q, top))):
                st = STATEMENTS["tensor_module"][0 if label == "X" else 1]

                def f(build=build, label=label, c=c):
                    r = cmp.check_tensor_split(E, build(), T.M, els)
                    rec.add(f"tensor_{label}_certificate", st, r["certificate"], True,
                            {"rank": E.rank * build().rank}, context=c)
                    rec.add(f"tensor_{label}_split", STATEMENTS["tensor_module"][2],
                            r["T_split"] and r["Tstar_split"], False,
                            {"checked": r["checked"]}, witness=r["witness"], context=c)

                rec.guard(f"tensor_{label}", st, f, c)
    return rec.checks


def run_steinberg(inst, budget, modules=None):
    rec = Recorder(inst.name)
    H = inst.algebra
    T = cmp.ParabolicTriple(trivial_module(H.levi(())))
    top = T.top
    for Q in cmp.intermediate_subsets((), top):
        c = {"Q": list(Q)}
        st = STATEMENTS["steinberg"][0]

        def f(Q=Q, c=c):
            r = cmp.steinberg_integrality(T, Q, top, [1, 2, 3, 4])
            torsion = [s for s in r["specializations"] if s["torsion"] or s["free_rank"] != r["rank_St"]]
            rec.add("steinberg_free", st, r["generic_free"] and not torsion, True, r,
                    witness=torsion or {"generic_free": r["generic_free"]}, context=c)

        rec.guard("steinberg_free", st, f, c)
    return rec.checks


def run_induction_coinduction(inst, budget, modules=None):
    rec = Recorder(inst.name)
    S = STATEMENTS["induction_coinduction"]
    for spec, T in _triples(inst, modules):
        base = {"module": spec, "P(V)": list(T.PV)}
        for Q in T.parabolics():
            c = dict(base, Q=list(Q))

            def f_kappa(Q=Q, c=c):
                r = cmp.check_kappa(T, Q)
                rec.add("kappa", S[0], _ok(r), True, r, context=c)

            rec.guard("kappa", S[0], f_kappa, c)

            def f_cmp(Q=Q, c=c):
                r = cmp.check_comparison(T, Q)
                rec.add("I_H_two_routes", S[2], _ok(r), True, r, context=c)

            rec.guard("I_H_two_routes", S[2], f_cmp, c)
            if T.PV == T.top:
                def f_st(Q=Q, c=c):
                    r = cmp.check_cokernel_vs_steinberg(T, Q)
                    rec.add("cokernel_steinberg", S[3], _ok(r), True, r, context=c)

                rec.guard("cokernel_steinberg", S[3], f_st, c)
        for Q, Q2 in T.pairs():
            c = dict(base, Q=list(Q), Q2=list(Q2))

            def f_sq(Q=Q, Q2=Q2, c=c):
                r = cmp.check_kappa_square(T, Q, Q2)
                rec.add("kappa_square", S[1], r["commutes"], True, r, context=c)

            rec.guard("kappa_square", S[1], f_sq, c)
    return rec.checks


def run_prop_comp(inst, budget, modules=None):
    rec = Recorder(inst.name)
    S = STATEMENTS["prop_comp"]
    H = inst.algebra
    for spec, T in _triples(inst, modules):
        base = {"module": spec, "P(V)": list(T.PV)}
        for Q in T.parabolics():
            c = dict(base, Q=list(Q))

            def f_mu(Q=Q, c=c):
                r = cmp.check_mu(T, Q)
                rec.add("mu", S[0], _ok(r), True, r, context=c)

            rec.guard("mu", S[0], f_mu, c)
        for Q, Q2 in T.pairs():
            c = dict(base, Q=list(Q), Q2=list(Q2))

            def f_j(Q=Q, Q2=Q2, c=c):
                r = cmp.check_i_formula(T, Q, Q2)
                rec.add("i_formula", S[1], r["matrix_equal"], True, r, context=c)

            rec.guard("i_formula", S[1], f_j, c)

            def f_sq(Q=Q, Q2=Q2, c=c):
                r = cmp.check_square(T, Q, Q2)
                rec.add("comparison_square", S[2], r["commutes"], True, r, context=c)

            rec.guard("comparison_square", S[2], f_sq, c)

            def f_red(Q=Q, Q2=Q2, c=c):
                r = cong.verify_final_reduction(H, T.M, Q, Q2)
                rec.add("coset_sum_congruence", S[3], r["ok"], True, r, context=c)

            rec.guard("coset_sum_congruence", S[3], f_red, c)
    return rec.checks


def run_IH_CIH_iso(inst, budget, modules=None):
    rec = Recorder(inst.name)
    S = STATEMENTS["IH_CIH_iso"]
    for spec, T in _triples(inst, modules):
        base = {"module": spec, "P(V)": list(T.PV)}
        for Q in T.parabolics():
            c = dict(base, Q=list(Q), twisted_Q=list(T.twisted_parabolic(Q)))

            def f(Q=Q, c=c):
                r = cmp.check_coinduced_iso(T, Q)
                ok = all(v for k, v in r.items() if k != "readings_agree")
                r["reading"] = "wQ"
                rec.add("coinduced_iso", S[0], ok, True, r, context=c)

            rec.guard("coinduced_iso", S[0], f, c)
    return rec.checks


# -- supersingular -----------------------------------------------------------------------------
def run_supersingular(inst, budget, modules=None):
    rec = Recorder(inst.name)
    S = STATEMENTS["supersingular"]
    for p in budget.primes:
        ctx = {"p": p}
        try:
            H = ss.char_p_algebra(inst, p)
        except ValueError as exc:
            for k, name in enumerate(("characters", "supersingular_count", "adjoints_vanish")):
                rec.inconclusive(name, S[k], str(exc), ctx)
            continue
        for chi in ss.torus_characters(H.group.torus, H.ring):
            c = dict(ctx, chi_k=[int(x.v) for x in chi])
            rows = ss.enumerate_characters(H, chi)
            # characters live on the affine subalgebra: relations with length-zero
            # elements only matter when they are all trivial
            bad = [(J, [x for x in f if not x.startswith("omega")]) for J, _, f, _ in rows]
            bad = [b for b in bad if b[1]]
            rec.add("characters", S[0], not bad, True,
                    {"subsets": len(rows), "extend_to_full_algebra": sum(1 for r in rows if r[1] is not None)},
                    witness=bad[:2], context=c)
            n_ss = sum(1 for *_, s in rows if s)
            trivial = all(x == H.ring.one for x in chi)
            if trivial:
                exp = ss.expected_supersingular_count(H.W)
                rec.add("supersingular_count", S[1], n_ss == exp, True,
                        {"count": n_ss, "expected": exp}, context=c)
            fails = []
            checked = 0
            for J, V, _, s in rows:
                if not s or V is None:
                    continue
                for M in ss.proper_levis(H.W):
                    r = ss.adjoint_ranks(V, M)
                    checked += 1
                    if r["left"] or r["right"]:
                        fails.append({"J": list(J), "M": list(M), "ranks": [r["left"], r["right"]]})
            if checked:
                rec.add("adjoints_vanish", S[2], not fails, True, {"pairs": checked}, witness=fails[:3], context=c)
        _spin(rec, H, budget, ctx)
    return rec.checks


def _spin(rec, H, budget, ctx):
    st = STATEMENTS["supersingular"][3]
    HZ = H.levi(())
    units = [x for x in H.ring.elements() if x != 0]
    for vals in product(units, repeat=len(HZ.W.omega_generators)):
        V = character(HZ, [], omega=list(vals))
        T = cmp.ParabolicTriple(V)
        if T.PV != T.top:
            continue
        for Q in T.parabolics():
            c = dict(ctx, omega=[int(v.v) for v in vals], Q=list(Q))
            try:
                I = T.I_H(Q)
            except BudgetError as exc:
                rec.inconclusive("spin_simplicity", st, f"budget: {exc}", c)
                continue
            r = ss.spin_simplicity(I, cap=budget.spin_cap, rng=random.Random(budget.seed))
            if r["verdict"] == "inconclusive":
                rec.inconclusive("spin_simplicity", st, "above the exhaustive cap", c)
            else:
                rec.add("spin_simplicity", st, r["verdict"] == "simple", r.get("exhaustive", False),
                        {"rank": I.rank}, witness=r, context=c)


# -- congruence ----------------------------------------------------------------------------------
def run_congruence(inst, budget, modules=None):
    rec = Recorder(inst.name)
    S = STATEMENTS["congruence"]
    if inst.kind == "finite":
        H = cong.generic_ring(inst)
        r = cong.verify_sum_identity(H)
        rec.add("sum_identity", S[1], r["ok"], True, r["per_s"])
        for J in cong.subsets(H.subset):
            c = {"J": [H.fw.rd.names[i] for i in J]}
            checks = (
                ("ideal_basis", S[0], lambda J=J: cong.verify_basis(H, J)),
                ("generic_congruence", S[2], lambda J=J: _public(cong.verify_generic_congruence(H, J))),
                ("coset_congruences", S[2], lambda J=J: cong.verify_coset_congruences(H, J)),
                ("step_identities", S[3], lambda J=J: cong.verify_step1_identities(H, J)),
                ("specializations", S[4],
                 lambda J=J: cong.verify_specializations(H, J, budget.specializations)),
            )
            for name, st, fn in checks:
                def f(name=name, st=st, fn=fn, c=c):
                    r = fn()
                    rec.add(name, st, r["ok"], True, r, context=c)

                rec.guard(name, st, f, c)
        return rec.checks
    H = inst.algebra
    for M in orthogonal_levis(H):
        rest = [i for i in H.W.subset if i not in M]
        for Q in cong.subsets(rest):
            for Q2 in cong.subsets(rest):
                if not set(Q) <= set(Q2):
                    continue
                QQ, QQ2 = tuple(sorted(M + Q)), tuple(sorted(M + Q2))
                c = {"M": list(M), "Q": list(QQ), "Q2": list(QQ2)}

                def f(QQ=QQ, QQ2=QQ2, c=c, M=M):
                    r = cong.verify_final_reduction(H, M, QQ, QQ2)
                    rec.add("final_reduction", S[5], r["ok"], True, r, context=c)

                rec.guard("final_reduction", S[5], f, c)
    return rec.checks


def _public(d):
    return {k: v for k, v in d.items() if not k.startswith("_")}


# -- registry --------------------------------------------------------------------------------------
STATEMENTS = {
    "braid_quadratic": [
        "The generators satisfy the quadratic relations T_s^2 = q_s T_{s^2} + c_s T_s and the braid relations.",
        "T_w T*_(w^-1) = q_w for every w.",
        "Multiplication is associative.",
    ],
    "ideal_props": [
        "For an orthogonal Levi M, the left ideal and the right ideal generated by the T*_n - 1 "
        "(n in the kernel of the projection to M) coincide with their span.",
        "The maps from the negative part of H_M to H_M/J_M and to H/J are onto, and the induced map "
        "H_M/J_M -> H/J is injective.",
        "The resulting bijection e*: H_M/J_M -> H/J is multiplicative.",
        "T_w + J = e*(q_{M2}(w) T^M_{w_M} + J_M) for every w.",
    ],
    "extension_e_star": [
        "A module of H_M extends to H_Q exactly when Q lies in P(V); the T and T* descriptions of the "
        "extension agree.",
        "Extending the twisted module equals twisting the extension.",
        "X_P is the extension of the induced module of the complementary Levi.",
    ],
    "tensor_module": [
        "e(V) (x) X_Q with the diagonal T* action is a module.",
        "e(V) (x) St_Q with the diagonal T* action is a module.",
        "T_w and T*_w act on the tensor product through the orthogonal factorisation of w.",
    ],
    "steinberg": [
        "The Steinberg quotient of X_Q is free over the coefficient ring; no torsion appears "
        "after specialising q to integers.",
    ],
    "induction_coinduction": [
        "Ind_Q^{P(V)}(e_Q V) is isomorphic to e(V) (x) X_Q.",
        "These isomorphisms commute with the inclusions for Q < Q'.",
        "The induced cokernel and Ind_{P(V)}(e(V) (x) St_Q) agree.",
        "When P(V) = G the cokernel of the inclusions is e(V) (x) St_Q.",
    ],
    "prop_comp": [
        "Induction from the twisted parabolic is isomorphic to coinduction.",
        "Explicit formula for the image of the coinduction embedding.",
        "The isomorphisms commute with the inclusions of induced and coinduced modules.",
        "Coset sums of T and of q-weighted T* agree modulo the trivialising ideal.",
    ],
    "IH_CIH_iso": [
        "The coinduced cokernel of (P, V, Q) is isomorphic to I_H of the twisted triple.",
    ],
    "supersingular": [
        "Characters given by a subset J of the admissible reflections are modules in characteristic p.",
        "Per irreducible component X the number of supersingular characters is 2^|X| - 2 for the "
        "trivial torus character.",
        "Both adjoints of parabolic induction kill supersingular characters for proper Levis.",
        "I_H(B, V, Q) is simple.",
    ],
    "congruence": [
        "The ideal generated by T*_w - 1 (w in W_J) has the basis (T*_{w1} - 1) T*_{w2} and a free "
        "complement spanned by the T*_{w2}.",
        "sum_w T_w = sum_w T_w T*_s for every simple s.",
        "sum_d T_d and sum_d q_{w_J d w} T*_d are congruent modulo that ideal.",
        "Auxiliary identities on the longest elements used to reduce the congruence.",
        "Certificates remain valid after specialising the parameters to integers.",
        "The congruence inside a pro-p algebra follows from the generic one.",
    ],
}

SUITES = {s.id: s for s in [
    Suite("braid_quadratic", "Defining relations", STATEMENTS["braid_quadratic"],
          ["finite_A1", "finite_A2", "finite_B2", "finite_A1xA1", "finite_A3",
           "affine_A1_GL2", "affine_A1xA1", "affine_A2_GL3"], run_braid_quadratic),
    Suite("ideal_props", "Ideals of an orthogonal Levi decomposition", STATEMENTS["ideal_props"],
          ["affine_A1xA1", "affine_A2_GL3", "affine_A1_SL2", "affine_A1_GL2_zk", "finite_A1xA1"],
          run_ideal_props),
    Suite("extension_e_star", "Extension of modules", STATEMENTS["extension_e_star"],
          ["affine_A1xA1", "affine_A2_GL3"], run_extension_e_star),
    Suite("tensor_module", "Tensor products with X_Q and St_Q", STATEMENTS["tensor_module"],
          ["affine_A1xA1", "affine_A2_GL3"], run_tensor_module),
    Suite("steinberg", "Integrality of Steinberg quotients", STATEMENTS["steinberg"],
          ["affine_A1xA1", "affine_A2_GL3", "affine_A2_SL3", "affine_A1_SL2", "affine_A1_GL2_zk"], run_steinberg),
    Suite("induction_coinduction", "Induction and the Steinberg cokernel",
          STATEMENTS["induction_coinduction"], ["affine_A1xA1", "affine_A2_GL3"], run_induction_coinduction),
    Suite("prop_comp", "Comparison of induction and coinduction", STATEMENTS["prop_comp"],
          ["affine_A1xA1", "affine_A2_GL3"], run_prop_comp),
    Suite("IH_CIH_iso", "Induced versus coinduced classification modules", STATEMENTS["IH_CIH_iso"],
          ["affine_A1xA1", "affine_A2_GL3"], run_IH_CIH_iso),
    Suite("supersingular", "Supersingular characters in characteristic p", STATEMENTS["supersingular"],
          ["affine_A1_SL2", "affine_A1_GL2", "affine_A2_SL3", "affine_A1_SL2_zk"], run_supersingular),
    Suite("congruence", "Congruences in generic finite Hecke rings", STATEMENTS["congruence"],
          ["finite_A1", "finite_A2", "finite_B2", "finite_A1xA1", "finite_A3",
           "affine_A1xA1", "affine_A2_GL3"], run_congruence),
]}


def run_suite(suite_id, instance_refs=None, budget=None, modules=None):
    """Records for every instance of the suite, in a deterministic order."""
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}")
    suite = SUITES[suite_id]
    budget = budget or Budget()
    refs = list(instance_refs) if instance_refs else suite.instances
    out = []
    insts = []
    for ref in refs:
        inst = load_instance(ref)
        insts.append({"name": inst.name, "digest": inst.digest})
        out.extend(suite.runner(inst, budget, modules))
    return insts, out
