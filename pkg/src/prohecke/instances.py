"""Loading group instances from TOML files.

A file describes a finite Weyl group or an extended affine Weyl group plus
optional extension data::

    name = "affine_A1_GL2"
    kind = "affine"                    # or "finite"

    [coxeter]
    matrix = [[1, 3], [3, 1]]          # finite Weyl group, checked against the roots

    [affine]
    lattice_rank = 2
    pairing = [[1, -1]]                # simple roots as functionals on the lattice
    coroots = [[1, -1]]                # simple coroots as lattice vectors
    omega = "Z"                        # "Z", "trivial" or an explicit order list, checked

    [zk]
    cyclic_factors = [2, 2]
    action = { s1 = [[0, 1], [1, 0]] }           # per finite simple reflection
    cocycle = "split"                  # or a table { s0 = [1, 1], ... } of squares
    zprime = { s0 = [[1, 1]], s1 = [[1, 1]] }   # generators of Z'_{k,s}

    [parameters]
    variables = ["a"]                  # optional; default one q per parameter class
    q = { s0 = "2*a + 1", s1 = "2*a + 1" }
    c = { s0 = { "0,0" = "a", "1,1" = "a" } }     # c_s(t), default (q_s - 1) T_1
"""

from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .coxeter import RootDatum, WeylGroup
from .hecke import HeckeAlgebra
from .rings import PolynomialRing
from .weyl_ext import ExtendedGroup, TorusData

INSTANCE_DIR = Path(__file__).with_name("data")


class InstanceError(ValueError):
    """Malformed or inconsistent instance file."""


@dataclass
class Instance:
    name: str
    kind: str
    root_datum: RootDatum
    weyl: WeylGroup
    group: ExtendedGroup
    algebra: HeckeAlgebra
    description: str = ""
    digest: str = ""
    raw: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def variables(self):
        return list(self.algebra.ring.names)

    def specialized(self, ring, values):
        """The same group with the ring variables sent to ``values`` (a dict
        or a list in the order of :attr:`variables`) inside ``ring``."""
        alg = self.algebra
        src = alg.ring
        if isinstance(values, dict):
            values = [values[n] for n in src.names]
        vals = [ring(v) for v in values]
        q = {g.name: src.evaluate(alg.q_top[g.name], vals, ring) for g in self.weyl.gens}
        c = {g.name: {t: src.evaluate(v, vals, ring) for t, v in alg.c_top[g.name].items()}
             for g in self.weyl.gens}
        return HeckeAlgebra(self.group, ring=ring, q=q, c=c, zprime=_zprime(self.raw, self.group))


def instance_names():
    return sorted(p.stem for p in INSTANCE_DIR.glob("*.toml"))


def load_instance(ref):
    """Load a shipped instance by name or any TOML file by path."""
    path = Path(ref)
    if not path.suffix:
        path = INSTANCE_DIR / f"{ref}.toml"
    if not path.exists():
        raise InstanceError(f"unknown instance {ref!r}; shipped: {', '.join(instance_names())}")
    text = path.read_text()
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    inst = build_instance(raw)
    inst.digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return inst


def _int_matrix(m, what):
    try:
        return [[int(x) for x in row] for row in m]
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{what} must be an integer matrix") from exc


def _zprime(raw, group):
    out = {}
    for name, gens in raw.get("zk", {}).get("zprime", {}).items():
        out[name] = [group.torus.norm(tuple(int(x) for x in t)) for t in gens]
    return out


def _parse_torus_key(key):
    key = key.strip()
    if not key:
        return ()
    return tuple(int(x) for x in key.split(","))


def build_instance(raw):
    name = raw.get("name", "unnamed")
    kind = raw.get("kind", "affine")
    if kind not in ("finite", "affine"):
        raise InstanceError(f"kind must be 'finite' or 'affine', got {kind!r}")
    cox = raw.get("coxeter", {})
    if "matrix" not in cox:
        raise InstanceError("missing [coxeter] matrix")
    matrix = _int_matrix(cox["matrix"], "coxeter.matrix")
    names = cox.get("names")
    aff = raw.get("affine", {})
    if "pairing" in aff:
        roots = _int_matrix(aff["pairing"], "affine.pairing")
        if "coroots" not in aff:
            raise InstanceError("[affine] needs coroots next to pairing")
        coroots = _int_matrix(aff["coroots"], "affine.coroots")
        rank = int(aff.get("lattice_rank", len(roots[0]) if roots else len(coroots[0])))
        if any(len(r) != rank for r in roots + coroots):
            raise InstanceError("pairing/coroots do not match lattice_rank")
        rd = RootDatum(roots, coroots, names)
        if rd.coxeter_matrix != matrix:
            raise InstanceError(f"coxeter matrix {matrix} does not match roots ({rd.coxeter_matrix})")
    else:
        if kind == "affine":
            raise InstanceError("affine instances need [affine] pairing and coroots")
        rd = RootDatum.from_coxeter_matrix(matrix, names)
    W = WeylGroup(rd, kind=kind)
    omega = aff.get("omega")
    if kind == "affine" and omega is not None:
        orders = [W.omega_order(i) for i in range(len(W.omega_generators))]
        got = "trivial" if not orders else "Z" if orders == [None] else orders
        want = omega if isinstance(omega, str) else [None if o == 0 else int(o) for o in omega]
        if got != want:
            raise InstanceError(f"length-zero group is {got}, file says {omega}")
    zk = raw.get("zk", {})
    orders = [int(o) for o in zk.get("cyclic_factors", [])]
    action = {}
    for sname, m in zk.get("action", {}).items():
        if sname not in rd.names:
            raise InstanceError(f"zk.action: unknown simple reflection {sname}")
        action[rd.names.index(sname)] = _int_matrix(m, f"zk.action.{sname}")
    torus = TorusData(orders, action)
    squares = {}
    cocycle = zk.get("cocycle", "split")
    if cocycle != "split":
        if not isinstance(cocycle, dict):
            raise InstanceError("zk.cocycle must be 'split' or a table of squares")
        squares = {k: tuple(int(x) for x in v) for k, v in cocycle.items()}
    group = ExtendedGroup(W, torus, squares)
    c = None
    q = None
    params = raw.get("parameters", {})
    ring = None
    if params.get("variables"):
        ring = PolynomialRing([str(v) for v in params["variables"]])
    elif params.get("c"):
        from .hecke import parameter_classes
        cl = parameter_classes(group)
        ring = PolynomialRing(sorted(set(cl.values()), key=lambda n: (len(n), n)))
    try:
        if params.get("q"):
            q = {k: ring.parse(str(v)) for k, v in params["q"].items()}
        if params.get("c"):
            c = {}
            for gname, table in params["c"].items():
                c[gname] = {_parse_torus_key(k): ring.parse(str(v)) for k, v in table.items()}
    except ValueError as exc:
        raise InstanceError(f"parameters: {exc}") from exc
    alg = HeckeAlgebra(group, ring=ring, q=q, c=c, zprime=_zprime(raw, group))
    validate_parameters(alg)
    return Instance(name, kind, rd, W, group, alg, raw.get("description", ""), raw=raw)


def validate_parameters(alg):
    """c_s sums to q_s - 1 and is supported on Z'_{k,s}."""
    G = alg.group
    for g, gen in enumerate(alg.W.gens):
        total = sum(alg.gen_c[g].values(), alg.ring.zero)
        if total != alg.gen_q[g] - 1:
            raise InstanceError(f"c_{gen.name} does not sum to q - 1")
        if G.torus.k:
            sub = subgroup_closure(G.torus, alg.gen_zprime[g])
            for t in alg.gen_c[g]:
                if t not in sub:
                    raise InstanceError(f"c_{gen.name} is not supported on Z'_k for {gen.name}")
            # T_t c_s = T_{s(t)} c_s, needed for T_s (T_t T_s) = (T_s T_t) T_s
            w = gen.element[1]
            for t in G.torus.generators():
                st = G.act(w, t)
                left = {G.torus.add(t, u): v for u, v in alg.gen_c[g].items()}
                right = {G.torus.add(st, u): v for u, v in alg.gen_c[g].items()}
                if left != right:
                    raise InstanceError(f"c_{gen.name} is not compatible with the action on Zk")


def subgroup_closure(torus, gens):
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
    return out
