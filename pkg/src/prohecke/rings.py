"""Coefficient rings for Hecke computations.

Three families are supported:

* ``ZZ``: Python ints.
* ``IntegersMod(n)``: residues, elements are :class:`ModInt`.
* ``PolynomialRing(names)``: integer polynomials in a fixed list of
  indeterminates, elements are :class:`Poly`.

Ring elements support ``+ - *`` with each other and with plain ints, so the
algebra code can stay generic.  Anything that needs ring knowledge (units,
exact division, rendering) goes through the ring object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce

_BITS = 16
_MASK = (1 << _BITS) - 1


class ModInt:
    __slots__ = ("v", "n")

    def __init__(self, v, n):
        self.v = v % n
        self.n = n

    def _lift(self, other):
        if isinstance(other, ModInt):
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.n)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.n)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.n)

    def __pow__(self, e):
        return ModInt(pow(self.v, e, self.n), self.n)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.n == 0

    def __hash__(self):
        return hash((self.v, self.n))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.n}"


class Poly:
    """Sparse integer polynomial; monomials are packed exponent vectors."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other.terms
        if isinstance(other, int):
            return {0: other} if other else {}
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for k, c in o.items():
            v = t.get(k, 0) - c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Poly(self.ring, t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly(self.ring, {})
            return Poly(self.ring, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return Poly(self.ring, {ka + kb: ca * cb})
        t = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                v = t.get(k, 0) + ca * cb
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly(self.ring, {0: 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return False
        return self.terms == o

    def __hash__(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return hash(self.terms[0])
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.ring.render(self)

    def constant(self):
        """The value if this polynomial is a constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None


class IntegerRing:
    name = "ZZ"
    characteristic = 0
    zero = 0
    one = 1
    is_field = False

    def __call__(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Poly):
            c = x.constant()
            if c is None:
                raise ValueError(f"cannot coerce {x} into ZZ")
            return c
        if isinstance(x, ModInt):
            raise ValueError("cannot coerce a residue into ZZ")
        return int(x)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if x not in (1, -1):
            raise ZeroDivisionError(f"{x} is not a unit in ZZ")
        return x

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def render(self, x):
        return str(x)

    def parse(self, s):
        return int(s)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")

    def __repr__(self):
        return "ZZ"


ZZ = IntegerRing()


class RationalField:
    """QQ via :class:`fractions.Fraction`; used for solving linear systems at
    integer specializations."""

    name = "QQ"
    characteristic = 0
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Poly):
            c = x.constant()
            if c is None:
                raise ValueError(f"cannot coerce {x} into QQ")
            return Fraction(c)
        if isinstance(x, ModInt):
            raise ValueError("cannot coerce a residue into QQ")
        return Fraction(x)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        return 1 / Fraction(x)

    def divexact(self, a, b):
        return Fraction(a) / Fraction(b)

    def render(self, x):
        return str(Fraction(x))

    def parse(self, s):
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class IntegersMod:
    def __init__(self, n):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        self.characteristic = n
        self.zero = ModInt(0, n)
        self.one = ModInt(1, n)
        self.is_field = _is_prime(n)
        self.name = f"GF({n})" if self.is_field else f"ZZ/{n}"

    def __call__(self, x):
        if isinstance(x, ModInt):
            if x.n != self.n:
                raise ValueError("modulus mismatch")
            return x
        if isinstance(x, Poly):
            c = x.constant()
            if c is None:
                raise ValueError(f"cannot coerce {x} into {self.name}")
            return ModInt(c, self.n)
        return ModInt(int(x), self.n)

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        from math import gcd
        return gcd(self(x).v, self.n) == 1

    def inverse(self, x):
        return ModInt(pow(self(x).v, -1, self.n), self.n)

    def divexact(self, a, b):
        return self(a) * self.inverse(b)

    def elements(self):
        return [ModInt(i, self.n) for i in range(self.n)]

    def render(self, x):
        return str(self(x).v)

    def parse(self, s):
        return ModInt(int(s), self.n)

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.n == self.n

    def __hash__(self):
        return hash(("mod", self.n))

    def __repr__(self):
        return self.name


def GF(p):
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return IntegersMod(p)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PolynomialRing:
    """ZZ[x_1, ..., x_k]; exponents are packed 16 bits per variable."""

    characteristic = 0
    is_field = False

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.zero = Poly(self, {})
        self.one = Poly(self, {0: 1})
        self.name = "ZZ[" + ",".join(self.names) + "]"

    def gen(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        return Poly(self, {1 << (_BITS * i): 1})

    def gens(self):
        return [self.gen(i) for i in range(len(self.names))]

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring is self or x.ring == self:
                return x if x.ring is self else Poly(self, dict(x.terms))
            raise ValueError("polynomial from a different ring")
        if isinstance(x, ModInt):
            raise ValueError("cannot coerce a residue into a polynomial ring")
        x = int(x)
        return Poly(self, {0: x} if x else {})

    def exponents(self, key):
        return tuple((key >> (_BITS * i)) & _MASK for i in range(len(self.names)))

    def monomial(self, exps, coeff=1):
        key = 0
        for i, e in enumerate(exps):
            key |= e << (_BITS * i)
        return Poly(self, {key: coeff} if coeff else {})

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        c = self(x).constant()
        return c in (1, -1)

    def inverse(self, x):
        c = self(x).constant()
        if c not in (1, -1):
            raise ZeroDivisionError(f"{x} is not a unit")
        return self(c)

    def divexact(self, a, b):
        """Exact quotient a/b; raises if b does not divide a."""
        a, b = self(a), self(b)
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        lb = max(b.terms)
        cb = b.terms[lb]
        eb = self.exponents(lb)
        r = dict(a.terms)
        q = {}
        while r:
            lr = max(r)
            cr = r[lr]
            er = self.exponents(lr)
            if any(x < y for x, y in zip(er, eb)) or cr % cb:
                raise ArithmeticError(f"{self.render(b)} does not divide {self.render(a)}")
            k = lr - lb
            c = cr // cb
            q[k] = c
            for kb, vb in b.terms.items():
                kk = kb + k
                v = r.get(kk, 0) - c * vb
                if v:
                    r[kk] = v
                else:
                    r.pop(kk, None)
        return Poly(self, q)

    def evaluate(self, x, values, target):
        """Substitute ``values`` (one per variable, already in ``target``)."""
        x = self(x)
        out = target.zero
        nv = len(self.names)
        for key, c in x.terms.items():
            term = target(c)
            for i in range(nv):
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    term = term * values[i] ** e
            out = out + term
        return target(out)

    def degree(self, x):
        x = self(x)
        if not x.terms:
            return -1
        return max(sum(self.exponents(k)) for k in x.terms)

    def render(self, x):
        x = self(x)
        if not x.terms:
            return "0"

        def mono(key):
            parts = []
            for name, e in zip(self.names, self.exponents(key)):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            return "*".join(parts)

        keys = sorted(x.terms, key=lambda k: (-sum(self.exponents(k)), [-e for e in self.exponents(k)]))
        out = []
        for k in keys:
            c = x.terms[k]
            m = mono(k)
            if not m:
                body = str(abs(c))
            elif abs(c) == 1:
                body = m
            else:
                body = f"{abs(c)}*{m}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def parse(self, s):
        return parse_polynomial(s, self)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.names == self.names

    def __hash__(self):
        return hash(("poly", self.names))

    def __repr__(self):
        return self.name


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(s):
    pos = 0
    out = []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def parse_polynomial(s, ring):
    """Parse ``+ - * ^ ( )`` expressions over integers and ring variables."""
    toks = _tokenize(s)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else (None, None)

    def take():
        t = peek()
        pos[0] += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() == ("op", "*"):
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError(f"bad exponent in {s!r}")
            return base ** e
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring(val)
        if kind == "name":
            if isinstance(ring, PolynomialRing) and val in ring.names:
                return ring.gen(val)
            raise ValueError(f"unknown symbol {val!r} in {s!r}")
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {s!r}")
            return v
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r} in {s!r}")

    value = expr()
    if pos[0] != len(toks):
        raise ValueError(f"trailing input in {s!r}")
    return ring(value)


def ring_from_name(name, names=("q",)):
    """``ZZ``, ``ZZ/n``, ``GF(p)`` or ``poly``."""
    name = name.strip()
    if name in ("ZZ", "Z", "integers"):
        return ZZ
    if name in ("QQ", "Q", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:GF|F)\(?(\d+)\)?", name)
    if m:
        return GF(int(m.group(1)))
    m = re.fullmatch(r"(?:ZZ|Z)/\(?(\d+)\)?", name)
    if m:
        return IntegersMod(int(m.group(1)))
    if name in ("poly", "generic"):
        return PolynomialRing(names)
    raise ValueError(f"unknown ring {name!r}")


def ring_sum(ring, items):
    return reduce(lambda a, b: a + b, items, ring.zero)
