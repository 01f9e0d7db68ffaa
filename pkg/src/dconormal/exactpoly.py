"""Exact multivariate polynomials over Q and Groebner-basis machinery.

Coefficients are ``gmpy2.mpq``.  Internally the Buchberger engine packs each
monomial into one Python int whose integer order *is* the monomial order
(see :class:`_Packing`), so all hot loops run on ints and rationals only.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from . import _kernels as K

__all__ = [
    "ExactPolyError",
    "VariableMismatchError",
    "ResourceLimitError",
    "EmptyVarietyError",
    "Limits",
    "VariableSet",
    "MonomialOrder",
    "Polynomial",
    "Ideal",
    "normal_form",
    "s_polynomial",
    "buchberger",
    "eliminate",
    "saturate",
    "intersect",
    "radical_membership",
    "ideal_dimension",
    "jacobian",
    "determinant",
    "minors",
]


class ExactPolyError(Exception):
    """Base class for errors raised by the exact algebra layer."""


class VariableMismatchError(ExactPolyError, ValueError):
    pass


class ResourceLimitError(ExactPolyError, RuntimeError):
    """A Groebner computation exceeded the configured basis/degree caps."""


class EmptyVarietyError(ExactPolyError, ValueError):
    """The ideal is the unit ideal where a proper ideal was required."""


@dataclass(frozen=True)
class Limits:
    max_basis: int = 5000
    max_degree: int = 60

    @classmethod
    def from_env(cls) -> "Limits":
        return cls(
            max_basis=int(os.environ.get("CONORMAL_MAX_BASIS", cls.max_basis)),
            max_degree=int(os.environ.get("CONORMAL_MAX_DEGREE", cls.max_degree)),
        )


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def to_rational(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact coefficients")
    return mpq(x)


# ---------------------------------------------------------------------------
# variables and orders


@dataclass(frozen=True, eq=False)
class VariableSet:
    """Ordered, distinct variable names, optionally partitioned into blocks.

    Equality and hashing use the names only; blocks are descriptive.
    """

    names: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"invalid variable name {nm!r}")
        blocks = tuple(tuple(b) for b in self.blocks) or (names,)
        if tuple(itertools.chain.from_iterable(blocks)) != names:
            raise ValueError("blocks must partition the names in order")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VariableMismatchError(f"unknown variable {name!r}") from None

    def extend(self, names: Sequence[str]) -> "VariableSet":
        """Append a new block of variables."""
        return VariableSet(self.names + tuple(names), self.blocks + (tuple(names),))

    def without(self, names: Iterable[str]) -> "VariableSet":
        drop = set(names)
        blocks = tuple(
            tuple(n for n in b if n not in drop) for b in self.blocks
        )
        blocks = tuple(b for b in blocks if b)
        return VariableSet(tuple(n for n in self.names if n not in drop), blocks)

    def fresh(self, stem: str) -> str:
        """A variable name not present in this set."""
        if stem not in self:
            return stem
        for i in itertools.count(1):
            cand = f"{stem}{i}"
            if cand not in self:
                return cand


class MonomialOrder:
    """lex, grevlex, or a two-block elimination order.

    The elimination order compares the ``front`` variables by grevlex first
    and breaks ties by grevlex on the remaining variables.
    """

    __slots__ = ("kind", "front")

    def __init__(self, kind: str, front: Iterable[str] = ()):
        if kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.front = tuple(sorted(set(front))) if kind == "elim" else ()

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def elimination(cls, front: Iterable[str]):
        return cls("elim", front)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.front == other.front
        )

    def __hash__(self):
        return hash((self.kind, self.front))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder.elimination({list(self.front)})"
        return f"MonomialOrder.{self.kind}()"

    def fields(self, vs: VariableSet) -> list[list[int]]:
        """Key fields, most significant first; each field sums exponents."""
        n = len(vs)
        if self.kind == "lex":
            return [[i] for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_fields(list(range(n)))
        for nm in self.front:
            vs.index(nm)
        front = [i for i, nm in enumerate(vs.names) if nm in self.front]
        rest = [i for i, nm in enumerate(vs.names) if nm not in self.front]
        return _grevlex_fields(front) + _grevlex_fields(rest)


def _grevlex_fields(idx: list[int]) -> list[list[int]]:
    # grevlex == lex on the partial sums (e1+..+en, e1+..+e(n-1), ..., e1)
    return [idx[: len(idx) - j] for j in range(len(idx))]


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()

_BITS = 16
_FIELD = (1 << _BITS) - 1


class _Packing:
    """Packed-int monomial encoding for one (VariableSet, order) pair.

    bits [0, n*B): exponent fields with a guard bit each;
    bits [n*B, 2n*B): linear order-key fields, most significant first.
    """

    _cache: dict = {}

    def __init__(self, vs: VariableSet, order: MonomialOrder):
        n = len(vs)
        self.n = n
        self.vs = vs
        self.order = order
        eb = _BITS * n
        self.emask = (1 << eb) - 1
        self.guard = sum(1 << (_BITS * i + _BITS - 1) for i in range(n))
        fields = order.fields(vs)
        unit = [0] * n
        for j, fld in enumerate(fields):
            pos = eb + _BITS * (len(fields) - 1 - j)
            for i in fld:
                unit[i] += 1 << pos
        self.weights = [unit[i] + (1 << (_BITS * i)) for i in range(n)]

    @classmethod
    def get(cls, vs: VariableSet, order: MonomialOrder) -> "_Packing":
        key = (vs.names, order)
        pk = cls._cache.get(key)
        if pk is None:
            pk = cls._cache[key] = cls(vs, order)
        return pk

    def encode(self, exps: tuple[int, ...]) -> int:
        m = 0
        for e, w in zip(exps, self.weights):
            if e:
                m += e * w
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (_BITS * i)) & _FIELD for i in range(self.n))

    def lift(self, e: int) -> int:
        """Full packed monomial from its exponent part."""
        m = 0
        for w in self.weights:
            f = e & _FIELD
            if f:
                m += f * w
            e >>= _BITS
        return m

    def lcm(self, a: int, b: int) -> int:
        em = self.emask
        return self.lift(K.lcm_exponents(a & em, b & em, self.guard, _BITS - 1))

    def degree(self, m: int) -> int:
        # base-2^B digit sum; exact while the degree stays below 2^B - 1
        return (m & self.emask) % _FIELD

    def pack(self, f: "Polynomial") -> dict:
        return {self.encode(e): c for e, c in f.terms.items()}

    def unpack(self, p: dict) -> "Polynomial":
        return Polynomial({self.decode(m): c for m, c in p.items()}, self.vs)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to mpq."""

    __slots__ = ("terms", "vars", "_hash")

    def __init__(self, terms: Mapping[tuple, object], variables: VariableSet):
        n = len(variables)
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise VariableMismatchError(
                    f"exponent vector {e} does not match {n} variables"
                )
            c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean
        self.vars = variables
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vs: VariableSet) -> "Polynomial":
        return cls({}, vs)

    @classmethod
    def constant(cls, c, vs: VariableSet) -> "Polynomial":
        return cls({(0,) * len(vs): c}, vs)

    @classmethod
    def var(cls, name: str, vs: VariableSet) -> "Polynomial":
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls({tuple(e): 1}, vs)

    @classmethod
    def _raw(cls, terms: dict, vs: VariableSet) -> "Polynomial":
        self = object.__new__(cls)
        self.terms = terms
        self.vars = vs
        self._hash = None
        return self

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> mpq:
        return self.terms.get((0,) * len(self.vars), mpq(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.vars.names[i])
        return used

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise VariableMismatchError("polynomials live in different rings")
            return other
        return Polynomial.constant(other, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            if not c:
                return Polynomial.zero(self.vars)
            return Polynomial._raw({e: c * v for e, v in self.terms.items()}, self.vars)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(out, self.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == Polynomial.constant(other, self.vars)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars.names, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ------------------------------------------
    def diff(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Polynomial._raw(out, self.vars)

    def subs(self, mapping: Mapping[str, object], target: VariableSet | None = None) -> "Polynomial":
        """Substitute polynomials or numbers for variables.

        Variables not in ``mapping`` are kept and must exist in ``target``
        (default: this polynomial's ring).
        """
        target = target or self.vars
        images = []
        for nm in self.vars.names:
            if nm in mapping:
                v = mapping[nm]
                if not isinstance(v, Polynomial):
                    v = Polynomial.constant(v, target)
                elif v.vars != target:
                    raise VariableMismatchError("substitution image in wrong ring")
                images.append(v)
            else:
                images.append(Polynomial.var(nm, target))
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            t = Polynomial.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def change_ring(self, target: VariableSet) -> "Polynomial":
        """Re-express in ``target``, which must contain every used variable."""
        idx = []
        for i, nm in enumerate(self.vars.names):
            idx.append(target.index(nm) if nm in target else None)
        out = {}
        n = len(target)
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise VariableMismatchError(
                            f"variable {self.vars.names[i]!r} not in target ring"
                        )
                    ne[idx[i]] = k
            out[tuple(ne)] = c
        return Polynomial._raw(out, target)

    def evaluate(self, point: Mapping[str, object] | Sequence):
        """Exact value at a rational point (sequence or name -> value map)."""
        if isinstance(point, Mapping):
            vals = [to_rational(point[nm]) for nm in self.vars.names]
        else:
            vals = [to_rational(v) for v in point]
        total = mpq(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        total = 0j
        for e, c in self.terms.items():
            t = complex(float(c))
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            total += t
        return total

    # ordering-dependent views -------------------------------------------
    def leading_exponent(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        pk = _Packing.get(self.vars, order)
        return max(self.terms, key=pk.encode)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> mpq:
        return self.terms[self.leading_exponent(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[self.leading_exponent(order)]
        if lead < 0:
            g = -g
        return Polynomial._raw({e: mpq(v // g) for e, v in ints.items()}, self.vars)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, mpq]]:
        pk = _Packing.get(self.vars, order)
        return sorted(self.terms.items(), key=lambda t: pk.encode(t[0]), reverse=True)

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                nm if k == 1 else f"{nm}^{k}"
                for nm, k in zip(self.vars.names, e)
                if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_q(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Groebner engine on packed dicts


def _monic_packed(p: dict, lead: int) -> dict:
    c = p[lead]
    if c == 1:
        return p
    inv = 1 / c
    return {m: v * inv for m, v in p.items()}


def _gb_packed(polys: list[dict], pk: _Packing, limits: Limits) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by leading monomial)."""
    emask, guard = pk.emask, pk.guard

    def check_degree(p):
        cap = limits.max_degree
        for m in p:
            if (m & emask) % _FIELD > cap:
                raise ResourceLimitError(
                    f"Groebner basis element exceeds degree cap {cap}"
                )

    polys = [p for p in polys if p]
    if not polys:
        return []
    G: list[dict] = []
    lead: list[int] = []
    lead_e: list[int] = []
    active: list[int] = []
    pairs: list[tuple[int, int, int, int]] = []
    top = _BITS - 1

    def reducers():
        return [G[i] for i in active], [lead[i] for i in active]

    def update(h):
        old, new, act = K.gm_update(pairs, active, lead_e, h, guard, top)
        pairs[:] = old + [(g1, g2, le, pk.lift(le)) for g1, g2, le in new]
        active[:] = act

    def add(p):
        lm = max(p)
        p = _monic_packed(p, lm)
        if lm == 0:
            raise _UnitFound
        check_degree(p)
        G.append(p)
        lead.append(lm)
        lead_e.append(lm & emask)
        if len(G) > limits.max_basis:
            raise ResourceLimitError(
                f"Groebner basis exceeds size cap {limits.max_basis}"
            )
        update(len(G) - 1)

    try:
        for p in sorted(polys, key=max):
            basis, leads = reducers()
            r = K.reduce_full(p, basis, leads, emask, guard) if basis else p
            if r:
                add(r)
        while pairs:
            best = min(range(len(pairs)), key=lambda i: pairs[i][3])
            g1, g2, _, l = pairs.pop(best)
            s = K.spoly(G[g1], G[g2], lead[g1], lead[g2], l)
            if not s:
                continue
            basis, leads = reducers()
            r = K.reduce_full(s, basis, leads, emask, guard)
            if r:
                add(r)
    except _UnitFound:
        return [{0: mpq(1)}]

    # minimal then interreduced
    # update() keeps ``active`` minimal: no lead divides another
    minimal = sorted(active, key=lambda i: lead[i])
    out = []
    for i in minimal:
        others = [j for j in minimal if j != i]
        tail = {m: c for m, c in G[i].items() if m != lead[i]}
        red = K.reduce_full(tail, [G[j] for j in others], [lead[j] for j in others], emask, guard) if others else tail
        red[lead[i]] = mpq(1)
        out.append(red)
    return out


class _UnitFound(Exception):
    pass


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal given by generators in a fixed ring; caches Groebner bases."""

    __slots__ = ("generators", "vars", "_gb")

    def __init__(self, generators: Iterable[Polynomial], variables: VariableSet | None = None):
        gens = list(generators)
        if variables is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            variables = gens[0].vars
        seen = set()
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = Polynomial.constant(g, variables)
            if g.vars != variables:
                raise VariableMismatchError("generators live in different rings")
            if g and g not in seen:
                seen.add(g)
                clean.append(g)
        self.generators = tuple(clean)
        self.vars = variables
        self._gb = {}

    def __repr__(self):
        return f"Ideal([{', '.join(map(str, self.generators))}])"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.vars != self.vars:
                raise VariableMismatchError("ideals live in different rings")
            return Ideal(self.generators + other.generators, self.vars)
        return Ideal(self.generators + tuple(other), self.vars)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder = GREVLEX, limits: Limits | None = None) -> list[Polynomial]:
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb[order] = buchberger(self, order, limits)
        return gb

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, f: Polynomial) -> bool:
        if f.vars != self.vars:
            raise VariableMismatchError("polynomial not in the ideal's ring")
        if not f:
            return True
        gb = self.groebner()
        return normal_form(f, gb, GREVLEX).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other: "Ideal") -> bool:
        return self.groebner() == other.groebner()

    def change_ring(self, target: VariableSet) -> "Ideal":
        return Ideal([g.change_ring(target) for g in self.generators], target)

    def reduced(self) -> "Ideal":
        """The same ideal generated by its reduced grevlex basis."""
        return Ideal(self.groebner(), self.vars)

    def sorted_strings(self) -> list[str]:
        """Canonical generator strings (reduced basis, integer-cleared)."""
        return sorted(g.primitive().to_string() for g in self.groebner())


# ---------------------------------------------------------------------------
# operations


def _check_same_ring(*polys: Polynomial) -> VariableSet:
    vs = polys[0].vars
    for p in polys[1:]:
        if p.vars != vs:
            raise VariableMismatchError("inputs live in different rings")
    return vs


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``G`` under ``order``."""
    G = [g for g in G if g]
    if not G:
        return f
    vs = _check_same_ring(f, *G)
    pk = _Packing.get(vs, order)
    basis, leads = [], []
    for g in G:
        p = pk.pack(g)
        lm = max(p)
        basis.append(_monic_packed(p, lm))
        leads.append(lm)
    return pk.unpack(K.reduce_full(pk.pack(f), basis, leads, pk.emask, pk.guard))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    vs = _check_same_ring(f, g)
    pk = _Packing.get(vs, order)
    pf, pg = pk.pack(f), pk.pack(g)
    lf, lg = max(pf), max(pg)
    return pk.unpack(K.spoly(_monic_packed(pf, lf), _monic_packed(pg, lg), lf, lg, pk.lcm(lf, lg)))


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, limits: Limits | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of ``I``, monic, ascending by leading monomial.

    Uses the Gebauer-Moeller criteria and the normal selection strategy.
    The zero ideal has the empty basis.
    """
    limits = limits or Limits.from_env()
    pk = _Packing.get(I.vars, order)
    gb = _gb_packed([pk.pack(g) for g in I.generators], pk, limits)
    return [pk.unpack(p) for p in gb]


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """``I`` intersected with the subring of the remaining variables.

    The result lives in the ring ``I.vars.without(drop)``.
    """
    drop = [d for d in drop]
    for d in drop:
        if d not in I.vars:
            raise VariableMismatchError(f"cannot eliminate unknown variable {d!r}")
    if not drop:
        return I
    target = I.vars.without(drop)
    order = MonomialOrder.elimination(drop)
    dset = set(drop)
    keep = [g for g in I.groebner(order) if not (g.support() & dset)]
    return Ideal([g.change_ring(target) for g in keep], target)


def _extend(I: Ideal, stem: str) -> tuple[str, VariableSet, Ideal]:
    w = I.vars.fresh(stem)
    vs = I.vars.extend([w])
    return w, vs, I.change_ring(vs)


def _saturate_one(I: Ideal, h: Polynomial) -> Ideal:
    w, vs, Iw = _extend(I, "_w")
    rab = 1 - Polynomial.var(w, vs) * h.change_ring(vs)
    return eliminate(Iw + Ideal([rab], vs), [w])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.vars != J.vars:
        raise VariableMismatchError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.vars)
    t, vs, It = _extend(I, "_t")
    tp = Polynomial.var(t, vs)
    gens = [tp * g for g in It.generators]
    gens += [(1 - tp) * g.change_ring(vs) for g in J.generators]
    return eliminate(Ideal(gens, vs), [t])


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """``I : J^inf`` as the intersection of ``I : h^inf`` over generators of J."""
    if I.vars != J.vars:
        raise VariableMismatchError("ideals live in different rings")
    if J.is_zero():
        raise ValueError("cannot saturate by the zero ideal")
    if any(h.is_constant() for h in J.generators):
        return I
    if I.is_zero():
        return I
    result = None
    for h in J.generators:
        part = _saturate_one(I, h)
        result = part if result is None else intersect(result, part)
    return result.reduced()


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch test: ``f`` lies in the radical of ``I``."""
    if f.vars != I.vars:
        raise VariableMismatchError("polynomial not in the ideal's ring")
    if not f:
        return True
    if I.contains(f):
        return True
    w, vs, Iw = _extend(I, "_w")
    rab = 1 - Polynomial.var(w, vs) * f.change_ring(vs)
    return (Iw + Ideal([rab], vs)).is_unit()


def ideal_dimension(I: Ideal) -> int:
    """Krull dimension via maximal independent sets of the initial ideal."""
    n = len(I.vars)
    if I.is_zero():
        return n
    gb = I.groebner()
    if len(gb) == 1 and gb[0].is_constant():
        raise EmptyVarietyError("the unit ideal defines the empty variety")
    supports = []
    for g in gb:
        e = g.leading_exponent(GREVLEX)
        supports.append(frozenset(i for i, k in enumerate(e) if k))
    # smallest set of variables meeting every leading-monomial support
    for size in range(n + 1):
        for hit in itertools.combinations(range(n), size):
            hs = set(hit)
            if all(s & hs for s in supports):
                return n - size
    return 0


def jacobian(I: Ideal | Sequence[Polynomial], wrt: Sequence[str] | None = None) -> list[list[Polynomial]]:
    gens = list(I.generators if isinstance(I, Ideal) else I)
    if not gens:
        return []
    vs = gens[0].vars
    wrt = list(vs.names if wrt is None else wrt)
    return [[g.diff(v) for v in wrt] for g in gens]


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows with memoization on column subsets."""
    k = len(M)
    if k == 0:
        raise ValueError("empty matrix")
    vs = M[0][0].vars
    memo: dict = {}

    def det(row: int, cols: tuple[int, ...]) -> Polynomial:
        if row == k:
            return Polynomial.constant(1, vs)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = Polynomial.zero(vs)
        for pos, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            sub = det(row + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                term = entry * sub
                total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return det(0, tuple(range(k)))


def minors(M: Sequence[Sequence[Polynomial]], size: int) -> list[Polynomial]:
    """All size x size minors; row subsets outer, column subsets inner, both lexicographic."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if size < 1 or size > min(rows, cols):
        raise ValueError(f"minor size {size} out of range for {rows}x{cols} matrix")
    out = []
    for R in itertools.combinations(range(rows), size):
        for C in itertools.combinations(range(cols), size):
            out.append(determinant([[M[r][c] for c in C] for r in R]))
    return out
