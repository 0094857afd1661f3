"""
polynomial.py — exact sparse Laurent polynomials and unreduced rational functions

A LaurentPoly lives in a Context: the main context has variables
q, Q0, ..., Q{d-1}; the auxiliary context ("aux") has q and y.
Exponent keys are flat tuples (e_q, e_1, ..., e_n); coefficients are
Python ints. Zero coefficients are never stored, so structural equality
of the term dicts is polynomial equality.

RationalFn is never reduced by a GCD. RationalFn.from_factors only cancels
factors that agree up to a unit (sign, integer content, Laurent monomial).
"""

from __future__ import annotations

import operator
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from errors import ArityMismatchError, InvalidInputError, PoleError, ZeroDenominatorError

Key = tuple[int, ...]


@dataclass(frozen=True)
class Context:
    d: int
    tag: str = "main"

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidInputError(f"context arity must be >= 1 | d={self.d}")
        if self.tag not in ("main", "aux"):
            raise InvalidInputError(f"unknown context tag | Tag={self.tag}")

    @property
    def nvars(self) -> int:
        return 1 + self.d

    @property
    def names(self) -> tuple[str, ...]:
        if self.tag == "aux":
            return ("q", "y")
        return ("q",) + tuple(f"Q{s}" for s in range(self.d))

    @property
    def zero_key(self) -> Key:
        return (0,) * self.nvars


AUX = Context(1, "aux")


class MonomialKey(NamedTuple):
    e_q: int
    e_Q: tuple[int, ...]

    def flat(self) -> Key:
        return (self.e_q,) + tuple(self.e_Q)


@dataclass(frozen=True)
class ParamSpec:
    """Exact specialization q ↦ q_val, Q_s ↦ Q_vals[s] (y ↦ Q_vals[0] in the aux context)."""

    q_val: Fraction
    Q_vals: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        q_val = Fraction(self.q_val)
        Q_vals = tuple(Fraction(v) for v in self.Q_vals)
        if q_val == 0:
            raise InvalidInputError("q must be nonzero")
        for s, v in enumerate(Q_vals):
            if v == 0:
                raise InvalidInputError(f"Q{s} must be nonzero")
        object.__setattr__(self, "q_val", q_val)
        object.__setattr__(self, "Q_vals", Q_vals)

    @property
    def arity(self) -> int:
        return len(self.Q_vals)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return (self.q_val,) + self.Q_vals

    def to_dict(self) -> dict:
        return {"q": fraction_to_json(self.q_val), "Q": [fraction_to_json(v) for v in self.Q_vals]}


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Integers or p/q only; floats are rejected."""
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise InvalidInputError(f"not an exact rational | Value={text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise InvalidInputError(f"zero denominator | Value={text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def fraction_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


class LaurentPoly:
    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: Context, terms: Optional[Mapping[Key, int]] = None) -> None:
        clean: dict[Key, int] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != ctx.nvars:
                raise ArityMismatchError(f"exponent key has wrong length | Key={key} | Expected={ctx.nvars}")
            if c:
                clean[key] = int(c)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, ctx: Context, terms: dict[Key, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError(f"LaurentPoly is immutable | Attribute={name}")

    def __delattr__(self, name: str) -> None:
        raise AttributeError(f"LaurentPoly is immutable | Attribute={name}")

    def __reduce__(self):
        return (LaurentPoly, (self.ctx, self._terms))

    # ---- constructors ----
    @classmethod
    def zero(cls, ctx: Context) -> "LaurentPoly":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, c: int, ctx: Context) -> "LaurentPoly":
        return cls._raw(ctx, {ctx.zero_key: int(c)} if c else {})

    @classmethod
    def one(cls, ctx: Context) -> "LaurentPoly":
        return cls.constant(1, ctx)

    @classmethod
    def var(cls, index: int, ctx: Context, power: int = 1) -> "LaurentPoly":
        key = [0] * ctx.nvars
        key[index] = power
        return cls._raw(ctx, {tuple(key): 1})

    @classmethod
    def q(cls, ctx: Context, power: int = 1) -> "LaurentPoly":
        return cls.var(0, ctx, power)

    @classmethod
    def Q(cls, s: int, ctx: Context, power: int = 1) -> "LaurentPoly":
        if ctx.tag != "main" or not 0 <= s < ctx.d:
            raise ArityMismatchError(f"Q index out of range | s={s} | d={ctx.d}")
        return cls.var(1 + s, ctx, power)

    @classmethod
    def y(cls, power: int = 1) -> "LaurentPoly":
        return cls.var(1, AUX, power)

    # ---- structure ----
    @property
    def terms(self) -> Mapping[Key, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self) -> list[tuple[Key, int]]:
        return sorted(self._terms.items())

    def _check(self, other: "LaurentPoly") -> None:
        if self.ctx != other.ctx:
            raise ArityMismatchError(f"context mismatch | Left={self.ctx} | Right={other.ctx}")

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.ctx)
        return NotImplemented

    # ---- ring operations ----
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for key, c in other._terms.items():
            v = terms.get(key, 0) + c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return LaurentPoly._raw(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.ctx, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = (self, other) if len(self) >= len(other) else (other, self)
        terms: dict[Key, int] = {}
        add = operator.add
        for kb, cb in b._terms.items():
            for ka, ca in a._terms.items():
                key = tuple(map(add, ka, kb))
                terms[key] = terms.get(key, 0) + ca * cb
        return LaurentPoly._raw(self.ctx, {k: c for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise InvalidInputError("only monomials have negative powers in the Laurent ring")
            ((key, c),) = self._terms.items()
            if c not in (1, -1):
                raise InvalidInputError("monomial with non-unit coefficient is not invertible over the integers")
            return LaurentPoly._raw(self.ctx, {tuple(e * n for e in key): c ** (-n)})
        result = LaurentPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def times_monomial(self, key: Key, c: int = 1) -> "LaurentPoly":
        if len(key) != self.ctx.nvars:
            raise ArityMismatchError(f"exponent key has wrong length | Key={key}")
        add = operator.add
        return LaurentPoly._raw(self.ctx, {tuple(map(add, k, key)): v * c for k, v in self._terms.items() if v * c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.ctx)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self) -> int:
        # constants compare equal to ints, so they hash like them
        if self._hash is None:
            if not self._terms:
                h = hash(0)
            elif len(self._terms) == 1 and self.ctx.zero_key in self._terms:
                h = hash(self._terms[self.ctx.zero_key])
            else:
                h = hash((self.ctx, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # ---- unit splitting, used for structural cancellation ----
    def split_unit(self) -> tuple[int, Key, "LaurentPoly"]:
        """Return (c, m, p) with self = c · x^m · p, p primitive, min-exponent 0, leading coefficient > 0."""
        if self.is_zero():
            raise ZeroDenominatorError("cannot split the unit off the zero polynomial")
        keys = list(self._terms)
        shift = tuple(min(col) for col in zip(*keys))
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        lead = self._terms[max(keys)]
        c = g if lead > 0 else -g
        sub = operator.sub
        prim = {tuple(map(sub, k, shift)): v // c for k, v in self._terms.items()}
        return c, shift, LaurentPoly._raw(self.ctx, prim)

    # ---- substitutions ----
    def swap_Q(self, s: int, t: int) -> "LaurentPoly":
        if self.ctx.tag != "main" or not (0 <= s < self.ctx.d and 0 <= t < self.ctx.d):
            raise ArityMismatchError(f"Q index out of range | s={s} | t={t}")
        i, j = 1 + s, 1 + t
        terms = {}
        for key, c in self._terms.items():
            k = list(key)
            k[i], k[j] = k[j], k[i]
            terms[tuple(k)] = c
        return LaurentPoly._raw(self.ctx, terms)

    def evaluate(self, spec: ParamSpec) -> Fraction:
        values = spec.values
        if len(values) != self.ctx.nvars:
            raise ArityMismatchError(f"spec arity mismatch | Spec={spec.arity} | Context={self.ctx.d}")
        powers: dict[tuple[int, int], Fraction] = {}
        total = Fraction(0)
        for key, c in self._terms.items():
            term = Fraction(c)
            for idx, e in enumerate(key):
                if e:
                    p = powers.get((idx, e))
                    if p is None:
                        p = powers[(idx, e)] = values[idx] ** e
                    term *= p
            total += term
        return total

    # ---- rendering ----
    def to_json(self) -> list[dict]:
        return [{"coeff": c, "e_q": k[0], "e_Q": list(k[1:])} for k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], ctx: Context) -> "LaurentPoly":
        terms: dict[Key, int] = {}
        for item in data:
            key = (int(item["e_q"]),) + tuple(int(e) for e in item["e_Q"])
            terms[key] = terms.get(key, 0) + int(item["coeff"])
        return cls(ctx, terms)

    def _monomial_str(self, key: Key) -> str:
        parts = []
        for name, e in zip(self.ctx.names, key):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        items = sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1:]))
        for n, (key, c) in enumerate(items):
            mono = self._monomial_str(key)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            if n == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_sympy(self):
        import sympy

        syms = sympy.symbols(self.ctx.names)
        expr = sympy.Integer(0)
        for key, c in self._terms.items():
            term = sympy.Integer(c)
            for sym, e in zip(syms, key):
                term *= sym**e
            expr += term
        return expr


def monomial(c: int, key: Union[MonomialKey, Key], ctx: Context) -> LaurentPoly:
    flat = key.flat() if isinstance(key, MonomialKey) else tuple(key)
    if len(flat) != ctx.nvars:
        raise ArityMismatchError(f"monomial key has wrong arity | Key={flat} | Expected={ctx.nvars}")
    return LaurentPoly(ctx, {flat: c})


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def evaluate(p: LaurentPoly, spec: ParamSpec) -> Fraction:
    return p.evaluate(spec)


def q_integer(h: int, ctx: Context) -> LaurentPoly:
    """[h]_q = q^{h-1} + ... + q + 1 for h >= 1."""
    if h < 1:
        raise InvalidInputError(f"[h]_q needs h >= 1 | h={h}")
    return LaurentPoly._raw(ctx, {(k,) + (0,) * ctx.d: 1 for k in range(h)})


def binomial(c1: int, key1: Key, c2: int, key2: Key, ctx: Context) -> LaurentPoly:
    """c1·x^key1 + c2·x^key2, merged when the keys coincide."""
    return LaurentPoly(ctx, {tuple(key1): c1}) + LaurentPoly(ctx, {tuple(key2): c2})


def product(polys: Iterable[LaurentPoly], ctx: Context) -> LaurentPoly:
    """Balanced pairwise product; small factors meet first."""
    layer = sorted(polys, key=len)
    if not layer:
        return LaurentPoly.one(ctx)
    while len(layer) > 1:
        nxt = [layer[i] * layer[i + 1] for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = sorted(nxt, key=len)
    return layer[0]


@dataclass(frozen=True, eq=False)
class RationalFn:
    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self) -> None:
        if self.den.is_zero():
            raise ZeroDenominatorError("rational function with zero denominator")
        if self.num.ctx != self.den.ctx:
            raise ArityMismatchError("numerator and denominator live in different contexts")

    @property
    def ctx(self) -> Context:
        return self.num.ctx

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFn":
        return cls(p, LaurentPoly.one(p.ctx))

    @classmethod
    def from_factors(
        cls, num_factors: Iterable[LaurentPoly], den_factors: Iterable[LaurentPoly], ctx: Context
    ) -> "RationalFn":
        balance: Counter = Counter()
        c_num, c_den = 1, 1
        shift = [0] * ctx.nvars
        for f in num_factors:
            c, m, p = f.split_unit()
            c_num *= c
            shift = [a + b for a, b in zip(shift, m)]
            balance[p] += 1
        for f in den_factors:
            c, m, p = f.split_unit()
            c_den *= c
            shift = [a - b for a, b in zip(shift, m)]
            balance[p] -= 1
        if c_den < 0:
            c_num, c_den = -c_num, -c_den
        one = LaurentPoly.one(ctx)
        num = product((p for p, k in balance.items() if k > 0 and p != one for _ in range(k)), ctx)
        den = product((p for p, k in balance.items() if k < 0 and p != one for _ in range(-k)), ctx)
        return cls(num.times_monomial(tuple(shift), c_num), den * c_den)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def equals(self, other: "RationalFn") -> bool:
        return self.num * other.den == other.num * self.den

    def evaluate(self, spec: ParamSpec) -> Fraction:
        den = self.den.evaluate(spec)
        if den == 0:
            raise PoleError()
        return self.num.evaluate(spec) / den

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def rf_mul(a: RationalFn, b: RationalFn) -> RationalFn:
    return a * b


def rf_equal(a: RationalFn, b: RationalFn) -> bool:
    return a.equals(b)


def rf_evaluate(f: RationalFn, spec: ParamSpec) -> Fraction:
    return f.evaluate(spec)
