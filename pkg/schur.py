"""
schur.py — Schur elements of the Ariki-Koike algebra H(d, r)

Three independent constructions of s_λ(q; Q_0, ..., Q_{d-1}):

- schur_factored / expand_factored: the cancellation-free product of
  generalized-hook binomials, expanded without any division.
- schur_mathas: the product of hook q-integers and the X_st quotients.
- schur_gim: the symbol (beta-number) formula, its free power taken in q.

The two quotient formulas come back as unreduced RationalFn values.
vanishing_report / semisimple_at evaluate the factored form at exact
rational parameters, grouping each diagonal factor with one (q-1)^{-1}
so that q = 1 is well defined.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional

from combinatorics import (
    MultiPartition,
    Partition,
    bar_partition,
    enumerate_multipartitions,
    generalized_hook,
    hook_lengths,
    n_value,
    nodes,
    specht_dimension,
    symbol,
)
from errors import AkSchurError, IndexOrderError, OutOfRangeError
from observability import track_operation
from polynomial import (
    AUX,
    Context,
    Key,
    LaurentPoly,
    ParamSpec,
    RationalFn,
    binomial,
    fraction_to_json,
    product,
    q_integer,
    rf_equal,
)

logger = logging.getLogger("akschur")


class Factor(NamedTuple):
    h: int
    s: int
    t: int


@dataclass(frozen=True)
class SchurFactored:
    d: int
    sign: int
    q_exp: int
    qm1_exp: int
    factors: tuple[Factor, ...]

    @property
    def r(self) -> int:
        return -self.qm1_exp


@dataclass(frozen=True)
class VanishingReport:
    value: Fraction
    vanishing_factors: tuple[Factor, ...]
    irreducible_flag: bool

    def to_dict(self) -> dict:
        return {
            "value": "zero" if self.value == 0 else fraction_to_json(self.value),
            "vanishing_factors": [f._asdict() for f in self.vanishing_factors],
            "irreducible": self.irreducible_flag,
        }


@dataclass(frozen=True)
class SemisimplicityResult:
    semisimple: bool
    witness: Optional[MultiPartition]
    reports: tuple[tuple[MultiPartition, VanishingReport], ...]


# ======================
# Monomial helpers
# ======================
def _key(ctx: Context, e_q: int = 0, Q: Optional[dict[int, int]] = None) -> Key:
    key = [0] * ctx.nvars
    key[0] = e_q
    for s, e in (Q or {}).items():
        key[1 + s] += e
    return tuple(key)


def _mono(ctx: Context, c: int = 1, e_q: int = 0, Q: Optional[dict[int, int]] = None) -> LaurentPoly:
    return LaurentPoly(ctx, {_key(ctx, e_q, Q): c})


def _qQ_minus_qQ(ctx: Context, a: int, s: int, b: int, t: int) -> LaurentPoly:
    """q^a·Q_s − q^b·Q_t."""
    return binomial(1, _key(ctx, a, {s: 1}), -1, _key(ctx, b, {t: 1}), ctx)


def _cross_factor(ctx: Context, h: int, s: int, t: int) -> LaurentPoly:
    """q^h·Q_s·Q_t^{-1} − 1."""
    return binomial(1, _key(ctx, h, {s: 1, t: -1}), -1, ctx.zero_key, ctx)


def _check_pair(lam: MultiPartition, s: int, t: int) -> None:
    if not (0 <= s < t <= lam.d - 1):
        raise IndexOrderError(s, t, lam.d)


# ======================
# Integer identities
# ======================
def alpha_conj(lam: MultiPartition) -> int:
    return sum((c - 1) * c for comp in lam for c in comp.conjugate.parts) // 2


def _conjugate_overlap(a: Partition, b: Partition) -> int:
    """Σ_i a'_i · b'_i."""
    return sum(x * y for x, y in zip(a.conjugate.parts, b.conjugate.parts))


def lemma_nbar_check(lam: MultiPartition) -> bool:
    cross = sum(_conjugate_overlap(lam[s], lam[t]) for s in range(lam.d) for t in range(s + 1, lam.d))
    return alpha_conj(lam) + cross == n_value(bar_partition(lam))


def lemma_conj_cont_check(lam: Partition, k: int) -> bool:
    """Rim-content identity between λ and λ', checked in Z[q^±1, y^±1]."""
    if lam.length == 0 or not 1 <= k <= lam.first:
        raise OutOfRangeError(f"need a nonempty partition and 1 <= k <= λ_1 | Shape={lam.parts} | k={k}")
    conj = lam.conjugate

    def qy_minus_1(a: int) -> LaurentPoly:
        return binomial(1, (a, 1), -1, (0, 0), AUX)

    lhs_num, lhs_den = [], [qy_minus_1(lam.first)]
    for i in range(1, conj[k] + 1):
        lhs_num.append(qy_minus_1(lam[i] - i + 1))
        lhs_den.append(qy_minus_1(lam[i] - i))

    rhs_num, rhs_den = [], [qy_minus_1(-conj[k] + k - 1)]
    for j in range(k, lam.first + 1):
        rhs_num.append(qy_minus_1(-conj[j] + j - 1))
        rhs_den.append(qy_minus_1(-conj[j] + j))

    lhs = RationalFn.from_factors(lhs_num, lhs_den, AUX)
    rhs = RationalFn.from_factors(rhs_num, rhs_den, AUX)
    return rf_equal(lhs, rhs)


# ======================
# Cancellation-free form
# ======================
def schur_factored(lam: MultiPartition) -> SchurFactored:
    r, d = lam.size, lam.d
    factors = sorted(
        (
            Factor(generalized_hook(lam[s], lam[t], x), s, t)
            for s in range(d)
            for x in nodes(lam[s])
            for t in range(d)
        ),
        key=lambda f: (f.s, f.t, f.h),
    )
    return SchurFactored(
        d=d,
        sign=-1 if (r * (d - 1)) % 2 else 1,
        q_exp=-n_value(bar_partition(lam)),
        qm1_exp=-r,
        factors=tuple(factors),
    )


def factored_invariant_violations(sf: SchurFactored, lam: MultiPartition) -> list[str]:
    r = lam.size
    problems = []
    if len(sf.factors) != r * sf.d:
        problems.append(f"factor count {len(sf.factors)} != r*d = {r * sf.d}")
    diagonal = [f for f in sf.factors if f.s == f.t]
    if len(diagonal) != r:
        problems.append(f"{len(diagonal)} diagonal factors, expected {r}")
    if any(f.h < 1 for f in diagonal):
        problems.append("diagonal factor with non-positive hook")
    if any(not -r < f.h < r for f in sf.factors if f.s != f.t):
        problems.append("cross factor hook outside (-r, r)")
    if sf.q_exp != -n_value(bar_partition(lam)):
        problems.append("q exponent differs from -n(bar λ)")
    if sf.qm1_exp != -r:
        problems.append("(q-1) exponent differs from -r")
    return problems


@track_operation("expand_factored")
def expand_factored(sf: SchurFactored) -> LaurentPoly:
    ctx = Context(sf.d)
    diagonal = [f for f in sf.factors if f.s == f.t]
    if len(diagonal) != -sf.qm1_exp:
        raise AkSchurError(f"cannot pair (q-1)^{sf.qm1_exp} with {len(diagonal)} diagonal factors")
    polys = [q_integer(f.h, ctx) if f.s == f.t else _cross_factor(ctx, f.h, f.s, f.t) for f in sf.factors]
    return product(polys, ctx).times_monomial(_key(ctx, sf.q_exp), sf.sign)


def hook_schur_element(lam: Partition) -> LaurentPoly:
    """q^{-n(λ)} Π [h]_q over the classical hooks of λ, the Iwahori-Hecke case."""
    ctx = Context(1)
    return product((q_integer(h, ctx) for h in hook_lengths(lam)), ctx).times_monomial(_key(ctx, -n_value(lam)))


def _q_integer_at(h: int, q: Fraction) -> Fraction:
    if q == 1:
        return Fraction(h)
    return (q**h - 1) / (q - 1)


def factor_value(f: Factor, spec: ParamSpec) -> Fraction:
    q = spec.q_val
    if f.s == f.t:
        return _q_integer_at(f.h, q)
    return q**f.h * spec.Q_vals[f.s] / spec.Q_vals[f.t] - 1


def evaluate_factored(sf: SchurFactored, spec: ParamSpec) -> tuple[Fraction, tuple[Factor, ...]]:
    if spec.arity != sf.d:
        raise AkSchurError(f"spec arity mismatch | Spec={spec.arity} | d={sf.d}")
    value = Fraction(sf.sign) * spec.q_val**sf.q_exp
    vanishing = []
    for f in sf.factors:
        v = factor_value(f, spec)
        if v == 0:
            vanishing.append(f)
        value *= v
    return value, tuple(vanishing)


def vanishing_report(lam: MultiPartition, spec: ParamSpec) -> VanishingReport:
    value, vanishing = evaluate_factored(schur_factored(lam), spec)
    return VanishingReport(value=value, vanishing_factors=vanishing, irreducible_flag=value != 0)


# ======================
# Quotient formulas
# ======================
def _x_st_factors(lam: MultiPartition, s: int, t: int, ctx: Context) -> tuple[list[LaurentPoly], list[LaurentPoly]]:
    mu = lam[t]
    mu_conj = mu.conjugate
    num: list[LaurentPoly] = []
    den: list[LaurentPoly] = []
    for i, j in nodes(mu):
        num.append(_qQ_minus_qQ(ctx, j - i, t, 0, s))
    for i, j in nodes(lam[s]):
        c = j - i
        num.append(_qQ_minus_qQ(ctx, c, s, mu.first, t))
        for k in range(1, mu.first + 1):
            num.append(_qQ_minus_qQ(ctx, c, s, k - 1 - mu_conj[k], t))
            den.append(_qQ_minus_qQ(ctx, c, s, k - mu_conj[k], t))
    return num, den


def x_st_mathas(lam: MultiPartition, s: int, t: int) -> RationalFn:
    _check_pair(lam, s, t)
    ctx = Context(lam.d)
    num, den = _x_st_factors(lam, s, t, ctx)
    return RationalFn.from_factors(num, den, ctx)


def x_st_closed(lam: MultiPartition, s: int, t: int) -> RationalFn:
    _check_pair(lam, s, t)
    ctx = Context(lam.d)
    a, b = lam[s], lam[t]
    prefactor = _mono(ctx, 1, -_conjugate_overlap(a, b), {s: b.size, t: a.size})
    num = [prefactor]
    num += [_cross_factor(ctx, generalized_hook(a, b, x), s, t) for x in nodes(a)]
    num += [_cross_factor(ctx, generalized_hook(b, a, x), t, s) for x in nodes(b)]
    return RationalFn.from_factors(num, [], ctx)


@track_operation("schur_mathas")
def schur_mathas(lam: MultiPartition) -> RationalFn:
    r, d = lam.size, lam.d
    ctx = Context(d)
    sign = -1 if (r * (d - 1)) % 2 else 1
    num = [_mono(ctx, sign, -alpha_conj(lam), {s: -r for s in range(d)})]
    den: list[LaurentPoly] = []
    for s, comp in enumerate(lam):
        for h in hook_lengths(comp):
            num.append(_mono(ctx, 1, 0, {s: 1}))
            num.append(q_integer(h, ctx))
    for s in range(d):
        for t in range(s + 1, d):
            xn, xd = _x_st_factors(lam, s, t, ctx)
            num += xn
            den += xd
    return RationalFn.from_factors(num, den, ctx)


def default_symbol_length(lam: MultiPartition) -> int:
    return max(lam.length, 1)


def gim_exponents(r: int, d: int, L: int) -> tuple[int, int]:
    """(a_L, b_L) for the symbol formula."""
    a_L = r * (d - 1) + comb(d, 2) * comb(L, 2)
    b_num = d * L * (L - 1) * (2 * d * L - d - 3)
    if b_num % 12:
        raise AkSchurError(f"non-integral q exponent in symbol formula | d={d} | L={L}")
    return a_L, b_num // 12


@track_operation("schur_gim")
def schur_gim(lam: MultiPartition, L: Optional[int] = None) -> RationalFn:
    if L is None:
        L = default_symbol_length(lam)
    sym = symbol(lam, L)
    r, d = lam.size, lam.d
    ctx = Context(d)
    a_L, b_L = gim_exponents(r, d, L)

    num = [_mono(ctx, -1 if a_L % 2 else 1, b_L, {s: -r for s in range(d)})]
    den = [binomial(1, _key(ctx, 1), -1, ctx.zero_key, ctx) for _ in range(r)]

    # ν
    for s in range(d):
        for t in range(s + 1, d):
            num += [_qQ_minus_qQ(ctx, 0, s, 0, t) for _ in range(L)]
    for s in range(d):
        for t in range(d):
            for b in sym.rows[s].betas:
                num += [_qQ_minus_qQ(ctx, k, s, 0, t) for k in range(1, b + 1)]
    # δ
    for s in range(d):
        for t in range(s + 1, d):
            for bs in sym.rows[s].betas:
                den += [_qQ_minus_qQ(ctx, bs, s, bt, t) for bt in sym.rows[t].betas]
    for s in range(d):
        betas = sym.rows[s].betas
        for i in range(L):
            for j in range(i + 1, L):
                den.append(_qQ_minus_qQ(ctx, betas[i], s, betas[j], s))
    return RationalFn.from_factors(num, den, ctx)


# ======================
# Checks built on the formulas
# ======================
def eq3_check(lam: MultiPartition, s: int, t: int) -> bool:
    return rf_equal(x_st_mathas(lam, s, t), x_st_closed(lam, s, t))


def exchange_check(lam: MultiPartition, s: int, t: int) -> bool:
    x = x_st_mathas(lam, s, t)
    swapped = RationalFn(x.num.swap_Q(s, t), x.den.swap_Q(s, t))
    return rf_equal(swapped, x_st_mathas(lam.swapped(s, t), s, t))


def l_shift_check(lam: MultiPartition, extra: int = 3) -> bool:
    base_L = lam.length
    values = [schur_gim(lam, L) for L in range(max(base_L, 1), base_L + extra + 1)]
    return all(rf_equal(values[0], v) for v in values[1:])


FORMULAS = ("cf", "mathas", "gim")


def schur_by_formula(lam: MultiPartition, formula: str) -> RationalFn:
    if formula == "cf":
        return RationalFn.from_poly(expand_factored(schur_factored(lam)))
    if formula == "mathas":
        return schur_mathas(lam)
    if formula == "gim":
        return schur_gim(lam)
    raise AkSchurError(f"unknown formula | Formula={formula}")


# ======================
# Semisimplicity
# ======================
def semisimplicity_factors(d: int, r: int, ctx: Optional[Context] = None) -> list[LaurentPoly]:
    ctx = ctx or Context(d)
    factors = [q_integer(i, ctx) for i in range(1, r + 1)]
    for s in range(d):
        for t in range(s + 1, d):
            factors += [_qQ_minus_qQ(ctx, k, s, 0, t) for k in range(-r + 1, r)]
    return factors


def semisimplicity_poly(d: int, r: int) -> LaurentPoly:
    ctx = Context(d)
    if r <= 0:
        return LaurentPoly.one(ctx)
    return product(semisimplicity_factors(d, r, ctx), ctx)


def semisimplicity_value(d: int, r: int, spec: ParamSpec) -> Fraction:
    """P(q) at spec, evaluated factor by factor."""
    value = Fraction(1)
    for f in semisimplicity_factors(d, r):
        value *= f.evaluate(spec)
    return value


@track_operation("semisimple_at")
def semisimple_at(d: int, r: int, spec: ParamSpec) -> SemisimplicityResult:
    reports = []
    witness = None
    for lam in enumerate_multipartitions(d, r):
        report = vanishing_report(lam, spec)
        reports.append((lam, report))
        if witness is None and not report.irreducible_flag:
            witness = lam
    if witness is not None:
        logger.info(f"Not semisimple | d={d} | r={r} | Witness={witness.to_lists()}")
    return SemisimplicityResult(semisimple=witness is None, witness=witness, reports=tuple(reports))


def trace_unity_check(d: int, r: int, spec: ParamSpec) -> Optional[bool]:
    """Σ dim S^λ / s_λ = 1; None when some s_λ vanishes at spec."""
    total = Fraction(0)
    for lam in enumerate_multipartitions(d, r):
        value, _ = evaluate_factored(schur_factored(lam), spec)
        if value == 0:
            return None
        total += Fraction(specht_dimension(lam)) / value
    return total == 1


# ======================
# Rendering
# ======================
def factored_to_json(sf: SchurFactored) -> dict:
    return {
        "sign": sf.sign,
        "q_exp": sf.q_exp,
        "qm1_exp": sf.qm1_exp,
        "factors": [{"h": f.h, "s": f.s, "t": f.t} for f in sf.factors],
    }


def _q_power(h: int) -> str:
    if h == 0:
        return ""
    return "q" if h == 1 else f"q^{h}"


def _factor_text(f: Factor) -> str:
    if f.s == f.t:
        return f"({_q_power(f.h)} - 1)"
    head = "*".join(p for p in (_q_power(f.h), f"Q{f.s}/Q{f.t}") if p)
    return f"({head} - 1)"


def factored_to_text(sf: SchurFactored) -> str:
    parts: list[str] = []
    if sf.q_exp:
        parts.append(_q_power(sf.q_exp))
    if sf.qm1_exp:
        parts.append(f"(q-1)^{sf.qm1_exp}")
    grouped: dict[str, int] = {}
    for f in sf.factors:
        text = _factor_text(f)
        grouped[text] = grouped.get(text, 0) + 1
    head = "*".join(parts)
    body = [text if m == 1 else f"{text}^{m}" for text, m in grouped.items()]
    out = " * ".join(([head] if head else []) + body) or "1"
    return f"-{out}" if sf.sign < 0 else out
