"""Named reciprocity laws: Zagier, two-factor (r = 2), Dedekind-Apostol and Fukuhara."""

from __future__ import annotations

import logging
import math
import time
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from ..core.config import get_run_config
from ..core.exceptions import InadmissibleTriple, InvalidParams, NotApplicable, NotCoprime, ParityMismatch
from ..models.params import Kind, Params, SamplePolicy, format_rational
from ..models.report import VerificationReport
from .exact_numbers import bernoulli, fraction_to_mp, sin_half_pi
from .identity_engine import IdentityEngine, get_identity_engine, pairwise_coprime, sample_points
from .laurent_coeffs import sgn
from .pole_combinatorics import classify_case
from .trig_kernel import DEFAULT_PRECISION, phi, phi_at_rational, to_mpc

# Set up logging
logger = logging.getLogger(__name__)

ADMISSIBLE_TRIPLES = {
    (Kind.I, Kind.I, Kind.I),
    (Kind.I, Kind.II, Kind.I),
    (Kind.I, Kind.II, Kind.II),
    (Kind.II, Kind.II, Kind.I),
    (Kind.II, Kind.II, Kind.II),
}

FUKUHARA_CASES = {
    # case -> (cosecant indices among (p, q), kernel J)
    0: (0, Kind.I),
    1: (1, Kind.I),
    2: (1, Kind.II),
    3: (2, Kind.I),
    4: (2, Kind.II),
}


def _engine(prec: int, tolerance_bits: Optional[int] = None) -> IdentityEngine:
    return get_identity_engine(prec, tolerance_bits)


def _require_coprime(*values: int) -> None:
    if not pairwise_coprime(values):
        raise NotCoprime(f"arguments must be pairwise coprime, got {values}")


# -- Zagier ------------------------------------------------------------------


def zagier_reciprocity(
    a: Sequence[int], j: tuple[int, int], prec: int = DEFAULT_PRECISION, tolerance_bits: Optional[int] = None
) -> VerificationReport:
    """Cotangent (j = (r,0)) or cosecant (j = (0,r)) Zagier sum against pi^(r-1) sin(pi r/2) prod a - M_1."""
    a = tuple(int(x) for x in a)
    _require_coprime(*a)
    r = len(a)
    p = Params(a=a, m=(1,) * r, w=(Fraction(0),) * r, j=j)
    case = classify_case(p).J
    if case is Kind.II:
        raise NotApplicable(f"{p} is antiperiodic (case II); the Zagier sum is not determined by the limit at i*infinity")
    engine = _engine(prec, tolerance_bits)
    started = time.perf_counter()
    with mpmath.workprec(prec):
        lhs = mpmath.mpc(0)
        for l in range(r):
            for mu in range(1, a[l]):
                term = mpmath.mpc(-1 if (p.kind(l) is Kind.II and mu % 2) else 1)
                for u in range(r):
                    if u != l:
                        term *= a[u] * phi_at_rational(p.kind(u), 1, Fraction(a[u] * mu, a[l]), prec)
                lhs += term
        m_1 = engine.m_coefficient(p, 1)
        head = sin_half_pi(r) * math.prod(a) if j[1] == 0 else 0
        rhs = head * mpmath.pi ** (r - 1) - m_1.value
    return VerificationReport.from_comparisons(
        "zagier", p, case, prec, [(None, lhs, rhs)], engine.tolerance, started,
        {"lhs": lhs, "rhs": rhs, "M_1": str(m_1.exact_part)},
    )


# -- two factors --------------------------------------------------------------


def bezout_pair(a1: int, a2: int) -> tuple[int, int]:
    """(A1, A2) with A1*a2 + A2*a1 = 1 and 0 <= A1 < a1."""
    _require_coprime(a1, a2)
    A1 = pow(a2, -1, a1) if a1 > 1 else 0
    A2 = (1 - A1 * a2) // a1
    return A1, A2


def shared_center(a1: int, a2: int, w1: Fraction, w2: Fraction) -> Fraction:
    A1, A2 = bezout_pair(a1, a2)
    return A1 * Fraction(w2) + A2 * Fraction(w1)


def sgn2(K1: Kind, K2: Kind, a: tuple[int, int], w: tuple[Fraction, Fraction], A: tuple[int, int]) -> int:
    """Sign of the shared double pole in the two-factor expansion."""
    center = A[0] * Fraction(w[1]) + A[1] * Fraction(w[0])
    if K1 is K2:
        return sgn(K1, center, a[0] + a[1], Fraction(w[0]) + Fraction(w[1]))
    return sgn(K1, center, a[0], w[0]) * sgn(K2, center, a[1], w[1])


def _r2_setup(
    a1: int, a2: int, w1: Fraction, w2: Fraction, K1: Kind, K2: Kind, J: Optional[Kind]
) -> tuple[Params, Kind]:
    K1, K2 = Kind.parse(K1), Kind.parse(K2)
    _require_coprime(a1, a2)
    if K1 is Kind.II and K2 is Kind.I:
        raise InadmissibleTriple("the cotangent factor must come first (K1 <= K2)")
    j = (2 - [K1, K2].count(Kind.II), [K1, K2].count(Kind.II))
    p = Params(a=(a1, a2), m=(1, 1), w=(Fraction(w1), Fraction(w2)), j=j)
    case = classify_case(p).J
    if J is not None and Kind.parse(J) is not case:
        raise InadmissibleTriple(f"(K1, K2, J) = ({K1.value}, {K2.value}, {Kind.parse(J).value}) contradicts the parity rule")
    if (K1, K2, case) not in ADMISSIBLE_TRIPLES:
        raise InadmissibleTriple(f"({K1.value}, {K2.value}, {case.value}) is not admissible")
    return p, case


def _r2_nodes(p: Params) -> list[tuple[Fraction, int, mpmath.mpc]]:
    """Non-singular nodes of each factor with the weight multiplying phi_1^(J)(z - node)."""
    out = []
    for own, other in ((0, 1), (1, 0)):
        for mu in range(p.a[own]):
            rho = (p.w[own] + mu) / p.a[own]
            arg = p.a[other] * rho - p.w[other]
            if arg.denominator == 1:
                continue
            sign = -1 if (p.kind(own) is Kind.II and mu % 2) else 1
            weight = p.a[other] * sign * phi_at_rational(p.kind(other), 1, arg)
            out.append((rho, own, weight))
    return out


def r2_identity(
    a1: int,
    a2: int,
    w1: Fraction,
    w2: Fraction,
    K1: Kind,
    K2: Kind,
    points: Optional[Sequence[mpmath.mpc]] = None,
    J: Optional[Kind] = None,
    prec: int = DEFAULT_PRECISION,
    tolerance_bits: Optional[int] = None,
) -> VerificationReport:
    """Two-factor product against its explicit partial fraction form at the given (or sampled) points."""
    p, case = _r2_setup(a1, a2, w1, w2, K1, K2, J)
    K1, K2 = p.kind(0), p.kind(1)
    started = time.perf_counter()
    engine = _engine(prec, tolerance_bits)
    with mpmath.workprec(prec):
        A = bezout_pair(a1, a2)
        center = A[0] * p.w[1] + A[1] * p.w[0]
        shared = (a1 * p.w[1] - a2 * p.w[0]).denominator == 1
        shared_sign = sgn2(K1, K2, p.a, p.w, A) if shared else 0
        constant = -(mpmath.pi**2) * a1 * a2 if (K1 is Kind.I and K2 is Kind.I) else mpmath.mpf(0)
        nodes = _r2_nodes(p)
        zs = list(points) if points is not None else sample_points(_default_policy())
        comparisons = []
        for z in zs:
            z = to_mpc(z)
            lhs = a1 * a2 * phi(K1, 1, a1 * z - fraction_to_mp(p.w[0])) * phi(K2, 1, a2 * z - fraction_to_mp(p.w[1]))
            rhs = mpmath.mpc(constant)
            if shared_sign:
                rhs += shared_sign * phi(case, 2, z - fraction_to_mp(center))
            rhs += mpmath.fsum(weight * phi(case, 1, z - fraction_to_mp(rho)) for rho, _, weight in nodes)
            comparisons.append((z, lhs, rhs))
    return VerificationReport.from_comparisons(
        "r2", p, case, prec, comparisons, engine.tolerance, started,
        {"bezout": list(A), "center": format_rational(center), "sgn2": shared_sign},
    )


def r2_reciprocity(
    a1: int,
    a2: int,
    w1: Fraction,
    w2: Fraction,
    K1: Kind,
    K2: Kind,
    prec: int = DEFAULT_PRECISION,
    tolerance_bits: Optional[int] = None,
) -> VerificationReport:
    """The weights of the simple-pole terms of the two-factor expansion sum to zero."""
    p, case = _r2_setup(a1, a2, w1, w2, K1, K2, None)
    if case is Kind.II:
        raise NotApplicable(f"{p} is antiperiodic (case II); the residue sum is unconstrained")
    started = time.perf_counter()
    with mpmath.workprec(prec):
        nodes = _r2_nodes(p)
        lhs = mpmath.fsum(weight for _, _, weight in nodes)
    return VerificationReport.from_comparisons(
        "r2-reciprocity", p, case, prec, [(None, lhs, mpmath.mpc(0))], _engine(prec, tolerance_bits).tolerance, started,
        {"lhs": lhs, "rhs": 0},
    )


def _default_policy() -> SamplePolicy:
    config = get_run_config()
    return SamplePolicy(count=config.samples, seed=config.seed)


# -- Dedekind-Apostol sums -----------------------------------------------------


def apostol_sum(N: int, q: int, p: int, prec: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """s_N(q; p) = 1/(2^(N+1) p) sum_mu cot(pi q mu/p) cot^(N-1)(pi mu/p)."""
    if N < 1 or p < 1 or q < 1:
        raise InvalidParams(f"apostol_sum needs N, p, q >= 1, got N={N}, p={p}, q={q}")
    _require_coprime(p, q)
    with mpmath.workprec(prec):
        total = mpmath.mpc(0)
        for mu in range(1, p):
            cot_q = phi_at_rational(Kind.I, 1, Fraction(q * mu, p), prec) / mpmath.pi
            # cot^(N-1)(pi x) = (-1)^(N-1) (N-1)! pi^-N phi_N(x)
            deriv = (-1) ** (N - 1) * math.factorial(N - 1) * phi_at_rational(Kind.I, N, Fraction(mu, p), prec)
            total += cot_q * deriv / mpmath.pi**N
        return total / (2 ** (N + 1) * p)


def apostol_rhs(k: int, p: int, q: int) -> Fraction:
    """Closed form of s_(2k+1)(q;p) + s_(2k+1)(p;q)."""
    if k == 0:
        return Fraction(p * p + q * q + 1 - 3 * p * q, 12 * p * q)
    order = 2 * k + 2
    inner = sum(
        bernoulli(2 * n) * bernoulli(order - 2 * n)
        / (math.factorial(2 * n) * math.factorial(order - 2 * n))
        * Fraction(p) ** (2 * n)
        * Fraction(q) ** (order - 2 * n)
        for n in range(k + 2)
    )
    inner += bernoulli(order) / (order * math.factorial(2 * k))
    return (-1) ** k * math.factorial(2 * k) * inner / (p * q)


def apostol_reciprocity(
    k: int, p: int, q: int, prec: int = DEFAULT_PRECISION, tolerance_bits: Optional[int] = None
) -> VerificationReport:
    if k < 0:
        raise InvalidParams(f"k must be >= 0, got {k}")
    _require_coprime(p, q)
    started = time.perf_counter()
    N = 2 * k + 1
    params = Params(a=(p, q), m=(1, N), w=(Fraction(0), Fraction(0)), j=(2, 0))
    with mpmath.workprec(prec):
        lhs = apostol_sum(N, q, p, prec) + apostol_sum(N, p, q, prec)
        exact = apostol_rhs(k, p, q)
        rhs = fraction_to_mp(exact)
    return VerificationReport.from_comparisons(
        "apostol", params, Kind.I, prec, [(None, lhs, rhs)], _engine(prec, tolerance_bits).tolerance, started,
        {"k": k, "lhs": lhs, "rhs": rhs, "rhs_exact": format_rational(exact)},
    )


# -- Fukuhara -------------------------------------------------------------------


def _check_fukuhara_parity(case_id: int, p: int, q: int) -> None:
    if case_id not in FUKUHARA_CASES:
        raise InvalidParams(f"case must be one of 0..4, got {case_id}")
    rules = {
        1: (q % 2 == 0, "q must be even"),
        2: (q % 2 == 1, "q must be odd"),
        3: ((p + q) % 2 == 0, "p + q must be even"),
        4: ((p + q) % 2 == 1, "p + q must be odd"),
    }
    if case_id in rules and not rules[case_id][0]:
        raise ParityMismatch(f"case {case_id}: {rules[case_id][1]} (p={p}, q={q})")


def fukuhara_sides(case_id: int, p: int, q: int, z: mpmath.mpc) -> tuple[mpmath.mpc, mpmath.mpc]:
    """Both sides of the quoted formula with poles at pi*Z, at the current precision."""
    csc, cot = mpmath.csc, mpmath.cot
    pi = mpmath.pi
    n_csc, kernel = FUKUHARA_CASES[case_id]
    first = cot if n_csc < 2 else csc
    second = cot if n_csc == 0 else csc
    lhs = p * q * first(p * z) * second(q * z)
    kern = cot if kernel is Kind.I else csc
    # -cot'(z) = csc^2 z and -csc'(z) = csc z cot z
    rhs = csc(z) ** 2 if kernel is Kind.I else csc(z) * cot(z)
    if n_csc == 0:
        rhs -= p * q
    for mu in range(1, p):
        weight = cot(pi * q * mu / p) if n_csc == 0 else csc(pi * q * mu / p)
        if n_csc == 2:
            weight *= (-1) ** mu
        rhs += q * weight * kern(z - pi * mu / p)
    for mu in range(1, q):
        weight = cot(pi * p * mu / q) if n_csc < 2 else csc(pi * p * mu / q)
        if n_csc >= 1:
            weight *= (-1) ** mu
        rhs += p * weight * kern(z - pi * mu / q)
    return lhs, rhs


def fukuhara_instance(
    case_id: int,
    p: int,
    q: int,
    z: mpmath.mpc,
    prec: int = DEFAULT_PRECISION,
    tolerance_bits: Optional[int] = None,
) -> VerificationReport:
    """Direct check of the formula plus the engine's Phi and Psi at z/pi (divided by pi^2)."""
    _check_fukuhara_parity(case_id, p, q)
    _require_coprime(p, q)
    n_csc, kernel = FUKUHARA_CASES[case_id]
    params = Params(a=(p, q), m=(1, 1), w=(Fraction(0), Fraction(0)), j=(2 - n_csc, n_csc))
    engine = _engine(prec, tolerance_bits)
    started = time.perf_counter()
    with mpmath.workprec(prec):
        zc = to_mpc(z)
        lhs, rhs = fukuhara_sides(case_id, p, q, zc)
        scale = mpmath.pi**2
        zeta = zc / mpmath.pi
        phi_side = engine.eval_phi_product(params, zeta) / scale
        psi_side = engine.eval_psi(params, zeta) / scale
    comparisons = [(zc, lhs, rhs), (zc, phi_side, lhs), (zc, psi_side, rhs)]
    return VerificationReport.from_comparisons(
        f"fukuhara-{case_id}", params, kernel, prec, comparisons, engine.tolerance, started,
        {"case": case_id, "lhs": lhs, "rhs": rhs},
    )


# -- raw Dedekind cotangent sums -------------------------------------------------


def dedekind_cotangent_sum(
    a0: int,
    a: Sequence[int],
    m: Sequence[int],
    w: Sequence[Fraction],
    j: tuple[int, int],
    w0: Fraction = Fraction(0),
    m0: int = 1,
    prec: int = DEFAULT_PRECISION,
) -> mpmath.mpc:
    """a0^-m0 sum_{k mod a0} prod_l f_l^(m_l - 1)(pi(a_l (k + w0)/a0 - w_l)), f = cot or csc.

    Summands with a singular factor are skipped.
    """
    if a0 < 1 or m0 < 1:
        raise InvalidParams(f"a0 and m0 must be >= 1, got a0={a0}, m0={m0}")
    if not (len(a) == len(m) == len(w)) or sum(j) != len(a) or min(j) < 0:
        raise InvalidParams("a, m, w must have equal length and j must split it")
    kinds = [Kind.I if index < j[0] else Kind.II for index in range(len(a))]
    with mpmath.workprec(prec):
        total = mpmath.mpc(0)
        skipped = 0
        for k in range(a0):
            args = [a_l * (k + Fraction(w0)) / a0 - Fraction(w_l) for a_l, w_l in zip(a, w)]
            if any(x.denominator == 1 for x in args):
                skipped += 1
                continue
            term = mpmath.mpc(1)
            for kind, order, x in zip(kinds, m, args):
                # f^(N-1)(pi x) = (-1)^(N-1) (N-1)! pi^-N phi_N(x)
                term *= (-1) ** (order - 1) * math.factorial(order - 1) * phi_at_rational(kind, order, x, prec)
                term /= mpmath.pi**order
            total += term
        logger.debug(f"🧮 cotangent sum mod {a0}: {skipped} singular summands skipped")
        return total / mpmath.mpf(a0) ** m0
