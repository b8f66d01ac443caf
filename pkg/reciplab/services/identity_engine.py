"""Both sides of the product-to-sum identity and the residue / Laurent reciprocity laws it implies."""

from __future__ import annotations

import logging
import math
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from ..core.exceptions import InvalidParams, NotApplicable, NotCoprime, NotMultiplicityFree, PoleProximity
from ..models.params import Kind, Params, PoleDatum, SamplePolicy, params_family_sizes
from ..models.report import VerificationReport
from .exact_numbers import PiScaled, cos_half_pi, fraction_to_mp, pochhammer, sin_half_pi
from .laurent_coeffs import ACoeff, coeff_A, pole_taylor_term
from .oracle import contour_coefficients, contour_radius_for
from .pole_combinatorics import (
    classify_case,
    complement,
    compositions_K,
    enumerate_poles,
    multiplicity_d,
    node,
    pole_datum_at,
    residue_subsets,
    weak_compositions,
)
from .trig_kernel import DEFAULT_PRECISION, TrigPoint, phi, phi_at_rational, to_mpc

# Set up logging
logger = logging.getLogger(__name__)

LAURENT_ORDERS = (0, 1, 2, 3)
LAURENT_CENTERS = (Fraction(0), Fraction(1, 5), Fraction(1, 2))


@dataclass(frozen=True)
class Corruption:
    """Deliberate damage to the expansion, for negative controls."""

    flip_index: Optional[int] = None
    drop_full_subset: bool = False

    @property
    def active(self) -> bool:
        return self.flip_index is not None or self.drop_full_subset

    def describe(self) -> str:
        if self.flip_index is not None:
            return f"flip-sign[{self.flip_index}]"
        if self.drop_full_subset:
            return "drop-full-subset"
        return "none"


@dataclass
class PrincipalParts:
    """Psi as a constant plus coefficients of phi_n^(J)(z - rho) keyed by (rho, n)."""

    params: Params
    J: Kind
    constant: PiScaled
    terms: dict[tuple[Fraction, int], mpmath.mpc] = field(default_factory=dict)
    precision: int = DEFAULT_PRECISION

    def coefficient(self, rho: Fraction, n: int) -> mpmath.mpc:
        return self.terms.get((Fraction(rho), n), mpmath.mpc(0))

    @property
    def poles(self) -> list[Fraction]:
        return sorted({rho for rho, _ in self.terms})

    def residue_sum(self) -> mpmath.mpc:
        """Sum of the phi_1 coefficients over all poles."""
        with mpmath.workprec(self.precision):
            return mpmath.fsum(value for (_, n), value in self.terms.items() if n == 1)

    def evaluate(self, z: mpmath.mpc) -> mpmath.mpc:
        with mpmath.workprec(self.precision):
            z = to_mpc(z)
            by_pole: dict[Fraction, list[tuple[int, mpmath.mpc]]] = defaultdict(list)
            for (rho, n), value in self.terms.items():
                by_pole[rho].append((n, value))
            total = mpmath.mpc(self.constant.to_mp())
            for rho, entries in by_pole.items():
                point = TrigPoint(z - fraction_to_mp(rho))
                total += mpmath.fsum(value * point.phi(self.J, n) for n, value in entries)
            return total


def constant_term(p: Params) -> PiScaled:
    """cos(pi r/2) pi^r prod a_l, present only for all-cotangent factors with m = 1."""
    if p.j[1] != 0 or not p.all_simple:
        return PiScaled.zero(p.r)
    return PiScaled(Fraction(cos_half_pi(p.r) * math.prod(p.a)), p.r)


def residue_constant(p: Params) -> PiScaled:
    """pi^(r-1) sin(pi r/2) prod a_l under the same conditions as the constant term."""
    if p.j[1] != 0 or not p.all_simple:
        return PiScaled.zero(p.r - 1)
    return PiScaled(Fraction(sin_half_pi(p.r) * math.prod(p.a)), p.r - 1)


def subset_sign(p: Params, datum: PoleDatum, subset: Sequence[int], corruption: Optional[Corruption] = None) -> int:
    """prod over the subset of (-1)^(a_l rho - w_l) for cosecant indices."""
    shifts = datum.int_values
    sign = 1
    for index in subset:
        if p.kind(index) is Kind.II and shifts[index] % 2:
            sign = -sign
        if corruption is not None and corruption.flip_index == index:
            sign = -sign
    return sign


def pairwise_coprime(values: Sequence[int]) -> bool:
    return all(math.gcd(x, y) == 1 for i, x in enumerate(values) for y in values[i + 1:])


def check_multiplicity_free(p: Params) -> bool:
    """True iff no two (index, offset) nodes coincide."""
    return all(multiplicity_d(p, v, mu) == 1 for v in range(p.r) for mu in range(p.a[v]))


def sample_family(count: int, seed: int, max_r: int = 4, max_a: int = 6, max_m: int = 3, max_den: int = 8) -> list[Params]:
    """Seeded random parameter tuples covering both cases and every j split."""
    rng = random.Random(seed)
    family: list[Params] = []
    for _ in range(count):
        r = rng.randint(2, max_r)
        a = tuple(rng.randint(1, max_a) for _ in range(r))
        m = tuple(rng.randint(1, max_m) for _ in range(r))
        w = []
        for _ in range(r):
            den = rng.randint(1, max_den)
            w.append(Fraction(rng.randrange(den), den))
        j_cot = rng.randint(0, r)
        family.append(Params(a=a, m=m, w=tuple(w), j=(j_cot, r - j_cot)))
    logger.info(f"🏭 Sampled {count} parameter tuples (seed={seed}, r histogram {params_family_sizes(family)})")
    return family


def sample_points(policy: SamplePolicy) -> list[mpmath.mpc]:
    """Points in the strip 0 <= Re z < 1 with Im z drawn from the policy band."""
    rng = random.Random(policy.seed)
    low, high = policy.im_range
    return [mpmath.mpc(rng.random(), rng.uniform(low, high)) for _ in range(policy.count)]


class IdentityEngine:
    """Evaluates Phi and Psi at a fixed working precision and verifies the derived laws."""

    def __init__(self, precision: int = DEFAULT_PRECISION, tolerance_bits: Optional[int] = None) -> None:
        if precision < 53:
            raise InvalidParams(f"precision must be at least 53 bits, got {precision}")
        self.precision = precision
        self.tolerance_bits = tolerance_bits if tolerance_bits is not None else precision // 2
        self._parts_cache: dict[tuple[Params, Optional[Corruption]], PrincipalParts] = {}
        logger.debug(f"🔧 Identity engine at {precision} bits, tolerance 2^-{self.tolerance_bits}")

    @property
    def tolerance(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision):
            return mpmath.ldexp(1, -self.tolerance_bits)

    # -- expansion ---------------------------------------------------------

    def _pole_contributions(
        self, p: Params, datum: PoleDatum, corruption: Optional[Corruption]
    ) -> dict[int, mpmath.mpc]:
        """Coefficients of phi_n^(J)(z - rho) at one pole, n = 1..|m|."""
        out: dict[int, mpmath.mpc] = defaultdict(lambda: mpmath.mpc(0))
        for subset in residue_subsets(datum):
            if corruption is not None and corruption.drop_full_subset and subset == datum.integral_set:
                continue
            sign = subset_sign(p, datum, subset, corruption)
            rest = complement(p, subset)
            top = sum(p.m[i] for i in subset)
            for n in range(1, top + 1):
                for nus in compositions_K(n, "-", subset, p):
                    term = mpmath.mpc(sign)
                    for u in rest:
                        term *= coeff_A(p.kind(u), nus[u], datum.rho, p.a[u], p.m[u], p.w[u], self.precision).value
                    out[n] += term
        return dict(out)

    def principal_parts(self, p: Params, corruption: Optional[Corruption] = None) -> PrincipalParts:
        """Constant and principal-part coefficients of Psi, from the deduplicated poles."""
        if corruption is not None and not corruption.active:
            corruption = None
        key = (p, corruption)
        cached = self._parts_cache.get(key)
        if cached is not None:
            return cached
        started = time.perf_counter()
        with mpmath.workprec(self.precision):
            parts = PrincipalParts(p, classify_case(p).J, constant_term(p), precision=self.precision)
            for datum in enumerate_poles(p):
                for n, value in self._pole_contributions(p, datum, corruption).items():
                    parts.terms[(datum.rho, n)] = value
        logger.debug(
            f"🧮 principal parts for {p} ({len(parts.terms)} terms, corruption={corruption.describe() if corruption else 'none'}) "
            f"in {(time.perf_counter() - started) * 1000:.1f} ms"
        )
        self._parts_cache[key] = parts
        return parts

    def weighted_principal_parts(self, p: Params) -> PrincipalParts:
        """The same expansion assembled node by node with weights 1/d_v^(mu)."""
        with mpmath.workprec(self.precision):
            parts = PrincipalParts(p, classify_case(p).J, constant_term(p), precision=self.precision)
            for v in range(p.r):
                for mu in range(p.a[v]):
                    datum = pole_datum_at(p, node(p, v, mu))
                    weight = mpmath.mpf(1) / multiplicity_d(p, v, mu)
                    for n, value in self._pole_contributions(p, datum, None).items():
                        key = (datum.rho, n)
                        parts.terms[key] = parts.terms.get(key, mpmath.mpc(0)) + weight * value
        return parts

    # -- the two sides -----------------------------------------------------

    def eval_phi_product(self, p: Params, z: mpmath.mpc) -> mpmath.mpc:
        """prod_l a_l^m_l phi_{m_l}^(kind l)(a_l z - w_l)."""
        with mpmath.workprec(self.precision):
            z = to_mpc(z)
            total = mpmath.mpc(1)
            for index in range(p.r):
                arg = p.a[index] * z - fraction_to_mp(p.w[index])
                total *= p.a[index] ** p.m[index] * phi(p.kind(index), p.m[index], arg)
            return total

    def eval_psi(self, p: Params, z: mpmath.mpc, corruption: Optional[Corruption] = None) -> mpmath.mpc:
        return self.principal_parts(p, corruption).evaluate(z)

    def verify_identity(
        self, p: Params, policy: Optional[SamplePolicy] = None, corruption: Optional[Corruption] = None
    ) -> VerificationReport:
        """Compare Phi and Psi at the sampled points."""
        policy = policy or SamplePolicy()
        started = time.perf_counter()
        parts = self.principal_parts(p, corruption)
        comparisons = []
        with mpmath.workprec(self.precision):
            for z in sample_points(policy):
                try:
                    comparisons.append((z, self.eval_phi_product(p, z), parts.evaluate(z)))
                except PoleProximity as e:
                    logger.warning(f"⚠️ skipped sample {mpmath.nstr(z, 6)}: {e}")
        details = {"corruption": corruption.describe()} if corruption is not None and corruption.active else {}
        return VerificationReport.from_comparisons(
            "identity", p, parts.J, self.precision, comparisons, self.tolerance, started, details
        )

    # -- residue sum -------------------------------------------------------

    def reciprocity_sum(self, p: Params) -> tuple[mpmath.mpc, PiScaled]:
        """Sum of all phi_1 coefficients of Psi, and its closed form in the cotangent-limit case."""
        parts = self.principal_parts(p)
        return parts.residue_sum(), residue_constant(p)

    def verify_reciprocity_sum(self, p: Params) -> VerificationReport:
        case = classify_case(p).J
        if case is Kind.II:
            raise NotApplicable(
                f"{p} is antiperiodic (case II); phi_1^(II) vanishes at i*infinity so the residue sum is unconstrained"
            )
        started = time.perf_counter()
        lhs, rhs = self.reciprocity_sum(p)
        with mpmath.workprec(self.precision):
            rhs_value = rhs.to_mp()
        return VerificationReport.from_comparisons(
            "reciprocity", p, case, self.precision, [(None, lhs, rhs_value)], self.tolerance, started,
            {"lhs": lhs, "rhs": rhs_value, "rhs_exact": str(rhs)},
        )

    # -- Laurent coefficients at a rational center ---------------------------

    def taylor_side(self, p: Params, z0: Fraction, mu: int) -> mpmath.mpc:
        """Order-mu Laurent coefficient of Phi at z0 from the factor expansions."""
        datum = pole_datum_at(p, z0)
        with mpmath.workprec(self.precision):
            total = mpmath.mpc(0)
            for subset in residue_subsets(datum):
                sign = subset_sign(p, datum, subset)
                for nus in compositions_K(mu, "+", subset, p):
                    term = mpmath.mpc(sign)
                    for u in complement(p, subset):
                        term *= coeff_A(p.kind(u), nus[u], z0, p.a[u], p.m[u], p.w[u], self.precision).value
                    total += term
            return total

    def laurent_reciprocity(self, p: Params, z0: Fraction, mu: int) -> tuple[mpmath.mpc, mpmath.mpc]:
        """Order-mu coefficient at z0 read off Psi (lhs) and off the factor expansions of Phi (rhs)."""
        z0 = Fraction(z0)
        if not (0 <= z0 < 1):
            raise InvalidParams(f"z0 must lie in [0, 1), got {z0}")
        if mu < 0:
            raise InvalidParams(f"mu must be >= 0, got {mu}")
        parts = self.principal_parts(p)
        with mpmath.workprec(self.precision):
            lhs = mpmath.fsum(
                value * coeff_A(parts.J, mu, z0, 1, n, rho, self.precision).value
                for (rho, n), value in parts.terms.items()
            )
            rhs = self.taylor_side(p, z0, mu)
            if mu == 0:
                rhs -= parts.constant.to_mp()
        return mpmath.mpc(lhs), rhs

    def verify_laurent_reciprocity(
        self,
        p: Params,
        z0: Fraction,
        orders: Sequence[int] = LAURENT_ORDERS,
        with_oracle: bool = True,
    ) -> VerificationReport:
        """Check lhs = rhs per order, and both against contour extraction from Phi itself."""
        started = time.perf_counter()
        z0 = Fraction(z0)
        parts = self.principal_parts(p)
        comparisons = []
        details: dict[str, object] = {"z0": z0, "orders": list(orders)}
        oracle_values: dict[int, mpmath.mpc] = {}
        if with_oracle:
            radius = contour_radius_for(p, z0)
            oracle_values = contour_coefficients(
                lambda z: self.eval_phi_product(p, z), z0, orders, radius, prec=self.precision,
                tolerance_bits=self.tolerance_bits,
            )
            details["radius"] = radius
        with mpmath.workprec(self.precision):
            for mu in orders:
                lhs, rhs = self.laurent_reciprocity(p, z0, mu)
                comparisons.append((None, lhs, rhs))
                if with_oracle:
                    # the oracle sees Phi itself, so the constant of Psi is put back at order 0
                    shift = parts.constant.to_mp() if mu == 0 else 0
                    comparisons.append((None, rhs + shift, oracle_values[mu]))
        return VerificationReport.from_comparisons(
            "laurent", p, parts.J, self.precision, comparisons, self.tolerance, started, details
        )

    # -- specializations ---------------------------------------------------

    def multiplicity_free_reciprocity(self, p: Params) -> VerificationReport:
        """Residue sum written node by node for parameters without shared poles."""
        if not check_multiplicity_free(p):
            raise NotMultiplicityFree(f"{p} has shared poles")
        case = classify_case(p).J
        if case is Kind.II:
            raise NotApplicable(f"{p} is antiperiodic (case II); the residue sum is unconstrained")
        started = time.perf_counter()
        with mpmath.workprec(self.precision):
            total = mpmath.mpc(0)
            for l in range(p.r):
                others = [u for u in range(p.r) if u != l]
                for mu_l in range(p.a[l]):
                    rho = node(p, l, mu_l)
                    sign = -1 if (p.kind(l) is Kind.II and mu_l % 2) else 1
                    for combo in weak_compositions(p.m[l] - 1, len(others)):
                        term = mpmath.mpc(sign)
                        for u, nu in zip(others, combo):
                            order = p.m[u] + nu
                            scale = Fraction((-1) ** nu * pochhammer(p.m[u], nu) * p.a[u] ** order, math.factorial(nu))
                            value = phi_at_rational(p.kind(u), order, p.a[u] * rho - p.w[u], self.precision)
                            term *= value * (mpmath.mpf(scale.numerator) / scale.denominator)
                        total += term
            rhs = residue_constant(p).to_mp()
        return VerificationReport.from_comparisons(
            "multiplicity-free", p, case, self.precision, [(None, total, rhs)], self.tolerance, started,
            {"lhs": total, "rhs": rhs},
        )

    def m_coefficient(self, p: Params, n: int) -> ACoeff:
        """Coefficient of phi_n^(J)(z) at the origin for w = 0 and pairwise coprime a."""
        if not p.w_is_zero:
            raise InvalidParams(f"M_n needs w = 0, got {p}")
        if not pairwise_coprime(p.a):
            raise NotCoprime(f"M_n needs pairwise coprime a, got {p.a}")
        if not (1 <= n <= p.total_order):
            raise InvalidParams(f"n must lie in 1..{p.total_order}, got {n}")
        origin = pole_datum_at(p, Fraction(0))
        total = PiScaled.zero(p.total_order - n)
        for subset in residue_subsets(origin):
            for nus in compositions_K(n, "-", subset, p):
                term = PiScaled(Fraction(1), 0)
                for u in complement(p, subset):
                    term = term * pole_taylor_term(p.kind(u), nus[u], p.m[u], p.a[u])
                total = total + term
        with mpmath.workprec(self.precision):
            return ACoeff(mpmath.mpc(total.to_mp()), total)

    def w_zero_expansion_check(self, p: Params) -> VerificationReport:
        """The origin coefficients of Psi agree with M_n for n = 1..|m|."""
        started = time.perf_counter()
        parts = self.principal_parts(p)
        comparisons = []
        exact: dict[str, str] = {}
        for n in range(1, p.total_order + 1):
            m_n = self.m_coefficient(p, n)
            exact[f"M_{n}"] = str(m_n.exact_part)
            comparisons.append((None, parts.coefficient(Fraction(0), n), m_n.value))
        return VerificationReport.from_comparisons(
            "w-zero", p, parts.J, self.precision, comparisons, self.tolerance, started, {"M": exact}
        )


@lru_cache(maxsize=8)
def get_identity_engine(precision: int = DEFAULT_PRECISION, tolerance_bits: Optional[int] = None) -> IdentityEngine:
    """Cached engine instance per precision."""
    logger.info(f"🏭 Creating identity engine instance ({precision} bits)")
    return IdentityEngine(precision, tolerance_bits)
