"""Moment/cumulant calculus over non-crossing partitions, in exact rationals.

The bridge between moments and free cumulants is the lattice NC(n): a moment
is the sum over all non-crossing partitions of products of cumulants, one
factor per block, and the inverse direction weights moment products with
Mobius values.  Additive free convolution adds cumulant sequences;
multiplicative free convolution either sums cumulant products over
complementary pairs (p, Kreweras complement of p) or multiplies
S-transforms.  Everything here is Fraction arithmetic; no floats.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator

from .errors import (
    FormatError,
    IrrationalResult,
    OrderMismatch,
    VanishingFirstMoment,
)
from .partitions import catalan, iter_nc, kreweras
from .series import RationalSeries, Rat, _frac, parse_rationals

def _parse_values(text: str) -> tuple[Fraction, ...]:
    values = parse_rationals(text)
    if not values:
        raise FormatError("empty sequence")
    return values


@dataclass(frozen=True, slots=True)
class MomentSequence:
    """Moments m_1..m_N of a (formal) distribution, m_n at index n - 1."""

    values: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable[Rat]) -> "MomentSequence":
        return MomentSequence(tuple(_frac(v) for v in values))

    @staticmethod
    def parse(text: str) -> "MomentSequence":
        return MomentSequence(_parse_values(text))

    @property
    def order(self) -> int:
        return len(self.values)

    def moment(self, n: int) -> Fraction:
        """m_n for 1 <= n <= order."""
        if not 1 <= n <= self.order:
            raise OrderMismatch(f"moment {n} outside 1..{self.order}")
        return self.values[n - 1]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __str__(self) -> str:
        return ", ".join(str(v) for v in self.values)

    def to_json(self) -> dict:
        return {"order": self.order, "values": [str(v) for v in self.values]}


@dataclass(frozen=True, slots=True)
class CumulantSequence:
    """Free cumulants k_1..k_N, k_n at index n - 1."""

    values: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable[Rat]) -> "CumulantSequence":
        return CumulantSequence(tuple(_frac(v) for v in values))

    @staticmethod
    def parse(text: str) -> "CumulantSequence":
        return CumulantSequence(_parse_values(text))

    @property
    def order(self) -> int:
        return len(self.values)

    def cumulant(self, n: int) -> Fraction:
        if not 1 <= n <= self.order:
            raise OrderMismatch(f"cumulant {n} outside 1..{self.order}")
        return self.values[n - 1]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __str__(self) -> str:
        return ", ".join(str(v) for v in self.values)

    def to_json(self) -> dict:
        return {"order": self.order, "values": [str(v) for v in self.values]}


Profile = tuple[tuple[int, ...], tuple[int, ...], int]


@cache
def _nc_profiles(n: int) -> tuple[Profile, ...]:
    """Distinct (block sizes of p, block sizes of complement, multiplicity).

    One streaming pass over NC(n); the grouped table is all any transform
    needs, since every summand below depends only on block sizes.
    """
    counter: Counter[tuple[tuple[int, ...], tuple[int, ...]]] = Counter()
    for p in iter_nc(n):
        key = (
            tuple(sorted(p.block_sizes(), reverse=True)),
            tuple(sorted(kreweras(p).block_sizes(), reverse=True)),
        )
        counter[key] += 1
    return tuple((a, b, k) for (a, b), k in sorted(counter.items()))


def _product_over(sizes: tuple[int, ...], values: tuple[Fraction, ...]) -> Fraction:
    out = Fraction(1)
    for s in sizes:
        out *= values[s - 1]
    return out


def _mobius_to_top(csizes: tuple[int, ...]) -> int:
    """mu(q, full block) given the block sizes of the complement of q."""
    out = 1
    for s in csizes:
        out *= (-1) ** (s - 1) * catalan(s - 1)
    return out


def cumulants_to_moments(kappa: CumulantSequence) -> MomentSequence:
    """m_n = sum over NC(n) of the product of k_{|B|} over blocks B."""
    out = []
    for n in range(1, kappa.order + 1):
        total = Fraction(0)
        for sizes, _csizes, mult in _nc_profiles(n):
            total += mult * _product_over(sizes, kappa.values)
        out.append(total)
    return MomentSequence(tuple(out))


def moments_to_cumulants(m: MomentSequence) -> CumulantSequence:
    """Free cumulants from moments, by two independent routes that must agree.

    Mobius route: k_n = sum over q in NC(n) of (product of m_{|B|}) mu(q, top),
    with mu(q, top) read off the complement block sizes.  Triangular route:
    peel the top partition out of the moment sum and solve upward.  A mismatch
    would mean an internal inconsistency, so it raises.
    """
    mob: list[Fraction] = []
    tri: list[Fraction] = []
    for n in range(1, m.order + 1):
        total = Fraction(0)
        for sizes, csizes, mult in _nc_profiles(n):
            total += mult * _product_over(sizes, m.values) * _mobius_to_top(csizes)
        mob.append(total)

        rest = Fraction(0)
        for sizes, _csizes, mult in _nc_profiles(n):
            if sizes == (n,):
                continue
            rest += mult * _product_over(sizes, tuple(tri) + (Fraction(0),) * n)
        tri.append(m.values[n - 1] - rest)
    if mob != tri:
        raise ArithmeticError("Mobius and triangular cumulant routes disagree")
    return CumulantSequence(tuple(mob))


def free_add_convolve(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Moments of the sum of free elements: cumulant sequences add."""
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    ka = moments_to_cumulants(a)
    kb = moments_to_cumulants(b)
    return cumulants_to_moments(
        CumulantSequence(tuple(x + y for x, y in zip(ka.values, kb.values)))
    )


def free_mult_convolve_kreweras(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Moments of the product of free elements, by the complement pairing:
    k_n(ab) = sum over p in NC(n) of k_p(a) k_{complement(p)}(b)."""
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    ka = moments_to_cumulants(a)
    kb = moments_to_cumulants(b)
    out = []
    for n in range(1, a.order + 1):
        total = Fraction(0)
        for sizes, csizes, mult in _nc_profiles(n):
            total += (
                mult
                * _product_over(sizes, ka.values)
                * _product_over(csizes, kb.values)
            )
        out.append(total)
    return cumulants_to_moments(CumulantSequence(tuple(out)))


# ---------------------------------------------------------------------------
# Transform calculus.


def moment_series(m: MomentSequence) -> RationalSeries:
    """M(z) = sum m_n z^n as a truncated series (constant term 0)."""
    return RationalSeries((Fraction(0),) + m.values)


def r_transform(m: MomentSequence) -> RationalSeries:
    """R(z) solving R(z M(z) + z) = M(z); coefficients are the free cumulants.

    Computed through the functional equation (an independent route from the
    partition sums); the coefficient identity against moments_to_cumulants is
    asserted on every call.
    """
    M = moment_series(m)
    u = M.shift_up() + RationalSeries.identity(M.order)  # z M(z) + z
    R = M.compose(u.compositional_inverse())
    kappa = moments_to_cumulants(m)
    assert R.coeffs[1:] == kappa.values, "transform route disagrees with partition sums"
    return R


def s_transform(m: MomentSequence) -> RationalSeries:
    """S(z), by both defining formulas, which must agree:
    S(z) = R^{(-1)}(z) / z  and  S(z) = (1 + z)/z * M^{(-1)}(z).

    Needs m_1 != 0.  The result is truncated at order N - 1 (constant term
    1/m_1 included), which is exactly what order-N moments determine.
    """
    if not m.values[0]:
        raise VanishingFirstMoment("S-transform needs a nonzero first moment")
    R = r_transform(m)
    via_r = R.compositional_inverse().shift_down()
    M = moment_series(m)
    minv = M.compositional_inverse().shift_down()  # M^{(-1)}(z) / z
    one_plus_z = RationalSeries.constant(1, minv.order) + RationalSeries.identity(minv.order)
    via_m = one_plus_z * minv
    if via_r.coeffs != via_m.coeffs:
        raise ArithmeticError("the two S-transform formulas disagree")
    return via_m


def _moments_from_s(s: RationalSeries) -> MomentSequence:
    """Recover moments m_1..m_{N} from S truncated at order N - 1."""
    order = s.order + 1
    one_plus_z = RationalSeries.constant(1, s.order) + RationalSeries.identity(s.order)
    minv_over_z = s * one_plus_z.reciprocal()  # M^{(-1)}(z) / z
    minv = RationalSeries((Fraction(0),) + minv_over_z.coeffs)
    return MomentSequence(minv.compositional_inverse().coeffs[1:])


def free_mult_convolve_stransform(a: MomentSequence, b: MomentSequence) -> MomentSequence:
    """Moments of the product of free elements via S_{ab} = S_a S_b."""
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    return _moments_from_s(s_transform(a) * s_transform(b))


# ---------------------------------------------------------------------------
# Named laws.


def semicircle_moments(order: int) -> MomentSequence:
    """Standard semicircle: odd moments 0, m_{2k} = C_k; R(z) = z^2."""
    return MomentSequence.of(
        [0 if n % 2 else catalan(n // 2) for n in range(1, order + 1)]
    )


def free_poisson_moments(order: int) -> MomentSequence:
    """Free Poisson (Marchenko-Pastur, rate 1): m_k = C_k, all cumulants 1."""
    return MomentSequence.of([catalan(n) for n in range(1, order + 1)])


def free_bessel_moments(ell: int, order: int) -> MomentSequence:
    """Free Bessel family: the law with S(z) = 1/(1+z)^ell.

    Computed by inverting the S-transform relation, i.e. as the coefficients
    of the compositional inverse of z/(1+z)^(ell+1); equivalently the
    ell-fold multiplicative free convolution of free Poisson.  ell = 0 is the
    point mass at 1, ell = 1 is free Poisson.
    """
    if ell < 0:
        raise FormatError("ell must be >= 0")
    one_plus_z = RationalSeries.constant(1, order) + RationalSeries.identity(order)
    denom = RationalSeries.constant(1, order)
    for _ in range(ell + 1):
        denom = denom * one_plus_z
    minv = RationalSeries.identity(order) * denom.reciprocal()  # z/(1+z)^(ell+1)
    return MomentSequence(minv.compositional_inverse().coeffs[1:])


def nc_pair_count(n: int) -> int:
    """Number of non-crossing pair partitions of 1..n, by direct enumeration.

    Zero for odd n; equals C_{n/2} for even n (semicircle moments).
    """

    def count(size: int) -> int:
        if size == 0:
            return 1
        if size % 2:
            return 0
        total = 0
        # partner of the first point, leaving an even run inside the arc
        for inside in range(0, size - 1, 2):
            total += count(inside) * count(size - 2 - inside)
        return total

    if n < 0:
        raise FormatError("n must be >= 0")
    return count(n)


def clt_moments(kappa: CumulantSequence, n_summands: int) -> MomentSequence:
    """Exact moments of the rescaled sum (a_1 + ... + a_N)/sqrt(N) of free
    copies with the given cumulants.

    Cumulants scale as k_j -> N^{1 - j/2} k_j, so a non-crossing partition
    with b blocks on n points contributes with the factor N^{b - n/2}.  For
    even n the exponent is an integer; for odd n a surviving sqrt(N) is
    irrational unless N is a perfect square, in which case it folds in
    exactly.  Otherwise this raises rather than rounding.
    """
    if n_summands < 1:
        raise FormatError("need at least one summand")
    N = n_summands
    root = math.isqrt(N)
    out = []
    for n in range(1, kappa.order + 1):
        whole, half = _clt_moment_parts(kappa, n, N)
        if half:
            if root * root != N:
                raise IrrationalResult(
                    f"moment {n} of the rescaled sum carries sqrt({N}); "
                    "use a perfect-square N or a base with vanishing odd terms"
                )
            whole += half * root
        out.append(whole)
    return MomentSequence(tuple(out))


def _clt_moment_parts(
    kappa: CumulantSequence, n: int, N: int
) -> tuple[Fraction, Fraction]:
    """Moment n of the rescaled free sum, split as whole + half * sqrt(N)."""
    whole = Fraction(0)
    half = Fraction(0)
    for sizes, _csizes, mult in _nc_profiles(n):
        term = mult * _product_over(sizes, kappa.values)
        if not term:
            continue
        e2 = 2 * len(sizes) - n  # twice the exponent of N
        if e2 % 2 == 0:
            whole += term * Fraction(N) ** (e2 // 2)
        else:
            half += term * Fraction(N) ** ((e2 - 1) // 2)
    return whole, half


def clt_even_moments(
    kappa: CumulantSequence, n_summands: int
) -> tuple[Fraction, ...]:
    """The even moments m_2, m_4, ... of the rescaled free sum.

    On an even number of points every non-crossing partition contributes an
    integer power of N, so these are exact rationals for every N — no
    perfect-square requirement.
    """
    if n_summands < 1:
        raise FormatError("need at least one summand")
    out = []
    for n in range(2, kappa.order + 1, 2):
        whole, half = _clt_moment_parts(kappa, n, n_summands)
        assert half == 0, "even moments never carry sqrt(N)"
        out.append(whole)
    return tuple(out)
