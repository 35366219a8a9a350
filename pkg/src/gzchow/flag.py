"""Flag-variety side: the GZ volume polynomial and the cohomology of Fl_n.

The volume polynomial is obtained by exact interpolation of polytope
volumes. Weights are pinned to ``lam_1 = 0`` for the fit, which leaves a
polynomial in ``lam_2, ..., lam_n``; translation invariance then recovers
the polynomial in all n coordinates. The cohomology ring is the apolarity
algebra of the pinned polynomial, and an independent count via the
coinvariant algebra serves as an oracle.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .algebra import GradedAlgebra, HomogeneousPolynomial, apolarity_algebra, monomials
from .linalg import InconsistentSystemError, rational_rank, solve
from .polytope import gz_dim, gz_polytope, is_regular_dominant, volume

MAX_N = 4


class InterpolationError(ValueError):
    pass


class NotRegularDominantError(ValueError):
    pass


@dataclass(frozen=True)
class VolumePolynomial:
    n: int
    polynomial: HomogeneousPolynomial  # in lam_1..lam_n
    pinned: HomogeneousPolynomial  # in lam_2..lam_n with lam_1 = 0
    translation_invariant: bool

    def __call__(self, lam: Sequence) -> Fraction:
        return self.polynomial.evaluate(lam)

    def to_dict(self) -> dict:
        return self.polynomial.to_dict()


def _random_weight(rng: random.Random, n: int, pinned: bool, spread: int = 12) -> tuple[int, ...]:
    gaps = [rng.randint(1, spread) for _ in range(n - 1)]
    start = 0 if pinned else rng.randint(-spread, spread)
    lam = [start]
    for g in gaps:
        lam.append(lam[-1] + g)
    return tuple(lam)


def _check_n(n: int, allow_large: bool = False):
    if n < 2 or (n > MAX_N and not allow_large):
        raise ValueError(f"n must be between 2 and {MAX_N}")


@lru_cache(maxsize=None)
def gz_volume_polynomial(n: int, seed: int = 0, held_out: int = 10, allow_large: bool = False) -> VolumePolynomial:
    """Volume of the GZ polytope as an exact polynomial in the weight.

    Results are cached per argument tuple; treat the returned object as read-only.
    """
    _check_n(n, allow_large)
    N = gz_dim(n)
    names = [f"l{i}" for i in range(1, n + 1)]
    rng = random.Random(seed)
    monos = monomials(n - 1, N)
    for _attempt in range(5):
        pts = []
        seen = set()
        while len(pts) < len(monos):
            lam = _random_weight(rng, n, pinned=True)
            if lam not in seen:
                seen.add(lam)
                pts.append(lam)
        rows = [[_monomial_value(m, lam[1:]) for m in monos] for lam in pts]
        if rational_rank(rows) == len(monos):
            break
    else:
        raise InterpolationError("interpolation points insufficient/degenerate")
    values = [volume(gz_polytope(lam)) for lam in pts]
    try:
        coef = solve(rows, values, len(monos))
    except InconsistentSystemError:
        raise InterpolationError("interpolation points insufficient/degenerate") from None
    pinned = HomogeneousPolynomial(n - 1, N, dict(zip(monos, coef)), names[1:])
    # lam -> (lam_2 - lam_1, ..., lam_n - lam_1)
    shift = [[-1] * (n - 1)] + [[int(i == j) for j in range(n - 1)] for i in range(n - 1)]
    full = pinned.compose(shift, names)
    for _ in range(held_out):
        lam = _random_weight(rng, n, pinned=False)
        if full.evaluate(lam) != volume(gz_polytope(lam)):
            raise InterpolationError(f"held-out check failed at {lam}")
    invariant = _translation_invariant(full)
    if not invariant:
        raise InterpolationError("fitted polynomial is not translation invariant")
    return VolumePolynomial(n, full, pinned, invariant)


def _monomial_value(exp: Sequence[int], point: Sequence) -> int:
    out = 1
    for x, e in zip(point, exp):
        out *= x ** e
    return out


def _translation_invariant(P: HomogeneousPolynomial) -> bool:
    """``sum_i d/d lam_i`` kills P."""
    total = None
    for i in range(P.nvars):
        d = P.derivative([int(j == i) for j in range(P.nvars)])
        total = d if total is None else total + d
    return total is None or total.is_zero()


def flag_cohomology(n: int, seed: int = 0) -> GradedAlgebra:
    """Rational cohomology of Fl_n as the apolarity algebra of the pinned volume polynomial.

    Degree-1 basis element i corresponds to ``d/d lam_{i+2}``.
    """
    return apolarity_algebra(gz_volume_polynomial(n, seed).pinned)


def betti_numbers(n: int) -> list[int]:
    """Coefficients of ``prod_{k=1}^{n} (1 + q + ... + q^{k-1})``."""
    out = [1]
    for k in range(1, n + 1):
        new = [0] * (len(out) + k - 1)
        for i, c in enumerate(out):
            for j in range(k):
                new[i + j] += c
        out = new
    return out


def _elementary(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {tuple(int(i in s) for i in range(n)): 1 for s in itertools.combinations(range(n), k)}


def borel_oracle(n: int, check_staircase: bool = True) -> list[int]:
    """Degree dimensions of ``Q[x_1..x_n] / (e_1, ..., e_n)`` by exact linear algebra.

    Degree k of the ideal is spanned by ``x^m * e_j`` with ``|m| + j = k``.
    With ``check_staircase`` the monomials ``x^a`` with ``a_i <= n - i``
    are also confirmed to span a complement of the ideal.
    """
    _check_n(n, allow_large=True)
    dims = []
    for k in range(gz_dim(n) + 2):
        monos = monomials(n, k)
        col = {m: i for i, m in enumerate(monos)}
        rows = []
        for j in range(1, min(k, n) + 1):
            e = _elementary(n, j)
            for m in monomials(n, k - j):
                row = [0] * len(monos)
                for em in e:
                    row[col[tuple(a + b for a, b in zip(em, m))]] += 1
                rows.append(row)
        rank = rational_rank(rows) if rows else 0
        dims.append(len(monos) - rank)
        if check_staircase:
            stair = [m for m in monos if all(a <= n - 1 - i for i, a in enumerate(m))]
            if len(stair) != dims[-1]:
                raise AssertionError("staircase count disagrees with quotient dimension")
            unit_rows = [[int(i == col[m]) for i in range(len(monos))] for m in stair]
            if (rational_rank(rows + unit_rows) if rows or unit_rows else 0) != len(monos):
                raise AssertionError("staircase monomials do not span the quotient")
    while dims and dims[-1] == 0:
        dims.pop()
    return dims


def flag_degree(lam: Sequence[int], seed: int = 0) -> int:
    """Degree of Fl_n under the line bundle of lam: ``N!`` times the volume polynomial."""
    if not is_regular_dominant(lam):
        raise NotRegularDominantError(f"not regular dominant: {tuple(lam)}")
    n = len(lam)
    V = gz_volume_polynomial(n, seed)
    value = math.factorial(gz_dim(n)) * V(lam)
    assert value.denominator == 1, "degree is not an integer"
    return int(value)


def ehrhart_leading_coefficient(lam: Sequence[int], max_m: int | None = None) -> Fraction:
    """Leading coefficient of ``m -> #(m * polytope) cap Z^N`` fitted exactly from small m."""
    from .polytope import lattice_point_count

    N = gz_dim(len(lam))
    ms = list(range(0, (max_m or N) + 1))
    counts = [lattice_point_count(gz_polytope([m * a for a in lam])) if m else 1 for m in ms]
    rows = [[Fraction(m) ** e for e in range(N + 1)] for m in ms]
    coef = solve(rows, counts, N + 1)
    for m, c in zip(ms, counts):
        if sum(a * Fraction(m) ** e for e, a in enumerate(coef)) != c:
            raise AssertionError("lattice counts are not polynomial in m")
    return coef[N]
