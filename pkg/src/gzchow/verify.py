"""End-to-end check that Fl_n cohomology is the Gorenstein quotient of the
Lefschetz subalgebra of the Minkowski-weight ring of the GZ fan.

Stages:

1. GZ fan and its Minkowski-weight ring over Q.
2. Lefschetz subalgebra L and its Gorenstein quotient G.
3. Flag cohomology A as the apolarity algebra of the volume polynomial,
   with dims cross-checked against the coinvariant algebra.
4. The degree-1 map phi from weights (lam_1 pinned to 0) to MW^1,
   obtained by differencing divisor weights of GZ polytopes.
5. Top-power polynomial identity ``P_A == s * (P_L o phi)`` and
   ``dims(G) == dims(A)``.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    degree1_isomorphism_check,
    gorenstein_quotient,
    has_poincare_duality,
    lefschetz_subalgebra,
    proportionality_scalar,
)
from .fan import gz_fan
from .flag import MAX_N, betti_numbers, borel_oracle, flag_cohomology
from .mw import divisor_weight, mw_algebra, weight_coordinates
from .polytope import gz_polytope


class TheoremCheckFailed(RuntimeError):
    pass


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class VerificationReport:
    n: int
    seed: int
    displacement_vector: tuple = ()
    mw_ranks: list = field(default_factory=list)
    lefschetz_dims: list = field(default_factory=list)
    lefschetz_has_duality: bool | None = None
    gorenstein_dims: list = field(default_factory=list)
    flag_dims: list = field(default_factory=list)
    borel_dims: list = field(default_factory=list)
    phi: list = field(default_factory=list)
    scalar: Fraction | None = None
    polynomial_identity: bool = False
    checks: dict = field(default_factory=dict)
    failed_stage: str | None = None
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values()) and self.failed_stage is None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "n": self.n,
            "seed": self.seed,
            "displacement_vector": list(self.displacement_vector),
            "mw_ranks": self.mw_ranks,
            "lefschetz_dims": self.lefschetz_dims,
            "lefschetz_has_poincare_duality": self.lefschetz_has_duality,
            "gorenstein_dims": self.gorenstein_dims,
            "flag_dims": self.flag_dims,
            "borel_dims": self.borel_dims,
            "phi": [[_fmt(x) for x in row] for row in self.phi],
            "top_polynomial_identity": self.polynomial_identity,
            "scalar": None if self.scalar is None else _fmt(self.scalar),
            "checks": dict(self.checks),
            "failed_stage": self.failed_stage,
            "status": self.status,
        }
        if include_timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out


def linearized_divisor_map(fan, basis1, n: int, rng: random.Random | None = None, checks: int = 3):
    """Rows: coordinates in ``basis1`` of the divisor weight change per unit step in lam_k, k = 2..n.

    The map is read off by differencing at the base weight ``2 * (0, 1, ..., n-1)``
    and then confirmed to be linear at a few random regular weights.
    """
    base = [2 * i for i in range(n)]

    def coords(lam):
        w = divisor_weight(fan, gz_polytope(lam))
        return weight_coordinates(basis1, [w])[0]

    c0 = coords(base)
    phi = []
    for k in range(1, n):
        lam = list(base)
        lam[k] += 1
        phi.append([a - b for a, b in zip(coords(lam), c0)])
    rng = rng or random.Random(0)
    linear = True
    for _ in range(checks):
        lam = [0]
        for _k in range(n - 1):
            lam.append(lam[-1] + rng.randint(1, 6))
        expected = [sum(lam[k + 1] * phi[k][j] for k in range(n - 1)) for j in range(len(basis1))]
        if coords(lam) != expected:
            linear = False
    return phi, linear


def verify_main_theorem(n: int, seed: int = 0, allow_large: bool = False,
                        skip_gorenstein: bool = False) -> VerificationReport:
    """Run every stage and collect the outcome in a report.

    ``skip_gorenstein`` compares the Lefschetz subalgebra itself with the
    flag cohomology; it exists as a negative control and fails for n >= 3.
    """
    if n < 2 or (n > MAX_N and not allow_large):
        raise ValueError(f"n must be between 2 and {MAX_N} (use allow_large for more)")
    rep = VerificationReport(n=n, seed=seed)
    clock = time.perf_counter

    t = clock()
    fan = gz_fan(n)
    MW, bases, v = mw_algebra(fan, seed)
    rep.displacement_vector = v
    rep.mw_ranks = list(MW.dims)
    rep.timings["mw_ring"] = clock() - t

    t = clock()
    L = lefschetz_subalgebra(MW)
    rep.lefschetz_dims = list(L.dims)
    rep.lefschetz_has_duality = has_poincare_duality(L)
    G = gorenstein_quotient(L)
    rep.gorenstein_dims = list(G.dims)
    rep.timings["lefschetz_gorenstein"] = clock() - t

    t = clock()
    A = flag_cohomology(n, seed)
    rep.flag_dims = list(A.dims)
    rep.borel_dims = borel_oracle(n)
    rep.timings["flag_side"] = clock() - t

    t = clock()
    phi, linear = linearized_divisor_map(fan, bases[1], n, random.Random(seed))
    # phi maps onto MW^1 = L^1; L's degree-1 basis is MW's degree-1 basis
    rep.phi = phi
    rep.timings["phi"] = clock() - t

    t = clock()
    target = L if skip_gorenstein else G
    checks = rep.checks
    checks["mw_ring_structure"] = MW.dims[0] == 1 and MW.dims[-1] == 1
    checks["flag_dims_match_borel"] = rep.flag_dims == rep.borel_dims == betti_numbers(n)
    checks["flag_has_poincare_duality"] = has_poincare_duality(A)
    checks["gorenstein_has_poincare_duality"] = has_poincare_duality(G)
    checks["phi_linear"] = linear
    try:
        scalar = proportionality_scalar(A, L, phi)
    except ValueError:
        scalar = None
    rep.scalar = scalar
    rep.polynomial_identity = scalar is not None and degree1_isomorphism_check(A, L, phi, scalar)
    checks["top_polynomial_identity"] = rep.polynomial_identity
    checks["dims_match"] = list(target.dims) == rep.flag_dims
    if skip_gorenstein:
        checks["lefschetz_has_poincare_duality"] = bool(rep.lefschetz_has_duality)
    rep.timings["comparison"] = clock() - t
    rep.timings["total"] = sum(rep.timings.values())

    for stage in ("mw_ring_structure", "flag_dims_match_borel", "flag_has_poincare_duality",
                  "gorenstein_has_poincare_duality", "lefschetz_has_poincare_duality", "phi_linear",
                  "top_polynomial_identity", "dims_match"):
        if stage in checks and not checks[stage]:
            rep.failed_stage = stage
            break
    return rep
