"""Minkowski weights on complete fans and their cup product.

A codimension-k weight assigns a number to each cone of dimension
``n - k``; its ``values`` are aligned with ``fan.cones_of_dim(n - k)``.
Products use the fan displacement rule: a pair of cones contributes to
their common face when one meets a generic translate of the other, with
multiplicity ``[N : N_sigma + N_tau]``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fan import Fan, cone_facets, normal_fan
from .linalg import (
    INFINITE,
    coordinates,
    dot,
    int_rank,
    integer_kernel,
    lattice_index,
    rref,
)
from .polytope import Polytope


class NonGenericDisplacementError(ValueError):
    pass


class IncompleteFanError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MinkowskiWeight:
    fan: Fan
    codim: int
    values: tuple

    @property
    def cones(self) -> list[int]:
        return self.fan.cones_of_dim(self.fan.dim - self.codim)

    def value(self, cid: int):
        return self.values[self.cones.index(cid)]

    def as_dict(self) -> dict[int, object]:
        return dict(zip(self.cones, self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MinkowskiWeight):
            return NotImplemented
        return self.fan is other.fan and self.codim == other.codim and self.values == other.values

    def __hash__(self):
        return hash((self.codim, self.values))

    def __add__(self, other: "MinkowskiWeight") -> "MinkowskiWeight":
        _check_same(self, other)
        return MinkowskiWeight(self.fan, self.codim, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "MinkowskiWeight") -> "MinkowskiWeight":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "MinkowskiWeight":
        return MinkowskiWeight(self.fan, self.codim, tuple(scalar * a for a in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_dict(self, fan_ref: str | None = None) -> dict:
        return {"fan": fan_ref, "codim": self.codim,
                "values": {str(c): _jsonable(v) for c, v in zip(self.cones, self.values)}}

    @classmethod
    def from_dict(cls, fan: Fan, data: dict) -> "MinkowskiWeight":
        k = int(data["codim"])
        cones = fan.cones_of_dim(fan.dim - k)
        given = {int(c): _parse_number(v) for c, v in data["values"].items()}
        if not set(given) <= set(cones):
            raise ValueError(f"values given on cones that are not of codimension {k}")
        return cls(fan, k, tuple(given.get(c, 0) for c in cones))


def _jsonable(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def _parse_number(v):
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    return v


def _check_same(c: MinkowskiWeight, d: MinkowskiWeight):
    if c.fan is not d.fan or c.codim != d.codim:
        raise ValueError("weights live on different fans or codimensions")


# ---------------------------------------------------------------------------
# Balancing


def balancing_matrix(fan: Fan, k: int) -> list[list[int]]:
    """Rows ``<u, n_{sigma,tau}>`` over all ``tau`` of dim ``n-k-1`` and ``u`` in ``M(tau)``.

    Columns follow ``fan.cones_of_dim(n - k)``.
    """
    n = fan.dim
    cols = fan.cones_of_dim(n - k)
    pos = {c: i for i, c in enumerate(cols)}
    rows = []
    for tau in fan.cones_of_dim(n - k - 1):
        star = fan.cones_containing(tau, n - k)
        gens = {s: fan.quotient_generator(s, tau) for s in star}
        for u in fan.orthogonal_basis(tau):
            row = [0] * len(cols)
            for s in star:
                row[pos[s]] = dot(u, gens[s])
            rows.append(row)
    return rows


def is_balanced(w: MinkowskiWeight) -> bool:
    return all(dot(row, w.values) == 0 for row in balancing_matrix(w.fan, w.codim))


def mw_basis(fan: Fan, k: int, check_complete: bool = True) -> list[MinkowskiWeight]:
    """Lattice basis (HNF-canonical) of the codimension-k Minkowski weights."""
    if check_complete and not _is_complete(fan):
        raise IncompleteFanError("fan not complete")
    n = fan.dim
    if not 0 <= k <= n:
        raise ValueError(f"codimension {k} outside 0..{n}")
    ncols = len(fan.cones_of_dim(n - k))
    ker = integer_kernel(balancing_matrix(fan, k), ncols)
    return [MinkowskiWeight(fan, k, tuple(row)) for row in ker]


def _is_complete(fan: Fan) -> bool:
    cache = fan.__dict__.setdefault("_mw_cache", {})
    if "complete" not in cache:
        cache["complete"] = fan.is_complete()
    return cache["complete"]


def mw_ranks(fan: Fan) -> list[int]:
    return [len(mw_basis(fan, k)) for k in range(fan.dim + 1)]


def one(fan: Fan) -> MinkowskiWeight:
    """The identity of the ring: constant 1 on maximal cones."""
    return MinkowskiWeight(fan, 0, tuple([1] * len(fan.cones_of_dim(fan.dim))))


# ---------------------------------------------------------------------------
# Displacement vectors and the cup product


def strongly_generic(fan: Fan, v: Sequence) -> bool:
    """``v`` avoids every hyperplane spanned by rays of the fan.

    This implies genericity for products in every pair of codimensions.
    """
    n = fan.dim
    if not any(v):
        return False
    for sub in itertools.combinations(fan.rays, n - 1):
        if n > 1 and int_rank(sub) != n - 1:
            continue
        normal = integer_kernel(list(sub), n)[0] if sub else None
        if normal is not None and dot(normal, v) == 0:
            return False
    return True


def displacement_vector(fan: Fan, seed: int = 0) -> tuple[int, ...]:
    """Deterministic pseudorandom displacement, resampled until strongly generic.

    Cones are invariant under positive scaling, so an integer vector stands
    for any rational multiple of it.
    """
    rng = random.Random(seed)
    while True:
        v = tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(fan.dim))
        if strongly_generic(fan, v):
            return v


def genericity_check(fan: Fan, p: int, q: int, v: Sequence) -> bool:
    """True iff every pair of cones of codims (p, q) misses ``tau + v`` or meets it transversally."""
    from .fan import displacement_status
    n = fan.dim
    for sigma in fan.cones_of_dim(n - p):
        for tau in fan.cones_of_dim(n - q):
            if displacement_status(fan, sigma, tau, v) == "degenerate":
                return False
    return True


def cup_table(fan: Fan, p: int, q: int, v: Sequence) -> dict[int, list[tuple[int, int, int]]]:
    """For each cone gamma of codim p+q the contributing ``(sigma, tau, multiplicity)``.

    Raises :class:`NonGenericDisplacementError` if a candidate pair meets
    ``tau + v`` non-transversally.
    """
    n = fan.dim
    if p + q > n:
        raise ValueError("codimensions add up to more than the dimension")
    cache = fan.__dict__.setdefault("_mw_cache", {})
    key = ("cup", p, q, tuple(v))
    if key in cache:
        return cache[key]
    table = {}
    g = n - p - q
    for gamma in fan.cones_of_dim(g):
        gamma_rays = set(fan.cones[gamma])
        proj = fan.orthogonal_basis(gamma)
        vbar = [dot(u, v) for u in proj]
        entries = []
        for sigma in fan.cones_containing(gamma, n - p):
            for tau in fan.cones_containing(gamma, n - q):
                if set(fan.cones[sigma]) & set(fan.cones[tau]) != gamma_rays:
                    continue
                gens = [[dot(u, fan.rays[i]) for u in proj] for i in fan.cones[sigma] if i not in gamma_rays]
                gens += [[-dot(u, fan.rays[i]) for u in proj] for i in fan.cones[tau] if i not in gamma_rays]
                if not _meets_quotient(gens, vbar, p + q):
                    continue
                m = lattice_index(fan.lattice_basis(sigma), fan.lattice_basis(tau), n)
                if m == INFINITE:
                    raise NonGenericDisplacementError("non-generic displacement")
                entries.append((sigma, tau, m))
        table[gamma] = entries
    cache[key] = table
    return table


def _meets_quotient(gens, vbar, d) -> bool:
    """``vbar`` in the cone spanned by ``gens`` inside Q^d, insisting on genericity."""
    if d == 0:
        return True
    if (int_rank(gens) if gens else 0) < d:
        if int_rank(gens + [vbar]) == (int_rank(gens) if gens else 0):
            raise NonGenericDisplacementError("non-generic displacement")
        return False
    facets, _ = cone_facets(gens, d)
    vals = [dot(u, vbar) for u in facets]
    if any(x == 0 for x in vals):
        raise NonGenericDisplacementError("non-generic displacement")
    return all(x > 0 for x in vals)


def mw_cup(c: MinkowskiWeight, d: MinkowskiWeight, v: Sequence | None = None) -> MinkowskiWeight:
    """Cup product of two weights on the same fan via fan displacement."""
    if c.fan is not d.fan:
        raise ValueError("weights live on different fans")
    fan = c.fan
    if v is None:
        v = displacement_vector(fan)
    table = cup_table(fan, c.codim, d.codim, v)
    cv, dv = c.as_dict(), d.as_dict()
    k = c.codim + d.codim
    values = tuple(sum(m * cv[s] * dv[t] for s, t, m in table[gamma])
                   for gamma in fan.cones_of_dim(fan.dim - k))
    out = MinkowskiWeight(fan, k, values)
    assert is_balanced(out), "product is not balanced"
    return out


def degree(w: MinkowskiWeight):
    """Value of a top-codimension weight on the origin cone."""
    if w.codim != w.fan.dim:
        raise ValueError("degree is only defined in top codimension")
    return w.values[0]


def cup_power(w: MinkowskiWeight, k: int, v: Sequence | None = None) -> MinkowskiWeight:
    out = one(w.fan)
    for _ in range(k):
        out = mw_cup(out, w, v)
    return out


# ---------------------------------------------------------------------------
# Divisors


class NormalFanMismatchError(ValueError):
    pass


def cartier_data(fan: Fan, P: Polytope) -> dict[int, tuple]:
    """Vertex of P selected by each maximal cone (the maximizer of an interior functional)."""
    out = {}
    for sigma in fan.cones_of_dim(fan.dim):
        u = fan.relative_interior_point(sigma)
        vals = [dot(u, x) for x in P.vertices]
        top = max(vals)
        winners = [x for x, t in zip(P.vertices, vals) if t == top]
        if len(winners) != 1:
            raise NormalFanMismatchError("normal fan mismatch")
        out[sigma] = winners[0]
    return out


def divisor_weight(fan: Fan, P: Polytope, allow_rational: bool = False) -> MinkowskiWeight:
    """Codimension-1 weight of the divisor of P: lattice lengths of the edges of P."""
    if not P.is_full_dimensional or normal_fan(P) != fan:
        raise NormalFanMismatchError("normal fan mismatch")
    m = cartier_data(fan, P)
    if not allow_rational and any(a.denominator != 1 for x in m.values() for a in x):
        raise ValueError("non-lattice vertex")
    n = fan.dim
    values = []
    for tau in fan.cones_of_dim(n - 1):
        sigma, other = fan.cones_containing(tau, n)
        u = fan.quotient_generator(sigma, tau)
        val = dot([a - b for a, b in zip(m[sigma], m[other])], u)
        values.append(int(val) if val.denominator == 1 else val)
    w = MinkowskiWeight(fan, 1, tuple(values))
    assert is_balanced(w), "divisor weight is not balanced"
    return w


# ---------------------------------------------------------------------------
# Smooth complete fans: the Stanley-Reisner presentation as an oracle


@dataclass
class SmoothChowRing:
    """``Q[D_1..D_r] / (SR + linear relations)`` for a smooth complete fan."""

    fan: Fan
    dims: list[int]
    standard: list[list[tuple[int, ...]]]  # per degree, standard monomials (exponent vectors)
    _reducers: list

    def reduce(self, k: int, poly: dict[tuple[int, ...], Fraction]) -> list[Fraction]:
        """Coordinates of a degree-k polynomial in the standard monomial basis."""
        monos, pivots, R = self._reducers[k]
        col = {m: i for i, m in enumerate(monos)}
        vec = [Fraction(0)] * len(monos)
        for m, c in poly.items():
            vec[col[m]] += c
        for row, p in zip(R, pivots):
            if vec[p]:
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, row)]
        return [vec[col[m]] for m in self.standard[k]]

    def multiply(self, i: int, x: Sequence, j: int, y: Sequence) -> list[Fraction]:
        poly: dict[tuple[int, ...], Fraction] = {}
        for a, ma in zip(x, self.standard[i]):
            if not a:
                continue
            for b, mb in zip(y, self.standard[j]):
                if b:
                    m = tuple(s + t for s, t in zip(ma, mb))
                    poly[m] = poly.get(m, 0) + a * b
        return self.reduce(i + j, poly)

    def degree(self, x: Sequence) -> Fraction:
        """Top-degree functional normalized by ``D_sigma = 1`` on a maximal cone."""
        n = self.fan.dim
        sigma = self.fan.cones[self.fan.cones_of_dim(n)[0]]
        ref = self.reduce(n, {tuple(int(i in sigma) for i in range(len(self.fan.rays))): Fraction(1)})
        (k, r), = [(k, r) for k, r in enumerate(ref) if r]
        return x[k] / r

    def to_weight(self, k: int, x: Sequence) -> MinkowskiWeight:
        """Minkowski weight ``sigma -> deg(x * D_sigma)`` on cones of codim k."""
        fan = self.fan
        n = fan.dim
        vals = []
        for sigma in fan.cones_of_dim(n - k):
            mono = tuple(int(i in fan.cones[sigma]) for i in range(len(fan.rays)))
            prod = self.multiply(k, x, n - k, self.reduce(n - k, {mono: Fraction(1)}))
            val = self.degree(prod)
            vals.append(int(val) if val.denominator == 1 else val)
        return MinkowskiWeight(fan, k, tuple(vals))


def mw_smooth_oracle(fan: Fan) -> SmoothChowRing:
    if not fan.is_smooth():
        raise ValueError("fan not smooth")
    n, r = fan.dim, len(fan.rays)
    faces = {frozenset(c) for c in fan.cones}
    nonfaces = [s for k in range(1, n + 2) for s in itertools.combinations(range(r), k)
                if frozenset(s) not in faces and all(frozenset(t) in faces for t in itertools.combinations(s, k - 1))]
    gens = [({tuple(int(i in s) for i in range(r)): Fraction(1)}, len(s)) for s in nonfaces]
    for e in range(n):
        lin = {}
        for i, ray in enumerate(fan.rays):
            if ray[e]:
                lin[tuple(int(t == i) for t in range(r))] = Fraction(ray[e])
        gens.append((lin, 1))
    dims, standard, reducers = [], [], []
    for k in range(n + 1):
        monos = sorted(_monomials(r, k), reverse=True)
        col = {m: i for i, m in enumerate(monos)}
        rows = []
        for g, dg in gens:
            if dg > k:
                continue
            for m in _monomials(r, k - dg):
                row = [Fraction(0)] * len(monos)
                for gm, c in g.items():
                    row[col[tuple(a + b for a, b in zip(gm, m))]] += c
                rows.append(row)
        R, pivots = rref(rows, len(monos)) if rows else ([], [])
        R = [row for row in R if any(row)]
        std = [m for i, m in enumerate(monos) if i not in pivots]
        dims.append(len(std))
        standard.append(std)
        reducers.append((monos, pivots, R))
    return SmoothChowRing(fan, dims, standard, reducers)


def _monomials(r: int, k: int):
    if r == 0:
        if k == 0:
            yield ()
        return
    for first in range(k, -1, -1):
        for rest in _monomials(r - 1, k - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# The ring as a graded Q-algebra


def weight_coordinates(basis: Sequence[MinkowskiWeight], weights: Sequence[MinkowskiWeight]) -> list[list[Fraction]]:
    """Coordinates of weights in a basis of the same codimension."""
    return coordinates([b.values for b in basis], [w.values for w in weights])


def mw_algebra(fan: Fan, seed: int = 0, v: Sequence | None = None):
    """The Minkowski-weight ring over Q in the HNF bases of :func:`mw_basis`.

    Returns ``(algebra, bases, v)``. Structure constants are computed on
    demand with the displacement vector ``v`` (derived from ``seed`` when
    not given).
    """
    from .algebra import GradedAlgebra

    n = fan.dim
    if v is None:
        v = displacement_vector(fan, seed)
    bases = [mw_basis(fan, k) for k in range(n + 1)]
    dims = [len(b) for b in bases]

    def table_fn(i: int, j: int):
        prods = [mw_cup(a, b, v) for a in bases[i] for b in bases[j]]
        coords = weight_coordinates(bases[i + j], prods) if dims[i + j] else [[] for _ in prods]
        return [coords[x * dims[j]:(x + 1) * dims[j]] for x in range(dims[i])]

    top = [bases[n][0].values[0]] if dims[n] == 1 else []
    return GradedAlgebra(n, dims, top, table_fn), bases, tuple(v)
