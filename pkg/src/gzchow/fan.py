"""Complete rational polyhedral fans.

A :class:`Fan` stores primitive integer rays and every cone as the sorted
tuple of indices of the rays it contains (the origin is the empty tuple).
Cone ids are positions in ``fan.cones``, which is sorted by dimension and
then by ray tuple, so ids are deterministic for a given ray order.

Normal fans use outer normals: the cone of a face F is generated by the
outer normals of the facets containing F.
"""
from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (
    coordinates,
    dot,
    hnf,
    int_rank,
    integer_kernel,
    primitive,
    saturate,
    xgcd,
)
from .polytope import Polytope, gz_polytope


class FanError(ValueError):
    pass


def cone_facets(gens: Sequence[Sequence[int]], d: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """H-description of ``cone(gens)``: ``(facet normals, span equations)``.

    ``x`` is in the cone iff ``<e, x> == 0`` for every equation row and
    ``<u, x> >= 0`` for every facet normal. Facet normals lie in the span.
    """
    gens = [list(g) for g in gens if any(g)]
    eqs = integer_kernel(gens, d) if gens else [[int(i == j) for j in range(d)] for i in range(d)]
    r = d - len(eqs)
    facets = set()
    if r == 0:
        return [], eqs
    for sub in itertools.combinations(gens, r - 1):
        rows = list(sub) + eqs
        if rows and int_rank(rows) != d - 1:
            continue
        ker = integer_kernel(rows, d)
        if len(ker) != 1:
            continue
        u = ker[0]
        vals = [dot(u, g) for g in gens]
        if all(v >= 0 for v in vals):
            facets.add(tuple(u))
        elif all(v <= 0 for v in vals):
            facets.add(tuple(-a for a in u))
    return sorted(facets), eqs


def in_cone(x: Sequence, facets, eqs, strict: bool = False) -> bool:
    if any(dot(e, x) != 0 for e in eqs):
        return False
    if strict:
        return all(dot(u, x) > 0 for u in facets)
    return all(dot(u, x) >= 0 for u in facets)


class Fan:
    """A rational polyhedral fan given by rays and all of its cones."""

    def __init__(self, dim: int, rays: Sequence[Sequence[int]], cones: Iterable[Sequence[int]]):
        self.dim = dim
        self.rays: list[tuple[int, ...]] = [primitive([int(a) for a in r]) for r in rays]
        if any(len(r) != dim for r in self.rays):
            raise FanError("ray dimension does not match the fan dimension")
        if len(set(self.rays)) != len(self.rays):
            raise FanError("repeated ray")
        cones = {tuple(sorted(set(c))) for c in cones}
        cones.add(())
        dims = {c: int_rank([self.rays[i] for i in c]) if c else 0 for c in cones}
        self.cones: list[tuple[int, ...]] = sorted(cones, key=lambda c: (dims[c], c))
        self.cone_dims: list[int] = [dims[c] for c in self.cones]
        self._id = {frozenset(c): i for i, c in enumerate(self.cones)}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_maximal_cones(cls, dim: int, rays: Sequence[Sequence[int]],
                           maximal: Iterable[Sequence[int]]) -> "Fan":
        """Close a list of maximal cones (ray index sets) under taking faces."""
        rays = [primitive(r) for r in rays]
        cones = set()
        for cone in maximal:
            cone = frozenset(cone)
            facets, _ = cone_facets([rays[i] for i in sorted(cone)], dim)
            faces = {cone}
            frontier = {frozenset(i for i in cone if dot(u, rays[i]) == 0) for u in facets}
            while frontier:
                faces |= frontier
                frontier = {a & b for a in frontier for b in faces} - faces
            cones |= faces
        return cls(dim, rays, [tuple(sorted(c)) for c in cones])

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.cones)

    def cone_id(self, ray_indices: Iterable[int]) -> int:
        return self._id[frozenset(ray_indices)]

    def ray_index(self, vector: Sequence[int]) -> int:
        return self.rays.index(tuple(vector))

    def cone_rays(self, cid: int) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in self.cones[cid]]

    def cones_of_dim(self, k: int) -> list[int]:
        return self._by_dim.get(k, [])

    @cached_property
    def _by_dim(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for cid, k in enumerate(self.cone_dims):
            out.setdefault(k, []).append(cid)
        return out

    @cached_property
    def _cofaces(self) -> list[list[int]]:
        sets = [frozenset(c) for c in self.cones]
        return [[j for j, t in enumerate(sets) if s <= t] for s in sets]

    def cones_containing(self, gamma: int, k: int) -> list[int]:
        """Ids of the k-dimensional cones having cone ``gamma`` as a face."""
        return [j for j in self._cofaces[gamma] if self.cone_dims[j] == k]

    def faces_of(self, cid: int) -> list[int]:
        s = frozenset(self.cones[cid])
        return [j for j, c in enumerate(self.cones) if s.issuperset(c)]

    def common_face(self, a: int, b: int) -> int:
        return self._id[frozenset(self.cones[a]) & frozenset(self.cones[b])]

    def lattice_basis(self, cid: int) -> list[list[int]]:
        """Basis of ``N_sigma = span(sigma) ∩ Z^n``."""
        return self._lattices[cid]

    @cached_property
    def _lattices(self) -> list[list[list[int]]]:
        return [saturate(self.cone_rays(c), self.dim) if self.cones[c] else []
                for c in range(len(self.cones))]

    def orthogonal_basis(self, cid: int) -> list[list[int]]:
        """Basis of ``M(tau)``, the lattice of integer functionals vanishing on tau."""
        return self._orthogonals[cid]

    @cached_property
    def _orthogonals(self) -> list[list[list[int]]]:
        return [integer_kernel(self.cone_rays(c), self.dim) for c in range(len(self.cones))]

    def cone_inequalities(self, cid: int):
        return self._halfspaces[cid]

    @cached_property
    def _halfspaces(self):
        return [cone_facets(self.cone_rays(c), self.dim) for c in range(len(self.cones))]

    def relative_interior_point(self, cid: int) -> tuple[int, ...]:
        """Sum of the rays of the cone (a lattice point in its relative interior)."""
        return tuple(sum(col) for col in zip(*self.cone_rays(cid))) if self.cones[cid] \
            else tuple([0] * self.dim)

    def contains(self, cid: int, x: Sequence) -> bool:
        facets, eqs = self._halfspaces[cid]
        return in_cone(x, facets, eqs)

    def quotient_generator(self, sigma: int, tau: int) -> tuple[int, ...]:
        """A lattice vector generating ``N_sigma / N_tau`` on the side of sigma.

        ``tau`` must be a facet of ``sigma``. The lift is fixed by the
        canonical (HNF) lattice bases so the result is deterministic.
        """
        return self._quotient_generators[(sigma, tau)]

    @cached_property
    def _quotient_generators(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out = {}
        for sigma, k in enumerate(self.cone_dims):
            if k == 0:
                continue
            B = self.lattice_basis(sigma)
            for tau in self.faces_of(sigma):
                if self.cone_dims[tau] != k - 1:
                    continue
                out[(sigma, tau)] = _quotient_generator(B, self.lattice_basis(tau),
                                                        self.cone_rays(sigma), self.dim)
        return out

    # -- structure checks ---------------------------------------------------

    @property
    def maximal_cones(self) -> list[int]:
        return [c for c in range(len(self.cones)) if len(self._cofaces[c]) == 1]

    def is_simplicial(self) -> bool:
        return all(len(c) == k for c, k in zip(self.cones, self.cone_dims))

    def is_smooth(self) -> bool:
        """Every cone is generated by part of a lattice basis."""
        for c, k in zip(self.cones, self.cone_dims):
            if len(c) != k:
                return False
            if c and hnf([self.rays[i] for i in c], self.dim) != self.lattice_basis(self.cone_id(c)):
                return False
        return True

    def is_complete(self, samples: int = 200, seed: int = 0) -> bool:
        n = self.dim
        if n == 0:
            return True
        top = self.cones_of_dim(n)
        if not top or any(self.cone_dims[c] != n for c in self.maximal_cones):
            return False
        for tau in self.cones_of_dim(n - 1):
            if len(self.cones_containing(tau, n)) != 2:
                return False
        rng = random.Random(seed)
        for _ in range(samples):
            x = [rng.randint(-1000, 1000) for _ in range(n)]
            if not any(self.contains(c, x) for c in top):
                return False
        return True

    # -- comparison and serialization --------------------------------------

    def key(self) -> tuple:
        """Ray-labelled cone structure, independent of ray order."""
        return (self.dim, frozenset(frozenset(self.rays[i] for i in c) for c in self.cones))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self) -> str:
        counts = [len(self.cones_of_dim(k)) for k in range(self.dim + 1)]
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, cones_by_dim={counts})"

    def to_dict(self) -> dict:
        containment = []
        for cid, k in enumerate(self.cone_dims):
            for parent in self.cones_containing(cid, k + 1):
                containment.append([cid, parent])
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "cones": [{"id": i, "dim": k, "rays": list(c)}
                      for i, (c, k) in enumerate(zip(self.cones, self.cone_dims))],
            "containment": containment,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        fan = cls(data["dim"], data["rays"], [c["rays"] for c in data["cones"]])
        for c in data["cones"]:
            cid = fan.cone_id(c["rays"])
            if cid != c["id"] or fan.cone_dims[cid] != c["dim"]:
                raise FanError("cone ids or dimensions are inconsistent with the ray data")
        return fan


def _quotient_generator(B_sigma, B_tau, sigma_rays, n) -> tuple[int, ...]:
    # coordinates of N_tau inside N_sigma, then the primitive functional killing them
    T = coordinates(B_sigma, B_tau) if B_tau else []
    k = len(B_sigma)
    T = [[int(a) for a in row] for row in T]
    y = integer_kernel(T, k)[0] if T else [1]
    # a . y == 1 for some integer a
    a = [0] * k
    g = 0
    for i, yi in enumerate(y):
        g2, s, t = xgcd(g, yi)
        a = [s * x for x in a]
        a[i] += t
        g = g2
    if g != 1:
        raise FanError("lattice of a face is not saturated in the cone lattice")
    w = [sum(ai * b[j] for ai, b in zip(a, B_sigma)) for j in range(n)]
    # orient towards sigma: the functional must be positive on some ray of sigma
    fy = lambda v: dot([int(c) for c in coordinates(B_sigma, [v])[0]], y)
    if max(fy(r) for r in sigma_rays) <= 0:
        w = [-x for x in w]
    return tuple(w)


def normal_fan(P: Polytope) -> Fan:
    """Outer normal fan of a full-dimensional polytope.

    Ray ``i`` is the outer normal of ``P.inequalities[i]``.
    """
    if not P.is_full_dimensional:
        raise FanError("not full-dimensional")
    rays = [a for a, _ in P.inequalities]
    cones = []
    for face in P.faces:
        cones.append(tuple(i for i, fv in enumerate(P.facet_vertices) if face <= fv))
    return Fan(P.ambient_dim, rays, cones)


def gz_fan(n: int) -> Fan:
    """The common normal fan of the regular GZ polytopes in R^{n(n-1)/2}."""
    if n < 2:
        raise ValueError("need n >= 2")
    return normal_fan(gz_polytope(list(range(n))))


def hypersimplex_fan() -> Fan:
    """Fan over the faces of the cube with vertices (±1, ±1, ±1)."""
    rays = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)]
    rays += [tuple(-a for a in r) for r in rays]
    maximal = [[i for i, r in enumerate(rays) if r[axis] == s] for axis in range(3) for s in (1, -1)]
    return Fan.from_maximal_cones(3, rays, maximal)


def projective_line_fan() -> Fan:
    return Fan.from_maximal_cones(1, [(1,), (-1,)], [[0], [1]])


def projective_plane_fan() -> Fan:
    return Fan.from_maximal_cones(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]])


def p1xp1_fan() -> Fan:
    return Fan.from_maximal_cones(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                                  [[0, 1], [1, 2], [2, 3], [3, 0]])


FIXTURES = {
    "P1": projective_line_fan,
    "P2": projective_plane_fan,
    "P1xP1": p1xp1_fan,
    "hypersimplex": hypersimplex_fan,
    "gz2": lambda: gz_fan(2),
    "gz3": lambda: gz_fan(3),
    "gz4": lambda: gz_fan(4),
}


# ---------------------------------------------------------------------------
# Displacement of cones


def meets(fan: Fan, sigma: int, tau: int, v: Sequence) -> bool:
    """Whether ``sigma ∩ (tau + v)`` is nonempty (exact)."""
    return displacement_status(fan, sigma, tau, v) != "empty"


def displacement_status(fan: Fan, sigma: int, tau: int, v: Sequence) -> str:
    """Classify ``sigma ∩ (tau + v)``.

    ``"empty"``; ``"transverse"`` when the spans of sigma and tau add up to
    the whole space and ``v`` lies in the interior of ``sigma - tau``;
    otherwise ``"degenerate"`` (the intersection touches a proper face or the
    spans are not transverse).
    """
    gens = [list(r) for r in fan.cone_rays(sigma)] + [[-a for a in r] for r in fan.cone_rays(tau)]
    facets, eqs = cone_facets(gens, fan.dim)
    if not in_cone(v, facets, eqs):
        return "empty"
    span = int_rank(gens) if gens else 0
    if span == fan.dim and in_cone(v, facets, eqs, strict=True):
        return "transverse"
    return "degenerate"
