"""Exact rational polytopes and the Gelfand-Zetlin family.

A :class:`Polytope` keeps both descriptions: the irredundant facet
inequalities ``<normal, x> <= rhs`` (normals primitive integer vectors), the
affine-hull equations when the polytope is not full-dimensional, and the
exact rational vertices. Faces are frozensets of vertex indices.

GZ coordinates are ordered row-major over the triangular array: for weight
``lam = (l_1 <= ... <= l_n)`` the point is ``(x_11, ..., x_1(n-1), x_21, ...,
x_(n-1)1)`` where row ``i`` has ``n - i`` entries and every small triangle
``a, b`` over ``c`` means ``a <= c <= b``.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (
    InconsistentSystemError,
    clear_denominators,
    dot,
    int_det,
    int_rank,
    integer_kernel,
    rref,
    solve,
)

Vector = tuple[Fraction, ...]


class UnboundedError(ValueError):
    pass


class NotDominantError(ValueError):
    pass


class NotGZError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    if not all(isinstance(a, int) for a in points[0]):
        points, _ = _scaled_ints(points)
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return int_rank(diffs) if diffs else 0


def _scaled_ints(points: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    den = 1
    for p in points:
        for a in p:
            den = math.lcm(den, a.denominator)
    return [[int(a * den) for a in p] for p in points], den


def _hull_equations(points: Sequence[Vector], d: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """Integer equations ``<a, x> = b`` cutting out the affine hull of the points."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    ints = [list(clear_denominators(v)) for v in diffs if any(v)]
    normals = integer_kernel(ints, d) if ints else [[int(i == j) for j in range(d)] for i in range(d)]
    return [(tuple(a), dot(a, p0)) for a in normals]


class Polytope:
    """Bounded rational polytope with H- and V-descriptions and face lattice."""

    def __init__(self, ambient_dim: int,
                 inequalities: Iterable[tuple[Sequence[int], Fraction]],
                 vertices: Iterable[Sequence[Fraction]],
                 equations: Iterable[tuple[Sequence[int], Fraction]] = ()):
        # Trusted constructor: vertices must be exactly the vertex set. The
        # inequality normals are candidate facet directions; right-hand sides
        # are recomputed as support values and non-facets are dropped.
        self.ambient_dim = d = ambient_dim
        verts = sorted({tuple(_frac(a) for a in v) for v in vertices})
        if not verts:
            raise ValueError("empty polytope")
        self.vertices: list[Vector] = verts
        self.dim = _affine_rank(verts)
        ipts, den = _scaled_ints(verts)
        self._ipts, self._den = ipts, den
        if self.dim < d:
            self.equations = _hull_equations(verts, d)
            eq_rows = [list(a) for a, _ in self.equations]
        else:
            self.equations = []
            eq_rows = []
        facets = []
        seen = set()
        for a, _ in inequalities:
            a = [_frac(x) for x in a]
            if eq_rows:
                a = _project_out(a, eq_rows)
            a_int = clear_denominators(a)
            if not any(a_int):
                continue
            vals = [sum(x * y for x, y in zip(a_int, p)) for p in ipts]
            top = max(vals)
            tight = frozenset(i for i, v in enumerate(vals) if v == top)
            if len(tight) == len(verts) or tight in seen:
                continue
            if _affine_rank([verts[i] for i in tight]) == self.dim - 1:
                seen.add(tight)
                facets.append((a_int, Fraction(top, den), tight))
        self.inequalities: list[tuple[tuple[int, ...], Fraction]] = [(a, b) for a, b, _ in facets]
        self.facet_vertices: list[frozenset[int]] = [t for _, _, t in facets]

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_inequalities(cls, normals: Sequence[Sequence], rhs: Sequence) -> "Polytope":
        """Polytope ``{x : normals[i] . x <= rhs[i]}``; raises if unbounded or empty."""
        d = len(normals[0])
        # integer rows a . x <= b / den
        A, b = [], []
        for row, r in zip(normals, rhs):
            row = [_frac(a) for a in row]
            a_int = clear_denominators(row)
            if not any(a_int):
                if _frac(r) < 0:
                    raise ValueError("empty polytope")
                continue
            scale = next(x / y for x, y in zip(row, a_int) if y)
            A.append(list(a_int))
            b.append(_frac(r) / scale)
        den = math.lcm(*(x.denominator for x in b))
        b = [int(x * den) for x in b]
        if int_rank(A) < d:
            raise UnboundedError("unbounded: inequalities have a nontrivial lineality space")
        for rows in itertools.combinations(range(len(A)), d - 1):
            sub = [A[i] for i in rows]
            if d > 1 and int_rank(sub) < d - 1:
                continue
            ker = integer_kernel(sub, d) if sub else [[1]]
            for ray in (ker[0], [-t for t in ker[0]]):
                if all(dot(a, ray) <= 0 for a in A):
                    raise UnboundedError("unbounded: recession cone is nontrivial")
        verts = set()
        for rows in itertools.combinations(range(len(A)), d):
            sub = [A[i] for i in rows]
            det = int_det(sub)
            if det == 0:
                continue
            x = []
            for k in range(d):
                cols = [r[:k] + [b[i]] + r[k + 1:] for r, i in zip(sub, rows)]
                x.append(int_det(cols))
            # vertex is x / (det * den)
            scale = det * den
            if scale < 0:
                x, scale = [-t for t in x], -scale
            if all(dot(a, x) <= bi * det * (1 if det > 0 else -1) for a, bi in zip(A, b)):
                verts.add(tuple(Fraction(t, scale) for t in x))
        if not verts:
            raise ValueError("empty polytope")
        return cls(d, [(a, 0) for a in A], verts)

    @classmethod
    def from_vertices(cls, points: Iterable[Sequence]) -> "Polytope":
        """Convex hull of a small point set (brute force over supporting hyperplanes)."""
        pts = sorted({tuple(_frac(a) for a in p) for p in points})
        d = len(pts[0])
        k = _affine_rank(pts)
        eqs = _hull_equations(pts, d) if k < d else []
        directions = []
        for i, j in itertools.combinations(range(len(pts)), 2):
            directions.append(clear_denominators([a - b for a, b in zip(pts[i], pts[j])]))
        normals = _candidate_normals(directions, [a for a, _ in eqs], k, d)
        verts = _extreme_points(pts, normals, eqs, d)
        return cls(d, [(u, 0) for u in normals], verts)

    # -- queries ------------------------------------------------------------

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def faces(self) -> list[frozenset[int]]:
        """All nonempty faces as vertex-index sets, sorted by (dim, indices)."""
        full = frozenset(range(len(self.vertices)))
        found = {full}
        frontier = set(self.facet_vertices)
        while frontier:
            found |= frontier
            new = set()
            for f in frontier:
                for g in self.facet_vertices:
                    h = f & g
                    if h and h not in found:
                        new.add(h)
            frontier = new
        return sorted(found, key=lambda f: (self.face_dim(f), sorted(f)))

    def face_dim(self, face: frozenset[int]) -> int:
        return self._face_dims.setdefault(face, _affine_rank([self.vertices[i] for i in sorted(face)]))

    @cached_property
    def _face_dims(self) -> dict:
        return {}

    @cached_property
    def face_lattice(self) -> dict[frozenset[int], list[frozenset[int]]]:
        """Map each face to its facets (maximal proper subfaces)."""
        by_dim: dict[int, list[frozenset[int]]] = {}
        for f in self.faces:
            by_dim.setdefault(self.face_dim(f), []).append(f)
        return {f: [g for g in by_dim.get(self.face_dim(f) - 1, []) if g < f] for f in self.faces}

    def edges(self) -> list[tuple[int, int]]:
        return [tuple(sorted(f)) for f in self.faces if len(f) == 2 and self.face_dim(f) == 1]

    def contains(self, x: Sequence) -> bool:
        x = [_frac(a) for a in x]
        return (all(dot(a, x) <= b for a, b in self.inequalities)
                and all(dot(a, x) == b for a, b in self.equations))

    def translate(self, c: Sequence) -> "Polytope":
        c = [_frac(a) for a in c]
        return Polytope(self.ambient_dim,
                        [(a, b + dot(a, c)) for a, b in self.inequalities],
                        [tuple(x + y for x, y in zip(v, c)) for v in self.vertices])

    def scale(self, m) -> "Polytope":
        m = _frac(m)
        if m <= 0:
            raise ValueError("scale factor must be positive")
        return Polytope(self.ambient_dim,
                        [(a, b * m) for a, b in self.inequalities],
                        [tuple(x * m for x in v) for v in self.vertices])

    def support(self, u: Sequence) -> Fraction:
        return max(dot(u, v) for v in self.vertices)

    def h_key(self) -> tuple:
        """Canonical H-description, usable for equality tests."""
        eqs = sorted(_canonical_equations(self.equations, self.ambient_dim))
        return (self.ambient_dim, tuple(eqs), tuple(sorted(self.inequalities)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.vertices)))

    def __repr__(self) -> str:
        return (f"Polytope(ambient_dim={self.ambient_dim}, dim={self.dim}, "
                f"facets={len(self.inequalities)}, vertices={len(self.vertices)})")

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        ineqs = [{"normal": list(a), "rhs": str(b)} for a, b in self.inequalities]
        for a, b in self.equations:
            ineqs.append({"normal": list(a), "rhs": str(b)})
            ineqs.append({"normal": [-x for x in a], "rhs": str(-b)})
        return {
            "ambient_dim": self.ambient_dim,
            "inequalities": ineqs,
            "vertices": [[str(x) for x in v] for v in self.vertices],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Polytope":
        d = data["ambient_dim"]
        ineqs = [(row["normal"], Fraction(row["rhs"])) for row in data["inequalities"]]
        if data.get("vertices"):
            verts = [tuple(Fraction(x) for x in v) for v in data["vertices"]]
            if len(verts[0]) != d:
                raise ValueError("vertex dimension does not match ambient_dim")
            return cls(d, ineqs, verts)
        return cls.from_inequalities([a for a, _ in ineqs], [b for _, b in ineqs])


def _project_out(a, eq_rows):
    """Component of ``a`` orthogonal to the span of the equation normals."""
    G = [[Fraction(dot(r, s)) for s in eq_rows] for r in eq_rows]
    rhs = [dot(r, a) for r in eq_rows]
    coef = solve(G, rhs, len(eq_rows))
    return [x - sum(c * r[i] for c, r in zip(coef, eq_rows)) for i, x in enumerate(a)]


def _canonical_equations(eqs, d):
    if not eqs:
        return []
    R, _ = rref([list(a) + [b] for a, b in eqs], d + 1)
    return [tuple(row) for row in R if any(row)]


def _kernel_rays(rows: Sequence[Sequence[Fraction]], d: int) -> list[tuple]:
    if not rows:
        return [tuple(Fraction(int(i == j)) * s for j in range(d)) for i in range(d) for s in (1, -1)]
    from .linalg import rational_kernel
    ker = rational_kernel(rows, d)
    if len(ker) != 1:
        return []
    v = tuple(ker[0])
    return [v, tuple(-a for a in v)]


def _candidate_normals(directions, eq_normals, k, d):
    """Normals (both signs) of hyperplanes spanned by k-1 of the directions inside the hull."""
    dirs = sorted({min(v, tuple(-a for a in v)) for v in directions if any(v)})
    normals = {}
    if k == 0:
        return []
    for combo in itertools.combinations(dirs, k - 1):
        rows = [list(v) for v in combo] + [list(a) for a in eq_normals]
        if int_rank(rows) != d - 1 if rows else d != 1:
            continue
        ker = integer_kernel(rows, d) if rows else [[1]]
        if len(ker) != 1:
            continue
        u = tuple(ker[0])
        normals[u] = None
        normals[tuple(-a for a in u)] = None
    return list(normals)


def _extreme_points(points, normals, eqs, d):
    """Points of the list at which the tight normals have full rank."""
    ipts, _ = _scaled_ints(points)
    values = [[sum(x * y for x, y in zip(u, p)) for p in ipts] for u in normals]
    tops = [max(v) for v in values]
    eq_rows = [list(a) for a, _ in eqs]
    verts = []
    for k, p in enumerate(points):
        tight = [list(u) for u, v, t in zip(normals, values, tops) if v[k] == t] + eq_rows
        if d == 0 or (tight and int_rank(tight) == d):
            verts.append(p)
    return verts or points[:1]


# ---------------------------------------------------------------------------
# Minkowski sums, volume and lattice points


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    """``P + Q`` with an irredundant H-description."""
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("dimension mismatch")
    d = P.ambient_dim
    sums = sorted({tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices})
    k = _affine_rank(sums)
    eqs = _hull_equations(sums, d) if k < d else []
    directions = []
    for R in (P, Q):
        for i, j in R.edges():
            directions.append(clear_denominators(
                [a - b for a, b in zip(R.vertices[i], R.vertices[j])]))
    normals = _candidate_normals(directions, [a for a, _ in eqs], k, d)
    verts = _extreme_points(sums, normals, eqs, d)
    return Polytope(d, [(u, 0) for u in normals], verts)


def pulling_triangulation(P: Polytope) -> list[tuple[int, ...]]:
    """Simplices (vertex index tuples) of a pulling triangulation of P."""
    lattice = P.face_lattice
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def tri(face):
        if face in memo:
            return memo[face]
        if P.face_dim(face) == 0:
            out = [(min(face),)]
        else:
            apex = min(face)
            out = [(apex,) + s for g in lattice[face] if apex not in g for s in tri(g)]
        memo[face] = out
        return out

    return tri(frozenset(range(len(P.vertices))))


def volume(P: Polytope) -> Fraction:
    """Exact Lebesgue volume in the ambient space (0 if not full-dimensional)."""
    d = P.ambient_dim
    if not P.is_full_dimensional:
        return Fraction(0)
    if d == 0:
        return Fraction(1)
    pts, den = _scaled_ints(P.vertices)
    total = 0
    for simplex in pulling_triangulation(P):
        v0 = pts[simplex[0]]
        total += abs(int_det([[a - b for a, b in zip(pts[i], v0)] for i in simplex[1:]]))
    return Fraction(total, math.factorial(d) * den ** d)


def lattice_points(P: Polytope) -> Iterable[tuple[int, ...]]:
    """Integer points of P by depth-first box enumeration with pruning."""
    d = P.ambient_dim
    lo = [math.ceil(min(v[i] for v in P.vertices)) for i in range(d)]
    hi = [math.floor(max(v[i] for v in P.vertices)) for i in range(d)]
    if any(l > h for l, h in zip(lo, hi)):
        return
    rows = [(list(a), math.floor(b)) for a, b in P.inequalities]
    for a, b in P.equations:
        if Fraction(b).denominator != 1:
            return
        rows.append((list(a), int(b)))
        rows.append(([-x for x in a], -int(b)))
    # suffix[r][i]: least value of sum_{j >= i} a_j x_j over the box
    suffix = []
    for a, _ in rows:
        s = [0] * (d + 1)
        for i in range(d - 1, -1, -1):
            s[i] = s[i + 1] + min(a[i] * lo[i], a[i] * hi[i])
        suffix.append(s)
    x = [0] * d

    def rec(i, partial):
        if i == d:
            yield tuple(x)
            return
        for t in range(lo[i], hi[i] + 1):
            x[i] = t
            nxt = [p + a[i] * t for p, (a, _) in zip(partial, rows)]
            if all(p + s[i + 1] <= b for p, s, (_, b) in zip(nxt, suffix, rows)):
                yield from rec(i + 1, nxt)

    yield from rec(0, [0] * len(rows))


def lattice_point_count(P: Polytope) -> int:
    return sum(1 for _ in lattice_points(P))


# ---------------------------------------------------------------------------
# Gelfand-Zetlin polytopes


def is_dominant(lam: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(lam, lam[1:]))


def is_regular_dominant(lam: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(lam, lam[1:]))


def gz_dim(n: int) -> int:
    return n * (n - 1) // 2


def gz_index(n: int, i: int, j: int) -> int:
    """Position of ``x_ij`` (1-based, row i has n - i entries) in R^N."""
    return sum(n - r for r in range(1, i)) + (j - 1)


def gz_template(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Outer facet normals of every GZ polytope with their support in terms of lam.

    Each entry is ``(normal, coef)`` meaning ``<normal, x> <= <coef, lam>``.
    Order: for each top-row entry the upper then the lower bound, then for each
    lower-row entry the lower then the upper bound.
    """
    N = gz_dim(n)
    out = []

    def unit(idx, s=1):
        v = [0] * N
        v[idx] = s
        return v

    for j in range(1, n):
        k = gz_index(n, 1, j)
        out.append((tuple(unit(k)), tuple(int(t == j) for t in range(n))))
        out.append((tuple(unit(k, -1)), tuple(-int(t == j - 1) for t in range(n))))
    zero = tuple([0] * n)
    for i in range(2, n):
        for j in range(1, n - i + 1):
            k = gz_index(n, i, j)
            lower = unit(gz_index(n, i - 1, j))
            lower[k] -= 1
            upper = unit(k)
            upper[gz_index(n, i - 1, j + 1)] -= 1
            out.append((tuple(lower), zero))
            out.append((tuple(upper), zero))
    return out


def gz_polytope(lam: Sequence[int]) -> Polytope:
    """The Gelfand-Zetlin polytope of a dominant weight."""
    lam = [int(a) for a in lam]
    if not is_dominant(lam):
        raise NotDominantError(f"not dominant: {lam}")
    n = len(lam)
    if n < 2:
        raise ValueError("need n >= 2")
    template = gz_template(n)
    return Polytope.from_inequalities([a for a, _ in template],
                                      [dot(c, lam) for _, c in template])


def recognize_gz(P: Polytope, n: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Find ``(lam, c)`` with ``lam[0] == 0`` and ``P == c + gz_polytope(lam)``."""
    N = gz_dim(n)
    if P.ambient_dim != N:
        raise NotGZError(f"ambient dimension {P.ambient_dim} != {N}")
    template = gz_template(n)
    support = dict(P.inequalities)
    if not P.is_full_dimensional or set(support) != {a for a, _ in template}:
        raise NotGZError("not GZ: facet normals do not match the GZ template")
    # unknowns: lam_2..lam_n, then c
    rows, rhs = [], []
    for a, coef in template:
        rows.append(list(coef[1:]) + list(a))
        rhs.append(support[a])
    try:
        sol = solve(rows, rhs, n - 1 + N)
    except InconsistentSystemError:
        raise NotGZError("not GZ: support numbers violate the diamond relations") from None
    if any(dot(r, sol) != b for r, b in zip(rows, rhs)):
        raise NotGZError("not GZ")
    lam = (Fraction(0),) + tuple(sol[: n - 1])
    if not is_dominant(lam):
        raise NotGZError("not GZ: recovered weight is not dominant")
    return lam, tuple(sol[n - 1:])


def weyl_dimension(lam: Sequence[int]) -> int:
    """Dimension of the irreducible GL(n) representation of highest weight lam."""
    n = len(lam)
    num, den = 1, 1
    for i, j in itertools.combinations(range(n), 2):
        num *= lam[j] - lam[i] + j - i
        den *= j - i
    return num // den
