"""Finite-dimensional graded commutative algebras over Q.

An algebra is stored as per-degree dimensions together with structure
constants ``table(i, j)[a][b]``: the coordinates in degree ``i + j`` of the
product of basis element ``a`` of degree ``i`` with basis element ``b`` of
degree ``j``. Degree 0 is assumed to be spanned by the unit, which is basis
element 0. When the top degree is one-dimensional, ``top_functional``
identifies it with Q.

Tables may be produced lazily by a callback, so algebras coming from
expensive constructions (Minkowski weights) only compute the products
that are actually requested.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import coordinates, rational_rank, row_basis, transpose

Vector = list  # list of Fraction


class AlgebraError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmt(x: Fraction) -> str:
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Homogeneous polynomials


class HomogeneousPolynomial:
    """Homogeneous polynomial with exact rational coefficients keyed by exponent vectors."""

    def __init__(self, nvars: int, degree: int, coeffs: dict | None = None, names: Sequence[str] | None = None):
        self.nvars = nvars
        self.degree = degree
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        clean = {}
        for exp, c in (coeffs or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or sum(exp) != degree or min(exp, default=0) < 0:
                raise ValueError(f"monomial {exp} does not have degree {degree} in {nvars} variables")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def linear_form(cls, coefs: Sequence, names=None) -> "HomogeneousPolynomial":
        r = len(coefs)
        return cls(r, 1, {tuple(int(i == j) for i in range(r)): c for j, c in enumerate(coefs)}, names)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.nvars == other.nvars
        return (self.nvars, self.degree, self.coeffs) == (other.nvars, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for exp in sorted(self.coeffs, reverse=True):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(self.names, exp) if e)
            terms.append(f"({_fmt(self.coeffs[exp])})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def __add__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise ValueError("cannot add polynomials of different shapes")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return HomogeneousPolynomial(self.nvars, self.degree, out, self.names)

    def __rmul__(self, scalar) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(self.nvars, self.degree,
                                     {e: scalar * c for e, c in self.coeffs.items()}, self.names)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return self.__rmul__(other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return HomogeneousPolynomial(self.nvars, self.degree + other.degree, out, self.names)

    def __pow__(self, k: int) -> "HomogeneousPolynomial":
        out = HomogeneousPolynomial(self.nvars, 0, {(0,) * self.nvars: 1}, self.names)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for exp, c in self.coeffs.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= _frac(x) ** e
            total += term
        return total

    __call__ = evaluate

    def derivative(self, beta: Sequence[int]) -> "HomogeneousPolynomial":
        """Apply the differential operator ``d^beta``."""
        k = sum(beta)
        if k > self.degree:
            return HomogeneousPolynomial(self.nvars, 0, {}, self.names)
        out = {}
        for exp, c in self.coeffs.items():
            if all(e >= b for e, b in zip(exp, beta)):
                f = 1
                for e, b in zip(exp, beta):
                    f *= math.perm(e, b)
                out[tuple(e - b for e, b in zip(exp, beta))] = c * f
        return HomogeneousPolynomial(self.nvars, self.degree - k, out, self.names)

    def compose(self, phi: Sequence[Sequence], names=None) -> "HomogeneousPolynomial":
        """Substitute ``y = x . phi``: ``phi`` has one row per new variable, one column per old."""
        if any(len(row) != self.nvars for row in phi):
            raise ValueError("shape mismatch")
        r = len(phi)
        forms = [HomogeneousPolynomial.linear_form([row[j] for row in phi], names) for j in range(self.nvars)]
        out = HomogeneousPolynomial(r, self.degree, {}, names)
        cache: dict = {}
        for exp, c in self.coeffs.items():
            term = None
            for j, e in enumerate(exp):
                if e:
                    key = (j, e)
                    if key not in cache:
                        cache[key] = forms[j] ** e
                    term = cache[key] if term is None else term * cache[key]
            if term is None:
                term = HomogeneousPolynomial(r, 0, {(0,) * r: 1}, names)
            out = out + c * term
        if out.is_zero():
            return HomogeneousPolynomial(r, self.degree, {}, names)
        return out

    def to_dict(self) -> dict:
        return {"vars": list(self.names), "degree": self.degree,
                "terms": [{"exp": list(e), "coef": _fmt(self.coeffs[e])} for e in sorted(self.coeffs, reverse=True)]}

    @classmethod
    def from_dict(cls, data: dict) -> "HomogeneousPolynomial":
        names = data["vars"]
        return cls(len(names), int(data["degree"]),
                   {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]}, names)


def monomials(r: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree k in r variables, lexicographically decreasing."""
    out = []
    for combo in itertools.combinations_with_replacement(range(r), k):
        exp = [0] * r
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return sorted(set(out), reverse=True)


# ---------------------------------------------------------------------------
# Graded algebras


@dataclass
class GradedAlgebra:
    top: int
    dims: list[int]
    top_functional: list[Fraction] = field(default_factory=list)
    table_fn: Callable[[int, int], list] | None = field(default=None, repr=False, compare=False)
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.dims) != self.top + 1:
            raise AlgebraError("dims must list degrees 0..top")
        self.top_functional = [_frac(x) for x in self.top_functional]

    def table(self, i: int, j: int) -> list[list[Vector]]:
        if i + j > self.top:
            raise AlgebraError(f"degree {i + j} exceeds the top degree")
        if (i, j) not in self._tables:
            if (j, i) in self._tables:
                t = self._tables[(j, i)]
                self._tables[(i, j)] = [[t[b][a] for b in range(self.dims[j])] for a in range(self.dims[i])]
            elif i == 0 or j == 0:
                k = i or j
                e = _basis(self.dims[k])
                self._tables[(i, j)] = [[e[b] for b in range(self.dims[j])]] if i == 0 else [[e[a]] for a in range(self.dims[i])]
                if self.dims[0] != 1:
                    raise AlgebraError("degree 0 is not one-dimensional")
            elif self.table_fn is None:
                raise AlgebraError(f"no structure constants for degrees ({i}, {j})")
            else:
                self._tables[(i, j)] = [[[_frac(c) for c in v] for v in row] for row in self.table_fn(i, j)]
        return self._tables[(i, j)]

    def mul(self, i: int, x: Sequence, j: int, y: Sequence) -> Vector:
        t = self.table(i, j)
        out = [Fraction(0)] * self.dims[i + j]
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if yb:
                    c = xa * yb
                    out = [o + c * v for o, v in zip(out, t[a][b])]
        return out

    def basis_vector(self, k: int, a: int) -> Vector:
        return _basis(self.dims[k])[a]

    def evaluate_top(self, x: Sequence) -> Fraction:
        self._require_top()
        return sum((f * _frac(a) for f, a in zip(self.top_functional, x)), Fraction(0))

    def _require_top(self):
        if self.dims[self.top] != 1 or len(self.top_functional) != 1 or not self.top_functional[0]:
            raise AlgebraError("top degree not one-dimensional")

    def materialize(self) -> "GradedAlgebra":
        for i in range(self.top + 1):
            for j in range(i, self.top + 1 - i):
                self.table(i, j)
        return self

    def check_structure(self) -> bool:
        """Commutativity, associativity and unit on all basis pairs and triples."""
        n = self.top
        for i in range(n + 1):
            for j in range(n + 1 - i):
                tij, tji = self.table(i, j), self.table(j, i)
                if any(tij[a][b] != tji[b][a] for a in range(self.dims[i]) for b in range(self.dims[j])):
                    return False
        for i, j, k in itertools.product(range(n + 1), repeat=3):
            if i + j + k > n:
                continue
            for a, b, c in itertools.product(range(self.dims[i]), range(self.dims[j]), range(self.dims[k])):
                ab = self.table(i, j)[a][b]
                bc = self.table(j, k)[b][c]
                left = self.mul(i + j, ab, k, self.basis_vector(k, c))
                right = self.mul(i, self.basis_vector(i, a), j + k, bc)
                if left != right:
                    return False
        return True

    def to_dict(self) -> dict:
        self.materialize()
        structure = []
        for i in range(self.top + 1):
            for j in range(i, self.top + 1 - i):
                structure.append({"deg_i": i, "deg_j": j,
                                  "table": [[[_fmt(c) for c in v] for v in row] for row in self.table(i, j)]})
        return {"top": self.top, "dims": list(self.dims), "structure": structure,
                "top_functional": [_fmt(x) for x in self.top_functional]}

    @classmethod
    def from_dict(cls, data: dict) -> "GradedAlgebra":
        A = cls(int(data["top"]), [int(d) for d in data["dims"]],
                [Fraction(x) for x in data.get("top_functional", [])])
        for block in data["structure"]:
            i, j = int(block["deg_i"]), int(block["deg_j"])
            table = [[[Fraction(c) for c in v] for v in row] for row in block["table"]]
            if len(table) != A.dims[i] or any(len(row) != A.dims[j] for row in table):
                raise AlgebraError(f"table ({i}, {j}) has the wrong shape")
            A._tables[(i, j)] = table
        return A


def _basis(d: int) -> list[Vector]:
    return [[Fraction(int(a == b)) for b in range(d)] for a in range(d)]


def truncated_polynomial_ring(n: int) -> GradedAlgebra:
    """``Q[t]/(t^(n+1))`` with basis ``t^k`` in each degree."""
    return GradedAlgebra(n, [1] * (n + 1), [1], lambda i, j: [[[Fraction(1)]]])


# ---------------------------------------------------------------------------
# Pairings and duality


def pairing_matrix(A: GradedAlgebra, i: int) -> list[list[Fraction]]:
    """``(a, b) -> top(a * b)`` for basis elements of degrees ``i`` and ``top - i``."""
    A._require_top()
    n = A.top
    if not 0 <= i <= n:
        raise AlgebraError(f"degree {i} outside 0..{n}")
    t = A.table(i, n - i)
    return [[A.evaluate_top(t[a][b]) for b in range(A.dims[n - i])] for a in range(A.dims[i])]


def has_poincare_duality(A: GradedAlgebra) -> bool:
    A._require_top()
    n = A.top
    for i in range(n + 1):
        if A.dims[i] != A.dims[n - i]:
            return False
        if A.dims[i] and rational_rank(pairing_matrix(A, i)) != A.dims[i]:
            return False
    return True


def is_generated_in_degree_one(A: GradedAlgebra) -> bool:
    return lefschetz_subalgebra(A).dims == list(A.dims)


# ---------------------------------------------------------------------------
# Lefschetz subalgebra and Gorenstein quotient


@dataclass
class Subalgebra:
    """Result bookkeeping: the subalgebra plus its embedding into the ambient algebra."""

    algebra: GradedAlgebra
    embedding: list[list[Vector]]  # per degree, basis vectors in ambient coordinates


def lefschetz_subalgebra(A: GradedAlgebra, with_embedding: bool = False):
    """Subalgebra generated by degree one.

    Each basis element of degree k is kept together with a word of degree-1
    basis indices producing it, so products only need ``A.table(k, 1)``.
    """
    n = A.top
    d1 = A.dims[1] if n >= 1 else 0
    emb: list[list[Vector]] = [[A.basis_vector(0, 0)]]
    words: list[list[tuple[int, ...]]] = [[()]]
    for k in range(1, n + 1):
        cand_vecs, cand_words = [], []
        for v, w in zip(emb[k - 1], words[k - 1]):
            start = w[-1] if w else 0
            for a in range(start, d1):
                cand_vecs.append(A.mul(k - 1, v, 1, A.basis_vector(1, a)))
                cand_words.append(w + (a,))
        keep = row_basis(cand_vecs) if cand_vecs else []
        emb.append([cand_vecs[i] for i in keep])
        words.append([cand_words[i] for i in keep])
    dims = [len(e) for e in emb]

    def chain(v: Vector, deg: int, word: tuple[int, ...]) -> Vector:
        for a in word:
            v = A.mul(deg, v, 1, A.basis_vector(1, a))
            deg += 1
        return v

    def table_fn(i: int, j: int):
        if not dims[i + j]:
            return [[[] for _ in range(dims[j])] for _ in range(dims[i])]
        prods = [chain(u, i, w) for u in emb[i] for w in words[j]]
        coords = coordinates(emb[i + j], prods)
        return [coords[a * dims[j]:(a + 1) * dims[j]] for a in range(dims[i])]

    top_f = []
    if dims[n] == 1 and A.dims[n] == 1 and A.top_functional:
        top_f = [A.evaluate_top(emb[n][0])]
    L = GradedAlgebra(n, dims, top_f, table_fn)
    return Subalgebra(L, emb) if with_embedding else L


def gorenstein_quotient(A: GradedAlgebra, with_projection: bool = False):
    """Quotient by the radical of the pairing into the top degree.

    Degree k of the quotient is represented by the basis elements of A whose
    pairing rows form a row basis; other vectors get their coordinates from
    their pairing row.
    """
    n = A.top
    if A.dims[0] != 1 or A.dims[n] != 1:
        raise AlgebraError("d_0 or d_n not 1")
    A._require_top()
    P = [pairing_matrix(A, k) for k in range(n + 1)]
    reps = [row_basis(P[k]) if A.dims[k] else [] for k in range(n + 1)]
    dims = [len(r) for r in reps]

    def project(k: int, vectors: Sequence[Vector]) -> list[Vector]:
        if not dims[k]:
            return [[] for _ in vectors]
        rows = [P[k][a] for a in reps[k]]
        paired = [[sum((x * p for x, p in zip(v, col)), Fraction(0)) for col in transpose(P[k], A.dims[n - k])]
                  for v in vectors]
        return coordinates(rows, paired)

    def table_fn(i: int, j: int):
        t = A.table(i, j)
        prods = [t[a][b] for a in reps[i] for b in reps[j]]
        coords = project(i + j, prods)
        return [coords[x * dims[j]:(x + 1) * dims[j]] for x in range(dims[i])]

    G = GradedAlgebra(n, dims, [A.top_functional[reps[n][0]]], table_fn)
    if with_projection:
        return G, project
    return G


# ---------------------------------------------------------------------------
# Top-power polynomial and apolarity


def top_power_polynomial(A: GradedAlgebra, names=None) -> HomogeneousPolynomial:
    """``top((x_1 a_1 + ... + x_r a_r)^n)`` for the degree-1 basis ``a``."""
    A._require_top()
    n, r = A.top, A.dims[1] if A.top >= 1 else 0
    if n == 0:
        return HomogeneousPolynomial(r, 0, {(): A.top_functional[0]} if r == 0 else {(0,) * r: A.top_functional[0]}, names)
    powers: dict[tuple[int, ...], Vector] = {(): A.basis_vector(0, 0)}
    coeffs = {}
    for word in itertools.combinations_with_replacement(range(r), n):
        for m in range(1, n + 1):
            if word[:m] not in powers:
                powers[word[:m]] = A.mul(m - 1, powers[word[:m - 1]], 1, A.basis_vector(1, word[m - 1]))
        exp = [0] * r
        for a in word:
            exp[a] += 1
        mult = math.factorial(n)
        for e in exp:
            mult //= math.factorial(e)
        coeffs[tuple(exp)] = mult * A.evaluate_top(powers[word])
    return HomogeneousPolynomial(r, n, coeffs, names)


def apolarity_algebra(P: HomogeneousPolynomial) -> GradedAlgebra:
    """``Q[d_1..d_r] / Ann(P)`` realised through derivatives of P.

    Degree k is spanned by the classes of ``d^beta`` whose derivatives
    ``d^beta P`` form a row basis among all ``|beta| = k``.
    """
    if P.is_zero():
        raise AlgebraError("zero polynomial")
    n, r = P.degree, P.nvars
    basis_monos, deriv_rows = [], []
    for k in range(n + 1):
        monos = monomials(r, k)
        target = monomials(r, n - k)
        rows = []
        for beta in monos:
            dp = P.derivative(beta)
            rows.append([dp.coeffs.get(m, Fraction(0)) for m in target])
        keep = row_basis(rows) if rows else []
        basis_monos.append([monos[i] for i in keep])
        deriv_rows.append([rows[i] for i in keep])
    dims = [len(b) for b in basis_monos]

    def table_fn(i: int, j: int):
        k = i + j
        target = monomials(r, n - k)
        prods = []
        for a in basis_monos[i]:
            for b in basis_monos[j]:
                dp = P.derivative([x + y for x, y in zip(a, b)])
                prods.append([dp.coeffs.get(m, Fraction(0)) for m in target])
        coords = coordinates(deriv_rows[k], prods)
        return [coords[x * dims[j]:(x + 1) * dims[j]] for x in range(dims[i])]

    top_value = deriv_rows[n][0][0]
    A = GradedAlgebra(n, dims, [top_value], table_fn)
    A.basis_monomials = basis_monos
    return A


def proportionality_scalar(A: GradedAlgebra, B: GradedAlgebra, phi: Sequence[Sequence]) -> Fraction | None:
    """The scalar s with ``P_A = s * (P_B o phi)`` if one exists (nonzero), else None."""
    PA, PBphi = _iso_polys(A, B, phi)
    if PBphi.is_zero() or PA.is_zero():
        return None
    exp, c = next(iter(PBphi.coeffs.items()))
    s = PA.coeffs.get(exp, Fraction(0)) / c
    return s if s and PA == s * PBphi else None


def degree1_isomorphism_check(A: GradedAlgebra, B: GradedAlgebra, phi: Sequence[Sequence], scalar=1) -> bool:
    """True iff ``P_A == scalar * (P_B o phi)`` where P is the top-power polynomial.

    ``phi`` has one row per degree-1 basis element of A giving its image in
    B's degree-1 coordinates. For A with Poincare duality and both algebras
    generated in degree one, this certifies that phi extends to an
    isomorphism from A onto the Gorenstein quotient of B.
    """
    PA, PBphi = _iso_polys(A, B, phi)
    return PA == _frac(scalar) * PBphi


def _iso_polys(A, B, phi):
    if A.top != B.top:
        raise AlgebraError("shape mismatch: different top degrees")
    if len(phi) != A.dims[1] or any(len(row) != B.dims[1] for row in phi):
        raise AlgebraError("shape mismatch: phi must be d1(A) x d1(B)")
    if rational_rank(phi) != A.dims[1] or A.dims[1] != B.dims[1]:
        raise AlgebraError("shape mismatch: phi is not invertible")
    return top_power_polynomial(A), top_power_polynomial(B).compose(phi)
