"""Monomial bases of symmetric powers of the dual space, and their combinatorics.

A multi-index is a plain tuple of nonnegative exponents, one per variable
x_0, ..., x_N; its degree is the sum of the entries. Degree-n monomials are
ordered descending-lexicographically on the exponent tuple (largest x_0
exponent first), which makes the distinguished subspace spanned by monomials
with small x_0 exponent a contiguous suffix of every basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .linalg import RationalMatrix, Scalar, Subspace, _frac

MultiIndex = tuple[int, ...]


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Binomial coefficient by Pascal's recursion, exact integers throughout."""
    if k < 0 or n < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return binomial(n - 1, k - 1) + binomial(n - 1, k)


def _compositions_desc(total: int, parts: int) -> Iterator[MultiIndex]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_desc(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True, eq=True)
class MonomialBasis:
    """Ordered basis of the degree-n monomials in num_vars variables."""

    num_vars: int
    degree: int
    monomials: tuple[MultiIndex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {m: i for i, m in enumerate(self.monomials)}
        )

    def __len__(self) -> int:
        return len(self.monomials)

    def index_of(self, mono: MultiIndex) -> int:
        return self._index[mono]

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.monomials)


@lru_cache(maxsize=None)
def monomial_basis(N: int, n: int) -> MonomialBasis:
    """All degree-n multi-indices in N+1 variables, descending lexicographic."""
    if N < 1:
        raise ValueError("need at least two variables (N >= 1)")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    monos = tuple(_compositions_desc(n, N + 1))
    basis = MonomialBasis(N + 1, n, monos)
    assert len(basis) == binomial(n + N, N)
    return basis


def dim_sym(N: int, n: int) -> int:
    """Dimension of the space of degree-n forms in N+1 variables.

    Computed as the stacked sum over the x_0-exponent and cross-checked
    against the closed binomial; a mismatch would mean a combinatorics bug.
    """
    if N < 1 or n < 0:
        raise ValueError("require N >= 1 and n >= 0")
    by_sum = sum(binomial(i + N - 1, N - 1) for i in range(n + 1))
    closed = binomial(n + N, N)
    assert by_sum == closed, f"dimension formulas disagree: {by_sum} != {closed}"
    return closed


def _check_subspace_params(N: int, n: int, k: int) -> None:
    if N < 1:
        raise ValueError("require N >= 1")
    if not 1 <= k < n:
        raise ValueError(f"require 1 <= k < n, got k={k}, n={n}")


def m_power_subspace(N: int, n: int, k: int) -> Subspace:
    """Span of the degree-n monomials whose x_0 exponent is below n-k.

    This is the degree-n part of the (k+1)-st power of the hyperplane ideal
    (x_1, ..., x_N) inside the full space of degree-n forms.
    """
    _check_subspace_params(N, n, k)
    basis = monomial_basis(N, n)
    ambient = len(basis)
    vectors = []
    for idx, mono in enumerate(basis):
        if mono[0] < n - k:
            v = [Fraction(0)] * ambient
            v[idx] = Fraction(1)
            vectors.append(v)
    sub = Subspace.from_vectors(vectors, ambient)
    assert sub.dim == sum(binomial(i + N - 1, N - 1) for i in range(k + 1, n + 1))
    return sub


def codimension_identity(N: int, n: int, k: int) -> bool:
    """Check that the subspace of forms with small x_0 exponent has codimension
    binom(k+N, N) in the degree-n forms, three independent ways: stacked sum
    formulas, closed binomials against the constructed subspace, and explicit
    basis enumeration."""
    _check_subspace_params(N, n, k)
    target = binomial(k + N, N)

    # Pascal-recursion sums over the x_0 exponent.
    head_sum = sum(binomial(i + N - 1, N - 1) for i in range(k + 1))
    full_sum = sum(binomial(i + N - 1, N - 1) for i in range(n + 1))
    tail_sum = sum(binomial(i + N - 1, N - 1) for i in range(k + 1, n + 1))

    # Closed binomials (math.comb is an independent implementation) against
    # the dimension of the actually constructed subspace.
    closed_codim = math.comb(n + N, N) - m_power_subspace(N, n, k).dim

    # Raw enumeration of monomials.
    basis = monomial_basis(N, n)
    count_small = sum(1 for mono in basis if mono[0] < n - k)
    count_jet = len(monomial_basis(N, k))

    return (
        head_sum == target
        and full_sum - tail_sum == target
        and closed_codim == math.comb(k + N, N)
        and len(basis) - count_small == target
        and count_jet == target
    )


@dataclass(frozen=True)
class PolyVector:
    """A homogeneous form as a coefficient vector over a monomial basis."""

    basis: MonomialBasis
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(self.basis):
            raise ValueError("coefficient count does not match basis size")

    @staticmethod
    def zero(basis: MonomialBasis) -> "PolyVector":
        return PolyVector(basis, (Fraction(0),) * len(basis))

    @staticmethod
    def from_terms(basis: MonomialBasis, terms: Mapping[MultiIndex, Scalar]) -> "PolyVector":
        coeffs = [Fraction(0)] * len(basis)
        for mono, c in terms.items():
            coeffs[basis.index_of(mono)] = _frac(c)
        return PolyVector(basis, tuple(coeffs))

    @property
    def degree(self) -> int:
        return self.basis.degree

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if self.basis != other.basis:
            raise ValueError("mismatched bases")
        return PolyVector(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Scalar) -> "PolyVector":
        c = _frac(c)
        return PolyVector(self.basis, tuple(c * x for x in self.coeffs))

    def terms(self) -> dict[MultiIndex, Fraction]:
        return {m: c for m, c in zip(self.basis.monomials, self.coeffs) if c != 0}


def partial_derivative(f: PolyVector, var: int) -> PolyVector:
    """d/dx_var of a homogeneous form, landing in the next degree down."""
    N = f.basis.num_vars - 1
    if not 0 <= var <= N:
        raise ValueError(f"variable index {var} out of range")
    n = f.degree
    target = monomial_basis(N, max(n - 1, 0))
    if n == 0:
        return PolyVector.zero(target)
    out = [Fraction(0)] * len(target)
    for mono, c in zip(f.basis.monomials, f.coeffs):
        if c == 0 or mono[var] == 0:
            continue
        lowered = mono[:var] + (mono[var] - 1,) + mono[var + 1 :]
        out[target.index_of(lowered)] += c * mono[var]
    return PolyVector(target, tuple(out))


def apply_matrix(m: RationalMatrix, f: PolyVector, target: MonomialBasis) -> PolyVector:
    """Apply a coefficient-space matrix (columns indexed by f's basis)."""
    if m.cols != len(f.basis) or m.rows != len(target):
        raise ValueError("matrix shape does not match the bases")
    return PolyVector(target, m.mat_vec(f.coeffs))
