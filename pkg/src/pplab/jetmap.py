"""Two models of the order-k jet fiber of the degree-n line bundle at the
base point, and the checks that tie them to the twisted symmetric power.

Model one is intrinsic: the quotient of the degree-n forms by the kernel of
the iterated x_0-derivative. Model two is extrinsic: truncated Taylor data of
the dehomogenized form at the point (1 : 0 : ... : 0). The module verifies
that both have the same kernel (the span of monomials with x_0-exponent below
n-k), that the derivative map intertwines the group actions, and that the
induced map on the quotient is an invertible intertwiner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .linalg import RationalMatrix, kernel_basis, rref, subspace_equal
from .parabolic import GroupElement, _parabolic_from_rng, _scaled_inverse_rows, _substitution_images
from .symspace import MultiIndex, binomial, dim_sym, m_power_subspace, monomial_basis


@dataclass(frozen=True)
class JetBasis:
    """Ordered multi-indices of total degree <= k in the N affine variables
    u_1, ..., u_N: coordinates on jets at the base point. Ordered by total
    degree, then descending-lexicographically inside each degree, which lines
    up index-for-index with the degree-n monomials of x_0-exponent >= n-k."""

    N: int
    k: int
    multi_indices: tuple[MultiIndex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(self.multi_indices)})

    def __len__(self) -> int:
        return len(self.multi_indices)

    def index_of(self, alpha: MultiIndex) -> int:
        return self._index[alpha]

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.multi_indices)


def jet_basis(N: int, k: int) -> JetBasis:
    if N < 1 or k < 0:
        raise ValueError("require N >= 1 and k >= 0")
    indices: list[MultiIndex] = []
    for d in range(k + 1):
        if N == 1:
            indices.append((d,))
        else:
            indices.extend(monomial_basis(N - 1, d).monomials)
    jb = JetBasis(N, k, tuple(indices))
    assert len(jb) == binomial(k + N, N)
    return jb


def _falling_factorial(p: int, steps: int) -> int:
    out = 1
    for i in range(steps):
        out *= p - i
    return out


def _check_jet_params(N: int, n: int, k: int) -> None:
    if N < 1:
        raise ValueError("require N >= 1")
    if not 1 <= k < n:
        raise ValueError(f"require 1 <= k < n, got k={k}, n={n}")


def x0_derivative_matrix(N: int, n: int, k: int) -> RationalMatrix:
    """Matrix of the (n-k)-fold derivative d^(n-k)/dx_0^(n-k) from degree-n
    to degree-k monomials. Each monomial maps to at most one monomial, so the
    matrix is a scaled selection; it is surjective of rank binom(k+N, N)."""
    _check_jet_params(N, n, k)
    basis_n = monomial_basis(N, n)
    basis_k = monomial_basis(N, k)
    steps = n - k
    entries = [Fraction(0)] * (len(basis_k) * len(basis_n))
    for col, mono in enumerate(basis_n):
        if mono[0] >= steps:
            image = (mono[0] - steps,) + mono[1:]
            row = basis_k.index_of(image)
            entries[row * len(basis_n) + col] = Fraction(_falling_factorial(mono[0], steps))
    return RationalMatrix(len(basis_k), len(basis_n), tuple(entries))


def taylor_fiber_matrix(N: int, n: int, k: int) -> RationalMatrix:
    """Matrix sending a degree-n form F to the coefficients of u^alpha,
    |alpha| <= k, in F(1, u_1, ..., u_N): order-k Taylor data at the base
    point, stored as plain monomial coefficients (no factorials)."""
    if N < 1 or not 0 <= k <= n:
        raise ValueError(f"require N >= 1 and 0 <= k <= n, got N={N}, n={n}, k={k}")
    basis_n = monomial_basis(N, n)
    jb = jet_basis(N, k)
    entries = [Fraction(0)] * (len(jb) * len(basis_n))
    for col, mono in enumerate(basis_n):
        tail = mono[1:]
        if sum(tail) <= k:
            entries[jb.index_of(tail) * len(basis_n) + col] = Fraction(1)
    return RationalMatrix(len(jb), len(basis_n), tuple(entries))


def verify_kernel(N: int, n: int, k: int) -> bool:
    """Kernel of the derivative map == span of small-x_0 monomials == kernel
    of the Taylor map, all as canonical subspaces."""
    _check_jet_params(N, n, k)
    ker_phi = kernel_basis(x0_derivative_matrix(N, n, k))
    sub = m_power_subspace(N, n, k)
    ker_taylor = kernel_basis(taylor_fiber_matrix(N, n, k))
    return subspace_equal(ker_phi, sub) and subspace_equal(sub, ker_taylor)


def exact_sequence_check(N: int, n: int, k: int) -> bool:
    """Exactness of 0 -> small-x_0 span -> degree-n forms -> jet fiber -> 0:
    the subspace is exactly the kernel and the dimensions add up."""
    _check_jet_params(N, n, k)
    phi = x0_derivative_matrix(N, n, k)
    sub = m_power_subspace(N, n, k)
    rank = rref(phi).rank
    return sub.dim + rank == dim_sym(N, n) and subspace_equal(kernel_basis(phi), sub)


@dataclass(frozen=True)
class JetRepReport:
    """Outcome of the randomized jet-representation verification."""

    N: int
    n: int
    k: int
    kernel_matches: bool
    taylor_kernel_matches: bool
    rank_correct: bool
    equivariance_trials: int
    equivariance_failures: int
    quotient_iso_equivariant: bool

    def __post_init__(self) -> None:
        if self.equivariance_failures > self.equivariance_trials:
            raise ValueError("more failures than trials")

    @property
    def passed(self) -> bool:
        return (
            self.kernel_matches
            and self.taylor_kernel_matches
            and self.rank_correct
            and self.equivariance_failures == 0
            and self.quotient_iso_equivariant
        )


def _trial_checks(
    g: GroupElement, N: int, n: int, k: int, ff: list[int]
) -> tuple[bool, bool]:
    """Integer-arithmetic equivariance checks for one stabilizer element.

    With the inverse of g cleared to integer rows B/c, the degree-d action is
    the integer substitution matrix divided by c^d, so both intertwiner
    identities reduce to integer matrix equalities after cross-multiplying by
    the single rational r = (c/a)^(n-k). Checking the full derivative-map
    identity also exercises the block-triangularity of the degree-n action
    (images of small-x_0 monomials must stay in the small-x_0 span).
    """
    basis_n = monomial_basis(N, n)
    basis_k = monomial_basis(N, k)
    dim_n, dim_k = len(basis_n), len(basis_k)
    b_rows, c = _scaled_inverse_rows(g)
    levels = _substitution_images(b_rows, N, n)
    img_n, img_k = levels[n], levels[k]
    r = (Fraction(c) / g.parabolic_scalar) ** (n - k)
    p, q = r.numerator, r.denominator

    # a_k[row][col] over degree-k monomials.
    a_k = [[0] * dim_k for _ in range(dim_k)]
    for col, mono in enumerate(basis_k):
        img = img_k[mono]
        for m2, coeff in img.items():
            a_k[basis_k.index_of(m2)][col] = coeff

    phi_ok = True
    # The first dim_k degree-n monomials are exactly those with x_0-exponent
    # >= n-k, aligned index-for-index with the degree-k basis.
    section = basis_n.monomials[:dim_k]
    for col, mono in enumerate(basis_n):
        img = img_n[mono]
        for row in range(dim_k):
            lhs = q * ff[row] * img.get(section[row], 0)
            rhs = p * a_k[row][col] * ff[col] if col < dim_k else 0
            if lhs != rhs:
                phi_ok = False
                break
        if not phi_ok:
            break

    quot_ok = True
    for col in range(dim_k):
        img = img_n[section[col]]
        for row in range(dim_k):
            lhs = q * ff[row] * img.get(section[row], 0)
            rhs = p * a_k[row][col] * ff[col]
            if lhs != rhs:
                quot_ok = False
                break
        if not quot_ok:
            break
    return phi_ok, quot_ok


def verify_jet_representation(
    N: int, n: int, k: int, trials: int = 100, seed: int = 0, height: int = 3
) -> JetRepReport:
    """Full randomized verification that the jet fiber carries the twisted
    degree-k action.

    Deterministically in the seed: checks the three-way kernel identification,
    the rank of the derivative map, and then for `trials` random stabilizer
    elements that the derivative map intertwines the degree-n action with the
    twisted degree-k action and that the induced map on the monomial section
    (x_0-exponent >= n-k) is an invertible intertwiner.
    """
    _check_jet_params(N, n, k)
    phi = x0_derivative_matrix(N, n, k)
    sub = m_power_subspace(N, n, k)
    ker_phi = kernel_basis(phi)
    ker_taylor = kernel_basis(taylor_fiber_matrix(N, n, k))
    kernel_matches = subspace_equal(ker_phi, sub)
    taylor_kernel_matches = subspace_equal(ker_taylor, sub)
    rank_correct = rref(phi).rank == binomial(k + N, N)

    basis_k = monomial_basis(N, k)
    ff = [_falling_factorial(mono[0] + (n - k), n - k) for mono in basis_k]
    quotient_invertible = all(f != 0 for f in ff)

    rng = random.Random(seed)
    failures = 0
    quotient_ok = quotient_invertible
    for _ in range(trials):
        g = _parabolic_from_rng(N, rng, height)
        phi_ok, quot_ok = _trial_checks(g, N, n, k, ff)
        if not phi_ok:
            failures += 1
        if not quot_ok:
            quotient_ok = False
    return JetRepReport(
        N=N,
        n=n,
        k=k,
        kernel_matches=kernel_matches,
        taylor_kernel_matches=taylor_kernel_matches,
        rank_correct=rank_correct,
        equivariance_trials=trials,
        equivariance_failures=failures,
        quotient_iso_equivariant=quotient_ok,
    )
