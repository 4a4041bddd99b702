"""Transition matrices of jet bundles restricted to a coordinate line, and
extraction of their splitting degrees from twisted global-section counts.

Setup: the line {x_2 = ... = x_N = 0} is parameterized as (1 : t : 0 : ... : 0).
Chart 0 of the ambient space has affine coordinates u_i = x_i / x_0, chart 1
has w_0 = x_0 / x_1 and w_j = x_j / x_1. A degree-n form F restricts to
f_0(u) = F(1, u) on chart 0 and f_1(w) = F(w_0, 1, w_2, ..., w_N) on chart 1,
and order-k jets at a point of the line are truncated Taylor expansions of
these local functions in all N directions.

Orientation convention, fixed once: the transition matrix T(t) expresses
chart-0 jet coordinates through chart-1 jet coordinates,

    chart0_jet(F, t0) = T(t0) @ chart1_jet(F, t0),

so a line bundle of degree d gets the 1x1 cocycle (t^d) and splitting degrees
are read off with no sign flip; the k = 0 case pins this down in the tests.
Global sections of the bundle twisted by degree m are pairs of polynomial
vectors (f_0(t), f_1(s)) with f_0(t) = t^m * T(t) * f_1(1/t).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .jetmap import jet_basis
from .laurent import LaurentMatrix, LaurentPoly, det_laurent
from .linalg import Scalar, _frac
from .symspace import MultiIndex, binomial, monomial_basis

DEFAULT_SAMPLE_POINTS: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(2),
    Fraction(-1, 3),
)


@dataclass(frozen=True)
class TransitionData:
    """A rank-r Laurent cocycle on the two-chart line, with unit determinant."""

    rank: int
    matrix: LaurentMatrix
    convention: str = "chart0_jet(t) = T(t) @ chart1_jet(t)"

    def __post_init__(self) -> None:
        if self.matrix.rows != self.rank or self.matrix.cols != self.rank:
            raise ValueError("matrix shape does not match the rank")
        parts = det_laurent(self.matrix).monomial_parts()
        if parts is None or parts[0] == 0:
            raise ValueError("transition determinant is not a unit (c * t^e)")
        object.__setattr__(self, "_det_parts", parts)

    def det_parts(self) -> tuple[Fraction, int]:
        """(c, e) with det = c * t^e; the exponent is the first Chern class."""
        return self._det_parts


@dataclass(frozen=True)
class SplittingType:
    """Multiset of line-bundle degrees, stored sorted descending."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.degrees, reverse=True)) != self.degrees:
            raise ValueError("degrees must be sorted descending")

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def as_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out


# ---------------------------------------------------------------------------
# Transition matrix by exact truncated series composition.
# ---------------------------------------------------------------------------

_Series = dict[MultiIndex, LaurentPoly]


def _series_mul(a: _Series, b: _Series, N: int, k: int) -> _Series:
    out: _Series = {}
    for ma, pa in a.items():
        da = sum(ma)
        for mb, pb in b.items():
            if da + sum(mb) > k:
                continue
            key = tuple(x + y for x, y in zip(ma, mb))
            prod = pa * pb
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return {m: p for m, p in out.items() if not p.is_zero()}


def _unit_vector(N: int, pos: int) -> MultiIndex:
    return tuple(1 if i == pos else 0 for i in range(N))


def jet_transition_matrix(N: int, n: int, k: int) -> TransitionData:
    """Order-k jet cocycle of the degree-n line bundle along the line.

    Built by exact chain-rule expansion: on the line, chart-0 local data
    satisfies f_0(u) = u_1^n * f_1(1/u_1, u_2/u_1, ..., u_N/u_1), so the jet
    of f_0 at u = (t, 0, ..., 0) is a universal Laurent-coefficient
    combination of the jet of f_1 at (1/t, 0, ..., 0). Column beta of T is
    the chart-0 jet of the chart-1 coordinate monomial r^beta, computed by
    multiplying truncated power series in the chart-0 deviations
    s_1, ..., s_N with Laurent coefficients in t:

        (t + s_1)^n,
        r_0(s) = 1/(t + s_1) - 1/t,
        r_j(s) = s_j / (t + s_1)          for j = 2, ..., N,

    all truncated at total s-degree k. No truncation error exists because
    truncation commutes with products.
    """
    if N < 1 or n < 1 or k < 0:
        raise ValueError(f"require N >= 1, n >= 1, k >= 0, got N={N}, n={n}, k={k}")
    jb = jet_basis(N, k)
    zero_mono = (0,) * N

    prefactor: _Series = {}
    for i in range(min(n, k) + 1):
        mono = (i,) + (0,) * (N - 1)
        prefactor[mono] = LaurentPoly.t_pow(n - i, binomial(n, i))

    r0: _Series = {}
    for i in range(1, k + 1):
        mono = (i,) + (0,) * (N - 1)
        r0[mono] = LaurentPoly.t_pow(-1 - i, (-1) ** i)

    deviations: list[_Series] = [r0]
    for pos in range(1, N):
        rj: _Series = {}
        for i in range(k):
            mono = tuple(
                (i if p == 0 else 0) + (1 if p == pos else 0) for p in range(N)
            )
            rj[mono] = LaurentPoly.t_pow(-1 - i, (-1) ** i)
        deviations.append(rj)

    # series[beta] = truncation of (t+s_1)^n * prod_i deviations[i]^beta[i],
    # built incrementally along the graded order of the jet basis.
    series: dict[MultiIndex, _Series] = {zero_mono: prefactor}
    for beta in jb:
        if beta == zero_mono:
            continue
        pos = max(i for i, e in enumerate(beta) if e)
        parent = beta[:pos] + (beta[pos] - 1,) + beta[pos + 1 :]
        series[beta] = _series_mul(series[parent], deviations[pos], N, k)

    dim = len(jb)
    zero = LaurentPoly.zero()
    entries = [zero] * (dim * dim)
    for col, beta in enumerate(jb):
        s = series[beta]
        for alpha, poly in s.items():
            entries[jb.index_of(alpha) * dim + col] = poly
    return TransitionData(dim, LaurentMatrix(dim, dim, tuple(entries)))


# ---------------------------------------------------------------------------
# Closed-form jet oracles for monomials, independent of the series route.
# ---------------------------------------------------------------------------

def chart0_jet(mono: MultiIndex, t0: Scalar, k: int) -> tuple[Fraction, ...]:
    """Order-k Taylor coefficients of F(1, t0+s_1, s_2, ..., s_N) for a
    degree-n monomial F = x^mono, as a vector over the jet basis."""
    t0 = _frac(t0)
    N = len(mono) - 1
    jb = jet_basis(N, k)
    out = [Fraction(0)] * len(jb)
    p1 = mono[1]
    tail = mono[2:]
    for idx, alpha in enumerate(jb):
        if alpha[1:] != tail:
            continue
        a1 = alpha[0]
        if a1 > p1:
            continue
        out[idx] = binomial(p1, a1) * t0 ** (p1 - a1)
    return tuple(out)


def chart1_jet(mono: MultiIndex, t0: Scalar, k: int) -> tuple[Fraction, ...]:
    """Order-k Taylor coefficients of F(1/t0 + r_0, 1, r_2, ..., r_N) over the
    jet basis, whose first slot is the w_0 deviation."""
    t0 = _frac(t0)
    N = len(mono) - 1
    jb = jet_basis(N, k)
    out = [Fraction(0)] * len(jb)
    p0 = mono[0]
    tail = mono[2:]
    w0 = 1 / t0
    for idx, beta in enumerate(jb):
        if beta[1:] != tail:
            continue
        b0 = beta[0]
        if b0 > p0:
            continue
        out[idx] = binomial(p0, b0) * w0 ** (p0 - b0)
    return tuple(out)


def transition_consistency(
    data: TransitionData,
    N: int,
    n: int,
    k: int,
    sample_points: Sequence[Scalar] = DEFAULT_SAMPLE_POINTS,
) -> bool:
    """Oracle for the cocycle: at each sample point t0 and for every degree-n
    monomial, the closed-form chart-0 jet must equal T(t0) applied to the
    closed-form chart-1 jet, exactly."""
    if len(jet_basis(N, k)) != data.rank:
        raise ValueError("transition data does not match the parameters")
    for t0 in sample_points:
        t0 = _frac(t0)
        if t0 == 0:
            raise ValueError("sample points must be nonzero")
        t_eval = data.matrix.evaluate(t0)
        for mono in monomial_basis(N, n):
            jet0 = chart0_jet(mono, t0, k)
            jet1 = chart1_jet(mono, t0, k)
            if t_eval.mat_vec(jet1) != jet0:
                return False
    return True


# ---------------------------------------------------------------------------
# Twisted global sections and splitting extraction.
# ---------------------------------------------------------------------------

def _sparse_rank(rows: list[dict[int, Fraction]]) -> int:
    """Rank of a sparse rational matrix by min-column pivoting.

    Pivot rows are normalized and keyed by their minimum column; reducing a
    new row always eliminates its minimum column, which strictly increases,
    so the loop terminates.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            if c in pivots:
                f = r.pop(c)
                for cc, vv in pivots[c].items():
                    if cc == c:
                        continue
                    val = r.get(cc, Fraction(0)) - f * vv
                    if val:
                        r[cc] = val
                    else:
                        r.pop(cc, None)
            else:
                piv = r[c]
                pivots[c] = {cc: vv / piv for cc, vv in r.items()}
                rank += 1
                break
    return rank


def _section_space_dim(data: TransitionData, m: int, degree_bound: int) -> int:
    """Dimension of pairs (f_0, f_1) with f_0(t) = t^m T(t) f_1(1/t) and the
    chart-1 components of degree at most degree_bound.

    This undercounts the true section space when degree_bound is too small,
    never overcounts; callers either use a provably sufficient bound or
    validate the result downstream.
    """
    rho = data.rank
    unknowns = rho * (degree_bound + 1)
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for comp in range(rho):
        for j in range(rho):
            poly = data.matrix.entry(comp, j)
            for exp, coeff in poly.coeffs:
                for i in range(degree_bound + 1):
                    e = exp + m - i
                    if e >= 0:
                        continue
                    key = (comp, e)
                    row = rows.setdefault(key, {})
                    col = j * (degree_bound + 1) + i
                    row[col] = row.get(col, Fraction(0)) + coeff
    rank = _sparse_rank(list(rows.values()))
    return unknowns - rank


def h0_twisted(data: TransitionData, m: int, degree_bound: int | None = None) -> int:
    """Dimension of the twisted global sections h^0(E(m)) on the line.

    The default chart-1 degree bound |m| + rank * (|lo| + |hi| + 1) covers
    every unit-determinant cocycle of this size; pass a shared explicit bound
    when comparing values across several twists.
    """
    if degree_bound is None:
        lo, hi = data.matrix.exponent_range()
        degree_bound = abs(m) + data.rank * (abs(lo) + abs(hi) + 1)
    return _section_space_dim(data, m, degree_bound)


def splitting_type(data: TransitionData) -> SplittingType:
    """Degrees of the line-bundle summands, from first differences of the
    twisted section counts: #(degrees >= -m) = h0(m) - h0(m-1).

    All twist evaluations in one pass share a single chart-1 degree bound, so
    the difference counts are honest lower bounds of the true ones; a result
    is only returned once the recovered degree count equals the rank and the
    degree sum equals the determinant exponent, which together force the
    multiset to be exactly right. Failing that, the degree bound is enlarged;
    a cocycle with a non-unit determinant is rejected up front.
    """
    c, e_det = data.det_parts()
    rho = data.rank
    lo, hi = data.matrix.exponent_range()
    spread = hi - lo
    window_cap = rho * (abs(lo) + abs(hi) + 1) + abs(e_det) + 1
    escalation = rho * (abs(lo) + abs(hi) + 1)

    for attempt in range(4):
        # Fast probe for the uniform case, centered on the average degree.
        if e_det % rho == 0:
            d_bar = e_det // rho
            bound = abs(d_bar) + 2 + spread + rho + attempt * escalation
            h0_vals = [
                _section_space_dim(data, m, bound)
                for m in (-d_bar - 2, -d_bar - 1, -d_bar)
            ]
            if h0_vals[1] - h0_vals[0] == 0 and h0_vals[2] - h0_vals[1] == rho:
                return SplittingType((d_bar,) * rho)

        a, b = -hi - 1, -lo + 1
        while True:
            bound = max(abs(a - 1), abs(b)) + spread + rho + attempt * escalation
            h0_vals = {m: _section_space_dim(data, m, bound) for m in range(a - 1, b + 1)}
            g = {m: h0_vals[m] - h0_vals[m - 1] for m in range(a, b + 1)}
            if g[a] != 0 and a >= -window_cap:
                a -= 1
                continue
            if g[b] != rho and b <= window_cap:
                b += 1
                continue
            break
        if g[a] != 0 or g[b] != rho:
            raise ArithmeticError(
                "twist window failed to stabilize; transition data is not a unit cocycle"
            )
        degrees: list[int] = []
        ok = True
        for m in range(a + 1, b + 1):
            mult = g[m] - g[m - 1]
            if mult < 0:
                ok = False
                break
            degrees.extend([-m] * mult)
        if ok and len(degrees) == rho and sum(degrees) == e_det:
            return SplittingType(tuple(sorted(degrees, reverse=True)))
    raise ArithmeticError("splitting extraction did not validate at the maximal degree bound")


def verify_splitting(N: int, n: int, k: int) -> bool:
    """Whether the order-k jet bundle of the degree-n line bundle splits as
    binom(N+k, N) copies of degree n-k on the line."""
    if N < 1 or not 0 <= k < n:
        raise ValueError(f"require N >= 1 and 0 <= k < n, got N={N}, n={n}, k={k}")
    st = splitting_type(jet_transition_matrix(N, n, k))
    expected = (n - k,) * binomial(N + k, N)
    return st.degrees == expected


# ---------------------------------------------------------------------------
# Gauge helpers and JSON export.
# ---------------------------------------------------------------------------

def random_unimodular(
    rank: int, rng: random.Random, inverse_variable: bool = False, ops: int = 6, height: int = 2
) -> LaurentMatrix:
    """Random unimodular matrix of polynomials in t (or in 1/t): a product of
    elementary row additions, row swaps and sign flips, so the determinant is
    a nonzero constant."""
    sign_exp = -1 if inverse_variable else 1
    rows = [
        [LaurentPoly.const(int(i == j)) for j in range(rank)] for i in range(rank)
    ]
    for _ in range(ops):
        kind = rng.randrange(3)
        if kind == 0 and rank >= 2:
            i = rng.randrange(rank)
            j = rng.randrange(rank)
            while j == i:
                j = rng.randrange(rank)
            deg = rng.randint(0, 2)
            coeffs = {sign_exp * d: rng.randint(-height, height) for d in range(deg + 1)}
            p = LaurentPoly.from_dict(coeffs)
            rows[i] = [x + p * y for x, y in zip(rows[i], rows[j])]
        elif kind == 1 and rank >= 2:
            i = rng.randrange(rank)
            j = rng.randrange(rank)
            rows[i], rows[j] = rows[j], rows[i]
        else:
            i = rng.randrange(rank)
            rows[i] = [x.scale(-1) for x in rows[i]]
    return LaurentMatrix.from_rows(rows)


def transition_to_json_dict(data: TransitionData) -> dict:
    """Row-major JSON form: each entry is a list of [exponent, "num/den"]
    pairs sorted by exponent."""
    entries = []
    for poly in data.matrix.entries:
        entries.append([[e, f"{c.numerator}/{c.denominator}"] for e, c in poly.coeffs])
    return {"rank": data.rank, "variable": "t", "entries": entries}
