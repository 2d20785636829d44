"""Left and right sides of the coefficient inequalities.

Everything is evaluated from a :class:`LacunaryProfile`, the moduli
mu_k = |a_{k p + m}| of a function supported on the index lattice
m, p + m, 2p + m, ... (a gap-free function is the shape (0, 1) case).
Profiles keep moduli only; every functional in the catalog depends on
|a_k| alone, so phases are dropped at construction.

The catalog identifiers accepted by :func:`evaluate_theorem`:

========  ==================================================================
ThmC      alternating lacunary sum plus weighted square sum, bound 1
Thm31     refined majorant with |f(0)|^s origin term, shape (0, 1), bound 1
Thm32     vanishing-start lacunary refinement with adaptive weight, bound 1
Thm34     odd-part sum plus weighted square sum, bound 1
Thm41     alternating variant of Thm34 (identical value to ThmC), bound 1
Cor43     alternating sum with origin-weighted square term, bound 1
BombieriUpper   majorant envelope (3 - sqrt(8(1-r^2)))/r on [1/3, 1/sqrt(2)]
BBUpper         majorant envelope 1/sqrt(1-r^2) on (1/sqrt(2), 1)
========  ==================================================================

The two unconditional bounds with dedicated entry points are
:func:`refined_thmB` (shape (0, 1)) and :func:`lemmaD_bounds` (any shape).

All evaluators certify their truncation: with coefficient moduli bounded
by ``coeff_bound`` (1 for anything drawn from the unit-ball classes), the
neglected tail of the linear sums at radius r is at most
coeff_bound * r^(L*p + m) / (1 - r^p) where L = len(mods).  When that
exceeds the truncation tolerance the evaluation raises
``TruncationInsufficient`` instead of returning a silently wrong number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import (
    OddGapRequired,
    ParameterOutOfRange,
    RadiusOutOfRange,
    RadiusOutOfWindow,
    ShapeMismatch,
    TruncationInsufficient,
    UnknownTheorem,
)
from .series import TruncatedSeries

__all__ = [
    "DEFAULT_MARGIN_TOL",
    "DEFAULT_TRUNC_TOL",
    "THEOREM_IDS",
    "LacunaryProfile",
    "InequalityCheck",
    "profile_from_series",
    "bohr_sums",
    "bohr_sums_grid",
    "refined_thmB",
    "lemmaD_bounds",
    "evaluate_theorem",
    "evaluate_theorem_grid",
    "theorem_margins",
    "lacunary_length_for",
]

DEFAULT_MARGIN_TOL = 1e-9
DEFAULT_TRUNC_TOL = 1e-10

THEOREM_IDS = (
    "ThmC",
    "Thm31",
    "Thm32",
    "Thm34",
    "Thm41",
    "Cor43",
    "BombieriUpper",
    "BBUpper",
)

# Extended ids usable through the batched core (the first two have their
# own public wrappers and are not routed through evaluate_theorem).
_CORE_IDS = ("ThmB", "LemDOdd", "LemDEven") + THEOREM_IDS

BOMBIERI_LO = 1.0 / 3.0
BOMBIERI_HI = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class LacunaryProfile:
    """Moduli mu_0..mu_K of the coefficients on the lattice k*p + m.

    ``coeff_bound`` is the certified bound on every coefficient modulus of
    the underlying function, including the ones beyond the truncation; it
    feeds the tail certificates.  Anything derived from a unit-ball class
    gets 1.  ``exact=True`` marks a profile whose stored moduli describe
    the whole function (polynomials: monomials, zero), so there is no
    tail to certify.
    """

    m: int
    p: int
    mods: np.ndarray
    coeff_bound: float = 1.0
    exact: bool = False

    def __post_init__(self):
        if not (self.p >= 1 and 0 <= self.m <= self.p):
            raise ParameterOutOfRange(
                f"profile shape needs 1 <= p and 0 <= m <= p, got m={self.m}, p={self.p}"
            )
        arr = np.array(self.mods, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterOutOfRange("mods must be a nonempty 1-d sequence")
        if np.any(arr < 0.0):
            raise ParameterOutOfRange("coefficient moduli must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "mods", arr)
        bound = float(self.coeff_bound)
        if bound < float(arr.max(initial=0.0)) - 1e-12:
            raise ParameterOutOfRange("coeff_bound below a stored modulus")
        object.__setattr__(self, "coeff_bound", bound)

    @property
    def origin_value(self) -> float:
        """|f(0)|: mu_0 for shape m = 0, zero otherwise."""
        return float(self.mods[0]) if self.m == 0 else 0.0

    @property
    def max_exponent(self) -> int:
        return (self.mods.size - 1) * self.p + self.m

    def sum_tail_bound(self, r: float) -> float:
        """Bound on the linear-sum tail neglected beyond the stored moduli."""
        if r <= 0.0 or self.exact:
            return 0.0
        first_unknown = self.mods.size * self.p + self.m
        return self.coeff_bound * r ** first_unknown / (1.0 - r ** self.p)


@dataclass(frozen=True)
class InequalityCheck:
    """One evaluation record: lhs vs rhs at radius r with margin = rhs - lhs."""

    theorem_id: str
    r: float
    lhs: float
    rhs: float
    satisfied: bool
    margin: float
    tol: float = DEFAULT_MARGIN_TOL


def profile_from_series(
    s: TruncatedSeries, m: int, p: int, shape_tol: float = 1e-11
) -> LacunaryProfile:
    """Extract the lattice moduli of a series, checking it is truly lacunary.

    Off-lattice coefficients above ``shape_tol`` raise ShapeMismatch: a
    profile must describe the whole function, or the certificates lie.
    """
    if not (p >= 1 and 0 <= m <= p):
        raise ParameterOutOfRange(f"invalid shape m={m}, p={p}")
    moduli = np.abs(s.coeffs)
    mask = np.zeros(s.order + 1, dtype=bool)
    mask[m :: p] = True
    worst = float(moduli[~mask].max(initial=0.0))
    if worst > shape_tol:
        raise ShapeMismatch(
            f"series is not ({m},{p})-lacunary: off-lattice modulus {worst:.3e}"
        )
    if s.sup_bound is not None:
        # Cauchy estimate: every coefficient, stored or not, is bounded by
        # the sup norm, so the tail certificate may use it directly.
        bound = float(max(s.sup_bound, moduli.max(initial=0.0)))
    else:
        bound = float(max(1.0, moduli.max(initial=0.0)))
    return LacunaryProfile(m, p, moduli[m :: p], bound)


MAX_PROFILE_LENGTH = 1 << 16


def lacunary_length_for(m: int, p: int, r: float, trunc_tol: float = DEFAULT_TRUNC_TOL,
                        coeff_bound: float = 1.0) -> int:
    """Smallest mods length L whose tail certificate passes at radius r."""
    if r <= 0.0:
        return 1
    if r >= 1.0:
        raise RadiusOutOfRange(f"no finite truncation certifies r={r}")
    target = trunc_tol * (1.0 - r ** p) / coeff_bound
    need = math.log(target) / math.log(r)  # exponent where the tail is small enough
    length = max(1, math.ceil((need - m) / p))
    if length > MAX_PROFILE_LENGTH:
        raise TruncationInsufficient(
            f"certifying r={r} at tolerance {trunc_tol:.1e} would need "
            f"{length} lattice moduli (cap {MAX_PROFILE_LENGTH})",
            r=r,
            tol=trunc_tol,
        )
    return length


# ----------------------------------------------------------------------
# batched core: mods is (S, K), r is (R,), outputs broadcast to (S, R)
# ----------------------------------------------------------------------


def _as_r_grid(r) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(r, dtype=float))
    if grid.ndim != 1:
        raise ParameterOutOfRange("radius grid must be one-dimensional")
    if grid.size and (grid.min() < 0.0 or grid.max() >= 1.0):
        raise RadiusOutOfRange(
            f"radii must lie in [0, 1), got range [{grid.min()}, {grid.max()}]"
        )
    return grid


def _psum(w: np.ndarray, exps: np.ndarray, r: np.ndarray) -> np.ndarray:
    """sum_k w_k r^exps_k, vectorized over rows of w and entries of r."""
    if w.shape[-1] == 0:
        head = w.shape[:-1] if w.ndim > 1 else ()
        return np.zeros(head + (r.size,))
    powers = r[None, :] ** np.asarray(exps, dtype=float)[:, None]
    return w @ powers


def _check_truncation(K, m, p, r, coeff_bound, trunc_tol):
    if r.size == 0:
        return
    rmax = float(r.max())
    if rmax <= 0.0:
        return
    tail = coeff_bound * rmax ** (K * p + m) / (1.0 - rmax ** p)
    if tail > trunc_tol:
        need = lacunary_length_for(m, p, rmax, trunc_tol, coeff_bound)
        raise TruncationInsufficient(
            f"tail bound {tail:.3e} exceeds {trunc_tol:.1e} at r={rmax}; "
            f"need at least {need} lattice moduli, have {K}",
            r=rmax,
            tail=tail,
            tol=trunc_tol,
        )


def _signs(k: np.ndarray, m: int, p: int) -> np.ndarray:
    return np.where((k * p + m) % 2 == 0, 1.0, -1.0)


def _core_thmB(mods, m, p, r):
    if (m, p) != (0, 1):
        raise ShapeMismatch(f"this bound is stated for shape (0, 1), got ({m},{p})")
    k = np.arange(mods.shape[1])
    mu0 = mods[:, :1]
    lin = _psum(mods[:, 1:], k[1:], r)
    sq = _psum(mods[:, 1:] ** 2, 2 * k[1:], r)
    factor = 1.0 / (1.0 + mu0) + r / (1.0 - r)
    lhs = lin + factor * sq
    rhs = (r / (1.0 - r)) * (1.0 - mu0 ** 2)
    return lhs, rhs


def _core_lemD_odd(mods, m, p, r):
    # The square sum below is r^p/(1-r^2p) * sum mu_k^2 r^(2kp), the
    # nonnegative-exponent form of the weighted sum over r^((2k-1)p).
    k = np.arange(mods.shape[1])
    den = 1.0 - r ** (2 * p)
    lin = _psum(mods[:, 1::2], k[1::2] * p, r)
    sq = _psum(mods ** 2, 2 * k * p, r)
    lhs = lin + (r ** p / den) * sq
    rhs = np.broadcast_to(r ** p / den, lhs.shape)
    return lhs, rhs


def _core_lemD_even(mods, m, p, r):
    k = np.arange(mods.shape[1])
    mu0 = mods[:, :1]
    den = 1.0 - r ** (2 * p)
    lin = _psum(mods[:, 2::2], k[2::2] * p, r)
    sq = _psum(mods[:, 1:] ** 2, 2 * k[1:] * p, r)
    factor = 1.0 / (1.0 + mu0) + r ** (2 * p) / den
    lhs = lin + factor * sq
    rhs = (1.0 - mu0 ** 2) * (r ** (2 * p) / den)
    return lhs, rhs


def _core_thmC(mods, m, p, r):
    if p % 2 == 0:
        raise OddGapRequired(f"alternating bound needs odd p, got p={p}")
    k = np.arange(mods.shape[1])
    signs = _signs(k, m, p)
    alt = _psum(signs[1:] * mods[:, 1:], k[1:] * p + m, r)
    sq = _psum(mods ** 2, 2 * k * p, r)
    outer = 1.0 if (m + p) % 2 == 0 else -1.0
    inner = alt + outer * (r ** (p + m) / (1.0 - r ** (2 * p))) * sq
    return np.abs(inner), np.ones_like(inner)


def _core_thm31(mods, m, p, r, s):
    if (m, p) != (0, 1):
        raise ShapeMismatch(f"this bound is stated for shape (0, 1), got ({m},{p})")
    if s is None or not s > 0.0:
        raise ParameterOutOfRange("Thm31 needs a positive exponent s in extras")
    k = np.arange(mods.shape[1])
    mu0 = mods[:, :1]
    lin = _psum(mods[:, 1:], k[1:], r)
    sq = _psum(mods[:, 1:] ** 2, 2 * k[1:], r)
    factor = 1.0 / (1.0 + mu0) + r / (1.0 - r)
    lhs = mu0 ** float(s) + lin + factor * sq
    return lhs, np.ones_like(lhs)


def _core_thm32(mods, m, p, r):
    mu0 = mods[:, 0]
    if np.any(mu0 > 1e-12):
        raise ShapeMismatch(
            "this bound needs a vanishing lattice start (mu_0 = 0); "
            f"got mu_0 up to {float(mu0.max()):.3e}"
        )
    k = np.arange(mods.shape[1])
    lin = _psum(mods[:, 1:], k[1:] * p + m, r)
    if mods.shape[1] > 2:
        mu1 = mods[:, 1:2]
        w2 = mods[:, 2:] ** 2
        k2 = k[2:]
        # 1/(r^(p+m) + Lambda) with Lambda = mu_1 r^(p+m) folds into the
        # exponents: the two weighted square sums below carry exponents
        # (2k-1)p + m and 2kp + m, both nonnegative, so r = 0 is safe.
        sq_a = _psum(w2, (2 * k2 - 1) * p + m, r) / (1.0 + mu1)
        sq_b = _psum(w2, 2 * k2 * p + m, r) / (1.0 - r ** p)
        lhs = lin + sq_a + sq_b
    else:
        lhs = lin
    return lhs, np.ones_like(lhs)


def _core_thm34(mods, m, p, r):
    k = np.arange(mods.shape[1])
    lin = _psum(mods[:, 1::2], k[1::2] * p + m, r)
    sq = _psum(mods ** 2, 2 * (k * p + m), r)
    lhs = lin + (r ** (p - m) / (1.0 - r ** (2 * p))) * sq
    return lhs, np.ones_like(lhs)


def _core_thm41(mods, m, p, r):
    if p % 2 == 0:
        raise OddGapRequired(f"alternating bound needs odd p, got p={p}")
    k = np.arange(mods.shape[1])
    signs = _signs(k, m, p)
    alt = _psum(signs[1:] * mods[:, 1:], k[1:] * p + m, r)
    sq = _psum(mods ** 2, 2 * (k * p + m), r)
    outer = 1.0 if (m + p) % 2 == 0 else -1.0
    inner = alt + outer * (r ** (p - m) / (1.0 - r ** (2 * p))) * sq
    return np.abs(inner), np.ones_like(inner)


def _core_cor43(mods, m, p, r):
    if p % 2 == 0:
        raise OddGapRequired(f"alternating bound needs odd p, got p={p}")
    k = np.arange(mods.shape[1])
    signs = _signs(k, m, p)
    mu0 = mods[:, :1]
    alt = _psum(signs[1:] * mods[:, 1:], k[1:] * p + m, r)
    w = mods ** 2
    # 1/(r^m + Gamma) with Gamma = mu_0 r^m folds into the exponents, as in
    # the vanishing-start bound above; both pieces stay finite at r = 0.
    sq_a = _psum(w, 2 * k * p + m, r) / (1.0 + mu0)
    sq_b = _psum(w, 2 * (k + 1) * p + m, r) / (1.0 - r ** (2 * p))
    outer = 1.0 if m % 2 == 0 else -1.0
    inner = alt + outer * (sq_a + sq_b)
    return np.abs(inner), np.ones_like(inner)


def _core_bombieri(mods, m, p, r):
    if r.size and (r.min() < BOMBIERI_LO - 1e-12 or r.max() > BOMBIERI_HI + 1e-12):
        raise RadiusOutOfWindow(
            f"majorant envelope valid on [{BOMBIERI_LO:.6f}, {BOMBIERI_HI:.6f}]"
        )
    k = np.arange(mods.shape[1])
    lhs = _psum(mods, k * p + m, r)
    rhs = np.broadcast_to((3.0 - np.sqrt(8.0 * (1.0 - r ** 2))) / r, lhs.shape)
    return lhs, rhs


def _core_bb(mods, m, p, r):
    if r.size and r.min() <= BOMBIERI_HI - 1e-12:
        raise RadiusOutOfWindow(
            f"majorant envelope valid on ({BOMBIERI_HI:.6f}, 1)"
        )
    k = np.arange(mods.shape[1])
    lhs = _psum(mods, k * p + m, r)
    rhs = np.broadcast_to(1.0 / np.sqrt(1.0 - r ** 2), lhs.shape)
    return lhs, rhs


def theorem_margins(
    theorem_id: str,
    mods: np.ndarray,
    m: int,
    p: int,
    r,
    extras: Optional[Mapping[str, float]] = None,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
    coeff_bound: Optional[float] = None,
    exact: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """Batched (lhs, rhs) arrays of shape (samples, radii).

    ``mods`` is a (S, K) matrix of lattice moduli sharing one shape (m, p)
    and one truncation length; ``r`` is a radius grid.  This is the engine
    behind all scalar entry points and the sweep harness.
    """
    mods = np.atleast_2d(np.asarray(mods, dtype=float))
    if not (p >= 1 and 0 <= m <= p):
        raise ParameterOutOfRange(f"invalid shape m={m}, p={p}")
    grid = _as_r_grid(r)
    if coeff_bound is None:
        coeff_bound = float(max(1.0, mods.max(initial=0.0)))
    if not exact:
        _check_truncation(mods.shape[1], m, p, grid, coeff_bound, trunc_tol)

    if theorem_id == "ThmB":
        return _core_thmB(mods, m, p, grid)
    if theorem_id == "LemDOdd":
        return _core_lemD_odd(mods, m, p, grid)
    if theorem_id == "LemDEven":
        return _core_lemD_even(mods, m, p, grid)
    if theorem_id == "ThmC":
        return _core_thmC(mods, m, p, grid)
    if theorem_id == "Thm31":
        s = None if extras is None else extras.get("s")
        return _core_thm31(mods, m, p, grid, s)
    if theorem_id == "Thm32":
        return _core_thm32(mods, m, p, grid)
    if theorem_id == "Thm34":
        return _core_thm34(mods, m, p, grid)
    if theorem_id == "Thm41":
        return _core_thm41(mods, m, p, grid)
    if theorem_id == "Cor43":
        return _core_cor43(mods, m, p, grid)
    if theorem_id == "BombieriUpper":
        return _core_bombieri(mods, m, p, grid)
    if theorem_id == "BBUpper":
        return _core_bb(mods, m, p, grid)
    raise UnknownTheorem(f"no inequality with id {theorem_id!r}")


# ----------------------------------------------------------------------
# scalar entry points
# ----------------------------------------------------------------------


def _check_from(theorem_id, r, lhs, rhs, tol) -> InequalityCheck:
    margin = float(rhs) - float(lhs)
    return InequalityCheck(
        theorem_id=theorem_id,
        r=float(r),
        lhs=float(lhs),
        rhs=float(rhs),
        satisfied=bool(margin >= -tol),
        margin=margin,
        tol=tol,
    )


def bohr_sums_grid(
    profile: LacunaryProfile, r, trunc_tol: float = DEFAULT_TRUNC_TOL
) -> Tuple[np.ndarray, np.ndarray]:
    """Majorant sum B(r) and alternating sum A(r) on a radius grid.

    B = sum_k mu_k r^(kp+m), A = sum_k (-1)^(kp+m) mu_k r^(kp+m).
    """
    grid = _as_r_grid(r)
    mods = profile.mods[None, :]
    if not profile.exact:
        _check_truncation(profile.mods.size, profile.m, profile.p, grid,
                          profile.coeff_bound, trunc_tol)
    k = np.arange(profile.mods.size)
    exps = k * profile.p + profile.m
    b = _psum(mods, exps, grid)[0]
    a = _psum(_signs(k, profile.m, profile.p) * mods, exps, grid)[0]
    return b, a


def bohr_sums(
    profile: LacunaryProfile, r: float, trunc_tol: float = DEFAULT_TRUNC_TOL
) -> Tuple[float, float]:
    b, a = bohr_sums_grid(profile, [r], trunc_tol)
    return float(b[0]), float(a[0])


def refined_thmB(
    profile: LacunaryProfile,
    r: float,
    tol: float = DEFAULT_MARGIN_TOL,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> InequalityCheck:
    """Refined majorant bound for shape (0, 1):

    sum_{k>=1} mu_k r^k + (1/(1+mu_0) + r/(1-r)) sum_{k>=1} mu_k^2 r^(2k)
        <= (r/(1-r)) (1 - mu_0^2),

    an unconditional bound on [0, 1), with equality on the disk
    automorphism family.
    """
    lhs, rhs = theorem_margins("ThmB", profile.mods, profile.m, profile.p,
                               [r], trunc_tol=trunc_tol,
                               coeff_bound=profile.coeff_bound,
                               exact=profile.exact)
    return _check_from("ThmB", r, lhs[0, 0], rhs[0, 0], tol)


def lemmaD_bounds(
    profile: LacunaryProfile,
    r: float,
    tol: float = DEFAULT_MARGIN_TOL,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> Tuple[InequalityCheck, InequalityCheck]:
    """Odd-part and even-part unconditional bounds for any lacunary shape.

    odd:  sum_{k>=1} mu_{2k-1} r^((2k-1)p)
          + (r^p/(1-r^2p)) sum_{k>=0} mu_k^2 r^(2kp)   <= r^p/(1-r^2p)
    even: sum_{k>=1} mu_{2k} r^(2kp)
          + (1/(1+mu_0) + r^2p/(1-r^2p)) sum_{k>=1} mu_k^2 r^(2kp)
                                                       <= (1-mu_0^2) r^2p/(1-r^2p)

    Both hold on all of [0, 1); the lifted automorphism family attains
    equality in each.
    """
    args = dict(trunc_tol=trunc_tol, coeff_bound=profile.coeff_bound,
                exact=profile.exact)
    lo, ro = theorem_margins("LemDOdd", profile.mods, profile.m, profile.p, [r], **args)
    le, re_ = theorem_margins("LemDEven", profile.mods, profile.m, profile.p, [r], **args)
    return (
        _check_from("LemDOdd", r, lo[0, 0], ro[0, 0], tol),
        _check_from("LemDEven", r, le[0, 0], re_[0, 0], tol),
    )


def evaluate_theorem_grid(
    theorem_id: str,
    profile: LacunaryProfile,
    r,
    extras: Optional[Mapping[str, float]] = None,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> Tuple[np.ndarray, np.ndarray]:
    """(lhs, rhs) vectors for one profile on a radius grid."""
    if theorem_id not in THEOREM_IDS:
        raise UnknownTheorem(f"no inequality with id {theorem_id!r}")
    lhs, rhs = theorem_margins(theorem_id, profile.mods, profile.m, profile.p,
                               r, extras=extras, trunc_tol=trunc_tol,
                               coeff_bound=profile.coeff_bound,
                               exact=profile.exact)
    return lhs[0], rhs[0]


def evaluate_theorem(
    theorem_id: str,
    profile: LacunaryProfile,
    r: float,
    extras: Optional[Mapping[str, float]] = None,
    tol: float = DEFAULT_MARGIN_TOL,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> InequalityCheck:
    """Evaluate one catalog inequality at a single radius."""
    lhs, rhs = evaluate_theorem_grid(theorem_id, profile, [r], extras, trunc_tol)
    return _check_from(theorem_id, r, lhs[0], rhs[0], tol)
