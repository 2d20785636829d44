"""Vector-valued checks along complex lines.

The vector-valued bounds reduce to one-variable statements by slicing: a
mapping f on the unit ball of l_t^n restricted to lambda -> lambda * z0
along a unit direction z0 gives component functions h_j(lambda) =
f_j(lambda z0), each a disk-to-closed-disk function supported on the same
index lattice as f.  The max over components of the k-th coefficient
modulus is exactly the degree-k directional derivative norm divided by
k!, so the vector inequalities become profile inequalities and reuse the
scalar evaluators.

Sharpness scans maximize the known extremal families' left sides over
the family parameter, witnessing failure just above the sharp radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import series as ps
from .errors import (
    DegenerateDirection,
    ParameterOutOfRange,
    RadiusOutOfRange,
    ShapeMismatch,
    TruncationInsufficient,
    UnknownTheorem,
)
from .functionals import (
    DEFAULT_MARGIN_TOL,
    DEFAULT_TRUNC_TOL,
    InequalityCheck,
    LacunaryProfile,
    evaluate_theorem,
    theorem_margins,
)
from .series import TruncatedSeries

__all__ = [
    "SLICE_KINDS",
    "SCAN_IDS",
    "Direction",
    "SliceMapping",
    "lt_norm",
    "random_direction",
    "slice_from_direction",
    "frechet_norms",
    "vector_check",
    "lemma21_margins",
    "sharpness_scan",
    "default_scan_grid",
]

SLICE_KINDS = ("SharpThm34", "SharpThm41", "SharpCor42", "GeneralZG")
SCAN_IDS = ("Thm31", "Thm32", "Thm34", "Thm41", "Cor43")

VECTOR_IDS = ("Thm34", "Thm41", "Cor42", "Cor43", "Lem21")


def lt_norm(v: Sequence[complex], t: float) -> float:
    """l_t norm (sum |v_i|^t)^(1/t); t = inf gives the max norm."""
    arr = np.atleast_1d(np.asarray(v, dtype=complex))
    if arr.size == 0:
        raise ParameterOutOfRange("norm of an empty vector is undefined")
    if math.isinf(t):
        return float(np.abs(arr).max())
    t = float(t)
    if t < 1.0:
        raise ParameterOutOfRange(f"l_t norms need t >= 1, got t={t}")
    return float((np.abs(arr) ** t).sum() ** (1.0 / t))


@dataclass(frozen=True)
class Direction:
    """Unit vector of l_t^n plus the norm index t (math.inf for the sup norm)."""

    z0: np.ndarray
    t: float

    def __post_init__(self):
        arr = np.array(self.z0, dtype=complex, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterOutOfRange("direction must be a nonempty complex vector")
        nrm = lt_norm(arr, self.t)
        if abs(nrm - 1.0) > 1e-12:
            raise ParameterOutOfRange(
                f"direction must be unit-norm in l_t, got ||z0||_t = {nrm!r}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "z0", arr)
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def normalized(cls, v: Sequence[complex], t: float) -> "Direction":
        arr = np.asarray(v, dtype=complex)
        nrm = lt_norm(arr, t)
        if nrm == 0.0:
            raise DegenerateDirection("cannot normalize the zero vector")
        return cls(arr / nrm, t)

    @property
    def n(self) -> int:
        return self.z0.size

    @property
    def sup_norm(self) -> float:
        return float(np.abs(self.z0).max())


def random_direction(seed: int, n: int, t: float) -> Direction:
    """Deterministic unit direction: complex gaussian entries, normalized."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return Direction.normalized(v, t)


@dataclass(frozen=True)
class SliceMapping:
    """Component series h_j(lambda) = f_j(lambda z0) of a sliced mapping.

    ``exact=True`` marks polynomial slices whose stored coefficients are
    the whole function (the monomial family), so downstream profiles skip
    the tail certificate.
    """

    components: Tuple[TruncatedSeries, ...]
    m: int
    p: int
    t: float
    exact: bool = False

    def __post_init__(self):
        if not self.components:
            raise ParameterOutOfRange("a slice needs at least one component")
        if not (self.p >= 1 and 0 <= self.m <= self.p):
            raise ParameterOutOfRange(
                f"slice shape needs 1 <= p and 0 <= m <= p, got m={self.m}, p={self.p}"
            )
        order = min(h.order for h in self.components)
        comps = []
        for j, h in enumerate(self.components):
            if h.sup_bound is None or h.sup_bound > 1.0 + 1e-9:
                raise ParameterOutOfRange(
                    f"component {j} is not certified disk-bounded (sup_bound <= 1)"
                )
            h = ps.truncate(h, order)
            off = np.abs(h.coeffs).copy()
            off[self.m :: self.p] = 0.0
            worst = float(off.max(initial=0.0))
            if worst > 1e-11:
                raise ShapeMismatch(
                    f"component {j} has off-lattice modulus {worst:.3e} "
                    f"for shape ({self.m},{self.p})"
                )
            comps.append(h)
        object.__setattr__(self, "components", tuple(comps))

    @property
    def order(self) -> int:
        return self.components[0].order

    @property
    def n(self) -> int:
        return len(self.components)


def slice_from_direction(
    kind: str,
    z0: Direction,
    order: int,
    *,
    a: Optional[float] = None,
    m: Optional[int] = None,
    p: Optional[int] = None,
    g: Optional[TruncatedSeries] = None,
) -> SliceMapping:
    """Slice one of the named mappings (or a caller-supplied f = z*g) along z0.

    SharpThm34:  f_1 = z1^m (a - z1^p)/(1 - a z1^p), f_j = z_j z1^(m-1) (...)
    SharpThm41:  f_1 = z1^(m+p), f_j = z_j z1^(m+p-1)
    SharpCor42:  f_j = z_j (a - z1)/(1 - a z1), shape (1, 1)
    GeneralZG:   f_j = z_j g(z); the caller passes the one-variable slice
                 of g along z0, and the components are h_j = (z0)_j z g(z).

    The named families need z0 with nonzero first coordinate.
    """
    if kind not in SLICE_KINDS:
        raise UnknownTheorem(f"no slice family with kind {kind!r}")
    w = complex(z0.z0[0])

    if kind == "SharpCor42":
        m, p = 1, 1
    if kind in ("SharpThm34", "SharpThm41"):
        if m is None or p is None or not (1 <= m <= p):
            raise ParameterOutOfRange(f"{kind} needs 1 <= m <= p, got m={m}, p={p}")
    if order < (m or 0) + (p or 1):
        raise ParameterOutOfRange("order must reach at least m + p")

    if kind in ("SharpThm34", "SharpThm41", "SharpCor42") and abs(w) == 0.0:
        raise DegenerateDirection(
            f"{kind} slices need a direction with nonzero first coordinate"
        )

    if kind == "SharpThm34":
        if a is None:
            raise ParameterOutOfRange("SharpThm34 needs the family parameter a")
        # f_1(lambda z0) = (lambda w)^m * phi(lambda^p) with
        # phi(u) = (a - w^p u)/(1 - a w^p u); the other components are the
        # same series rescaled by (z0)_j / w.
        base_order = max(1, -((m - order) // p))
        seed = np.zeros(base_order + 1, dtype=complex)
        seed[1] = w ** p
        phi = ps.mobius_map(float(a), TruncatedSeries(seed, 1.0))
        body = ps.monomial_lift(phi, m, p)
        body = ps.truncate(body, order) if body.order > order else body
        comps = [ps.scale(body, w ** m)]
        comps += [ps.scale(body, z0.z0[j] * w ** (m - 1)) for j in range(1, z0.n)]
    elif kind == "SharpThm41":
        coeffs = np.zeros(order + 1, dtype=complex)
        coeffs[m + p] = 1.0
        mono = TruncatedSeries(coeffs, 1.0)
        comps = [ps.scale(mono, w ** (m + p))]
        comps += [ps.scale(mono, z0.z0[j] * w ** (m + p - 1)) for j in range(1, z0.n)]
    elif kind == "SharpCor42":
        if a is None:
            raise ParameterOutOfRange("SharpCor42 needs the family parameter a")
        mob = ps.mobius_map(float(a), TruncatedSeries(
            np.concatenate([[0.0, w], np.zeros(order - 1, dtype=complex)]), 1.0))
        body = ps.shift(mob, 1)
        comps = [ps.scale(body, z0.z0[j]) for j in range(z0.n)]
    else:  # GeneralZG
        if g is None:
            raise ParameterOutOfRange("GeneralZG needs the sliced factor g")
        if m is None or p is None or not 1 <= m <= p:
            raise ParameterOutOfRange(
                f"GeneralZG needs a shape with 1 <= m <= p, got m={m}, p={p}"
            )
        if g.sup_bound is None or g.sup_bound > 1.0 + 1e-12:
            raise ParameterOutOfRange("GeneralZG needs g with sup_bound <= 1")
        # z * g exactly; never pad g with fabricated zero coefficients, so
        # the slice order is capped by what g actually determines.
        body = TruncatedSeries(
            np.concatenate([np.zeros(1, dtype=complex), g.coeffs]), g.sup_bound
        )
        if body.order > order:
            body = ps.truncate(body, order)
        comps = [ps.scale(body, z0.z0[j]) for j in range(z0.n)]

    comps = [TruncatedSeries(c.coeffs, 1.0) for c in comps]
    return SliceMapping(tuple(comps), m, p, z0.t, exact=(kind == "SharpThm41"))


def frechet_norms(slice_map: SliceMapping, r: float) -> np.ndarray:
    """Directional derivative norms along the slice, scaled to radius r.

    Entry i is max_j |coefficient (i*p + m) of h_j| * r^(i*p+m), one entry
    per lattice index within the slice's order.  r = 1 returns the raw
    coefficient norms (used to build profiles for the vector checks).
    """
    if not 0.0 <= r <= 1.0:
        raise RadiusOutOfRange(f"frechet_norms defined for 0 <= r <= 1, got {r}")
    m, p = slice_map.m, slice_map.p
    if slice_map.order < m:
        raise TruncationInsufficient(
            f"slice order {slice_map.order} below the first lattice index {m}"
        )
    stack = np.vstack([np.abs(h.coeffs[m :: p]) for h in slice_map.components])
    nu = stack.max(axis=0)
    if r < 1.0:
        k = np.arange(nu.size)
        nu = nu * r ** (k * p + m)
    return nu


def _profile_from_slice(slice_map: SliceMapping) -> LacunaryProfile:
    return LacunaryProfile(
        slice_map.m, slice_map.p, frechet_norms(slice_map, 1.0),
        exact=slice_map.exact,
    )


def lemma21_margins(nu: np.ndarray, m: int, p: int, r) -> Tuple[np.ndarray, np.ndarray]:
    """Batched even-tail bound for f = z*g slices.

    lhs = sum_{k>=1} nu_{2k} r^(2kp+m)
    rhs = (r^(2p-m)/(1-r^2p)) (r^2m - (nu_0 r^m)^2)

    where nu are raw directional coefficient norms (radius 1).
    """
    nu = np.atleast_2d(np.asarray(nu, dtype=float))
    grid = np.atleast_1d(np.asarray(r, dtype=float))
    if grid.size and (grid.min() < 0.0 or grid.max() >= 1.0):
        raise RadiusOutOfRange("radii must lie in [0, 1)")
    if not 1 <= m <= p:
        raise ShapeMismatch(f"the even-tail bound needs 1 <= m <= p, got m={m}, p={p}")
    k = np.arange(nu.shape[1])
    even = k[2::2]
    powers = grid[None, :] ** (even * p + m).astype(float)[:, None]
    lhs = nu[:, 2::2] @ powers
    nu0 = nu[:, :1]
    rhs = (grid ** (2 * p - m) / (1.0 - grid ** (2 * p))) * (
        grid ** (2 * m) - (nu0 * grid ** m) ** 2
    )
    return lhs, rhs


def vector_check(
    theorem_id: str,
    slice_map: SliceMapping,
    r: float,
    extras=None,
    tol: float = DEFAULT_MARGIN_TOL,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
) -> InequalityCheck:
    """Evaluate a vector-valued bound on one slice at radius r.

    Builds the directional-norm profile and delegates to the scalar
    catalog; Cor42 reindexes its (1, 1) slice to the vanishing-start shape
    (0, 1), and Lem21 is the dedicated even-tail bound.  The f = z*g ids
    need m >= 1.
    """
    if theorem_id not in VECTOR_IDS:
        raise UnknownTheorem(f"no vector check with id {theorem_id!r}")
    m, p = slice_map.m, slice_map.p
    if theorem_id in ("Thm34", "Thm41", "Cor43", "Lem21") and m < 1:
        raise ShapeMismatch(f"{theorem_id} needs shape 1 <= m <= p, got m={m}")

    if theorem_id == "Lem21":
        nu = frechet_norms(slice_map, 1.0)
        lhs, rhs = lemma21_margins(nu, m, p, [r])
        lhs, rhs = float(lhs[0, 0]), float(rhs[0, 0])
        margin = rhs - lhs
        return InequalityCheck("Lem21", float(r), lhs, rhs,
                               bool(margin >= -tol), margin, tol)

    if theorem_id == "Cor42":
        if (m, p) != (1, 1):
            raise ShapeMismatch(f"Cor42 applies to shape (1, 1), got ({m},{p})")
        nu = frechet_norms(slice_map, 1.0)
        profile = LacunaryProfile(0, 1, np.concatenate([[0.0], nu]))
        check = evaluate_theorem("Thm32", profile, r, tol=tol, trunc_tol=trunc_tol)
        return InequalityCheck("Cor42", check.r, check.lhs, check.rhs,
                               check.satisfied, check.margin, tol)

    profile = _profile_from_slice(slice_map)
    return evaluate_theorem(theorem_id, profile, r, extras=extras,
                            tol=tol, trunc_tol=trunc_tol)


# ----------------------------------------------------------------------
# sharpness scans
# ----------------------------------------------------------------------


def default_scan_grid(steps: int = 256) -> np.ndarray:
    """Family-parameter grid: dense on [0, 0.98] plus points pushing a -> 1.

    Includes 0 (the monomial member), 1/3 (the maximizer of the
    vanishing-start envelope at its sharp radius for shape (0, 1)), and
    near-boundary values where the origin-weighted scans peak.
    """
    grid = np.linspace(0.0, 0.98, steps)
    extra = np.array([1.0 / 3.0, 0.99, 0.995, 0.999, 0.9995, 0.9999])
    return np.unique(np.concatenate([grid, extra]))


def _lacunary_family_mods(a_grid: np.ndarray, length: int) -> np.ndarray:
    """Moduli of z^m (a - z^p)/(1 - a z^p) per family parameter, as rows.

    Row layout: mu_0 = a, mu_k = (1 - a^2) a^(k-1) for k >= 1.
    """
    a = np.asarray(a_grid, dtype=float)[:, None]
    k = np.arange(length)[None, :]
    mods = np.where(k == 0, a, (1.0 - a ** 2) * a ** np.maximum(k - 1, 0))
    return mods


def sharpness_scan(
    theorem_id: str,
    p: int,
    m: int,
    r: float,
    a_grid: Sequence[float],
    s: Optional[float] = None,
    order: int = 512,
) -> float:
    """Max over the family parameter of the extremal left side at radius r.

    Thm31:  a^s + (1 - a^2) r/(1 - r)             (closed envelope; needs s)
    Thm32:  a r^(p+m) + (1 - a^2) r^(2p+m)/(1 - r^p)   (closed envelope)
    Thm34, Thm41, Cor43: the lifted automorphism family evaluated through
    the scalar catalog.

    Every family member is a valid class member, so the max stays <= 1
    below the sharp radius and exceeds 1 above it (for Thm31 the
    crossing happens at the smallest per-parameter radius on the grid).
    """
    if theorem_id not in SCAN_IDS:
        raise UnknownTheorem(f"no sharpness scan for id {theorem_id!r}")
    a = np.asarray(a_grid, dtype=float)
    if a.size == 0:
        raise ParameterOutOfRange("empty family-parameter grid")
    if a.min() < 0.0 or a.max() >= 1.0:
        raise ParameterOutOfRange("family parameters must lie in [0, 1)")
    if not 0.0 < r < 1.0:
        raise RadiusOutOfRange(f"scan radius must lie in (0, 1), got {r}")

    if theorem_id == "Thm31":
        if s is None or not s > 0.0:
            raise ParameterOutOfRange("Thm31 scan needs the exponent s > 0")
        vals = a ** float(s) + (1.0 - a ** 2) * r / (1.0 - r)
        return float(vals.max())
    if theorem_id == "Thm32":
        vals = a * r ** (p + m) + (1.0 - a ** 2) * r ** (2 * p + m) / (1.0 - r ** p)
        return float(vals.max())

    length = max(2, (order - m) // p + 1)
    mods = _lacunary_family_mods(a, length)
    lhs, _ = theorem_margins(theorem_id, mods, m, p, [r])
    return float(lhs.max())
