"""Fiber eigenproblems of the magnetic Robin Laplacian on a disk.

Separation of variables on the disk of radius R reduces the operator
-(grad - i b A)^2 with Robin condition (parameter beta <= 0) to a family of
radial Sturm-Liouville problems indexed by the angular mode m:

    -f'' - f'/r + (m - b r^2/2)^2 / r^2 * f  on (0, R),
    f'(R) = -beta f(R),

posed in L^2((0,R); r dr).  The lowest eigenvalue of the 2-D operator is the
minimum of the fiber ground energies mu_{1,m} over m, and the minimizing mode
satisfies |m| <= b R^2.  When the minimizer is m = 0 the 2-D ground state is
radial and can be re-parametrized by the distance to the boundary, which is
what the transplantation bound in :mod:`magrobin.coarea` consumes.

Discretization: flux-conservative second-order finite differences on a
staggered grid (first node at h/2, last node exactly at R).  The quadratic
form is discretized directly, so the discrete pair (stiffness, mass) is
symmetric tridiagonal / diagonal positive, and the Robin term lands on the
last diagonal entry.  Eigenvalues are extracted by LAPACK bisection plus
inverse iteration on the similarity-transformed tridiagonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import InvalidGridError, InvalidInputError, NotRadialError, NumericFailureError

DEFAULT_RADIAL_N = 2048
BETA_C_TOL = 1e-6

__all__ = [
    "FiberParams",
    "RadialGrid",
    "TridiagonalPair",
    "FiberResult",
    "DiskGroundState",
    "RadialProfile",
    "AdmissibilityCertificate",
    "assemble_fiber",
    "fiber_ground",
    "disk_ground",
    "is_admissible",
    "critical_beta_disk",
    "radial_profile",
]


@dataclass(frozen=True)
class FiberParams:
    """Parameters of one angular fiber: mode m, disk radius R, field b, Robin beta."""

    m: int
    R: float
    b: float
    beta: float

    def __post_init__(self):
        if self.R <= 0:
            raise InvalidInputError(f"disk radius must be positive, got R={self.R}")
        if self.b < 0:
            raise InvalidInputError(f"field intensity must be non-negative, got b={self.b}")
        if self.beta > 0:
            raise InvalidInputError(f"Robin parameter must be <= 0, got beta={self.beta}")

    def to_dict(self):
        return {"m": self.m, "R": self.R, "b": self.b, "beta": self.beta}


@dataclass(frozen=True)
class RadialGrid:
    """Nodes in (0, R] with quadrature weights for the measure r dr.

    The weights tile [0, R] with cells centred at the nodes, so
    sum(weights) = R^2/2 exactly for the uniform constructor.
    """

    n: int
    r: np.ndarray
    weights: np.ndarray

    @property
    def R(self) -> float:
        return float(self.r[-1])

    @classmethod
    def uniform(cls, n: int, R: float) -> "RadialGrid":
        """Staggered uniform grid: r_i = (i + 1/2) h with h = R/(n - 1/2).

        The first node sits at h/2 (natural flux condition at the origin) and
        the last node exactly at R (where the Robin term attaches).
        """
        if n < 8:
            raise InvalidGridError(f"radial grid needs at least 8 nodes, got {n}")
        h = R / (n - 0.5)
        r = (np.arange(n) + 0.5) * h
        r[-1] = R
        w = h * r
        w[-1] = 0.5 * h * (R - 0.25 * h)  # last cell [R - h/2, R]
        return cls(n=n, r=r, weights=w)

    def validate(self) -> None:
        if self.n < 8 or len(self.r) != self.n:
            raise InvalidGridError(f"radial grid needs at least 8 nodes, got {self.n}")
        if np.any(np.diff(self.r) <= 0):
            raise InvalidGridError("radial grid nodes must be strictly increasing")
        if self.r[0] <= 0:
            raise InvalidGridError("radial grid nodes must be positive")
        if np.any(self.weights < 0):
            raise InvalidGridError("quadrature weights must be non-negative")


@dataclass(frozen=True)
class TridiagonalPair:
    """Symmetric tridiagonal stiffness and diagonal mass in the r dr inner product."""

    diag: np.ndarray
    off: np.ndarray
    mass: np.ndarray

    def rayleigh(self, f: np.ndarray) -> float:
        """Generalized Rayleigh quotient f'Kf / f'Mf of a real vector."""
        quad = float(self.diag @ f**2 + 2.0 * (self.off @ (f[:-1] * f[1:])))
        return quad / float(self.mass @ f**2)

    def apply(self, f: np.ndarray) -> np.ndarray:
        out = self.diag * f
        out[:-1] += self.off * f[1:]
        out[1:] += self.off * f[:-1]
        return out


def assemble_fiber(params: FiberParams, grid: RadialGrid) -> TridiagonalPair:
    """Assemble the discrete quadratic form of one fiber.

    The kinetic part uses edge conductances (midpoint of r over each
    inter-node interval), the potential (m - b r^2/2)^2 / r^2 is sampled at
    the nodes and weighted by the cell masses, and beta*R is added to the
    last diagonal entry, mirroring the boundary term of the form.

    For m = 0 the absence of an edge left of the first node encodes the
    natural condition lim r f' = 0; for m != 0 the r^-2 blow-up of the
    potential at the first node enforces f(0) = 0 implicitly.
    """
    grid.validate()
    if abs(grid.R - params.R) > 1e-12 * max(1.0, params.R):
        raise InvalidGridError(
            f"grid ends at {grid.R}, inconsistent with params.R={params.R}"
        )
    r, w = grid.r, grid.weights
    dr = np.diff(r)
    r_edge = 0.5 * (r[:-1] + r[1:])
    c = r_edge / dr

    potential = (params.m - 0.5 * params.b * r**2) ** 2 / r**2
    diag = np.zeros(grid.n)
    diag[:-1] += c
    diag[1:] += c
    diag += potential * w
    diag[-1] += params.beta * params.R
    return TridiagonalPair(diag=diag, off=-c, mass=w.copy())


@dataclass(frozen=True)
class FiberResult:
    """Ground state of one fiber: lowest eigenvalue and weighted-normalized eigenfunction.

    mu2 (the second eigenvalue) is kept for spectral-gap checks and is not
    part of the serialized surface.
    """

    params: FiberParams
    mu1: float
    f: np.ndarray
    grid: RadialGrid
    mu2: float
    residual: float

    def to_dict(self):
        return {
            "params": self.params.to_dict(),
            "mu1": self.mu1,
            "f": self.f.tolist(),
            "grid": {"n": self.grid.n, "r": self.grid.r.tolist(), "weights": self.grid.weights.tolist()},
        }


def fiber_ground(params: FiberParams, grid: Optional[RadialGrid] = None,
                 n: int = DEFAULT_RADIAL_N) -> FiberResult:
    """Lowest eigenpair of one fiber operator.

    The eigenvector is normalized in the r dr inner product and sign-fixed so
    that its boundary value is positive.  The ground state of each fiber is
    simple and positive on (0, R); a residual check guards the solve.
    """
    if grid is None:
        grid = RadialGrid.uniform(n, params.R)
    pair = assemble_fiber(params, grid)
    w = pair.mass
    sw = np.sqrt(w)
    d = pair.diag / w
    e = pair.off / (sw[:-1] * sw[1:])
    try:
        vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, 1))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericFailureError(f"tridiagonal eigensolver failed: {exc}") from exc
    mu1, mu2 = float(vals[0]), float(vals[1])
    f = vecs[:, 0] / sw
    f /= np.sqrt(float(w @ f**2))
    if f[-1] < 0:
        f = -f
    res = float(np.linalg.norm(pair.apply(f) - mu1 * w * f) / np.linalg.norm(w * f))
    if not np.isfinite(mu1) or res > 1e-6 * max(1.0, abs(mu1)):
        raise NumericFailureError(
            f"fiber eigensolve residual {res:.3e} exceeds tolerance", residual=res
        )
    # Perron property of the ground state; tolerate inverse-iteration noise in
    # deep exponential tails (large |beta|).
    if f.min() < -1e-10 * f.max():
        raise NumericFailureError(
            f"fiber ground state changes sign (min {f.min():.3e})", residual=res
        )
    return FiberResult(params=params, mu1=mu1, f=f, grid=grid, mu2=mu2, residual=res)


@dataclass(frozen=True)
class RadialProfile:
    """Disk ground state as a function of the distance to the boundary.

    psi(s) = f(R - s) on a uniform s-grid over [0, R]; psi(0) is the boundary
    value, psi'(R) vanishes because the radial ground state has f'(0) = 0.
    """

    R: float
    s: np.ndarray
    psi: np.ndarray
    psi_prime: np.ndarray

    def to_dict(self):
        return {
            "R": self.R,
            "s": self.s.tolist(),
            "psi": self.psi.tolist(),
            "psi_prime": self.psi_prime.tolist(),
        }


@dataclass(frozen=True)
class DiskGroundState:
    """Lowest eigenvalue of the disk operator assembled from the fiber scan."""

    R: float
    b: float
    beta: float
    lambda1: float
    m_star: int
    scanned_modes: list
    profile: Optional[RadialProfile]
    fiber: FiberResult = field(repr=False, compare=False, default=None)

    def to_dict(self):
        return {
            "R": self.R,
            "b": self.b,
            "beta": self.beta,
            "lambda1": self.lambda1,
            "m_star": self.m_star,
            "scanned_modes": [[m, mu] for m, mu in self.scanned_modes],
            "profile": self.profile.to_dict() if self.profile is not None else None,
        }


def _even_spline(f: np.ndarray, r: np.ndarray) -> CubicSpline:
    # even reflection about r = 0 keeps the interpolant smooth at the centre
    rr = np.concatenate([-r[::-1], r])
    ff = np.concatenate([f[::-1], f])
    return CubicSpline(rr, ff)


def radial_profile(state: "DiskGroundState", n_s: Optional[int] = None) -> RadialProfile:
    """Re-parametrize the radial disk ground state by distance to the boundary.

    psi(s) = f(R - s) resampled onto a uniform s-grid; the derivative is
    computed by centred differences with one-sided stencils at the ends.
    """
    if state.m_star != 0 or state.fiber is None:
        raise NotRadialError(
            f"ground state has m_star={state.m_star}; no radial profile exists"
        )
    fib = state.fiber
    R = state.R
    if n_s is None:
        n_s = fib.grid.n + 1
    s = np.linspace(0.0, R, n_s)
    sp = _even_spline(fib.f, fib.grid.r)
    psi = sp(R - s)
    psi_prime = np.gradient(psi, s, edge_order=2)
    return RadialProfile(R=R, s=s, psi=psi, psi_prime=psi_prime)


def disk_ground(R: float, b: float, beta: float, n: int = DEFAULT_RADIAL_N) -> DiskGroundState:
    """Scan all angular modes with |m| <= ceil(b R^2) and take the minimum.

    Both signs of m are scanned (only |m_star| <= b R^2 is guaranteed).  When
    the minimizing mode is 0 a RadialProfile is attached; b R^2 < 1 forces
    m_star = 0.
    """
    grid = RadialGrid.uniform(n, R)
    m_max = int(np.ceil(b * R * R))
    modes = sorted(range(-m_max, m_max + 1), key=lambda m: (abs(m), -m))
    scanned = []
    best: Optional[FiberResult] = None
    for m in modes:
        res = fiber_ground(FiberParams(m=m, R=R, b=b, beta=beta), grid=grid)
        scanned.append((m, res.mu1))
        if best is None or res.mu1 < best.mu1:
            best = res
    scanned.sort(key=lambda t: t[0])
    state = DiskGroundState(
        R=R,
        b=b,
        beta=beta,
        lambda1=best.mu1,
        m_star=best.params.m,
        scanned_modes=scanned,
        profile=None,
        fiber=best,
    )
    if state.m_star == 0:
        state = DiskGroundState(
            R=R, b=b, beta=beta, lambda1=state.lambda1, m_star=0,
            scanned_modes=scanned, profile=radial_profile(state), fiber=best,
        )
    return state


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Record of why a parameter pair is (not) admissible for the transplant bound.

    Admissible means: lowest disk eigenvalue negative and ground state radial.
    The sufficient condition b R^2 < 1 together with beta < beta_c is checked
    alongside whenever it is cheap to do so.
    """

    admissible: bool
    lambda1: float
    m_star: int
    lambda1_negative: bool
    ground_state_radial: bool
    bR2_lt_1: bool
    beta_c: Optional[float]
    beta_below_beta_c: Optional[bool]
    sufficient_condition: Optional[bool]
    reason: str

    def to_dict(self):
        return {
            "admissible": self.admissible,
            "lambda1": self.lambda1,
            "m_star": self.m_star,
            "lambda1_negative": self.lambda1_negative,
            "ground_state_radial": self.ground_state_radial,
            "bR2_lt_1": self.bR2_lt_1,
            "beta_c": self.beta_c,
            "beta_below_beta_c": self.beta_below_beta_c,
            "sufficient_condition": self.sufficient_condition,
            "reason": self.reason,
        }


def is_admissible(R: float, b: float, beta: float, n: int = DEFAULT_RADIAL_N,
                  with_beta_c: bool = True) -> AdmissibilityCertificate:
    """Decide membership in the admissible set (negative energy, radial state).

    The set requires b > 0 and beta < 0 strictly; out-of-range inputs return
    a non-admissible certificate rather than an error.
    """
    if b <= 0 or beta >= 0:
        return AdmissibilityCertificate(
            admissible=False, lambda1=np.nan, m_star=0,
            lambda1_negative=False, ground_state_radial=False,
            bR2_lt_1=b * R * R < 1.0, beta_c=None, beta_below_beta_c=None,
            sufficient_condition=False,
            reason="admissible set requires b > 0 and beta < 0 strictly",
        )
    state = disk_ground(R, b, beta, n=n)
    negative = state.lambda1 < 0.0
    radial = state.m_star == 0
    bR2_lt_1 = b * R * R < 1.0
    beta_c = beta_below = sufficient = None
    if with_beta_c:
        beta_c = critical_beta_disk(R, b, n=n)
        beta_below = beta < beta_c
        sufficient = bR2_lt_1 and beta_below
    if negative and radial:
        reason = "lambda1 < 0 and ground state radial"
    elif not negative:
        reason = f"lambda1 = {state.lambda1:.6e} >= 0"
    else:
        reason = f"ground state carries mode m_star = {state.m_star}"
    return AdmissibilityCertificate(
        admissible=negative and radial, lambda1=state.lambda1, m_star=state.m_star,
        lambda1_negative=negative, ground_state_radial=radial, bR2_lt_1=bR2_lt_1,
        beta_c=beta_c, beta_below_beta_c=beta_below, sufficient_condition=sufficient,
        reason=reason,
    )


def critical_beta_disk(R: float, b: float, tol: float = BETA_C_TOL,
                       n: int = DEFAULT_RADIAL_N) -> float:
    """Critical Robin parameter of the disk: the zero crossing of lambda1 in beta.

    lambda1 is monotone non-decreasing in beta, positive at beta -> 0- (the
    magnetic Neumann energy, b > 0) and certified negative below
    -R^3 b^2 / 16 by the constant test function.  Bisect until
    |lambda1| <= tol.
    """
    if b <= 0:
        raise InvalidInputError("critical beta requires b > 0 (beta_c(0) = 0)")
    margin = max(8.0 * tol, 1e-9)
    lo = -(R**3) * b * b / 16.0 - margin
    hi = 0.0

    def lam(beta):
        return disk_ground(R, b, beta, n=n).lambda1

    lam_lo = lam(lo)
    if lam_lo >= 0.0:
        raise NumericFailureError(
            f"beta_c bracket failed: lambda1({lo}) = {lam_lo:.3e} >= 0 "
            "(discretization too coarse)",
            residual=lam_lo,
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lam_mid = lam(mid)
        if abs(lam_mid) <= tol:
            return mid
        if lam_mid < 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericFailureError(
        f"beta_c bisection did not reach |lambda1| <= {tol} in 200 steps",
        residual=lam_mid,
    )
