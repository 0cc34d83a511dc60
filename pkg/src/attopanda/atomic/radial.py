"""Radial bound and continuum solutions in a screened-Coulomb potential.

Model potential (atomic units)

    V(r) = -(Z + a exp(-b r)) / r

which reduces exactly to the Coulomb problem for a = 0 (analytic
hydrogenic orbitals, pure Coulomb scattering phases) and supports
Cooper-minimum-like sign changes of dipole integrals for a > 0.

Continuum waves u_{eps L}(r) solve

    u'' = [ l(l+1)/r^2 + 2 V(r) - k^2 ] u,     k = sqrt(2 eps),

integrated outward with the Numerov scheme and matched at the outer grid
edge to Coulomb functions F_L, G_L (asymptotic expansion), which fixes
the scattering phase eta_L = sigma_L + delta_L and the energy
normalization

    u(r) ~ sqrt(2/(pi k)) sin(k r + (Z/k) ln(2 k r) - L pi/2 + eta_L).

Bound orbitals for a = 0 are evaluated from the closed-form hydrogenic
radial functions; for a > 0 the radial Hamiltonian is diagonalized on
the uniform grid (tridiagonal finite differences) and the eigenvector
with n - l - 1 interior nodes is selected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import eigh_tridiagonal
from scipy.special import eval_genlaguerre, loggamma, xlogy

from ..errors import ConvergenceError, DomainError, GridError, SelectionRuleError

_UNIFORM_RTOL = 1e-10


@dataclass(frozen=True)
class CentralPotential:
    """V(r) = -(Z + a e^{-b r})/r with asymptotic charge Z."""

    Z: float
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if self.Z <= 0.0:
            raise DomainError("asymptotic charge Z must be > 0")
        if self.a < 0.0:
            raise DomainError("short-range depth a must be >= 0")
        if self.b <= 0.0:
            raise DomainError("short-range decay b must be > 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return -(self.Z + self.a * np.exp(-self.b * r)) / r

    @property
    def is_coulomb(self) -> bool:
        return self.a == 0.0


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid from r_min > 0 to r_max."""

    r: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        if r.ndim != 1 or r.size < 8:
            raise DomainError("radial grid needs at least 8 points")
        if r[0] <= 0.0:
            raise DomainError("radial grid must start at r_min > 0")
        d = np.diff(r)
        if not np.all(d > 0) or not np.all(np.abs(d - d[0]) <= _UNIFORM_RTOL * d[0]):
            raise DomainError("radial grid must be uniform and increasing")
        object.__setattr__(self, "r", r)

    @property
    def step(self) -> float:
        return float(self.r[1] - self.r[0])

    @property
    def r_max(self) -> float:
        return float(self.r[-1])

    def __len__(self):
        return self.r.size

    @classmethod
    def linear(cls, r_max: float, step: float) -> "RadialGrid":
        n = int(round(r_max / step))
        return cls(step * np.arange(1, n + 1))

    @classmethod
    def for_continuum(
        cls, k_max: float, r_max: float = 200.0, points_per_wavelength: int = 24
    ) -> "RadialGrid":
        """Step <= wavelength/points_per_wavelength at the highest momentum."""
        step = min(0.02, 2.0 * math.pi / (points_per_wavelength * k_max))
        return cls.linear(r_max, step)

    @classmethod
    def for_bound(cls, Z: float, n: int, step: float = 0.01) -> "RadialGrid":
        """Extends well past the exponential tail of an n-shell orbital."""
        r_max = (25.0 * n + 2.0 * n * n) / Z + 10.0
        return cls.linear(r_max, step)


@dataclass(frozen=True)
class BoundOrbital:
    """u_{nl}(r) = r R_{nl}(r), normalized to unit norm on its grid."""

    n: int
    l: int
    energy: float
    grid: RadialGrid
    radial: np.ndarray


@dataclass(frozen=True)
class ContinuumWave:
    """Energy-normalized u_{eps L}(r) with total scattering phase eta_L."""

    epsilon: float
    L: int
    phase: float          # eta_L = sigma_L + delta_L
    grid: RadialGrid
    radial: np.ndarray
    coulomb_sigma: float = 0.0
    delta_short: float = 0.0

    @property
    def k(self) -> float:
        return math.sqrt(2.0 * self.epsilon)


def coulomb_phase(Z: float, k: float, L: int) -> float:
    """sigma_L = arg Gamma(L + 1 - i Z/k), via the complex log-Gamma."""
    if k <= 0.0:
        raise DomainError("momentum k must be > 0")
    return float(loggamma(complex(L + 1, -Z / k)).imag)


def hydrogenic_bound_u(Z: float, n: int, l: int, r: np.ndarray) -> np.ndarray:
    """Closed-form u_{nl}(r) = r R_{nl}(r) for the pure Coulomb potential."""
    x = 2.0 * Z * r / n
    lognorm = 0.5 * (
        3.0 * math.log(2.0 * Z / n)
        + math.lgamma(n - l) - math.log(2.0 * n) - math.lgamma(n + l + 1)
    )
    # norm * x^l * e^{-x/2} * L^{2l+1}_{n-l-1}(x), times r for u = r R
    rad = np.exp(lognorm + xlogy(l, x) - x / 2.0) * eval_genlaguerre(
        n - l - 1, 2 * l + 1, x
    )
    return r * rad


def _count_nodes(u: np.ndarray) -> int:
    floor = 1e-8 * np.max(np.abs(u))
    sig = u[np.abs(u) > floor]
    return int(np.sum(np.signbit(sig[1:]) != np.signbit(sig[:-1])))


def solve_bound(pot: CentralPotential, n: int, l: int, grid: RadialGrid) -> BoundOrbital:
    """Bound orbital (n, l): analytic for the Coulomb case, grid
    diagonalization otherwise.  The result is unit-normalized on the grid
    and carries n - l - 1 interior nodes.
    """
    if not (n > l >= 0):
        raise DomainError("need n > l >= 0")
    r = grid.r
    if pot.is_coulomb:
        u = hydrogenic_bound_u(pot.Z, n, l, r)
        energy = -pot.Z**2 / (2.0 * n * n)
        tail = abs(u[-1]) / np.max(np.abs(u))
        if tail > 1e-6:
            raise GridError(f"grid too short for orbital (tail {tail:.2e} at r_max)")
    else:
        h = grid.step
        v_eff = pot(r) + l * (l + 1) / (2.0 * r**2)
        diag = 1.0 / h**2 + v_eff
        off = np.full(len(r) - 1, -0.5 / h**2)
        idx = n - l - 1
        try:
            vals, vecs = eigh_tridiagonal(
                diag, off, select="i", select_range=(idx, idx)
            )
        except Exception as exc:  # LAPACK failure surfaces as convergence error
            raise ConvergenceError(f"bound-state eigensolve failed: {exc}") from exc
        energy = float(vals[0])
        if energy >= 0.0:
            raise ConvergenceError(
                f"state (n={n}, l={l}) not bound on this grid (E={energy:.4g})"
            )
        u = vecs[:, 0]
        first = np.argmax(np.abs(u) > 1e-3 * np.max(np.abs(u)))
        if u[first] < 0:
            u = -u
    norm = math.sqrt(trapezoid(u**2, r))
    u = u / norm
    nodes = _count_nodes(u)
    if nodes != n - l - 1:
        raise ConvergenceError(
            f"node count {nodes} != {n - l - 1} for (n={n}, l={l})"
        )
    return BoundOrbital(n=n, l=l, energy=energy, grid=grid, radial=u)


def coulomb_fg_asymptotic(L: int, eta: float, rho, sigma: float | None = None):
    """Coulomb F_L, G_L from the large-rho asymptotic expansion.

    Standard expansion F = g cos(theta) + f sin(theta),
    G = f cos(theta) - g sin(theta) with
    theta = rho - eta ln(2 rho) - L pi/2 + sigma_L and the (f, g)
    recurrence in inverse powers of rho.  Valid for rho well beyond the
    turning point; terms are accumulated until they stop decreasing.
    """
    rho = np.asarray(rho, dtype=float)
    if sigma is None:
        sigma = float(loggamma(complex(L + 1, eta)).imag)
    theta = rho - eta * np.log(2.0 * rho) - L * math.pi / 2.0 + sigma
    f = np.ones_like(rho)
    g = np.zeros_like(rho)
    fk = np.ones_like(rho)
    gk = np.zeros_like(rho)
    last = np.inf
    for k in range(1, 80):
        ak = (2 * k - 1) * eta / (2 * k * rho)
        bk = (eta**2 + L * (L + 1) - (k - 1) * k) / (2 * k * rho)
        fk, gk = ak * fk - bk * gk, ak * gk + bk * fk
        size = float(np.max(np.hypot(fk, gk)))
        if size > last:  # asymptotic series started diverging
            break
        f = f + fk
        g = g + gk
        last = size
        if size < 1e-16:
            break
    F = g * np.cos(theta) + f * np.sin(theta)
    G = f * np.cos(theta) - g * np.sin(theta)
    return F, G


def solve_continuum(
    pot: CentralPotential, epsilon: float, L: int, grid: RadialGrid
) -> ContinuumWave:
    """Outward Numerov integration matched to Coulomb F/G at the grid edge."""
    if epsilon <= 0.0:
        raise DomainError("continuum energy must be > 0")
    r = grid.r
    h = grid.step
    k = math.sqrt(2.0 * epsilon)
    if k * h > 2.0 * math.pi / 10.0:
        raise GridError(
            f"step {h:.4g} under-resolves the oscillation (k h = {k * h:.3f})"
        )
    q = L * (L + 1) / r**2 + 2.0 * pot(r) - k * k
    t = h * h * q / 12.0
    # regular start u ~ r^{L+1} (1 - Z_tot r / (L+1))
    z_tot = pot.Z + pot.a
    n_pts = len(r)
    u_list = [0.0] * n_pts
    for i in (0, 1):
        u_list[i] = r[i] ** (L + 1) * (1.0 - z_tot * r[i] / (L + 1))
    two_p_ten = (2.0 + 10.0 * t).tolist()
    one_m = (1.0 - t).tolist()
    um1, ui = u_list[0], u_list[1]
    for i in range(1, n_pts - 1):
        un = (two_p_ten[i] * ui - one_m[i - 1] * um1) / one_m[i + 1]
        u_list[i + 1] = un
        um1, ui = ui, un
    u = np.asarray(u_list)

    eta = -pot.Z / k
    sigma = coulomb_phase(pot.Z, k, L)
    quarter = max(2, int(round(math.pi / (2.0 * k * h))))
    i2 = len(r) - 1
    i1 = i2 - quarter
    i3 = i2 - quarter // 2
    if i1 <= len(r) // 2:
        raise GridError("grid too short to isolate the asymptotic region")
    rho = k * r[[i1, i3, i2]]
    F, G = coulomb_fg_asymptotic(L, eta, rho, sigma=sigma)
    m = np.array([[F[0], G[0]], [F[2], G[2]]])
    try:
        c_f, c_g = np.linalg.solve(m, np.array([u[i1], u[i2]]))
    except np.linalg.LinAlgError as exc:
        raise GridError("degenerate asymptotic match points") from exc
    amp = math.hypot(c_f, c_g)
    if amp == 0.0:
        raise GridError("vanishing solution at the matching radius")
    resid = abs(u[i3] - (c_f * F[1] + c_g * G[1])) / amp
    if resid > 1e-4:
        raise GridError(
            f"asymptotic match failed (residual {resid:.2e}; oscillation "
            "under-resolved or r_max too small)"
        )
    delta = math.atan2(c_g, c_f)
    scale = math.sqrt(2.0 / (math.pi * k)) / amp
    return ContinuumWave(
        epsilon=epsilon,
        L=L,
        phase=sigma + delta,
        grid=grid,
        radial=u * scale,
        coulomb_sigma=sigma,
        delta_short=delta,
    )


def radial_dipole(b: BoundOrbital, c: ContinuumWave) -> float:
    """Trapezoid integral <u_{eps L} | r | u_{nl}>; requires |L - l| = 1."""
    if abs(c.L - b.l) != 1:
        raise SelectionRuleError(f"dipole forbids l={b.l} -> L={c.L}")
    if len(b.grid) != len(c.grid) or abs(b.grid.step - c.grid.step) > 1e-12:
        raise DomainError("bound and continuum waves must share one grid")
    r = b.grid.r
    return float(trapezoid(c.radial * r * b.radial, r))
