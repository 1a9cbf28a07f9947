"""Weyl system, Fourier-Wigner transform, coherent states and Bargmann maps.

The phase-space shift is W(z, zeta) = M_zeta L_z,

    [W(z,zeta) u](x)  = exp(i <log x | zeta>) u(z^{-1} x),
    [W(z,zeta)* u](y) = exp(-i <log(z y) | zeta>) u(z y),

and its matrix coefficients define the Fourier-Wigner transform

    FW[u,v](z, zeta) = <W(z,zeta) u, v>
                     = integral exp(i <log y | zeta>) u(z^{-1} y) conj(v(y)) dy.

Composition picks up a multiplier that genuinely depends on the base point,

    W(z,zeta) W(y,eta) = Mult(gamma) W(zy, zeta+eta),
    gamma(x) = exp(-i <log x - log(z^{-1} x) | eta>),

so the family is not a projective representation.  Coherent states are
adjoint shifts of a normalized window, omega_{z,zeta} = W(z,zeta)* omega, the
Bargmann transform is B u = FW[u, omega], and B* B = Id gives the inversion
formula; the range of B B* is the reproducing-kernel space with kernel
p(X, Z) = <omega_X, omega_Z>.

Two evaluation routes are kept for FW: a fast one that factors the y-integral
through a shared phase matrix (one matrix product per transform), and a
literal per-node quadrature; they must agree to reassociation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra
from .fields import Field, XiSamples, gaussian
from .grids import Grid, XiGrid
from .transforms import inner, l2_norm

_PHASE_CACHE: dict = {}


def _phase_matrix(g_grid: Grid, dual_grid: Grid) -> np.ndarray:
    """exp(i <y | zeta>) for y in g_grid, zeta in dual_grid; cached."""
    key = (g_grid, dual_grid)
    out = _PHASE_CACHE.get(key)
    if out is None:
        out = np.exp(1j * (g_grid.nodes() @ dual_grid.nodes().T))
        _PHASE_CACHE[key] = out
    return out


@dataclass(frozen=True)
class PhasePoint:
    """A point (z, zeta) of the phase space Xi = G x g#."""

    z: tuple
    zeta: tuple

    def __init__(self, z, zeta):
        object.__setattr__(self, "z", tuple(float(v) for v in np.atleast_1d(z)))
        object.__setattr__(self, "zeta", tuple(float(v) for v in np.atleast_1d(zeta)))
        if len(self.z) != len(self.zeta):
            raise ValueError("z and zeta must have the same dimension")

    @property
    def zv(self) -> np.ndarray:
        return np.asarray(self.z)

    @property
    def zetav(self) -> np.ndarray:
        return np.asarray(self.zeta)

    @classmethod
    def origin(cls, n: int) -> "PhasePoint":
        return cls(np.zeros(n), np.zeros(n))


@dataclass
class Window:
    """L2-normalized analytic window; norm forced to 1 under its grid."""

    field: Field
    grid: Grid
    raw_norm: float = 1.0

    @classmethod
    def normalized(cls, field: Field, grid: Grid) -> "Window":
        nrm = l2_norm(field, grid)
        if nrm == 0:
            raise ValueError("window has zero quadrature norm")
        return cls((1.0 / nrm) * field, grid, raw_norm=nrm)

    def __call__(self, points):
        return self.field(points)


def make_window(alg: LieAlgebra, grid: Grid, sigma: float = 1.0, center=None) -> Window:
    """Isotropic Gaussian window in exponential coordinates, renormalized by
    the quadrature norm on `grid`."""
    return Window.normalized(gaussian(alg.dim, sigma, center), grid)


# ---------------------------------------------------------------------------
# Weyl system
# ---------------------------------------------------------------------------

def weyl(alg: LieAlgebra, p: PhasePoint, u: Field) -> Field:
    """W(z,zeta) u; exact on analytic fields, unitary in quadrature norm."""
    zinv = alg.inv(p.zv)
    zeta = p.zetav

    def fn(x):
        return np.exp(1j * np.einsum("...i,i->...", x, zeta)) * u(alg.bch(zinv, x))

    return Field(fn, alg.dim, u.domain, u.interpolated)


def weyl_adjoint(alg: LieAlgebra, p: PhasePoint, u: Field) -> Field:
    """W(z,zeta)* u; inverts weyl pointwise."""
    z = p.zv
    zeta = p.zetav

    def fn(y):
        zy = alg.bch(z, y)
        return np.exp(-1j * np.einsum("...i,i->...", zy, zeta)) * u(zy)

    return Field(fn, alg.dim, u.domain, u.interpolated)


def weyl_compose_factor(alg: LieAlgebra, p: PhasePoint, q: PhasePoint, x) -> np.ndarray:
    """Multiplier gamma[(z,zeta),(y,eta); x] with W(p) W(q) = Mult(gamma) W(pq).

    Depends only on eta = q.zeta; modulus one everywhere.
    """
    x = np.asarray(x, float)
    zinv = alg.inv(p.zv)
    eta = q.zetav
    diff = x - alg.bch(zinv, x)
    return np.exp(-1j * np.einsum("...i,i->...", diff, eta))


# ---------------------------------------------------------------------------
# Fourier-Wigner transform
# ---------------------------------------------------------------------------

def fourier_wigner(alg: LieAlgebra, u: Field, v: Field, g_grid: Grid,
                   xi_grid: XiGrid, method: str = "factored") -> XiSamples:
    """FW[u, v] sampled on a XiGrid; y-quadrature over `g_grid`.

    "factored" evaluates the change of variables u(z^{-1}y) conj(v(y)) and
    applies the partial Fourier phase matrix in one matrix product.
    "direct" is the literal per-node quadrature (slow; cross-check route).
    """
    z_nodes, zeta_nodes = xi_grid.node_pairs()
    y = g_grid.nodes()
    if method == "factored":
        shifted = alg.bch(alg.inv(z_nodes)[:, None, :], y[None, :, :])
        g_zy = u(shifted) * np.conjugate(v(y))[None, :]
        E = _phase_matrix(g_grid, xi_grid.dual_grid)
        vals = g_grid.weight * (g_zy @ E)
        return XiSamples(xi_grid, vals)
    if method == "direct":
        vals = np.empty((len(z_nodes), len(zeta_nodes)), dtype=complex)
        vy = np.conjugate(v(y))
        for i, z in enumerate(z_nodes):
            uz = u(alg.bch(alg.inv(z), y))
            for j, zeta in enumerate(zeta_nodes):
                phase = np.exp(1j * (y @ zeta))
                vals[i, j] = g_grid.weight * np.sum(phase * uz * vy)
        return XiSamples(xi_grid, vals)
    raise ValueError(f"unknown method {method!r}")


def fourier_wigner_at(alg: LieAlgebra, u: Field, v: Field, g_grid: Grid,
                      p: PhasePoint) -> complex:
    """FW[u, v] at a single phase-space point."""
    y = g_grid.nodes()
    uz = u(alg.bch(alg.inv(p.zv), y))
    phase = np.exp(1j * (y @ p.zetav))
    return complex(g_grid.weight * np.sum(phase * uz * np.conjugate(v(y))))


# ---------------------------------------------------------------------------
# Coherent states
# ---------------------------------------------------------------------------

def coherent_state(alg: LieAlgebra, w: Window, p: PhasePoint) -> Field:
    """omega_{z,zeta} = W(z,zeta)* omega."""
    return weyl_adjoint(alg, p, w.field)


def coherent_state_bank(alg: LieAlgebra, w: Window, xi_grid: XiGrid,
                        targets: np.ndarray) -> np.ndarray:
    """Samples omega_Z(x) for every Xi node Z, shape (n_xi, n_targets).

    Node order is C order over (z index, zeta index), matching
    ``XiSamples.values.reshape(-1)``.
    """
    z_nodes, zeta_nodes = xi_grid.node_pairs()
    out = np.empty((len(z_nodes) * len(zeta_nodes), len(targets)), dtype=complex)
    for i, z in enumerate(z_nodes):
        zx = alg.bch(z, targets)
        base = w(zx)
        phases = np.exp(-1j * (zx @ zeta_nodes.T))
        out[i * len(zeta_nodes):(i + 1) * len(zeta_nodes), :] = (base[:, None] * phases).T
    return out


def projector(alg: LieAlgebra, w: Window, p: PhasePoint):
    """Rank-one projector onto omega_p, as kernel samples on the window grid."""
    from .operators import OperatorMatrix

    state = coherent_state(alg, w, p)
    return OperatorMatrix.rank_one(w.grid, state)


# ---------------------------------------------------------------------------
# Bargmann transform and the reproducing kernel
# ---------------------------------------------------------------------------

def bargmann(alg: LieAlgebra, w: Window, u: Field, xi_grid: XiGrid,
             g_grid: Grid | None = None) -> XiSamples:
    """B_omega u = FW[u, omega], an isometry into L2(Xi)."""
    return fourier_wigner(alg, u, w.field, g_grid or w.grid, xi_grid)


def bargmann_adjoint(alg: LieAlgebra, w: Window, h: XiSamples, targets) -> np.ndarray:
    """(B_omega)* h = integral h(z,zeta) omega_{z,zeta} d(z,zeta) at `targets`."""
    targets = np.asarray(targets, float)
    z_nodes, zeta_nodes = h.xi_grid.node_pairs()
    acc = np.zeros(len(targets), dtype=complex)
    for i, z in enumerate(z_nodes):
        zx = alg.bch(z, targets)
        phases = np.exp(-1j * (zx @ zeta_nodes.T))
        acc += w(zx) * (phases @ h.values[i, :])
    return h.xi_grid.weight * acc


def bargmann_adjoint_field(alg: LieAlgebra, w: Window, h: XiSamples) -> Field:
    """Adjoint as an analytic field (evaluates the synthesis integral)."""
    def fn(p):
        flat = p.reshape(-1, alg.dim)
        return bargmann_adjoint(alg, w, h, flat).reshape(p.shape[:-1])
    return Field(fn, alg.dim)


def reproducing_kernel(alg: LieAlgebra, w: Window, p: PhasePoint, q: PhasePoint,
                       grid: Grid | None = None) -> complex:
    """p_omega(p, q) = <omega_p, omega_q>; hermitian, p(p, p) = 1."""
    grid = grid or w.grid
    return inner(coherent_state(alg, w, p), coherent_state(alg, w, q), grid)


def reproducing_apply(alg: LieAlgebra, w: Window, h: XiSamples,
                      p: PhasePoint, g_grid: Grid | None = None) -> complex:
    """Apply the range projection of B at one point:

        (P h)(p) = integral <omega_Z, omega_p> h(Z) dZ.

    For h = B u in the range this reproduces h(p).  The kernel acts through
    its first slot; see the repository notes on the orientation.
    """
    g_grid = g_grid or w.grid
    state = coherent_state(alg, w, p)
    # <omega_Z, omega_p> = conj(<omega_p, omega_Z>) = conj(B[omega_p](Z))
    column = fourier_wigner(alg, state, w.field, g_grid, h.xi_grid)
    return complex(h.xi_grid.weight * np.sum(np.conjugate(column.values) * h.values))


def xi_l2_distance(a: XiSamples, b: XiSamples) -> float:
    if a.xi_grid != b.xi_grid:
        raise ValueError("Xi grids differ")
    w = a.xi_grid.weight
    return math.sqrt(max(w * np.sum(np.abs(a.values - b.values) ** 2), 0.0))
