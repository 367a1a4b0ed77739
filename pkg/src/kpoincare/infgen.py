"""Projected adjoint actions, modular functions, flows and anchors.

The two splittings of the full orthogonal algebra (rotations + solvable,
Lorentz + solvable) give three projected adjoint representations; their
matrices over the canonical bases drive the vector-field formulas for
bisection flows, the comultiplication legs and the twist generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from . import minkalg
from .groups import (
    AParam,
    BParam,
    CParam,
    c_inv,
    c_mul,
    embed_a,
    embed_b,
    exp_c_components,
)
from .decomp import b_prime_cs, c_tilde_left_of_b, swap_bc_to_cb, swap_cb_to_bc
from .groupoid import GroupoidPoint, AGroupoidPoint, bisection_apply, agp_bisection_apply


@dataclass(frozen=True)
class ProjAd:
    """Matrices of the projected adjoint action at a fixed group element."""

    adB: np.ndarray
    adC: np.ndarray
    adCtilde: np.ndarray


@dataclass(frozen=True)
class TangentAtPoint:
    """A tangent vector xi . g in right trivialization."""

    base: object
    vec: minkalg.LieElement

    @property
    def matrix(self) -> np.ndarray:
        return self.vec.matrix @ self.base.matrix


@lru_cache(maxsize=None)
def _tables(n: int):
    pairs = minkalg.basis_pairs(n)
    idx = {p: i for i, p in enumerate(pairs)}
    b_idx = [i for i, (a, b) in enumerate(pairs) if a >= 1 and b <= n]  # rotations among spatial axes
    # full rotation algebra: indices 1..n+1 both
    b_full = [i for i, (a, b) in enumerate(pairs) if a >= 1]
    a_full = [i for i, (a, b) in enumerate(pairs) if b <= n]
    c_cols = np.zeros((len(pairs), n + 1))
    for beta in range(n + 1):
        c_cols[:, beta] = minkalg.c_element(n, np.eye(n + 1)[beta]).coeffs
    return pairs, idx, b_full, a_full, c_cols


def p_c(x: minkalg.LieElement) -> np.ndarray:
    """Components over the solvable basis of the projection along the rotation algebra."""
    n = x.n
    _, idx, _, _, _ = _tables(n)
    comps = np.empty(n + 1)
    comps[0] = x.coeffs[idx[(0, n + 1)]]
    for k in range(1, n + 1):
        comps[k] = x.coeffs[idx[(0, k)]]
    return comps


def p_b(x: minkalg.LieElement) -> minkalg.LieElement:
    return x - minkalg.c_element(x.n, p_c(x))


def p_c_tilde(x: minkalg.LieElement) -> np.ndarray:
    """Components over the solvable basis of the projection along the Lorentz algebra."""
    n = x.n
    _, idx, _, _, _ = _tables(n)
    return np.array([x.coeffs[idx[(beta, n + 1)]] for beta in range(n + 1)])


def p_a(x: minkalg.LieElement) -> minkalg.LieElement:
    return x - minkalg.c_element(x.n, p_c_tilde(x))


def ad_proj(g: np.ndarray, n: int) -> ProjAd:
    """Matrices of the three projected adjoint actions at g."""
    _, _, b_full, _, _ = _tables(n)
    adc = np.zeros((n + 1, n + 1))
    adct = np.zeros((n + 1, n + 1))
    for beta in range(n + 1):
        img = minkalg.ad_action(g, minkalg.c_element(n, np.eye(n + 1)[beta]))
        adc[:, beta] = p_c(img)
        adct[:, beta] = p_c_tilde(img)
    dim_b = len(b_full)
    adb = np.zeros((dim_b, dim_b))
    for j, col in enumerate(b_full):
        basis_el = minkalg.LieElement(n, np.eye(minkalg.algebra_dim(n))[col])
        img = p_b(minkalg.ad_action(g, basis_el))
        adb[:, j] = img.coeffs[b_full]
    return ProjAd(adb, adc, adct)


def modular(g: np.ndarray, n: int) -> tuple[float, float]:
    """Absolute determinants (j_B, j_C) of the projected adjoint actions."""
    pa = ad_proj(g, n)
    return abs(float(np.linalg.det(pa.adB))), abs(float(np.linalg.det(pa.adC)))


def tr_ad_c(comps: np.ndarray) -> float:
    """Trace of ad restricted to the solvable algebra; only the scaling direction contributes."""
    n = np.asarray(comps).shape[0] - 1
    return n * float(comps[0])


def j_c_of_c(c: CParam) -> float:
    """Closed form of the solvable modular factor on C itself."""
    return float(c.s ** (-c.n))


def w_matrix(a: AParam) -> np.ndarray:
    """Matrix of the Lorentz-projected adjoint action over the solvable basis."""
    n, z, d = a.n, a.z, a.d
    z2 = float(np.dot(z, z))
    d1 = np.eye(n) * d
    d1[-1, -1] = 1.0
    ud1 = a.U @ d1
    w = np.zeros((n + 1, n + 1))
    w[0, 0] = d * (1.0 + z2) / (1.0 - z2)
    w[0, 1:] = (2.0 / (1.0 - z2)) * (z @ ud1)
    w[1:, 0] = d * 2.0 * z / (1.0 - z2)
    w[1:, 1:] = (np.eye(n) + (2.0 / (1.0 - z2)) * np.outer(z, z)) @ ud1
    return w


def w_of_b(b: BParam) -> np.ndarray:
    """Same matrix expressed through the right Lorentz factor of b (alpha != 0)."""
    if abs(b.alpha) <= 1e-12:
        raise DomainError("alpha = 0: no Lorentz factor")
    al, u, wv, lam = b.alpha, b.u, b.w, b.lam
    sg = 1.0 if al > 0 else -1.0
    out = np.zeros((b.n + 1, b.n + 1))
    out[0, 0] = 1.0 / al
    out[0, 1:] = wv / al
    out[1:, 0] = -u / abs(al)
    out[1:, 1:] = sg * (lam - np.outer(u, wv) / al)
    return out


def flow_gb(comps: np.ndarray, t: float, g: GroupoidPoint) -> GroupoidPoint:
    """Bisection flow generated by a solvable direction (components over cdot)."""
    return bisection_apply(exp_c_components(t * np.asarray(comps, dtype=float)), g)


def flow_agp(comps: np.ndarray, t: float, p: AGroupoidPoint) -> AGroupoidPoint:
    return agp_bisection_apply(exp_c_components(t * np.asarray(comps, dtype=float)), p)


def riv_field(comps: np.ndarray, g: GroupoidPoint) -> TangentAtPoint:
    """Right-invariant vector field of the bisection flow at a point."""
    adc = ad_proj(embed_b(g.b), g.n).adC
    vec = minkalg.c_element(g.n, adc @ np.asarray(comps, dtype=float))
    return TangentAtPoint(g, vec)


def riv_field_a(comps: np.ndarray, p: AGroupoidPoint) -> TangentAtPoint:
    adct = ad_proj(embed_a(p.a), p.n).adCtilde
    vec = minkalg.c_element(p.n, adct @ np.asarray(comps, dtype=float))
    return TangentAtPoint(p, vec)


def anchor(comps: np.ndarray, b: BParam) -> minkalg.LieElement:
    """Projection of the flow field to the base: -(P_rot Ad(b) cdot) in the rotation algebra."""
    img = minkalg.ad_action(embed_b(b), minkalg.c_element(b.n, np.asarray(comps, dtype=float)))
    return -1.0 * p_b(img)


def anchor_a(comps: np.ndarray, a: AParam) -> minkalg.LieElement:
    """Base projection in the Lorentz picture: -(P_lor Ad(a) cdot)."""
    img = minkalg.ad_action(embed_a(a), minkalg.c_element(a.n, np.asarray(comps, dtype=float)))
    return -1.0 * p_a(img)


def bisection_image_delta0(
    c0: CParam, g1: GroupoidPoint, g2: GroupoidPoint
) -> tuple[GroupoidPoint, GroupoidPoint]:
    """Pair action of the untwisted comultiplication image of a global bisection.

    The second leg moves by the bisection itself; the first leg moves by the
    bisection of the left solvable part of (b2 c0^{-1}), inverted.
    """
    cb = swap_bc_to_cb(g2.b, c_inv(c0))
    leg2 = GroupoidPoint(cb.b, c_mul(c0, g2.c))
    leg1 = bisection_apply(c_inv(cb.c), g1)
    return leg1, leg2


def bisection_image_delta(
    c0: CParam, g1: GroupoidPoint, g2: GroupoidPoint
) -> tuple[GroupoidPoint, GroupoidPoint]:
    """Pair action of the twisted comultiplication image of a global bisection.

    Defined where both b2 and the moved second-leg base stay in the dense set
    alpha != 0.
    """
    if abs(g2.b.alpha) <= 1e-12:
        raise DomainError("second leg not in the dense set")
    cb = swap_bc_to_cb(g2.b, c_inv(c0))
    if abs(cb.b.alpha) <= 1e-12:
        raise DomainError("moved second leg not in the dense set")
    leg2 = GroupoidPoint(cb.b, c_mul(c0, g2.c))
    # q = (left solvable factor of b2)^{-1} * (left solvable factor of b2 c0^{-1})
    ctl_b2 = c_tilde_left_of_b(g2.b)
    ctl_moved = c_mul(cb.c, c_tilde_left_of_b(cb.b))
    q = c_mul(c_inv(ctl_b2), ctl_moved)
    leg1 = bisection_apply(c_inv(q), g1)
    return leg1, leg2
