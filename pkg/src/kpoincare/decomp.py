"""Factorization solvers for the Iwasawa pair and the Lorentz-solvable pair.

The closed-form swap between the two orderings of the global decomposition
G = BC = CB is the workhorse of the whole toolkit; everything downstream
(groupoid structure maps, flows, coproducts, the twist) reduces to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from . import minkalg
from .groups import (
    AParam,
    BParam,
    CParam,
    c_inv,
    c_mul,
    check_a,
    embed_a,
    embed_c,
    recover_a,
    recover_b,
)

B_PRIME_TOL = 1e-12
_ALPHA_ONE_TOL = 1e-13


@dataclass(frozen=True)
class BCFactors:
    b: BParam
    c: CParam


@dataclass(frozen=True)
class CBFactors:
    c: CParam
    b: BParam


@dataclass(frozen=True)
class CAFactors:
    c: CParam
    a: AParam


def swap_m_values(b: BParam, c: CParam) -> tuple[float, float]:
    """The normalizing scalar of the swap, in both printed forms."""
    s, y = c.s, c.y
    y2 = float(np.dot(y, y))
    wy = float(np.dot(b.w, y))
    m_expanded = (
        0.5 * (1.0 / s**2 + y2 / s**2 + 1.0)
        - 0.5 * b.alpha * (1.0 / s**2 + y2 / s**2 - 1.0)
        - wy / s
    )
    if abs(1.0 - b.alpha) > _ALPHA_ONE_TOL:
        v = b.w - ((1.0 - b.alpha) / s) * y
        m_quad = (((1.0 - b.alpha) / s) ** 2 + float(np.dot(v, v))) / (2.0 * (1.0 - b.alpha))
    else:
        m_quad = m_expanded
    return m_expanded, m_quad


def swap_bc_to_cb(b: BParam, c: CParam) -> CBFactors:
    """Unique solution of b*c = c~ * b~ in closed form."""
    n, s, y, al = b.n, c.s, c.y, b.alpha
    lam, u, w = b.lam, b.u, b.w
    y2 = float(np.dot(y, y))
    wy = float(np.dot(w, y))
    m, _ = swap_m_values(b, c)
    if m <= 0.0:
        raise DomainError(f"nonpositive swap normalizer {m:.3e}; input corrupted")
    ms = m * s
    s_t = ms
    y_t = lam @ y - ((s * s - 1.0 - y2) / (2.0 * s)) * u
    u_t = ((1.0 - wy / s) * u - ((1.0 - al) / s) * (lam @ y)) / ms
    w_t = (w - ((1.0 - al) / s) * y) / ms
    al_t = 1.0 - (1.0 - al) / (ms * s)
    if abs(1.0 - al) <= _ALPHA_ONE_TOL:
        lam_t = lam.copy()
        u_t = np.zeros(n)
        w_t = np.zeros(n)
        al_t = 1.0
    else:
        v = w - ((1.0 - al) / s) * y
        denom = ((1.0 - al) / s) ** 2 + float(np.dot(v, v))
        lam_t = (lam + np.outer(u, w) / (1.0 - al)) @ (np.eye(n) - (2.0 / denom) * np.outer(v, v))
    return CBFactors(CParam(s_t, y_t), BParam(lam_t, u_t, w_t, al_t))


def swap_cb_to_bc(c: CParam, b: BParam) -> BCFactors:
    """Unique solution of c~ * b~ = b*c; inverse of the other swap."""
    n, s_t, y_t, al_t = b.n, c.s, c.y, b.alpha
    lam_t, u_t, w_t = b.lam, b.u, b.w
    y2 = float(np.dot(y_t, y_t))
    uy = float(np.dot(u_t, y_t))
    m = 0.5 * (s_t * s_t + y2 + 1.0) - 0.5 * al_t * (s_t * s_t + y2 - 1.0) + uy
    if m <= 0.0:
        raise DomainError(f"nonpositive swap normalizer {m:.3e}; input corrupted")
    p = u_t + (1.0 - al_t) * y_t
    s = s_t / m
    y = (lam_t.T @ y_t - 0.5 * (s_t * s_t + y2 - 1.0) * w_t) / m
    u = (s_t / m) * p
    w = (s_t / m) * ((1.0 - al_t) * (lam_t.T @ y_t) + (1.0 + uy) * w_t)
    al = 1.0 - s_t * s_t * (1.0 - al_t) / m
    if abs(1.0 - al_t) <= _ALPHA_ONE_TOL:
        lam = lam_t.copy()
        u = np.zeros(n)
        w = np.zeros(n)
        al = 1.0
    else:
        denom = s_t * s_t * (1.0 - al_t) ** 2 + float(np.dot(p, p))
        lam = (np.eye(n) - (2.0 / denom) * np.outer(p, p)) @ (lam_t + np.outer(u_t, w_t) / (1.0 - al_t))
    return BCFactors(BParam(lam, u, w, al), CParam(s, y))


def factor_cb(g: np.ndarray) -> CBFactors:
    """Read the decomposition g = c * b off the first column."""
    n = g.shape[0] - 2
    s = g[0, 0] + g[n + 1, 0]
    if s <= 0.0:
        raise DomainError("extracted scale nonpositive; matrix outside the identity component")
    y = -g[1 : n + 1, 0]
    c = CParam(s, y)
    b = recover_b(minkalg.eta_inverse(embed_c(c), n) @ g)
    return CBFactors(c, b)


def factor_bc(g: np.ndarray) -> BCFactors:
    """Read the decomposition g = b * c off the first row."""
    n = g.shape[0] - 2
    denom = g[0, 0] - g[0, n + 1]
    if denom <= 0.0:
        raise DomainError("extracted scale nonpositive; matrix outside the identity component")
    s = 1.0 / denom
    y = -s * g[0, 1 : n + 1]
    c = CParam(s, y)
    b = recover_b(g @ minkalg.eta_inverse(embed_c(c), n))
    return BCFactors(b, c)


def a_factor(a: AParam) -> CBFactors:
    """Closed-form c * b factorization of an extended Lorentz element."""
    check_a(a)
    n, z, d = a.n, a.z, a.d
    z2 = float(np.dot(z, z))
    dmat = np.eye(n)
    dmat[-1, -1] = d
    s = (1.0 + z2) / (1.0 - z2)
    y = -2.0 * z / (1.0 - z2)
    lam = (np.eye(n) - (2.0 / (1.0 + z2)) * np.outer(z, z)) @ a.U @ dmat
    u = -2.0 * d * z / (1.0 + z2)
    w = 2.0 * dmat @ a.U.T @ z / (1.0 + z2)
    al = d * (1.0 - z2) / (1.0 + z2)
    return CBFactors(CParam(s, y), BParam(lam, u, w, al))


def b_right_of_a(a: AParam) -> BParam:
    return a_factor(a).b


def ca_project(b: BParam) -> CAFactors:
    """Split b in the dense set alpha != 0 as (solvable part, Lorentz part)."""
    if abs(b.alpha) <= B_PRIME_TOL:
        raise DomainError("b has alpha = 0: no Lorentz-solvable factorization")
    n = b.n
    sg = 1.0 if b.alpha > 0 else -1.0
    c = CParam(abs(b.alpha), -sg * b.u)
    dmat = np.eye(n)
    dmat[-1, -1] = sg
    z = -sg * b.u / (1.0 + abs(b.alpha))
    umat = (b.lam - (sg / (1.0 + abs(b.alpha))) * np.outer(b.u, b.w)) @ dmat
    a = AParam(z, umat, int(sg))
    check_a(a, tol=1e-8)
    return CAFactors(c, a)


def a_right_of_b(b: BParam) -> AParam:
    return ca_project(b).a


def c_tilde_left_of_b(b: BParam) -> CParam:
    return ca_project(b).c


def b_prime_cs(b: BParam) -> CParam:
    """The (s, y) solving c * a = b for b with alpha != 0; inverse of the left projection."""
    if abs(b.alpha) <= B_PRIME_TOL:
        raise DomainError("b has alpha = 0: no Lorentz-solvable factorization")
    return CParam(1.0 / abs(b.alpha), b.u / b.alpha)


def recover_pair(b1: BParam, b2: BParam, tol: float = 1e-9) -> tuple[CParam, CParam]:
    """A pair (c, c~) with b1 * c = c~ * b2, gauge-fixed to scale 1 on the c side.

    Exists iff both alphas differ from 1 and the shared reflection parts agree.
    """
    if abs(1.0 - b1.alpha) <= 1e-12 or abs(1.0 - b2.alpha) <= 1e-12:
        raise DomainError("alpha = 1: the reflection chart is undefined")
    k1 = b1.lam - np.outer(b1.u, b1.w) / (b1.alpha - 1.0)
    k2 = b2.lam - np.outer(b2.u, b2.w) / (b2.alpha - 1.0)
    mismatch = float(np.max(np.abs(k1 - k2)))
    if mismatch > tol:
        raise DomainError(f"no solution: reflection parts differ by {mismatch:.3e}")
    s = 1.0
    s_t = (b1.alpha - 1.0) / ((b2.alpha - 1.0) * s)
    y_t = b1.u / (s * (1.0 - b2.alpha)) - b2.u / (1.0 - b2.alpha)
    y = b2.w / (b2.alpha - 1.0) - s * b1.w / (b1.alpha - 1.0)
    return CParam(s, y), CParam(s_t, y_t)


def factor_ca(g: np.ndarray) -> CAFactors:
    """Factor g = c * a over the dense decomposable set."""
    cb = factor_cb(g)
    ca = ca_project(cb.b)
    return CAFactors(c_mul(cb.c, ca.c), ca.a)


def a_inverse(a: AParam) -> AParam:
    return recover_a(minkalg.eta_inverse(embed_a(a), a.n))


def factor_ac(g: np.ndarray) -> tuple[AParam, CParam]:
    """Factor g = a * c via the inverse of the c * a split of g^{-1}."""
    n = g.shape[0] - 2
    ca = factor_ca(minkalg.eta_inverse(g, n))
    return a_inverse(ca.a), c_inv(ca.c)


def c_tilde_left(g: np.ndarray) -> CParam:
    """Left solvable projection of a decomposable group element."""
    return factor_ca(g).c
