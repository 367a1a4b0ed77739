"""The differential groupoid structure carried by G over its compact factor B.

Points are stored in factored form (b; s, y).  The source/target maps, the
partial multiplication, bisection actions, the orbit charts and the
isomorphism with the groupoid over the extended Lorentz subgroup are all
reduced to the closed-form decomposition swaps.
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
    b_identity,
    c_inv,
    c_mul,
    c_neutral,
    embed_a,
    embed_b,
    embed_c,
)
from .decomp import (
    a_factor,
    a_right_of_b,
    ca_project,
    swap_bc_to_cb,
    swap_cb_to_bc,
)

COMPOSE_TOL = 1e-8
GAMMA1_TOL = 1e-10


@dataclass(frozen=True)
class GroupoidPoint:
    b: BParam
    c: CParam

    @property
    def n(self) -> int:
        return self.b.n

    @property
    def matrix(self) -> np.ndarray:
        return embed_b(self.b) @ embed_c(self.c)


@dataclass(frozen=True)
class AGroupoidPoint:
    a: AParam
    c: CParam

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def matrix(self) -> np.ndarray:
        return embed_a(self.a) @ embed_c(self.c)


@dataclass(frozen=True)
class Gamma0Coord:
    """Chart (K, t, x1, x2) on the open orbit component."""

    K: np.ndarray
    t: float
    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "K", np.asarray(self.K, dtype=float))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "x1", np.asarray(self.x1, dtype=float))
        object.__setattr__(self, "x2", np.asarray(self.x2, dtype=float))
        if self.t <= 0.0:
            raise DomainError("t must be positive")


@dataclass(frozen=True)
class PointClass:
    component: str          # "gamma0" | "gamma1"
    in_b_prime: bool
    isotropy: str           # "full" | "one_param"
    on_isotropy_curve: bool


def gb_unit(b: BParam) -> GroupoidPoint:
    return GroupoidPoint(b, c_neutral(b.n))


def gb_ends(g: GroupoidPoint) -> tuple[BParam, BParam]:
    """Left and right base points (target and source)."""
    return g.b, swap_bc_to_cb(g.b, g.c).b


def b_distance(b1: BParam, b2: BParam) -> float:
    return float(np.max(np.abs(b1.block - b2.block)))


def gb_compose(g1: GroupoidPoint, g2: GroupoidPoint, tol: float = COMPOSE_TOL) -> GroupoidPoint:
    """Partial multiplication: glue when the right end of g1 is the left end of g2."""
    mismatch = b_distance(gb_ends(g1)[1], g2.b)
    if mismatch > tol:
        raise DomainError(f"points not composable: end mismatch {mismatch:.3e}")
    return GroupoidPoint(g1.b, c_mul(g1.c, g2.c))


def gb_inverse(g: GroupoidPoint) -> GroupoidPoint:
    return GroupoidPoint(gb_ends(g)[1], c_inv(g.c))


def bisection_apply(c0: CParam, g: GroupoidPoint) -> GroupoidPoint:
    """Action of the global bisection through c0 by left multiplication."""
    moved = swap_bc_to_cb(g.b, c_inv(c0))
    return GroupoidPoint(moved.b, c_mul(c0, g.c))


def classify(g: GroupoidPoint) -> PointClass:
    al = g.b.alpha
    gamma1 = abs(al - 1.0) < GAMMA1_TOL and float(np.max(np.abs(g.b.u))) < GAMMA1_TOL
    left, right = gb_ends(g)
    in_bp = abs(left.alpha) > 1e-12 and abs(right.alpha) > 1e-12
    if gamma1:
        return PointClass("gamma1", in_bp, "full", True)
    curve_y = (g.c.s - 1.0) * g.b.w / (1.0 - al)
    on_curve = float(np.max(np.abs(g.c.y - curve_y))) < 1e-9
    return PointClass("gamma0", in_bp, "one_param", on_curve)


def reflection(v: np.ndarray) -> np.ndarray:
    """Orthogonal reflection of R^{n+1} along the direction (v, -1)."""
    v = np.asarray(v, dtype=float)
    n = v.shape[0]
    v2 = float(np.dot(v, v))
    r = np.zeros((n + 1, n + 1))
    r[:n, :n] = np.eye(n) - (2.0 / (1.0 + v2)) * np.outer(v, v)
    r[:n, n] = 2.0 * v / (1.0 + v2)
    r[n, :n] = 2.0 * v / (1.0 + v2)
    r[n, n] = (v2 - 1.0) / (1.0 + v2)
    return r


def phi_chart(K: np.ndarray, v: np.ndarray) -> BParam:
    """Chart of the non-rotation component: (K, v) -> (K + 1) * R(v)."""
    K = np.asarray(K, dtype=float)
    n = K.shape[0]
    if abs(np.linalg.det(K) + 1.0) > 1e-8:
        raise DomainError("K must have determinant -1")
    blk = np.zeros((n + 1, n + 1))
    blk[:n, :n] = K
    blk[n, n] = 1.0
    m = blk @ reflection(v)
    return BParam(m[:n, :n], m[:n, n], m[n, :n], m[n, n])


def psi_chart(b: BParam) -> tuple[np.ndarray, np.ndarray]:
    """Inverse chart, defined away from alpha = 1."""
    if abs(b.alpha - 1.0) < 1e-12:
        raise DomainError("alpha = 1: point lies in the rotation component")
    K = b.lam - np.outer(b.u, b.w) / (b.alpha - 1.0)
    v = b.w / (1.0 - b.alpha)
    return K, v


def gamma00_action(v: np.ndarray, c: CParam) -> np.ndarray:
    """Right action of the solvable factor on the chart base: v . (s, y) = s v - y."""
    return c.s * np.asarray(v, dtype=float) - c.y


def gamma00_swap(K: np.ndarray, v: np.ndarray, c: CParam) -> tuple[CParam, tuple[np.ndarray, np.ndarray]]:
    """Move the solvable factor across a reflection-chart element."""
    v = np.asarray(v, dtype=float)
    s, y = c.s, c.y
    v2 = float(np.dot(v, v))
    vp = gamma00_action(v, c)
    s_t = (1.0 + float(np.dot(vp, vp))) / (s * (1.0 + v2))
    y_t = np.asarray(K, dtype=float) @ (
        y - (2.0 * v / (1.0 + v2)) * (float(np.dot(v, y)) + (s * s - float(np.dot(y, y)) - 1.0) / (2.0 * s))
    )
    return CParam(s_t, y_t), (np.asarray(K, dtype=float), vp)


def gamma00_split(s: float, x1: np.ndarray, x2: np.ndarray) -> tuple[np.ndarray, CParam]:
    """Identify the product of scale group and pair groupoid with the transitive orbit."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    return x1, CParam(s, s * x1 - x2)


def gamma00_split_inv(v: np.ndarray, c: CParam) -> tuple[float, np.ndarray, np.ndarray]:
    v = np.asarray(v, dtype=float)
    return c.s, v, c.s * v - c.y


def gamma_a_iso(p: AGroupoidPoint) -> GroupoidPoint:
    """Transport a Lorentz-base point to the compact-base picture."""
    return GroupoidPoint(a_factor(p.a).b, p.c)


def gamma_a_iso_inv(g: GroupoidPoint) -> AGroupoidPoint:
    left, right = gb_ends(g)
    if abs(left.alpha) <= 1e-12 or abs(right.alpha) <= 1e-12:
        raise DomainError("point not in the restricted groupoid: an end has alpha = 0")
    return AGroupoidPoint(a_right_of_b(g.b), g.c)


def transgroupoid_action(b: BParam, c: CParam) -> BParam:
    """The right action realizing the groupoid as a transformation groupoid."""
    return swap_bc_to_cb(b, c).b


def agp_unit(a: AParam) -> AGroupoidPoint:
    return AGroupoidPoint(a, c_neutral(a.n))


def agp_ends(p: AGroupoidPoint) -> tuple[AParam, AParam]:
    right_b = swap_bc_to_cb(a_factor(p.a).b, p.c).b
    return p.a, ca_project(right_b).a


def a_distance(a1: AParam, a2: AParam) -> float:
    return float(np.max(np.abs(embed_a(a1) - embed_a(a2))))


def agp_compose(p1: AGroupoidPoint, p2: AGroupoidPoint, tol: float = COMPOSE_TOL) -> AGroupoidPoint:
    mismatch = a_distance(agp_ends(p1)[1], p2.a)
    if mismatch > tol:
        raise DomainError(f"points not composable: end mismatch {mismatch:.3e}")
    return AGroupoidPoint(p1.a, c_mul(p1.c, p2.c))


def agp_inverse(p: AGroupoidPoint) -> AGroupoidPoint:
    return AGroupoidPoint(agp_ends(p)[1], c_inv(p.c))


def agp_bisection_apply(c0: CParam, p: AGroupoidPoint) -> AGroupoidPoint:
    """Mirror of the bisection action in the Lorentz-base picture."""
    moved_b = swap_bc_to_cb(a_factor(p.a).b, c_inv(c0)).b
    return AGroupoidPoint(ca_project(moved_b).a, c_mul(c0, p.c))


def point_matrix_residual(g: GroupoidPoint, mat: np.ndarray) -> float:
    return float(np.max(np.abs(g.matrix - mat)))
