"""Parametrized models of the three subgroups of SO0(1, n+1).

A is the (two-component) extended Lorentz subgroup parametrized by a boost
vector z (|z| < 1), a rotation U in SO(n) and a sign d.  B is SO(n+1) sitting
in the spatial block, stored through its boundary blocks (Lambda, u, w, alpha).
C is the solvable Iwasawa factor, isomorphic to R_+ semidirect R^n with the law
(s1, y1)(s2, y2) = (s1 s2, s2 y1 + y2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from . import minkalg

PARAM_TOL = 1e-10


@dataclass(frozen=True)
class AParam:
    z: np.ndarray
    U: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=float))
        object.__setattr__(self, "U", np.asarray(self.U, dtype=float))
        object.__setattr__(self, "d", int(self.d))

    @property
    def n(self) -> int:
        return self.z.shape[0]


@dataclass(frozen=True)
class BParam:
    lam: np.ndarray
    u: np.ndarray
    w: np.ndarray
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=float))
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "w", np.asarray(self.w, dtype=float))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @property
    def block(self) -> np.ndarray:
        """The (n+1) x (n+1) orthogonal matrix [[Lambda, u], [w^t, alpha]]."""
        m = np.zeros((self.n + 1, self.n + 1))
        m[: self.n, : self.n] = self.lam
        m[: self.n, self.n] = self.u
        m[self.n, : self.n] = self.w
        m[self.n, self.n] = self.alpha
        return m


@dataclass(frozen=True)
class CParam:
    s: float
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.s <= 0.0:
            raise DomainError(f"s must be positive, got {self.s}")

    @property
    def n(self) -> int:
        return self.y.shape[0]


@dataclass(frozen=True)
class CLieParam:
    """Chart coordinates (sdot, ydot) on the Lie algebra of C."""

    sdot: float
    ydot: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sdot", float(self.sdot))
        object.__setattr__(self, "ydot", np.asarray(self.ydot, dtype=float))

    @property
    def n(self) -> int:
        return self.ydot.shape[0]


def check_a(a: AParam, tol: float = PARAM_TOL) -> None:
    if np.dot(a.z, a.z) >= 1.0:
        raise DomainError(f"|z| must be < 1, got |z| = {np.linalg.norm(a.z):.6f}")
    r = np.max(np.abs(a.U.T @ a.U - np.eye(a.n)))
    if r > tol:
        raise DomainError(f"U not orthogonal: residual {r:.3e}")
    if abs(np.linalg.det(a.U) - 1.0) > 1e-8:
        raise DomainError("det U must be +1")
    if a.d not in (-1, 1):
        raise DomainError("d must be -1 or +1")


def check_b(b: BParam, tol: float = PARAM_TOL) -> None:
    n = b.n
    lam, u, w, al = b.lam, b.u, b.w, b.alpha
    res = [
        np.max(np.abs(lam @ lam.T + np.outer(u, u) - np.eye(n))),
        np.max(np.abs(lam @ w + al * u)),
        np.max(np.abs(lam.T @ lam + np.outer(w, w) - np.eye(n))),
        np.max(np.abs(lam.T @ u + al * w)),
        abs(np.dot(u, u) + al * al - 1.0),
        abs(np.dot(w, w) + al * al - 1.0),
    ]
    worst = max(res)
    if worst > tol:
        raise DomainError(f"orthogonality constraints violated: residual {worst:.3e}")


def check_c(c: CParam) -> None:
    if c.s <= 0.0:
        raise DomainError("s must be positive")


def b_identity(n: int) -> BParam:
    return BParam(np.eye(n), np.zeros(n), np.zeros(n), 1.0)


def a_identity(n: int) -> AParam:
    return AParam(np.zeros(n), np.eye(n), 1)


def c_neutral(n: int) -> CParam:
    return CParam(1.0, np.zeros(n))


def _lorentz_block(z: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Boost-times-rotation block of size (n+1) x (n+1); m is the rotation part."""
    n = z.shape[0]
    z2 = float(np.dot(z, z))
    g = np.zeros((n + 1, n + 1))
    g[0, 0] = (1.0 + z2) / (1.0 - z2)
    g[0, 1:] = (2.0 / (1.0 - z2)) * (z @ m)
    g[1:, 0] = (2.0 / (1.0 - z2)) * z
    g[1:, 1:] = (np.eye(n) + (2.0 / (1.0 - z2)) * np.outer(z, z)) @ m
    return g


def embed_a(a: AParam) -> np.ndarray:
    """Group matrix of (z, U, d): Lorentz block in the leading corner, d in the last slot."""
    check_a(a)
    n = a.n
    dmat = np.eye(n)
    dmat[-1, -1] = a.d
    g = np.zeros((n + 2, n + 2))
    g[: n + 1, : n + 1] = _lorentz_block(a.z, a.U @ dmat)
    g[n + 1, n + 1] = a.d
    return g


def recover_a(g: np.ndarray) -> AParam:
    n = g.shape[0] - 2
    d = int(round(g[n + 1, n + 1]))
    if d not in (-1, 1) or np.max(np.abs(g[: n + 1, n + 1])) > 1e-9 or np.max(np.abs(g[n + 1, : n + 1])) > 1e-9:
        raise DomainError("matrix is not in the extended Lorentz subgroup")
    z = g[1 : n + 1, 0] / (1.0 + g[0, 0])
    z2 = float(np.dot(z, z))
    ud = (np.eye(n) - (2.0 / (1.0 + z2)) * np.outer(z, z)) @ g[1 : n + 1, 1 : n + 1]
    dmat = np.eye(n)
    dmat[-1, -1] = d
    a = AParam(z, ud @ dmat, d)
    check_a(a, tol=1e-8)
    return a


def embed_b(b: BParam) -> np.ndarray:
    check_b(b)
    n = b.n
    g = np.eye(n + 2)
    g[1:, 1:] = b.block
    return g


def recover_b(g: np.ndarray, tol: float = 1e-8) -> BParam:
    """Read (Lambda, u, w, alpha) directly off the spatial block."""
    n = g.shape[0] - 2
    if abs(g[0, 0] - 1.0) > tol or np.max(np.abs(g[0, 1:])) > tol or np.max(np.abs(g[1:, 0])) > tol:
        raise DomainError("matrix does not fix the time axis")
    b = BParam(g[1 : n + 1, 1 : n + 1], g[1 : n + 1, n + 1], g[n + 1, 1 : n + 1], g[n + 1, n + 1])
    check_b(b, tol=tol)
    return b


def embed_c(c: CParam) -> np.ndarray:
    check_c(c)
    n, s, y = c.n, c.s, c.y
    y2 = float(np.dot(y, y))
    g = np.zeros((n + 2, n + 2))
    g[0, 0] = (s * s + 1.0 + y2) / (2.0 * s)
    g[0, 1 : n + 1] = -y / s
    g[0, n + 1] = (s * s - 1.0 + y2) / (2.0 * s)
    g[1 : n + 1, 0] = -y
    g[1 : n + 1, 1 : n + 1] = np.eye(n)
    g[1 : n + 1, n + 1] = -y
    g[n + 1, 0] = (s * s - 1.0 - y2) / (2.0 * s)
    g[n + 1, 1 : n + 1] = y / s
    g[n + 1, n + 1] = (s * s + 1.0 - y2) / (2.0 * s)
    return g


def recover_c(g: np.ndarray, tol: float = 1e-8) -> CParam:
    n = g.shape[0] - 2
    s = g[0, 0] + g[n + 1, 0]
    if s <= 0.0:
        raise DomainError("extracted scale is not positive")
    c = CParam(s, -g[1 : n + 1, 0])
    if np.max(np.abs(embed_c(c) - g)) > tol:
        raise DomainError("matrix is not in the solvable subgroup")
    return c


def c_mul(c1: CParam, c2: CParam) -> CParam:
    return CParam(c1.s * c2.s, c2.s * c1.y + c2.y)


def c_inv(c: CParam) -> CParam:
    return CParam(1.0 / c.s, -c.y / c.s)


def _expm1_over(x: float) -> float:
    """(e^x - 1) / x with a short series through the removable point."""
    if abs(x) < 1e-4:
        return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0
    return float(np.expm1(x) / x)


def _log_over(s: float) -> float:
    """log(s) / (s - 1) with a short series through s = 1."""
    u = s - 1.0
    if abs(u) < 1e-4:
        return 1.0 - u / 2.0 + u * u / 3.0 - u * u * u / 4.0
    return float(np.log(s) / u)


def exp_c(x: CLieParam) -> CParam:
    """Group exponential of C in chart coordinates; a global diffeomorphism."""
    return CParam(float(np.exp(x.sdot)), x.ydot * _expm1_over(x.sdot))


def log_c(c: CParam) -> CLieParam:
    return CLieParam(float(np.log(c.s)), c.y * _log_over(c.s))


def c_lie_components(x: CLieParam) -> np.ndarray:
    """Components over (cdot_0, ..., cdot_n): chart (sdot, ydot) <-> -sdot*cdot_0 + sum ydot_k cdot_k."""
    return np.concatenate(([-x.sdot], x.ydot))


def c_lie_from_components(comps: np.ndarray) -> CLieParam:
    comps = np.asarray(comps, dtype=float)
    return CLieParam(-comps[0], comps[1:])


def c_lie_element(x: CLieParam) -> minkalg.LieElement:
    return minkalg.c_element(x.n, c_lie_components(x))


def exp_c_components(comps: np.ndarray) -> CParam:
    return exp_c(c_lie_from_components(comps))


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def so_orthonormalize(m: np.ndarray) -> np.ndarray:
    """QR-orthonormalize and fix the determinant to +1."""
    q, r = np.linalg.qr(m)
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return q


def sample_element(kind: str, seed_or_rng, n: int):
    """Seeded random element of A, B, C or G (the latter as a matrix)."""
    rng = _rng(seed_or_rng)
    if kind == "A":
        v = rng.normal(size=n)
        radius = 0.9 * rng.uniform() ** (1.0 / n)
        z = radius * v / np.linalg.norm(v)
        u = so_orthonormalize(rng.normal(size=(n, n))) if n > 1 else np.eye(1)
        d = int(rng.choice([-1, 1]))
        return AParam(z, u, d)
    if kind == "B":
        q = so_orthonormalize(rng.normal(size=(n + 1, n + 1)))
        return BParam(q[:n, :n], q[:n, n], q[n, :n], q[n, n])
    if kind == "C":
        return CParam(float(np.exp(rng.uniform(-2.0, 2.0))), rng.normal(size=n))
    if kind == "G":
        b = sample_element("B", rng, n)
        c = sample_element("C", rng, n)
        return embed_b(b) @ embed_c(c)
    raise ValueError(f"unknown kind {kind!r}")


def sample_b_prime(seed_or_rng, n: int, alpha_min: float = 0.05) -> BParam:
    """B-sample rejected onto |alpha| >= alpha_min."""
    rng = _rng(seed_or_rng)
    for _ in range(10000):
        b = sample_element("B", rng, n)
        if abs(b.alpha) >= alpha_min:
            return b
    raise RuntimeError("rejection sampling failed")
