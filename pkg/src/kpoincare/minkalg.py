"""Minkowski-signature linear algebra on R^{n+2}.

Everything is expressed against the diagonal form eta = diag(+1, -1, ..., -1)
and the standard antisymmetric generators M_ab of the orthogonal Lie algebra
so(eta).  Matrices are small dense numpy arrays; robustness is preferred over
speed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError

ETA_TOL = 1e-10


@dataclass(frozen=True)
class MinkForm:
    """The bilinear form of signature (+, -, ..., -) on R^{n+2}."""

    n: int

    @property
    def eta(self) -> np.ndarray:
        e = -np.ones(self.n + 2)
        e[0] = 1.0
        return e

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.eta)


def eta_vector(n: int) -> np.ndarray:
    return MinkForm(n).eta


def eta_matrix(n: int) -> np.ndarray:
    return MinkForm(n).matrix


@lru_cache(maxsize=None)
def basis_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Lexicographic index pairs (a, b), a < b, of the generator basis."""
    dim = n + 2
    return tuple((a, b) for a in range(dim) for b in range(a + 1, dim))


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(basis_pairs(n))}


def algebra_dim(n: int) -> int:
    return (n + 2) * (n + 1) // 2


@dataclass(frozen=True)
class LieElement:
    """Element of so(eta), stored as coefficients over the M_ab basis."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (algebra_dim(self.n),):
            raise ValueError(f"expected {algebra_dim(self.n)} coefficients, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    @property
    def matrix(self) -> np.ndarray:
        eta = eta_vector(self.n)
        dim = self.n + 2
        m = np.zeros((dim, dim))
        for x, (a, b) in zip(self.coeffs, basis_pairs(self.n)):
            if x != 0.0:
                m[a, b] += x * eta[b]
                m[b, a] -= x * eta[a]
        return m

    def __add__(self, other: "LieElement") -> "LieElement":
        _same_n(self, other)
        return LieElement(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "LieElement") -> "LieElement":
        _same_n(self, other)
        return LieElement(self.n, self.coeffs - other.coeffs)

    def __mul__(self, t: float) -> "LieElement":
        return LieElement(self.n, t * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "LieElement":
        return LieElement(self.n, -self.coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def in_b(self, tol: float = 1e-12) -> bool:
        """Member of the rotation subalgebra (no index-0 component)."""
        return all(abs(x) <= tol for x, (a, _) in zip(self.coeffs, basis_pairs(self.n)) if a == 0)

    def in_a(self, tol: float = 1e-12) -> bool:
        """Member of the Lorentz subalgebra so(1, n) (no last-index component)."""
        top = self.n + 1
        return all(abs(x) <= tol for x, (_, b) in zip(self.coeffs, basis_pairs(self.n)) if b == top)

    def c_components(self, tol: float = 1e-9) -> np.ndarray:
        """Coefficients over the basis (cdot_0, ..., cdot_n) of the solvable factor.

        Raises if the element does not lie in that subalgebra.
        """
        comps = np.array([self.coeffs[_pair_index(self.n)[(b, self.n + 1)]] for b in range(self.n + 1)])
        if (self - c_element(self.n, comps)).norm() > tol:
            raise DomainError("element is not in the solvable subalgebra")
        return comps


def _same_n(x: LieElement, y: LieElement) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: n={x.n} vs n={y.n}")


def gen_basis(n: int, alpha: int, beta: int) -> LieElement:
    """Basis generator M_ab = e_a (eta e_b)^t - e_b (eta e_a)^t, a < b."""
    if not (0 <= alpha < beta <= n + 1):
        raise ValueError(f"indices must satisfy 0 <= alpha < beta <= n+1, got ({alpha}, {beta})")
    c = np.zeros(algebra_dim(n))
    c[_pair_index(n)[(alpha, beta)]] = 1.0
    return LieElement(n, c)


def lie_from_matrix(n: int, mat: np.ndarray, tol: float = 1e-9) -> LieElement:
    """Read basis coefficients off a matrix, verifying eta-antisymmetry."""
    eta = eta_vector(n)
    coeffs = np.array([mat[a, b] * eta[b] for (a, b) in basis_pairs(n)])
    el = LieElement(n, coeffs)
    if np.max(np.abs(el.matrix - mat)) > tol:
        raise DomainError("matrix is not eta-antisymmetric within tolerance")
    return el


def c_element(n: int, comps: np.ndarray) -> LieElement:
    """Element sum_b comps[b] * cdot_b with cdot_0 = M_{0,n+1}, cdot_k = M_{k,n+1} - M_{k,0}."""
    comps = np.asarray(comps, dtype=float)
    if comps.shape != (n + 1,):
        raise ValueError(f"expected {n + 1} components")
    c = np.zeros(algebra_dim(n))
    idx = _pair_index(n)
    c[idx[(0, n + 1)]] = comps[0]
    for k in range(1, n + 1):
        c[idx[(k, n + 1)]] = comps[k]
        c[idx[(0, k)]] = comps[k]  # -M_{k,0} = +M_{0,k}
    return LieElement(n, c)


def c_basis(n: int) -> list[LieElement]:
    return [c_element(n, np.eye(n + 1)[b]) for b in range(n + 1)]


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Matrix commutator, returned in coefficient form."""
    _same_n(x, y)
    xm, ym = x.matrix, y.matrix
    return lie_from_matrix(x.n, xm @ ym - ym @ xm, tol=1e-7)


def form_k(x: LieElement, y: LieElement) -> float:
    """Invariant bilinear form; on generators k(M_ab, M_ab) = -eta_a eta_b."""
    _same_n(x, y)
    eta = eta_vector(x.n)
    gram = np.array([-eta[a] * eta[b] for (a, b) in basis_pairs(x.n)])
    return float(np.sum(gram * x.coeffs * y.coeffs))


def form_ktilde(n: int, phi: np.ndarray, psi: np.ndarray) -> float:
    """Dual form on coefficient vectors over the basis dual to (M_ab).

    The Gram matrix of k is diagonal with entries +-1, hence self-inverse.
    """
    eta = eta_vector(n)
    gram = np.array([-eta[a] * eta[b] for (a, b) in basis_pairs(n)])
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    return float(np.sum(gram * phi * psi))


def k_iso(x: LieElement) -> np.ndarray:
    """Coefficients of k(x, .) over the dual basis."""
    eta = eta_vector(x.n)
    gram = np.array([-eta[a] * eta[b] for (a, b) in basis_pairs(x.n)])
    return gram * x.coeffs


def mat_exp(x) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a truncated series."""
    m = x.matrix if isinstance(x, LieElement) else np.asarray(x, dtype=float)
    nrm = np.linalg.norm(m, ord=np.inf)
    squarings = max(0, int(np.ceil(np.log2(nrm / 0.5))) if nrm > 0.5 else 0)
    ms = m / (2.0 ** squarings)
    acc = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, 24):
        term = term @ ms / k
        acc = acc + term
    for _ in range(squarings):
        acc = acc @ acc
    return acc


def mat_log(g: np.ndarray, n: int | None = None) -> LieElement | np.ndarray:
    """Principal matrix logarithm by inverse scaling-and-squaring.

    Square roots are taken (Denman-Beavers) until g is close to the identity,
    then a truncated log(1 + E) series is summed.  If n is given the result is
    projected onto so(eta) and returned as a LieElement.
    """
    g = np.asarray(g, dtype=float)
    eig = np.linalg.eigvals(g)
    if np.any((eig.real <= 1e-12) & (np.abs(eig.imag) < 1e-12)):
        raise DomainError("matrix has an eigenvalue on the closed negative real axis; principal log undefined")
    k = 0
    y = g.copy()
    z = np.eye(g.shape[0])
    while np.linalg.norm(y - np.eye(g.shape[0]), ord=np.inf) > 0.25:
        if k > 60:
            raise DomainError("square-root iteration failed to converge")
        yn = 0.5 * (y + np.linalg.inv(z))
        zn = 0.5 * (z + np.linalg.inv(y))
        y, z = yn, zn
        k += 1
    e = y - np.eye(g.shape[0])
    acc = np.zeros_like(e)
    term = np.eye(g.shape[0])
    for j in range(1, 48):
        term = term @ e
        acc = acc + ((-1) ** (j + 1)) * term / j
    out = (2.0 ** k) * acc
    if n is None:
        return out
    # clean up roundoff: project onto eta-antisymmetric matrices
    etam = eta_matrix(n)
    out = 0.5 * (out - etam @ out.T @ etam)
    return lie_from_matrix(n, out, tol=1e-6)


def eta_inverse(g: np.ndarray, n: int) -> np.ndarray:
    """Inverse of an eta-orthogonal matrix: eta g^t eta."""
    etam = eta_matrix(n)
    return etam @ g.T @ etam


def eta_residual(g: np.ndarray, n: int) -> float:
    etam = eta_matrix(n)
    return float(np.max(np.abs(g.T @ etam @ g - etam)))


def enforce_eta(g: np.ndarray, n: int) -> np.ndarray:
    """One polar-type Newton step pulling g back toward the eta-orthogonal set."""
    return 0.5 * (g + eta_inverse(np.linalg.inv(g), n))


def check_group_matrix(g: np.ndarray, n: int, tol: float = ETA_TOL, connected: bool = True) -> None:
    g = np.asarray(g, dtype=float)
    if g.shape != (n + 2, n + 2):
        raise ValueError(f"expected shape {(n + 2, n + 2)}, got {g.shape}")
    r = eta_residual(g, n)
    if r > tol:
        raise DomainError(f"eta-orthogonality violated: residual {r:.3e}")
    if abs(np.linalg.det(g) - 1.0) > 1e-8:
        raise DomainError("determinant is not +1")
    if connected and g[0, 0] < 1.0 - 1e-10:
        raise DomainError("matrix not in the identity component (g00 < 1)")


def ad_action(g: np.ndarray, x: LieElement) -> LieElement:
    """Adjoint action g x g^{-1} for eta-orthogonal g."""
    gi = eta_inverse(g, x.n)
    return lie_from_matrix(x.n, g @ x.matrix @ gi, tol=1e-6)
