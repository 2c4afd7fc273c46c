"""
Levi form on the complex horizontal space and the j-th Levi curvatures.

Two routes are implemented: normalized elementary symmetric functions of the
Levi eigenvalues, and sums of bordered complex Hessian determinants. They
must agree without any extra factor.
"""

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from src.config.settings import Tolerances, settings
from src.geometry.frame import complex_structure, horizontal_complex_basis
from src.profiles.base import RadialProfile
from src.profiles.surface import (
    PointLike,
    as_z,
    complex_gradient,
    complex_hessian,
    complexify,
    real_gradient,
    realify,
)
from src.utils.errors import DegenerateGradientError


def _levels(profile: RadialProfile, j: int) -> int:
    n = profile.dim - 1
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in [1, {n}], got {j}")
    return n


def _complex_grad_norm(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances]) -> float:
    tol = tolerances or settings.tolerances
    norm = float(np.linalg.norm(complex_gradient(profile, q)))
    if norm < tol.grad_tol:
        raise DegenerateGradientError(f"|∂f| below {tol.grad_tol:g}")
    return norm


def levi_form_matrix(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """
    Hermitian n×n matrix l_ab = Σ_jk (Z_a)_j f_{j k̄} conj((Z_b)_k) / |∂f|.

    Computed on the basis returned by horizontal_complex_basis; the sphere of
    radius R gives (1/R)·Id.
    """
    B = horizontal_complex_basis(profile, q, tolerances)
    norm = _complex_grad_norm(profile, q, tolerances)
    A = B @ complex_hessian(profile, q) @ B.conj().T / norm
    return 0.5 * (A + A.conj().T)


def levi_eigenvalues(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Eigenvalues λ_1 >= ... >= λ_n of the Levi matrix."""
    A = levi_form_matrix(profile, q, tolerances)
    if A.size == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(A)[::-1]


def _normalized_symmetric_functions(eigs: np.ndarray) -> np.ndarray:
    n = eigs.shape[0]
    coeffs = np.real(np.poly(eigs))
    return np.array([(-1) ** j * coeffs[j] / comb(n, j) for j in range(1, n + 1)])


def levi_curvature_sym(profile: RadialProfile, q: PointLike, j: int, tolerances: Optional[Tolerances] = None) -> float:
    """L^j = e_j(λ_1..λ_n) / C(n, j)."""
    _levels(profile, j)
    return float(_normalized_symmetric_functions(levi_eigenvalues(profile, q, tolerances))[j - 1])


def levi_curvatures_sym(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """All L^1..L^n by the eigenvalue route."""
    return _normalized_symmetric_functions(levi_eigenvalues(profile, q, tolerances))


def bordered_determinant(profile: RadialProfile, q: PointLike, indices: Sequence[int]) -> float:
    """
    det of the bordered complex Hessian on the index set I.

    Row 0 is (0, f_{ī}), column 0 is (0, f_i), the block is f_{i ī'} for i, i' in I.
    The value is real for a real defining function.
    """
    idx = list(indices)
    fvec = complex_gradient(profile, q)[idx]
    hc = complex_hessian(profile, q)[np.ix_(idx, idx)]
    size = len(idx) + 1
    M = np.zeros((size, size), dtype=complex)
    M[0, 1:] = np.conj(fvec)
    M[1:, 0] = fvec
    M[1:, 1:] = hc
    return float(np.linalg.det(M).real)


def levi_curvature_det(profile: RadialProfile, q: PointLike, j: int, tolerances: Optional[Tolerances] = None) -> float:
    """
    L^j = -Σ_{|I| = j+1} Δ_I / (C(n, j) |∂f|^{j+2}).

    The sum runs over increasing index tuples i_1 < ... < i_{j+1}.
    """
    n = _levels(profile, j)
    norm = _complex_grad_norm(profile, q, tolerances)
    total = sum(
        bordered_determinant(profile, q, I) for I in itertools.combinations(range(profile.dim), j + 1)
    )
    return float(-total / (comb(n, j) * norm ** (j + 2)))


def levi_curvatures_det(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """All L^1..L^n by the determinant route."""
    return np.array([levi_curvature_det(profile, q, j, tolerances) for j in range(1, profile.dim)])


@dataclass(frozen=True)
class BracketCheck:
    """g̃([X, JX], T) by finite differences against l(Z, Z) from the Levi matrix."""

    bracket: float
    levi: float
    residual: float


def levi_bracket_check(
    profile: RadialProfile,
    q: PointLike,
    index: int = 0,
    eps: float = 1e-4,
    tolerances: Optional[Tolerances] = None,
) -> BracketCheck:
    """
    Compare l(Z, Z) with g̃([X, Y], T) for Z = Z_index, X = realify(Z)/√2, Y = J·X.

    X and Y are extended off q as P_H(p)·X(q) and J·P_H(p)·X(q), where P_H is
    the orthogonal projection onto the horizontal space at p; the bracket
    DY[X] - DX[Y] uses central differences of step eps.
    """
    z = as_z(q)
    p0 = realify(z)
    B = horizontal_complex_basis(profile, z, tolerances)
    if not 0 <= index < B.shape[0]:
        raise IndexError(f"No horizontal vector {index} in dimension {B.shape[0]}")
    X0 = realify(B[index]) / np.sqrt(2.0)

    def normal_pair(p):
        grad = real_gradient(profile, complexify(p), tolerances)
        N = -grad / np.linalg.norm(grad)
        return N, complex_structure(N)

    def field_x(p):
        N, T = normal_pair(p)
        return X0 - (X0 @ N) * N - (X0 @ T) * T

    def field_y(p):
        return complex_structure(field_x(p))

    def directional(field, v):
        return (field(p0 + eps * v) - field(p0 - eps * v)) / (2.0 * eps)

    X, Y = field_x(p0), field_y(p0)
    bracket_vec = directional(field_y, X) - directional(field_x, Y)
    _, T = normal_pair(p0)
    bracket = float(bracket_vec @ T)

    A = levi_form_matrix(profile, z, tolerances)
    levi = float(A[index, index].real)
    return BracketCheck(bracket=bracket, levi=levi, residual=abs(bracket - levi))
