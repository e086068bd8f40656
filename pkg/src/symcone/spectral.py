"""Spectral machinery: eigenvalue vectors, Jordan frames, spectral functions.

Every element decomposes as ``x = sum_i lambda_i e_i`` over a Jordan frame of
orthonormal primitive idempotents; the eigenvalue vector is kept in
decreasing order with stable tie order.  Symmetric-matrix factors are solved
by the in-house cyclic Jacobi kernel, spin factors in closed form
(``x0 +- ||xbar||``), direct sums by merging factor decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .algebra import (
    AlgebraDescriptor,
    DirectSum,
    Element,
    SpinFactor,
    SymMatrix,
    factor_slices,
    inner,
    norm,
    sym_pack,
    sym_unpack,
    unit,
)
from .majorization import vec_pnorm

JACOBI_TOL = _kernels.JACOBI_TOL
JACOBI_MAX_SWEEPS = _kernels.JACOBI_MAX_SWEEPS
SQRT_CLAMP_TOL = 1e-10


class JacobiConvergenceError(ArithmeticError):
    """Eigensolver ran out of sweeps; carries the off-diagonal residual."""

    def __init__(self, residual: float, max_sweeps: int):
        self.residual = float(residual)
        self.max_sweeps = int(max_sweeps)
        super().__init__(
            f"Jacobi sweeps exhausted after {max_sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )


class ConeError(ValueError):
    """An operation required an element of the symmetric cone."""


@dataclass(frozen=True)
class JordanFrame:
    """A complete system of orthonormal primitive idempotents."""

    idempotents: tuple

    def __post_init__(self):
        object.__setattr__(self, "idempotents", tuple(self.idempotents))

    @property
    def descriptor(self) -> AlgebraDescriptor:
        return self.idempotents[0].descriptor

    def __len__(self) -> int:
        return len(self.idempotents)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (decreasing) together with a frame realizing them."""

    eigenvalues: np.ndarray
    frame: JordanFrame

    def __post_init__(self):
        vals = np.array(self.eigenvalues, dtype=np.float64, copy=True)
        vals.flags.writeable = False
        object.__setattr__(self, "eigenvalues", vals)

    def reconstruct(self) -> Element:
        return rebuild(self.frame, self.eigenvalues)


def rebuild(frame: JordanFrame, vals: np.ndarray) -> Element:
    """Element sum_i vals[i] * e_i over the given frame."""
    stack = np.stack([e.coords for e in frame.idempotents])
    return Element(frame.descriptor, np.asarray(vals, dtype=np.float64) @ stack)


def frame_residuals(frame: JordanFrame) -> dict:
    """Worst idempotency / orthonormality / unit-sum residuals of a frame."""
    from .algebra import jordan_product  # local import keeps module load light

    es = frame.idempotents
    idem = max(norm(jordan_product(e, e) - e) for e in es)
    ortho = 0.0
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            g = inner(ei, ej)
            ortho = max(ortho, abs(g - (1.0 if i == j else 0.0)))
    total = es[0]
    for e in es[1:]:
        total = total + e
    unit_res = norm(total - unit(frame.descriptor))
    return {"idempotency": idem, "orthonormality": ortho, "unit_sum": unit_res}


def _sorted_desc(vals: np.ndarray) -> np.ndarray:
    order = np.argsort(-vals, kind="stable")
    return order


def sym_eigen(
    M: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (decreasing) and orthonormal eigenvectors of a symmetric matrix.

    Cyclic Jacobi; raises :class:`JacobiConvergenceError` when the
    off-diagonal mass has not dropped below ``tol * max(||M||_F, 1)`` within
    ``max_sweeps`` sweeps.
    """
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix must be square")
    if n > 1:
        asym = np.abs(M - M.T).max()
        if asym > 1e-10 * max(1.0, np.abs(M).max()):
            raise ValueError(f"matrix is not symmetric (residual {asym:.3e})")
        M = (M + M.T) / 2.0
    w, V, off = _kernels.jacobi_eigh(M, tol, max_sweeps)
    thresh = tol * max(float(np.linalg.norm(M)), 1.0)
    if off > thresh:
        raise JacobiConvergenceError(off, max_sweeps)
    order = _sorted_desc(w)
    return w[order], V[:, order]


def sym_eigvals_batch(
    S: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> np.ndarray:
    """Decreasing eigenvalues of a stack of symmetric matrices."""
    S = np.asarray(S, dtype=np.float64)
    W, offs = _kernels.jacobi_vals_batch(S, tol, max_sweeps)
    thresh = tol * np.maximum(np.sqrt((S * S).sum(axis=(1, 2))), 1.0)
    if bool((offs > thresh).any()):
        raise JacobiConvergenceError(float(offs.max()), max_sweeps)
    return -np.sort(-W, axis=1)


def _spin_decompose(x: Element) -> tuple[np.ndarray, list[Element]]:
    d = x.descriptor
    x0 = x.coords[0]
    bar = x.coords[1:]
    r = float(np.linalg.norm(bar))
    if r == 0.0:
        u = np.zeros(d.n - 1)
        u[0] = 1.0  # deterministic completion for the degenerate direction
    else:
        u = bar / r
    cplus = np.concatenate(([0.5], 0.5 * u))
    cminus = np.concatenate(([0.5], -0.5 * u))
    vals = np.array([x0 + r, x0 - r])
    return vals, [Element(d, cplus), Element(d, cminus)]


def _embed(d: DirectSum, sl: slice, part: Element) -> Element:
    coords = np.zeros(d.dim)
    coords[sl] = part.coords
    return Element(d, coords)


def spectral_decompose(x: Element) -> SpectralDecomposition:
    """Spectral decomposition x = sum_i lambda_i e_i, eigenvalues decreasing."""
    d = x.descriptor
    if isinstance(d, SymMatrix):
        w, V = sym_eigen(sym_unpack(x.coords, d.n))
        frame = [Element(d, sym_pack(np.outer(V[:, i], V[:, i]))) for i in range(d.n)]
        return SpectralDecomposition(w, JordanFrame(tuple(frame)))
    if isinstance(d, SpinFactor):
        vals, frame = _spin_decompose(x)
        return SpectralDecomposition(vals, JordanFrame(tuple(frame)))
    vals_all = []
    frame_all = []
    for f, sl in factor_slices(d):
        sub = spectral_decompose(Element(f, x.coords[sl]))
        vals_all.append(sub.eigenvalues)
        frame_all.extend(_embed(d, sl, e) for e in sub.frame.idempotents)
    vals = np.concatenate(vals_all)
    order = _sorted_desc(vals)
    frame = tuple(frame_all[i] for i in order)
    return SpectralDecomposition(vals[order], JordanFrame(frame))


def eigvals(x: Element) -> np.ndarray:
    """Eigenvalue vector lambda(x), sorted decreasing."""
    d = x.descriptor
    if isinstance(d, SymMatrix):
        w, off = _kernels.jacobi_vals(
            sym_unpack(x.coords, d.n), JACOBI_TOL, JACOBI_MAX_SWEEPS
        )
        thresh = JACOBI_TOL * max(float(np.linalg.norm(sym_unpack(x.coords, d.n))), 1.0)
        if off > thresh:
            raise JacobiConvergenceError(off, JACOBI_MAX_SWEEPS)
        return w[_sorted_desc(w)]
    if isinstance(d, SpinFactor):
        x0 = x.coords[0]
        r = float(np.linalg.norm(x.coords[1:]))
        return np.array([x0 + r, x0 - r])
    parts = [eigvals(Element(f, x.coords[sl])) for f, sl in factor_slices(d)]
    vals = np.concatenate(parts)
    return vals[_sorted_desc(vals)]


@lru_cache(maxsize=None)
def standard_frame(d: AlgebraDescriptor) -> JordanFrame:
    """The canonical frame: matrix units for Sym, the first-axis pair for Spin."""
    if isinstance(d, SymMatrix):
        frame = []
        for i in range(d.n):
            M = np.zeros((d.n, d.n))
            M[i, i] = 1.0
            frame.append(Element(d, sym_pack(M)))
        return JordanFrame(tuple(frame))
    if isinstance(d, SpinFactor):
        vals, frame = _spin_decompose(unit(d))
        return JordanFrame(tuple(frame))
    frame = []
    for f, sl in factor_slices(d):
        frame.extend(_embed(d, sl, e) for e in standard_frame(f).idempotents)
    return JordanFrame(tuple(frame))


# --- spectral functions ----------------------------------------------------------

def lowner(phi: Callable[[float], float], x: Element) -> Element:
    """Apply a scalar function to the eigenvalues in place of x's frame."""
    sd = spectral_decompose(x)
    vals = np.array([float(phi(v)) for v in sd.eigenvalues])
    return rebuild(sd.frame, vals)


def abs_el(x: Element) -> Element:
    """|x|: absolute values of the eigenvalues on x's frame."""
    sd = spectral_decompose(x)
    return rebuild(sd.frame, np.abs(sd.eigenvalues))


def sqrt_el(x: Element, tol: float = SQRT_CLAMP_TOL) -> Element:
    """Square root of a cone element; eigenvalues in [-tol, 0) clamp to 0."""
    sd = spectral_decompose(x)
    vals = sd.eigenvalues
    if vals.min() < -tol:
        raise ConeError(
            f"sqrt of an element outside the cone (min eigenvalue {vals.min():.3e})"
        )
    return rebuild(sd.frame, np.sqrt(np.maximum(vals, 0.0)))


def plus_part(x: Element) -> Element:
    sd = spectral_decompose(x)
    return rebuild(sd.frame, np.maximum(sd.eigenvalues, 0.0))


def minus_part(x: Element) -> Element:
    sd = spectral_decompose(x)
    return rebuild(sd.frame, np.maximum(-sd.eigenvalues, 0.0))


def trace(x: Element) -> float:
    """tr(x) = <x, e>, the eigenvalue sum."""
    return inner(x, unit(x.descriptor))


def det(x: Element) -> float:
    """Product of the eigenvalues."""
    return float(np.prod(eigvals(x)))


def pnorm(x: Element, p: float) -> float:
    """Spectral p-norm ||lambda(x)||_p for p in [1, inf]."""
    return vec_pnorm(eigvals(x), p)


def sk(x: Element, k: int) -> float:
    """Sum of the k largest eigenvalues."""
    rank = x.descriptor.rank
    if not 1 <= k <= rank:
        raise ValueError(f"k must lie in 1..{rank}, got {k}")
    return float(np.sum(eigvals(x)[:k]))
