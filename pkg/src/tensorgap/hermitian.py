"""Hermitian matrices stored as real (symmetric, antisymmetric) pairs.

Spectral quantities go through the real symmetric embedding
``[[re, -im], [im, re]]``, whose spectrum is that of the Hermitian matrix with
every eigenvalue doubled.

Basis convention (Hilbert-Schmidt orthonormal, generalized Gell-Mann), for
size k, in this order:

1. identity / sqrt(k)
2. diag(1,..,1,-l,0,..) / sqrt(l(l+1)) for l = 1..k-1 (l ones)
3. (E_jk + E_kj) / sqrt(2) for j < k, lexicographic
4. -i (E_jk - E_kj) / sqrt(2) for j < k, lexicographic

For k = 2 this is (I, Z, X, Y) / sqrt(2).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .linalg import sym_eig


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        re = np.array(self.re, dtype=float)
        im = np.array(self.im, dtype=float)
        if re.ndim != 2 or re.shape[0] != re.shape[1] or im.shape != re.shape:
            raise DimensionMismatch("real and imaginary parts must be equal square matrices")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise ValidationError("non-finite entries")
        re = (re + re.T) / 2
        im = (im - im.T) / 2
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def k(self) -> int:
        return self.re.shape[0]

    @classmethod
    def from_complex(cls, h) -> "HermitianMatrix":
        h = np.asarray(h, dtype=complex)
        return cls(h.real, h.imag)

    @classmethod
    def from_coords(cls, coords) -> "HermitianMatrix":
        coords = np.asarray(coords, float)
        k = int(round(np.sqrt(len(coords))))
        if k * k != len(coords):
            raise DimensionMismatch(f"{len(coords)} coordinates is not a square count")
        return cls.from_complex(np.einsum("a,aij->ij", coords, hermitian_basis_array(k)))

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im

    def coords(self) -> np.ndarray:
        return herm_coords(self.to_complex())

    def embedding(self) -> np.ndarray:
        return np.block([[self.re, -self.im], [self.im, self.re]])

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues, descending, via ``sym_eig`` on the real embedding."""
        w, _ = sym_eig(self.embedding())
        return w[::2]

    def trace_norm(self) -> float:
        return float(np.abs(self.eigenvalues()).sum())

    def op_norm(self) -> float:
        return float(np.abs(self.eigenvalues()).max())

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.re.shape == other.re.shape and np.allclose(self.re, other.re) \
            and np.allclose(self.im, other.im)


@lru_cache(maxsize=None)
def _basis(k: int) -> np.ndarray:
    mats = [np.eye(k, dtype=complex) / np.sqrt(k)]
    for l in range(1, k):
        d = np.zeros(k)
        d[:l] = 1.0
        d[l] = -l
        mats.append(np.diag(d).astype(complex) / np.sqrt(l * (l + 1)))
    pairs = [(j, q) for j in range(k) for q in range(j + 1, k)]
    for j, q in pairs:
        m = np.zeros((k, k), complex)
        m[j, q] = m[q, j] = 1 / np.sqrt(2)
        mats.append(m)
    for j, q in pairs:
        m = np.zeros((k, k), complex)
        m[j, q] = -1j / np.sqrt(2)
        m[q, j] = 1j / np.sqrt(2)
        mats.append(m)
    out = np.array(mats)
    out.setflags(write=False)
    return out


def hermitian_basis_array(k: int) -> np.ndarray:
    """The basis as a read-only complex array of shape (k*k, k, k)."""
    if k < 1:
        raise ValidationError("k must be at least 1")
    return _basis(int(k))


def herm_coords(h) -> np.ndarray:
    """Coordinates of a complex Hermitian matrix (or stack) in the basis."""
    h = np.asarray(h)
    k = h.shape[-1]
    return np.einsum("aij,...ji->...a", hermitian_basis_array(k), h).real


def herm_from_coords(c) -> np.ndarray:
    """Complex Hermitian matrix (or stack) from basis coordinates."""
    c = np.asarray(c, float)
    k = int(round(np.sqrt(c.shape[-1])))
    return np.einsum("...a,aij->...ij", c, hermitian_basis_array(k))


def real_embedding(h) -> np.ndarray:
    """Real symmetric embedding of a complex Hermitian matrix (or stack)."""
    h = np.asarray(h)
    re, im = h.real, h.imag
    top = np.concatenate([re, -im], axis=-1)
    bottom = np.concatenate([im, re], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def herm_eigvalsh(h) -> np.ndarray:
    """Eigenvalues (ascending) of a Hermitian matrix or stack, via the embedding."""
    w = np.linalg.eigvalsh(real_embedding(h))
    return w[..., ::2]


def herm_eigh(h):
    """Eigen-decomposition of a complex Hermitian matrix via the embedding.

    Returns ascending eigenvalues and complex unit eigenvectors (columns).
    Each doubled eigenvalue of the embedding has eigenvectors (a, b) and
    (-b, a); a + i b is an eigenvector of ``h``.
    """
    h = np.asarray(h, complex)
    k = h.shape[0]
    w, v = np.linalg.eigh(real_embedding(h))
    vecs = v[:k] + 1j * v[k:]
    # pick k mutually orthogonal complex eigenvectors: Gram-Schmidt in order
    chosen, vals = [], []
    for idx in range(2 * k):
        cand = vecs[:, idx].copy()
        for c in chosen:
            cand -= (c.conj() @ cand) * c
        nrm = np.linalg.norm(cand)
        if nrm > 1e-6:
            chosen.append(cand / nrm)
            vals.append(w[idx])
        if len(chosen) == k:
            break
    return np.array(vals), np.array(chosen).T
