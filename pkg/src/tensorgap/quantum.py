"""Certified norm bounds on Herm(n) (x) Herm(m).

Tensors are stored by their coefficient matrix in the product of the
Hilbert-Schmidt orthonormal bases of :mod:`tensorgap.hermitian`:
``z = sum_ab c[a, b] x_a (x) y_b``.  Both factors carry either the trace
norm (``s1``) or the operator norm (``sinf``); the dual ball of one is the
unit ball of the other, which drives the see-saw.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certified import CertifiedInterval
from .config import BUDGET
from .errors import BadProbabilityVector, DimensionMismatch, DimensionTooLarge, ValidationError
from .hermitian import (
    HermitianMatrix,
    herm_coords,
    herm_eigh,
    herm_eigvalsh,
    herm_from_coords,
    hermitian_basis_array,
)


def hermitian_basis(k: int) -> list:
    return [HermitianMatrix.from_complex(b) for b in hermitian_basis_array(k)]


@dataclass(frozen=True, eq=False)
class QuantumTensor:
    n: int
    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        n, m = int(self.n), int(self.m)
        if n < 1 or m < 1:
            raise ValidationError("n and m must be positive")
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (n * n, m * m):
            raise DimensionMismatch(f"coeffs shape {c.shape}, expected {(n * n, m * m)}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("non-finite coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_operator(cls, op, n, m) -> "QuantumTensor":
        """Coefficients of a Hermitian operator on C^n (x) C^m."""
        op = np.asarray(op, complex)
        if op.shape != (n * m, n * m):
            raise DimensionMismatch("operator size does not match n*m")
        t = op.reshape(n, m, n, m)
        bx, by = hermitian_basis_array(n), hermitian_basis_array(m)
        c = np.einsum("aij,bkl,jlik->ab", bx, by, t).real
        return cls(n, m, c)

    @classmethod
    def product(cls, x, y) -> "QuantumTensor":
        x = x if isinstance(x, HermitianMatrix) else HermitianMatrix.from_complex(x)
        y = y if isinstance(y, HermitianMatrix) else HermitianMatrix.from_complex(y)
        return cls(x.k, y.k, np.outer(x.coords(), y.coords()))

    def operator(self) -> np.ndarray:
        """The tensor as a complex Hermitian nm x nm matrix (Kronecker order)."""
        bx, by = hermitian_basis_array(self.n), hermitian_basis_array(self.m)
        t = np.einsum("ab,aij,bkl->ikjl", self.coeffs, bx, by)
        return t.reshape(self.n * self.m, self.n * self.m)

    def flip(self) -> "QuantumTensor":
        return QuantumTensor(self.m, self.n, self.coeffs.T)

    def left(self, y) -> np.ndarray:
        """Partial contraction Tr_2[z (1 (x) y)] as a complex n x n matrix."""
        return herm_from_coords(self.coeffs @ herm_coords(y))

    def right(self, x) -> np.ndarray:
        """Partial contraction Tr_1[z (x (x) 1)] as a complex m x m matrix; this is z-hat(x)."""
        return herm_from_coords(self.coeffs.T @ herm_coords(x))

    def hs_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "coeffs": self.coeffs.tolist()}

    @classmethod
    def from_json(cls, obj) -> "QuantumTensor":
        try:
            return cls(obj["n"], obj["m"], obj["coeffs"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad quantum tensor: {exc}") from None


def _check_size(z: QuantumTensor):
    cap = BUDGET.max_quantum_dim
    if z.n > cap or z.m > cap:
        raise DimensionTooLarge(f"n, m must be at most {cap}")


def _op_eigs(z: QuantumTensor) -> np.ndarray:
    return herm_eigvalsh(z.operator())


def _sign(a: np.ndarray):
    """Maximizer of Tr[a x] over the S_inf ball and the trace norm it attains."""
    w, v = herm_eigh(a)
    s = np.where(w >= 0, 1.0, -1.0)
    return (v * s) @ v.conj().T, float(np.abs(w).sum())


def _top_projector(a: np.ndarray):
    """Maximizer of Tr[a x] over the S_1 ball and the operator norm it attains."""
    w, v = herm_eigh(a)
    i = int(np.argmax(np.abs(w)))
    s = 1.0 if w[i] >= 0 else -1.0
    return s * np.outer(v[:, i], v[:, i].conj()), float(abs(w[i]))


# dual-ball maximizer (with its value), per factor norm
_BEST = {"s1": _sign, "sinf": _top_projector}


def seesaw(z: QuantumTensor, kind: str = "s1", seed: int = 0, restarts: int = 16,
           max_rounds: int = 500, history: list | None = None):
    """Alternating exact maximization of Tr[z (x (x) y)] over the dual balls.

    Returns (value, x, y).  If ``history`` is a list, the objective after every
    half-step of every restart is appended (as one list per restart).
    """
    best = _BEST[kind]
    rng = np.random.Generator(np.random.Philox(seed))
    top = (0.0, np.eye(z.n, dtype=complex) * 0, np.eye(z.m, dtype=complex) * 0)
    for _ in range(restarts):
        g = herm_from_coords(rng.standard_normal(z.m * z.m))
        y, _ = best(g)
        trace, prev, stall = [], -np.inf, 0
        x = None
        for _ in range(max_rounds):
            x, val = best(z.left(y))
            trace.append(val)
            y, val = best(z.right(x))
            trace.append(val)
            if val - prev <= 1e-10 * max(abs(val), 1e-300):
                stall += 1
                if stall >= 3:
                    break
            else:
                stall = 0
            prev = val
        if history is not None:
            history.append(trace)
        # recompute the attained value from the witness pair
        val = float(np.real(np.trace(z.left(y) @ x)))
        if val > top[0]:
            top = (val, x, y)
    return top


def epsilon_interval(z: QuantumTensor, kind: str = "s1", seed: int = 0,
                     restarts: int = 16) -> CertifiedInterval:
    """Injective norm of z with both factors carrying the norm ``kind``."""
    _check_size(z)
    if not np.any(z.coeffs):
        return CertifiedInterval(0.0, 0.0, {"tag": "zero"}, {"tag": "zero"})
    val, x, y = seesaw(z, kind, seed, restarts)
    sigma = float(np.linalg.svd(z.coeffs, compute_uv=False)[0])
    ev = np.abs(_op_eigs(z))
    if kind == "s1":
        cands = {"trace-norm": float(ev.sum()),
                 "hs-factorization": float(np.sqrt(z.n * z.m) * sigma)}
    else:
        cands = {"operator-norm": float(ev.max()), "hs-factorization": sigma}
    tag = min(cands, key=cands.get)
    upper = cands[tag]
    lower = min(val, upper)
    return CertifiedInterval(
        lower, upper,
        {"tag": "seesaw", "x": herm_coords(x), "y": herm_coords(y), "value": val},
        {"tag": tag, "value": upper, "candidates": cands})


def seesaw_epsilon_S1(z: QuantumTensor, seed: int = 0, restarts: int = 16) -> CertifiedInterval:
    return epsilon_interval(z, "s1", seed, restarts)


def pi_lower_bound_trace(z: QuantumTensor) -> float:
    """Tr[z^2] divided by a certified upper bound on the S_inf injective norm."""
    _check_size(z)
    tr2 = float((z.coeffs ** 2).sum())
    if tr2 == 0.0:
        return 0.0
    eps_inf = min(float(np.abs(_op_eigs(z)).max()),
                  float(np.linalg.svd(z.coeffs, compute_uv=False)[0]))
    return tr2 / eps_inf


@dataclass(frozen=True)
class Decomposition:
    value: float
    weights: np.ndarray
    left: list = field(repr=False)
    right: list = field(repr=False)
    reconstruction_error: float = 0.0
    reference_bound: float = 0.0


def _check_weights(lam, n):
    lam = np.full(n, 1.0 / n) if lam is None else np.asarray(lam, float)
    if lam.shape != (n,) or not np.all(np.isfinite(lam)):
        raise BadProbabilityVector(f"weights must be a length-{n} vector")
    if np.any(lam < -1e-12) or abs(lam.sum() - 1.0) > 1e-9:
        raise BadProbabilityVector("weights must be nonnegative and sum to 1")
    return np.clip(lam, 0.0, None)


def pi_upper_decomposition(z: QuantumTensor, weights=None, basis=None,
                           kind: str = "s1") -> Decomposition:
    """Projective upper bound from z = sum_j E_jj (x) z^(E_jj)
    + 1/2 sum_{j<k} (F_jk (x) z^(F_jk) + H_jk (x) z^(H_jk)).

    ``basis`` is a unitary whose columns give the E_jk; ``weights`` is a
    probability vector over those columns.  The decomposition and bound do
    not depend on the weights; the reference value
    2 sqrt2 (sum sqrt(l_j) + 2 sum_{j<k} sqrt(l_j + l_k)) is only reported.
    """
    _check_size(z)
    n = z.n
    lam = _check_weights(weights, n)
    u = np.eye(n, dtype=complex) if basis is None else np.asarray(basis, complex)
    if u.shape != (n, n) or not np.allclose(u.conj().T @ u, np.eye(n), atol=1e-9):
        raise ValidationError("basis must be an n x n unitary")
    fac = {"s1": lambda a: float(np.abs(herm_eigvalsh(a)).sum()),
           "sinf": lambda a: float(np.abs(herm_eigvalsh(a)).max())}[kind]
    left, right, wts = [], [], []
    for j in range(n):
        left.append(np.outer(u[:, j], u[:, j].conj()))
        wts.append(1.0)
    for j in range(n):
        for k in range(j + 1, n):
            e = np.outer(u[:, j], u[:, k].conj())
            left.append(e + e.conj().T)
            wts.append(0.5)
            left.append(1j * e - 1j * e.conj().T)
            wts.append(0.5)
    right = [z.right(x) for x in left]
    value = sum(w * fac(x) * fac(y) for w, x, y in zip(wts, left, right))
    recon = sum(w * np.kron(x, y) for w, x, y in zip(wts, left, right))
    err = float(np.abs(recon - z.operator()).max())
    s = np.sqrt(lam)
    ref = 2 * np.sqrt(2) * (s.sum() + 2 * sum(np.sqrt(lam[j] + lam[k])
                                               for j in range(n) for k in range(j + 1, n)))
    return Decomposition(float(value), lam, [herm_coords(x) for x in left],
                         [herm_coords(y) for y in right], err, float(ref))


def pi_interval(z: QuantumTensor, kind: str = "s1", seed: int = 0,
                restarts: int = 16, eps: CertifiedInterval | None = None) -> CertifiedInterval:
    """Projective norm with both factors carrying ``kind``.

    ``eps`` may pass an already computed injective interval for the same z.
    """
    _check_size(z)
    if not np.any(z.coeffs):
        return CertifiedInterval(0.0, 0.0, {"tag": "zero"}, {"tag": "zero"})
    if eps is None:
        eps = epsilon_interval(z, kind, seed, restarts)
    ev = np.abs(_op_eigs(z))
    if kind == "s1":
        lows = {"trace-duality": pi_lower_bound_trace(z), "trace-norm": float(ev.sum()),
                "injective-lower": eps.lower}
    else:
        lows = {"operator-norm": float(ev.max()), "injective-lower": eps.lower}
    d1 = pi_upper_decomposition(z, kind=kind)
    d2 = pi_upper_decomposition(z.flip(), kind=kind)
    ups = {"decomposition-left": d1.value, "decomposition-right": d2.value}
    lt, ut = max(lows, key=lows.get), min(ups, key=ups.get)
    return CertifiedInterval(lows[lt], ups[ut], {"tag": lt, "value": lows[lt]},
                             {"tag": ut, "value": ups[ut],
                              "reconstruction_error": max(d1.reconstruction_error,
                                                          d2.reconstruction_error)})


def gue_sample(k: int, seed) -> HermitianMatrix:
    """Hermitian matrix with i.i.d. standard Gaussian basis coordinates.

    With the HS-orthonormal basis this is GUE with E|h_ij|^2 = 1 for all
    entries (diagonal variance 1, off-diagonal real and imaginary parts 1/2).
    """
    if k < 1:
        raise ValidationError("k must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.Generator(np.random.Philox(seed))
    return HermitianMatrix.from_coords(rng.standard_normal(k * k))


def gue_tensor(n: int, m: int, rng) -> QuantumTensor:
    """Tensor with i.i.d. standard Gaussian coefficients (GUE on C^{nm})."""
    return QuantumTensor(n, m, rng.standard_normal((n * n, m * m)))
