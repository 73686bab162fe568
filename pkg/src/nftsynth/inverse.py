"""Layer peeling: recover the D samples from a scattering pair.

Two implementations of the same map.  `invert_sequential` peels one
sample at a time, O(D^2); it is the normative reference.  `invert_fast`
splits the pair in half, peels the newer half, transfers the older half
through the accumulated matrix, and recurses -- O(D log^2 D).  Both read
each sample from the constant coefficients as Q = -conj(b0)/conj(a0).

Transfer-matrix bookkeeping: the one-step inverse matrix is
(1/theta) * [[1, -Q], [z*conj(Q), z]] times a scalar z^{-1/2}.  The
scalar multiplies a and b identically and cancels in every recovery
ratio, so it is tracked as an integer count of half powers, never
materialized in coefficients.  The polynomial parts have det = z exactly,
hence det(T after n steps) = z^n.
"""

import math
from dataclasses import dataclass

import numpy as np

from .poly import Laurent, poly_mul
from .synthesis import ScatteringPair, validate_pair

LEAF_SIZE = 32          # below this, peel sequentially inside the recursion
SINGULAR_A0 = 1e-14


@dataclass
class Signal:
    samples: np.ndarray
    eps: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)

    @property
    def D(self):
        return len(self.samples)

    @property
    def t(self):
        """Sample times: t[n] = -1 + (n+1)*eps - eps/2 (midpoints)."""
        return -1.0 + (np.arange(1, self.D + 1) - 0.5) * self.eps


@dataclass
class TransferMatrix:
    """2x2 polynomial matrix entries (ascending powers of z) + z^{-1/2} count."""

    t11: Laurent
    t12: Laurent
    t21: Laurent
    t22: Laurent
    half_powers: int


def recover_sample(a, b):
    """Q = -conj(b0)/conj(a0) from the constant (z^0) coefficients."""
    a0 = complex(a[0])
    if abs(a0) < SINGULAR_A0:
        raise ZeroDivisionError("constant coefficient of a vanished: invalid pair")
    return -np.conj(complex(b[0])) / np.conj(a0)


def step_inverse(a, b, Q):
    """One normalized peel step; drops the vanished top coefficient.

    a' = (a - Q*b)/theta, b' = (z*conj(Q)*a + z*b)/theta with the z and
    the z^{-1/2} scalar absorbed into the coefficient reindexing.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = len(a)
    if n == 1:
        return np.ones(0, dtype=complex), np.ones(0, dtype=complex)
    th = np.sqrt(1.0 + abs(Q) ** 2)
    a2 = (a[: n - 1] - Q * b[: n - 1]) / th
    b2 = (np.conj(Q) * a[1:n] + b[1:n]) / th
    return a2, b2


def _pair_arrays(pair, check):
    if isinstance(pair, ScatteringPair):
        if check:
            rep = validate_pair(pair, tol=1e-4)
            if not rep["ok"]:
                raise ValueError(f"pair fails validation: {rep}")
        return np.asarray(pair.a, dtype=complex), np.asarray(pair.b, dtype=complex)
    a, b = pair
    return np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)


def invert_sequential(pair, check=True) -> Signal:
    """O(D^2) normative reference: the recursion written out plainly.

    Scalar arithmetic on purpose -- this is the obviously-correct
    baseline the fast version is checked against, and its cost per
    sample is proportional to the remaining window at every size
    (no vectorization floor hiding the quadratic growth).
    """
    a, b = _pair_arrays(pair, check)
    D = len(a)
    A = [complex(v) for v in a]
    B = [complex(v) for v in b]
    out = np.empty(D, dtype=complex)
    for n in range(D, 1, -1):
        a0 = A[0]
        if abs(a0) < SINGULAR_A0:
            raise ZeroDivisionError(f"singular recovery at step {n}")
        Q = -B[0].conjugate() / a0.conjugate()
        out[n - 1] = Q
        ith = 1.0 / math.sqrt(1.0 + Q.real * Q.real + Q.imag * Q.imag)
        c = Q * ith
        qc = Q.conjugate() * ith
        newA = [ai * ith - c * bi for ai, bi in zip(A, B)]
        del newA[n - 1 :]
        newB = [qc * ai + ith * bi for ai, bi in zip(A[1:n], B[1:n])]
        A, B = newA, newB
    out[0] = recover_sample(A, B)
    return Signal(samples=out, eps=1.0 / D)


def _mat_from_q(Q):
    """Polynomial part of the one-step inverse matrix, entries over z^{+s}."""
    th = np.sqrt(1.0 + abs(Q) ** 2)
    return (
        np.array([1.0 / th], dtype=complex),                   # z^0
        np.array([-Q / th], dtype=complex),                    # z^0
        np.array([0.0, np.conj(Q) / th], dtype=complex),       # z^1
        np.array([0.0, 1.0 / th], dtype=complex),              # z^1
    )


def _padd(x, y):
    if len(x) < len(y):
        x, y = y, x
    out = x.copy()
    out[: len(y)] += y
    return out


def _mat_mul(T2, T1):
    """T2 @ T1 for 2x2 matrices of ascending-power coefficient arrays."""
    return (
        _padd(poly_mul(T2[0], T1[0]), poly_mul(T2[1], T1[2])),
        _padd(poly_mul(T2[0], T1[1]), poly_mul(T2[1], T1[3])),
        _padd(poly_mul(T2[2], T1[0]), poly_mul(T2[3], T1[2])),
        _padd(poly_mul(T2[2], T1[1]), poly_mul(T2[3], T1[3])),
    )


def _mat_reduce(mats):
    """Balanced product of step matrices: mats[-1] @ ... @ mats[0]."""
    while len(mats) > 1:
        nxt = [
            _mat_mul(mats[i + 1], mats[i]) if i + 1 < len(mats) else mats[i]
            for i in range(0, len(mats), 2)
        ]
        mats = nxt
    return mats[0]


def _mat_apply_window(T, A, B, h):
    """First h coefficients (powers z^0..z^{-(h-1)}) of T @ [A; B].

    T entries hold ascending powers z^{+s}; A, B hold powers z^{-j}.
    The z^{-j} output coefficient is sum_s t[s]*src[j+s]: a correlation,
    computed as a convolution against the reversed entry.
    """
    out_a = np.zeros(h, dtype=complex)
    out_b = np.zeros(h, dtype=complex)
    for t, src, out in ((T[0], A, out_a), (T[1], B, out_a),
                        (T[2], A, out_b), (T[3], B, out_b)):
        L = len(t)
        seg = poly_mul(t[::-1], src)[L - 1 : L - 1 + h]
        out[: len(seg)] += seg
    return out_a, out_b


def invert_fast(pair, check=True, leaf_size=LEAF_SIZE):
    """O(D log^2 D) inversion; returns (Signal, TransferMatrix).

    Node contract: the inputs are the first n coefficients of the pair
    after peeling everything newer.  The newer half of the window
    determines its own samples (the constant coefficients of the peeled
    iterates do not depend on the older half), so the recursion peels
    A[:h], B[:h] first, pushes the full window through the accumulated
    matrix, and recurses on the first h coefficients of the result.
    """
    a, b = _pair_arrays(pair, check)
    D = len(a)
    if D & (D - 1):
        raise ValueError(f"D={D} is not a power of two")

    def node(A, B):
        n = len(A)
        if n <= leaf_size:
            A = A.copy()
            B = B.copy()
            qs = np.empty(n, dtype=complex)
            mats = []
            for k in range(n, 0, -1):
                Q = recover_sample(A, B)
                qs[n - k] = Q
                mats.append(_mat_from_q(Q))
                if k == 1:
                    break
                A, B = step_inverse(A, B, Q)
            return qs, _mat_reduce(mats)
        h = n // 2
        qs_hi, T1 = node(A[:h], B[:h])
        A2, B2 = _mat_apply_window(T1, A, B, h)
        qs_lo, T2 = node(A2, B2)
        return np.concatenate([qs_hi, qs_lo]), _mat_mul(T2, T1)

    qs, T = node(a, b)
    tm = TransferMatrix(
        t11=Laurent(T[0], 0),
        t12=Laurent(T[1], 0),
        t21=Laurent(T[2], 0),
        t22=Laurent(T[3], 0),
        half_powers=D,
    )
    return Signal(samples=qs[::-1], eps=1.0 / D), tm


def energy_identity_residual(signal: Signal, a0) -> float:
    """| prod(1 + |Q|^2) * a0^2 - 1 |: the peel's energy bookkeeping check."""
    prod = float(np.prod(1.0 + np.abs(signal.samples) ** 2))
    return abs(prod * float(np.real(a0)) ** 2 - 1.0)
