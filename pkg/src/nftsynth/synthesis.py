"""Scattering-pair synthesis: prescribed eigenvalues -> valid (a, b).

The spectral parameter lambda lives in a horizontal strip of the upper
half-plane; z = exp(-2*i*lambda*eps) maps eigenvalues to points outside
the unit circle.  a(z) is built as (minimum-phase radiation factor u)
times (Blaschke product with the prescribed roots), sampled on an
oversampled circle grid and truncated back to D coefficients.
"""

from dataclasses import dataclass, field

import numpy as np

from .poly import circle_samples, coeffs_from_circle
from .specfact import FilterSpec, make_ub, pair_residual

SYNTH_GRID_FACTOR = 4        # a_ideal sampled on a 4D-point circle grid
TAIL_ENERGY_LIMIT = 1e-4     # reject truncations worse than this
ROOT_INNER = 1.0 + 1e-6      # annulus for genuine eigenvalue roots
ROOT_OUTER = float(np.exp(np.pi))


@dataclass
class SpectrumSpec:
    lambdas: list
    delta: float
    D: int
    omega_c: float = 10.0

    def __post_init__(self):
        self.lambdas = [complex(l) for l in self.lambdas]
        FilterSpec(self.D, self.delta, self.omega_c)  # reuse validation
        eps = 1.0 / self.D
        strip = np.pi / (2 * eps)
        for l in self.lambdas:
            if l.imag <= 0:
                raise ValueError(f"eigenvalue {l} not in the open upper half-plane")
            if abs(l.real) > strip:
                raise ValueError(f"Re({l}) outside the strip [-{strip}, {strip}]")
        if len(set(self.lambdas)) != len(self.lambdas):
            raise ValueError("eigenvalues must be pairwise distinct")

    @property
    def eps(self):
        return 1.0 / self.D


@dataclass
class ScatteringPair:
    a: np.ndarray
    b: np.ndarray
    unimodularity_residual: float = field(default=float("nan"))
    truncation_tail_energy: float = field(default=0.0)

    @property
    def D(self):
        return len(self.a)


def lambda_to_z(lam, eps):
    """z = exp(-2*i*lambda*eps); upper half-plane -> outside unit circle."""
    lam = complex(lam)
    strip = np.pi / (2 * eps)
    if abs(lam.real) > strip * (1 + 1e-12):
        raise ValueError(f"Re(lambda)={lam.real} outside [-{strip}, {strip}]")
    return complex(np.exp(-2j * lam * eps))


def z_to_lambda(z, eps):
    """Principal-branch inverse of lambda_to_z."""
    z = complex(z)
    if z == 0:
        raise ValueError("z = 0 has no preimage")
    return complex(np.log(z) / (-2j * eps))


def blaschke_eval(z, roots):
    """Product of (z - z_k)/(1 - z * conj(z_k)); unit modulus on |z| = 1."""
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for zk in roots:
        zk = complex(zk)
        denom = 1.0 - z * np.conj(zk)
        if np.any(np.abs(denom) < 1e-300):
            raise ZeroDivisionError(f"evaluation at a pole 1/conj({zk})")
        out = out * (z - zk) / denom
    return out if out.ndim else complex(out)


def synthesize_ab(spec: SpectrumSpec) -> ScatteringPair:
    """Build the scattering pair for a SpectrumSpec.

    Pipeline: design the low-pass, factor into (u, b), sample
    a_ideal = u * (Blaschke with roots z(lambda_k)) on a 4D-point circle
    grid, truncate to D coefficients, and rotate the global phase so the
    constant coefficient of a is real positive.  The rotation applies to
    both a and b: they are components of one scattering solution, and
    rotating only a would silently conjugate the bound-state norming
    constants whenever the Blaschke factor is negative at infinity.
    """
    pair_ub = make_ub(FilterSpec(spec.D, spec.delta, spec.omega_c))
    eps = spec.eps
    zk = [lambda_to_z(l, eps) for l in spec.lambdas]

    M = SYNTH_GRID_FACTOR * spec.D
    grid = np.exp(2j * np.pi * np.arange(M) / M)
    a_ideal = circle_samples(pair_ub.u, M) * blaschke_eval(grid, zk)
    p, tail = coeffs_from_circle(a_ideal, spec.D)
    if tail > TAIL_ENERGY_LIMIT:
        raise ValueError(
            f"truncation tail energy {tail:.2e} > {TAIL_ENERGY_LIMIT}: "
            f"D={spec.D} too small for the prescribed spectrum"
        )

    phase = np.exp(-1j * np.angle(p[0]))
    a = phase * p
    b = phase * pair_ub.b
    res = pair_residual(a, b, 16 * spec.D)
    return ScatteringPair(
        a=a,
        b=b,
        unimodularity_residual=res,
        truncation_tail_energy=tail,
    )


def validate_pair(pair: ScatteringPair, tol=1e-6):
    """Check the two validity conditions; returns a small report dict."""
    a0 = pair.a[0]
    res = pair_residual(pair.a, pair.b, 16 * len(pair.a))
    ok = (abs(a0.imag) <= tol * max(1.0, abs(a0))) and a0.real >= 0 and res <= tol
    return {
        "a0": complex(a0),
        "a0_real_nonneg": bool(a0.real >= 0 and abs(a0.imag) <= tol * max(1.0, abs(a0))),
        "unimodularity_residual": res,
        "tol": tol,
        "ok": bool(ok),
    }


def filter_roots(roots):
    """Keep roots inside the plausible annulus 1+1e-6 < |z| < e^pi."""
    roots = np.asarray(roots, dtype=complex)
    keep = (np.abs(roots) > ROOT_INNER) & (np.abs(roots) < ROOT_OUTER)
    return roots[keep]


def pair_from_coeffs(a, b, tail_energy=0.0) -> ScatteringPair:
    """Wrap raw coefficient arrays, measuring the unimodularity residual."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return ScatteringPair(
        a=a,
        b=b,
        unimodularity_residual=pair_residual(a, b, 16 * len(a)),
        truncation_tail_energy=tail_energy,
    )
