"""Bound-state energies, three ways.

The first-channel quantization condition on the mirror branch l = -1 - l1
reads  E^2 - M^2 = w (2n - 2 l1(E) - 1)  with w = Be/2M. Because l1 depends
on E through the rotation term, clearing denominators turns the condition
into the quadratic

    2 M alpha E^2 + 2 a B e E + gamma = 0,
    gamma = B e (1 + 2m - alpha - 2 n alpha - 2 Phi) - 2 M^3 alpha,

whose roots are the closed-form branches. The residual form, a bracketed
root scan, and the quadratic are kept as mutually checking routes. The
exceptional channel quantizes as E^2 - M^2 = k C with C = Be/M; the level
index k equals n under the default indexing (the finite-difference
eigensolver arbitrates this, see the test suite) with the alternative
n + m indexing selectable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors importNoRealRootError, ParameterError
from .numerics import brent_root
from .string_model import (StringParams, effective_ell, ell1, ell2,
                           require_magnetic_binding)

__all__ = [
    "SpectrumEntry",
    "oscillator_energy",
    "gamma_coefficient",
    "discriminant",
    "quantization_residual",
    "energy_closed_form",
    "default_bracket",
    "energy_numeric",
    "exceptional_energy",
    "admissible_exceptional_ell2",
]

RESIDUAL_CERTIFICATE = 1e-10


@dataclass(frozen=True)
class SpectrumEntry:
    """One bound-state solution with its self-consistency certificate.

    ``eps_sq`` is E^2 - M^2, ``ell1_at_E`` re-evaluates the first-channel
    angular momentum at the stored energy, and ``residual`` is the value of
    the defining quantization condition at (n, E).
    """

    n: int
    branch: str
    E: float
    eps_sq: float
    ell1_at_E: float
    residual: float
    degenerate: bool = False


def oscillator_energy(omega: float, ell: float, n: int) -> float:
    """Radial-oscillator ladder w (2n + l + 3/2)."""
    if not omega > 0:
        raise ParameterError(f"omega must be positive, got {omega}")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return omega * (2 * n + ell + 1.5)


def gamma_coefficient(p: StringParams, n: int) -> float:
    """Constant term of the energy quadratic."""
    return (p.B * p.e * (1.0 + 2.0 * p.azimuthal_m - p.alpha - 2.0 * n * p.alpha
                         - 2.0 * p.Phi)
            - 2.0 * p.M**3 * p.alpha)


def discriminant(p: StringParams, n: int) -> float:
    """4 a^2 B^2 e^2 - 8 M alpha gamma of the energy quadratic."""
    return 4.0 * (p.a * p.B * p.e) ** 2 - 8.0 * p.M * p.alpha * gamma_coefficient(p, n)


def quantization_residual(p: StringParams, n: int, E: float,
                          branch: str = "mirror") -> float:
    """(E^2 - M^2) minus the channel ladder evaluated at l1(E).

    On the default mirror branch the ladder is w (2n - 2 l1(E) - 1); on the
    direct branch it is 2 n w. Zero exactly at physical energies.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    require_magnetic_binding(p)
    l1 = ell1(p, E)
    leff = effective_ell(l1, branch)
    ladder = oscillator_energy(p.omega, leff, n) - p.omega * (l1 + 1.5)
    return (E * E - p.M**2) - ladder


def _entry(p: StringParams, n: int, branch: str, E: float,
           degenerate: bool = False) -> SpectrumEntry:
    res = quantization_residual(p, n, E)
    scale = max(1.0, E * E)
    if abs(res) > RESIDUAL_CERTIFICATE * scale:
        raise ParameterError(
            f"energy E={E!r} fails its quantization certificate: residual {res:.3g}")
    return SpectrumEntry(n=n, branch=branch, E=E, eps_sq=E * E - p.M**2,
                         ell1_at_E=ell1(p, E), residual=res, degenerate=degenerate)


def energy_closed_form(p: StringParams, n: int):
    """Both closed-form branches at level n (mirror-branch quantization).

    Returns (plus, minus) entries; each is certified against the residual
    on construction. A negative discriminant raises ``NoRealRootError``;
    a vanishing one returns two identical entries flagged degenerate.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    require_magnetic_binding(p)
    disc = discriminant(p, n)
    if disc < 0:
        raise NoRealRootError(
            f"no real bound-state energy at this n: discriminant {disc:.6g} < 0")
    center = -p.a * p.B * p.e / (2.0 * p.M * p.alpha)
    half = math.sqrt(disc) / (4.0 * p.M * p.alpha)
    degenerate = disc == 0.0
    return (_entry(p, n, "plus", center + half, degenerate),
            _entry(p, n, "minus", center - half, degenerate))


def default_bracket(p: StringParams, n: int):
    """Energy bracket wide enough for both branches at desk scale."""
    span = p.M + 10.0 * math.sqrt(abs(p.B * p.e) * (2 * n + 3) / p.M)
    return (-span, span)


def energy_numeric(p: StringParams, n: int, bracket=None, n_scan: int = 800):
    """All quantization-residual roots inside the bracket.

    A uniform sign scan locates candidate intervals, Brent refinement
    polishes each root to 1e-12, and duplicates are merged. No sign change
    means an empty list, not an error.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if bracket is None:
        bracket = default_bracket(p, n)
    lo, hi = bracket
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ParameterError(f"bracket must be finite with lo < hi, got {bracket}")
    f = lambda E: quantization_residual(p, n, E)
    grid = np.linspace(lo, hi, n_scan + 1)
    vals = np.array([f(E) for E in grid])
    roots = []
    for i in range(n_scan):
        if vals[i] == 0.0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(brent_root(f, float(grid[i]), float(grid[i + 1]), tol=1e-12))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    merged = []
    for r in sorted(roots):
        if not merged or abs(r - merged[-1]) > 1e-9 * max(1.0, abs(r)):
            merged.append(r)
    out = []
    for r in merged:
        branch = "plus" if r >= -p.a * p.B * p.e / (2.0 * p.M * p.alpha) else "minus"
        out.append(_entry(p, n, branch, r))
    return out


def admissible_exceptional_ell2(p: StringParams, E: float):
    """(l2_effective, alpha') for the exceptional channel at energy E.

    The centrifugal root with l >= -1/2 is the one that can carry a
    normalizable exceptional state; it must give alpha' = (1 + 2l)/2 > 0.
    """
    l2 = ell2(p, E)
    leff = effective_ell(l2, "auto")
    alpha_prime = 0.5 * (1.0 + 2.0 * leff)
    if alpha_prime <= 0:
        raise ParameterError(
            "exceptional channel not admissible: alpha' = "
            f"{alpha_prime} <= 0 at E = {E}")
    return leff, alpha_prime


def exceptional_energy(p: StringParams, n: int, codim_m: int,
                       indexing: str = "nC", sign: str = "plus") -> SpectrumEntry:
    """Level-n energy of the exceptional channel, E^2 - M^2 = k C.

    ``indexing`` selects k = n ("nC", the default; confirmed by the FD
    eigensolver on the exceptional potential) or k = n + m ("n+mC"). The
    scalar condition is closed in E, so the root is found by Brent on the
    requested sign's half-bracket; admissibility (alpha' > 0 at the
    solution) is then checked.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if codim_m < 0:
        raise ParameterError(f"codim_m must be >= 0, got {codim_m}")
    require_magnetic_binding(p)
    if indexing == "nC":
        k = n
    elif indexing in ("n+mC", "(n+m)C"):
        k = n + codim_m
    else:
        raise ParameterError(f"unknown indexing {indexing!r}; use 'nC' or 'n+mC'")
    if sign not in ("plus", "minus"):
        raise ParameterError(f"sign must be 'plus' or 'minus', got {sign!r}")
    target = p.M**2 + k * p.big_c
    f = lambda E: E * E - target
    hi = math.sqrt(target) * 2.0 + 1.0
    E = brent_root(f, 0.0, hi, tol=1e-13) if sign == "plus" else \
        brent_root(f, -hi, 0.0, tol=1e-13)
    admissible_exceptional_ell2(p, E)  # raises when the channel is closed
    return SpectrumEntry(n=n, branch=sign, E=E, eps_sq=E * E - p.M**2,
                         ell1_at_E=ell1(p, E), residual=E * E - target)
