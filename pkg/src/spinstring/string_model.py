"""Physical parameters and potentials of the spinning-string Dirac system.

Natural units hbar = c = 1; every quantity is a dimensionless double. The
radial problem is posed in the stretched coordinate x = sqrt(2M) r, where
both spinor channels see a radial oscillator

    V(x) = l(l+1)/x^2 + (Be)^2 x^2 / (16 M^2) + shift,

with channel-dependent effective angular momenta l1, l2 and shifts. On top
of that sit the supersymmetric extensions: the rationally extended
(isotonic) partner built from the superpotential ansatz W = a1/x + a2 x
- f'/f with f = x^2 + c, and the codimension-m exceptional-polynomial
potential on the second channel.

Branch convention: l(l+1) is invariant under l -> -1-l, so each channel
has two admissible oscillator indices. Bound-state construction defaults
to the mirror root -1-l1 on the first channel (the choice the closed-form
spectrum is written in); the direct root is selectable. The helper
:func:`effective_ell` centralizes the mapping.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, SingularityError
from .numerics import brent_root
from .special_functions import laguerre_eval

__all__ = [
    "StringParams",
    "Channel",
    "SusyExtensionParams",
    "mass_density_to_alpha",
    "ctc_radius",
    "vector_potential_phi",
    "ell1",
    "ell2",
    "effective_ell",
    "v_eff",
    "u_eff",
    "v_channel",
    "u_channel",
    "channel_potential",
    "superpotential_w",
    "superpotential_w_prime",
    "partner_potentials",
    "susy_branches",
    "extended_potentials",
    "isotonic_c",
    "isotonic_v2p",
    "vm_potential",
    "exceptional_vm",
    "vm_denominator",
    "find_vm_singularities",
]


@dataclass(frozen=True)
class StringParams:
    """Topological, electromagnetic and matter parameters.

    alpha: conical deficit parameter, in (0, 1] (alpha = 1 - 4*mu)
    a: frame-dragging (rotation) parameter, >= 0
    B: magnetic field strength
    Phi: solenoid flux
    M: fermion mass, > 0
    e: charge
    azimuthal_m: azimuthal quantum number (integer)
    """

    alpha: float
    a: float
    B: float
    Phi: float
    M: float
    e: float
    azimuthal_m: int

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(
                f"alpha must lie in (0, 1], got {self.alpha} (alpha -> 0 is rejected, "
                "the effective angular momenta diverge)")
        if not self.M > 0:
            raise ParameterError(f"M must be positive, got {self.M}")
        if self.a < 0:
            raise ParameterError(f"rotation parameter a must be >= 0, got {self.a}")
        if self.azimuthal_m != int(self.azimuthal_m):
            raise ParameterError(f"azimuthal_m must be an integer, got {self.azimuthal_m}")

    @property
    def omega(self) -> float:
        """Oscillator frequency B*e/(2M)."""
        return self.B * self.e / (2.0 * self.M)

    @property
    def big_c(self) -> float:
        """Coupling C = B*e/M of the exceptional channel (= 2*omega)."""
        return self.B * self.e / self.M

    @property
    def gauss_coeff(self) -> float:
        """Coefficient b of the Gaussian argument g = b x^2, b = B*e/(4M)."""
        return self.B * self.e / (4.0 * self.M)


def require_magnetic_binding(p: StringParams):
    """Raise unless B*e > 0 (Gaussian decay of the bound states)."""
    if not p.B * p.e > 0:
        raise ParameterError(
            f"bound states need B*e > 0, got B*e = {p.B * p.e}")


def _warn_unbound(p: StringParams):
    if not p.B * p.e > 0:
        warnings.warn(
            f"B*e = {p.B * p.e} <= 0: potential is evaluated for plotting only, "
            "no normalizable states exist", stacklevel=3)


def mass_density_to_alpha(mu: float) -> float:
    """Deficit parameter 1 - 4*mu from the linear mass density mu in [0, 0.25)."""
    if not 0.0 <= mu < 0.25:
        raise ParameterError(f"linear mass density must lie in [0, 0.25), got {mu}")
    return 1.0 - 4.0 * mu


def ctc_radius(p: StringParams) -> float:
    """Radius |a|/alpha below which the metric admits closed timelike curves.

    Radial quantities evaluated inside this radius deserve a diagnostic;
    the CLI surfaces it in table metadata.
    """
    return abs(p.a) / p.alpha


def vector_potential_phi(p: StringParams, r) -> float:
    """Azimuthal vector potential -alpha*B*r^2/2 - Phi/e."""
    if p.e == 0:
        raise ParameterError("vector potential needs e != 0")
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0):
        raise DomainError("radius must be >= 0")
    out = -0.5 * p.alpha * p.B * arr**2 - p.Phi / p.e
    return float(out) if np.ndim(r) == 0 else out


def ell1(p: StringParams, E: float) -> float:
    """First-channel effective angular momentum.

    (1 + 2m - 2 alpha + 2 a E - 2 Phi) / (2 alpha); energy-dependent as
    soon as the string rotates, which is what makes the spectrum an
    implicit problem.
    """
    return (1.0 + 2.0 * p.azimuthal_m - 2.0 * p.alpha + 2.0 * p.a * E - 2.0 * p.Phi) / (2.0 * p.alpha)


def ell2(p: StringParams, E: float) -> float:
    """Second-channel effective angular momentum.

    (-1 - 2m - 2 alpha - 2 a E + 2 Phi) / (2 alpha). Identically
    ell2 = -2 - ell1 for any parameters, which the tests assert in place
    of the (inexact) printed mirror map.
    """
    return (-1.0 - 2.0 * p.azimuthal_m - 2.0 * p.alpha - 2.0 * p.a * E + 2.0 * p.Phi) / (2.0 * p.alpha)


def effective_ell(ell: float, branch: str) -> float:
    """Resolve the oscillator index for a channel with centrifugal l(l+1).

    branch 'direct' keeps ell, 'mirror' takes -1-ell, and 'auto' picks the
    root >= -1/2 (the one whose x^{l+1} solution dominates at the origin,
    i.e. the Friedrichs selection a Dirichlet wall makes).
    """
    if branch == "direct":
        return ell
    if branch == "mirror":
        return -1.0 - ell
    if branch == "auto":
        return max(ell, -1.0 - ell)
    raise ParameterError(f"unknown branch {branch!r}")


def v_eff(p: StringParams, ell: float, x):
    """First-channel effective potential l(l+1)/x^2 + w^2 x^2/4 - w(l+3/2).

    ``ell`` is the physical l1 (the shift term is not branch-invariant).
    """
    _warn_unbound(p)
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    w = p.omega
    out = ell * (ell + 1.0) / arr**2 + w * w * arr**2 / 4.0 - w * (ell + 1.5)
    return float(out) if np.ndim(x) == 0 else out


def u_eff(p: StringParams, ell: float, x):
    """Second-channel effective potential; shift is -w(l+1/2) here."""
    _warn_unbound(p)
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    w = p.omega
    out = ell * (ell + 1.0) / arr**2 + w * w * arr**2 / 4.0 - w * (ell + 0.5)
    return float(out) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class Channel:
    """One radial channel: oscillator index, frequency and constant shift.

    ``ell`` is the branch-resolved index used in wavefunction powers;
    the centrifugal term l(l+1) is branch-invariant, the shift stores the
    physical channel constant.
    """

    ell: float
    omega: float
    shift: float


def v_channel(p: StringParams, E: float, branch: str = "mirror") -> Channel:
    """First-channel record at energy E; default branch is the mirror root."""
    l1 = ell1(p, E)
    return Channel(ell=effective_ell(l1, branch), omega=p.omega,
                   shift=-p.omega * (l1 + 1.5))


def u_channel(p: StringParams, E: float, branch: str = "auto") -> Channel:
    """Second-channel record at energy E; default picks the admissible root."""
    l2 = ell2(p, E)
    return Channel(ell=effective_ell(l2, branch), omega=p.omega,
                   shift=-p.omega * (l2 + 0.5))


def channel_potential(ch: Channel, x):
    """Potential of a channel record: l(l+1)/x^2 + w^2 x^2/4 + shift."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    out = ch.ell * (ch.ell + 1.0) / arr**2 + ch.omega**2 * arr**2 / 4.0 + ch.shift
    return float(out) if np.ndim(x) == 0 else out


def superpotential_w(p: StringParams, ell1_val: float, x):
    """Oscillator superpotential (Be/4M) x + l1/x.

    Annihilates the mirror-branch ground state x^{-l1} exp(-g/2).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("superpotential requires x > 0")
    out = p.gauss_coeff * arr + ell1_val / arr
    return float(out) if np.ndim(x) == 0 else out


def superpotential_w_prime(p: StringParams, ell1_val: float, x):
    """Analytic derivative of :func:`superpotential_w`."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("superpotential requires x > 0")
    out = p.gauss_coeff - ell1_val / arr**2
    return float(out) if np.ndim(x) == 0 else out


def partner_potentials(w, w_prime, x, factorization_energy_sq: float = 0.0):
    """Partner pair (W^2 - W' + E^2, W^2 + W' + E^2) at x.

    ``w`` and ``w_prime`` are callables supplying the superpotential and its
    analytic derivative; the factorization constant is the caller's choice.
    """
    wv = w(x)
    dv = w_prime(x)
    base = wv * wv + factorization_energy_sq
    return base - dv, base + dv


@dataclass(frozen=True)
class SusyExtensionParams:
    """Parameters of the rational extension W = a1/x + a2 x - 2x/(x^2+c).

    Constructed so that a1(a1-1) = l1(l1+1) and a2^2 = (Be/4M)^2 hold to
    1e-12 relative and c = (2 a1 - 1)/(2 a2); with those choices the
    W^2 - W' branch collapses to a pure radial oscillator.
    """

    a1: float
    a2: float
    c: float
    branch: str
    ell1_val: float

    def __post_init__(self):
        lhs = self.a1 * (self.a1 - 1.0)
        rhs = self.ell1_val * (self.ell1_val + 1.0)
        scale = max(abs(lhs), abs(rhs), 1.0)
        if abs(lhs - rhs) > 1e-12 * scale:
            raise ParameterError(
                f"a1(a1-1) = {lhs} does not match l1(l1+1) = {rhs}")
        if self.a2 == 0:
            raise ParameterError("a2 must be nonzero")
        c_expect = (2.0 * self.a1 - 1.0) / (2.0 * self.a2)
        if abs(self.c - c_expect) > 1e-12 * max(abs(c_expect), 1.0):
            raise ParameterError(f"c = {self.c} inconsistent with (2a1-1)/(2a2) = {c_expect}")

    @property
    def factorization_energy_sq(self) -> float:
        """E^2 = -a2 (2 a1 - 5), the constant that flattens the first partner."""
        return -self.a2 * (2.0 * self.a1 - 5.0)

    def w(self, x):
        arr = np.asarray(x, dtype=float)
        return self.a1 / arr + self.a2 * arr - 2.0 * arr / (arr**2 + self.c)

    def w_prime(self, x):
        arr = np.asarray(x, dtype=float)
        f = arr**2 + self.c
        return -self.a1 / arr**2 + self.a2 - 2.0 / f + 4.0 * arr**2 / f**2


def susy_branches(p: StringParams, ell1_val: float):
    """The four (a1, a2) sign/root solutions of the extension constraints."""
    a2 = p.gauss_coeff
    out = []
    for a1, tag in ((-ell1_val, "neg-l1"), (1.0 + ell1_val, "one-plus-l1")):
        for s, stag in ((a2, "+"), (-a2, "-")):
            c = (2.0 * a1 - 1.0) / (2.0 * s)
            out.append(SusyExtensionParams(a1=a1, a2=s, c=c,
                                           branch=f"{tag}{stag}", ell1_val=ell1_val))
    return tuple(out)


def _check_rational_singularity(c: float, x):
    arr = np.asarray(x, dtype=float)
    f = arr**2 + c
    if np.any(f == 0.0):
        xs = math.sqrt(-c) if c < 0 else 0.0
        raise SingularityError(f"rational term singular at x = {xs:.12g}", x=xs)
    return arr, f


def extended_potentials(s: SusyExtensionParams, x):
    """The rationally extended partner pair (V1, V2p) at x.

    V1 = E^2 + 2 a1 a2 - a2 + a1(a1+1)/x^2 + a2^2 x^2 - (4 a2 x^2 + 4 a1 - 2)/(x^2+c)
    V2p = E^2 + 2 a1 a2 + a2 + a1(a1-1)/x^2 + a2^2 x^2 - (4 a2 x^2 + 4 a1 + 2)/(x^2+c)
          + 8 x^2/(x^2+c)^2

    with E^2 = -a2(2 a1 - 5). Under the construction constraint on c the
    rational and constant pieces of V1 cancel identically, leaving the pure
    oscillator a1(a1+1)/x^2 + a2^2 x^2.
    """
    arr, f = _check_rational_singularity(s.c, x)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    a1, a2 = s.a1, s.a2
    e2 = s.factorization_energy_sq
    v1 = (e2 + 2 * a1 * a2 - a2 + a1 * (a1 + 1.0) / arr**2 + a2**2 * arr**2
          - (4 * a2 * arr**2 + 4 * a1 - 2.0) / f)
    v2 = (e2 + 2 * a1 * a2 + a2 + a1 * (a1 - 1.0) / arr**2 + a2**2 * arr**2
          - (4 * a2 * arr**2 + 4 * a1 + 2.0) / f + 8.0 * arr**2 / f**2)
    if np.ndim(x) == 0:
        return float(v1), float(v2)
    return v1, v2


def isotonic_c(p: StringParams, ell1_val: float) -> float:
    """Construction constant c = (2 l1 + 1)/(2 a2) of the raising chain.

    The chain uses the a1 = 1 + l1 branch with a2 = Be/4M, matching the
    (l1+1)/x term of the raising operator.
    """
    a2 = p.gauss_coeff
    if a2 == 0:
        raise ParameterError("isotonic construction needs B*e != 0")
    return (2.0 * ell1_val + 1.0) / (2.0 * a2)


def isotonic_v2p(p: StringParams, ell1_val: float, c: float, x):
    """Isotonic nonlinear-oscillator potential of the extended partner.

    a2^2 x^2 + l1(l1+1)/x^2 + 4/(x^2+c) - 8c/(x^2+c)^2 + 2 a2 with
    a1 = 1 + l1 (so a1(a1-1) = l1(l1+1)) and a2 = Be/4M. ``c`` is passed
    explicitly; the chain's own constant is :func:`isotonic_c`.
    """
    arr, f = _check_rational_singularity(c, x)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    a2 = p.gauss_coeff
    out = (a2**2 * arr**2 + ell1_val * (ell1_val + 1.0) / arr**2
           + 4.0 / f - 8.0 * c / f**2 + 2.0 * a2)
    return float(out) if np.ndim(x) == 0 else out


def vm_potential(C: float, alpha_prime: float, codim_m: int, x):
    """Codimension-m exceptional oscillator potential, generic coupling C.

    C^2 x^2/16 + (a'^2 - 1/4)/x^2
      - (C^2 x^2/4) L_{m-2}^{a'+1}(-g)/L_m^{a'-1}(-g)
      + C (a' + g - 1) L_{m-1}^{a'}(-g)/L_m^{a'-1}(-g)
      + (C^2 x^2/2) [L_{m-1}^{a'}(-g)/L_m^{a'-1}(-g)]^2
      - (C/2)(2m + a' + 1),       g = C x^2/4.

    The squared ratio in the penultimate term is deliberate; rebuilding the
    potential through the point canonical transformation confirms it.
    At m = 0 this is the plain second-channel oscillator shifted by -C/2.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("potential requires x > 0")
    g = C * arr**2 / 4.0
    denom = laguerre_eval(codim_m, alpha_prime - 1.0, -g)
    if np.any(denom == 0.0):
        bad = arr[np.nonzero(np.atleast_1d(denom == 0.0))[0][0]] if np.ndim(x) else float(x)
        raise SingularityError(
            f"denominator polynomial vanishes at x = {bad:.12g}", x=float(bad))
    lam = laguerre_eval(codim_m - 1, alpha_prime, -g) / denom
    mu = laguerre_eval(codim_m - 2, alpha_prime + 1.0, -g) / denom
    out = (C**2 * arr**2 / 16.0 + (alpha_prime**2 - 0.25) / arr**2
           - (C**2 * arr**2 / 4.0) * mu
           + C * (alpha_prime + g - 1.0) * lam
           + (C**2 * arr**2 / 2.0) * lam**2
           - 0.5 * C * (2 * codim_m + alpha_prime + 1.0))
    return float(out) if np.ndim(x) == 0 else out


def exceptional_vm(p: StringParams, ell2_val: float, codim_m: int, x,
                   plot_mode: bool = False):
    """Exceptional potential of the second channel, a' = (1 + 2 l2)/2.

    Bound-state work requires a' > 0 (parameter error otherwise). Potential
    plotting may need the inadmissible region, where the denominator
    develops real zeros; ``plot_mode=True`` downgrades the a' check to a
    warning so those singular curves can be drawn (pole hits still raise
    with the singular abscissa).
    """
    alpha_prime = 0.5 * (1.0 + 2.0 * ell2_val)
    if alpha_prime <= 0:
        if not plot_mode:
            raise ParameterError(
                f"exceptional channel needs alpha' = (1+2*l2)/2 > 0, got {alpha_prime}")
        warnings.warn(
            f"alpha' = {alpha_prime} <= 0: no normalizable exceptional states, "
            "evaluating for plotting only", stacklevel=2)
    return vm_potential(p.big_c, alpha_prime, codim_m, x)


def vm_denominator(C: float, alpha_prime: float, codim_m: int, x):
    """The denominator polynomial L_m^{a'-1}(-g) at g = C x^2/4."""
    arr = np.asarray(x, dtype=float)
    g = C * arr**2 / 4.0
    return laguerre_eval(codim_m, alpha_prime - 1.0, -g)


def find_vm_singularities(C: float, alpha_prime: float, codim_m: int,
                          x_lo: float, x_hi: float, n_scan: int = 4096):
    """Real poles of the exceptional potential in [x_lo, x_hi], ascending.

    Scans the denominator polynomial for sign changes and polishes each
    with Brent's method. For a' > 0 the list is always empty.
    """
    if not 0 < x_lo < x_hi:
        raise ParameterError("need 0 < x_lo < x_hi")
    xs = np.linspace(x_lo, x_hi, n_scan)
    vals = vm_denominator(C, alpha_prime, codim_m, xs)
    roots = []
    f = lambda x: float(vm_denominator(C, alpha_prime, codim_m, x))
    for i in range(len(xs) - 1):
        if vals[i] == 0.0:
            roots.append(float(xs[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(brent_root(f, float(xs[i]), float(xs[i + 1]), tol=1e-13))
    return sorted(roots)
