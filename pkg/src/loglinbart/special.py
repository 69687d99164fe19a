"""Numerically stable special functions.

Everything here works on the log scale because the tree sampler routinely
evaluates gamma functions and modified Bessel functions at orders in the
hundreds or thousands, far past the overflow point of the linear-scale
routines.  ``log_bessel_k`` dispatches between scipy's exponentially
scaled ``kve`` (accurate where it does not overflow) and a uniform
large-order asymptotic expansion whose coefficient polynomials are
generated exactly at import time.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy import special as sp

from .errors import DomainError, GigParameterError

__all__ = [
    "log_gamma",
    "digamma",
    "trigamma",
    "log_bessel_k",
    "log_gig_norm",
    "log_sum_exp",
]

_LOG2 = float(np.log(2.0))


def _check_positive(x, name: str):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} must be strictly positive")
    return arr


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    return sp.gammaln(_check_positive(x, "x"))


def digamma(x):
    """First derivative of log Gamma(x) for x > 0."""
    return sp.digamma(_check_positive(x, "x"))


def trigamma(x):
    """Second derivative of log Gamma(x) for x > 0."""
    return sp.polygamma(1, _check_positive(x, "x"))


def log_sum_exp(a, b):
    """log(exp(a) + exp(b)) without overflow; -inf arguments are absorbing."""
    return np.logaddexp(a, b)


# --------------------------------------------------------------------------
# Modified Bessel function of the second kind, on the log scale.
#
# The uniform asymptotic expansion (Olver) is
#   K_nu(nu * z) ~ sqrt(pi/(2 nu)) * exp(-nu * eta) / (1+z^2)^(1/4)
#                  * sum_k (-1)^k u_k(t) / nu^k,
# with t = 1/sqrt(1+z^2) and eta = sqrt(1+z^2) + log(z / (1 + sqrt(1+z^2))).
# The u_k are polynomials generated by
#   u_{k+1}(t) = t^2 (1-t^2) u_k'(t) / 2 + (1/8) * int_0^t (1-5 s^2) u_k(s) ds.
# --------------------------------------------------------------------------

_N_ASYMPTOTIC_TERMS = 11


def _debye_polynomials(n_terms: int) -> list[np.ndarray]:
    polys = [{0: Fraction(1)}]
    for _ in range(n_terms - 1):
        u = polys[-1]
        nxt: dict[int, Fraction] = {}

        def add(power: int, coef: Fraction):
            if coef:
                nxt[power] = nxt.get(power, Fraction(0)) + coef

        for p, c in u.items():
            if p > 0:  # t^2 (1 - t^2) u'/2
                add(p + 1, Fraction(p, 2) * c)
                add(p + 3, -Fraction(p, 2) * c)
            # (1/8) * integral of (1 - 5 s^2) u
            add(p + 1, c / (8 * (p + 1)))
            add(p + 3, -5 * c / (8 * (p + 3)))
        polys.append(nxt)
    out = []
    for poly in polys:
        deg = max(poly)
        coefs = np.zeros(deg + 1)
        for p, c in poly.items():
            coefs[p] = float(c)
        out.append(coefs)
    return out


_DEBYE_U = _debye_polynomials(_N_ASYMPTOTIC_TERMS)


def _log_k_uniform_asymptotic(order: np.ndarray, arg: np.ndarray) -> np.ndarray:
    z = arg / order
    root = np.hypot(1.0, z)
    t = 1.0 / root
    eta = root + np.log(z) - np.log1p(root)
    series = np.zeros_like(z)
    sign = 1.0
    inv_nu_pow = np.ones_like(z)
    for coefs in _DEBYE_U:
        series += sign * np.polynomial.polynomial.polyval(t, coefs) * inv_nu_pow
        inv_nu_pow /= order
        sign = -sign
    return (
        0.5 * (np.log(np.pi / 2) - np.log(order))
        - order * eta
        - 0.5 * np.log(root)
        + np.log(series)
    )


def _log_k_small_arg(order: np.ndarray, arg: np.ndarray) -> np.ndarray:
    # Leading term of the x -> 0 expansion; only reached for arguments so
    # small that the dropped terms are below double precision.
    return sp.gammaln(order) - _LOG2 + order * (_LOG2 - np.log(arg))


def log_bessel_k(order, arg):
    """log K_order(arg) for arg > 0, valid for orders up to ~1e6.

    K is symmetric in the sign of the order.  Uses scipy's scaled ``kve``
    where it is finite and the uniform large-order asymptotic expansion
    otherwise, so the result never overflows on the log scale.
    """
    nu = np.abs(np.asarray(order, dtype=float))
    x = np.asarray(arg, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("arg must be strictly positive")
    nu, x = np.broadcast_arrays(nu, x)
    out = np.empty(nu.shape, dtype=float)

    direct = nu <= 500.0
    with np.errstate(over="ignore"):
        kve_val = sp.kve(nu[direct], x[direct])
    out_direct = np.log(kve_val) - x[direct]
    out[direct] = out_direct

    todo = ~direct
    bad = np.zeros_like(direct)
    bad[direct] = ~np.isfinite(out_direct)
    todo |= bad
    if np.any(todo):
        big = todo & (nu >= 15.0)
        if np.any(big):
            out[big] = _log_k_uniform_asymptotic(nu[big], x[big])
        tiny = todo & (nu < 15.0)
        if np.any(tiny):
            out[tiny] = _log_k_small_arg(nu[tiny], x[tiny])
    if out.ndim == 0:
        return float(out)
    return out


# --------------------------------------------------------------------------
# GIG normalizing constant.
# --------------------------------------------------------------------------


def log_gig_norm(eta, chi, psi):
    """log of the GIG normalizing constant Z(eta, chi, psi).

    The density is lambda^(eta-1) exp(-(chi/lambda + psi*lambda)/2) / Z.
    Exactly one regime must hold elementwise: (eta > 0, chi = 0, psi > 0),
    (eta < 0, chi > 0, psi = 0), or (chi > 0, psi > 0); anything else is a
    divergent integral and raises :class:`GigParameterError`.
    """
    eta = np.asarray(eta, dtype=float)
    chi = np.asarray(chi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    eta, chi, psi = np.broadcast_arrays(eta, chi, psi)
    if np.any(chi < 0) or np.any(psi < 0):
        raise GigParameterError("chi and psi must be nonnegative")

    gamma_branch = (chi == 0) & (psi > 0) & (eta > 0)
    invgamma_branch = (psi == 0) & (chi > 0) & (eta < 0)
    bessel_branch = (chi > 0) & (psi > 0)
    if not np.all(gamma_branch | invgamma_branch | bessel_branch):
        raise GigParameterError(
            "no GIG regime applies (divergent normalizing integral)"
        )

    out = np.empty(eta.shape, dtype=float)
    if np.any(gamma_branch):
        e = eta[gamma_branch]
        out[gamma_branch] = sp.gammaln(e) + e * (_LOG2 - np.log(psi[gamma_branch]))
    if np.any(invgamma_branch):
        e = -eta[invgamma_branch]
        out[invgamma_branch] = sp.gammaln(e) + e * (
            _LOG2 - np.log(chi[invgamma_branch])
        )
    if np.any(bessel_branch):
        e = eta[bessel_branch]
        c = chi[bessel_branch]
        p = psi[bessel_branch]
        root = np.sqrt(p) * np.sqrt(c)
        out[bessel_branch] = (
            _LOG2
            + log_bessel_k(e, root)
            - 0.5 * e * (np.log(p) - np.log(c))
        )
    if out.ndim == 0:
        return float(out)
    return out
