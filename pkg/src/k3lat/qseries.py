"""Truncated formal q-series with rational coefficients and exponents in
(1/24)Z: Dedekind eta quotients, theta series, the psi_m combinations, the
mod-4 congruence splits, and numeric evaluation on the upper half plane.

Exponents are stored internally as integers in units of 1/24; precision is
an exponent cutoff (coefficients are known strictly below it).
"""

import cmath
from fractions import Fraction

from .errors import NonIntegerExponents, InsufficientPrecision

N = 24  # universal exponent denominator

DEFAULT_PREC = 32


def _to_units(e):
    u = Fraction(e) * N
    if u.denominator != 1:
        raise ValueError(f"exponent {e} is not a multiple of 1/{N}")
    return int(u)


class FracSeries:
    """coeffs: map exponent-in-24ths -> rational; prec: cutoff in 24ths."""

    def __init__(self, coeffs, prec_units):
        self.prec_units = prec_units
        self.coeffs = {e: Fraction(c) for e, c in coeffs.items()
                       if c != 0 and e < prec_units}

    @classmethod
    def zero(cls, prec):
        return cls({}, _to_units(prec))

    @classmethod
    def one(cls, prec):
        return cls({0: Fraction(1)}, _to_units(prec))

    @classmethod
    def monomial(cls, exponent, prec, coeff=1):
        return cls({_to_units(exponent): Fraction(coeff)}, _to_units(prec))

    @property
    def prec(self):
        return Fraction(self.prec_units, N)

    def coefficient(self, exponent):
        e = _to_units(exponent)
        if e >= self.prec_units:
            raise InsufficientPrecision(
                f"coefficient of q^{exponent} is beyond the precision {self.prec}")
        return self.coeffs.get(e, Fraction(0))

    def leading_exponent(self):
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), N)

    def terms(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        return [(Fraction(e, N), self.coeffs[e]) for e in sorted(self.coeffs)]

    def is_zero(self):
        return not self.coeffs

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec_units, other.prec_units)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return FracSeries(out, prec)

    __radd__ = __add__

    def __neg__(self):
        return FracSeries({e: -c for e, c in self.coeffs.items()}, self.prec_units)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FracSeries({e: c * other for e, c in self.coeffs.items()},
                              self.prec_units)
        lead_s = min(self.coeffs, default=0)
        lead_o = min(other.coeffs, default=0)
        prec = min(self.prec_units + lead_o, other.prec_units + lead_s)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < prec:
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return FracSeries(out, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return FracSeries({0: Fraction(1)}, self.prec_units)
        out = self
        # square-and-multiply; precision propagates through __mul__
        for bit in bin(n)[3:]:
            out = out * out
            if bit == "1":
                out = out * self
        return out

    def inverse(self):
        """Series inverse; the extremal term must have a nonzero rational
        coefficient (it is factored off as a q-power).
        """
        if not self.coeffs:
            raise ZeroDivisionError("cannot invert the zero series")
        lead = min(self.coeffs)
        c0 = self.coeffs[lead]
        span = self.prec_units - lead  # number of known unit-part terms
        unit = {e - lead: c / c0 for e, c in self.coeffs.items()}
        inv = {0: Fraction(1)}
        known = sorted(e for e in unit if e > 0)
        for e in range(1, span):
            acc = Fraction(0)
            for k in known:
                if k > e:
                    break
                if (e - k) in inv:
                    acc += unit[k] * inv[e - k]
            if acc:
                inv[e] = -acc
        return FracSeries({e - lead: c / c0 for e, c in inv.items()}, span - lead)

    def shifted(self, exponent):
        """Multiply by q^exponent."""
        d = _to_units(exponent)
        return FracSeries({e + d: c for e, c in self.coeffs.items()},
                          self.prec_units + d)

    def scale_exponents(self, factor):
        """Substitute tau -> factor*tau, i.e. multiply all exponents."""
        factor = Fraction(factor)
        out = {}
        for e, c in self.coeffs.items():
            ne = e * factor
            if ne.denominator != 1:
                raise NonIntegerExponents(
                    f"exponent {Fraction(e, N)} * {factor} leaves (1/{N})Z")
            out[int(ne)] = c
        np = self.prec_units * factor
        return FracSeries(out, int(np) if np.denominator == 1 else int(np))

    def truncate(self, prec):
        p = _to_units(prec)
        if p > self.prec_units:
            raise InsufficientPrecision(
                f"cannot extend precision from {self.prec} to {prec}")
        return FracSeries(self.coeffs, p)

    def _coerce(self, x):
        if isinstance(x, FracSeries):
            return x
        return FracSeries({0: Fraction(x)}, self.prec_units)

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        prec = min(self.prec_units, other.prec_units)
        a = {e: c for e, c in self.coeffs.items() if e < prec}
        b = {e: c for e, c in other.coeffs.items() if e < prec}
        return a == b

    def __repr__(self):
        parts = [f"{c}*q^({e})" for e, c in self.terms()[:6]]
        if len(self.coeffs) > 6:
            parts.append("...")
        return f"FracSeries({' + '.join(parts) or '0'}; prec={self.prec})"


# ---------------------------------------------------------------------------

def eta_series(scale, prec):
    """eta(scale*tau) = q^(scale/24) prod (1 - q^(scale*n))."""
    prec_u = _to_units(prec)
    out = FracSeries({0: Fraction(1)}, prec_u)
    n = 1
    while N * scale * n < prec_u:
        out = out * FracSeries({0: Fraction(1), N * scale * n: Fraction(-1)},
                               prec_u)
        n += 1
    return out.shifted(Fraction(scale, N)).truncate(Fraction(prec_u, N))


def eta_quotient(spec, prec):
    """prod eta(s*tau)^m for (s, m) pairs; negative exponents allowed."""
    if not spec:
        raise ValueError("empty eta quotient")
    # the leading exponent is sum s*m/24; compute factors with enough slack
    lead = sum(Fraction(s * m, N) for s, m in spec)
    slack = Fraction(_to_units(prec), N) - min(lead, 0)
    out = None
    for s, m in spec:
        base = eta_series(s, slack + s)
        factor = base ** m if m >= 0 else base.inverse() ** (-m)
        out = factor if out is None else out * factor
    return out.truncate(min(Fraction(out.prec_units, N), Fraction(_to_units(prec), N)))


def theta_series(kind, prec):
    """Theta of <2>: sum q^(n^2) ("integral") or sum q^((n+1/2)^2) ("shifted")."""
    prec_u = _to_units(prec)
    out = {}
    if kind == "integral":
        n = 0
        while N * n * n < prec_u:
            e = N * n * n
            out[e] = out.get(e, Fraction(0)) + (1 if n == 0 else 2)
            n += 1
    elif kind == "shifted":
        n = 0
        while 6 * (2 * n + 1) ** 2 < prec_u:
            e = 6 * (2 * n + 1) ** 2  # (n+1/2)^2 in 24ths
            out[e] = out.get(e, Fraction(0)) + 2
            n += 1
    else:
        raise ValueError("kind must be 'integral' or 'shifted'")
    return FracSeries(out, prec_u)


def psi_m(m, prec):
    """eta_{1^-8 2^8 4^-8}^2 theta^(8+m) - 2(m+16) eta_{1^-8 2^8 4^-8} theta^m."""
    if m < 0:
        raise ValueError("m must be >= 0")
    work = Fraction(prec) + 2  # the eta quotient pole costs two units
    etaq = eta_quotient([(1, -8), (2, 8), (4, -8)], work)
    theta = theta_series("integral", work)
    psi = etaq * etaq * theta ** (8 + m) - 2 * (m + 16) * etaq * theta ** m
    return psi.truncate(min(psi.prec, Fraction(prec)))


def split_congruence(f, i):
    """h^(i): keep exponents l = i mod 4 of an integer-exponent series and
    replace q^l by q^(l/4).
    """
    out = {}
    for e, c in f.coeffs.items():
        if e % N:
            raise NonIntegerExponents("congruence split needs integer exponents")
        l = e // N
        if l % 4 == i % 4:
            out[6 * l] = c  # l/4 in units of 1/24
    if f.prec_units % N:
        raise NonIntegerExponents("congruence split needs integer precision")
    return FracSeries(out, 6 * (f.prec_units // N))


def eval_numeric(f, tau, tol=1e-12):
    """Partial sum at q = e^(2 pi i tau); q^e taken as e^(2 pi i tau e)."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    qabs = abs(cmath.exp(2j * cmath.pi * tau))
    tail = qabs ** float(f.prec) / (1 - qabs)
    if tail >= tol:
        raise InsufficientPrecision(
            f"tail bound {tail:.3g} at precision {f.prec} exceeds {tol:.3g}")
    total = 0j
    for e, c in f.terms():
        total += float(c) * cmath.exp(2j * cmath.pi * tau * float(e))
    return total
