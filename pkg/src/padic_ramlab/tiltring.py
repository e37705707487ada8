"""Truncated characteristic-p valued rings.

One engine covers two rings:

  * tilt mode, depth N: the subring k[pi] of the tilted integer ring,
    pi = eps^(1/p^N) - 1 a compatible p-power root of unity minus one,
    with val(pi) = 1/(p^(N-1)(p-1)), truncated below a valuation cut;

  * untilted mode, level s: O_E / (val > cut) for E containing a
    primitive p^(s+1)-th root of unity zeta, with uniformizer
    theta = zeta - 1, val(theta) = 1/(p^s(p-1)).  Requires cut < 1, so
    that p = 0 and the quotient is a k-algebra; under that hypothesis
    the monomial model below is exact, not an approximation.

Elements are sparse maps {monomial index m -> nonzero k-element}; the
monomial m has valuation m/D where D is the fixed denominator of the
ring (D = p^(N-1)(p-1) resp. p^s(p-1)).  Monomials with m/D > cut do
not exist; multiplication drops them, which is reduction in the
quotient ring.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityExceeded, NonUnitExponent, NotDivisible, ParamMismatch
from .gf import FiniteFieldParams

__all__ = [
    "RingSpec",
    "ValuedTrunc",
    "val",
    "frobenius",
    "galois_act",
    "embed_q",
    "reduce_to",
    "formality_threshold",
]

TILT = "tilt"
UNTILTED = "untilted"


@dataclass(frozen=True)
class RingSpec:
    params: FiniteFieldParams
    mode: str
    level: int  # depth N >= 1 in tilt mode, level s >= 0 in untilted mode
    cut: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cut", Fraction(self.cut))
        if self.mode not in (TILT, UNTILTED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == TILT and self.level < 1:
            raise ValueError("tilt depth must be >= 1")
        if self.mode == UNTILTED and self.level < 0:
            raise ValueError("level must be >= 0")
        if self.cut <= 0:
            raise ValueError("cut must be positive")
        if self.mode == UNTILTED and self.cut >= 1:
            raise ValueError(
                "untilted cut must be < 1 so that p = 0 and the ring is a k-algebra"
            )

    @property
    def p(self):
        return self.params.p

    @property
    def denominator(self):
        """D: monomial m has valuation m/D."""
        p = self.params.p
        if self.mode == TILT:
            return p ** (self.level - 1) * (p - 1)
        return p**self.level * (p - 1)

    @property
    def m_max(self):
        return math.floor(self.cut * self.denominator)

    @property
    def embed_exponent(self):
        """Monomial index of the image of q - 1 under embed_q."""
        if self.mode == TILT:
            return self.params.p ** (self.level - 1)
        return 1

    def with_cut(self, cut):
        return RingSpec(self.params, self.mode, self.level, Fraction(cut))

    def monomial_val(self, m):
        return Fraction(m, self.denominator)

    def describe(self):
        if self.mode == TILT:
            head = f"mode=tilt N={self.level}"
        else:
            head = f"mode=untilted s={self.level}"
        return f"{head}; cut={self.cut.numerator}/{self.cut.denominator}"


class ValuedTrunc:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        clean = {}
        m_max = spec.m_max
        for m, c in coeffs.items():
            if not (0 <= m <= m_max):
                raise ValueError(f"monomial {m} outside [0, {m_max}]")
            if c % spec.params.order:
                clean[m] = c % spec.params.order
        self.spec = spec
        self.coeffs = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, {0: c})

    @classmethod
    def one(cls, spec):
        return cls.constant(spec, 1)

    @classmethod
    def uniformizer(cls, spec, power=1, c=1):
        return cls(spec, {power: c})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if self.spec != other.spec:
            raise ParamMismatch(f"ring mismatch: {self.spec} vs {other.spec}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        self._check(other)
        k = self.spec.params
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = k.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ValuedTrunc(self.spec, out)

    def __neg__(self):
        k = self.spec.params
        return ValuedTrunc(self.spec, {m: k.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        k = self.spec.params
        m_max = self.spec.m_max
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                if m > m_max:
                    continue
                s = k.add(out.get(m, 0), k.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ValuedTrunc(self.spec, out)

    def scale(self, c):
        k = self.spec.params
        return ValuedTrunc(self.spec, {m: k.mul(c0, c) for m, c0 in self.coeffs.items()})

    def __pow__(self, n):
        result = ValuedTrunc.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_down(self, j):
        """Exact division by uniformizer^j at unchanged cut.

        Content the cut ring cannot see (monomials that a true division
        would bring down from above the cut) is silently absent; callers
        that need certified precision must work at an inflated cut.
        """
        if j == 0:
            return self
        if any(m < j for m in self.coeffs):
            v = min(self.coeffs)
            raise NotDivisible(f"monomial u^{v} not divisible by u^{j}")
        return ValuedTrunc(self.spec, {m - j: c for m, c in self.coeffs.items()})

    def with_cut(self, cut):
        """Reinterpret at a different cut, keeping stored monomials.

        Raising the cut treats the element as exact (zero tail); use only
        for formal candidates, not for truncations of unknown elements.
        Lowering the cut is honest reduction.
        """
        new = RingSpec(self.spec.params, self.spec.mode, self.spec.level, cut)
        keep = {m: c for m, c in self.coeffs.items() if m <= new.m_max}
        return ValuedTrunc(new, keep)

    # -- comparison / hashing / display ----------------------------------

    def _key(self):
        return (self.spec, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other):
        if not isinstance(other, ValuedTrunc):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def terms_str(self):
        if not self.coeffs:
            return "0"
        k = self.spec.params
        parts = []
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            cs = str(c) if k.f == 1 else "(" + ",".join(map(str, k.digits(c))) + ")"
            parts.append(f"{cs}*u^{m}")
        return " + ".join(parts)

    def to_text(self):
        return f"{self.spec.describe()}; {self.terms_str()}"

    def __repr__(self):
        return f"ValuedTrunc({self.to_text()})"


# -- operations -------------------------------------------------------------


def val(a):
    """Minimal monomial valuation; +infinity for the zero element."""
    if not a.coeffs:
        return math.inf
    return a.spec.monomial_val(min(a.coeffs))


def frobenius(a):
    """The p-th power map: c*u^m -> c^p * u^(p*m)."""
    k = a.spec.params
    p = k.p
    m_max = a.spec.m_max
    out = {}
    for m, c in a.coeffs.items():
        if p * m <= m_max:
            out[p * m] = k.frobenius(c)
    return ValuedTrunc(a.spec, out)


def _exponent_modulus(p, m_max):
    # (1 + u)^(p^T) = 1 + u^(p^T) dies at the cut once p^T > m_max.
    T = 1
    while T <= m_max:
        T *= p
    return T


def galois_act(a, u):
    """The Galois substitution (1 + uniformizer) -> (1 + uniformizer)^u.

    A valuation-preserving ring automorphism; u must be prime to p and is
    reduced mod the exponent modulus of the cut.
    """
    p = a.spec.params.p
    if u % p == 0:
        raise NonUnitExponent(f"exponent {u} is divisible by p = {p}",
                              precondition="gcd(u, p) = 1")
    k = a.spec.params
    m_max = a.spec.m_max
    u_red = u % _exponent_modulus(p, m_max)
    base = {}
    for j in range(1, m_max + 1):
        c = math.comb(u_red, j) % p
        if c:
            base[j] = c
    base = ValuedTrunc(a.spec, base)
    out = ValuedTrunc.zero(a.spec)
    power = ValuedTrunc.one(a.spec)
    prev_m = 0
    for m in sorted(a.coeffs):
        for _ in range(m - prev_m):
            power = power * base
        prev_m = m
        out = out + power.scale(a.coeffs[m])
    return out


def embed_q(a, spec):
    """Map from the q-coefficient ring: q - 1 goes to the element of
    valuation 1/(p-1) (tilt: pi^(p^(N-1)); untilted: theta).

    The source truncation must dominate the target cut: monomials the
    source dropped at x^N land at valuation N/(p-1) (tilt) or N/D
    (untilted), which must lie strictly beyond the cut.
    """
    if a.params != spec.params:
        raise ParamMismatch(f"field mismatch: {a.params} vs {spec.params}")
    img = spec.embed_exponent
    tail_val = Fraction(a.trunc * img, spec.denominator)
    if tail_val <= spec.cut:
        raise CapacityExceeded(
            f"source truncation N={a.trunc} only determines the image below "
            f"valuation {tail_val}, but the target cut is {spec.cut}",
            precondition="N * val(image of q-1) > cut",
        )
    m_max = spec.m_max
    out = {}
    for e, c in a.coeffs.items():
        m = e * img
        if m <= m_max:
            out[m] = c
    return ValuedTrunc(spec, out)


def reduce_to(a, c):
    """Project to the coarser quotient with cut c <= current cut."""
    c = Fraction(c)
    if c > a.spec.cut:
        raise ValueError(f"cannot raise cut {a.spec.cut} to {c}")
    return a.with_cut(c)


def formality_threshold(p, c):
    """Least s >= 0 with p^s > c(p-1).

    Beyond this level the Galois action on truncated Frobenius-solution
    sets factors through the coefficients: (eps^(1/p)-1)^(p^s) has
    valuation p^s/(p-1) > c and so dies at the cut.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("cut must be positive")
    s = 0
    power = 1
    while power <= c * (p - 1):
        s += 1
        power *= p
    return s
