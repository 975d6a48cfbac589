"""Exact arithmetic and the closed-form layer behind the certified bounds.

Three value types live here: stdlib ``Fraction`` rationals (re-exported as
``Rational``), quadratic surds ``p + q*sqrt(d)`` with a fixed square-free
radicand, and dense univariate polynomials with rational coefficients.
On top of them sit the formulas the certification pipelines need: the
irrational bound family ``alpha_k``, its maximizer ``a*``, the limit
objective ``f_b2k`` of the B(2k, n) family, the bound polynomial and cubic
case analysis for the 2/25 certificate, and the monotone-chain checks for
the alpha_k/6 certificate.

Everything is pure and exact.  Floats appear only when a caller asks for
them explicitly; every comparison and identity on the exact path is decided
in integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "Surd",
    "RationalPolynomial",
    "square_free_split",
    "alpha_k",
    "astar_weight",
    "f_b2k",
    "f_b2k_prime",
    "f_b2k_poly",
    "f_b2k_prime_poly",
    "f_b2k_numeric_max",
    "is_non_square_4k_minus_1",
    "theorem1_bound_poly",
    "theorem1_bound_gradient",
    "theorem1_d0_cubic",
    "theorem1_d0_cubic_poly",
    "theorem1_d0_critical_point",
    "theorem1_d0_peak_value",
    "verify_theorem1_quartic_identity",
    "theorem3_bound",
    "theorem3_t_poly",
    "theorem3_cubic_part_poly",
    "theorem3_g_poly",
    "theorem3_gprime_poly",
    "theorem3_c0",
    "theorem3_c1",
    "theorem3_bound_chain",
    "ChainStep",
    "ChainReport",
    "exact_to_json",
]


def square_free_split(n: int) -> tuple[int, int]:
    """Factor n >= 1 as m*m*d with d square-free; return (m, d)."""
    if n < 1:
        raise ValueError(f"square_free_split needs n >= 1, got {n}")
    m, d = 1, 1
    rest = n
    f = 2
    while f * f <= rest:
        if rest % f == 0:
            e = 0
            while rest % f == 0:
                rest //= f
                e += 1
            m *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    return m, d * rest


def _sign_fraction(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class Surd:
    """Exact quadratic surd ``p + q*sqrt(d)`` with rational p, q.

    The radicand d is kept square-free (square parts are absorbed into q on
    construction) and arithmetic is closed for a fixed d.  Combining two
    surds whose radicands differ, both with nonzero irrational part, raises
    ValueError; rationals and radicand-free surds coerce freely.  Order
    comparisons are exact, via sign analysis and squaring.
    """

    p: Fraction
    q: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        p = Fraction(self.p)
        q = Fraction(self.q)
        d = int(self.d)
        if d < 1:
            raise ValueError(f"radicand must be a positive integer, got {d}")
        m, sf = square_free_split(d)
        if m != 1:
            q *= m
            d = sf
        if d == 1:
            p, q = p + q, Fraction(0)
        if q == 0:
            d = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt(cls, n: Union[int, Fraction]) -> "Surd":
        """Exact square root of a nonnegative rational."""
        x = Fraction(n)
        if x < 0:
            raise ValueError(f"negative radicand {x}")
        if x == 0:
            return cls(Fraction(0))
        m, d = square_free_split(x.numerator * x.denominator)
        return cls(Fraction(0), Fraction(m, x.denominator), d)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def _coerce(self, other):
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(Fraction(other))
        return None

    def _joint_d(self, other: "Surd") -> int:
        if self.q == 0:
            return other.d
        if other.q == 0:
            return self.d
        if self.d != other.d:
            raise ValueError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(self.p + o.p, self.q + o.q, self._joint_d(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._joint_d(o)
        return Surd(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        # p^2 == q^2 d with d square-free > 1 forces p == q == 0
        denom = self.p * self.p - self.q * self.q * self.d
        if denom == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return Surd(self.p / denom, -self.q / denom, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def sign(self) -> int:
        """Exact sign of p + q*sqrt(d), computed without floats."""
        if self.q == 0:
            return _sign_fraction(self.p)
        if self.p == 0:
            return _sign_fraction(self.q)
        sp, sq = _sign_fraction(self.p), _sign_fraction(self.q)
        if sp == sq:
            return sp
        # opposite signs: the larger of p^2 and q^2 d decides
        pp, qq = self.p * self.p, self.q * self.q * self.d
        if pp == qq:
            return 0
        return sp if pp > qq else sq

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.q == 0 and o.q == 0:
            return self.p == o.p
        return self.p == o.p and self.q == o.q and self.d == o.d

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __floor__(self) -> int:
        n = math.floor(float(self))
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def __repr__(self):
        if self.q == 0:
            return f"Surd({self.p})"
        return f"Surd({self.p} + {self.q}*sqrt({self.d}))"


def exact_to_json(x) -> dict:
    """Serialize a Fraction or Surd as {"p","q","d","float"} with p, q as num/den strings."""
    s = x if isinstance(x, Surd) else Surd(Fraction(x))
    return {
        "p": f"{s.p.numerator}/{s.p.denominator}",
        "q": f"{s.q.numerator}/{s.q.denominator}",
        "d": s.d,
        "float": float(s),
    }


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense univariate polynomial over the rationals, coefficients low-to-high.

    The zero polynomial is the empty coefficient tuple; otherwise the leading
    coefficient is nonzero.  Evaluation is generic Horner, so it works on
    floats, Fractions and Surds alike.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial((Fraction(other),))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(o.coeffs) + [Fraction(0)] * (n - len(o.coeffs))
        return RationalPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = RationalPolynomial((Fraction(1),))
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        """Substitute ``inner`` for the variable."""
        acc = RationalPolynomial(())
        for c in reversed(self.coeffs):
            acc = acc * inner + RationalPolynomial((c,))
        return acc


_X = RationalPolynomial((Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# The alpha_k family and the B(2k, n) limit objective
# ---------------------------------------------------------------------------

def alpha_k(k: int) -> Surd:
    """The surd constant (2k - 6k^3 + 4k^4 + (4k^2 - k) sqrt(4k-1)) / (2k^2+1)^2.

    Six times the peak of ``f_b2k(., k)``; irrational for every k >= 1
    because 4k - 1 is never a perfect square.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    den = (2 * k * k + 1) ** 2
    rat = Fraction(2 * k - 6 * k**3 + 4 * k**4, den)
    return rat + Fraction(4 * k * k - k, den) * Surd.sqrt(4 * k - 1)


def astar_weight(k: int) -> Surd:
    """Maximizer a* = (2k^2 + k - k sqrt(4k-1)) / (2k^2 + 1) of f_b2k(., k)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    den = 2 * k * k + 1
    return Fraction(2 * k * k + k, den) - Fraction(k, den) * Surd.sqrt(4 * k - 1)


def f_b2k_poly(k: int) -> RationalPolynomial:
    """Limit objective of B(2k, n) as a cubic in the total apex weight a:

        (a/2k)^3 C(2k,3) + (a/2k)^2 C(2k,2) (1-a) + a (1-a)^2 / 2
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    a = _X
    one_minus_a = RationalPolynomial((Fraction(1), Fraction(-1)))
    return (
        Fraction(comb(2 * k, 3), (2 * k) ** 3) * a**3
        + Fraction(comb(2 * k, 2), (2 * k) ** 2) * a**2 * one_minus_a
        + Fraction(1, 2) * a * one_minus_a**2
    )


def f_b2k_prime_poly(k: int) -> RationalPolynomial:
    """Derivative of the limit objective, from the independently stated form
    (1/4k^2 + 1/2) a^2 - (1/2k + 1) a + 1/2."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return RationalPolynomial((
        Fraction(1, 2),
        -(Fraction(1, 2 * k) + 1),
        Fraction(1, 4 * k * k) + Fraction(1, 2),
    ))


def f_b2k(a, k: int):
    """Evaluate the B(2k, n) limit objective at a; generic over number type."""
    return f_b2k_poly(k)(a)


def f_b2k_prime(a, k: int):
    """Evaluate the derivative of the limit objective at a."""
    return f_b2k_prime_poly(k)(a)


def f_b2k_numeric_max(k: int, iters: int = 200) -> tuple[float, float]:
    """Locate the maximum of f_b2k(., k) on [0, 1] numerically.

    Bisects the derivative, which is positive at 0 and negative at 1, so the
    result is independent of the closed forms above.  Returns (argmax, value).
    """
    fp = f_b2k_prime_poly(k)
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fp(mid) > 0:
            lo = mid
        else:
            hi = mid
    a_hat = 0.5 * (lo + hi)
    return a_hat, f_b2k(a_hat, k)


def is_non_square_4k_minus_1(k: int) -> bool:
    """True for every k >= 1: 4k - 1 is 3 mod 4 and squares are 0 or 1 mod 4.

    Decided both by the mod-4 argument and by an integer-sqrt check; the two
    must agree or an ArithmeticError is raised.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = 4 * k - 1
    by_mod = n % 4 not in (0, 1)
    by_isqrt = isqrt(n) ** 2 != n
    if by_mod != by_isqrt:
        raise ArithmeticError(f"square tests disagree for {n}")
    return by_isqrt


# ---------------------------------------------------------------------------
# The 2/25 certificate: bound polynomial and case formulas
# ---------------------------------------------------------------------------

def _check_simplex(values, label: str) -> None:
    floats = [float(v) for v in values]
    if min(floats) < -1e-12:
        raise ValueError(f"{label}: negative coordinate {min(floats)}")
    if abs(sum(floats) - 1.0) > 1e-12:
        raise ValueError(f"{label}: coordinates sum to {sum(floats)}, not 1")


def theorem1_bound_poly(a, b, c, d):
    """Bound polynomial (a^2/4 + ab + b^2/2) c + (a+b) c d + c^2 d / 2 + a^2 b / 4.

    Requires (a, b, c, d) on the standard simplex (tolerance 1e-12); generic
    over number type, so exact on Fractions.
    """
    _check_simplex((a, b, c, d), "theorem1_bound_poly")
    return (a * a / 4 + a * b + b * b / 2) * c + (a + b) * c * d + c * c * d / 2 + a * a / 4 * b


def theorem1_bound_gradient(a, b, c, d):
    """Partial derivatives of the bound polynomial in (a, b, c, d)."""
    ga = (a / 2 + b) * c + c * d + a * b / 2
    gb = (a + b) * c + c * d + a * a / 4
    gc = a * a / 4 + a * b + b * b / 2 + (a + b) * d + c * d
    gd = (a + b) * c + c * c / 2
    return ga, gb, gc, gd


def theorem1_d0_cubic_poly() -> RationalPolynomial:
    """The d = 0 case objective after eliminating a = 2 - 4b and c = 3b - 1:
    11 b^3 / 2 - 21 b^2 / 2 + 6 b - 1."""
    return RationalPolynomial((Fraction(-1), Fraction(6), Fraction(-21, 2), Fraction(11, 2)))


def theorem1_d0_cubic(b):
    """Evaluate the d = 0 case cubic at b (analysis range is [1/3, 1/2])."""
    return theorem1_d0_cubic_poly()(b)


def theorem1_d0_critical_point() -> Surd:
    """The cubic's critical point (7 - sqrt 5) / 11 inside [1/3, 1/2]."""
    return Fraction(7, 11) - Fraction(1, 11) * Surd.sqrt(5)


def theorem1_d0_peak_value() -> Surd:
    """Exact value of the d = 0 cubic at its critical point; below 0.076."""
    return theorem1_d0_cubic(theorem1_d0_critical_point())


def _t1_kkt_c_from_b(b: Fraction) -> Fraction:
    # stationarity across the second and third coordinates
    return (13 * b * b - 6 * b) / (8 * b - 4)


def verify_theorem1_quartic_identity() -> bool:
    """Expand the stationarity resultant and kill every interior candidate.

    Checks, coefficient for coefficient in exact rationals, that

        (8b - 4)^2 (19b^2 - 10b + 1) - (b^2 - 10b + 4)^2
            == 9 b (5b - 2) (9b - 4) (3b - 2),

    then walks the nonzero roots b in {2/5, 4/9, 2/3}: for each, the value
    c = (13b^2 - 6b)/(8b - 4) also solves the quadratic stationarity relation
    (3/2) c^2 + (1 - 5b) c + b^2 = 0, and the resulting point with a = 2b - 2c,
    d = 1 - a - b - c violates strict positivity.  Any failure raises
    ArithmeticError, since it would mean the implementation itself is broken.
    """
    b = _X
    lhs = (8 * b - 4) ** 2 * (19 * b**2 - 10 * b + 1) - (b**2 - 10 * b + 4) ** 2
    rhs = 9 * b * (5 * b - 2) * (9 * b - 4) * (3 * b - 2)
    if lhs != rhs:
        raise ArithmeticError(f"quartic expansion mismatch: {lhs.coeffs} vs {rhs.coeffs}")

    expected = {
        Fraction(2, 5): ("a", Fraction(0)),
        Fraction(4, 9): ("d", Fraction(-1, 9)),
        Fraction(2, 3): ("a", Fraction(-4, 3)),
    }
    for b0, (which, value) in expected.items():
        c0 = _t1_kkt_c_from_b(b0)
        if Fraction(3, 2) * c0 * c0 + (1 - 5 * b0) * c0 + b0 * b0 != 0:
            raise ArithmeticError(f"c({b0}) fails the quadratic stationarity relation")
        a0 = 2 * b0 - 2 * c0
        d0 = 1 - a0 - b0 - c0
        point = {"a": a0, "b": b0, "c": c0, "d": d0}
        if point[which] != value:
            raise ArithmeticError(f"root b={b0}: expected {which}={value}, got {point[which]}")
        if min(point.values()) > 0:
            raise ArithmeticError(f"root b={b0} yields a strictly positive interior point")
    # the other quadratic branch at b = 2/3 fails through the last coordinate
    b0 = Fraction(2, 3)
    c_minus = 2 * b0 * b0 / (3 * _t1_kkt_c_from_b(b0))
    if c_minus != Fraction(2, 9) or 1 - 3 * b0 + c_minus != Fraction(-7, 9):
        raise ArithmeticError("minus-branch check at b=2/3 failed")
    return True


# ---------------------------------------------------------------------------
# The alpha_k/6 certificate: bound function and monotone chain
# ---------------------------------------------------------------------------

def theorem3_bound(w, a, k: int):
    """Bound function for the (2k+1)-part analysis, with b = 1 - w - a:

        (w/2k)^3 C(2k,3) + (w/2k)^2 C(2k,2) (1-w)
            + w (a^2/4 + ab + b^2/2) + a^2 b / 4
    """
    b = 1 - w - a
    t = theorem3_t_poly(k)(w)
    return t + w * (a * a / 4 + a * b + b * b / 2) + a * a / 4 * b


def theorem3_t_poly(k: int) -> RationalPolynomial:
    """Collapsed first-block contribution (w/2k)^3 C(2k,3) + (w/2k)^2 C(2k,2)(1-w)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    w = _X
    one_minus_w = RationalPolynomial((Fraction(1), Fraction(-1)))
    return (
        Fraction(comb(2 * k, 3), (2 * k) ** 3) * w**3
        + Fraction(comb(2 * k, 2), (2 * k) ** 2) * w**2 * one_minus_w
    )


def theorem3_cubic_part_poly() -> RationalPolynomial:
    """Apex contribution along the inner maximizer: 11w^3/54 - 5w^2/9 + 5w/18 + 1/27."""
    return RationalPolynomial((Fraction(1, 27), Fraction(5, 18), Fraction(-5, 9), Fraction(11, 54)))


def theorem3_g_poly(k: int) -> RationalPolynomial:
    """Upper envelope g(w) of the bound over a, valid for w < 1/2."""
    return theorem3_t_poly(k) + theorem3_cubic_part_poly()


def theorem3_gprime_poly(k: int) -> RationalPolynomial:
    """Derivative of g from its independently stated form
    (1/4k^2 - 7/18) w^2 - (1/2k + 1/9) w + 5/18."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return RationalPolynomial((
        Fraction(5, 18),
        -(Fraction(1, 2 * k) + Fraction(1, 9)),
        Fraction(1, 4 * k * k) - Fraction(7, 18),
    ))


def theorem3_c0(k: int) -> Surd:
    """Uniform-weight shortfall coefficient of the ideal (2k+1)-part count."""
    den = 6 * (2 * k * k + 1) ** 2
    rat = Fraction(3 * k + 6 * k * k - 18 * k**3, den)
    irr = Fraction(-3 * k + 6 * k * k + 6 * k**3, den)
    return rat + irr * Surd.sqrt(4 * k - 1)


def theorem3_c1(k: int) -> Surd:
    """Density-gain coefficient once the apex part carries k |V_apex|^2 extra edges."""
    den = 6 * (2 * k * k + 1) ** 2
    rat = Fraction(3 * k - 18 * k * k + 18 * k**3 + 24 * k**4, den)
    irr = Fraction(3 * k + 6 * k * k - 18 * k**3, den)
    return rat + irr * Surd.sqrt(4 * k - 1)


@dataclass(frozen=True)
class ChainStep:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ChainReport:
    k: int
    steps: tuple[ChainStep, ...]
    ok: bool

    def failing(self) -> list[str]:
        return [s.name for s in self.steps if not s.ok]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ok": self.ok,
            "steps": [{"name": s.name, "ok": s.ok, "detail": s.detail} for s in self.steps],
        }


def theorem3_bound_chain(k: int, samples: int = 10_000) -> ChainReport:
    """Verify the monotone chain that pins the alpha_k/6 bound, exactly where
    both sides are rational or surd-valued.

    Steps:
      (i)   the inner derivative -3a^2/4 + a/2 - aw vanishes identically at
            a = (2 - 4w)/3, and substituting that a (with b = (1 + w)/3) into
            the apex terms reproduces the stated cubic envelope;
      (ii)  the cubic envelope equals exactly 1/16 at w = 1/2, matching
            w (1 - w)^2 / 2 there;
      (iii) g' stays positive on [0, 1/2]: its discriminant exceeds the square
            of 1/2 + 1/2k - 1/4k^2 (for k = 2 this is the exact comparison
            along with the legacy form 165/324 > (11/16)^2), and independently
            g' is concave with positive values at both endpoints;
      (iv)  g is nondecreasing on [0, 1/2] on a dense float sample;
      (v)   g(1/2) equals f_b2k(1/2, k) exactly and sits strictly below
            alpha_k / 6 (surd comparison);
      (vi)  6 f_b2k(a*, k) equals alpha_k exactly in surd arithmetic.
    """
    if k < 2:
        raise ValueError(f"chain requires k >= 2, got {k}")
    steps: list[ChainStep] = []

    # (i) inner maximizer and envelope substitution
    w = _X
    a_sub = RationalPolynomial((Fraction(2, 3), Fraction(-4, 3)))
    b_sub = RationalPolynomial((Fraction(1, 3), Fraction(1, 3)))
    inner_prime = Fraction(-3, 4) * a_sub**2 + a_sub * (Fraction(1, 2) - w)
    apex = w * (a_sub**2 * Fraction(1, 4) + a_sub * b_sub + b_sub**2 * Fraction(1, 2)) \
        + a_sub**2 * b_sub * Fraction(1, 4)
    ok_i = (not inner_prime) and apex == theorem3_cubic_part_poly()
    steps.append(ChainStep(
        "inner-maximizer",
        ok_i,
        "derivative vanishes at a=(2-4w)/3 and substitution matches the cubic envelope",
    ))

    # (ii) the envelope at w = 1/2
    half = Fraction(1, 2)
    cubic_half = theorem3_cubic_part_poly()(half)
    tail_half = half * (1 - half) ** 2 / 2
    ok_ii = cubic_half == Fraction(1, 16) == tail_half
    steps.append(ChainStep("endpoint-1/16", ok_ii, f"cubic(1/2) = {cubic_half}"))

    # (iii) g' > 0 on [0, 1/2], two exact routes
    disc = Fraction(36, 81) + Fraction(1, 9 * k) - Fraction(1, 36 * k * k)
    rhs = Fraction(1, 2) + Fraction(1, 2 * k) - Fraction(1, 4 * k * k)
    root_beyond_half = rhs > 0 and disc > rhs * rhs
    if k == 2:
        # keep the legacy k=2 comparison on record next to the recomputed radicand
        root_beyond_half = root_beyond_half and Fraction(165, 324) > rhs * rhs \
            and disc == Fraction(71, 144)
    gp = theorem3_gprime_poly(k)
    concave = gp.coeffs[2] < 0
    endpoints_pos = gp(Fraction(0)) > 0 and gp(half) > 0
    ok_iii = root_beyond_half and concave and endpoints_pos
    steps.append(ChainStep(
        "gprime-positive",
        ok_iii,
        f"discriminant {disc} > ({rhs})^2; concave with g'(0) = {gp(Fraction(0))}, "
        f"g'(1/2) = {gp(half)}",
    ))

    # (iv) dense float sample of monotonicity
    g = theorem3_g_poly(k)
    cs = [float(c) for c in g.coeffs]
    prev, ok_iv = None, True
    for i in range(samples + 1):
        x = 0.5 * i / samples
        val = ((cs[3] * x + cs[2]) * x + cs[1]) * x + cs[0]
        if prev is not None and val < prev - 1e-15:
            ok_iv = False
            break
        prev = val
    steps.append(ChainStep("sampled-monotone", ok_iv, f"{samples + 1} points on [0, 1/2]"))

    # (v) the chain terminus at w = 1/2
    g_half = g(half)
    target = alpha_k(k) / 6
    ok_v = g_half == f_b2k(half, k) and (target - g_half).sign() > 0
    steps.append(ChainStep(
        "half-point-bound",
        ok_v,
        f"g(1/2) = {g_half} = f_b2k(1/2) <= alpha_k/6 (strict)",
    ))

    # (vi) the peak identity tying f_b2k to alpha_k
    astar = astar_weight(k)
    ok_vi = 6 * f_b2k(astar, k) == alpha_k(k) and f_b2k_prime(astar, k) == Surd(Fraction(0))
    steps.append(ChainStep("peak-identity", ok_vi, "6 f(a*) = alpha_k and f'(a*) = 0, exactly"))

    return ChainReport(k=k, steps=tuple(steps), ok=all(s.ok for s in steps))
