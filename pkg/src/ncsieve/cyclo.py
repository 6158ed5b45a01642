"""Exact arithmetic in cyclotomic fields Q(zeta_n) and factored q-polynomials.

Values of Q(zeta_n) are stored as rational coordinate vectors over the power
basis 1, zeta, ..., zeta^(phi(n)-1), always fully reduced modulo the n-th
cyclotomic polynomial.  Mixed-conductor arithmetic embeds both operands into
Q(zeta_lcm) first.  Everything is exact: coordinates are `fractions.Fraction`
with unbounded integer parts, and no operation ever rounds.

`QFactored` keeps q-polynomials in the factored form
``constant * prod_d Phi_d(q)^e_d`` so that quantities like the q-Fuss-Catalan
numbers never need dense expansion, and so that evaluation at a root of unity
can decide "is this zero" by looking at a single exponent.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Per-conductor caches (cyclotomic polynomials, reduction rows) live in
# lru_caches below: read-mostly and safe under concurrent readers.


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    if n <= 0:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@functools.lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    m, cnt = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            cnt += 1
        p += 1
    if m > 1:
        cnt += 1
    return -1 if cnt % 2 else 1


def _poly_mul_int(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _poly_divexact_int(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    """Exact division of integer polynomials (constant term first)."""
    num_l = list(num)
    dn, dd = len(num_l) - 1, len(den) - 1
    if dd < 0 or den[dd] == 0:
        raise ZeroDivisionError("division by zero polynomial")
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        q, r = divmod(num_l[k + dd], den[dd])
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = q
        if q:
            for j, dj in enumerate(den):
                num_l[k + j] -= q * dj
    if any(num_l[: dd or 1]):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return tuple(quot)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, degree phi(n)."""
    if n <= 0:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in divisors(n)[:-1]:
        num = _poly_divexact_int(num, cyclotomic_polynomial(d))
    return num


@functools.lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta_n^t over the power basis, for t in [phi(n), n).

    Phi_n is monic with integer coefficients, so the rows are integral.
    """
    k = euler_phi(n)
    phi_n = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    # x^k = -(lower part of Phi_n); then x^(t+1) = shift + reduce.
    cur = [-c for c in phi_n[:k]]
    rows.append(tuple(cur))
    for _ in range(k + 1, n):
        shifted = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for i in range(k):
                shifted[i] -= top * phi_n[i]
        cur = shifted
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_exponents(n: int, dense: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a dense coefficient vector in zeta_n^t (any t >= 0) to the basis."""
    k = euler_phi(n)
    out = [_ZERO] * k
    rows = _reduction_rows(n) if n > 1 else ()
    for t, c in enumerate(dense):
        if not c:
            continue
        t %= n
        if t < k:
            out[t] += c
        else:
            row = rows[t - k]
            for i in range(k):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclotomic:
    """An exact element of Q(zeta_n) in reduced power-basis coordinates.

    Immutable.  Equality compares values (embedding both sides into the
    compositum), not representations; instances are deliberately unhashable
    because equal values may live at different conductors.
    """

    __slots__ = ("n", "coeffs")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, n: int, coeffs: Iterable[RationalLike], *, _reduced: bool = False):
        if n <= 0:
            raise ValueError("conductor must be positive")
        self.n = n
        if _reduced:
            self.coeffs = tuple(coeffs)  # trusted internal path
            return
        vec = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        k = euler_phi(n)
        if len(vec) < k:
            vec += [_ZERO] * (k - len(vec))
        if len(vec) == k:
            self.coeffs = tuple(vec)
        else:
            self.coeffs = _reduce_exponents(n, vec)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(x: RationalLike, n: int = 1) -> "Cyclotomic":
        k = euler_phi(n)
        co = [_ZERO] * k
        co[0] = Fraction(x)
        return Cyclotomic(n, co, _reduced=True)

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        """The exact root of unity zeta_n^k."""
        if n <= 0:
            raise ValueError("conductor must be positive")
        dense = [_ZERO] * (k % n + 1)
        dense[k % n] = _ONE
        return Cyclotomic(n, _reduce_exponents(n, dense), _reduced=True)

    # -- conversions -------------------------------------------------------

    def embed(self, m: int) -> "Cyclotomic":
        """Express this value in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) in Q(zeta_{m})")
        step = m // self.n
        dense = [_ZERO] * ((len(self.coeffs) - 1) * step + 1 if self.coeffs else 1)
        for i, c in enumerate(self.coeffs):
            if c:
                dense[i * step] = c
        return Cyclotomic(m, _reduce_exponents(m, dense), _reduced=True)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        """Float image under zeta_n -> exp(2*pi*i/n); for tests and display only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(c) * z**i for i, c in enumerate(self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    @staticmethod
    def _coerce(x: object) -> "Cyclotomic | None":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._pair(o)
        return Cyclotomic(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-c for c in self.coeffs), _reduced=True)

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
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.n, tuple(c * f for c in self.coeffs), _reduced=True)
        a, b = self._pair(o)
        out = [_ZERO] * (2 * len(a.coeffs) - 1 if a.coeffs else 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        out[i + j] += ai * bj
        return Cyclotomic(a.n, _reduce_exponents(a.n, out), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.coeffs[0], self.n)
        phi_n = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        a = _poly_trim(list(self.coeffs))
        # Extended gcd of Phi_n and a over Q[x].  Phi_n is irreducible and
        # deg a < deg Phi_n, so the gcd is a nonzero constant and the Bezout
        # multiplier of a is the inverse up to that constant.
        r0, r1 = phi_n, a
        s0, s1 = [_ZERO], [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_frac(s0, _poly_mul_frac(q, s1))
            if not r1:
                raise ArithmeticError("zero gcd; nonzero element expected")
        const = r1[0]
        inv_coeffs = [c / const for c in s1]
        return Cyclotomic(self.n, _reduce_exponents(self.n, inv_coeffs), _reduced=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.n, tuple(c / f for c in self.coeffs), _reduced=True)
        a, b = self._pair(o)
        return a * b.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^(n-1)."""
        n = self.n
        dense = [_ZERO] * n
        for i, c in enumerate(self.coeffs):
            if c:
                dense[(n - i) % n] += c
        return Cyclotomic(n, _reduce_exponents(n, dense), _reduced=True)

    # -- comparisons and display -------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._pair(o)
        return a.coeffs == b.coeffs

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = f"z{self.n}" if i == 1 else f"z{self.n}^{i}"
                terms.append(mon if c == 1 else f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_frac(
    a: list[Fraction], b: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder over Q[x]; lists are constant-term first."""
    a = a[:]
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) - 1 < db:
        return [], _poly_trim(a)
    q = [_ZERO] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / b[db]
        if c:
            q[k] = c
            for i, bi in enumerate(b):
                a[k + i] -= c * bi
    return _poly_trim(q), _poly_trim(a)


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return out


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """The exact n-th root of unity zeta_n^k (primitive or not)."""
    return Cyclotomic.zeta(n, k)


def root_order(n: int, k: int) -> int:
    """Multiplicative order of zeta_n^k."""
    return n // gcd(n, k % n if k % n else n)


class NonPolynomialError(ArithmeticError):
    """A QFactored value with a negative exponent was used where a polynomial is required."""


@dataclass(frozen=True)
class QFactored:
    """constant * prod_d Phi_d(q)^e_d, kept factored.

    Multiplication and division act additively on exponents, so products and
    quotients of q-integers are exact and cancellation is literal integer
    arithmetic on exponents.
    """

    constant: Fraction
    powers: tuple[tuple[int, int], ...]  # sorted (d, e_d), e_d != 0, d >= 2

    @staticmethod
    def make(constant: RationalLike = 1, powers: Mapping[int, int] | None = None) -> "QFactored":
        items = []
        for d, e in sorted((powers or {}).items()):
            if d < 2:
                raise ValueError("Phi_1 factors are not allowed; fold them into the constant")
            if e:
                items.append((d, e))
        return QFactored(Fraction(constant), tuple(items))

    def power_map(self) -> dict[int, int]:
        return dict(self.powers)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for _, e in self.powers)

    def degree(self) -> int:
        if not self.is_polynomial():
            raise NonPolynomialError("degree of a non-polynomial quotient")
        return sum(euler_phi(d) * e for d, e in self.powers)

    def __mul__(self, other: "QFactored") -> "QFactored":
        pw = self.power_map()
        for d, e in other.powers:
            pw[d] = pw.get(d, 0) + e
        return QFactored.make(self.constant * other.constant, pw)

    def __truediv__(self, other: "QFactored") -> "QFactored":
        pw = self.power_map()
        for d, e in other.powers:
            pw[d] = pw.get(d, 0) - e
        return QFactored.make(self.constant / other.constant, pw)

    def scaled(self, c: RationalLike) -> "QFactored":
        return QFactored(self.constant * Fraction(c), self.powers)

    def expand(self) -> tuple[Fraction, ...]:
        """Dense coefficient vector (constant term first).  On-demand only."""
        if not self.is_polynomial():
            raise NonPolynomialError("cannot expand a non-polynomial quotient")
        coeffs: list[Fraction] = [self.constant]
        for d, e in self.powers:
            phi_d = [Fraction(c) for c in cyclotomic_polynomial(d)]
            for _ in range(e):
                coeffs = _poly_mul_frac(coeffs, phi_d)
        return tuple(coeffs)

    def at_one(self) -> Fraction:
        """Value at q = 1 (Phi_d(1) is p for prime powers d = p^k, else 1)."""
        val = self.constant
        for d, e in self.powers:
            val *= Fraction(_phi_at_one(d)) ** e
        return val

    def eval_at_root(self, n: int, k: int) -> "Cyclotomic | None":
        """Exact value at q = zeta_n^k; None encodes the Zero outcome.

        Requires a genuine polynomial: a negative exponent signals that
        a claimed-polynomial quotient failed exact division upstream.
        """
        if not self.is_polynomial():
            raise NonPolynomialError("evaluation requires all exponents nonnegative")
        m = root_order(n, k)
        pw = self.power_map()
        if pw.get(m, 0) > 0:
            return None
        value = Cyclotomic.from_rational(self.constant, 1)
        for d, e in self.powers:
            if e:
                value = value * (phi_at_root(d, n, k) ** e)
        return value


@functools.lru_cache(maxsize=None)
def _phi_at_one(d: int) -> int:
    """Phi_d(1): equals p when d is a prime power p^k, and 1 otherwise."""
    if d <= 1:
        raise ValueError("d must be at least 2")
    m, p = d, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else 1
        p += 1
    return m  # d prime


def phi_at_root(d: int, n: int, k: int) -> Cyclotomic:
    """Phi_d evaluated at zeta_n^k, exactly, assuming the value is nonzero.

    Uses the Moebius factorisation Phi_d(x) = prod_{e | rad(d)} (x^(d/e)-1)^mu(e).
    Factors that vanish at the evaluation point pair off between the mu = +1
    and mu = -1 sides; each vanishing pair contributes the ratio of the two
    exponents, by l'Hospital on (x^K - 1)/(x^K' - 1).
    """
    m = root_order(n, k)
    if m == 1:
        return Cyclotomic.from_rational(_phi_at_one(d), 1)
    if d == m:
        return Cyclotomic.from_rational(0, 1)
    zero_plus: list[int] = []
    zero_minus: list[int] = []
    num = Cyclotomic.from_rational(1, n)
    den = Cyclotomic.from_rational(1, n)
    for e in divisors(d):
        mu = mobius(e)
        if mu == 0:
            continue
        big_k = d // e
        if big_k % m == 0:  # zeta^K = 1, vanishing factor
            (zero_plus if mu > 0 else zero_minus).append(big_k)
            continue
        factor = Cyclotomic.zeta(n, k * big_k) - 1
        if mu > 0:
            num = num * factor
        else:
            den = den * factor
    if len(zero_plus) != len(zero_minus):
        raise ArithmeticError(
            f"Phi_{d} at a root of order {m}: unbalanced vanishing factors"
        )
    ratio = _ONE
    for kp, km in zip(sorted(zero_plus), sorted(zero_minus)):
        ratio *= Fraction(kp, km)
    return num * ratio / den


def q_integer(a: int) -> QFactored:
    """[a]_q = (1 - q^a)/(1 - q) as a product of cyclotomic polynomials."""
    if a < 1:
        raise ValueError("q-integers are defined for a >= 1")
    return QFactored.make(1, {d: 1 for d in divisors(a) if d > 1})
