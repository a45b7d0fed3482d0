"""Exact arithmetic over the Eisenstein integers and the real field Q(sqrt(3)).

Complex ray coordinates live in Z[w] with w = exp(2*pi*i/3), represented as
a + b*w with arbitrary-precision integer a, b (any a + b*w + c*w^2 input is
reduced immediately using 1 + w + w^2 = 0).  Realified coordinates live in
Q(sqrt(3)), represented as p + q*sqrt(3) with exact rationals p, q.  Nothing
in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ParallelInput(ValueError):
    """Raised when an operation needs two non-parallel vectors."""


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    """An element a + b*w of the ring Z[w], w a primitive third root of unity.

    The representation is unique: two elements are equal iff their (a, b)
    pairs agree.  Multiplication reduces w^2 via w^2 = -1 - w.
    """

    a: int
    b: int

    @classmethod
    def from_triple(cls, a: int, b: int, c: int) -> EisensteinInt:
        """Reduce a + b*w + c*w^2 to canonical two-coefficient form (a-c, b-c)."""
        return cls(a - c, b - c)

    def __add__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: EisensteinInt) -> EisensteinInt:
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __mul__(self, other: EisensteinInt | int) -> EisensteinInt:
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def conjugate(self) -> EisensteinInt:
        """Complex conjugate: conj(a + b*w) = (a - b) - b*w, since conj(w) = w^2."""
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        """Field norm z * conj(z) = a^2 - a*b + b^2; zero iff z = 0."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def re_im(self) -> tuple[QuadReal, QuadReal]:
        """Exact real and imaginary parts: (a - b/2, (b/2)*sqrt(3))."""
        return (
            QuadReal(Fraction(2 * self.a - self.b, 2), Fraction(0)),
            QuadReal(Fraction(0), Fraction(self.b, 2)),
        )

    def is_purely_imaginary(self) -> bool:
        """True iff the real part a - b/2 vanishes (and z may still be 0)."""
        return 2 * self.a == self.b

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}ω"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}ω"

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"


E_ZERO = EisensteinInt(0, 0)
E_ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA2 = EisensteinInt(-1, -1)

#: the six units of Z[w]: +-1, +-w, +-w^2
EISENSTEIN_UNITS = (
    E_ONE,
    -E_ONE,
    OMEGA,
    -OMEGA,
    OMEGA2,
    -OMEGA2,
)


def re_im(a: int, b: int, c: int) -> tuple[QuadReal, QuadReal]:
    """Real and imaginary parts of a + b*w + c*w^2 as exact Q(sqrt(3)) values.

    Returns (a - (b+c)/2, (sqrt(3)/2)*(b-c)).
    """
    re, im = EisensteinInt.from_triple(a, b, c).re_im()
    return re, im


def eis_divmod(z: EisensteinInt, w: EisensteinInt) -> tuple[EisensteinInt, EisensteinInt]:
    """Euclidean division in Z[w]: z = q*w + r with norm(r) < norm(w).

    Uses nearest-integer rounding of the exact quotient coordinates; Z[w] is
    norm-Euclidean so the remainder bound always holds.
    """
    n = w.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[w]")
    t = z * w.conjugate()

    def round_div(x: int, d: int) -> int:
        # nearest integer, ties toward +infinity; any tie rule works here
        return (2 * x + d) // (2 * d)

    q = EisensteinInt(round_div(t.a, n), round_div(t.b, n))
    r = z - q * w
    return q, r


def eis_gcd(z: EisensteinInt, w: EisensteinInt) -> EisensteinInt:
    """A greatest common divisor in Z[w] (unique up to the six units)."""
    while not w.is_zero():
        _, r = eis_divmod(z, w)
        z, w = w, r
    return z


@dataclass(frozen=True, slots=True)
class EisRational:
    """An element of Q(w) written as num / den with num in Z[w] and den a
    positive integer; kept reduced so gcd(num.a, num.b, den) = 1."""

    num: EisensteinInt
    den: int

    @classmethod
    def make(cls, num: EisensteinInt, den: int) -> EisRational:
        if den == 0:
            raise ZeroDivisionError("EisRational with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(abs(num.a), abs(num.b)), den)
        if g > 1:
            num = EisensteinInt(num.a // g, num.b // g)
            den //= g
        return cls(num, den)

    @classmethod
    def divide(cls, z: EisensteinInt, w: EisensteinInt) -> EisRational:
        """Exact quotient z / w in Q(w), via z*conj(w) / norm(w)."""
        n = w.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        return cls.make(z * w.conjugate(), n)

    def __add__(self, other: EisRational) -> EisRational:
        return EisRational.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: EisRational | EisensteinInt | int) -> EisRational:
        if isinstance(other, EisRational):
            return EisRational.make(self.num * other.num, self.den * other.den)
        return EisRational.make(self.num * other, self.den)

    def __neg__(self) -> EisRational:
        return EisRational(-self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        return f"EisRational({self.num!r}, {self.den})"


@dataclass(frozen=True, slots=True)
class QuadReal:
    """An element p + q*sqrt(3) of Q(sqrt(3)) with exact rational p, q.

    sqrt(3) is irrational, so the representation is unique and
    x = 0 iff p = q = 0.
    """

    p: Fraction
    q: Fraction

    @classmethod
    def of(cls, p: int | Fraction, q: int | Fraction = 0) -> QuadReal:
        return cls(Fraction(p), Fraction(q))

    def __add__(self, other: QuadReal) -> QuadReal:
        return QuadReal(self.p + other.p, self.q + other.q)

    def __sub__(self, other: QuadReal) -> QuadReal:
        return QuadReal(self.p - other.p, self.q - other.q)

    def __mul__(self, other: QuadReal) -> QuadReal:
        return QuadReal(
            self.p * other.p + 3 * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )

    def __neg__(self) -> QuadReal:
        return QuadReal(-self.p, -self.q)

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * 3 ** 0.5

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        if self.p == 0:
            return f"{self.q}√3"
        sign = "+" if self.q > 0 else "-"
        return f"{self.p} {sign} {abs(self.q)}√3"


QR_ZERO = QuadReal(Fraction(0), Fraction(0))


@dataclass(frozen=True, slots=True)
class VecC3:
    """A vector in C^3 with Z[w] coordinates, stored unnormalized.

    Rays are projective objects; orthogonality and unbiasedness are scale
    invariant, so the integer representative plus its squared norm carry
    everything the exact predicates need.
    """

    coords: tuple[EisensteinInt, EisensteinInt, EisensteinInt]

    @classmethod
    def make(cls, z1, z2, z3) -> VecC3:
        def coerce(z) -> EisensteinInt:
            if isinstance(z, EisensteinInt):
                return z
            if isinstance(z, int):
                return EisensteinInt(z, 0)
            if isinstance(z, tuple):
                return EisensteinInt(*z)
            raise TypeError(f"cannot build Z[w] coordinate from {z!r}")

        return cls((coerce(z1), coerce(z2), coerce(z3)))

    def __getitem__(self, i: int) -> EisensteinInt:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def is_zero(self) -> bool:
        return all(z.is_zero() for z in self.coords)

    def sq_norm(self) -> int:
        """Hermitian squared norm, a non-negative rational integer."""
        return sum(z.norm() for z in self.coords)

    def scale(self, s: EisensteinInt | int) -> VecC3:
        return VecC3(tuple(z * s for z in self.coords))  # type: ignore[arg-type]

    def __repr__(self) -> str:
        return "VecC3(" + ", ".join(str(z) for z in self.coords) + ")"


@dataclass(frozen=True, slots=True)
class VecR6:
    """A vector in R^6 with Q(sqrt(3)) coordinates, ordered
    (Re z1, Re z2, Re z3, Im z1, Im z2, Im z3)."""

    coords: tuple[QuadReal, QuadReal, QuadReal, QuadReal, QuadReal, QuadReal]

    def __getitem__(self, i: int) -> QuadReal:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)


def hermitian_inner(u: VecC3, v: VecC3) -> EisensteinInt:
    """Hermitian inner product sum_i conj(u_i) * v_i (conjugation on the first
    argument)."""
    s = E_ZERO
    for ui, vi in zip(u, v):
        s = s + ui.conjugate() * vi
    return s


def cross(u: VecC3, v: VecC3) -> VecC3:
    """Ordinary bilinear cross product u x v (no conjugation)."""
    u1, u2, u3 = u.coords
    v1, v2, v3 = v.coords
    return VecC3((u2 * v3 - u3 * v2, u3 * v1 - u1 * v3, u1 * v2 - u2 * v1))


def conj_cross(u: VecC3, v: VecC3) -> VecC3:
    """conj(u x v): the ray Hermitian-orthogonal to both u and v.

    <u, conj(u x v)> = conj(u . (u x v)) = 0, and likewise for v.

    Raises ParallelInput when u x v = 0.
    """
    w = cross(u, v)
    if w.is_zero():
        raise ParallelInput(f"parallel vectors: {u!r}, {v!r}")
    return VecC3(tuple(z.conjugate() for z in w))  # type: ignore[arg-type]


def phi0(u: VecC3) -> VecR6:
    """Coordinate-wise realification (Re z1, Re z2, Re z3, Im z1, Im z2, Im z3).

    Norm preserving: the Euclidean squared norm of the image equals the
    Hermitian squared norm of u.
    """
    parts = [z.re_im() for z in u]
    return VecR6((parts[0][0], parts[1][0], parts[2][0],
                  parts[0][1], parts[1][1], parts[2][1]))


def dot6(x: VecR6, y: VecR6) -> QuadReal:
    """Exact Euclidean dot product on R^6.

    For images of phi0, dot6(phi0(u), phi0(v)) equals the real part of
    hermitian_inner(u, v): the motivating identity for phase adjustment.
    """
    s = QR_ZERO
    for xi, yi in zip(x, y):
        s = s + xi * yi
    return s


def re_part(z: EisensteinInt) -> QuadReal:
    return z.re_im()[0]


def permutation_equivalent(x: VecR6, y: VecR6, sigma: tuple[int, ...]) -> bool:
    """True iff y_i = x_{sigma(i)} for all i, i.e. applying sigma to x's
    coordinates yields y.  sigma is a 0-indexed bijection on {0,..,5}."""
    if sorted(sigma) != list(range(6)):
        raise ValueError(f"not a permutation of 6 indices: {sigma!r}")
    return all(y[i] == x[sigma[i]] for i in range(6))


def swap_permutations() -> list[tuple[int, ...]]:
    """The 48 coordinate permutations of R^6 that reshuffle the three complex
    slots and optionally swap each slot's real and imaginary part.

    Applied simultaneously to every vector they preserve all pairwise dot
    products.
    """
    from itertools import permutations, product

    sigmas = []
    for pi in permutations(range(3)):
        for swaps in product((0, 1), repeat=3):
            sigma = [0] * 6
            for j in range(3):
                if swaps[j]:
                    sigma[j] = pi[j] + 3
                    sigma[j + 3] = pi[j]
                else:
                    sigma[j] = pi[j]
                    sigma[j + 3] = pi[j] + 3
            sigmas.append(tuple(sigma))
    return sigmas
