"""
Core value types and errors for the curvature engine

Everything here is immutable and exact: wave vectors are integer lattice
points, scalars are ``fractions.Fraction`` and complex Fourier coefficients
are Gaussian rationals.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]

COMPONENT_LIMIT = 2**31 - 1


class CurvatureError(Exception):
    """Base class for all curvature engine errors"""
    pass


class ZeroModeError(CurvatureError):
    """Raised when the zero wave vector is used as a basis index"""
    pass


class DegeneratePlaneError(CurvatureError):
    """Raised when two directions do not span a plane"""
    pass


class DegenerateModeError(CurvatureError):
    """Raised when a transcribed formula hits an excluded mode"""
    pass


class DegenerateDirectionSetError(CurvatureError):
    """Raised when direction samples cannot separate two quadratic forms"""
    pass


class ConfigurationError(CurvatureError):
    """Raised when settings fail validation"""
    pass


class ReportValidationError(CurvatureError):
    """Raised when an emitted report does not match its schema"""
    pass


def as_fraction(value: Union[Rational, str]) -> Fraction:
    """Exact conversion; strings may be '3/4', '0.25' or '1e-3'"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Refusing inexact value: {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact rational: {value!r}") from e


@dataclass(frozen=True, order=True)
class WaveVector:
    """Integer point of the dual lattice, indexing the basis function e_k"""
    k1: int
    k2: int

    def __post_init__(self):
        for component in (self.k1, self.k2):
            if isinstance(component, bool) or not isinstance(component, int):
                raise TypeError(f"Wave vector components must be int, got {component!r}")
            if abs(component) > COMPONENT_LIMIT:
                raise ValueError(f"Wave vector component out of range: {component}")

    @classmethod
    def parse(cls, text: str) -> "WaveVector":
        """Parse 'a,b' into a wave vector"""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"Expected 'a,b', got {text!r}")
        try:
            return cls(int(parts[0]), int(parts[1]))
        except ValueError as e:
            raise ValueError(f"Invalid wave vector {text!r}: {e}") from e

    def __add__(self, other: "WaveVector") -> "WaveVector":
        return WaveVector(self.k1 + other.k1, self.k2 + other.k2)

    def __sub__(self, other: "WaveVector") -> "WaveVector":
        return WaveVector(self.k1 - other.k1, self.k2 - other.k2)

    def __neg__(self) -> "WaveVector":
        return WaveVector(-self.k1, -self.k2)

    def scaled(self, factor: int) -> "WaveVector":
        return WaveVector(factor * self.k1, factor * self.k2)

    @property
    def is_zero(self) -> bool:
        return self.k1 == 0 and self.k2 == 0

    def dot(self, other: "WaveVector") -> int:
        return self.k1 * other.k1 + self.k2 * other.k2

    def cross(self, other: "WaveVector") -> int:
        return self.k1 * other.k2 - self.k2 * other.k1

    def norm2(self) -> int:
        return self.dot(self)

    def perpendicular(self) -> "WaveVector":
        return WaveVector(-self.k2, self.k1)

    def __str__(self) -> str:
        return f"{self.k1},{self.k2}"


@dataclass(frozen=True)
class Beta:
    """beta = alpha**2, kept exact"""
    value: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        if self.value < 0:
            raise ValueError(f"beta must be non-negative, got {self.value}")

    @classmethod
    def from_alpha(cls, alpha: Union[Rational, str]) -> "Beta":
        a = as_fraction(alpha)
        if a < 0:
            raise ValueError(f"alpha must be non-negative, got {a}")
        return cls(a * a)

    @classmethod
    def zero(cls) -> "Beta":
        return cls(Fraction(0))


@dataclass(frozen=True)
class TorusGeometry:
    """Torus area S; the default unit area stands in for the symbol S"""
    area: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "area", as_fraction(self.area))
        if self.area <= 0:
            raise ValueError(f"Torus area must be positive, got {self.area}")


UNIT_TORUS = TorusGeometry()


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + i*im"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @staticmethod
    def _lift(other: Union["GaussianRational", Rational]) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        return GaussianRational(as_fraction(other))

    def __add__(self, other: Union["GaussianRational", Rational]) -> "GaussianRational":
        o = self._lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Union["GaussianRational", Rational]) -> "GaussianRational":
        return self + (-self._lift(other))

    def __mul__(self, other: Union["GaussianRational", Rational]) -> "GaussianRational":
        o = self._lift(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


@dataclass(frozen=True)
class FourierStream:
    """Real zero-mean stream function given by finitely many Fourier coefficients

    The coefficient at -l must be the conjugate of the coefficient at l.
    """
    coeffs: Mapping[WaveVector, GaussianRational] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: Dict[WaveVector, GaussianRational] = {}
        for k, x in self.coeffs.items():
            x = GaussianRational._lift(x)
            if k.is_zero:
                raise ZeroModeError("Stream functions have no zero-mode coefficient")
            if not x.is_zero:
                cleaned[k] = x
        for k, x in cleaned.items():
            partner = cleaned.get(-k, GaussianRational())
            if partner != x.conjugate():
                raise ValueError(f"Stream is not real: x[{k}] and x[{-k}] are not conjugate")
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(cleaned.items()))))

    @classmethod
    def cosine(cls, k: WaveVector, amplitude: Rational = 1) -> "FourierStream":
        """amplitude * cos(k, x) = amplitude/2 (e_k + e_{-k})"""
        half = GaussianRational(as_fraction(amplitude) / 2)
        return cls({k: half, -k: half})

    @classmethod
    def sine(cls, k: WaveVector, amplitude: Rational = 1) -> "FourierStream":
        """amplitude * sin(k, x) = amplitude/(2i) (e_k - e_{-k})"""
        half = as_fraction(amplitude) / 2
        return cls({k: GaussianRational(0, -half), -k: GaussianRational(0, half)})

    def __add__(self, other: "FourierStream") -> "FourierStream":
        merged: Dict[WaveVector, GaussianRational] = dict(self.coeffs)
        for k, x in other.coeffs.items():
            merged[k] = merged.get(k, GaussianRational()) + x
        return FourierStream(merged)

    def scaled(self, factor: Rational) -> "FourierStream":
        return FourierStream({k: x * factor for k, x in self.coeffs.items()})

    def inner(self, other: "FourierStream", beta: Beta, geom: TorusGeometry = UNIT_TORUS) -> Fraction:
        """H^1 inner product <self, other>"""
        from .curvature import stream_inner

        return stream_inner(self, other, beta, geom)

    def get(self, k: WaveVector) -> GaussianRational:
        return self.coeffs.get(k, GaussianRational())

    def items(self) -> Iterator[Tuple[WaveVector, GaussianRational]]:
        return iter(self.coeffs.items())

    def support(self) -> Tuple[WaveVector, ...]:
        return tuple(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)
