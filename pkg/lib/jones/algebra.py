"""Temperley-Lieb representation of three-strand braids.

``ρ(σ_i) = A·I + A⁻¹·U_i`` with ``A = e^{iθ}`` and ``δ = -A² - A⁻²``; the
representation is unitary when ``δ² ≥ 1``.
"""

from cmath import exp as cexp
from dataclasses import dataclass, field
from functools import reduce
from math import cos, pi, sqrt
from typing import Callable, Final, List, Mapping, Tuple

from numpy import asarray, complex128, eye, float64, linspace, ndarray
from numpy.linalg import norm

from ..errors import AdmissibilityError
from ..models.knot import BraidWord
from .._compat import Self

#
ATOL: Final[float] = 1e-10
ADMISSIBLE_INTERVALS: Final[Tuple[Tuple[float, float], ...]] = (
    (0.0, pi / 6),
    (pi / 3, 2 * pi / 3),
    (5 * pi / 6, 7 * pi / 6),
    (4 * pi / 3, 5 * pi / 3),
    (11 * pi / 6, 2 * pi),
)
DEFAULT_GRID: Final[int] = 24


def delta(theta: float, /) -> float:
    """``δ = -A² - A⁻² = -2·cos 2θ``."""
    return -2 * cos(2 * theta)


def is_admissible(theta: float, /) -> bool:
    return delta(theta) ** 2 >= 1 - 1e-12


def admissible_grid(points: int = DEFAULT_GRID, /) -> List[float]:
    """Spread ``points`` angles over the admissible intervals.

    Every interval gets a share proportional to its length, remainders going
    to the largest fractional parts.
    """
    if points < 1:
        raise AdmissibilityError('An angle grid needs at least one point.')
    lengths = [b - a for a, b in ADMISSIBLE_INTERVALS]
    shares = [points * _ / sum(lengths) for _ in lengths]
    counts = [int(_) for _ in shares]
    for index in sorted(
        range(len(shares)), key=lambda _: counts[_] - shares[_]
    )[: points - sum(counts)]:
        counts[index] += 1
    return [
        float(theta)
        for (a, b), count in zip(ADMISSIBLE_INTERVALS, counts)
        for theta in linspace(a, b, count)
    ]


def _check(condition: bool, message: str, theta: float, /) -> None:
    if not condition:
        raise AdmissibilityError(message % theta)


@dataclass(init=False, frozen=True)
class TLRep(object):
    theta: Final[float]
    a: Final[complex]
    delta: Final[float]
    u1: Final[ndarray] = field(compare=False, repr=False)
    u2: Final[ndarray] = field(compare=False, repr=False)
    rho_sigma1: Final[ndarray] = field(compare=False, repr=False)
    rho_sigma2: Final[ndarray] = field(compare=False, repr=False)

    def __init__(self: Self, /, theta: float) -> None:
        d = delta(theta)
        if not is_admissible(theta):
            raise AdmissibilityError(
                'θ=%.6f gives δ²=%.6f < 1; the representation is not '
                'unitary.' % (theta, d**2)
            )
        a = cexp(1j * theta)
        off = sqrt(max(1 - d**-2, 0.0))
        u1 = asarray([[d, 0], [0, 0]], dtype=float64)
        u2 = asarray([[1 / d, off], [off, d - 1 / d]], dtype=float64)
        identity = eye(2, dtype=complex128)
        rho1 = a * identity + u1 / a
        rho2 = a * identity + u2 / a
        _check(
            norm(u1 @ u2 @ u1 - u1) < ATOL and norm(u2 @ u1 @ u2 - u2) < ATOL,
            'Temperley-Lieb relations fail at θ=%.6f.',
            theta,
        )
        _check(
            norm(u1 @ u1 - d * u1) < ATOL and norm(u2 @ u2 - d * u2) < ATOL,
            'U_i² = δU_i fails at θ=%.6f.',
            theta,
        )
        for rho in (rho1, rho2):
            _check(
                norm(rho @ rho.conj().T - identity) < ATOL,
                'ρ(σ_i) is not unitary at θ=%.6f.',
                theta,
            )
        for _ in (u1, u2, rho1, rho2):
            _.setflags(write=False)
        object.__setattr__(self, 'theta', float(theta))
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'delta', d)
        object.__setattr__(self, 'u1', u1)
        object.__setattr__(self, 'u2', u2)
        object.__setattr__(self, 'rho_sigma1', rho1)
        object.__setattr__(self, 'rho_sigma2', rho2)

    def generator(self: Self, index: int, sign: int = 1, /) -> ndarray:
        """``ρ(σ_i^{±1})``; the inverse is ``A⁻¹·I + A·U_i``."""
        u = self.u1 if index == 1 else self.u2
        if sign > 0:
            return self.rho_sigma1 if index == 1 else self.rho_sigma2
        return eye(2, dtype=complex128) / self.a + self.a * u


def tl_generators(theta: float, /) -> TLRep:
    return TLRep(theta)


def braid_matrix(rep: TLRep, word: BraidWord, /) -> ndarray:
    """``ρ(word)``, the product of the letters in written order."""
    return reduce(
        lambda m, letter: m @ rep.generator(*letter),
        word.letters,
        eye(2, dtype=complex128),
    )


def kauffman_bracket_closure(rep: TLRep, word: BraidWord, /) -> complex:
    """``(tr ρ(b) + A^w·(δ² - 2)) / δ``; the ``1/δ`` drops the extra loop."""
    return bracket_from_trace(rep, word, braid_matrix(rep, word).trace())


def bracket_from_trace(
    rep: TLRep,
    word: BraidWord,
    trace: complex,
    /,
) -> complex:
    """The bracket of ``word`` with ``tr ρ(word)`` replaced by ``trace``."""
    return complex(
        (trace + rep.a**word.writhe * (rep.delta**2 - 2)) / rep.delta
    )


def jones_polynomial(rep: TLRep, word: BraidWord, /) -> complex:
    """``(-A³)^{-w}`` times the bracket, evaluated at ``A``."""
    return complex(
        (-rep.a**3) ** -word.writhe * kauffman_bracket_closure(rep, word)
    )


def jones_in_t(t: complex, /) -> complex:
    """The trefoil polynomial ``-t⁴ + t³ + t``."""
    return -(t**4) + t**3 + t


# closed forms in A
CLOSED_BRACKETS: Final[Mapping[str, Callable[[complex], complex]]] = {
    'unknot': lambda a: -(a**3),
    'hopf': lambda a: -(a**4) - a**-4,
    'trefoil': lambda a: -(a**5) - a**-3 + a**-7,
}
CLOSED_JONES: Final[Mapping[str, Callable[[complex], complex]]] = {
    'unknot': lambda a: 1,
    'hopf': lambda a: -(a**-10) - a**-2,
    'trefoil': lambda a: jones_in_t(a**-4),
}
