"""Three-strand braid words and the knot trace reports built on them."""

from dataclasses import dataclass
from typing import Any, Dict, Final, Iterable, Mapping, Tuple

from ..errors import ConfigError
from .mitigation import MitigatedValue
from .._compat import Self

#
NAMED_BRAIDS: Final[Mapping[str, str]] = {
    'unknot': '1',
    'hopf': '1,1',
    'trefoil': '1,1,1',
}
GENERATORS: Final[Tuple[int, int]] = (1, 2)


@dataclass(init=False, frozen=True)
class BraidWord(object):
    """Letters ``(generator, sign)`` in written order.

    The rightmost letter acts first.
    """

    letters: Final[Tuple[Tuple[int, int], ...]]

    def __init__(self: Self, /, letters: Iterable[Tuple[int, int]]) -> None:
        letters = tuple((int(j), int(s)) for j, s in letters)
        if not letters:
            raise ConfigError('A braid word needs at least one letter.')
        for index, (generator, sign) in enumerate(letters):
            if generator not in GENERATORS:
                raise ConfigError(
                    '[%s] Three-strand braids use σ1 and σ2, got σ%s.'
                    % (index, generator)
                )
            if sign not in {1, -1}:
                raise ConfigError(
                    '[%s] Braid exponents are ±1, got %s.' % (index, sign)
                )
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def parse(cls, text: str, /) -> Self:
        """Read ``1,1,-2``, ``word=1,-2`` or a named knot."""
        text = text.strip().lower()
        text = NAMED_BRAIDS.get(text, text)
        if text.startswith('word='):
            text = text[len('word='):]
        letters = []
        for index, token in enumerate(text.replace(' ', ',').split(',')):
            if not token:
                continue
            try:
                value = int(token)
            except ValueError as error:
                raise ConfigError(
                    '[%s] Invalid braid letter %r.' % (index, token)
                ) from error
            letters.append((abs(value), 1 if value > 0 else -1))
        return cls(letters)

    def __str__(self: Self, /) -> str:
        return ','.join(str(j * s) for j, s in self.letters)

    def __len__(self: Self, /) -> int:
        return len(self.letters)

    def __add__(self: Self, other: 'BraidWord', /) -> 'BraidWord':
        return BraidWord(self.letters + other.letters)

    @property
    def writhe(self: Self, /) -> int:
        return sum(s for _, s in self.letters)


@dataclass(init=False, frozen=True)
class KnotReport(object):
    braid: Final[BraidWord]
    theta: Final[float]
    trace: Final[complex]
    kauffman: Final[complex]
    jones_value: Final[complex]
    re_trace: Final[MitigatedValue]
    im_trace: Final[MitigatedValue]

    def __init__(
        self: Self,
        /,
        braid: BraidWord,
        theta: float,
        trace: complex,
        kauffman: complex,
        jones_value: complex,
        re_trace: MitigatedValue,
        im_trace: MitigatedValue,
    ) -> None:
        object.__setattr__(self, 'braid', braid)
        object.__setattr__(self, 'theta', float(theta))
        object.__setattr__(self, 'trace', complex(trace))
        object.__setattr__(self, 'kauffman', complex(kauffman))
        object.__setattr__(self, 'jones_value', complex(jones_value))
        object.__setattr__(self, 're_trace', re_trace)
        object.__setattr__(self, 'im_trace', im_trace)

    @property
    def writhe(self: Self, /) -> int:
        return self.braid.writhe

    @property
    def estimated_trace(self: Self, /) -> complex:
        return complex(self.re_trace.value, self.im_trace.value)

    def to_dict(self: Self, /) -> Dict[str, Any]:
        return dict(
            braid=str(self.braid),
            writhe=self.writhe,
            theta=self.theta,
            re_trace=self.re_trace.value,
            re_trace_stderr=self.re_trace.stderr,
            im_trace=self.im_trace.value,
            im_trace_stderr=self.im_trace.stderr,
            theory_re=self.trace.real,
            theory_im=self.trace.imag,
            kauffman_re=self.kauffman.real,
            kauffman_im=self.kauffman.imag,
            jones_re=self.jones_value.real,
            jones_im=self.jones_value.imag,
            methods=sorted(
                self.re_trace.method_tags | self.im_trace.method_tags
            ),
        )
