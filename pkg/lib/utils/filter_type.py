from typing import Iterable, Tuple, Type, TypeVar, Union

from ..errors import ConfigError

T = TypeVar('T')


def filter_type(
    value: Union[None, T, Iterable[T]],
    /,
    type: Type[T] = object,
    name: str = 'value',
) -> Tuple[T, ...]:
    """Normalize ``None``, one item or an iterable of items to a tuple.

    Strings count as single items. Items are converted with ``type`` and a
    failed conversion raises :class:`ConfigError`.
    """
    if value is None:
        return ()
    if isinstance(value, (str, bytes)) or not isinstance(value, Iterable):
        value = (value,)
    try:
        return tuple(_ if isinstance(_, type) else type(_) for _ in value)
    except (TypeError, ValueError) as error:
        raise ConfigError(
            'Invalid `%s` entries: %r.' % (name, value)
        ) from error
