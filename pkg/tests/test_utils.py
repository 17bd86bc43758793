from threading import get_ident
from time import sleep

import pytest

from lib import parse_sizes
from lib.errors import ConfigError
from lib.utils.filter_type import filter_type
from lib.utils.parallel import parallel_map
from lib.utils.seeds import derive_seed, make_rng


class TestFilterType:
    def test_single_items(self):
        assert filter_type(None) == ()
        assert filter_type('ab', str) == ('ab',)
        assert filter_type(3, int) == (3,)

    def test_conversion(self):
        assert filter_type([1, '2', 3.0], int) == (1, 2, 3)
        with pytest.raises(ConfigError):
            filter_type(['x'], int, 'sizes')


class TestParseSizes:
    @pytest.mark.parametrize(
        'value,expected',
        [
            ('3..6', (3, 4, 5, 6)),
            ('3,5', (3, 5)),
            ('4', (4,)),
            (5, (5,)),
            ([3, 4], (3, 4)),
        ],
    )
    def test_forms(self, value, expected):
        assert parse_sizes(value) == expected

    @pytest.mark.parametrize('value', ['a..6', '3,x'])
    def test_invalid(self, value):
        with pytest.raises(ConfigError):
            parse_sizes(value)


class TestSeeds:
    def test_seeds_are_stable(self):
        assert derive_seed(1, 'a', 2) == derive_seed(1, 'a', 2)
        assert derive_seed(1, 'a', 2) != derive_seed(1, 'a', 3)
        assert derive_seed(1, 'a') != derive_seed(2, 'a')
        assert 0 <= derive_seed(0) < 2**64

    def test_negative_keys(self):
        minus = derive_seed(3, 'shift', 1, -1)
        assert minus == derive_seed(3, 'shift', 1, -1)
        assert minus != derive_seed(3, 'shift', 1, 1)
        assert make_rng(3, -2).random() == make_rng(3, -2).random()

    def test_streams(self):
        first = make_rng(5, 'noise').random(4)
        again = make_rng(5, 'noise').random(4)
        other = make_rng(5, 'graph').random(4)
        assert first.tolist() == again.tolist()
        assert first.tolist() != other.tolist()


class TestParallelMap:
    @pytest.mark.anyio
    async def test_order_is_kept(self):
        def slow(value, offset):
            sleep(0.01 * (5 - value))
            return value + offset

        assert await parallel_map(slow, range(5), 10) == [10, 11, 12, 13, 14]

    @pytest.mark.anyio
    async def test_limit(self):
        threads = await parallel_map(
            lambda _: get_ident(), range(4), limit=1, label='ident'
        )
        assert len(threads) == 4

    @pytest.mark.anyio
    async def test_empty(self):
        assert await parallel_map(str, []) == []
