import json

import pytest

from algebra.mv_core import make_chain, make_product, make_trivial
from core.utils import get_settings, use_settings


@pytest.fixture
def chain3():
    return make_chain(3)


@pytest.fixture
def l2xl3():
    return make_product([2, 3])


@pytest.fixture
def trivial():
    return make_trivial()


@pytest.fixture
def boolean():
    """Factory for the Boolean algebra 2^k"""
    return lambda k: make_product([2] * k)


@pytest.fixture
def restore_settings():
    saved = get_settings()
    yield saved
    use_settings(saved)


@pytest.fixture
def write_description(tmp_path):
    def write(data, name='subject.json'):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding='utf-8')
        return path
    return write
