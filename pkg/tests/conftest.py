import pytest

import orbifrob as of

_cache = {}


@pytest.fixture(scope="session")
def reconstructed():
    """Memoized reconstructions shared across the whole test session."""

    def get(multiplet, m_max, mode=of.STANDARD, strategy="guided"):
        key = (multiplet, m_max, mode.token(), strategy)
        if key not in _cache:
            _cache[key] = of.reconstruct(multiplet, m_max, mode, strategy=strategy)
        return _cache[key]

    return get
