import pytest

from coxinv import build_complex, build_gamma_matching, family


class BuildCache:
    """Build each system's poset (and matching) once per test session."""

    def __init__(self):
        self._systems = {}
        self._posets = {}
        self._matchings = {}

    def system(self, name):
        if name not in self._systems:
            self._systems[name] = family(name)
        return self._systems[name]

    def poset(self, name):
        if name not in self._posets:
            self._posets[name] = build_complex(self.system(name))
        return self._posets[name]

    def matching(self, name):
        if name not in self._matchings:
            self._matchings[name] = build_gamma_matching(self.system(name), self.poset(name))
        return self._matchings[name]


@pytest.fixture(scope="session")
def cache():
    return BuildCache()
