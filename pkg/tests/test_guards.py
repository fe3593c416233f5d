import subprocess
import sys

import pytest

from kspectra.algebra import enumerate_homs
from kspectra.fixtures import B2, B2_3, C2, C3
from kspectra.guards import ResourceError, SearchCounter, configured, limits


def test_defaults():
    assert limits().max_size == 32


def test_counter_trips():
    with configured(max_search=3):
        c = SearchCounter("demo")
        c.tick(3)
        with pytest.raises(ResourceError):
            c.tick()


def test_search_guard_in_hom_enumeration():
    with configured(max_search=2):
        with pytest.raises(ResourceError):
            enumerate_homs(B2_3, B2)
    assert len(enumerate_homs(C3, C2)) == 4


def test_env_override():
    code = "from kspectra.guards import limits; print(limits().max_search)"
    out = subprocess.run(
        [sys.executable, "-c", code], env={"CS_MAX_BUDGET": "123", "PATH": ""}, capture_output=True, text=True
    )
    assert out.stdout.strip() == "123"
