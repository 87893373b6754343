"""Runs each built-in acceptance criterion once and prints its summary line."""

from __future__ import annotations

import pytest

from pachner33 import acceptance


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    result = acceptance.ALL_CRITERIA[number - 1]()
    print(result.line)
    assert result.passed, result.line
