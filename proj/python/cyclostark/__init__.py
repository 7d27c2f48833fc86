"""Cyclotomic Weil-Stark elements and their verification.

Thin wrapper over the native core; every function returns plain Python
data decoded from the core's JSON reports.
"""

import json

from . import _core
from ._core import ContainmentError, InputError, UnsupportedError

REGULATOR_SIGN = _core.REGULATOR_SIGN
DEFAULT_PRECISION = _core.DEFAULT_PRECISION
DEFAULT_TOLERANCE = _core.DEFAULT_TOLERANCE

__all__ = [
    "ContainmentError",
    "InputError",
    "UnsupportedError",
    "default_fixture_dir",
    "element",
    "field_info",
    "fit",
    "l_values",
    "verify",
]


def default_fixture_dir():
    return _core.default_fixture_dir()


def field_info(m, subgroup):
    return json.loads(_core.field_info(m, list(subgroup)))


def l_values(m, subgroup, precision=DEFAULT_PRECISION):
    return json.loads(_core.l_values(m, list(subgroup), precision))


def element(m, subgroup, fixtures=None, precision=DEFAULT_PRECISION):
    return json.loads(_core.element(m, list(subgroup), fixtures or "", precision))


def verify(fixtures=None, precision=DEFAULT_PRECISION, tolerance=DEFAULT_TOLERANCE, only="all", negative_control=False):
    """Returns (report, exit_code) with exit_code 0 on pass and 1 on failure."""
    if not isinstance(only, str):
        only = ",".join(only)
    text, code = _core.verify(fixtures or "", precision, tolerance, only, negative_control)
    return json.loads(text), code


def fit(matrix, a, group="1", group_elements=1):
    if not isinstance(matrix, str):
        matrix = json.dumps(matrix)
    return json.loads(_core.fit(matrix, a, group, group_elements))
