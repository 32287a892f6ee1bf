"""Shared fixtures: class representatives and the expensive scaled-count runs."""

from fractions import Fraction as F

import pytest

from orthantwalks.gb import GBParams
from orthantwalks.validate import validate_totals

# one representative per universality sub-case, as used throughout the suite
CLASS_REPS = [
    ("balanced", 1, 1),
    ("free", 2, 3),
    ("reluctant", F(1, 2), F(1, 2)),
    ("directed1", 1, 4),
    ("directed2", 3, 2),
    ("axial1", 2, 2),
    ("axial2", 2, 4),
    ("transitional1", 1, F(1, 2)),
    ("transitional2", F(1, 2), 1),
]


@pytest.fixture(scope="session")
def totals_reports():
    """ValidationReports at n_max=800 for all nine representatives (shared: ~20 s)."""
    return {label: validate_totals(GBParams(a, b), 800, 0.05)
            for label, a, b in CLASS_REPS}
