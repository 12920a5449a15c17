from __future__ import annotations

import shutil
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qsverify.cyclo import Cyclotomic, cyc_make
from qsverify.data import DataStore, default_data_dir

CONDUCTORS = (1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21)


@pytest.fixture(scope="session")
def store() -> DataStore:
    return DataStore.load()


@pytest.fixture
def data_copy(tmp_path):
    """A writable copy of the bundled data directory."""
    dst = tmp_path / "data"
    shutil.copytree(default_data_dir(), dst)
    return dst


@st.composite
def cyclotomics(draw, conductors=CONDUCTORS) -> Cyclotomic:
    n = draw(st.sampled_from(conductors))
    terms = draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.fractions(min_value=-5, max_value=5, max_denominator=6),
            ),
            max_size=4,
        )
    )
    return cyc_make(n, terms)


def nonzero(x: Cyclotomic) -> bool:
    return not x.is_zero()


__all__ = ["cyclotomics", "nonzero", "Fraction"]


# acceptance criteria report one line each at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
