from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

import pytest

from sasplines.mesh import load_mesh

FIXTURE_DIR = Path(str(resources.files("sasplines") / "fixtures"))
MESH_FIXTURES = ("fig1", "altered", "net_ms", "net_ms_perturbed")

# Lines recorded by tests/test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name}.json"


@lru_cache(maxsize=None)
def _fixture(name: str):
    return load_mesh(fixture_path(name))


_HF: dict[tuple[str, int], list[int]] = {}


def hf(name: str, r: int, d_max: int) -> tuple[int, ...]:
    """Hilbert function of a fixture, shared (and extended) across test modules."""
    from sasplines.splinespace import spline_dim

    vals = _HF.setdefault((name, r), [])
    while len(vals) <= d_max:
        vals.append(spline_dim(_fixture(name), r, len(vals)))
    return tuple(vals[: d_max + 1])


@pytest.fixture(scope="session")
def meshes():
    return {name: _fixture(name) for name in MESH_FIXTURES}


@pytest.fixture(scope="session")
def fig1(meshes):
    return meshes["fig1"]


@pytest.fixture(scope="session")
def altered(meshes):
    return meshes["altered"]


@pytest.fixture(scope="session")
def net_ms(meshes):
    return meshes["net_ms"]


@pytest.fixture(scope="session")
def net_ms_perturbed(meshes):
    return meshes["net_ms_perturbed"]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
