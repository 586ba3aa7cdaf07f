"""Shared session-scoped caches.

Solving a sector is expensive, so every test module draws from one solve
per (N, ell) and one classification per sector.  The acceptance module
additionally runs the full N=12 pipeline once; the sectors it persists are
parsed back (bit-exact) to seed the same caches for later modules.
"""

from __future__ import annotations

import pytest

from bethe_rc.classify import classify_sector
from bethe_rc.rigged import sector_count
from bethe_rc.solver import SectorSolutions, solve_sector

_SOLVED: dict[tuple[int, int], SectorSolutions] = {}
_CLASSIFIED: dict[tuple[int, int], object] = {}
_VERIFY12: dict[str, object] = {}


def solved_sector(N: int, ell: int) -> SectorSolutions:
    key = (N, ell)
    if key not in _SOLVED:
        _SOLVED[key] = solve_sector(N, ell)
    return _SOLVED[key]


def classified_sector(N: int, ell: int):
    key = (N, ell)
    if key not in _CLASSIFIED:
        _CLASSIFIED[key] = classify_sector(solved_sector(N, ell))
    return _CLASSIFIED[key]


@pytest.fixture(scope="session")
def solved():
    return solved_sector


@pytest.fixture(scope="session")
def classified():
    return classified_sector


@pytest.fixture(scope="session")
def verified12(tmp_path_factory):
    """Full N=12 pipeline run (solve/classify/flip/spectrum), once.

    Returns (manifest, out_dir).  The persisted sectors are read back so
    later solves of (12, ell) come from the round-tripped files instead of
    repeating the search.
    """
    if "manifest" not in _VERIFY12:
        from bethe_rc.pipeline import run_verify, solutions_path
        from bethe_rc.records import read_solutions_jsonl

        out = str(tmp_path_factory.mktemp("verify12"))
        manifest = run_verify(12, out)
        _VERIFY12["manifest"] = manifest
        _VERIFY12["dir"] = out
        for ell in range(1, 7):
            sols = [s for s, _rec in
                    read_solutions_jsonl(solutions_path(out, 12, ell))]
            _SOLVED.setdefault(
                (12, ell),
                SectorSolutions(
                    N=12, ell=ell,
                    regular=tuple(s for s in sols if s.kind == "regular"),
                    singular=tuple(s for s in sols if s.kind == "singular"),
                    expected=sector_count(12, ell),
                ),
            )
    return _VERIFY12["manifest"], _VERIFY12["dir"]
