"""Exact-diagonalization oracle for the periodic isotropic spin-1/2 chain.

Builds the Hamiltonian restricted to a fixed-magnetization sector over the
bitstring basis, diagonalizes it densely, and checks that every Bethe-root
energy appears in the spectrum of every sector its multiplet touches.

The Hamiltonian convention is

    H = (J/4) * sum_i ( sx_i sx_{i+1} + sy_i sy_{i+1} + sz_i sz_{i+1} - 1 )

with periodic closure (site N identified with site 0).  With J > 0 the
ground state is the aligned vacuum at energy 0 and all eigenvalues are <= 0.
A state at magnetization ``n_down`` flipped spins belongs to the sector of
dimension C(N, n_down); a highest-weight Bethe state with ``ell`` roots has
total spin N/2 - ell and contributes one eigenvalue, via its SU(2)
descendants, to every sector n_down in [ell, N - ell].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

__all__ = [
    "sector_basis",
    "sector_hamiltonian",
    "sector_spectrum",
    "SectorMatch",
    "MatchReport",
    "match_bethe_energies",
]

_MAX_N = 14


def _check_size(N: int, n_down: int) -> None:
    if N < 2 or N > _MAX_N:
        raise ValueError(f"chain length N={N} outside supported range 2..{_MAX_N}")
    if n_down < 0 or n_down > N:
        raise ValueError(f"n_down={n_down} outside 0..{N}")


def sector_basis(N: int, n_down: int) -> list[int]:
    """Bitstrings of length N with exactly n_down set bits, ascending."""
    _check_size(N, n_down)
    states = [sum(1 << p for p in pos) for pos in combinations(range(N), n_down)]
    states.sort()
    return states


def sector_hamiltonian(N: int, n_down: int, J: float = 1.0) -> np.ndarray:
    """Dense symmetric Hamiltonian in the fixed-magnetization sector.

    Basis order is ascending bitstring value; bit i set means site i flipped
    down.  Matrix elements: each anti-aligned bond contributes -J/2 on the
    diagonal and J/2 to the off-diagonal element that swaps the bond.
    """
    states = sector_basis(N, n_down)
    index = {s: i for i, s in enumerate(states)}
    dim = len(states)
    H = np.zeros((dim, dim))
    for a, s in enumerate(states):
        diag = 0.0
        for i in range(N):
            j = (i + 1) % N
            bi = (s >> i) & 1
            bj = (s >> j) & 1
            if bi == bj:
                continue
            diag -= J / 2.0
            t = s ^ ((1 << i) | (1 << j))
            H[a, index[t]] += J / 2.0
        H[a, a] = diag
    return H


@lru_cache(maxsize=64)
def _spectrum_cached(N: int, n_down: int, J: float) -> np.ndarray:
    k = min(n_down, N - n_down)  # spin-flip symmetry: sector k mirrors N-k
    vals = np.linalg.eigvalsh(sector_hamiltonian(N, k, J))
    vals.flags.writeable = False
    return vals


def sector_spectrum(N: int, n_down: int, J: float = 1.0) -> np.ndarray:
    """Sorted eigenvalues of the sector Hamiltonian (cached per (N, n_down))."""
    _check_size(N, n_down)
    return _spectrum_cached(N, n_down, float(J))


@dataclass(frozen=True)
class SectorMatch:
    """Comparison of predicted vs. exact energies in one magnetization sector."""

    n_down: int
    dimension: int
    n_predicted: int
    max_deviation: float
    witnesses: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.witnesses


@dataclass(frozen=True)
class MatchReport:
    """Spectrum check across all sectors of one chain length."""

    N: int
    tol: float
    sectors: tuple[SectorMatch, ...]
    multiplet_total: int
    witnesses: tuple[str, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return self.multiplet_total == 2**self.N

    @property
    def ok(self) -> bool:
        return self.complete and all(s.ok for s in self.sectors)


def match_bethe_energies(
    energies_by_ell: dict[int, list[float]],
    N: int,
    tol: float = 1e-8,
    max_witnesses: int = 10,
) -> MatchReport:
    """Check Bethe energies against the exact spectrum of every sector.

    ``energies_by_ell`` maps the number of roots ``ell`` (1 <= ell <= N//2)
    to the energies of the highest-weight solutions found there.  Each such
    state contributes one eigenvalue to every sector n_down in [ell, N-ell];
    together with the vacuum this fills each sector exactly, so the check is
    an element-by-element comparison of the two sorted lists.  The multiplet
    count sum(#sol_ell * (N - 2*ell + 1)) + (N + 1) must equal 2^N.
    """
    if any(ell < 1 or ell > N // 2 for ell in energies_by_ell):
        raise ValueError("ell keys must lie in 1..N//2")

    multiplet_total = N + 1  # vacuum multiplet (spin N/2)
    for ell, energies in energies_by_ell.items():
        multiplet_total += len(energies) * (N - 2 * ell + 1)

    witnesses: list[str] = []
    if multiplet_total != 2**N:
        witnesses.append(
            f"multiplet count {multiplet_total} != 2^{N} = {2**N}"
        )

    sectors: list[SectorMatch] = []
    for n_down in range(N + 1):
        k = min(n_down, N - n_down)
        predicted = [0.0]  # vacuum descendant present in every sector
        for ell in range(1, k + 1):
            predicted.extend(energies_by_ell.get(ell, []))
        predicted.sort()
        exact = sector_spectrum(N, n_down)
        sector_wit: list[str] = []
        if len(predicted) != exact.size:
            sector_wit.append(
                f"sector n_down={n_down}: {len(predicted)} predicted vs "
                f"dimension {exact.size}"
            )
            max_dev = math.inf
        else:
            devs = np.abs(np.asarray(predicted) - exact)
            max_dev = float(devs.max()) if devs.size else 0.0
            if max_dev > tol:
                for i in np.argsort(devs)[::-1][:max_witnesses]:
                    if devs[i] > tol:
                        sector_wit.append(
                            f"sector n_down={n_down}: predicted "
                            f"{predicted[i]:.12f} vs exact {exact[i]:.12f} "
                            f"(|diff| = {devs[i]:.3e})"
                        )
        sectors.append(
            SectorMatch(
                n_down=n_down,
                dimension=int(exact.size),
                n_predicted=len(predicted),
                max_deviation=max_dev,
                witnesses=tuple(sector_wit),
            )
        )
        witnesses.extend(sector_wit[:max_witnesses])

    return MatchReport(
        N=N,
        tol=tol,
        sectors=tuple(sectors),
        multiplet_total=multiplet_total,
        witnesses=tuple(witnesses[: 4 * max_witnesses]),
    )
