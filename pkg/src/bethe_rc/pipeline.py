"""End-to-end runs: solve, classify, verify, with a persisted manifest.

A run writes per-sector JSONL solution files, classification report JSON,
and a manifest recording what was run, with which configuration, and how
each stage ended.  The full verification flow is

    solve -> quantum numbers -> classify -> flip consistency -> spectrum

and the process exit code encodes the verdict: 0 all checks pass, 2 a
solution count or bijection check failed, 3 a numerical tolerance was
violated, 64 usage error.
"""

from __future__ import annotations

import dataclasses
import hashlib
import os
import time
from dataclasses import dataclass, field
from typing import Any

from . import records
from .classify import classify_sector, verify_flip_consistency
from .records import RecordError
from .rigged import sector_count
from .solver import BetheSolution, SectorSolutions, SolverConfig, energy, solve_sector
from .spectrum import match_bethe_energies

__version__ = "0.1.0"

EXIT_OK = 0
EXIT_COUNT = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

__all__ = [
    "EXIT_OK",
    "EXIT_COUNT",
    "EXIT_NUMERICAL",
    "EXIT_USAGE",
    "StageStatus",
    "RunManifest",
    "config_hash",
    "solutions_path",
    "report_path",
    "run_solve",
    "run_classify",
    "run_verify",
]


def config_hash(config: SolverConfig, N: int, J: float) -> str:
    body = records.dumps_record({
        "N": N,
        "J": float(J),
        **{f.name: getattr(config, f.name)
           for f in dataclasses.fields(config)},
    })
    return hashlib.sha256(body.encode("ascii")).hexdigest()[:16]


@dataclass
class StageStatus:
    name: str
    status: str = "pending"  # pending | ok | failed | skipped
    detail: str = ""
    files: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status,
                "detail": self.detail, "files": list(self.files)}

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "StageStatus":
        return StageStatus(name=str(d["name"]), status=str(d["status"]),
                           detail=str(d.get("detail", "")),
                           files=[str(p) for p in d.get("files", [])])


@dataclass
class RunManifest:
    """What a run did: parameters, configuration hash, stages, verdict."""

    N: int
    ell_min: int
    ell_max: int
    J: float
    seed: int
    config_hash: str
    version: str = __version__
    started: str = ""
    finished: str = ""
    stages: list[StageStatus] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def stage(self, name: str) -> StageStatus:
        for st in self.stages:
            if st.name == name:
                return st
        st = StageStatus(name=name)
        self.stages.append(st)
        return st

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.N, "ell_min": self.ell_min, "ell_max": self.ell_max,
            "J": self.J, "seed": self.seed, "config_hash": self.config_hash,
            "version": self.version, "started": self.started,
            "finished": self.finished,
            "stages": [st.to_dict() for st in self.stages],
            "caveats": list(self.caveats), "exit_code": self.exit_code,
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "RunManifest":
        return RunManifest(
            N=int(d["N"]), ell_min=int(d["ell_min"]), ell_max=int(d["ell_max"]),
            J=float(d["J"]), seed=int(d["seed"]),
            config_hash=str(d["config_hash"]), version=str(d["version"]),
            started=str(d.get("started", "")), finished=str(d.get("finished", "")),
            stages=[StageStatus.from_dict(s) for s in d.get("stages", [])],
            caveats=[str(c) for c in d.get("caveats", [])],
            exit_code=int(d.get("exit_code", EXIT_OK)),
        )

    def save(self, path: str) -> None:
        records.write_report_json(path, self.to_dict())

    @staticmethod
    def load(path: str) -> "RunManifest":
        with open(path, "r", encoding="ascii") as fh:
            return RunManifest.from_dict(records.loads_record(fh.read()))

    def check_files(self, base_dir: str) -> list[str]:
        """Every referenced artifact must exist and parse back cleanly."""
        problems = []
        for st in self.stages:
            for rel in st.files:
                path = os.path.join(base_dir, rel)
                if not os.path.exists(path):
                    problems.append(f"{st.name}: missing file {rel}")
                    continue
                try:
                    if rel.endswith(".jsonl"):
                        for _lineno, rec in records.iter_jsonl(path):
                            records.solution_from_record(rec, lineno=_lineno)
                    elif rel.endswith(".json"):
                        with open(path, "r", encoding="ascii") as fh:
                            records.loads_record(fh.read())
                except RecordError as e:
                    problems.append(f"{st.name}: {rel} does not round-trip: {e}")
        return problems


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())


def solutions_path(out_dir: str, N: int, ell: int) -> str:
    return os.path.join(out_dir, f"solutions_N{N}_ell{ell}.jsonl")


def report_path(out_dir: str, N: int, ell: int) -> str:
    return os.path.join(out_dir, f"report_N{N}_ell{ell}.json")


def run_solve(
    N: int,
    ell: int,
    out_path: str,
    config: SolverConfig | None = None,
) -> tuple[SectorSolutions, bool]:
    """Solve one sector and persist it; ok means the count check passed."""
    sector = solve_sector(N, ell, config)
    records.write_solutions_jsonl(
        out_path, (records.solution_record(s) for s in sector.solutions))
    ok = len(sector.solutions) == sector.expected
    return sector, ok


def run_classify(solutions_jsonl: str, out_report: str,
                 out_csv: str | None = None):
    """Classify a persisted sector; rewrites the JSONL with label fields.

    Returns (report, flip_problems).  Raises RecordError on malformed or
    truncated input.
    """
    loaded = records.read_solutions_jsonl(solutions_jsonl)
    if not loaded:
        raise RecordError(f"{solutions_jsonl} contains no solution records")
    sols = [s for s, _rec in loaded]
    N = sols[0].N
    ells = {len(s.roots) for s in sols}
    if len(ells) != 1 or any(s.N != N for s in sols):
        raise RecordError(f"{solutions_jsonl} mixes sectors")
    ell = ells.pop()
    regular = tuple(s for s in sols if s.kind == "regular")
    singular = tuple(s for s in sols if s.kind == "singular")
    sector = SectorSolutions(N=N, ell=ell, regular=regular, singular=singular,
                             expected=sector_count(N, ell))
    report = classify_sector(sector)
    flip_problems = verify_flip_consistency(report)

    enriched: dict[tuple, dict[str, Any]] = {}
    for c in report.classifications:
        rec = records.solution_record(c.labeled.solution)
        rec.update(records.label_fields(c.labeled))
        rec.update(records.classification_fields(c))
        enriched[c.labeled.solution.sort_key()] = rec
    out_recs = []
    for s, rec in loaded:
        out_recs.append(enriched.get(s.sort_key(), rec))
    records.write_solutions_jsonl(solutions_jsonl, out_recs)
    records.write_report_json(
        out_report, records.report_dict(report, flip_problems))
    if out_csv is not None:
        records.write_sector_csv(out_csv, report)
    return report, flip_problems


def run_verify(
    N: int,
    out_dir: str,
    config: SolverConfig | None = None,
    J: float = 1.0,
    tol_energy: float = 1e-8,
    max_residual: float = 1e-10,
) -> RunManifest:
    """Full pipeline over every sector of one chain length."""
    cfg = config or SolverConfig()
    os.makedirs(out_dir, exist_ok=True)
    manifest = RunManifest(
        N=N, ell_min=1, ell_max=N // 2, J=J, seed=cfg.seed,
        config_hash=config_hash(cfg, N, J), started=_now(),
    )
    if N % 2 == 1:
        manifest.caveats.append(
            "odd chain length: no exact +-i/2 pair exists, so only regular "
            "solutions are solved; centered-string classification rules "
            "assume an even chain and may report problems")

    sectors: dict[int, SectorSolutions] = {}
    st = manifest.stage("solve")
    count_fail = []
    residual_fail = []
    for ell in range(1, N // 2 + 1):
        out_path = solutions_path(out_dir, N, ell)
        sector, ok = run_solve(N, ell, out_path, cfg)
        sectors[ell] = sector
        st.files.append(os.path.basename(out_path))
        if not ok:
            count_fail.append(
                f"ell={ell}: {len(sector.solutions)} of {sector.expected}")
        worst = max((s.residual for s in sector.solutions), default=0.0)
        if worst > max_residual:
            residual_fail.append(f"ell={ell}: residual {worst:.3e}")
    if count_fail:
        st.status = "failed"
        st.detail = "; ".join(count_fail)
        manifest.exit_code = EXIT_COUNT
    elif residual_fail:
        st.status = "failed"
        st.detail = "; ".join(residual_fail)
        manifest.exit_code = EXIT_NUMERICAL
    else:
        st.status = "ok"
        st.detail = (
            f"counts {'/'.join(str(len(sectors[l].solutions)) for l in sorted(sectors))}"
            f" total {sum(len(s.solutions) for s in sectors.values())}")

    st = manifest.stage("classify")
    reports = {}
    all_flip: list[str] = []
    if manifest.exit_code == EXIT_COUNT:
        st.status = "skipped"
        st.detail = "solve counts failed"
    else:
        bad = []
        for ell in range(1, N // 2 + 1):
            rp = report_path(out_dir, N, ell)
            report, flip_problems = run_classify(
                solutions_path(out_dir, N, ell), rp)
            reports[ell] = report
            all_flip.extend(f"ell={ell}: {p}" for p in flip_problems)
            st.files.append(os.path.basename(rp))
            if not report.bijective:
                probs = "; ".join(report.problems) or "rigging map not bijective"
                bad.append(f"ell={ell}: {probs}")
        if bad:
            st.status = "failed"
            st.detail = " | ".join(bad)
            manifest.exit_code = EXIT_COUNT
        else:
            st.status = "ok"
            st.detail = f"bijective in all {len(reports)} sectors"

    st = manifest.stage("flip")
    if not reports:
        st.status = "skipped"
        st.detail = "no classification reports"
    elif all_flip:
        st.status = "failed"
        st.detail = "; ".join(all_flip[:20])
        if manifest.exit_code == EXIT_OK:
            manifest.exit_code = EXIT_COUNT
    else:
        st.status = "ok"
        st.detail = "negation flips every rigging exactly"

    st = manifest.stage("spectrum")
    if manifest.exit_code == EXIT_COUNT and not sectors:
        st.status = "skipped"
        st.detail = "no solved sectors"
    else:
        energies_by_ell = {
            ell: [energy(s, J) for s in sec.solutions]
            for ell, sec in sectors.items()
        }
        match = match_bethe_energies(energies_by_ell, N, tol=tol_energy)
        if match.ok:
            st.status = "ok"
            st.detail = (
                f"multiplets {match.multiplet_total} = 2^{N}; max sector "
                f"deviation {max(s.max_deviation for s in match.sectors):.3e}")
        else:
            st.status = "failed"
            st.detail = "; ".join(match.witnesses[:20])
            if manifest.exit_code == EXIT_OK:
                manifest.exit_code = (
                    EXIT_COUNT if not match.complete else EXIT_NUMERICAL)

    manifest.finished = _now()
    manifest.save(os.path.join(out_dir, f"manifest_N{N}.json"))
    return manifest
