"""Benchmark records and the runner behind the ``lazydist`` command."""

from __future__ import annotations

import csv
import dataclasses
import gc
import io
import json
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .baseline import PairLimitExceeded
from .core import EvaluationTimeout, Session, run_with_deep_stack
from .models import MODELS, get_backend

DEFAULT_TIMEOUT = 60.0
DEFAULT_RUNS = 3


@dataclass(frozen=True)
class BenchRecord:
    """One (model, n, backend) measurement.

    ``wall_ms`` is the mean over ``runs``.  For the list backend
    ``choice_expansions`` counts the pairs of the queried distribution.
    A timed-out record has ``probability`` set to None.
    """

    name: str
    n: int
    backend: str
    probability: float | None
    choice_expansions: int
    suspensions_forced: int
    wall_ms: float
    runs: int
    timed_out: bool = False


FIELDS = tuple(f.name for f in dataclasses.fields(BenchRecord))


class DisagreeingRuns(RuntimeError):
    pass


def _run_once(model_name: str, n: int, backend_name: str, timeout: float | None):
    model = MODELS[model_name]

    def go():
        with Session(timeout=timeout):
            backend = get_backend(backend_name)
            t0 = time.perf_counter()
            p = model.run(backend, n)
            wall = (time.perf_counter() - t0) * 1000.0
            return p, backend.stats(), wall

    return run_with_deep_stack(go)


def measure(
    model_name: str,
    n: int,
    backend_name: str,
    runs: int = DEFAULT_RUNS,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> BenchRecord:
    """Run a model ``runs`` times in fresh sessions and summarise."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    model = MODELS[model_name]
    model.check_n(n)
    if not model.uses_n:
        n = 0
    get_backend(backend_name)  # validates the name
    walls = []
    first = None
    for _ in range(runs):
        # leftovers of an earlier (possibly timed-out) run would otherwise be
        # collected inside whichever measurement happens to trigger the collector
        gc.collect()
        t0 = time.perf_counter()
        try:
            p, (expansions, forced), wall = _run_once(model_name, n, backend_name, timeout)
        except (EvaluationTimeout, PairLimitExceeded):
            elapsed = (time.perf_counter() - t0) * 1000.0
            return BenchRecord(model_name, n, backend_name, None, 0, 0, elapsed, len(walls) + 1, True)
        if first is None:
            first = (p, expansions)
        elif first != (p, expansions):
            raise DisagreeingRuns(f"{model_name} n={n} {backend_name}: {first} vs {(p, expansions)}")
        walls.append(wall)
    return BenchRecord(model_name, n, backend_name, first[0], first[1], forced, statistics.fmean(walls), runs)


def bench(
    model_name: str,
    ns: Sequence[int],
    backends: Sequence[str],
    runs: int = DEFAULT_RUNS,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> list[BenchRecord]:
    """One record per (n, backend), in argument order."""
    return [measure(model_name, n, b, runs, timeout) for n in ns for b in backends]


def to_json(records: Iterable[BenchRecord]) -> str:
    return json.dumps([dataclasses.asdict(r) for r in records], indent=2)


def to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(FIELDS)
    for r in records:
        row = dataclasses.astuple(r)
        w.writerow(["" if v is None else str(v).lower() if isinstance(v, bool) else v for v in row])
    return buf.getvalue()


def read_json(text: str) -> list[BenchRecord]:
    return [BenchRecord(**d) for d in json.loads(text)]


def read_csv(text: str) -> list[BenchRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for d in rows:
        out.append(
            BenchRecord(
                name=d["name"],
                n=int(d["n"]),
                backend=d["backend"],
                probability=float(d["probability"]) if d["probability"] else None,
                choice_expansions=int(d["choice_expansions"]),
                suspensions_forced=int(d["suspensions_forced"]),
                wall_ms=float(d["wall_ms"]),
                runs=int(d["runs"]),
                timed_out=d["timed_out"] == "true",
            )
        )
    return out


def emit(records: Sequence[BenchRecord], fmt: str, path: str | None = None) -> str:
    """Serialise records; write them to ``path`` when given."""
    if fmt == "json":
        text = to_json(records) + "\n"
    elif fmt == "csv":
        text = to_csv(records)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as e:
            raise OSError(f"cannot write {path}: {e.strerror or e}") from e
    return text
