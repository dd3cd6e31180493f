"""Parameter sweeps, figure presets and CSV/JSON emission."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from irsrate.config import SystemConfig
from irsrate.rate import Method, evaluate

VARIABLES = ("N", "M", "B", "adc_bits", "P")
CSV_COLUMNS = ("var", "value", "method", "rate_bits", "std_err", "trials", "seed", "scenario")
DEFAULT_METHODS = (Method.CLOSED_FORM, Method.MONTE_CARLO)


def _sort_key(v):
    # None (ideal hardware) sorts after every finite value
    return math.inf if v is None else v


def scenario_label(overrides: dict[str, Any]) -> str:
    if not overrides:
        return "base"
    parts = []
    for k, v in overrides.items():
        name = "b" if k == "adc_bits" else k
        parts.append(f"{name}={'inf' if v is None else v}")
    return ";".join(parts)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: Sequence
    base_config: SystemConfig = field(default_factory=SystemConfig)
    methods: Sequence[Method] = DEFAULT_METHODS
    trials: int = 10_000
    seed: int = 0
    scenarios: Sequence[dict[str, Any]] = ({},)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}; choose from {VARIABLES}")
        if len(self.values) == 0:
            raise ValueError("sweep values must be non-empty")
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))

    def points(self) -> list[tuple[Any, str, SystemConfig]]:
        """All (value, scenario label, config) points in emission order.

        Builds every config up front so invalid values (e.g. non-square N)
        fail before any computation.
        """
        out = []
        for value in sorted(self.values, key=_sort_key):
            for overrides in self.scenarios:
                kw = dict(overrides)
                kw[self.variable] = value
                out.append((value, scenario_label(overrides), self.base_config.replace(**kw)))
        return out


@dataclass(frozen=True)
class SweepRow:
    var: str
    value: Any
    method: Method
    rate_bits: float
    std_err: float
    trials: int
    seed: int
    scenario: str = "base"

    def as_record(self) -> dict[str, Any]:
        return {
            "var": self.var,
            "value": "inf" if self.value is None else self.value,
            "method": self.method.value,
            "rate_bits": self.rate_bits,
            "std_err": self.std_err,
            "trials": self.trials,
            "seed": self.seed,
            "scenario": self.scenario,
        }


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate every requested method at every sweep point.

    Points run concurrently when ``workers > 1``; rows are emitted in
    ascending variable order and are identical for any worker count.
    """
    tasks = [(v, label, cfg, m) for v, label, cfg in spec.points() for m in spec.methods]

    def run(task):
        value, label, cfg, method = task
        res = evaluate(cfg, method, spec.trials, spec.seed)
        return SweepRow(spec.variable, value, method, res.rate_bits, res.std_error, res.trials, spec.seed, label)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, tasks))
    return [run(t) for t in tasks]


def _ideal_grid():
    return [{"adc_bits": a, "B": b} for a in (None, 2) for b in (None, 1)]


PRESETS = {
    # rate vs N: {ideal ADC, b=2} x {ideal IRS, B=1}
    "fig2": dict(variable="N", values=[(2 * k) ** 2 for k in range(1, 17)], scenarios=_ideal_grid()),
    # rate vs IRS bits for several ADC resolutions
    "fig3": dict(variable="B", values=list(range(1, 7)), scenarios=[{"adc_bits": b} for b in (1, 2, 3, None)]),
    # rate vs BS antennas for a small and a large IRS, with and without phase noise
    "fig4": dict(
        variable="M",
        values=[k * k for k in range(1, 17)],
        scenarios=[{"N": n, "B": b} for n in (16, 256) for b in (None, 1)],
    ),
}


def preset_spec(name: str, base_config: SystemConfig | None = None, trials: int = 10_000, seed: int = 0) -> SweepSpec:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return SweepSpec(base_config=base_config or SystemConfig(), trials=trials, seed=seed, **PRESETS[name])


def _fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if math.isinf(x) else format(x, ".9g")
    return str(x)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        rec = row.as_record()
        writer.writerow([_fmt(rec[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow], config: SystemConfig | None = None) -> str:
    def clean(v):
        return str(v) if isinstance(v, float) and not math.isfinite(v) else v

    doc: dict[str, Any] = {"rows": [{k: clean(v) for k, v in r.as_record().items()} for r in rows]}
    if config is not None:
        doc["config"] = config.to_dict()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
