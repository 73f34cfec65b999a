"""Grid sweeps over (rapidity, w/m) and their CSV serialisation."""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from . import measures as M
from .kinematics import PhysicalParams
from .quadrature import OracleSpec, QuadratureSpec
from .wavepacket import WavepacketSpec

log = logging.getLogger(__name__)

MEASURES = ("fidelity", "entropy", "mutual_info", "quadratic", "renyi", "log_negativity", "spin_momentum")
CSV_HEADER = ("xi", "w_over_m", "measure", "renyi_order", "value", "oracle_value", "oracle_std_error")


class SweepPointError(RuntimeError):
    """Evaluation failed at one grid point."""

    def __init__(self, xi: float, w_over_m: float, cause: BaseException):
        self.xi, self.w_over_m, self.cause = xi, w_over_m, cause
        super().__init__(f"grid point xi={xi!r}, w/m={w_over_m!r}: {type(cause).__name__}: {cause}")


@dataclass
class SweepSpec:
    xi_min: float = 0.0
    xi_max: float = 10.0
    xi_steps: int = 101
    w_over_m_values: Sequence[float] = (0.1, 1.0, 10.0)
    renyi_orders: Sequence[float] = M.DEFAULT_RENYI_ORDERS
    measures: Sequence[str] = MEASURES
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    oracle: OracleSpec | None = None
    output_path: Path | None = None
    check_refinement: bool = False
    workers: int = 1

    def __post_init__(self):
        if not (0 <= self.xi_min <= self.xi_max) or not math.isfinite(self.xi_max):
            raise ValueError(f"need 0 <= xi_min <= xi_max, got {self.xi_min!r}, {self.xi_max!r}")
        if self.xi_steps < 2 and self.xi_min != self.xi_max:
            raise ValueError("xi_steps must be >= 2")
        if self.xi_steps < 1:
            raise ValueError("xi_steps must be positive")
        if not self.w_over_m_values or any(not v > 0 for v in self.w_over_m_values):
            raise ValueError("w_over_m_values must be a non-empty list of positive numbers")
        if not self.measures:
            raise ValueError("measures must be non-empty")
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ValueError(f"unknown measures {sorted(unknown)}; choose from {MEASURES}")
        if "renyi" in self.measures and not self.renyi_orders:
            raise ValueError("renyi_orders must be non-empty when renyi is requested")
        for n in self.renyi_orders:
            if math.isnan(n) or n < 0:
                raise ValueError(f"Renyi orders must be non-negative, got {n!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def xi_grid(self) -> np.ndarray:
        if self.xi_min == self.xi_max:
            return np.array([self.xi_min])
        return np.linspace(self.xi_min, self.xi_max, self.xi_steps)


class SweepRow(NamedTuple):
    xi: float
    w_over_m: float
    measure: str
    renyi_order: float | None
    value: float
    oracle_value: float | None = None
    oracle_std_error: float | None = None


def _row_key(row: SweepRow):
    order = -1.0 if row.renyi_order is None else row.renyi_order
    return (row.measure, row.w_over_m, row.xi, order)


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)

    def measures(self) -> list[str]:
        return sorted({r.measure for r in self.rows})

    def select(self, measure: str) -> list[SweepRow]:
        return [r for r in self.rows if r.measure == measure]

    def curves(self, measure: str) -> dict[tuple[float, float | None], tuple[np.ndarray, np.ndarray]]:
        """``{(w_over_m, renyi_order): (xi, value)}`` with xi ascending."""
        grouped: dict[tuple[float, float | None], list[tuple[float, float]]] = {}
        for r in self.select(measure):
            grouped.setdefault((r.w_over_m, r.renyi_order), []).append((r.xi, r.value))
        out = {}
        for key in sorted(grouped, key=lambda k: (k[0], -1.0 if k[1] is None else k[1])):
            pts = sorted(grouped[key])
            out[key] = (np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))
        return out


def _propagate(fn, f: float, se: float) -> float:
    """Half the spread of ``fn`` over F +- se, clipped to [0, 1]."""
    if se == 0:
        return 0.0
    hi, lo = min(f + se, 1.0), max(f - se, 0.0)
    return abs(fn(hi) - fn(lo)) / 2


def _time_system_value(measure: str, f: float, order: float | None = None) -> float:
    w = M.schmidt_weights(f)
    if measure == "fidelity":
        return M.check_fidelity(f)
    if measure == "entropy":
        return M.entanglement_entropy(w)
    if measure == "mutual_info":
        return M.mutual_information(w)
    if measure == "quadratic":
        return M.quadratic_entropy(f)
    if measure == "renyi":
        return M.renyi_entropy(w, order)
    if measure == "log_negativity":
        return M.log_negativity(w)
    raise KeyError(measure)


def evaluate_point(spec: SweepSpec, xi: float, w_over_m: float) -> list[SweepRow]:
    """All requested measures at one grid point (mass fixed to 1)."""
    packet = WavepacketSpec(PhysicalParams.from_ratio(w_over_m))
    rows: list[SweepRow] = []
    time_measures = [m for m in spec.measures if m != "spin_momentum"]

    if time_measures:
        f = M.fidelity(packet, xi, spec.quad)
        if spec.check_refinement:
            fine = M.fidelity(packet, xi, spec.quad.refined())
            if abs(fine - f) > spec.quad.target_rel_tol * fine:
                raise ArithmeticError(
                    f"fidelity changed by {abs(fine - f):.3e} under grid refinement "
                    f"(target relative tolerance {spec.quad.target_rel_tol:g})")
        f_mc = se = None
        if spec.oracle is not None:
            f_mc, se = M.fidelity_oracle(packet, xi, spec.oracle, spec.quad.q_max_multiple)
            f_mc = min(f_mc, 1.0)
        for measure in time_measures:
            orders = spec.renyi_orders if measure == "renyi" else (None,)
            for order in orders:
                order = None if order is None else float(order)
                value = _time_system_value(measure, f, order)
                o_val = o_se = None
                if f_mc is not None:
                    fn = lambda x, m=measure, n=order: _time_system_value(m, x, n)  # noqa: E731
                    o_val, o_se = fn(f_mc), _propagate(fn, f_mc, se)
                rows.append(SweepRow(xi, w_over_m, measure, order, value, o_val, o_se))

    if "spin_momentum" in spec.measures:
        b = M.bloch_z(packet, xi, spec.quad)
        value = M.spin_momentum_entropy(b)
        o_val = o_se = None
        if spec.oracle is not None:
            nz, se = M.bloch_z_oracle(packet, xi, spec.oracle, spec.quad.q_max_multiple)
            nz = float(np.clip(nz, -1.0, 1.0))
            ent = lambda x: M.spin_momentum_entropy(M.BlochVector(x))  # noqa: E731
            o_val, o_se = ent(nz), _propagate(ent, nz, se)
        rows.append(SweepRow(xi, w_over_m, "spin_momentum", None, value, o_val, o_se))
    return rows


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every grid point; rows come back sorted by (measure, w/m, xi).

    Grid points are independent and may run on ``spec.workers`` threads; the
    final sort makes the output independent of scheduling.
    """
    points = [(float(xi), float(wm)) for wm in spec.w_over_m_values for xi in spec.xi_grid()]

    def task(pt):
        xi, wm = pt
        try:
            return evaluate_point(spec, xi, wm)
        except Exception as exc:
            raise SweepPointError(xi, wm, exc) from exc

    log.info("sweeping %d grid points", len(points))
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            chunks = list(pool.map(task, points))
    else:
        chunks = [task(pt) for pt in points]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=_row_key)
    return SweepResult(rows)


# -- CSV ---------------------------------------------------------------------

def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def format_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        writer.writerow([_fmt(r.xi), _fmt(r.w_over_m), r.measure, _fmt(r.renyi_order),
                         _fmt(r.value), _fmt(r.oracle_value), _fmt(r.oracle_std_error)])
    return buf.getvalue()


def write_csv(result: SweepResult, path: str | Path) -> None:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(result))
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc


def read_csv(path: str | Path) -> SweepResult:
    def opt(s: str) -> float | None:
        return None if s == "" else float(s)

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = [SweepRow(float(xi), float(wm), meas, opt(n), float(v), opt(ov), opt(ose))
                for xi, wm, meas, n, v, ov, ose in reader]
    return SweepResult(rows)
