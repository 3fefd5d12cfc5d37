"""Parameter-sweep engine: grid construction, per-point pipeline evaluation
with deterministic ordering, and the analytic time to maximal entanglement.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .errors import GraventError, InputDomainError, NoEntanglementError
from .model import (
    REGIME_THRESHOLD_DEFAULT,
    MassiveBody,
    PairSystem,
    PhysicalConstants,
    assess_validity,
)
from .measures import report
from .potential import FORCE_CLOSED_FORM_UNIT, entanglement_force, quantum_correction

__all__ = [
    "SWEEP_PARAMETERS",
    "AxisSpec",
    "SweepSpec",
    "SweepRow",
    "run_sweep",
    "evaluate_point",
    "time_to_max_entanglement",
]

#: Sweepable parameters, in canonical grid order (row-major nesting).
SWEEP_PARAMETERS = ("m1", "m2", "omega1", "omega2", "d", "tau")

MAX_GRID_POINTS_DEFAULT = 1_000_000


@dataclass(frozen=True, slots=True)
class AxisSpec:
    """One swept parameter: count values from start to stop, linear or log."""

    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.count < 1:
            raise InputDomainError(f"count must be >= 1, got {self.count!r}")
        if self.spacing not in ("linear", "log"):
            raise InputDomainError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InputDomainError("axis endpoints must be finite")
        if self.spacing == "log" and (self.start <= 0 or self.stop <= 0):
            raise InputDomainError("log spacing requires positive endpoints")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Grid description: axes for swept parameters, fixed values for the rest."""

    axes: dict[str, AxisSpec]
    fixed: dict[str, float]
    r1: float = 0.0
    r2: float = 0.0
    constants: PhysicalConstants = PhysicalConstants()
    regime_threshold: float = REGIME_THRESHOLD_DEFAULT
    symmetrize_force: bool = False
    max_points: int = MAX_GRID_POINTS_DEFAULT

    def __post_init__(self) -> None:
        for name in self.axes:
            if name not in SWEEP_PARAMETERS:
                raise InputDomainError(f"unknown sweep parameter {name!r}")
        for name in self.fixed:
            if name not in SWEEP_PARAMETERS:
                raise InputDomainError(f"unknown fixed parameter {name!r}")
        missing = [
            name
            for name in SWEEP_PARAMETERS
            if name not in self.axes and name not in self.fixed
        ]
        if missing:
            raise InputDomainError(f"parameters neither swept nor fixed: {missing}")
        total = self.grid_size()
        if total > self.max_points:
            raise InputDomainError(
                f"grid has {total} points, above the cap of {self.max_points}"
            )

    def grid_size(self) -> int:
        size = 1
        for axis in self.axes.values():
            size *= axis.count
        return size

    def point(self, index: int) -> dict[str, float]:
        """Parameter values at flat grid index, canonical row-major order."""
        values = dict(self.fixed)
        remainder = index
        swept = [name for name in SWEEP_PARAMETERS if name in self.axes]
        for name in reversed(swept):
            axis_values = self.axes[name].values()
            remainder, pos = divmod(remainder, len(axis_values))
            values[name] = float(axis_values[pos])
        return values


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One grid point, flattened: inputs, validity, measures, forces, status."""

    index: int
    m1: float
    m2: float
    r1: float
    r2: float
    omega1: float
    omega2: float
    d: float
    tau: float
    ratio_x: float = math.nan
    in_regime: bool = False
    regime_threshold: float = math.nan
    delta_phi: float = math.nan
    purity_full: float = math.nan
    purity_reduced: float = math.nan
    epsilon: float = math.nan
    entropy_nats: float = math.nan
    entropy_bits: float = math.nan
    separable_by_measures: bool = False
    separable_by_two_pi_criterion: bool = False
    force_closed_form: float = math.nan
    force_closed_form_unit: str = FORCE_CLOSED_FORM_UNIT
    force_gradient: float = math.nan
    status: str = "ok"


ROW_FIELD_NAMES = tuple(f.name for f in fields(SweepRow))


def evaluate_point(
    index: int,
    params: dict[str, float],
    r1: float,
    r2: float,
    constants: PhysicalConstants,
    regime_threshold: float = REGIME_THRESHOLD_DEFAULT,
    symmetrize_force: bool = False,
    suppress_warnings: bool = True,
) -> SweepRow:
    """Run the full pipeline at one parameter point; failures land in status.

    Regime warnings are silenced by default (the row's in_regime column
    carries that information for bulk runs); pass ``suppress_warnings=False``
    to let them propagate.
    """
    inputs = dict(
        index=index,
        m1=params["m1"],
        m2=params["m2"],
        r1=r1,
        r2=r2,
        omega1=params["omega1"],
        omega2=params["omega2"],
        d=params["d"],
        tau=params["tau"],
    )
    try:
        with warnings.catch_warnings():
            if suppress_warnings:
                warnings.simplefilter("ignore")
            body1 = MassiveBody(params["m1"], r1, params["omega1"])
            body2 = MassiveBody(params["m2"], r2, params["omega2"])
            system = PairSystem(body1, body2, params["d"], constants)
            validity = assess_validity(system, regime_threshold)
            measures = report(system, params["tau"])
            force = entanglement_force(system, symmetrize=symmetrize_force)
    except GraventError as exc:
        return SweepRow(**inputs, status=f"error: {type(exc).__name__}: {exc}")
    return SweepRow(
        **inputs,
        ratio_x=validity.ratio_x,
        in_regime=validity.in_regime,
        regime_threshold=validity.threshold,
        delta_phi=measures.delta_phi,
        purity_full=measures.purity_full,
        purity_reduced=measures.purity_reduced,
        epsilon=measures.epsilon,
        entropy_nats=measures.entropy_nats,
        entropy_bits=measures.entropy_bits,
        separable_by_measures=measures.separable_by_measures,
        separable_by_two_pi_criterion=measures.separable_by_two_pi_criterion,
        force_closed_form=force.closed_form,
        force_closed_form_unit=force.closed_form_unit,
        force_gradient=force.gradient_based,
        status="ok",
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate the whole grid, rows ordered by grid index.

    The per-point evaluation is a pure function, so the result is
    independent of ``workers``; per-point failures are recorded in the
    row's status and never abort the sweep.
    """
    if workers < 1:
        raise InputDomainError(f"workers must be >= 1, got {workers!r}")

    def job(index: int) -> SweepRow:
        return evaluate_point(
            index,
            spec.point(index),
            spec.r1,
            spec.r2,
            spec.constants,
            spec.regime_threshold,
            spec.symmetrize_force,
        )

    size = spec.grid_size()
    if workers == 1:
        return [job(i) for i in range(size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, range(size)))


def time_to_max_entanglement(sys: PairSystem) -> float:
    """Smallest positive time at which the reduced entropy reaches ln(2).

    The entangling phase grows linearly in time, so the first maximum sits
    at tau* = (pi/2) * hbar / |delta_v_g|, inverted analytically.
    """
    delta = quantum_correction(sys)
    if delta == 0.0:
        raise NoEntanglementError(
            "quantum correction is zero; entanglement never accumulates"
        )
    return (math.pi / 2.0) * sys.constants.hbar / abs(delta)
