"""Parameter sweeps over one model with concurrent point evaluation."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

import yaml
from pydantic import BaseModel, ValidationError

from monopole.config.settings import MonopoleSettings
from monopole.errors import InputError, MonopoleError, NumericalError
from monopole.models.config import SweepSpec
from monopole.services.observables import EvaluationContext, Row, evaluate
from monopole.services.output import STATUS_COLUMN, ResultTable

logger = logging.getLogger(__name__)

SpecModel = TypeVar("SpecModel", bound=BaseModel)

STATUS_OK = "ok"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


class SpecFileError(InputError):
    """Raised when a sweep or model file cannot be read or validated."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


@dataclass
class PointOutcome:
    """Result of evaluating one sweep point."""

    point: dict[str, float]
    row: Row = field(default_factory=dict)
    error: Exception | None = None

    @property
    def status(self) -> str:
        return STATUS_OK if self.error is None else type(self.error).__name__


@dataclass
class SweepResult:
    """Ordered sweep table plus the exit code it warrants."""

    spec: SweepSpec
    table: ResultTable
    outcomes: list[PointOutcome]

    @property
    def failures(self) -> list[PointOutcome]:
        return [o for o in self.outcomes if o.error is not None]

    @property
    def exit_code(self) -> int:
        """3 if any point hit a numerical failure, 2 for rejected inputs, else 0."""
        errors = [o.error for o in self.failures]
        if any(isinstance(e, NumericalError) for e in errors):
            return EXIT_NUMERICAL
        if errors:
            return EXIT_INPUT
        return EXIT_OK


def key_lines(text: str) -> dict[str, int]:
    """1-based line of every top-level key in a YAML mapping."""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {key.value: key.start_mark.line + 1 for key, _ in node.value}


def format_validation_error(
    error: ValidationError, lines: dict[str, int] | None = None
) -> list[str]:
    """One ``line N: field: message`` diagnostic per pydantic error."""
    lines = lines or {}
    diagnostics = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        top = str(item["loc"][0]) if item["loc"] else ""
        prefix = f"line {lines[top]}: " if top in lines else ""
        diagnostics.append(f"{prefix}{location}: {item['msg']}")
    return diagnostics


def load_spec_file(path: Path, model: type[SpecModel]) -> SpecModel:
    """Read a YAML or JSON file into a pydantic model.

    Raises:
        SpecFileError: If the file is missing, malformed or fails validation.
    """
    path = Path(path)
    if not path.exists():
        raise SpecFileError(f"File not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SpecFileError(f"Cannot parse {path}", [str(e)]) from e
    if not isinstance(data, dict):
        raise SpecFileError(f"{path} must contain a mapping at the top level")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise SpecFileError(
            f"Invalid {model.__name__} in {path}", format_validation_error(e, key_lines(text))
        ) from e


def load_sweep_spec(path: Path) -> SweepSpec:
    """Read a YAML or JSON sweep specification."""
    return load_spec_file(path, SweepSpec)


class SweepService:
    """Service for evaluating sweep grids.

    Points run concurrently on a thread pool; results keep the input order.
    """

    def __init__(self, settings: MonopoleSettings, workers: int | None = None):
        """Initialize the sweep service.

        Args:
            settings: Loaded settings supplying Floquet and Chern knobs.
            workers: Worker count; defaults to ``settings.output.workers``.
        """
        self.settings = settings
        self.workers = workers or settings.output.workers
        self.context = EvaluationContext(floquet=settings.floquet, chern=settings.chern)

    def _evaluate_point(self, spec: SweepSpec, point: dict[str, float]) -> PointOutcome:
        values: dict[str, Any] = {**spec.fixed, **point}
        try:
            row = evaluate(spec.model, values, spec.outputs, self.context)
        except (MonopoleError, ValidationError) as e:
            logger.warning("Point %s failed: %s", point, e)
            return PointOutcome(point=point, error=e)
        return PointOutcome(point=point, row=row)

    def run(self, spec: SweepSpec) -> SweepResult:
        """Evaluate every grid point of ``spec``.

        Returns:
            SweepResult whose table lists parameters, observables and a status
            column, one row per point in grid order.
        """
        grid = spec.grid()
        logger.info(
            "Sweeping %s over %d points with %d workers", spec.model, len(grid), self.workers
        )
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            outcomes = list(pool.map(lambda point: self._evaluate_point(spec, point), grid))

        parameters = [axis.parameter for axis in spec.axes]
        observables: list[str] = []
        for outcome in outcomes:
            for name in outcome.row:
                if name not in observables:
                    observables.append(name)

        table = ResultTable(columns=[*parameters, *observables, STATUS_COLUMN])
        for outcome in outcomes:
            table.append({**outcome.point, **outcome.row, STATUS_COLUMN: outcome.status})
        return SweepResult(spec=spec, table=table, outcomes=outcomes)


def run_sweep(
    spec: SweepSpec, settings: MonopoleSettings | None = None, workers: int | None = None
) -> SweepResult:
    """Evaluate a sweep with default settings unless given."""
    return SweepService(settings or MonopoleSettings(), workers).run(spec)
