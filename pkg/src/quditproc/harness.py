"""Scenario configs, experiment sweeps, and report serialization for the CLI.

Config files are JSON with a top-level "schema": 1. Complex numbers are
[re, im] pairs; matrices are nested row-major lists of such pairs. Scenario
randomness is derived from one 64-bit seed, so a config plus a seed fully
determines the report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .postselect import ZERO_PROBABILITY_CUTOFF, predicted_probability, run_experiment
from .processor import QubitCnotNetwork, QuditShiftNetwork
from .programs import (
    example1_operator,
    example2_operator,
    exchange_operator,
    family_operator,
    hs_expand,
    reflection_operator,
    u_mn,
)
from .registers import DenseOperator, QuditRegisterState
from .sampling import random_operator, random_state, random_unitary

SCHEMA_VERSION = 1
DEFAULT_TOLERANCE = 1e-10
PROCESSOR_NAMES = ("qudit-shift", "qubit-cnot")
MEASUREMENT_KINDS = ("full", "support")

# Operator names usable in scenario configs and `describe`. Maps to whether
# the entry needs a random generator when its parameters say "random".
CATALOG_NAMES = (
    "identity",
    "u_mn",
    "reflection",
    "exchange",
    "example1",
    "family",
    "example2",
    "random_unitary",
    "random_operator",
    "inline",
)


class ConfigError(ValueError):
    """Unreadable, unparsable, or inconsistent scenario configuration."""


def complex_from_pair(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ConfigError(f"complex numbers are [re, im] pairs, got {pair!r}")
    re, im = pair
    return complex(float(re), float(im))


def matrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ConfigError("matrix must be a non-empty list of rows")
    mat = np.array([[complex_from_pair(cell) for cell in row] for row in rows])
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ConfigError(f"matrix must be square, got shape {mat.shape}")
    return mat


def matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(cell.real), float(cell.imag)] for cell in row] for row in mat]


def vector_from_json(pairs, dim: int) -> QuditRegisterState:
    amps = np.array([complex_from_pair(p) for p in pairs])
    if amps.size != dim:
        raise ConfigError(f"state vector has length {amps.size}, expected {dim}")
    norm = np.linalg.norm(amps)
    if norm <= 1e-12:
        raise ConfigError("state vector is numerically zero")
    return QuditRegisterState(dim, 1, amps / norm)


@dataclass(frozen=True)
class Scenario:
    id: str
    dim: int
    processor: str
    operator_name: str
    operator_params: dict
    data_state: object  # "random" or QuditRegisterState
    measurement: str
    trials: int
    expected_probability: float | None
    tolerance: float
    seed: int | None


@dataclass(frozen=True)
class ReportRow:
    scenario_id: str
    dim: int
    operator_label: str
    measurement: str
    trials: int
    predicted_probability: float
    simulated_probability_mean: float
    max_probability_deviation: float
    min_oracle_fidelity: float | None
    expected_probability: float | None
    tolerance: float
    passed: bool
    wall_time_ms: float


def build_operator(name: str, params: dict, dim: int, rng: np.random.Generator | None) -> DenseOperator:
    """Resolve a catalog entry (or inline matrix) to a concrete operator.

    Entries whose parameters call for randomness need an rng; `describe` passes
    None and rejects those.
    """

    def need_rng() -> np.random.Generator:
        if rng is None:
            raise ConfigError(f"operator '{name}' needs randomness; give explicit parameters")
        return rng

    if name == "identity":
        return DenseOperator(dim, np.eye(dim), label="identity")
    if name == "u_mn":
        return u_mn(dim, (int(params["m"]), int(params["n"])))
    if name == "reflection":
        phi_spec = params.get("phi", "random")
        phi = (
            random_state(dim, 1, need_rng())
            if phi_spec == "random"
            else vector_from_json(phi_spec, dim)
        )
        return reflection_operator(phi)
    if name == "exchange":
        phi_spec = params.get("phi", "random")
        phi = (
            random_state(2, 1, need_rng())
            if phi_spec == "random"
            else vector_from_json(phi_spec, 2)
        )
        return exchange_operator(phi)
    if name == "example1":
        return example1_operator(float(params["phi"]))
    if name == "family":
        return family_operator(int(params["l"]), float(params["phi"]))
    if name == "example2":
        return example2_operator(float(params["theta"]), dim)
    if name == "random_unitary":
        return random_unitary(dim, need_rng())
    if name == "random_operator":
        return random_operator(dim, need_rng())
    if name == "inline":
        mat = matrix_from_json(params["matrix"])
        if mat.shape[0] != dim:
            raise ConfigError(f"inline matrix side {mat.shape[0]} does not match dim {dim}")
        return DenseOperator(dim, mat, label=str(params.get("label", "inline")))
    raise ConfigError(f"unknown operator name: {name!r}")


def _validate_operator_spec(sid: str, name: str, params: dict, dim: int) -> None:
    if name not in CATALOG_NAMES:
        raise ConfigError(f"scenario {sid!r}: unknown operator name {name!r}")
    if "dim" in params and int(params["dim"]) != dim:
        raise ConfigError(
            f"scenario {sid!r}: operator dim {params['dim']} does not match scenario dim {dim}"
        )
    if name == "example1" and dim != 4:
        raise ConfigError(f"scenario {sid!r}: example1 needs dim 4, got {dim}")
    if name == "family":
        try:
            l = int(params["l"])
        except KeyError:
            raise ConfigError(f"scenario {sid!r}: family needs parameter 'l'") from None
        if dim != 2**l:
            raise ConfigError(f"scenario {sid!r}: family with l={l} needs dim {2**l}, got {dim}")
        if "phi" not in params:
            raise ConfigError(f"scenario {sid!r}: family needs parameter 'phi'")
    if name == "example1" and "phi" not in params:
        raise ConfigError(f"scenario {sid!r}: example1 needs parameter 'phi'")
    if name == "example2":
        if dim % 2 != 0:
            raise ConfigError(f"scenario {sid!r}: example2 needs an even dim, got {dim}")
        if "theta" not in params:
            raise ConfigError(f"scenario {sid!r}: example2 needs parameter 'theta'")
    if name == "exchange" and dim != 2:
        raise ConfigError(f"scenario {sid!r}: exchange is a qubit operator, dim must be 2")
    if name == "u_mn" and not {"m", "n"} <= params.keys():
        raise ConfigError(f"scenario {sid!r}: u_mn needs parameters 'm' and 'n'")
    if name == "inline":
        mat = matrix_from_json(params.get("matrix"))
        if mat.shape[0] != dim:
            raise ConfigError(
                f"scenario {sid!r}: inline matrix side {mat.shape[0]} does not match dim {dim}"
            )


def parse_config(doc, seed_override: int | None = None, trials_override: int | None = None):
    """Validate a parsed config document; returns (seed, scenarios).

    All scenarios are validated before anything runs, so a bad config never
    produces partial output.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema: {doc.get('schema')!r} (expected {SCHEMA_VERSION})")
    seed = seed_override if seed_override is not None else int(doc.get("seed", 0))
    if seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    raw_scenarios = doc.get("scenarios", [])
    if not isinstance(raw_scenarios, list):
        raise ConfigError("'scenarios' must be a list")
    scenarios = []
    seen_ids = set()
    for i, raw in enumerate(raw_scenarios):
        if not isinstance(raw, dict):
            raise ConfigError(f"scenario #{i} must be an object")
        sid = str(raw.get("id", f"scenario-{i}"))
        if sid in seen_ids:
            raise ConfigError(f"duplicate scenario id {sid!r}")
        seen_ids.add(sid)
        try:
            dim = int(raw["dim"])
        except KeyError:
            raise ConfigError(f"scenario {sid!r}: missing 'dim'") from None
        if dim < 2:
            raise ConfigError(f"scenario {sid!r}: dim must be >= 2")
        processor = raw.get("processor", "qudit-shift")
        if processor not in PROCESSOR_NAMES:
            raise ConfigError(f"scenario {sid!r}: unknown processor {processor!r}")
        if processor == "qubit-cnot" and dim != 2:
            raise ConfigError(f"scenario {sid!r}: qubit-cnot processor needs dim 2, got {dim}")
        op_spec = raw.get("operator")
        if not isinstance(op_spec, dict):
            raise ConfigError(f"scenario {sid!r}: 'operator' must be an object")
        name = str(op_spec.get("name", "inline"))
        params = {k: v for k, v in op_spec.items() if k != "name"}
        _validate_operator_spec(sid, name, params, dim)
        params.pop("dim", None)
        data_spec = raw.get("data_state", "random")
        data_state = "random" if data_spec == "random" else vector_from_json(data_spec, dim)
        measurement = raw.get("measurement", "full")
        if measurement not in MEASUREMENT_KINDS:
            raise ConfigError(f"scenario {sid!r}: unknown measurement {measurement!r}")
        trials = trials_override if trials_override is not None else int(raw.get("trials", 1))
        if trials < 1:
            raise ConfigError(f"scenario {sid!r}: trials must be >= 1")
        expected = raw.get("expected_probability")
        expected = None if expected is None else float(expected)
        tolerance = float(raw.get("tolerance", DEFAULT_TOLERANCE))
        scn_seed = raw.get("seed")
        scn_seed = None if scn_seed is None else int(scn_seed)
        scenarios.append(
            Scenario(
                id=sid,
                dim=dim,
                processor=processor,
                operator_name=name,
                operator_params=params,
                data_state=data_state,
                measurement=measurement,
                trials=trials,
                expected_probability=expected,
                tolerance=tolerance,
                seed=scn_seed,
            )
        )
    return seed, scenarios


def load_config_file(path) -> dict:
    """Read and parse a JSON config; every failure maps to ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc


def load_bundled_config(name: str) -> dict:
    filename = name.replace("-", "_") + ".json"
    try:
        text = resources.files("quditproc").joinpath("configs").joinpath(filename).read_text("utf-8")
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise ConfigError(f"no bundled config named {name!r}") from exc
    return json.loads(text)


def run_scenario(scn: Scenario, global_seed: int, index: int) -> ReportRow:
    """Run one scenario's trials and aggregate into a report row."""
    rng = np.random.default_rng(scn.seed if scn.seed is not None else [global_seed, index])
    proc = QubitCnotNetwork() if scn.processor == "qubit-cnot" else QuditShiftNetwork(scn.dim)
    started = time.perf_counter()
    sims, preds, devs, fids = [], [], [], []
    for _ in range(scn.trials):
        op = build_operator(scn.operator_name, scn.operator_params, scn.dim, rng)
        psi = random_state(scn.dim, 1, rng) if scn.data_state == "random" else scn.data_state
        outcome = run_experiment(proc, op, psi, scn.measurement)
        pred = predicted_probability(op, psi, scn.measurement)
        sims.append(outcome.probability)
        preds.append(pred)
        devs.append(abs(outcome.probability - pred))
        if outcome.probability > ZERO_PROBABILITY_CUTOFF:
            fids.append(outcome.oracle_fidelity)
    wall_ms = (time.perf_counter() - started) * 1e3
    sim_mean = float(np.mean(sims))
    pred_mean = float(np.mean(preds))
    min_fid = min(fids) if fids else None
    passed = max(devs) <= scn.tolerance
    if scn.expected_probability is not None:
        passed = passed and abs(sim_mean - scn.expected_probability) <= scn.tolerance
    if min_fid is not None:
        passed = passed and min_fid >= 1.0 - scn.tolerance
    return ReportRow(
        scenario_id=scn.id,
        dim=scn.dim,
        operator_label=scn.operator_name,
        measurement=scn.measurement,
        trials=scn.trials,
        predicted_probability=pred_mean,
        simulated_probability_mean=sim_mean,
        max_probability_deviation=float(max(devs)),
        min_oracle_fidelity=min_fid,
        expected_probability=scn.expected_probability,
        tolerance=scn.tolerance,
        passed=bool(passed),
        wall_time_ms=wall_ms,
    )


def run_config(doc, seed_override=None, trials_override=None, log=None):
    """Run all scenarios in config order; returns (seed, rows)."""
    seed, scenarios = parse_config(doc, seed_override, trials_override)
    rows = []
    for i, scn in enumerate(scenarios):
        row = run_scenario(scn, seed, i)
        rows.append(row)
        if log is not None:
            status = "ok" if row.passed else "FAIL"
            print(
                f"[{status}] {row.scenario_id}: p={row.simulated_probability_mean:.12g} "
                f"dev={row.max_probability_deviation:.3g} "
                f"fid={'-' if row.min_oracle_fidelity is None else format(row.min_oracle_fidelity, '.12g')} "
                f"({row.wall_time_ms:.1f} ms)",
                file=log,
            )
    return seed, rows


def _row_dict(row: ReportRow) -> dict:
    # Wall time is printed to the log only; the serialized report must be
    # byte-identical across runs with the same config and seed.
    return {
        "id": row.scenario_id,
        "dim": row.dim,
        "operator": row.operator_label,
        "measurement": row.measurement,
        "trials": row.trials,
        "predicted_probability": row.predicted_probability,
        "simulated_probability_mean": row.simulated_probability_mean,
        "max_probability_deviation": row.max_probability_deviation,
        "min_oracle_fidelity": row.min_oracle_fidelity,
        "expected_probability": row.expected_probability,
        "tolerance": row.tolerance,
        "passed": row.passed,
    }


def report_json(rows, seed: int, config_name: str) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "config": config_name,
        "seed": seed,
        "all_passed": all(r.passed for r in rows),
        "rows": [_row_dict(r) for r in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


_CSV_COLUMNS = (
    "id",
    "dim",
    "operator",
    "measurement",
    "trials",
    "predicted_probability",
    "simulated_probability_mean",
    "max_probability_deviation",
    "min_oracle_fidelity",
    "expected_probability",
    "tolerance",
    "passed",
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def report_csv(rows) -> str:
    lines = [",".join(_CSV_COLUMNS)]
    for row in rows:
        d = _row_dict(row)
        lines.append(",".join(_csv_cell(d[col]) for col in _CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def describe_operator(name: str, dim: int, params: dict) -> dict:
    """Matrix, coefficient table, support size, and probability predictions."""
    if name not in CATALOG_NAMES:
        raise ConfigError(f"unknown operator name: {name!r}")
    op = build_operator(name, params, dim, rng=None)
    expansion = hs_expand(op)
    support = expansion.support()
    unitary = op.is_unitary(1e-10)
    gram = op.gram_trace()
    coeff_table = [
        {
            "m": m,
            "n": n,
            "magnitude": float(abs(expansion.coeffs[m, n])),
            "phase": float(np.angle(expansion.coeffs[m, n])),
        }
        for m in range(dim)
        for n in range(dim)
    ]
    return {
        "operator": name,
        "label": op.label,
        "dim": dim,
        "params": {k: v for k, v in params.items() if k != "matrix"},
        "matrix": matrix_to_json(op.entries),
        "unitary": bool(unitary),
        "gram_trace": gram,
        "support_size": len(support),
        "support": [[int(m), int(n)] for m, n in support],
        "coefficients": coeff_table,
        "predicted_probability_full": (1.0 / dim**2) if unitary else None,
        "predicted_probability_support": (1.0 / len(support)) if unitary else None,
        "probability_scale_full": 1.0 / (dim * gram),
        "probability_scale_support": dim / (len(support) * gram),
    }
