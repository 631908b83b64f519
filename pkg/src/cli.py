#!/usr/bin/env python3
"""rfi-qkd command line: key-rate sweeps, protocol runs, qutrit C3 and chip checks.

Results are CSV on stdout (or ``--out PATH``); logs go to stderr.
"""

import functools
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, TypeVar

import click

from .channel import parse_drift_spec, parse_phase_drift_spec
from .config import settings
from .exceptions import RfiQkdError
from .observability import RunLogger, get_logger, setup_logging
from .photonic import chip_report
from .protocol import (
    BasisChoice,
    compute_C,
    compute_Q,
    c_standard_error,
    dump_transcript,
    estimate_correlations,
    exact_correlations,
    q_standard_error,
    sample_transcript,
)
from .qstate import ComplexMatrix, tensor_product, werner_state
from .qutrit import (
    c3_standard_error,
    compute_C3,
    isotropic_state,
    phase_drift_unitary,
    sample_qutrit_transcript,
)
from .run_config import (
    ChipConfig,
    QutritConfig,
    RatesConfig,
    SimulateConfig,
    build_run_config,
    parse_basis_weights,
)
from .security import (
    INFEASIBLE,
    SecurityEstimate,
    eve_information,
    find_crossing,
    key_rate_curve,
    linspace_grid,
    propagate_rate_error,
    werner_c,
)
from .storage import ResultTable

logger = get_logger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

RATE_COLUMNS = ("Q", "C", "I_E", "r", "u_opt", "v_opt", "method", "feasible")
SIMULATE_COLUMNS = (
    "source",
    "Q",
    "sigma_Q",
    "C",
    "sigma_C",
    "I_E",
    "r",
    "sigma_r",
    "method",
    "feasible",
)
QUTRIT_COLUMNS = ("source", "C3", "sigma_C3")
CHIP_COLUMNS = ("check", "residual", "tolerance", "passed", "detail")


def handle_errors(func: F) -> F:
    """Report RfiQkdError on stderr and exit with its code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except RfiQkdError as e:
            logger.error(e.message, extra={"command": func.__name__})
            click.echo(f"Error: {e}", err=True)
            details = e.to_dict()["error"].get("details")
            if details:
                click.echo(json.dumps(details, default=str), err=True)
            sys.exit(e.exit_code)

    return wrapper  # type: ignore[return-value]


def emit(table: ResultTable, out: Optional[str]) -> None:
    text = table.write(out)
    if not out:
        click.echo(text, nl=False)


@click.group()
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
@click.option("--log-json/--no-log-json", default=None, help="JSON log lines on stderr")
def cli(log_level: Optional[str], log_json: Optional[bool]) -> None:
    """Reference-frame-independent QKD simulation.

    Evaluate the key rate from the frame-invariant quantities Q and C, run the
    protocol by Monte Carlo under frame drift, evaluate the qutrit invariant C3
    and verify the photonic measurement circuits.
    """
    setup_logging(
        settings.app_name,
        log_level or settings.log_level,
        settings.log_json if log_json is None else log_json,
    )


@cli.command()
@click.option("--werner", is_flag=True, help="C(Q) of the Werner state (default)")
@click.option("--constant-c", type=float, default=None, help="Fixed C for every row")
@click.option("--qmax", "q_max", type=float, default=None, help="Largest QBER on the grid")
@click.option("--steps", type=int, default=None, help="Grid points")
@click.option("--workers", "max_workers", type=int, default=None, help="Worker threads")
@click.option("--out", default=None, help="Write CSV here instead of stdout")
@click.option("--config", "config_path", default=None, help="YAML run configuration")
@handle_errors
def rates(
    werner: bool,
    constant_c: Optional[float],
    q_max: Optional[float],
    steps: Optional[int],
    max_workers: Optional[int],
    out: Optional[str],
    config_path: Optional[str],
) -> None:
    """Key-rate table r(Q) and its zero crossing."""
    cfg = build_run_config(
        RatesConfig,
        config_path,
        werner=True if werner else None,
        constant_c=constant_c,
        q_max=q_max,
        steps=steps,
        max_workers=max_workers,
        out=out,
    )
    source = "werner"
    c_of_q: Callable[[float], float] = werner_c
    if cfg.constant_c is not None:
        fixed_c = cfg.constant_c
        source = f"constant:{fixed_c!r}"
        c_of_q = lambda q: fixed_c  # noqa: E731

    grid = linspace_grid(cfg.q_max, cfg.steps)
    with RunLogger(logger, "rates"):
        estimates = key_rate_curve(grid, c_of_q, cfg.max_workers)
        crossing = find_crossing(estimates, c_of_q)

    table = ResultTable(
        RATE_COLUMNS,
        header={
            "command": "rates",
            "source": source,
            "crossing": "none" if crossing is None else crossing,
        },
    )
    for estimate in estimates:
        table.append({k: v for k, v in estimate.to_dict().items() if k in RATE_COLUMNS})
    emit(table, cfg.out)


def _rate_row(
    source: str, q: float, c: float, sigma_q: Optional[float], sigma_c: Optional[float]
) -> Dict[str, Any]:
    if 0.0 <= q < 0.5:
        estimate = eve_information(q, c)
    else:
        # finite samples can put Q at or above 1/2, where the bound is undefined
        logger.warning("estimated Q = %.6g outside [0, 0.5); row flagged infeasible", q)
        estimate = SecurityEstimate(q, c, None, None, None, None, feasible=False, method=INFEASIBLE)
    sigma_r: Optional[float] = None
    if sigma_q is not None and sigma_c is not None and estimate.feasible:
        sigma_r = propagate_rate_error(q, c, sigma_q, sigma_c)
    return {
        "source": source,
        "Q": q,
        "sigma_Q": sigma_q,
        "C": c,
        "sigma_C": sigma_c,
        "I_E": estimate.I_E,
        "r": estimate.r,
        "sigma_r": sigma_r,
        "method": estimate.method,
        "feasible": estimate.feasible,
    }


@cli.command()
@click.option("--n", "n_signals", type=int, default=None, help="Number of signals")
@click.option("--seed", type=int, default=None, help="Seed for every random draw")
@click.option("--drift", default=None, help="constant:B0 | ramp:B0:RATE | walk:B0:STEP:SEED")
@click.option("--noise", "--q", "noise", type=float, default=None, help="Werner QBER")
@click.option("--bases", default=None, help="Basis weights, e.g. X=1,Y=1,Z=2")
@click.option("--transcript-out", default=None, help="Also write the raw transcript")
@click.option("--out", default=None, help="Write CSV here instead of stdout")
@click.option("--config", "config_path", default=None, help="YAML run configuration")
@handle_errors
def simulate(
    n_signals: Optional[int],
    seed: Optional[int],
    drift: Optional[str],
    noise: Optional[float],
    bases: Optional[str],
    transcript_out: Optional[str],
    out: Optional[str],
    config_path: Optional[str],
) -> None:
    """Monte-Carlo protocol run on a Werner source with frame drift."""
    cfg = build_run_config(
        SimulateConfig,
        config_path,
        n_signals=n_signals,
        seed=seed,
        drift=drift,
        noise=noise,
        bases=bases,
        transcript_out=transcript_out,
        out=out,
    )
    rho = werner_state(cfg.noise)
    choice = (
        BasisChoice.from_weights(parse_basis_weights(cfg.bases))
        if cfg.bases
        else BasisChoice.uniform()
    )
    with RunLogger(logger, "simulate", seed=cfg.seed, n_signals=cfg.n_signals):
        transcript = sample_transcript(
            rho, cfg.n_signals, choice, parse_drift_spec(cfg.drift), seed=cfg.seed
        )
        if cfg.transcript_out:
            Path(cfg.transcript_out).write_text(dump_transcript(transcript), encoding="utf-8")
        record = estimate_correlations(transcript)
        sampled = _rate_row(
            "estimate",
            compute_Q(record),
            compute_C(record),
            q_standard_error(record),
            c_standard_error(record),
        )
        exact = exact_correlations(rho)
        reference = _rate_row("exact", compute_Q(exact), compute_C(exact), None, None)

    table = ResultTable(
        SIMULATE_COLUMNS,
        header={
            "command": "simulate",
            "n": cfg.n_signals,
            "seed": cfg.seed,
            "drift": cfg.drift,
            "noise": cfg.noise,
            "bases": cfg.bases or "uniform",
        },
    )
    table.append(sampled)
    table.append(reference)
    emit(table, cfg.out)


@cli.command()
@click.option("--n", "n_signals", type=int, default=None, help="Number of signals")
@click.option("--seed", type=int, default=None, help="Seed for every random draw")
@click.option("--phase-drift", default=None, help="Drift spec for (phi1, phi2): SPEC or SPEC,SPEC")
@click.option("--p", type=float, default=None, help="Isotropic-state weight (1 = Bell state)")
@click.option("--out", default=None, help="Write CSV here instead of stdout")
@click.option("--config", "config_path", default=None, help="YAML run configuration")
@handle_errors
def qutrit(
    n_signals: Optional[int],
    seed: Optional[int],
    phase_drift: Optional[str],
    p: Optional[float],
    out: Optional[str],
    config_path: Optional[str],
) -> None:
    """Exact and sampled C3 of a two-qutrit isotropic state."""
    cfg = build_run_config(
        QutritConfig,
        config_path,
        n_signals=n_signals,
        seed=seed,
        phase_drift=phase_drift,
        p=p,
        out=out,
    )
    rho = isotropic_state(cfg.p)
    drift = parse_phase_drift_spec(cfg.phase_drift)
    with RunLogger(logger, "qutrit", seed=cfg.seed, n_signals=cfg.n_signals):
        # the exact row sees the phases of the first signal
        phases = drift.at(0)
        shift = tensor_product(ComplexMatrix.identity(3), phase_drift_unitary(*phases))
        exact_c3 = compute_C3(exact_correlations(rho.evolve(shift)))
        transcript = sample_qutrit_transcript(
            rho, cfg.n_signals, phase_drift=drift, seed=cfg.seed
        )
        record = estimate_correlations(transcript)

    table = ResultTable(
        QUTRIT_COLUMNS,
        header={
            "command": "qutrit",
            "n": cfg.n_signals,
            "seed": cfg.seed,
            "phase_drift": cfg.phase_drift,
            "p": cfg.p,
        },
    )
    table.append({"source": "exact", "C3": exact_c3})
    table.append(
        {"source": "estimate", "C3": compute_C3(record), "sigma_C3": c3_standard_error(record)}
    )
    emit(table, cfg.out)


@cli.command("chip-verify")
@click.option("--fault", type=click.Choice(["dc3"]), default=None, help="Inject a known fault")
@click.option(
    "--split", type=(float, float, float), default=None, help="Reflectivities r1 r2 r3"
)
@click.option("--out", default=None, help="Write CSV here instead of stdout")
@click.option("--config", "config_path", default=None, help="YAML run configuration")
@handle_errors
def chip_verify(
    fault: Optional[str],
    split: Optional[Tuple[float, float, float]],
    out: Optional[str],
    config_path: Optional[str],
) -> None:
    """Verify the couplers, Hadamard chips, splitters and device POVM."""
    cfg = build_run_config(ChipConfig, config_path, fault=fault, split=split or None, out=out)
    with RunLogger(logger, "chip-verify"):
        report = chip_report(cfg.fault, cfg.split)

    table = ResultTable(
        CHIP_COLUMNS,
        header={
            "command": "chip-verify",
            "fault": cfg.fault or "none",
            "status": "passed" if report.passed else "failed",
        },
    )
    for row in report.rows():
        table.append(row)
    emit(table, cfg.out)
    report.raise_for_failures()


def main() -> None:
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
