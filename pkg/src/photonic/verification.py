"""Structured verification of the photonic circuits, as run by ``chip-verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config import settings
from ..exceptions import ValidationError, VerificationError
from ..observability import get_logger
from ..qutrit import MUB_INDICES, mub_family
from .circuits import (
    COUPLER_KINDS,
    SQRT2,
    basis_distance,
    coupler,
    hadamard_chip,
    hadamard_variant,
    measured_vectors,
    state_splitter,
)
from .device import build_measurement_device

logger = get_logger(__name__)

FAULTS = ("dc3",)
# DC3 normalised as if it were a balanced coupler
FAULTY_DC3_SCALE = 1.0 / SQRT2


@dataclass(frozen=True)
class CheckResult:
    """One named residual compared against its tolerance."""

    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.tolerance

    def to_row(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "residual": f"{self.residual:.3e}",
            "tolerance": f"{self.tolerance:.1e}",
            "passed": "true" if self.passed else "false",
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    fault: Optional[str] = None

    def add(self, name: str, residual: float, tolerance: float, detail: str = "") -> None:
        result = CheckResult(name, float(residual), tolerance, detail)
        self.checks.append(result)
        level = "debug" if result.passed else "warning"
        getattr(logger, level)(
            "%s residual %.3e (tol %.1e)", name, result.residual, tolerance, extra={"check": name}
        )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def rows(self) -> List[Dict[str, Any]]:
        return [c.to_row() for c in self.checks]

    def raise_for_failures(self) -> None:
        """Raise VerificationError naming the first failing check."""
        if self.failures:
            first = self.failures[0]
            raise VerificationError(first.name, first.residual, first.tolerance)


def _splitter_residual(r: float, psi: np.ndarray) -> float:
    out = state_splitter(r).apply(np.concatenate([psi, np.zeros(3)]))
    first, second = out[:3], out[3:]
    residual = max(
        abs(np.vdot(first, first).real - r),
        abs(np.vdot(second, second).real - (1.0 - r)),
    )
    # each triple must hold psi itself, up to one phase per triple
    for part, weight in ((first, r), (second, 1.0 - r)):
        overlap = abs(np.vdot(psi, part)) ** 2 / weight
        residual = max(residual, abs(1.0 - overlap))
    return float(residual)


def chip_report(
    fault: Optional[str] = None,
    split_probs: Sequence[float] = (0.5, 0.5, 0.5),
    splitter_reflectivities: Sequence[float] = (0.5, 0.25),
) -> VerificationReport:
    """Run every photonic check and collect the residuals.

    Args:
        fault: ``"dc3"`` builds the chip with a corrupted DC3 coefficient
        split_probs: Reflectivities of the device's splitter tree
        splitter_reflectivities: Values at which the 6-mode splitter is checked

    Returns:
        The report; never raises on a failed check
    """
    if fault is not None and fault not in FAULTS:
        raise ValidationError(f"Fault must be one of {FAULTS}, got '{fault}'", field="fault")
    dc3_scale = FAULTY_DC3_SCALE if fault == "dc3" else None
    healthy = dc3_scale is None
    atol, eig_atol = settings.atol, settings.eig_atol
    report = VerificationReport(fault=fault)

    for kind in COUPLER_KINDS:
        scale = dc3_scale if kind == "DC3" else None
        report.add(f"unitarity_{kind}", coupler(kind, scale).unitarity_residual(), atol)

    chip = hadamard_chip(dc3_scale)
    report.add("unitarity_hadamard", chip.unitarity_residual(), atol)
    modulus = float(np.max(np.abs(np.abs(chip.array) ** 2 - 1.0 / 3.0)))
    report.add("hadamard_modulus", modulus, atol)
    unbiased = float(np.max(np.abs(np.abs(measured_vectors(chip)) ** 2 - 1.0 / 3.0)))
    report.add("hadamard_unbiased", unbiased, atol)

    device = build_measurement_device(split_probs, dc3_scale=dc3_scale, verify=False)
    mubs = mub_family()
    for b in MUB_INDICES[1:]:
        found = device.variants[b]
        variant = hadamard_variant(found.phases, chip=chip, verify=healthy)
        distance, _ = basis_distance(measured_vectors(variant), mubs[b])
        phases = "/".join(f"{p:.6f}" for p in found.phases)
        report.add(f"variant_tau{b}", distance, eig_atol, detail=f"phases={phases}")

    psi = np.array([1.0, 1.0j, -1.0], dtype=np.complex128) / np.sqrt(3.0)
    for r in splitter_reflectivities:
        report.add(f"unitarity_splitter_r{r:g}", state_splitter(r).unitarity_residual(), atol)
        report.add(f"splitter_copies_r{r:g}", _splitter_residual(r, psi), atol)

    report.add("unitarity_device", device.unitary.unitarity_residual(), atol)
    povm = device.povm
    report.add("povm_completeness", povm.completeness_residual(), eig_atol)
    report.add("povm_positivity", max(0.0, -povm.min_eigenvalue()), eig_atol)

    expected = device.analytic_branch_probabilities()
    measured = povm.branch_probabilities()
    for b in MUB_INDICES:
        report.add(
            f"branch_{b}", abs(measured[b] - expected[b]), atol, detail=f"p={expected[b]:.6f}"
        )
    for (b, k), element in zip(povm.labels, povm.elements):
        weight = element.trace().real
        report.add(
            f"element_{b}_{k}", abs(weight - expected[b]), atol, detail=f"weight={weight:.6f}"
        )

    logger.info(
        "chip verification finished",
        extra={"check": "all", "status": "passed" if report.passed else "failed"},
    )
    return report
