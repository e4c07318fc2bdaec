"""
Flatness decisions by torsion-freeness of tensor powers.

Over a polynomial base R of dimension m, a module M over a witness algebra
is flat if T^d M is R-torsion-free for some d >= m; conversely flat modules
have flat, hence torsion-free, tensor powers. For m <= 2 the square M (x) M
suffices.
"""

import logging
import time
from typing import List, Optional

from flatlab.kernel.groebner import collect_stats
from flatlab.lab.certificate import (
    CriterionPreconditionError,
    FlatnessCertificate,
    LabError,
    Method,
    Verdict,
    Witness,
)
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tensor import tensor_power
from flatlab.modules.torsion import torsion_submodule, torsion_witness

logger = logging.getLogger(__name__)


def torsion_verdict(module: PresentedModule, power: int, method: Method) -> FlatnessCertificate:
    """Certificate from the torsion test of T^power M."""
    ring = module.tower.ring
    start = time.perf_counter()
    trace: List[str] = []
    with collect_stats() as stats:
        power_module = tensor_power(module, power)
        trace.append(
            f"T^{power}: {power_module.rank} generators, {len(power_module.relations)} relations"
        )
        decomposition = torsion_submodule(power_module)
        ambient = power_module.ring
        if decomposition.is_torsion_free:
            verdict = Verdict.Flat
            witness = Witness(h=ambient.format(decomposition.base_factor))
            trace.append(f"torsion-free, h = {witness.h}")
        else:
            pair = torsion_witness(power_module)
            if pair is None:
                raise LabError("Torsion found but no annihilating base element")
            verdict = Verdict.NotFlat
            witness = Witness(
                element=[ambient.format(p) for p in pair.element],
                annihilator=ambient.format(pair.annihilator),
            )
            trace.append(
                f"{len(decomposition.torsion_generators)} torsion generators,"
                f" certificate {ambient.format(decomposition.certificate)}"
            )
    wall_ms = int(round((time.perf_counter() - start) * 1000))
    logger.debug("%s verdict for %s with d=%d: %s", method.value, module.name, power, verdict.value)
    return FlatnessCertificate(
        verdict=verdict,
        method=method,
        d=power,
        base_field=ring.field.name,
        base_variables=ring.variables,
        witness=witness,
        stats=stats,
        wall_ms=wall_ms,
        module=module.name,
        trace=trace,
    )


def main_criterion(module: PresentedModule, power: Optional[int] = None) -> FlatnessCertificate:
    """Decide flatness of M over R from T^d M, d defaulting to dim R."""
    dim = module.tower.dim
    if power is None:
        power = dim
    if power <= 0:
        raise CriterionPreconditionError(f"Tensor power d={power} must be positive")
    if power < dim:
        raise CriterionPreconditionError(
            f"d={power} is below dim R = {dim}; the criterion gives no conclusion"
        )
    return torsion_verdict(module, power, Method.MainCriterion)


def dim2_criterion(module: PresentedModule) -> FlatnessCertificate:
    """Decide flatness over a base of dimension at most 2 from M (x)_R M."""
    dim = module.tower.dim
    if dim > 2:
        raise CriterionPreconditionError(
            f"The square criterion needs dim R <= 2, got {dim}"
        )
    return torsion_verdict(module, 2, Method.Dim2)


def ass_points_report(module: PresentedModule, power: Optional[int] = None) -> str:
    """Text report on the associated points of T^d M.

    Ass R = {0} for the polynomial base, so Ass_R(T^d M) lies in Ass R exactly
    when T^d M is torsion-free.
    """
    certificate = main_criterion(module, power)
    lines = [
        f"Associated points of T^{certificate.d} {module.name or 'M'} over"
        f" {certificate.base_field}[{', '.join(certificate.base_variables)}]:",
        "  Ass R = {0}, so the condition is torsion-freeness of the tensor power",
    ]
    if certificate.verdict == Verdict.Flat:
        lines.append("  condition holds")
    else:
        lines.append(f"  condition fails, torsion witness {certificate.witness.annihilator}")
    return "\n".join(lines)
