"""
Audits: executable checks of the structural properties the flatness
criterion rests on.

Each audit evaluates its hypotheses on a concrete instance and, if all of
them hold, its conclusions. An audit passes when it is not applicable or
every conclusion holds; a failing audit points at a bug in the engine.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from flatlab.homology.depth import Unbounded, codepth, depth_at_irrelevant, format_bound, is_finite_length
from flatlab.homology.koszul import KoszulComplex
from flatlab.homology.tor import tor_diagonal, tor_resolution
from flatlab.lab.criteria import dim2_criterion, main_criterion
from flatlab.modules.presented_module import PresentedModule, supports_intersect
from flatlab.modules.tensor import tensor_over_base, tensor_power
from flatlab.modules.torsion import is_torsion_free, torsion_module, torsion_quotient

logger = logging.getLogger(__name__)

# lowest tensor power checked by the descent audit
DESCENT_POWER = 3


class AuditKind(str, enum.Enum):
    TorRigidity = "tor-rigidity"
    TorsionTor = "torsion-tor"
    PowerDescent = "power-descent"
    CodepthDuality = "codepth-duality"
    CodepthAdditivity = "codepth-additivity"
    Dim2Agreement = "dim2-agreement"
    KoszulRigidity = "koszul-rigidity"
    FiniteLengthKoszul = "finite-length-koszul"
    Support = "support"
    TorAgreement = "tor-agreement"


@dataclass
class AuditReport:
    kind: AuditKind
    instance: str
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    conclusions: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def passed(self) -> bool:
        return not self.applicable or all(self.conclusions.values())

    def dict(self):
        result = {
            "audit": self.kind.value,
            "instance": self.instance,
            "applicable": self.applicable,
            "pass": self.passed,
            "hypotheses": dict(self.hypotheses),
            "conclusions": dict(self.conclusions),
        }
        if self.notes:
            result["notes"] = list(self.notes)
        return result


def _label(*modules: PresentedModule) -> str:
    return ", ".join(m.name or "?" for m in modules)


def no_reappearance(vanishing: Sequence[bool]) -> bool:
    """True if once an entry is True all later entries are True."""
    seen = False
    for value in vanishing:
        if seen and not value:
            return False
        seen = seen or value
    return True


def _vanishing_pattern(vanishing: Sequence[bool]) -> str:
    return "".join("0" if v else "*" for v in vanishing)


def rigidity_audit(first: PresentedModule, second: PresentedModule) -> AuditReport:
    """Tor_i(M, N) = 0 implies Tor_j(M, N) = 0 for all j >= i."""
    dim = first.tower.dim
    vanishing = [tor_diagonal(first, second, j).is_zero for j in range(dim + 1)]
    report = AuditReport(AuditKind.TorRigidity, _label(first, second))
    report.hypotheses["same base"] = first.tower.same_base(second.tower)
    report.conclusions["no reappearance"] = no_reappearance(vanishing)
    report.notes.append(f"Tor_0..Tor_{dim} pattern {_vanishing_pattern(vanishing)}")
    return report


def tor_agreement_audit(first: PresentedModule, second: PresentedModule) -> AuditReport:
    """The diagonal and resolution routes agree on the vanishing of Tor_j."""
    report = AuditReport(AuditKind.TorAgreement, _label(first, second))
    report.hypotheses["first module over R"] = first.algebra.is_base
    if report.applicable:
        for j in range(first.tower.dim + 1):
            report.conclusions[f"Tor_{j} agrees"] = (
                tor_diagonal(first, second, j).is_zero == tor_resolution(first, second, j).is_zero
            )
    return report


def torsion_tor_audit(first: PresentedModule, second: PresentedModule) -> AuditReport:
    """If M (x)_R N is torsion-free, Tor vanishes against torsion and the torsion splits off."""
    product = tensor_over_base(first, second)
    dim = first.tower.dim
    report = AuditReport(AuditKind.TorsionTor, _label(first, second))
    report.hypotheses["product torsion-free"] = is_torsion_free(product)
    if not report.applicable:
        return report
    report.conclusions["Tor_i(M, N) = 0 for i >= 1"] = all(
        tor_diagonal(first, second, j).is_zero for j in range(1, dim + 1)
    )
    first_torsion = torsion_module(first)
    second_torsion = torsion_module(second)
    report.conclusions["Tor_i(M, T(N)) = 0 for all i"] = all(
        tor_diagonal(first, second_torsion, j).is_zero for j in range(dim + 1)
    )
    report.conclusions["Tor_i(T(M), N) = 0 for all i"] = all(
        tor_diagonal(first_torsion, second, j).is_zero for j in range(dim + 1)
    )
    quotient = tensor_over_base(
        torsion_quotient(first, prune=False), torsion_quotient(second, prune=False)
    )
    report.conclusions["M (x) N = M/T (x) N/T"] = (
        quotient.rank == product.rank
        and all(product.contains_zero_class(relation) for relation in quotient.relations)
        and all(quotient.contains_zero_class(relation) for relation in product.relations)
    )
    return report


def descent_power(module: PresentedModule) -> int:
    return max(module.tower.dim, DESCENT_POWER)


def power_descent_audit(module: PresentedModule, power: int) -> AuditReport:
    """If T^power M is torsion-free so is every lower tensor power."""
    report = AuditReport(AuditKind.PowerDescent, f"{_label(module)}, d={power}")
    report.hypotheses[f"T^{power} torsion-free"] = is_torsion_free(tensor_power(module, power))
    if report.applicable:
        for n in range(1, power):
            report.conclusions[f"T^{n} torsion-free"] = is_torsion_free(tensor_power(module, n))
    return report


def koszul_rigidity_audit(sequence: Sequence, module: PresentedModule, label: str = "") -> AuditReport:
    """H_i(x; M) = 0 implies H_j(x; M) = 0 for all j >= i."""
    complex_ = KoszulComplex(sequence, module)
    vanishing = [complex_.homology(i).is_zero for i in range(complex_.length + 1)]
    report = AuditReport(AuditKind.KoszulRigidity, label or _label(module))
    report.hypotheses["sequence in the ambient ring"] = True
    report.conclusions["no reappearance"] = no_reappearance(vanishing)
    report.notes.append(f"H_0..H_{complex_.length} pattern {_vanishing_pattern(vanishing)}")
    return report


def codepth_duality_audit(module: PresentedModule) -> AuditReport:
    """codepth M + depth M = dim R for a module over R whose support contains the origin."""
    report = AuditReport(AuditKind.CodepthDuality, _label(module))
    report.hypotheses["module over R"] = module.algebra.is_base
    if not report.applicable:
        return report
    cd = codepth(module)
    report.hypotheses["origin in support"] = not isinstance(cd, Unbounded)
    if not report.applicable:
        return report
    depth = depth_at_irrelevant(module)
    report.notes.append(f"codepth {format_bound(cd)}, depth {format_bound(depth)}")
    report.conclusions["codepth + depth = dim R"] = (
        not isinstance(depth, Unbounded) and cd + depth == module.tower.dim
    )
    return report


def codepth_additivity_audit(first: PresentedModule, second: PresentedModule) -> AuditReport:
    """codepth(M (x) N) = codepth M + codepth N for Tor-independent modules over R."""
    report = AuditReport(AuditKind.CodepthAdditivity, _label(first, second))
    report.hypotheses["modules over R"] = first.algebra.is_base and second.algebra.is_base
    if not report.applicable:
        return report
    report.hypotheses["Tor_i(M, N) = 0 for i >= 1"] = all(
        tor_diagonal(first, second, j).is_zero for j in range(1, first.tower.dim + 1)
    )
    first_codepth = codepth(first)
    second_codepth = codepth(second)
    report.hypotheses["finite codepths"] = not isinstance(
        first_codepth, Unbounded
    ) and not isinstance(second_codepth, Unbounded)
    if not report.applicable:
        return report
    product_codepth = codepth(tensor_over_base(first, second))
    report.notes.append(
        f"codepth {first_codepth} + {second_codepth}, product {format_bound(product_codepth)}"
    )
    report.conclusions["additive"] = product_codepth == first_codepth + second_codepth
    return report


def support_audit(first: PresentedModule, second: PresentedModule) -> AuditReport:
    """Meeting supports over a common algebra give a nonzero tensor product."""
    report = AuditReport(AuditKind.Support, _label(first, second))
    report.hypotheses["common algebra"] = first.algebra == second.algebra
    if report.applicable:
        report.hypotheses["supports meet"] = supports_intersect(first, second)
    if report.applicable:
        report.conclusions["M (x)_R N != 0"] = not tensor_over_base(first, second).is_zero()
    return report


def finite_length_koszul_audit(sequence: Sequence, module: PresentedModule, label: str = "") -> AuditReport:
    """A nonzero finite-length H_1(x; L) forces depth H_0(x; L) = 0."""
    complex_ = KoszulComplex(sequence, module)
    first = complex_.homology(1).module
    report = AuditReport(AuditKind.FiniteLengthKoszul, label or _label(module))
    report.hypotheses["H_1 nonzero"] = not first.is_zero()
    if report.applicable:
        report.hypotheses["H_1 of finite length"] = is_finite_length(first)
    if report.applicable:
        depth = depth_at_irrelevant(complex_.homology(0).module)
        report.notes.append(f"depth H_0 = {format_bound(depth)}")
        report.conclusions["depth H_0 = 0"] = depth == 0
    return report


def dim2_audit(module: PresentedModule) -> AuditReport:
    """The square criterion agrees with the main criterion at d = dim R."""
    report = AuditReport(AuditKind.Dim2Agreement, _label(module))
    report.hypotheses["dim R <= 2"] = module.tower.dim <= 2
    if report.applicable:
        square = dim2_criterion(module).verdict
        main = main_criterion(module).verdict
        report.notes.append(f"dim2 {square.value}, main {main.value}")
        report.conclusions["same verdict"] = square == main
    return report


def run_module_audits(module: PresentedModule, power: Optional[int] = None) -> List[AuditReport]:
    """The single-module audits applicable to any corpus module."""
    reports = [dim2_audit(module)]
    reports.append(power_descent_audit(module, power or descent_power(module)))
    reports.append(koszul_rigidity_audit(module.algebra.base_generators(), module))
    if module.algebra.is_base:
        reports.append(codepth_duality_audit(module))
        reports.append(finite_length_koszul_audit(module.algebra.base_generators(), module))
    return reports


def run_pair_audits(first: PresentedModule, second: PresentedModule) -> List[AuditReport]:
    """The two-module audits for a pair over the same base."""
    reports = [rigidity_audit(first, second), torsion_tor_audit(first, second)]
    if first.algebra.is_base:
        reports.append(tor_agreement_audit(first, second))
    if first.algebra.is_base and second.algebra.is_base:
        reports.append(codepth_additivity_audit(first, second))
    if first.algebra == second.algebra:
        reports.append(support_audit(first, second))
    for report in reports:
        logger.debug("Audit %s on %s: %s", report.kind.value, report.instance,
                     "pass" if report.passed else "FAIL")
    return reports
