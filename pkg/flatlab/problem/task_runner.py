import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

from flatlab import FlatlabError
from flatlab.homology.depth import codepth, depth_at_irrelevant, format_bound
from flatlab.homology.tor import TorMethod, tor
from flatlab.kernel.groebner import GroebnerConfig, use_config
from flatlab.kernel.monomial_order import MonomialOrder
from flatlab.lab import audits
from flatlab.lab.certificate import FlatnessCertificate, dumps
from flatlab.lab.criteria import ass_points_report, dim2_criterion, main_criterion
from flatlab.lab.oracles import fitting_oracle, smith_oracle
from flatlab.modules.torsion import torsion_submodule
from flatlab.problem.bench import Benchmark
from flatlab.problem.problem_file import ProblemFile, TaskDeclaration, TaskError, TaskKind
from flatlab.problem.problem_parser import audit_kind
from flatlab.problem.workspace import Workspace, build_workspace

VERDICT_TASKS = (TaskKind.Flat, TaskKind.Dim2, TaskKind.Oracle, TaskKind.Torsion)

SINGLE_MODULE_AUDITS = {
    audits.AuditKind.CodepthDuality: audits.codepth_duality_audit,
    audits.AuditKind.Dim2Agreement: audits.dim2_audit,
}
PAIR_AUDITS = {
    audits.AuditKind.TorRigidity: audits.rigidity_audit,
    audits.AuditKind.TorsionTor: audits.torsion_tor_audit,
    audits.AuditKind.CodepthAdditivity: audits.codepth_additivity_audit,
    audits.AuditKind.Support: audits.support_audit,
    audits.AuditKind.TorAgreement: audits.tor_agreement_audit,
}


class TaskRunner:
    """Runs the tasks of a problem file and reports their results.

    Results go to the "flatlab" logger as text, or to stdout as one JSON
    object per task. With a non-default order, verdict tasks are repeated
    under the default order and must agree.
    """

    def __init__(
        self,
        problem: ProblemFile,
        log_level=logging.INFO,
        order: Optional[str] = None,
        json_output=False,
        all_audits=False,
        sugar=False,
        timing=True,
    ):
        self.logger = logging.getLogger("flatlab")
        self.logger.level = log_level
        if not self.logger.hasHandlers():
            self.logger.addHandler(logging.StreamHandler(sys.stdout))
        self.problem = problem
        self.order = MonomialOrder.from_name(order) if order else MonomialOrder()
        self.check_order = self.order != MonomialOrder()
        self.json_output = json_output
        self.all_audits = all_audits
        self.sugar = sugar
        self.timing = timing
        self.results: List[Dict[str, Any]] = []
        self._workspace: Optional[Workspace] = None
        self._reference: Optional[Workspace] = None

    @property
    def workspace(self) -> Workspace:
        if self._workspace is None:
            self._workspace = build_workspace(self.problem, self.order)
        return self._workspace

    @property
    def reference_workspace(self) -> Workspace:
        if self._reference is None:
            self._reference = build_workspace(self.problem, MonomialOrder())
        return self._reference

    def run(self) -> int:
        """Run all tasks; returns the number of failed tasks and audits."""
        failures = 0
        with use_config(GroebnerConfig.from_environment(sugar=self.sugar)):
            for task in self.problem.tasks:
                failures += self.run_task(task)
            if self.all_audits:
                failures += self.run_all_audits()
        return failures

    def run_task(self, task: TaskDeclaration) -> int:
        try:
            result, ok = self.execute(task, self.workspace)
            if self.check_order and task.kind in VERDICT_TASKS:
                reference, _ = self.execute(task, self.reference_workspace)
                stable = self._verdict(result) == self._verdict(reference)
                result["order_stable"] = stable
                if not stable:
                    self.logger.error("Task '%s' changes its verdict with the order", task.text)
                ok = ok and stable
        except FlatlabError as e:
            result = {"task": task.text, "error": type(e).__name__, "message": str(e)}
            ok = False
            if not self.json_output:
                self.logger.error("Task '%s' failed: %s", task.text, e)
        self.emit(result)
        return 0 if ok else 1

    def emit(self, result: Dict[str, Any]):
        self.results.append(result)
        if self.json_output:
            print(dumps(result))

    @staticmethod
    def _verdict(result: Dict[str, Any]):
        if "verdict" in result:
            return result["verdict"].replace("OracleOnly-", "")
        return result.get("torsion_free")

    def execute(self, task: TaskDeclaration, workspace: Workspace) -> Tuple[Dict[str, Any], bool]:
        handler = {
            TaskKind.Flat: self._flat,
            TaskKind.Dim2: self._flat,
            TaskKind.Oracle: self._flat,
            TaskKind.Tor: self._tor,
            TaskKind.Torsion: self._torsion,
            TaskKind.Depth: self._depth,
            TaskKind.Codepth: self._depth,
            TaskKind.Audit: self._audit,
            TaskKind.Bench: self._bench,
            TaskKind.Ass: self._ass,
        }[task.kind]
        return handler(task, workspace)

    def _certificate(self, task, workspace) -> FlatnessCertificate:
        if task.kind == TaskKind.Flat:
            return main_criterion(workspace.module(task.arguments[0]), task.int_option("d"))
        if task.kind == TaskKind.Dim2:
            return dim2_criterion(workspace.module(task.arguments[0]))
        module = workspace.module(task.arguments[1])
        if task.arguments[0] == "smith":
            return smith_oracle(module)
        return fitting_oracle(module, task.int_option("r"))

    def _flat(self, task, workspace):
        certificate = self._certificate(task, workspace)
        if not self.timing:
            certificate.wall_ms = 0
        ok = True
        expected = task.options.get("expect")
        if expected is not None:
            if expected not in ("Flat", "NotFlat"):
                raise TaskError(f"Unknown expectation '{expected}'")
            ok = certificate.verdict.is_flat == (expected == "Flat")
        self.logger.info(
            "%s: %s (%s, d=%d)%s",
            task.text,
            certificate.verdict.value,
            certificate.method.value,
            certificate.d,
            self._witness_text(certificate),
        )
        if not ok:
            self.logger.error("%s: expected %s", task.text, expected)
        return certificate.dict(), ok

    @staticmethod
    def _witness_text(certificate: FlatnessCertificate) -> str:
        witness = certificate.witness
        if witness.annihilator is not None:
            return f", torsion witness killed by {witness.annihilator}"
        if witness.h is not None:
            return f", h = {witness.h}"
        if certificate.details:
            return ", " + ", ".join(f"{k}: {v}" for k, v in certificate.details.items())
        return ""

    def _tor(self, task, workspace):
        first = workspace.module(task.arguments[0])
        second = workspace.module(task.arguments[1])
        method = TorMethod(task.options.get("method", TorMethod.Diagonal.value))
        results = [tor(first, second, j, method) for j in range(first.tower.dim + 1)]
        for result in results:
            self.logger.info(
                "%s: Tor_%d %s", task.text, result.degree,
                "= 0" if result.is_zero else f"!= 0 ({result.module.rank} generators)",
            )
        return {"task": task.text, "tor": [r.dict() for r in results]}, True

    def _torsion(self, task, workspace):
        module = workspace.module(task.arguments[0])
        decomposition = torsion_submodule(module)
        ring = module.ring
        result = {
            "task": task.text,
            "torsion_free": decomposition.is_torsion_free,
            "generators": [ring.format_vector(v) for v in decomposition.torsion_generators],
            "certificate": ring.format(decomposition.certificate),
        }
        self.logger.info(
            "%s: %s, killed by %s",
            task.text,
            "torsion-free" if decomposition.is_torsion_free
            else f"{len(decomposition.torsion_generators)} torsion generators",
            result["certificate"],
        )
        ok = True
        expected = task.options.get("expect")
        if expected is not None:
            if expected not in ("torsion-free", "torsion"):
                raise TaskError(f"Unknown expectation '{expected}'")
            ok = decomposition.is_torsion_free == (expected == "torsion-free")
        return result, ok

    def _depth(self, task, workspace):
        module = workspace.module(task.arguments[0])
        key = task.kind.value
        value = depth_at_irrelevant(module) if task.kind == TaskKind.Depth else codepth(module)
        self.logger.info("%s: %s", task.text, format_bound(value))
        return {"task": task.text, key: format_bound(value)}, True

    def _audit_reports(self, task, workspace) -> List[audits.AuditReport]:
        kind = audit_kind(task.arguments[0])
        modules = [workspace.module(name) for name in task.arguments[1:]]
        if kind is None:
            reports = audits.run_module_audits(modules[0], task.int_option("d"))
            if len(modules) == 2:
                reports += audits.run_pair_audits(*modules)
            return reports
        if kind in PAIR_AUDITS:
            if len(modules) != 2:
                raise TaskError(f"Audit {kind.value} needs two modules")
            return [PAIR_AUDITS[kind](*modules)]
        if len(modules) != 1:
            raise TaskError(f"Audit {kind.value} needs one module")
        module = modules[0]
        if kind == audits.AuditKind.PowerDescent:
            power = task.int_option("d", audits.descent_power(module))
            return [audits.power_descent_audit(module, power)]
        if kind == audits.AuditKind.KoszulRigidity:
            return [audits.koszul_rigidity_audit(module.algebra.base_generators(), module)]
        if kind == audits.AuditKind.FiniteLengthKoszul:
            return [audits.finite_length_koszul_audit(module.algebra.base_generators(), module)]
        return [SINGLE_MODULE_AUDITS[kind](module)]

    def _log_report(self, report: audits.AuditReport):
        status = "pass" if report.passed else "FAIL"
        if not report.applicable:
            status += " (not applicable)"
        log = self.logger.info if report.passed else self.logger.error
        log("audit %s [%s]: %s", report.kind.value, report.instance, status)
        for note in report.notes:
            self.logger.debug("  %s", note)

    def _audit(self, task, workspace):
        reports = self._audit_reports(task, workspace)
        for report in reports:
            self._log_report(report)
        ok = all(report.passed for report in reports)
        return {"task": task.text, "audits": [r.dict() for r in reports]}, ok

    def _bench(self, task, workspace):
        module = workspace.module(task.arguments[0])
        benchmark = Benchmark(module, task.int_option("dmax", 3), self.logger.level, self.timing)
        rows = benchmark.rows()
        for row in rows:
            self.logger.info(
                "%s: d=%d, %d generators, %d relations, %d pairs",
                task.text, row.d, row.generators, row.relations, row.gb_pairs,
            )
        return {"task": task.text, "rows": [row.dict() for row in rows]}, True

    def _ass(self, task, workspace):
        report = ass_points_report(workspace.module(task.arguments[0]), task.int_option("d"))
        self.logger.info(report)
        return {"task": task.text, "report": report}, True

    def run_all_audits(self) -> int:
        """Every single-module audit per module and every pair audit per module pair."""
        modules = list(self.workspace.modules.values())
        reports: List[audits.AuditReport] = []
        try:
            for module in modules:
                reports.extend(audits.run_module_audits(module))
            for i, first in enumerate(modules):
                for second in modules[i:]:
                    reports.extend(audits.run_pair_audits(first, second))
        except FlatlabError as e:
            self.emit({"task": "all-audits", "error": type(e).__name__, "message": str(e)})
            self.logger.error("Audits failed: %s", e)
            return 1
        for report in reports:
            self._log_report(report)
        self.emit({"task": "all-audits", "audits": [r.dict() for r in reports]})
        return sum(1 for report in reports if not report.passed)
