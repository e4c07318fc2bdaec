import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from flatlab.kernel.errors import KernelError
from flatlab.kernel.expression import ExpressionError, parse_polynomial
from flatlab.kernel.field import CoefficientField
from flatlab.kernel.polynomial_ring import PolynomialRing
from flatlab.lab.audits import AuditKind
from flatlab.problem.problem_file import (
    AlgebraDeclaration,
    ModuleDeclaration,
    ProblemFile,
    ProblemNameError,
    ProblemSyntaxError,
    TaskDeclaration,
    TaskKind,
)

NAME = r"[A-Za-z_][A-Za-z0-9_]*"

AUDIT_ALIASES = {"rigidity": AuditKind.TorRigidity, "all": None}
ORACLE_NAMES = ("smith", "fitting")


def audit_kind(name: str) -> Optional[AuditKind]:
    """The audit named in a task; None stands for all audits."""
    if name in AUDIT_ALIASES:
        return AUDIT_ALIASES[name]
    return AuditKind(name)


class ProblemParser:
    """Parses the line-oriented problem language into a ProblemFile.

    Every statement fits on one line; `#` starts a comment. Polynomials are
    checked against the variables in scope and stored in canonical form.
    """

    field_expression = re.compile(r"^\s*field\s+(?:(?P<rationals>Q)|F\s*(?P<prime>\d+))\s*$")
    base_expression = re.compile(
        rf"^\s*base\s+(?P<name>{NAME})\s*=\s*poly\s*\((?P<variables>[^)]*)\)\s*$"
    )
    algebra_expression = re.compile(
        rf"^\s*algebra\s+(?P<name>{NAME})\s*=\s*(?P<parent>{NAME})\s*"
        r"\[(?P<variables>[^\]]*)\]\s*(?:/\s*\((?P<relations>.*)\))?\s*$"
    )
    localize_expression = re.compile(
        rf"^\s*localize\s+(?P<name>{NAME})\s+at\s+(?P<element>.+?)\s*$"
    )
    module_expression = re.compile(
        rf"^\s*module\s+(?P<name>{NAME})\s+over\s+(?P<algebra>{NAME})\s*:"
        r"\s*gens\s+(?P<gens>\d+)\s*(?P<rest>(?:;.*)?)$"
    )
    relation_expression = re.compile(r"^\s*rel\s*\((?P<entries>.*)\)\s*$")
    task_expression = re.compile(r"^\s*task\s+(?P<body>.+?)\s*$")
    option_expression = re.compile(rf"^(?P<key>{NAME})=(?P<value>[A-Za-z0-9_\-]+)$")

    task_arity = {
        TaskKind.Flat: 1,
        TaskKind.Dim2: 1,
        TaskKind.Tor: 2,
        TaskKind.Torsion: 1,
        TaskKind.Depth: 1,
        TaskKind.Codepth: 1,
        TaskKind.Bench: 1,
        TaskKind.Ass: 1,
    }
    task_options = {
        TaskKind.Flat: ("d", "expect"),
        TaskKind.Dim2: ("expect",),
        TaskKind.Tor: ("method",),
        TaskKind.Torsion: ("expect",),
        TaskKind.Depth: (),
        TaskKind.Codepth: (),
        TaskKind.Audit: ("d",),
        TaskKind.Oracle: ("r", "expect"),
        TaskKind.Bench: ("dmax",),
        TaskKind.Ass: ("d",),
    }
    integer_options = ("d", "r", "dmax")

    def __init__(self) -> None:
        self._problem = ProblemFile()
        self._rings: Dict[str, PolynomialRing] = {}
        self._used: set = set()
        self._line = 0

    def parse(self, text: str) -> ProblemFile:
        self._problem = ProblemFile()
        self._rings = {}
        self._used = set()
        for number, raw_line in enumerate(text.splitlines(), start=1):
            self._line = number
            line = raw_line.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            keyword = line.split(None, 1)[0]
            handler = {
                "field": self._parse_field,
                "base": self._parse_base,
                "algebra": self._parse_algebra,
                "localize": self._parse_localize,
                "module": self._parse_module,
                "task": self._parse_task,
            }.get(keyword)
            if handler is None:
                raise self._error(f"Unknown statement '{keyword}'", line.index(keyword) + 1)
            handler(line)
        return self._problem

    def _error(self, message, column=1) -> ProblemSyntaxError:
        return ProblemSyntaxError(message, self._line, column)

    def _match(self, expression, line, statement):
        match = expression.match(line)
        if match is None:
            raise self._error(f"Malformed {statement} declaration", len(line) - len(line.lstrip()) + 1)
        return match

    def _declare(self, name, column):
        if name in self._problem.names():
            raise ProblemNameError(f"line {self._line}, column {column}: '{name}' is already declared")

    def _resolve_algebra(self, name, column) -> None:
        if name != self._problem.base_name and name not in self._problem.algebras:
            raise ProblemNameError(f"line {self._line}, column {column}: unknown algebra '{name}'")

    def _ring(self, algebra_name) -> PolynomialRing:
        if algebra_name not in self._rings:
            self._rings[algebra_name] = PolynomialRing(
                self._problem.field, self._problem.ambient_variables(algebra_name)
            )
        return self._rings[algebra_name]

    def _polynomial(self, ring, text, offset) -> str:
        try:
            return ring.format(parse_polynomial(ring, text))
        except ExpressionError as e:
            raise self._error(e.message, offset + e.column)

    @staticmethod
    def split_top_level(text: str, offset: int) -> List[Tuple[str, int]]:
        """Split at commas outside parentheses; pieces keep their 0-based offsets."""
        pieces = []
        depth = 0
        start = 0
        for index, char in enumerate(text):
            if char == "(":
                depth += 1
            elif char == ")":
                depth -= 1
            elif char == "," and depth == 0:
                pieces.append((text[start:index], offset + start))
                start = index + 1
        pieces.append((text[start:], offset + start))
        return pieces

    def _names(self, text, offset) -> Tuple[str, ...]:
        names = []
        for piece, start in self.split_top_level(text, offset):
            name = piece.strip()
            if not re.fullmatch(NAME, name):
                raise self._error(f"Invalid variable name '{name}'", start + 1)
            if name in names:
                raise self._error(f"Duplicate variable '{name}'", start + 1)
            names.append(name)
        return tuple(names)

    def _parse_field(self, line):
        match = self._match(self.field_expression, line, "field")
        if self._problem.base_name:
            raise self._error("The field must be declared before the base ring")
        try:
            if match.group("rationals"):
                self._problem.field = CoefficientField.rationals()
            else:
                self._problem.field = CoefficientField.prime_field(int(match.group("prime")))
        except KernelError as e:
            raise self._error(str(e), match.start("prime") + 1)

    def _parse_base(self, line):
        match = self._match(self.base_expression, line, "base")
        if self._problem.base_name:
            raise self._error("Only one base ring can be declared")
        self._declare(match.group("name"), match.start("name") + 1)
        variables = self._names(match.group("variables"), match.start("variables"))
        self._problem.base_name = match.group("name")
        self._problem.base_variables = variables

    def _require_base(self):
        if not self._problem.base_name:
            raise self._error("No base ring declared")

    def _parse_algebra(self, line):
        match = self._match(self.algebra_expression, line, "algebra")
        self._require_base()
        name = match.group("name")
        self._declare(name, match.start("name") + 1)
        parent = match.group("parent")
        self._resolve_algebra(parent, match.start("parent") + 1)
        self._used.add(parent)
        variables: Tuple[str, ...] = ()
        if match.group("variables").strip():
            variables = self._names(match.group("variables"), match.start("variables"))
        clash = set(variables) & set(self._problem.ambient_variables(parent))
        if clash:
            raise self._error(
                f"Variables {sorted(clash)} are already in scope", match.start("variables") + 1
            )
        declaration = AlgebraDeclaration(name, parent, variables, line=self._line)
        self._problem.algebras[name] = declaration
        relations = []
        if match.group("relations") is not None:
            ring = self._ring(name)
            for piece, start in self.split_top_level(match.group("relations"), match.start("relations")):
                relations.append(self._polynomial(ring, piece, start))
        declaration.relations = tuple(relations)

    def _parse_localize(self, line):
        match = self._match(self.localize_expression, line, "localize")
        name = match.group("name")
        if name not in self._problem.algebras:
            raise ProblemNameError(
                f"line {self._line}, column {match.start('name') + 1}: unknown algebra '{name}'"
            )
        if name in self._used:
            raise self._error(f"'{name}' is localized after being used", match.start("name") + 1)
        element = self._polynomial(self._ring(name), match.group("element"), match.start("element"))
        if element == "0":
            raise self._error("Cannot localize at zero", match.start("element") + 1)
        self._problem.algebras[name].localizations.append(element)
        self._rings.pop(name, None)

    def _parse_module(self, line):
        match = self._match(self.module_expression, line, "module")
        self._require_base()
        name = match.group("name")
        self._declare(name, match.start("name") + 1)
        algebra = match.group("algebra")
        self._resolve_algebra(algebra, match.start("algebra") + 1)
        self._used.add(algebra)
        gens = int(match.group("gens"))
        ring = self._ring(algebra)
        relations = []
        rest = match.group("rest")
        offset = match.start("rest")
        for part in rest.split(";")[1:]:
            offset += 1
            relation = self.relation_expression.match(part)
            if relation is None:
                raise self._error("Expected 'rel (...)'", offset + len(part) - len(part.lstrip()) + 1)
            entries = self.split_top_level(relation.group("entries"), offset + relation.start("entries"))
            if len(entries) != gens:
                raise self._error(
                    f"Relation with {len(entries)} entries for {gens} generators", offset + 1
                )
            relations.append(tuple(self._polynomial(ring, text, start) for text, start in entries))
            offset += len(part)
        self._problem.modules[name] = ModuleDeclaration(
            name, algebra, gens, tuple(relations), line=self._line
        )

    def _resolve_module(self, name, column):
        if name not in self._problem.modules:
            raise ProblemNameError(f"line {self._line}, column {column}: unknown module '{name}'")

    def _parse_task(self, line):
        match = self._match(self.task_expression, line, "task")
        body = match.group("body")
        column = match.start("body") + 1
        words = body.split()
        try:
            kind = TaskKind(words[0])
        except ValueError:
            raise self._error(f"Unknown task '{words[0]}'", column)
        arguments = []
        options: Dict[str, str] = {}
        for word in words[1:]:
            word_column = column + body.index(word)
            option = self.option_expression.match(word)
            if option is None:
                if options:
                    raise self._error(f"Argument '{word}' after options", word_column)
                arguments.append(word)
                continue
            key, value = option.group("key"), option.group("value")
            if key not in self.task_options[kind]:
                raise self._error(f"Option '{key}' is not valid for task {kind.value}", word_column)
            if key in self.integer_options and not value.lstrip("-").isdigit():
                raise self._error(f"Option '{key}' needs an integer", word_column)
            options[key] = value
        modules = self._task_modules(kind, arguments, column)
        for module in modules:
            self._resolve_module(module, column + body.index(module))
        self._problem.tasks.append(
            TaskDeclaration(kind, tuple(arguments), options, line=self._line)
        )

    def _task_modules(self, kind, arguments, column) -> List[str]:
        if kind == TaskKind.Audit:
            if len(arguments) not in (2, 3):
                raise self._error("Expected 'audit KIND M [N]'", column)
            try:
                audit_kind(arguments[0])
            except ValueError:
                raise self._error(f"Unknown audit '{arguments[0]}'", column)
            return arguments[1:]
        if kind == TaskKind.Oracle:
            if len(arguments) != 2 or arguments[0] not in ORACLE_NAMES:
                raise self._error("Expected 'oracle smith|fitting M'", column)
            return arguments[1:]
        if len(arguments) != self.task_arity[kind]:
            raise self._error(
                f"Task {kind.value} expects {self.task_arity[kind]} module name(s)", column
            )
        return arguments


def parse_problem(text: str) -> ProblemFile:
    return ProblemParser().parse(text)


def read_problem(path) -> ProblemFile:
    return parse_problem(Path(path).read_text(encoding="utf-8"))
