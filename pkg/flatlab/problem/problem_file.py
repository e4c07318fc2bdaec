"""
The abstract content of a problem file and its canonical text form.

Polynomials are stored as canonical text over the declared variables, so a
problem file can be rebuilt under any monomial order and printed back in a
form that parses to the same problem.
"""

import enum
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

from flatlab import FlatlabError
from flatlab.kernel.field import CoefficientField
from flatlab.modules.tower import fresh_name


class ProblemError(FlatlabError):
    pass


class ProblemSyntaxError(ProblemError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ProblemNameError(ProblemError):
    pass


class TaskError(ProblemError):
    pass


class TaskKind(str, enum.Enum):
    Flat = "flat"
    Dim2 = "dim2"
    Tor = "tor"
    Torsion = "torsion"
    Depth = "depth"
    Codepth = "codepth"
    Audit = "audit"
    Oracle = "oracle"
    Bench = "bench"
    Ass = "ass"


@dataclass
class AlgebraDeclaration:
    name: str
    parent: str
    variables: Tuple[str, ...]
    relations: Tuple[str, ...] = ()
    localizations: List[str] = dataclass_field(default_factory=list)
    line: int = dataclass_field(default=0, compare=False)

    def lines(self) -> List[str]:
        text = f"algebra {self.name} = {self.parent}[{', '.join(self.variables)}]"
        if self.relations:
            text += " / (" + ", ".join(self.relations) + ")"
        return [text] + [f"localize {self.name} at {element}" for element in self.localizations]


@dataclass
class ModuleDeclaration:
    name: str
    algebra: str
    gens: int
    relations: Tuple[Tuple[str, ...], ...] = ()
    line: int = dataclass_field(default=0, compare=False)

    def lines(self) -> List[str]:
        text = f"module {self.name} over {self.algebra} : gens {self.gens}"
        for relation in self.relations:
            text += " ; rel (" + ", ".join(relation) + ")"
        return [text]


@dataclass
class TaskDeclaration:
    kind: TaskKind
    arguments: Tuple[str, ...] = ()
    options: Dict[str, str] = dataclass_field(default_factory=dict)
    line: int = dataclass_field(default=0, compare=False)

    @property
    def text(self) -> str:
        parts = [self.kind.value, *self.arguments]
        parts += [f"{key}={value}" for key, value in self.options.items()]
        return " ".join(parts)

    def int_option(self, key, default: Optional[int] = None) -> Optional[int]:
        if key not in self.options:
            return default
        return int(self.options[key])


@dataclass
class ProblemFile:
    field: CoefficientField = dataclass_field(default_factory=CoefficientField.rationals)
    base_name: str = ""
    base_variables: Tuple[str, ...] = ()
    algebras: Dict[str, AlgebraDeclaration] = dataclass_field(default_factory=dict)
    modules: Dict[str, ModuleDeclaration] = dataclass_field(default_factory=dict)
    tasks: List[TaskDeclaration] = dataclass_field(default_factory=list)

    def names(self) -> List[str]:
        names = [self.base_name] if self.base_name else []
        return names + list(self.algebras) + list(self.modules)

    def ambient_variables(self, algebra_name: str) -> Tuple[str, ...]:
        """Variables of the ambient ring of the named algebra or of the base."""
        if algebra_name == self.base_name:
            return self.base_variables
        declaration = self.algebras[algebra_name]
        variables = self.ambient_variables(declaration.parent) + declaration.variables
        for _ in declaration.localizations:
            variables += (fresh_name("z", variables),)
        return variables

    def text(self) -> str:
        if self.field.characteristic:
            lines = [f"field F {self.field.characteristic}"]
        else:
            lines = ["field Q"]
        if self.base_name:
            lines.append(f"base {self.base_name} = poly({', '.join(self.base_variables)})")
        for algebra in self.algebras.values():
            lines.extend(algebra.lines())
        for module in self.modules.values():
            lines.extend(module.lines())
        lines.extend(f"task {task.text}" for task in self.tasks)
        return "\n".join(lines) + "\n"
