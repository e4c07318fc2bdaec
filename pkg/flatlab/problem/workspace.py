"""
Builds algebras and modules from a parsed problem file under a chosen
monomial order.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

from flatlab.kernel.expression import parse_polynomial
from flatlab.kernel.monomial_order import MonomialOrder
from flatlab.modules.presented_module import PresentedModule
from flatlab.modules.tower import AffineAlgebra, BaseTower, localize_by_element
from flatlab.problem.problem_file import ProblemError, ProblemFile, ProblemNameError


@dataclass
class Workspace:
    problem: ProblemFile
    order: MonomialOrder
    tower: BaseTower
    algebras: Dict[str, AffineAlgebra] = field(default_factory=dict)
    modules: Dict[str, PresentedModule] = field(default_factory=dict)

    def module(self, name) -> PresentedModule:
        try:
            return self.modules[name]
        except KeyError:
            raise ProblemNameError(f"Unknown module '{name}'")


def build_workspace(problem: ProblemFile, order: Optional[MonomialOrder] = None) -> Workspace:
    if not problem.base_name:
        raise ProblemError("The problem declares no base ring")
    order = order or MonomialOrder()
    tower = BaseTower(problem.field, problem.base_variables, order)
    workspace = Workspace(problem, order, tower)
    workspace.algebras[problem.base_name] = AffineAlgebra.base(tower, problem.base_name)
    for declaration in problem.algebras.values():
        parent = workspace.algebras[declaration.parent]
        extras = parent.extra_variables + declaration.variables
        ambient = AffineAlgebra(tower, extras).ambient
        relations = [ambient.map_poly(r, parent.ambient) for r in parent.relations]
        relations += [parse_polynomial(ambient, text) for text in declaration.relations]
        algebra = AffineAlgebra.create(tower, extras, relations, declaration.name)
        for text in declaration.localizations:
            algebra = localize_by_element(algebra, parse_polynomial(algebra.ambient, text))
        workspace.algebras[declaration.name] = algebra
    for declaration in problem.modules.values():
        algebra = workspace.algebras[declaration.algebra]
        ring = algebra.ambient
        relations = [
            tuple(parse_polynomial(ring, text) for text in relation)
            for relation in declaration.relations
        ]
        workspace.modules[declaration.name] = PresentedModule(
            algebra, declaration.gens, relations, declaration.name
        )
    return workspace
