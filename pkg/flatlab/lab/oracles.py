"""
Independent flatness oracles.

The Smith oracle decides flatness of modules presented over k[t] by the
invariant factors of the presentation matrix. The Fitting oracle handles
modules that are finite over R: it rewrites M as an R-module and looks for a
rank r with Fitt_(r-1)(M) = 0 and Fitt_r(M) = (1).
"""

import itertools
import logging
import time
from typing import List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from flatlab.kernel.groebner import GroebnerEngine, collect_stats
from flatlab.kernel.monomial_order import ModuleOrder, ModuleOrderKind, MonomialOrder
from flatlab.kernel.operations import kernel_of_map
from flatlab.kernel.submodule import Ideal, Submodule
from flatlab.lab.certificate import (
    FlatnessCertificate,
    Method,
    OracleInapplicableError,
    Verdict,
    Witness,
)
from flatlab.modules.presented_module import PresentedModule

logger = logging.getLogger(__name__)


def smith_invariant_factors(rows: Sequence[Sequence], ring) -> List:
    """Monic nonzero invariant factors of a matrix over the univariate ring k[t].

    Row and column operations with Euclidean division bring the smallest
    degree entry to the pivot until it divides the rest of its block.
    """
    matrix = [list(row) for row in rows]
    row_count = len(matrix)
    column_count = len(matrix[0]) if matrix else 0
    factors = []
    for k in range(min(row_count, column_count)):
        pivot = _smallest_entry(matrix, k, ring)
        if pivot is None:
            break
        i, j = pivot
        matrix[k], matrix[i] = matrix[i], matrix[k]
        for row in matrix:
            row[k], row[j] = row[j], row[k]
        while True:
            if _clear_column(matrix, k) or _clear_row(matrix, k):
                continue
            offending = _non_divisible_row(matrix, k)
            if offending is None:
                break
            matrix[k] = [a + b for a, b in zip(matrix[k], matrix[offending])]
        factors.append(matrix[k][k].monic())
    return factors


def _smallest_entry(matrix, k, ring) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(k, len(matrix)):
        for j in range(k, len(matrix[i])):
            entry = matrix[i][j]
            if entry and (best is None or ring.degree(entry) < best[0]):
                best = (ring.degree(entry), i, j)
    return None if best is None else (best[1], best[2])


def _clear_column(matrix, k) -> bool:
    """Eliminate below the pivot; True if a smaller remainder became the pivot."""
    swapped = False
    for i in range(k + 1, len(matrix)):
        if not matrix[i][k]:
            continue
        quotient, _ = matrix[i][k].div(matrix[k][k])
        matrix[i] = [a - quotient * b for a, b in zip(matrix[i], matrix[k])]
        if matrix[i][k]:
            matrix[k], matrix[i] = matrix[i], matrix[k]
            swapped = True
    return swapped


def _clear_row(matrix, k) -> bool:
    swapped = False
    for j in range(k + 1, len(matrix[k])):
        if not matrix[k][j]:
            continue
        quotient, _ = matrix[k][j].div(matrix[k][k])
        for row in matrix:
            row[j] = row[j] - quotient * row[k]
        if matrix[k][j]:
            for row in matrix:
                row[k], row[j] = row[j], row[k]
            swapped = True
    return swapped


def _non_divisible_row(matrix, k) -> Optional[int]:
    pivot = matrix[k][k]
    for i in range(k + 1, len(matrix)):
        for j in range(k + 1, len(matrix[i])):
            if matrix[i][j] and matrix[i][j].rem(pivot):
                return i
    return None


def _certificate(module, method, verdict, details, stats, start, trace) -> FlatnessCertificate:
    ring = module.tower.ring
    return FlatnessCertificate(
        verdict=verdict,
        method=method,
        d=1,
        base_field=ring.field.name,
        base_variables=ring.variables,
        witness=Witness(),
        stats=stats,
        wall_ms=int(round((time.perf_counter() - start) * 1000)),
        module=module.name,
        details=details,
        trace=trace,
    )


def smith_oracle(module: PresentedModule) -> FlatnessCertificate:
    """OracleOnly verdict for a module presented over R = k[t]."""
    if module.tower.dim != 1:
        raise OracleInapplicableError("The Smith oracle needs a univariate base ring")
    if not module.algebra.is_base:
        raise OracleInapplicableError("The Smith oracle needs a module presented over R")
    ring = module.ring
    start = time.perf_counter()
    with collect_stats() as stats:
        rows = [[column[i] for column in module.relations] for i in range(module.rank)]
        factors = smith_invariant_factors(rows, ring) if module.relations else []
    torsion_factors = [f for f in factors if not f.is_ground]
    free_rank = module.rank - len(factors)
    verdict = Verdict.OracleOnlyNotFlat if torsion_factors else Verdict.OracleOnlyFlat
    details = {
        "invariant_factors": [ring.format(f) for f in factors],
        "free_rank": free_rank,
    }
    summands = [f"R^{free_rank}"] + [f"R/({ring.format(f)})" for f in torsion_factors]
    trace = ["M = " + " + ".join(summands)]
    return _certificate(module, Method.Smith, verdict, details, stats, start, trace)


def _fibre_staircase(module: PresentedModule) -> List[Tuple[int, Tuple[int, ...]]]:
    """R-module generators (position, y-exponents) of a module-finite M.

    Raises OracleInapplicableError if some position lacks a pure power of
    every extra variable among the leading terms.
    """
    ring = module.ring
    base_dim = module.tower.dim
    fibre_dim = ring.nvars - base_dim
    order = ModuleOrder(
        MonomialOrder.trailing_elimination(base_dim, ring.order.inner_kind),
        ModuleOrderKind.PositionOverTerm
    )
    engine = GroebnerEngine(ring, module.rank, order)
    basis = module.submodule().with_order(order).groebner_basis()
    pure_leads = [[] for _ in range(module.rank)]
    for vector in basis:
        lead = engine.leading_term(vector)
        if not any(lead.monomial[:base_dim]):
            pure_leads[lead.position].append(lead.monomial[base_dim:])
    generators = []
    for position in range(module.rank):
        leads = pure_leads[position]
        if any(not any(m) for m in leads):
            continue
        bounds = []
        for index in range(fibre_dim):
            powers = [
                m[index] for m in leads
                if all(e == 0 for k, e in enumerate(m) if k != index)
            ]
            if not powers:
                raise OracleInapplicableError(
                    f"Module is not finite over R: no pure power of"
                    f" {ring.variables[base_dim + index]} at generator {position + 1}"
                )
            bounds.append(min(powers))
        for exponents in itertools.product(*(range(b) for b in bounds)):
            if not any(all(a >= b for a, b in zip(exponents, m)) for m in leads):
                generators.append((position, exponents))
    return generators


def base_presentation(module: PresentedModule) -> Tuple[int, List[Tuple]]:
    """Present a module-finite M over R: (generator count, relation columns over R)."""
    ring = module.ring
    base_dim = module.tower.dim
    generators = _fibre_staircase(module)
    if not generators:
        return 0, []
    columns = []
    for position, exponents in generators:
        vector = [ring.zero] * module.rank
        vector[position] = ring.term((0,) * base_dim + tuple(exponents), ring.field.domain.one)
        columns.append(tuple(vector))
    kernel = kernel_of_map(ring, columns, module.rank, module.lifted_relations())
    order = ModuleOrder(
        MonomialOrder.trailing_elimination(base_dim, ring.order.inner_kind),
        ModuleOrderKind.TermOverPosition
    )
    basis = Submodule(ring, len(columns), kernel.generators, order).groebner_basis()
    base_ring = module.tower.ring
    relations = []
    for vector in basis:
        if any(any(m[base_dim:]) for p in vector for m in p.keys()):
            continue
        relations.append(tuple(base_ring.map_poly(p, ring) for p in vector))
    return len(columns), relations


def fitting_ideal(rank: int, relations: Sequence[Tuple], index: int, base_ring) -> Ideal:
    """Fitt_index of coker of the rank x len(relations) matrix with the given columns."""
    size = rank - index
    if size <= 0:
        return Ideal(base_ring, [base_ring.one])
    if size > len(relations):
        return Ideal(base_ring, [])
    domain = base_ring.sympy_ring.to_domain()
    minors = []
    for rows in itertools.combinations(range(rank), size):
        for columns in itertools.combinations(range(len(relations)), size):
            entries = [[relations[c][r] for c in columns] for r in rows]
            minor = DomainMatrix(entries, (size, size), domain).det()
            if minor:
                minors.append(minor)
    return Ideal(base_ring, minors)


def fitting_oracle(module: PresentedModule, expected_rank: Optional[int] = None) -> FlatnessCertificate:
    """OracleOnly verdict for a module finite over R via Fitting ideals."""
    start = time.perf_counter()
    base_ring = module.tower.ring
    with collect_stats() as stats:
        rank, relations = base_presentation(module)
        trace = [f"R-presentation: {rank} generators, {len(relations)} relations"]
        candidates = range(rank + 1) if expected_rank is None else [expected_rank]
        found = None
        for r in candidates:
            if r < 0:
                continue
            if r > 0 and not fitting_ideal(rank, relations, r - 1, base_ring).is_zero():
                continue
            if fitting_ideal(rank, relations, r, base_ring).is_unit():
                found = r
                break
    verdict = Verdict.OracleOnlyFlat if found is not None else Verdict.OracleOnlyNotFlat
    details = {"generators": rank, "relations": len(relations)}
    if found is not None:
        details["rank"] = found
        trace.append(f"Fitt_{found - 1} = 0 and Fitt_{found} = (1)")
    else:
        trace.append("no rank with Fitt_(r-1) = 0 and Fitt_r = (1)")
    logger.debug("Fitting oracle for %s: %s", module.name, verdict.value)
    return _certificate(module, Method.Fitting, verdict, details, stats, start, trace)
