"""
Flatness certificates and their JSON form.

A NotFlat certificate carries a torsion witness: an element m of T^d M and a
nonzero base polynomial u with m not in the relation module and u*m in it.
Both facts are re-checked by two normal form computations.
"""

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from flatlab import FlatlabError
from flatlab.kernel.expression import ExpressionError, parse_polynomial
from flatlab.kernel.groebner import GroebnerStats


class LabError(FlatlabError):
    pass


class CriterionPreconditionError(LabError):
    pass


class OracleInapplicableError(LabError):
    pass


class CertificateError(LabError):
    pass


class Verdict(str, enum.Enum):
    Flat = "Flat"
    NotFlat = "NotFlat"
    OracleOnlyFlat = "OracleOnly-Flat"
    OracleOnlyNotFlat = "OracleOnly-NotFlat"

    @property
    def is_flat(self):
        return self in (Verdict.Flat, Verdict.OracleOnlyFlat)


class Method(str, enum.Enum):
    MainCriterion = "main-criterion"
    Dim2 = "dim2"
    Smith = "smith"
    Fitting = "fitting"


@dataclass
class Witness:
    """Either a torsion witness (element, annihilator) or a vanishing report (h)."""

    element: Optional[List[str]] = None
    annihilator: Optional[str] = None
    h: Optional[str] = None

    def dict(self):
        result: Dict[str, Any] = {}
        if self.element is not None:
            result["element"] = list(self.element)
        if self.annihilator is not None:
            result["annihilator"] = self.annihilator
        if self.h is not None:
            result["h"] = self.h
        return result


@dataclass
class FlatnessCertificate:
    verdict: Verdict
    method: Method
    d: int
    base_field: str
    base_variables: Tuple[str, ...]
    witness: Witness = field(default_factory=Witness)
    stats: GroebnerStats = field(default_factory=GroebnerStats)
    wall_ms: int = 0
    module: str = ""
    details: Dict[str, Any] = field(default_factory=dict)
    trace: List[str] = field(default_factory=list)

    def dict(self):
        result: Dict[str, Any] = {
            "verdict": self.verdict.value,
            "method": self.method.value,
            "d": self.d,
            "base": {"field": self.base_field, "vars": list(self.base_variables)},
            "witness": self.witness.dict(),
            "stats": {
                "gb_pairs": self.stats.pairs,
                "max_poly_terms": self.stats.max_terms,
                "wall_ms": self.wall_ms,
            },
        }
        if self.module:
            result["module"] = self.module
        if self.details:
            result["details"] = self.details
        if self.trace:
            result["trace"] = list(self.trace)
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FlatnessCertificate":
        try:
            witness = data.get("witness", {})
            stats = data.get("stats", {})
            return cls(
                verdict=Verdict(data["verdict"]),
                method=Method(data["method"]),
                d=int(data["d"]),
                base_field=data["base"]["field"],
                base_variables=tuple(data["base"]["vars"]),
                witness=Witness(
                    witness.get("element"), witness.get("annihilator"), witness.get("h")
                ),
                stats=GroebnerStats(
                    pairs=stats.get("gb_pairs", 0), max_terms=stats.get("max_poly_terms", 0)
                ),
                wall_ms=stats.get("wall_ms", 0),
                module=data.get("module", ""),
                details=data.get("details", {}),
                trace=data.get("trace", []),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CertificateError(f"Malformed certificate: {e}")


class CertificateEncoder(json.JSONEncoder):
    def default(self, o: Any) -> Any:
        if hasattr(o, "dict"):
            return o.dict()
        if isinstance(o, enum.Enum):
            return o.value
        return super().default(o)


def dumps(obj) -> str:
    return json.dumps(obj, cls=CertificateEncoder, indent=2)


def check_certificate(certificate: FlatnessCertificate, power_module) -> bool:
    """Re-validate a NotFlat witness against T^d M.

    `power_module` is the presented module T^d M the witness lives in.
    Returns True if the element is nonzero in T^d M and the annihilator
    kills it; raises CertificateError if there is nothing to check.
    """
    if certificate.verdict != Verdict.NotFlat:
        raise CertificateError(f"A {certificate.verdict.value} certificate has no witness")
    witness = certificate.witness
    if witness.element is None or witness.annihilator is None:
        raise CertificateError("NotFlat certificate without a torsion witness")
    ring = power_module.ring
    if len(witness.element) != power_module.rank:
        raise CertificateError(
            f"Witness of length {len(witness.element)} for {power_module.rank} generators"
        )
    try:
        element = tuple(parse_polynomial(ring, text) for text in witness.element)
        annihilator = parse_polynomial(ring, witness.annihilator)
    except ExpressionError as e:
        raise CertificateError(f"Unreadable witness: {e}")
    if set(ring.used_variables(annihilator)) - set(certificate.base_variables):
        raise CertificateError("The annihilator is not a base polynomial")
    if not annihilator:
        return False
    nonzero = any(power_module.normal_form(element))
    killed = not any(power_module.normal_form(tuple(annihilator * p for p in element)))
    return nonzero and killed
