"""
Value types of the criteria engine: multiplicity profiles, verdicts and blow-up classes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from utils.errors import InputError, PreconditionError


class Position(str, Enum):
    """What is known about the position of the singular points."""

    GENERAL = "general"
    CONTAINED_IN_PLANE = "plane"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, text: Optional[str]) -> "Position":
        if text is None:
            return cls.UNKNOWN
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InputError(f"Unknown position {text!r}; expected general, plane or unknown")


class VerdictKind(str, Enum):
    FACTORIAL = "Factorial"
    NON_FACTORIAL = "NonFactorial"
    CONJECTURALLY_FACTORIAL = "ConjecturallyFactorial"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MultiplicityProfile:
    """Degree d of X in P^n together with the multiplicities of its ordinary singular points."""

    d: int
    mults: Tuple[int, ...] = ()
    position: Position = Position.UNKNOWN
    n: int = 4

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        if self.d < 1:
            raise PreconditionError(f"Degree must be at least 1, got {self.d}")
        if self.n < 2:
            raise PreconditionError(f"Ambient dimension must be at least 2, got {self.n}")
        if any(m < 2 for m in self.mults):
            raise PreconditionError(f"Multiplicities of singular points are at least 2: {list(self.mults)}")
        if self.position is Position.CONTAINED_IN_PLANE and self.n != 4:
            raise PreconditionError("Position 'plane' is only meaningful in P^4")

    @property
    def k(self) -> int:
        return len(self.mults)

    @property
    def uniform(self) -> bool:
        return len(set(self.mults)) <= 1

    @property
    def nodal(self) -> bool:
        return all(m == 2 for m in self.mults)

    def with_position(self, position: Position) -> "MultiplicityProfile":
        return MultiplicityProfile(self.d, self.mults, position, self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "d": self.d, "mults": list(self.mults), "position": self.position.value}


@dataclass(frozen=True)
class CriterionResult:
    """One evaluated criterion; value is None when its hypotheses do not apply."""

    name: str
    hypothesis_text: str
    value: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "hypothesis_text": self.hypothesis_text, "value": self.value}


@dataclass
class Verdict:
    kind: VerdictKind
    reason: Optional[str] = None
    witness: Optional[str] = None
    criteria: List[CriterionResult] = field(default_factory=list)

    @property
    def q_factorial(self) -> Optional[bool]:
        """For complete intersection threefolds with isolated singularities, same as factoriality."""
        if self.kind is VerdictKind.FACTORIAL:
            return True
        if self.kind is VerdictKind.NON_FACTORIAL:
            return False
        return None

    def label(self) -> str:
        detail = self.reason or self.witness
        return f"{self.kind.value}({detail})" if detail else self.kind.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.kind.value,
            "reason": self.reason if self.reason is not None else self.witness,
            "q_factorial": self.q_factorial,
            "criteria": [c.to_dict() for c in self.criteria],
        }


@dataclass(frozen=True)
class BlowupClass:
    """The divisor class aH - sum b_i E_i on the blow-up of P^n at k points."""

    n: int
    a: int
    bs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bs", tuple(self.bs))
        if self.n < 1:
            raise PreconditionError(f"Ambient dimension must be positive, got {self.n}")
        if self.a < 0 or any(b < 0 for b in self.bs):
            raise PreconditionError(f"Class coefficients must be non-negative: a={self.a}, bs={list(self.bs)}")

    @property
    def k(self) -> int:
        return len(self.bs)

    @property
    def uniform(self) -> bool:
        return len(set(self.bs)) <= 1

    def __str__(self) -> str:
        if not self.bs:
            return f"{self.a}H"
        return f"{self.a}H - " + " - ".join(f"{b}E{i + 1}" for i, b in enumerate(self.bs))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "a": self.a, "bs": list(self.bs)}
