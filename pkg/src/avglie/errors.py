"""Exception types and the structured verdict/witness machinery.

Every validator returns a Verdict; constructors of validated objects run
the validator and raise the matching exception on failure, carrying the
verdict so callers (and the CLI) can print clause and witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class AvgLieError(Exception):
    """Base of all library errors."""


class ParseError(AvgLieError):
    """Malformed scalar, field tag or document."""


class DimensionMismatch(AvgLieError):
    """Operands with incompatible shapes or fields."""


class FieldTooLarge(AvgLieError):
    """An exhaustive enumeration would exceed the desk-scale budget."""


@dataclass(frozen=True)
class Witness:
    """Basis indices plus both exactly evaluated sides of a failed identity."""

    indices: tuple
    lhs: tuple
    rhs: tuple

    def as_strings(self, fld):
        return {
            "indices": list(self.indices),
            "lhs": [fld.format(v) for v in self.lhs],
            "rhs": [fld.format(v) for v in self.rhs],
        }


@dataclass
class Verdict:
    """Outcome of a validator: pass, or first failure with clause + witness."""

    ok: bool
    clause: str | None = None
    witness: Witness | None = None
    notes: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @staticmethod
    def passed(**notes):
        return Verdict(True, notes=dict(notes))

    @staticmethod
    def failed(clause, indices, lhs, rhs, **notes):
        lhs = tuple(lhs) if isinstance(lhs, (tuple, list)) else (lhs,)
        rhs = tuple(rhs) if isinstance(rhs, (tuple, list)) else (rhs,)
        return Verdict(False, clause, Witness(tuple(indices), lhs, rhs), dict(notes))


class ValidationError(AvgLieError):
    """A validator failed; carries the verdict."""

    def __init__(self, verdict: Verdict, message: str | None = None):
        self.verdict = verdict
        super().__init__(message or f"validation failed at clause {verdict.clause}")


class AntisymmetryViolation(ValidationError):
    pass


class JacobiViolation(ValidationError):
    pass


class LeibnizViolation(ValidationError):
    pass


class NotAveraging(ValidationError):
    pass


class NotARepresentation(ValidationError):
    pass


class NotAnEmbeddingTensor(ValidationError):
    pass


class InvalidBase(ValidationError):
    pass


class NotSkeletal(ValidationError):
    pass


class NotStrict(ValidationError):
    pass


class NotACocycle(ValidationError):
    pass


class NotACrossedModule(ValidationError):
    pass


class NotASection(ValidationError):
    pass


class ValueOutsideKernel(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class NotAutomorphisms(ValidationError):
    pass


class NotAWitness(ValidationError):
    pass


class NotRestrictable(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class NotSplit(ValidationError):
    pass


class BrokenExtension(ValidationError):
    pass


class InternalError(AvgLieError):
    """A theorem-backed postcondition failed: signals a library bug."""
