"""Exception types shared across the package."""


class CircleAlgError(Exception):
    """Base class for all errors raised by circlealg."""


class MissingGeneratorValue(CircleAlgError):
    """A formal generator has no assigned numeric value."""


class InvalidBase(CircleAlgError):
    """Riesz product base too small for dissociate frequencies."""


class NotCheckable(CircleAlgError):
    """Support statement undefined for this measure."""


class EmptyDiscretePart(CircleAlgError):
    """Operation requires at least one atom."""


class NonTorsionAtom(CircleAlgError):
    """Operation requires all atoms at finite-order angles."""


class NonDiscreteMeasure(CircleAlgError):
    """Operation requires a purely discrete measure."""


class GroupTooLarge(CircleAlgError):
    """Finite group exceeds the configured enumeration bound."""


class DomainViolation(CircleAlgError):
    """Functional-calculus callback undefined at a character value."""


class DegenerateEqualAngles(CircleAlgError):
    """Annihilator construction requires two distinct angles."""


class TargetWeightZero(CircleAlgError):
    """Isolation target atom has zero weight."""


class SerializationError(CircleAlgError):
    """Malformed measure/report text or JSON."""
