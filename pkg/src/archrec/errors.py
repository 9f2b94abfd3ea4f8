"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ArchrecError(Exception):
    """Base class for all archrec errors."""


class CatalogFormatError(ArchrecError):
    """Pattern catalog file could not be parsed."""


class CatalogValidationError(ArchrecError):
    """Pattern catalog parsed but violates a record invariant."""


class CorpusError(ArchrecError):
    """Q&A dump could not be read or yields no usable posts."""


class IndexError_(ArchrecError):
    """Latent index cannot be built or loaded."""


class SpecFormatError(ArchrecError):
    """Requirements document has the wrong shape (not a validation issue)."""


class SpecValidationError(ArchrecError):
    """Requirements spec violates one or more input limits."""

    def __init__(self, issues):
        self.issues = list(issues)
        lines = "; ".join(f"{i.field}: {i.message}" for i in self.issues)
        super().__init__(f"invalid requirements spec: {lines}")


class VocabularyError(ArchrecError):
    """An NFR name is not part of the conflict-matrix vocabulary."""


class TaxonomyError(ArchrecError):
    """A software-type path does not resolve in the loaded taxonomy."""


class NfrResolutionError(ArchrecError):
    """Base for conflict-resolution failures."""


class ResolutionRequiredError(NfrResolutionError):
    """Conflicting NFRs need user-assigned priorities before scoring."""

    def __init__(self, pairs, message=None):
        self.pairs = [tuple(p) for p in pairs]
        listed = ", ".join(f"({a}, {b})" for a, b in self.pairs)
        super().__init__(message or f"conflicting NFRs need priorities: {listed}")


class PriorityTieError(NfrResolutionError):
    """Two conflicting NFRs were given the same priority."""

    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(
            f"NFRs {self.pair[0]!r} and {self.pair[1]!r} conflict but share a priority; "
            "assign distinct priorities"
        )


class ConfigError(ArchrecError):
    """Pipeline configuration is missing or inconsistent."""
