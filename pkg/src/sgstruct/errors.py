"""Exception types raised across the package."""


class SignedGraphError(ValueError):
    """Invalid signed-graph input (duplicate edge, self-loop, unknown vertex, ...)."""


class NotPositiveSemidefiniteError(ValueError):
    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class NoRepresentationError(ValueError):
    """The Hoffman graph has no representation of the requested norm."""


class PatternWitnessError(ValueError):
    """A forbidden switching pattern was found where the input had to avoid it.

    ``witness`` holds the offending vertex set, ``pattern`` a short name.
    """

    def __init__(self, message, witness=(), pattern=None):
        super().__init__(message)
        self.witness = tuple(sorted(witness))
        self.pattern = pattern


class LemmaViolation(RuntimeError):
    """Counts contradict a structural lemma; the host did not meet its hypotheses."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = dict(counts or {})


class BelowThresholdWarning(UserWarning):
    """Parameters are below the range where the structural lemmas are guaranteed."""
