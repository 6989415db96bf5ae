"""Exception hierarchy shared across the package."""


class BpforgeError(Exception):
    """Base class for all package-specific errors."""


class InvalidImage(BpforgeError):
    """Raster input is empty or malformed."""


class DegenerateGeometry(BpforgeError):
    """A geometric measure is undefined for this shape (e.g. zero perimeter)."""


class InvalidInput(BpforgeError):
    """An operation received an argument outside its contract."""


class BindingError(BpforgeError):
    """A parameter binding is missing, out of range, or of the wrong kind."""


class EvalError(BpforgeError):
    """A program failed at runtime; carries the offending AST position."""

    def __init__(self, message, pos=None, cause=None):
        super().__init__(message)
        self.pos = pos
        self.cause = cause


class RepairFailed(BpforgeError):
    """The oracle's repair response contained no usable program."""


class NoHypotheses(BpforgeError):
    """The oracle produced no extractable rule hypotheses."""


class AmbiguousLabel(BpforgeError):
    """A transduction response contained neither label token."""


class OracleUnavailable(BpforgeError):
    """The live oracle endpoint failed after retries."""


class MissingFixture(BpforgeError):
    """Replay cache has no response recorded for this request hash."""

    def __init__(self, request_hash):
        super().__init__(f"no recorded response for request {request_hash}")
        self.request_hash = request_hash


class FoldAborted(BpforgeError):
    """A verification fold could not be completed because the oracle failed."""


class ManifestError(BpforgeError):
    """A dataset directory does not satisfy the manifest contract."""


class CorpusParseError(BpforgeError):
    """One or more retrieval-corpus programs failed to parse or validate."""

    def __init__(self, failures):
        lines = "; ".join(f"{path}: {msg}" for path, msg in failures)
        super().__init__(f"corpus rejected: {lines}")
        self.failures = failures
