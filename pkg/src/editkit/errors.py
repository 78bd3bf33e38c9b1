"""Exception types shared across the toolkit."""


class EditkitError(Exception):
    """Base class for all toolkit errors."""


# --- edit-op errors ---------------------------------------------------------

class InapplicableTransform(EditkitError):
    """A transform tag cannot fire on the given token."""


class PlanShapeMismatch(EditkitError):
    """An edit plan does not line up with the source it is applied to."""


class InsertionTooLong(EditkitError):
    """An insertion slot holds more tokens than the mask budget allows."""


# --- ingestion errors -------------------------------------------------------

class MalformedDump(EditkitError):
    """The revision dump could not be parsed."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


# --- clustering errors ------------------------------------------------------

class DimMismatch(EditkitError):
    """Embedding rows disagree about dimensionality."""


class NonFiniteValue(EditkitError):
    """An embedding row contains NaN or Inf."""

    def __init__(self, row: int):
        super().__init__(f"non-finite value in embedding row {row}")
        self.row = row


class NoConvergence(EditkitError):
    """The SVD eigensolver did not converge."""

    def __init__(self, iterations: int):
        super().__init__(f"SVD did not converge after {iterations} iterations")
        self.iterations = iterations


class DegenerateData(EditkitError):
    """Too few (distinct) points to form the requested clusters."""


class UnlabeledIntent(EditkitError):
    """An intent's seed prompts scattered with no majority cluster."""

    def __init__(self, intent: str):
        super().__init__(f"no majority cluster for intent {intent!r}")
        self.intent = intent


# --- model errors -----------------------------------------------------------

class ShapeMismatch(EditkitError):
    """Batch tensors do not match the encoder configuration."""


class NonFiniteGradient(EditkitError):
    """A gradient tensor contains NaN or Inf."""


class UnknownIntent(EditkitError):
    """An intent id or name the model was not trained for."""


# --- metrics / CLI errors ---------------------------------------------------

class EmptyReferenceSet(EditkitError):
    """An evaluation instance has no references."""


class ConfigError(EditkitError):
    """A run configuration is malformed or contains unknown keys."""
