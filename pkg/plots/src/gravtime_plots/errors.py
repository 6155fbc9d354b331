class PlotsError(Exception):
    """Base class for renderer failures."""


class MissingInput(PlotsError):
    """An input CSV path does not exist."""


class SchemaMismatch(PlotsError):
    """A CSV does not match the documented gravtime output schema."""
