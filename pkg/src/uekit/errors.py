"""Exception hierarchy shared by all uekit modules."""


class UekitError(Exception):
    """Base class for every error raised by uekit."""


class FormulaSyntaxError(UekitError):
    """Raised when formula text does not match the grammar.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` is the set of token spellings that would have been accepted.
    """

    def __init__(self, message, offset, expected):
        self.offset = offset
        self.expected = frozenset(expected)
        shown = ", ".join(sorted(self.expected)) or "<nothing>"
        super().__init__(f"{message} at byte {offset}; expected one of: {shown}")


class ModelError(UekitError):
    """A model file could not be turned into a valid model."""


class SchemaError(ModelError):
    pass


class UnknownStateError(ModelError):
    pass


class DuplicateStateError(ModelError):
    pass


class KindMismatchError(UekitError):
    """Two arguments must be of the same model kind (or a compatible one)."""


class UnsupportedOperatorError(UekitError):
    """The formula uses an operator that has no clause on this model kind."""


class WidthMismatchError(UekitError):
    """A state set has bits outside the model's state range."""


class SizeCapError(UekitError):
    """An exhaustive procedure was asked to run past its size cap."""


class NoFIPError(UekitError):
    """The family lacks the finite intersection property."""
