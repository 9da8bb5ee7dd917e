"""Exception hierarchy shared by the library and the CLI exit codes."""


class ProminenceError(Exception):
    """Base class for all package errors."""


class ValidationError(ProminenceError, ValueError):
    """Input data breaks a documented invariant (CLI exit code 2)."""


class CorpusError(ValidationError):
    """Malformed or inconsistent corpus file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(ProminenceError):
    """An auxiliary resource is missing or unusable (CLI exit code 3)."""


class MissingVectorError(ResourceError, KeyError):
    """No stored sentence embedding for a (document id, sentence index) key."""

    def __init__(self, doc_id, index):
        self.doc_id = doc_id
        self.index = index
        super().__init__(f"no sentence embedding for ({doc_id!r}, {index})")

    def __str__(self):
        return self.args[0]
