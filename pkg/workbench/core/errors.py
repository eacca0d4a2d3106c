class WorkbenchError(Exception):
    """Base class for every error the workbench raises on purpose."""


class InvalidArgument(WorkbenchError, ValueError):
    pass


class ResourceLimit(WorkbenchError):
    """An exhaustive search was asked to go beyond its configured bound."""


class ProtocolAbort(WorkbenchError):
    """A party could not continue a protocol run (e.g. an undefined σ application)."""


class TranscriptParseError(WorkbenchError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
