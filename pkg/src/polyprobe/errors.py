"""Exception types shared across the toolkit."""


class PolyprobeError(Exception):
    """Base class for all toolkit errors."""


class CorpusFormatError(PolyprobeError):
    """A corpus line could not be parsed; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class PoolInfeasibleError(PolyprobeError):
    """The requested pool cannot be built from the available instances."""


class CapacityError(PolyprobeError):
    """A dataset request exceeds the number of eligible lemmas."""


class BalanceInfeasibleError(PolyprobeError):
    """Balancing would leave every band empty."""


class ArchiveError(PolyprobeError):
    """Base class for embedding-archive errors."""


class ArchiveLookupError(ArchiveError, KeyError):
    """No archive entry for the requested (lemma, pos, setting)."""


class ArchiveCorruptError(ArchiveError):
    """Stored bytes do not match the recorded checksum."""


class LayerRangeError(ArchiveError, IndexError):
    """Requested layer outside the archive's layer range."""


class DomainError(PolyprobeError, ValueError):
    """An argument violates an operation's numeric precondition."""
