"""Exception types raised across the package."""


class IedError(Exception):
    """Base class for every error raised by iedcolor."""


class InputError(IedError):
    """Malformed input file; carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidHypergraph(IedError):
    pass


class NotUniform(IedError):
    def __init__(self, edge_index, size):
        self.edge_index = edge_index
        self.size = size
        super().__init__(f"edge {edge_index} has {size} vertices; hypergraph is not uniform")


class IncompleteColoring(IedError):
    pass


class ArityMismatch(IedError):
    pass


class PiNotClosed(IedError):
    pass


class ListTooShort(IedError):
    def __init__(self, vertex, needed):
        self.vertex = vertex
        super().__init__(f"list of vertex {vertex} has fewer than {needed} colors")


class DrawExhausted(IedError):
    pass


class InconsistentLog(IedError):
    pass


class OutOfRange(IedError):
    pass


class NotRegular(IedError):
    pass


class NotGeneralPosition(IedError):
    pass


class NotConfiguration(IedError):
    pass


class NotBipartite(IedError):
    pass


class NotNice(IedError):
    pass


class TooLarge(IedError):
    pass


class SearchSpaceTooLarge(TooLarge):
    pass


class BadClauseSize(IedError):
    pass


class LabelingInvalid(IedError):
    pass


class NotDistinguishing(LabelingInvalid):
    pass
