"""Error types raised across spreadlab.

Each error also derives from the builtin exception a caller would catch
for the same mistake, so ``except ValueError`` keeps working.
"""


class SpreadlabError(Exception):
    """Base class for all spreadlab errors."""


class EdgeListParseError(SpreadlabError, ValueError):
    def __init__(self, line_number: int, line: str, reason: str = "expected two whitespace-separated node labels"):
        self.line_number = line_number
        self.line = line
        super().__init__(f"line {line_number}: {reason}, got {line!r}")


class InvalidNodeError(SpreadlabError, IndexError):
    def __init__(self, node, node_count: int):
        self.node = node
        self.node_count = node_count
        super().__init__(f"node {node!r} is not in the graph (node_count={node_count})")


class DomainError(SpreadlabError, ValueError):
    """A numeric parameter lies outside its admissible range."""


class EnumerationBoundError(DomainError):
    """The placement enumeration bound cuts off a feasible region."""


class ConfigurationError(SpreadlabError, ValueError):
    """An experiment configuration is inconsistent or incomplete."""


class EmptySelectionError(SpreadlabError, RuntimeError):
    """A selector returned no spreaders where at least one is required."""


class DuplicateSeedError(SpreadlabError, ValueError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} is already a spreader")
