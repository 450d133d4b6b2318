"""Exception hierarchy for the vision swarm platform"""


class SwarmError(Exception):
    """Base class - every error raised on purpose by this package inherits from it"""


class CoincidentAgents(SwarmError):
    """Two agents share a position, so no bearing can be computed"""

    def __init__(self, focal: int | None = None, other: int | None = None):
        super().__init__(f"Agents {focal} and {other} are coincident")
        self.focal = focal
        self.other = other


class NoSignChange(SwarmError):
    """Social force keeps one sign over the whole search interval"""


class DegenerateInput(SwarmError):
    """Input too small or too degenerate for the requested metric"""


class MalformedBox(SwarmError):
    """Detection box with inverted or out-of-frame bounds"""


class ParseError(SwarmError):
    """Config text could not be parsed"""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class RangeError(SwarmError):
    """A config value violates its type invariant"""


class FormatError(SwarmError):
    """Trajectory, mask or box file is not in the expected format"""


class EmptyGrid(SwarmError):
    """Heatmap requested for a grid without cells"""
