"""
Some core mechanisms & miscellany for the graded r-spin graph engine
"""

from typing import Dict, List, Tuple

__version__ = "1.0.0"
__date__ = "18/10/2026"

# Typically, one would use the enum type to represent a set of possible values, but
# the values below are written verbatim into documents and reports, so simple
# strings are used throughout

# A VertexId uniquely identifies a vertex within one graph value
# A HalfEdgeId uniquely identifies a half-edge within one graph value
# Vertex ids and half-edge ids live in separate namespaces, so vertex 0 and
# half-edge 0 may coexist
VertexId = int
HalfEdgeId = int

# A TailRef identifies a tail of an (r, h)-graph: (component index, half-edge id)
TailRef = Tuple[int, HalfEdgeId]

OPEN = "open"
CLOSED = "closed"
VERTEX_KINDS = (OPEN, CLOSED)

BOUNDARY = "boundary"
INTERNAL = "internal"
HALF_EDGE_KINDS = (BOUNDARY, INTERNAL)

SEPARATING = "separating"
NONSEPARATING = "nonseparating"

LEGAL = 1
ILLEGAL = 0

# Codimension-1 boundary types of a cell
CB = "CB"
RAMOND = "R"
NS_PLUS = "NS+"
AI = "AI"
BI = "BI"
BOUNDARY_TYPES = (CB, RAMOND, NS_PLUS, AI, BI)

# Boundary types that are never glued
FREE_BOUNDARY_TYPES = (CB, RAMOND, NS_PLUS)

# Conditions reported by the validators
STRUCTURE = "structure"
STABILITY = "stability"
SPIN_CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")
RH_CONDITIONS = ("component", "legal", "level", "dashed", "labels", "bubble", "connected")

DOCUMENT_FORMAT = "rspin-graph"
DOCUMENT_VERSION = 1

# Number of Weisfeiler-Lehman rounds used by invariant keys
HASH_ITERATIONS = 3


class GraphError(Exception):
    """Base class for every error raised by this package"""


class PreconditionError(GraphError, ValueError):
    """An operation was called on input outside of its domain"""


class SiteNotFoundError(GraphError, KeyError):
    """A degeneration site, edge or half-edge does not exist"""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DisconnectedGraphError(GraphError):
    """A connected component was expected"""


class NonIntegralRankError(GraphError):
    """The Witten rank numerator is not divisible by r"""


class NonIntegralMDeltaError(GraphError):
    """rank + 1 - #legal is odd"""


class UnstableVertexError(GraphError):
    """A vertex fails the stability inequality"""


class InsertionError(GraphError):
    """Point insertion is not defined for the requested facet"""


class GluingError(GraphError):
    """The cell complex could not be assembled consistently"""


class OrientationError(GraphError):
    """A sign could not be computed consistently"""


class ValidationError(GraphError):
    """An object failed validation

    The failing report is available as the 'report' attribute.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report

    def __str__(self):
        text = super().__str__()
        if self.report is not None and self.report.get_violations():
            text += ": " + "; ".join(self.report.describe())
        return text


class DocumentError(GraphError):
    """A document could not be parsed

    The 'location' attribute is a path such as '$.components[1].half_edges[3].kind'; validation
    failures also carry the failing report as 'report'.
    """

    def __init__(self, message, location="$", report=None):
        super().__init__(message)
        self.location = location
        self.report = report

    def __str__(self):
        return f"{self.location}: {super().__str__()}"


class ValidationReport:
    """Outcome of validating a graph

    Violations are (condition, message, ids) triples; a report with no
    violations is valid. Validators also record per-vertex statistics and
    free-form notes (e.g. the Ramond/NS status of every edge).
    """

    def __init__(self):
        self._violations: List[Tuple[str, str, tuple]] = []
        self._vertex_stats: Dict[VertexId, dict] = {}
        self._notes: Dict[str, object] = {}
        self._warnings: List[str] = []

    def add(self, condition, message, *ids):
        """Records a violated condition

        Parameters:
            condition (str): The name of the violated condition
            message (str): A short human readable reason
            *ids: The offending vertex/half-edge ids
        """
        self._violations.append((condition, message, tuple(ids)))

    def warn(self, message):
        """Records a tolerated anomaly"""
        self._warnings.append(message)

    def set_vertex_stats(self, vertex, **stats):
        self._vertex_stats.setdefault(vertex, {}).update(stats)

    def get_vertex_stats(self, vertex=None):
        """(dict) Returns the statistics of 'vertex', or of every vertex if None"""
        if vertex is None:
            return dict(self._vertex_stats)
        return self._vertex_stats[vertex]

    def note(self, key, value):
        self._notes[key] = value

    def get_note(self, key, default=None):
        return self._notes.get(key, default)

    def is_valid(self) -> bool:
        """(bool) Returns True iff no condition is violated"""
        return not self._violations

    def get_violations(self, condition=None):
        """(list<tuple<str, str, tuple>>) Returns the violations, optionally of one condition only"""
        if condition is None:
            return list(self._violations)
        return [violation for violation in self._violations if violation[0] == condition]

    def get_failed_conditions(self):
        """(set<str>) Returns the names of every violated condition"""
        return {condition for condition, _, _ in self._violations}

    def get_warnings(self):
        return list(self._warnings)

    def describe(self):
        """(list<str>) Returns one line per violation"""
        lines = []
        for condition, message, ids in self._violations:
            suffix = f" {list(ids)}" if ids else ""
            lines.append(f"({condition}) {message}{suffix}")
        return lines

    def merge(self, other, prefix=""):
        """Adds every violation and warning of 'other' to this report

        Parameters:
            other (ValidationReport): The report to absorb
            prefix (str): Prepended to the absorbed messages
        """
        for condition, message, ids in other.get_violations():
            self.add(condition, prefix + message, *ids)
        for warning in other.get_warnings():
            self.warn(prefix + warning)

    def to_dict(self):
        return {
            "valid": self.is_valid(),
            "violations": [
                {"condition": condition, "message": message, "ids": list(ids)}
                for condition, message, ids in self._violations
            ],
            "warnings": list(self._warnings),
            "vertices": {str(vertex): dict(stats) for vertex, stats in sorted(self._vertex_stats.items())},
        }

    def __repr__(self):
        return f"ValidationReport(valid={self.is_valid()}, violations={len(self._violations)})"


def sign(exponent: int) -> int:
    """(int) Returns (-1) ** exponent for any integer exponent"""
    return -1 if exponent % 2 else 1
