"""Exception hierarchy.

``MathError`` subclasses signal a mathematical outcome (no filtration, non-divisive
data, non-membership, ...) and map to CLI exit code 2. Everything else is a usage,
schema or I/O problem (exit code 1).
"""


class GKMError(Exception):
    """Base class for all library errors."""


class MathError(GKMError):
    """A well-formed input for which the requested object does not exist."""


# graphs

class GraphError(GKMError):
    pass


class NonRegular(GraphError):
    def __init__(self, vertex, degree, expected, offenders=()):
        self.vertex = vertex
        self.degree = degree
        self.expected = expected
        self.offenders = tuple(offenders) or ((vertex, degree),)
        super().__init__(f"vertex {vertex!r} has degree {degree}, expected {expected}")


class DanglingEndpoint(GraphError):
    def __init__(self, edge, vertex):
        self.edge = edge
        self.vertex = vertex
        super().__init__(f"edge {edge} references undeclared vertex {vertex!r}")


class SelfLoop(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"self-loop at {vertex!r}")


class DuplicateEdge(GraphError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"duplicate edge {edge}")


class DuplicateVertex(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"duplicate vertex label {vertex!r}")


class IntersectionNotMember(GraphError):
    def __init__(self, beta, delta):
        self.beta, self.delta = beta, delta
        super().__init__(f"intersection of members {beta!r} and {delta!r} is not a member")


class IntersectionNotRegular(GraphError):
    def __init__(self, beta, delta):
        self.beta, self.delta = beta, delta
        super().__init__(f"intersection of members {beta!r} and {delta!r} is not regular")


class Disconnected(MathError):
    def __init__(self, reached, total):
        self.reached = reached
        self.total = total
        super().__init__(f"graph is disconnected: seed reaches {reached} of {total} vertices")


class NoFiltration(MathError):
    def __init__(self, stuck_state):
        self.stuck_state = stuck_state
        super().__init__(f"no filtration exists; deepest partial ordering {list(stuck_state.ordering)}")


# algebra

class RankMismatch(GKMError):
    def __init__(self, left, right):
        super().__init__(f"torus rank mismatch: {left} vs {right}")


class TruncationMismatch(GKMError):
    def __init__(self, left, right):
        super().__init__(f"truncation mismatch: {left} vs {right}")


class NotDivisible(MathError):
    def __init__(self, remainder, quotient=None):
        self.remainder = remainder
        self.quotient = quotient
        super().__init__(f"not divisible (remainder {remainder})")


class ZeroDivisor(GKMError):
    def __init__(self):
        super().__init__("division by zero element")


class NonzeroConstantTerm(GKMError):
    def __init__(self, constant):
        super().__init__(f"series has nonzero constant term {constant}")


class NoSolution(MathError):
    """No integer solution. ``certificate`` is a rational row vector w with
    w·A integral and w·b not integral (or None if not computed)."""

    def __init__(self, certificate=None, message="linear system has no integer solution"):
        self.certificate = certificate
        super().__init__(message)


# gkm / cohomology

class NonIntegralCharacter(MathError):
    def __init__(self, edge, alpha):
        self.edge = edge
        self.alpha = alpha
        super().__init__(f"character of {edge} is not integral: {alpha}")


class NotDivisive(MathError):
    def __init__(self, edge, rtilde):
        self.edge = edge
        self.rtilde = rtilde
        super().__init__(f"not divisive: downward edge {edge[0]}->{edge[1]} has r~ = {rtilde}")


class CoprimalityFailure(MathError):
    def __init__(self, j, s1, s2):
        self.j, self.s1, self.s2 = j, s1, s2
        super().__init__(f"Euler classes at {j!r} towards {s1!r} and {s2!r} are not coprime")


class NoIntegralExtension(MathError):
    def __init__(self, j, k, bound):
        self.j, self.k, self.bound = j, k, bound
        super().__init__(f"basis class {j!r} has no extension to {k!r} within bound {bound}")


class CapExceeded(MathError):
    def __init__(self, j, cap):
        self.j, self.cap = j, cap
        super().__init__(f"basis class {j!r} needs degree above cap {cap}")


class NotAMember(MathError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"class is not a member (fails at {witness[0]!r}->{witness[1]!r})")


class NotInSpan(MathError):
    def __init__(self, j, remainder):
        self.j = j
        self.remainder = remainder
        super().__init__(f"decomposition fails at {j!r} with remainder {remainder}")


class InvalidGKMData(GKMError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid GKM data:\n" + "\n".join(str(v) for v in report.violations))


class SchemaError(GKMError):
    def __init__(self, path, location, message):
        self.path = path
        self.location = location
        super().__init__(f"{path}: {location}: {message}")
