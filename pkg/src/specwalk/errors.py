"""Exception hierarchy shared across the package."""


class SpecwalkError(Exception):
    """Base class for all package-specific errors."""


# graph construction and validation

class SelfLoop(SpecwalkError):
    pass


class DuplicateEdge(SpecwalkError):
    pass


class NonpositiveWeight(SpecwalkError):
    pass


class DisconnectedGraph(SpecwalkError):
    pass


class InfeasibleParams(SpecwalkError):
    pass


class SingularSolve(SpecwalkError):
    pass


# spectral machinery

class EigensolveFailure(SpecwalkError):
    pass


class WrongOperatorKind(SpecwalkError):
    pass


class ZeroMeasure(SpecwalkError):
    pass


# walks

class EmptyTarget(SpecwalkError):
    pass


class BipartiteChain(SpecwalkError):
    pass


# energy functional

class BipartiteGraph(SpecwalkError):
    pass


class EmptySelection(SpecwalkError):
    pass


class NotAPath(SpecwalkError):
    pass


# bound checkers

class NonMonotoneEnvelope(SpecwalkError):
    pass


class PreconditionViolated(SpecwalkError):
    pass


class NotTransitive(PreconditionViolated):
    pass


class UncertifiedGrowth(SpecwalkError):
    pass


# command line

class BadSpec(SpecwalkError):
    pass


class BadVertex(SpecwalkError):
    pass
