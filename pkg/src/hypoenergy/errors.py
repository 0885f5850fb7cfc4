"""Exception hierarchy shared across the package."""

from hypoenergy._kernels.errors import JacobiNoConvergence


class GraphError(ValueError):
    """Invalid graph construction or a violated graph precondition."""


class Graph6Error(GraphError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EdgeListError(GraphError):
    def __init__(self, message, line):
        super().__init__(f"{message} (line {line})")
        self.line = line


class DisconnectedGraphError(GraphError):
    def __init__(self, components):
        self.components = components
        super().__init__(
            f"graph is disconnected: {len(components)} components "
            + ", ".join("{" + ",".join(map(str, c)) + "}" for c in components)
        )


class ExceptionalGraphError(GraphError):
    def __init__(self, name):
        super().__init__(f"graph is exceptional ({name})")
        self.name = name


class CertificateFormatError(ValueError):
    def __init__(self, message, line):
        super().__init__(f"{message} (line {line})")
        self.line = line


class UnresolvedVerdictError(ArithmeticError):
    """Energy too close to the order to classify, even after escalation."""

    def __init__(self, n, standard_energy, escalated_energy):
        self.n = n
        self.standard_energy = standard_energy
        self.escalated_energy = escalated_energy
        super().__init__(
            f"cannot decide E < {n}: standard E={standard_energy!r}, "
            f"escalated E={escalated_energy!r}"
        )


class CertificationError(RuntimeError):
    """No good edge cut within the size limit at some node of the induction."""

    def __init__(self, message, graph):
        super().__init__(message)
        self.graph = graph


class CertificateRejected(ValueError):
    def __init__(self, node, condition):
        super().__init__(f"certificate rejected at {node}: {condition}")
        self.node = node
        self.condition = condition


__all__ = [
    "CertificateFormatError",
    "CertificateRejected",
    "CertificationError",
    "DisconnectedGraphError",
    "EdgeListError",
    "ExceptionalGraphError",
    "Graph6Error",
    "GraphError",
    "JacobiNoConvergence",
    "UnresolvedVerdictError",
]
