"""Exception types shared across the package.

Every documented failure mode has a dedicated class so callers (and the CLI)
can report the error by name.
"""


class OrbigroupoidError(Exception):
    """Base class for all package errors."""


# -- group algebra ----------------------------------------------------------

class NoIdentity(OrbigroupoidError):
    pass


class NotAssociative(OrbigroupoidError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"multiplication table is not associative at {triple}")


class NoInverse(OrbigroupoidError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAHomomorphism(OrbigroupoidError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"map(a*b) != map(a)*map(b) at {pair}")


# -- G-graphs ---------------------------------------------------------------

class NotAnAction(OrbigroupoidError):
    pass


class NotEquivariantInvolution(OrbigroupoidError):
    pass


class EdgeInversion(OrbigroupoidError):
    def __init__(self, element, dart, detail=""):
        self.element = element
        self.dart = dart
        msg = f"group element {element} maps dart {dart} to its involute"
        super().__init__(msg + "; subdivide the graph (CLI: subdivide) to remove inversions"
                         + (f" ({detail})" if detail else ""))


class NotEquivariant(OrbigroupoidError):
    pass


class NotNormal(OrbigroupoidError):
    pass


class NotFree(OrbigroupoidError):
    def __init__(self, witness, kind="vertex"):
        self.witness = witness
        self.kind = kind
        super().__init__(f"subgroup does not act freely: {kind} {witness} has nontrivial stabilizer")


class InversionInQuotient(OrbigroupoidError):
    def __init__(self, detail=""):
        super().__init__("quotient graph has an edge inversion; subdivide the source graph first"
                         + (f" ({detail})" if detail else ""))


class EmbeddingNotInjective(OrbigroupoidError):
    pass


class EmbeddingNotHom(OrbigroupoidError):
    pass


# -- paths ------------------------------------------------------------------

class MalformedPath(OrbigroupoidError):
    def __init__(self, index, detail=""):
        self.index = index
        super().__init__(f"path is malformed at step {index}" + (f": {detail}" if detail else ""))


class EndpointMismatch(OrbigroupoidError):
    pass


class VertexNotInComponent(OrbigroupoidError):
    pass


class NotALoop(OrbigroupoidError):
    pass


class WrongBasepoint(OrbigroupoidError):
    pass


# -- categories -------------------------------------------------------------

class NotComposable(OrbigroupoidError):
    pass


class NotInvertible(OrbigroupoidError):
    pass


class VertexNotFixed(OrbigroupoidError):
    pass


# -- morita moves -----------------------------------------------------------

class NotNatural(OrbigroupoidError):
    def __init__(self, element, vertex, detail=""):
        self.element = element
        self.vertex = vertex
        super().__init__(f"naturality fails at (g={element}, x={vertex})"
                         + (f": {detail}" if detail else ""))


class NotLocallyConstant(OrbigroupoidError):
    def __init__(self, dart):
        self.dart = dart
        super().__init__(f"transformation is not constant across dart {dart}"
                         " (not continuous in the discrete model)")


class NotInducedSpace(OrbigroupoidError):
    pass


class StartDoesNotProject(OrbigroupoidError):
    pass


class StrategyUnavailable(OrbigroupoidError):
    def __init__(self, provenance):
        self.provenance = provenance
        super().__init__(f"certified strategy needs a quotient or induction move, got {provenance}")


# -- .ggx files -------------------------------------------------------------

class GgxSyntaxError(OrbigroupoidError):
    def __init__(self, line, col, expected):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"line {line}, column {col}: expected {expected}")


class UnresolvedName(OrbigroupoidError):
    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown name {name!r}{where}")


class BadTable(OrbigroupoidError):
    pass
