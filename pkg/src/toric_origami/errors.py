"""Exception hierarchy shared by every module of the package."""


class OrigamiError(Exception):
    """Base class for all errors raised by toric_origami."""


# -- polytopes ---------------------------------------------------------------

class PolytopeError(OrigamiError):
    pass


class Unbounded(PolytopeError):
    pass


class Empty(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    pass


class NotSimple(PolytopeError):
    def __init__(self, vertex, n_facets):
        self.vertex = vertex
        self.n_facets = n_facets
        super().__init__(f"vertex {_fmt_point(vertex)} lies on {n_facets} facets")


class NotSmooth(PolytopeError):
    def __init__(self, vertex, determinant):
        self.vertex = vertex
        self.determinant = determinant
        super().__init__(
            f"vertex {_fmt_point(vertex)}: incident normals have |det| = {abs(determinant)}"
        )


class RedundantHalfspace(PolytopeError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"half-space {index} does not support a facet")


class NonPrimitiveNormal(PolytopeError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"normal {index} is not a primitive integer vector")


class InvalidFacet(PolytopeError):
    pass


# -- templates and invariants -------------------------------------------------

class InvalidTemplate(OrigamiError):
    """Raised by template validation; ``report`` lists every problem found."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(issue.message for issue in report.issues))


class BoundaryWithCycles(OrigamiError):
    pass


class StructuralContradiction(OrigamiError):
    pass


# -- cohomology ----------------------------------------------------------------

class DegreeOutOfRange(OrigamiError):
    pass


class EmptyFoldSet(OrigamiError):
    pass


class FoldFacetsIntersect(OrigamiError):
    pass


class NotAFoldContext(OrigamiError):
    pass


class TorsionFound(OrigamiError):
    """A quotient that must be torsion-free was not."""


# -- Betti assembly ------------------------------------------------------------

class WrongDimension(OrigamiError):
    pass


class NotPrismatic(OrigamiError):
    pass


class HasBoundary(OrigamiError):
    """The computation needs a closed manifold but the template has dangling edges."""


# -- file format ---------------------------------------------------------------

class TemplateFileError(OrigamiError):
    pass


class SchemaError(TemplateFileError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class RationalParseError(SchemaError):
    pass


def _fmt_point(point):
    return "(" + ", ".join(str(c) for c in point) + ")"
