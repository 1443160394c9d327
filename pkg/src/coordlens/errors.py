"""Exception hierarchy shared by the engine, bundle loader, and session layer."""


class CoordLensError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"


class DuplicateKey(CoordLensError):
    code = "DuplicateKey"


class CellTypeError(CoordLensError):
    """A cell value does not match its column's declared kind."""

    code = "CellTypeError"

    def __init__(self, row, column, message=None):
        self.row = row
        self.column = column
        super().__init__(message or f"bad cell value at row {row}, column {column!r}")


class KindMismatch(CoordLensError):
    code = "KindMismatch"


class InvalidRange(CoordLensError):
    code = "InvalidRange"


class UnknownColumn(CoordLensError):
    code = "UnknownColumn"


class UnknownKey(CoordLensError):
    code = "UnknownKey"


class InvalidGeometry(CoordLensError):
    code = "InvalidGeometry"


class ProjectionSingularity(CoordLensError):
    code = "ProjectionSingularity"


class NotEnoughDistinct(CoordLensError):
    code = "NotEnoughDistinct"


class EmptyInput(CoordLensError):
    code = "EmptyInput"


class DegenerateX(CoordLensError):
    code = "DegenerateX"


class TooFewPoints(CoordLensError):
    code = "TooFewPoints"


class LengthMismatch(CoordLensError):
    code = "LengthMismatch"


class InvalidDate(CoordLensError):
    code = "InvalidDate"


class NotApplicable(CoordLensError):
    code = "NotApplicable"


class SchemaMismatch(CoordLensError):
    code = "SchemaMismatch"


class UnsupportedGeometry(CoordLensError):
    code = "UnsupportedGeometry"


class MissingKey(CoordLensError):
    code = "MissingKey"


class UnknownView(CoordLensError):
    code = "UnknownView"


class BundleInvalid(CoordLensError):
    code = "BundleInvalid"

    def __init__(self, report):
        self.report = report
        super().__init__("bundle failed validation: " + "; ".join(report.errors))


class SnapshotMismatch(CoordLensError):
    code = "SnapshotMismatch"
