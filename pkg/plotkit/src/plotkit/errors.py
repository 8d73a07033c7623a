class PlotkitError(Exception):
    """Base class for figure-tool failures."""


class SchemaMismatch(PlotkitError):
    """An input CSV lacks a column the requested figure needs."""

    def __init__(self, column, path=None):
        self.column = column
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"missing column {column!r}{where}")


class EmptyInput(PlotkitError):
    """An input CSV parsed but held no data rows."""

    def __init__(self, path):
        self.path = path
        super().__init__(f"no data rows in {path}")
