class RenderError(Exception):
    """Base class for rendering failures."""


class MissingColumn(RenderError):
    def __init__(self, column: str, path: str = ""):
        self.column = column
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"missing column {column!r}{where}")


class EmptyInput(RenderError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"no data rows in {path}")
