"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Arguments violate a documented precondition."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} configurations exceed the enumeration cap {cap}")
        self.count = count
        self.cap = cap
