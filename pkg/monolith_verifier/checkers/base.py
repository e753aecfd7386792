"""Common shape of the pipeline components."""
from ..config import DEFAULT_LIMITS, Limits


class Checker:
    """
    A named step of the verification pipeline.

    Subclasses implement invoke(), which returns a report dataclass and lets
    library errors propagate to the caller.
    """

    description = ""

    def __init__(self, name: str, limits: Limits = DEFAULT_LIMITS):
        self.name = name
        self.limits = limits

    def invoke(self, *args, **kwargs):
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"
