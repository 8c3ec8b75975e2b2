"""Exception types shared across the engine.

ValueError is used for malformed inputs (bad degrees, mismatched contexts,
out-of-range arguments).  DomainError marks well-formed requests that fall
outside the supported fragment of the theory, so callers can distinguish
"you typed it wrong" from "this computation is out of scope".
"""


class DomainError(Exception):
    """A well-formed input outside the supported computational scope."""


class InadmissibleComposition(DomainError):
    """Raised when a Kudo-Araki application would need composition rules
    (Dyer-Lashof Adem relations) that are deliberately unsupported."""


class ExprSyntaxError(ValueError):
    """Syntax error in the expression language, with the failing offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position
