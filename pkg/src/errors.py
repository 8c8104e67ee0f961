"""
Toolkit Errors

Exception hierarchy shared by the library and the command layer.
Every class carries the CLI exit code it maps to:
- 2: input errors (bad spec text, bad words, unknown check)
- 3: resolution errors (the requested scale cannot support the computation)
"""

from typing import Optional


class ToolkitError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 3


class InvalidInputError(ToolkitError, ValueError):
    """Malformed input: wrong lengths, bad symbols, ill-formed specs"""

    exit_code = 2


class SpecParseError(InvalidInputError):
    """Spec text could not be parsed"""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"spec parse error at column {position + 1}: {message}")

    def annotated(self) -> str:
        """Message followed by the spec text and a caret under the failing column"""
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"


class UnknownCheckError(InvalidInputError):
    """Check name outside the supported set"""

    def __init__(self, name: str, valid: list):
        self.name = name
        self.valid = list(valid)
        super().__init__(f"unknown check '{name}'; valid checks: {', '.join(self.valid)}")


class ResolutionError(ToolkitError):
    """The finite resolution is too small for the requested computation"""

    exit_code = 3


class ResolutionExceededError(ResolutionError):
    """A word or search reaches beyond the language depth"""

    def __init__(self, message: str, needed: Optional[int] = None, depth: Optional[int] = None):
        self.needed = needed
        self.depth = depth
        if needed is not None and depth is not None:
            message = f"{message} (needs depth {needed}, have {depth})"
        super().__init__(message)


class ResolutionExhaustedError(ResolutionError):
    """The induced shift consumed the last symbol of resolution"""


class NonConvergenceError(ResolutionError):
    """Substitution factor sets did not stabilize under the step cap"""

    def __init__(self, message: str, cap: int):
        self.cap = cap
        super().__init__(f"{message} (cap {cap})")


class SearchSpaceCapExceededError(ResolutionError):
    """Exhaustive trace search refused because the candidate pool is too large"""

    def __init__(self, pool_size: int, cap: int):
        self.pool_size = pool_size
        self.cap = cap
        super().__init__(f"candidate pool of at least {pool_size} words exceeds the search cap {cap}")


class MatchFailureError(ResolutionError):
    """No inner point prefix matches the non-2 symbols of a cylinder"""


class RecurrenceFailureError(ResolutionError):
    """Almost periodicity could not be certified on the scanned orbit prefix"""


class PrefixTooShortError(ResolutionError):
    """A b-bar prefix is too short for the requested number of returns"""


class NeedsLongerPrefixError(ResolutionError):
    """Window sets of an omega-limit sweep did not stabilize inside the prefix"""


class SubCheckFailedError(ToolkitError):
    """A stage of a multi-stage run failed; keeps the cause's exit code"""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code if isinstance(cause, ToolkitError) else ResolutionError.exit_code
        super().__init__(f"sub-check '{stage}' failed: {cause}")
