"""Shared exception types."""


class ComputationError(RuntimeError):
    """A numerical routine could not produce a trustworthy result.

    Raised for non-convergent refinement ladders, evaluation points that hit a
    singular factor, resource caps, and residual checks that fail.  Domain and
    precondition violations raise ``ValueError`` instead.
    """
