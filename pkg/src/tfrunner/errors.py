"""Exception types raised across the package."""


class TFRunnerError(Exception):
    """Base class for all package errors."""


class InputError(TFRunnerError, ValueError):
    """Malformed or inconsistent input."""


class BadSequence(TFRunnerError):
    """Targets violate an integer relation of the frequencies.

    The offending verdict is kept on ``self.verdict``.
    """

    def __init__(self, verdict):
        super().__init__(
            f"bad sequence: relation {verdict.violating_relation} has defect {verdict.defect:.3g}"
        )
        self.verdict = verdict


class BudgetExhausted(TFRunnerError):
    """A scan used its whole sample budget without finding a witness.

    This is inconclusive; it says nothing about existence.
    """


class ScanFailure(TFRunnerError):
    """A scan that is guaranteed to succeed came back empty."""


class DetNotOne(TFRunnerError, ValueError):
    pass


class SmallRelation(TFRunnerError, ValueError):
    """Relation too short for the phase-perturbation argument (sum |p_k| <= 2)."""


class PreconditionNotMet(TFRunnerError, ValueError):
    pass
