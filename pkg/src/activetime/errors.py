"""Exception types raised across the package."""


class ActiveTimeError(Exception):
    """Base class for all errors raised by this package."""


class MalformedLine(ActiveTimeError):
    """An instance/PSC text line does not match the expected format."""


class DuplicateJobId(ActiveTimeError):
    """Two jobs in one instance share an id."""


class InvalidWindow(ActiveTimeError):
    """A job violates r >= 0, p >= 1 or d >= r + p."""


class NonLaminar(ActiveTimeError):
    """Two job windows cross (overlap without containment)."""

    def __init__(self, job_a: str, job_b: str):
        super().__init__(f"windows of jobs {job_a!r} and {job_b!r} cross")
        self.job_a = job_a
        self.job_b = job_b


class InfeasibleSubinstance(ActiveTimeError):
    """A node's subtree jobs cannot be scheduled even with every slot open."""


class InfeasibleInput(ActiveTimeError):
    """A solution handed to the push-down transform violates an LP constraint."""


class PropertyViolation(ActiveTimeError):
    """A structural property of the topmost open set failed."""

    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"{name}: {detail}" if detail else name)
        self.name = name


class PreconditionViolated(ActiveTimeError):
    """Rounding input has fractional mass outside the topmost open set."""


class RatioExceeded(ActiveTimeError):
    """The integral opening exceeds 9/5 of the fractional total."""

    def __init__(self, ratio, x_tilde):
        super().__init__(f"opening ratio {ratio} exceeds 9/5 (opening {x_tilde})")
        self.ratio = ratio
        self.x_tilde = x_tilde


class InvariantViolation(ActiveTimeError):
    """An internal invariant failed (e.g. a rounded opening was rejected)."""


class SubsetLimitExceeded(ActiveTimeError):
    """Too many jobs to enumerate job subsets exhaustively."""


class DimensionMismatch(ActiveTimeError):
    """Vectors of different lengths were compared."""


class RangeViolation(ActiveTimeError):
    """A transformed vector entry fell outside its guaranteed range."""


class DegenerateWidth(ActiveTimeError):
    """The prefix-sum-cover instance has maximum scalar below 2."""


class TooManyJobs(ActiveTimeError):
    """A packing configuration received more jobs than machines."""


class GenerationFailed(ActiveTimeError):
    """The random instance generator exhausted its retry budget."""


class Infeasible(ActiveTimeError):
    """The instance cannot be scheduled even with every slot open."""


class BudgetExceeded(ActiveTimeError):
    """The brute-force search passed the caller's slot budget."""
