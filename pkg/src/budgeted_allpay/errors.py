"""Exception hierarchy shared by the solvers, the verifier and the CLI."""


class AuctionError(Exception):
    """Base class. ``reason`` is a short machine-readable string."""

    kind = "AuctionError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    @property
    def reason(self) -> str:
        return f"{self.kind}: {self.message}"


class InvalidProfile(AuctionError):
    kind = "InvalidProfile"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class InfeasibleBid(AuctionError):
    kind = "InfeasibleBid"


class MassNotNormalized(AuctionError):
    kind = "MassNotNormalized"

    def __init__(self, total: float):
        super().__init__(f"total mass {total!r} (deviation {total - 1.0:+.3e})")
        self.total = total
        self.deviation = total - 1.0


class SupportInfeasible(AuctionError):
    kind = "SupportInfeasible"

    def __init__(self, point, message: str):
        super().__init__(f"{message} at point {list(point)!r}")
        self.point = tuple(point)


class NoEquilibrium(AuctionError):
    kind = "NoEquilibrium"


class UnsupportedRegime(AuctionError):
    kind = "UnsupportedRegime"


class PreconditionViolated(AuctionError):
    kind = "PreconditionViolated"


class ConstructionInvalid(AuctionError):
    """Raised when a closed-form construction would not be a probability measure."""

    kind = "ConstructionInvalid"

    def __init__(self, failures):
        failures = list(failures)
        super().__init__("; ".join(failures))
        self.failures = failures


class InvalidParameter(AuctionError):
    kind = "InvalidParameter"
