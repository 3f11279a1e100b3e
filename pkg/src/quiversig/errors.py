"""Exception types shared across the package."""


class QuiverSigError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(QuiverSigError, ValueError):
    """Malformed or inconsistent data: unknown ids, shape mismatches, bad files."""


class MismatchError(QuiverSigError, ValueError):
    """Objects built over different quivers or representations were mixed."""


class QuiverStructureError(QuiverSigError, ValueError):
    """The operation needs structure the quiver does not have (chain, acyclic)."""


class NotSemisimpleError(QuiverSigError, ValueError):
    """Fourier decomposition requested for a representation with nonzero arrow maps."""

    def __init__(self, arrow_id: str, norm: float):
        self.arrow_id = arrow_id
        self.norm = norm
        super().__init__(
            f"representation is not semisimple: arrow '{arrow_id}' has max-norm "
            f"{norm:.6g} above 1e-12; use barcode or generic decomposition instead"
        )
