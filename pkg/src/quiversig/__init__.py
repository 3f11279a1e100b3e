"""Signal processing on quiver representations.

Signals live in a direct sum of per-node vector spaces, filters are elements
of the path algebra, and filtering is the induced action on the total space.
Representations decompose three ways: interval barcodes for equioriented
chains, generic splitting into indecomposables, and Fourier reorganization in
the semisimple case. A persistent-homology pipeline turns filtered simplicial
complexes into chain representations and feeds them to the barcode.
"""
from .algebra import DROP_TOL, FilterElement, add, multiply, unit, zero
from .decomposition import (
    CLUSTER_GAP,
    FourierDecomposition,
    IntervalBarcode,
    SEMISIMPLE_TOL,
    Summand,
    SummandList,
    barcode_interval,
    chain_order,
    composition_factors,
    fourier_decompose,
    generic_decompose,
    interval_representation,
    is_semisimple,
)
from .errors import (
    MismatchError,
    NotSemisimpleError,
    QuiverSigError,
    QuiverStructureError,
    ValidationError,
)
from .morphisms import Intertwiner, IsoResult, end_dim, hom_basis, is_isomorphic
from .quiver import ZERO, Arrow, Path, Quiver, chain_quiver, concat
from .representation import QuiverSignal, Representation, ShiftMatrix, direct_sum
from .tda import (
    FilteredComplex,
    HomologyBasis,
    Simplex,
    boundary_matrix,
    homology_basis,
    persistence_barcode,
    persistence_representation,
)

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "Quiver",
    "Path",
    "ZERO",
    "concat",
    "chain_quiver",
    "FilterElement",
    "unit",
    "zero",
    "multiply",
    "add",
    "DROP_TOL",
    "Representation",
    "QuiverSignal",
    "ShiftMatrix",
    "direct_sum",
    "Intertwiner",
    "IsoResult",
    "hom_basis",
    "end_dim",
    "is_isomorphic",
    "IntervalBarcode",
    "Summand",
    "SummandList",
    "FourierDecomposition",
    "chain_order",
    "interval_representation",
    "barcode_interval",
    "generic_decompose",
    "is_semisimple",
    "composition_factors",
    "fourier_decompose",
    "SEMISIMPLE_TOL",
    "CLUSTER_GAP",
    "Simplex",
    "FilteredComplex",
    "HomologyBasis",
    "boundary_matrix",
    "homology_basis",
    "persistence_representation",
    "persistence_barcode",
    "QuiverSigError",
    "ValidationError",
    "MismatchError",
    "QuiverStructureError",
    "NotSemisimpleError",
]
