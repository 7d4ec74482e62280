"""semnorm: semantic-difference detection from mean-vector norms.

Compare two corpora of contextualized word vectors: word types whose mean
vector is much shorter in one corpus cover wider meanings there.  The
package aggregates embedding streams into per-type statistics, scores types
with the coverage ratio, extracts the instances responsible via
representativeness, and ships a vMF simulator so results can be validated
against known ground truth.
"""

from .aggregate import TypeStats, accumulate, accumulate_stream, merge, merge_maps
from .detect import ScoredType, detect
from .embstore import (
    InstanceRecord,
    StreamHeader,
    StreamFormatError,
    normalize,
    read_stream,
    read_stream_path,
    write_stream,
    write_stream_path,
)
from .errors import ValidationError
from .instances import ScoredInstance, typical_instances
from .simulate import SimulatedPair, simulate_pair
from .stability import StabilityCurve, stability_curve
from .vmf import (
    CoveragePair,
    VmfParams,
    coverage,
    estimate_kappa,
    estimate_mu,
    fit_vmf,
    kappa_ratio_exact,
    llr_weights_exact,
    representativeness,
    representativeness_weights,
    sample_vmf,
)

__version__ = "0.1.0"

__all__ = [
    "CoveragePair",
    "InstanceRecord",
    "ScoredInstance",
    "ScoredType",
    "SimulatedPair",
    "StabilityCurve",
    "StreamFormatError",
    "StreamHeader",
    "TypeStats",
    "ValidationError",
    "VmfParams",
    "accumulate",
    "accumulate_stream",
    "coverage",
    "detect",
    "estimate_kappa",
    "estimate_mu",
    "fit_vmf",
    "kappa_ratio_exact",
    "llr_weights_exact",
    "merge",
    "merge_maps",
    "normalize",
    "read_stream",
    "read_stream_path",
    "representativeness",
    "representativeness_weights",
    "sample_vmf",
    "simulate_pair",
    "stability_curve",
    "typical_instances",
    "write_stream",
    "write_stream_path",
]
