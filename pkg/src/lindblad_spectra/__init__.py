"""Spectra of translation-covariant single-particle Lindblad generators on
the one-dimensional lattice, computed through banded Laurent fibers with
rank-one perturbations."""

from .errors import (
    DegenerateGamma,
    EmptySetError,
    LindbladSpectraError,
    NoConvergence,
    NoSplit,
    OffUnitCircle,
    OnSymbolCurve,
    SingularOperator,
    SizeTooLarge,
    SizeTooSmall,
    UnsupportedModel,
)
from .laurent import (
    BandedSymbol,
    RootPair,
    branch_sqrt,
    ordered_roots,
    symbol_curve,
    symbol_eval,
    tridiag_inverse_element,
)
from .model import (
    FiberOperator,
    LindbladChannel,
    LindbladModel,
    builtin_model,
    effective_hopping,
    fiber,
    load_model,
    model_from_json,
    model_to_json,
    parse_builtin_spec,
    save_model,
    transform_Jn,
    vectorized_lindbladian,
)
from .numerics import (
    EigenResult,
    PseudospectrumField,
    dense_eigenvalues,
    hausdorff_distance,
    min_singular_value,
    newton_roots,
    pseudospectrum_grid,
)
from .spectrum import (
    ClosedFormSpectrum,
    GapReport,
    SpectrumCloud,
    closed_form_spectrum,
    cloud_components,
    gap_report,
    jump_curve,
    jump_eigenvector,
    nhe_spectrum,
    secular_value,
)
from .finite import (
    CirculantOperator,
    FiniteFiber,
    circulant_eigs,
    circulant_inverse_element,
    convergence_study,
    equivalence_check,
    finite_fiber,
    finite_fiber_eigs,
    finite_spectrum,
    gap_scaling,
)
from .disorder import (
    DisorderRealization,
    exact_solvable_spectrum,
    kunz_containment,
    numerical_range_sample,
    range_bound_f,
)

__version__ = "0.1.0"
