"""Fractional Orlicz-Sobolev embeddings, computed: Young functions, regimes,
optimal targets, Orlicz-type norms, Gagliardo modulars and the Hardy reduction."""

from .functions import (
    DomainError,
    RearrangedFunction,
    SampledFunction,
    decreasing_rearrangement,
    intersection_norm,
    l1_plus_linf_norm,
    luxemburg_norm,
    orlicz_lorentz_norm,
    read_csv,
    sup_norm,
    weighted_norm,
    write_csv,
)
from .hardy import (
    HardyKernel,
    StepFunction,
    hardy_operator,
    kernel_conjugate_norm,
    reduction_constant_estimate,
)
from .kernels import BACKEND
from .regime import (
    ClassificationError,
    Regime,
    RegimeTag,
    check_indisp,
    check_tail,
    classify_endpoint_integral,
    classify_growth,
)
from .seminorm import (
    ModularConfig,
    MollifierFamily,
    difference_quotient_modular,
    fractional_seminorm,
    gagliardo_modular,
    mollify,
)
from .targets import (
    PreconditionError,
    build_targets,
    hat_density_inverse,
    orlicz_lorentz_target,
    orlicz_target,
    sobolev_companion_H,
    truncate_to_EA,
)
from .young import (
    MonotoneMap,
    SpaceParams,
    YoungFunction,
    conjugate,
    dominates,
    equivalent,
    generalized_inverse,
    matuszewska_index_zero,
    power,
    powerlog,
    spliced,
)

__version__ = "0.1.0"
