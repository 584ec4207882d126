"""Fourier analysis on Z_2^n, sparse-function Booleanity testing, and the
experiments that probe its bounds."""

from .errors import BooleanityError, InvalidArgumentError, ParseError, ResourceLimitError
from .hypercube import (
    DENSE_CAP,
    DenseFunction,
    SparseFunction,
    ValueSet,
    boolean_distance,
    char_eval,
    entropy,
    l2_norm,
    non_boolean_fraction,
    point_from_bits,
    point_to_bits,
    pointwise_product,
    sparse_eval,
    support,
    to_dense,
)
from .io import load_function, parse_function, save_function
from .lab import (
    BlockFunctionSpec,
    ExperimentReport,
    distinguishing_experiment,
    empirical_min_fraction,
    exhaustive_boolean_audit,
    sample_bk,
    sample_ck,
)
from .oracle import DenseOracle, FunctionOracle, JuntaOracle, Oracle, SparseOracle
from .spectral import (
    FiniteDistribution,
    UncertaintyReport,
    check_closeness_theorem,
    check_conv_support,
    check_entropy_uncertainty,
    check_support_uncertainty,
    conditional_entropy_bound_check,
    far_from_set_bound,
    is_boolean_by_spectrum,
    spectral_sparsity_bound,
    sumset_power,
)
from .tester import Verdict, sample_count, test_booleanity, test_image_in_set
from .wht import convolve_fast, convolve_naive, self_convolution_power, wht_forward, wht_inverse

__version__ = "0.1.0"
