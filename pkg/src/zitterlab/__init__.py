"""Causal-set chain quantification, pair-valued process calculus and the
Feynman checkerboard of the 1+1 Dirac equation."""

from .checkerboard import (
    Field,
    KernelQuery,
    Spinor,
    StepMatrices,
    corner_weighted_sum,
    dirac_residual,
    kernel_bruteforce,
    kernel_dp,
    make_step_matrices,
    path_amplitude,
    step,
)
from .poset import (
    Chain,
    IntervalClass,
    IntervalPair,
    Poset,
    SpacetimeInterval,
    beta,
    check_betweenness,
    classify_interval,
    interval_scalar,
    quantify_element,
    quantify_interval,
    to_spacetime,
)
from .proc_calc import Amplitude, amp_add, amp_mul, born
from .seqlang import evaluate, parse, pretty, probability
from .sequences import build_free_particle_poset, count_corners, enumerate_sequences, seq_to_path

__version__ = "0.1.0"
