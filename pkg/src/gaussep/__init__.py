"""Covariance-matrix toolkit for Gaussian states under one-sided Gaussian channels."""
from gaussep.channels import (
    AsymmetricNoise,
    ChannelKind,
    ChannelVerdict,
    GaussianChannel,
    NotAChannel,
    amplifier,
    apply_one_sided,
    classical_noise,
    classify,
    erase_to_vacuum,
    make_channel,
    phase_conjugate,
    pure_loss,
)
from gaussep.separability import SeparabilityVerdict, log_negativity, ppt_separable, two_mode_separable
from gaussep.states import (
    PureStateSpec,
    TwoModeBlocks,
    blocks,
    is_pure,
    random_pure_n_mode,
    random_pure_two_mode,
    tmss,
    vacuum,
)
from gaussep.symplectic import (
    CovarianceMatrix,
    SymplecticMatrix,
    congruence,
    is_physical,
    partial_transpose,
    random_n_mode_symplectic,
    random_one_mode_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
)
from gaussep.verify import (
    TrialConfig,
    VerificationReport,
    check_input_independence,
    crosscheck_physicality,
    sweep_entanglement_ratio,
    verify_detf_zero,
    verify_proposition,
)

__version__ = "0.1.0"
