"""Phase retrieval from local spectrogram measurements by Wigner deconvolution."""

from ._core import (
    Mask,
    MeasurementSet,
    RecoveryResult,
    WddError,
    add_noise,
    algorithm1,
    algorithm2,
    compact_mask_pipeline,
    error_db,
    exp_bandlimited_mask,
    exp_compact_mask,
    hio_er,
    mu1,
    mu2,
    mu_compact_collapse,
    random_bandlimited_mask,
    selfcheck,
    spectrogram,
    user_mask,
)

__all__ = [
    "Mask",
    "MeasurementSet",
    "RecoveryResult",
    "WddError",
    "add_noise",
    "algorithm1",
    "algorithm2",
    "compact_mask_pipeline",
    "error_db",
    "exp_bandlimited_mask",
    "exp_compact_mask",
    "hio_er",
    "mu1",
    "mu2",
    "mu_compact_collapse",
    "random_bandlimited_mask",
    "selfcheck",
    "spectrogram",
    "user_mask",
]
