"""Python surface of the spectral-level GSEE lab."""

from _gsee_lab import (  # noqa: F401
    GseeError,
    GseeSchedule,
    ModelDomain,
    SpectralMeasure,
    __version__,
    certify,
    estimate,
    gaussian_cosine_info,
    lemma_suite,
    make_schedule,
    quadrature,
    run_experiment_json,
    synth,
    threshold_poly_info,
)

__all__ = [
    "GseeError",
    "GseeSchedule",
    "ModelDomain",
    "SpectralMeasure",
    "__version__",
    "certify",
    "estimate",
    "gaussian_cosine_info",
    "lemma_suite",
    "make_schedule",
    "quadrature",
    "run_experiment_json",
    "synth",
    "threshold_poly_info",
]
