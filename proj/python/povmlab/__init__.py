"""POVM noise, smearing, and spin coherent-state quantization on the sphere.

Thin wrapper over the compiled extension; see the project README for the
matching CLI (`lab`) and file formats.
"""

from ._core import (
    MarkovKernel,
    Partition,
    Povm,
    PovmlabError,
    SearchBudget,
    SphereGrid,
    ToeplitzContext,
    __version__,
    band_partition,
    cap_partition,
    check_suite,
    classical_registration_povm,
    comm_norm,
    contract,
    correspondence_defect,
    janssens_residual,
    naimark_dilate,
    noise_magnitude,
    noise_operator,
    noncommutativity,
    norm_defect,
    nu_c,
    op_norm,
    poisson_bracket,
    psd_sqrt,
    pushforward,
    quantize_partition,
    region_operator,
    run_scenario,
    sharpness_defect,
    smear,
    spectral_decomp,
    sup_norm,
    systematic_noise_bracket,
    toeplitz,
    toeplitz_coordinate,
    unsmear_commutative,
)

__all__ = [
    "MarkovKernel",
    "Partition",
    "Povm",
    "PovmlabError",
    "SearchBudget",
    "SphereGrid",
    "ToeplitzContext",
    "__version__",
    "band_partition",
    "cap_partition",
    "check_suite",
    "classical_registration_povm",
    "comm_norm",
    "contract",
    "correspondence_defect",
    "janssens_residual",
    "naimark_dilate",
    "noise_magnitude",
    "noise_operator",
    "noncommutativity",
    "norm_defect",
    "nu_c",
    "op_norm",
    "poisson_bracket",
    "psd_sqrt",
    "pushforward",
    "quantize_partition",
    "region_operator",
    "run_scenario",
    "sharpness_defect",
    "smear",
    "spectral_decomp",
    "sup_norm",
    "systematic_noise_bracket",
    "toeplitz",
    "toeplitz_coordinate",
    "unsmear_commutative",
]
