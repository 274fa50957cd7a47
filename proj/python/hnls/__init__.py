"""Half-line defocusing NLS with time-periodic boundary data."""

from ._hnls import (
    DressedSolution,
    Error,
    PeriodicPair,
    SingularSystemError,
    build,
    classify,
    family_d_pair,
    monodromy,
    singularity_x,
    spectral,
    two_pole_singular_x,
    u_family_d,
    u_two_pole,
    verdict,
    verify,
)

__all__ = [
    "DressedSolution",
    "Error",
    "PeriodicPair",
    "SingularSystemError",
    "build",
    "classify",
    "family_d_pair",
    "monodromy",
    "singularity_x",
    "spectral",
    "two_pole_singular_x",
    "u_family_d",
    "u_two_pole",
    "verdict",
    "verify",
]
