"""Belief functions on finite frames: transforms, combination rules, distances and conflict."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .frame import (
    Frame,
    MassFunction,
    categorical,
    frame_of_size,
    make_frame,
    mass_from_assignments,
    members_of,
    negation,
    refine,
    simple,
    subset_of,
    total_conflict,
    vacuous,
)
from .transforms import (
    SetFunction,
    contour,
    mass_of,
    to_belief,
    to_commonality,
    to_family,
    to_implicability,
    to_plausibility,
)
from .fusion import (
    combine_bruteforce,
    condition,
    conjunctive,
    disjunctive,
    generalization_matrix,
    leq_info,
    specialization_matrix,
)
from .alpha import AlphaSetFunction, alpha_combine, from_alpha, to_alpha
from .metrics import (
    INF,
    DistanceSpec,
    diameter_rho,
    distance,
    f_distance,
    generalization_distance,
    jousselme,
    set_distance,
    specialization_distance,
)
from .conflict import conflict_report, distance_conflict, kappa, nonconflict, phi, strong_conflict_K, strong_phi
from .random_gen import GenSpec, make_rng, random_mass, substream
