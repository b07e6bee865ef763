"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class BeliefError(ValueError):
    code = "belief_error"


class DuplicateLabel(BeliefError):
    code = "duplicate_label"


class FrameTooLarge(BeliefError):
    code = "frame_too_large"


class UnknownLabel(BeliefError):
    code = "unknown_label"


class NegativeMass(BeliefError):
    code = "negative_mass"


class MassSumViolation(BeliefError):
    code = "mass_sum_violation"


class WeightOutOfRange(BeliefError):
    code = "weight_out_of_range"


class InvalidRefinement(BeliefError):
    code = "invalid_refinement"


class NotAMassImage(BeliefError):
    code = "not_a_mass_image"


class FrameMismatch(BeliefError):
    code = "frame_mismatch"


class FrameTooLargeForOracle(BeliefError):
    code = "frame_too_large_for_oracle"


class FrameTooLargeForMatrix(BeliefError):
    code = "frame_too_large_for_matrix"


class UnsupportedFamily(BeliefError):
    code = "unsupported_family"


class InvalidSpec(BeliefError):
    code = "invalid_spec"


class CorpusTooLarge(BeliefError):
    code = "corpus_too_large"
