"""Exception hierarchy. Every error carries a machine-parsable ``code``."""

from __future__ import annotations


class SchemeWalkError(Exception):
    """Base class for all library errors."""

    code = "error"


class InvalidIntersectionArray(SchemeWalkError):
    code = "invalid_intersection_array"


class NonIntegerValency(SchemeWalkError):
    code = "non_integer_valency"


class DegenerateAtoms(SchemeWalkError):
    code = "degenerate_atoms"


# Same condition surfaced from the eigenstructure builder.
DuplicateAtoms = DegenerateAtoms


class EigensolverNoConvergence(SchemeWalkError):
    code = "eigensolver_no_convergence"


class InvalidOrder(SchemeWalkError):
    code = "invalid_order"


class UnsupportedOrder(SchemeWalkError):
    code = "unsupported_order"


class InvalidCycleType(SchemeWalkError):
    code = "invalid_cycle_type"


class ComplexClassesWithoutSymmetrization(SchemeWalkError):
    code = "complex_classes_without_symmetrization"


class NonRealGeneratingClass(SchemeWalkError):
    code = "non_real_generating_class"


class NonIntegerResult(SchemeWalkError):
    code = "non_integer_result"


class InfeasibleParameters(SchemeWalkError):
    code = "infeasible_parameters"


class UnknownCatalogName(SchemeWalkError):
    code = "unknown_catalog_name"


class BadParams(SchemeWalkError):
    code = "bad_params"


class BadParameter(SchemeWalkError):
    code = "bad_parameter"


class PoleProximity(SchemeWalkError):
    code = "pole_proximity"


class InconsistentInputs(SchemeWalkError):
    code = "inconsistent_inputs"


class DegenerateSpectrumUnmerged(SchemeWalkError):
    code = "degenerate_spectrum_unmerged"


class EngineSpecMismatch(SchemeWalkError):
    code = "engine_spec_mismatch"


class TooLarge(SchemeWalkError):
    code = "too_large"


class NonSymmetricGeneratingSet(SchemeWalkError):
    code = "non_symmetric_generating_set"


class NotDistanceRegular(SchemeWalkError):
    code = "not_distance_regular"


class SchemaError(SchemeWalkError):
    code = "schema_error"
