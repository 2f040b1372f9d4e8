"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` which the command line
front end prints as ``error: <code>: <message>``.
"""


class Gi0Error(Exception):
    code = "error"


class DomainError(Gi0Error, ValueError):
    """An argument lies outside the domain of a function or model."""

    code = "domain"


class SampleTooSmallError(Gi0Error, ValueError):
    code = "sample_too_small"


class DegenerateSampleError(Gi0Error, ValueError):
    """Sample has zero variance or no positive observation."""

    code = "degenerate_sample"


class RasterError(Gi0Error):
    code = "raster"


class MissingSidecarError(RasterError):
    code = "missing_sidecar"


class DimensionMismatchError(RasterError):
    code = "dimension_mismatch"


class NegativeValueError(RasterError, ValueError):
    code = "negative_values"


class SidecarFormatError(RasterError):
    code = "bad_sidecar"


class RegionError(RasterError, ValueError):
    code = "bad_region"
