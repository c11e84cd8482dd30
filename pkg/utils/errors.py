"""Exception types shared across straincast.

Entry scripts map these to process exit codes; library code only raises.
"""


class StraincastError(Exception):
    """Base class for all straincast errors"""
    exit_code = 2


class UsageError(StraincastError):
    """Bad command-line flags or arguments"""
    exit_code = 1


class DataError(StraincastError):
    """Malformed input data: CSV structure, missing channels, bad values"""
    exit_code = 2


class ShapeError(DataError, ValueError):
    """Array dimensions do not agree with each other or with a config"""
    pass


class ArtifactError(DataError):
    """A model artifact failed validation; `field` names the offending entry"""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class NumericDivergenceError(StraincastError):
    """Loss or parameters became non-finite"""
    exit_code = 3
