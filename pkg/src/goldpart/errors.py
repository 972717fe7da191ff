"""Exception types shared across the package."""


class GoldpartError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(GoldpartError, ValueError):
    """Invalid configuration: bad pair, bad limit, conflicting options."""


class RangeError(GoldpartError, ValueError):
    """A value is outside the range a component can answer for."""


class InvalidClassError(GoldpartError, ValueError):
    """Residue class (m, r) is not reduced or is out of range."""


class AdmissibilityError(GoldpartError, ValueError):
    """An operation that requires an admissible n was given an inadmissible one."""


class ResourceError(GoldpartError):
    """A memory or size budget would be exceeded."""


class CheckpointError(GoldpartError):
    """Checkpoint file is missing fields, corrupt, or fails its checksum."""


class InputError(GoldpartError, ValueError):
    """Malformed caller input: duplicate pairs, mismatched rank tables, bad CSV."""
