"""Search space: parameter domains, design-point encoding and decoding."""

from imcdse.modules.space.models import (
    PARAMETER_NAMES,
    CapacityOverflowError,
    DesignPoint,
    HardwareConfig,
    IndexOutOfDomainError,
    Mode,
    ParamDomain,
    SearchSpace,
    SpaceConfigError,
)
from imcdse.modules.space.service import (
    cell_capacity,
    clamp_voltage,
    decode,
    enumerate_points,
    from_real,
    load_space,
    max_point,
    median_point,
    point_values,
    random_point,
    real_bounds,
    space_size,
    to_real,
    validate_point,
)

__all__ = [
    "PARAMETER_NAMES",
    "CapacityOverflowError",
    "DesignPoint",
    "HardwareConfig",
    "IndexOutOfDomainError",
    "Mode",
    "ParamDomain",
    "SearchSpace",
    "SpaceConfigError",
    "cell_capacity",
    "clamp_voltage",
    "decode",
    "enumerate_points",
    "from_real",
    "load_space",
    "max_point",
    "median_point",
    "point_values",
    "random_point",
    "real_bounds",
    "space_size",
    "to_real",
    "validate_point",
]
