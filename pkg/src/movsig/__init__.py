"""Movable signals: carrier-frequency optimisation for smart radio environments."""

__version__ = "0.1.0"

from .channel import (  # noqa: E402
    SPEED_OF_LIGHT,
    TwoRayEnvironment,
    array_gain,
    cascaded_channel,
    fis_link_channel,
    los_channel,
    path_gain,
    radiation_pattern_los,
    radiation_pattern_nlos,
    steering_vector,
    two_ray_channel,
    wavelength,
)
from .freqplan import (  # noqa: E402
    ANY_FREQUENCY,
    CoverageReport,
    FrequencyRange,
    OptimalFrequency,
    array_frequency,
    cophasing_residual,
    coverage_los,
    coverage_nlos,
    coverage_numeric_check,
    optimal_frequency_los,
    optimal_frequency_nlos,
)
from .geometry import FarFieldLink, UlaGeometry, element_distance, element_positions  # noqa: E402
from .protocol import (  # noqa: E402
    LosScenario,
    NlosScenario,
    SelectionResult,
    SubchannelGrid,
    pilot_sweep,
    received_power,
    subchannel_grid,
    upper_bound,
)
from .reconfig import (  # noqa: E402
    egt_exhaustive,
    egt_ideal,
    egt_one_bit,
    fis_matrix,
    ris_one_bit,
    ris_one_bit_exhaustive,
    ris_optimal,
    uniform_precoder,
)
from .results import ResultTable  # noqa: E402
