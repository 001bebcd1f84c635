"""Growth-regime diagnostics for positive annual time series.

Estimates empirical growth rates, fits linear rate-versus-size laws,
classifies logistic / exponential / pseudo-hyperbolic regimes and reports
early-warning signs such as an approaching finite-time singularity.
"""

from .errors import DivergenceError, FitError, GrowthError, SeriesError, SingularityError
from .series import TimeSeries, ValidationReport, load_series, validate_series, write_series, bundled_greece_path
from .rates import (
    PhaseSeries,
    RateCycle,
    RateSeries,
    direct_growth_rate,
    phase_series,
    rate_cycle_stats,
    refined_growth_rate,
)
from .regime import (
    LinearRateModel,
    RegimeClass,
    RegimeKind,
    SegmentSplit,
    classify_regime,
    detect_segments,
    fit_linear_rate_on_size,
    fit_linear_rate_on_time,
)
from .trajectory import (
    RateLaw,
    RatePolynomial,
    ReciprocalSeries,
    TrajectoryModel,
    anchor_trajectory,
    eval_trajectory,
    integrate_rate_ode,
    logistic_asymptote,
    reciprocal_series,
    singularity_time,
    trajectory_from_time_rate,
)
from .diagnostics import (
    ForecastRow,
    WarningReport,
    WarningThresholds,
    early_warning_report,
    forecast_scenarios,
)

__version__ = "0.1.0"
