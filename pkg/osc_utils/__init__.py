# Oscillator analysis utilities package
from .dynamics import DynamicsKind, DynamicsReport, detect_dynamics, DEFAULT_MAX_GENS
from .volatility import (
    CellPeriodMap, PeriodMismatchError, VolatilityStats,
    cell_period_map, phase_stack, volatility_stats,
)

__all__ = [
    'DynamicsKind', 'DynamicsReport', 'detect_dynamics', 'DEFAULT_MAX_GENS',
    'CellPeriodMap', 'PeriodMismatchError', 'VolatilityStats',
    'cell_period_map', 'phase_stack', 'volatility_stats',
]
