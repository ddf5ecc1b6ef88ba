"""振荡器细胞周期、转子/定子与易变性统计"""
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from life_utils.life_engine import Cell, LifeGrid, Pattern, PLANE


class PeriodMismatchError(ValueError):
    """图案在给定周期后没有回到自身"""


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def phase_stack(pattern: Pattern, period: int) -> Tuple[np.ndarray, int, int]:
    """返回 (形状为 [period, H, W] 的各代布尔数组, 原点 x0, 原点 y0)

    数组覆盖一个周期内所有代的包围盒并集。
    """
    if period <= 0:
        raise ValueError(f'周期必须为正整数, 收到 {period}')
    state = LifeGrid.from_pattern(pattern, PLANE)
    phases = []
    for _ in range(period):
        phases.append(state)
        state = state.advance()
    if state.to_pattern() != pattern:
        raise PeriodMismatchError(f'图案经过 {period} 代后未回到初始状态')

    boxes = [s.bounding_box() for s in phases if s.bounding_box() is not None]
    if not boxes:
        return np.zeros((period, 0, 0), dtype=bool), 0, 0
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    stack = np.zeros((period, y1 - y0 + 1, x1 - x0 + 1), dtype=bool)
    for i, s in enumerate(phases):
        h, w = s.grid.shape
        if h:
            stack[i, s.y0 - y0:s.y0 - y0 + h, s.x0 - x0:s.x0 - x0 + w] = s.grid
    return stack, x0, y0


class CellPeriodMap(Mapping):
    """细胞 -> 细胞周期; 定义域为至少在一代中存活的细胞"""

    def __init__(self, period: int, periods: Dict[Cell, int], always_alive: Iterable[Cell]):
        self.period = period
        self._periods = dict(periods)
        self.always_alive = frozenset(always_alive)

    def __getitem__(self, cell: Cell) -> int:
        return self._periods[tuple(cell)]

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self._periods))

    def __len__(self) -> int:
        return len(self._periods)

    def restrict(self, cells: Iterable[Cell]) -> Dict[Cell, int]:
        return {c: self._periods[c] for c in cells if c in self._periods}

    def is_stator(self, cell: Cell) -> bool:
        return cell in self.always_alive and self._periods.get(cell) == 1


def cell_period_map(pattern: Pattern, period: int) -> CellPeriodMap:
    """计算每个细胞的最小周期 (周期的因子)"""
    stack, x0, y0 = phase_stack(pattern, period)
    alive_any = stack.any(axis=0)
    alive_all = stack.all(axis=0)
    result = np.zeros(alive_any.shape, dtype=np.int64)
    for d in divisors(period):
        repeats = np.all(stack == np.roll(stack, -d, axis=0), axis=0)
        result[repeats & alive_any & (result == 0)] = d

    periods = {}
    always = []
    for y, x in np.argwhere(alive_any):
        cell = (int(x) + x0, int(y) + y0)
        periods[cell] = int(result[y, x])
        if alive_all[y, x]:
            always.append(cell)
    return CellPeriodMap(period, periods, always)


@dataclass(frozen=True)
class VolatilityStats:
    period: int
    rotor_cell_count: int
    stator_cell_count: int
    volatility: Fraction
    strictly_volatile: bool
    trivial: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'period': self.period,
            'rotor_cell_count': self.rotor_cell_count,
            'stator_cell_count': self.stator_cell_count,
            'volatility': float(self.volatility),
            'volatility_ratio': f'{self.volatility.numerator}/{self.volatility.denominator}',
            'strictly_volatile': self.strictly_volatile,
            'trivial': self.trivial,
        }


def volatility_stats(pattern: Pattern, period: int,
                     periods: Optional[CellPeriodMap] = None) -> VolatilityStats:
    """转子/定子计数与易变性

    定子: 所有代都存活且细胞周期为 1 的细胞; 其余为转子。
    严格易变: 非空、周期大于 1 且每个细胞都以完整周期振荡。
    平凡: 非空且没有任何细胞以完整周期振荡。
    """
    if periods is None:
        periods = cell_period_map(pattern, period)
    stator = sum(1 for c in periods if periods.is_stator(c))
    rotor = len(periods) - stator
    total = rotor + stator
    values = [periods[c] for c in periods]
    return VolatilityStats(
        period=period,
        rotor_cell_count=rotor,
        stator_cell_count=stator,
        volatility=Fraction(rotor, total) if total else Fraction(0),
        strictly_volatile=bool(values) and period > 1 and all(v == period for v in values),
        trivial=bool(values) and all(v != period for v in values),
    )
