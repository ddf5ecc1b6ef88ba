"""LCM 振荡器拼接: 将两个互不作用的振荡器并排放置, 周期为两者的最小公倍数"""
from dataclasses import dataclass
from math import lcm
from typing import Any, Dict, List, Tuple

from life_utils.life_engine import Pattern, iter_phases
from life_utils.rle_codec import write_rle
from osc_utils.dynamics import DynamicsKind, DynamicsReport, detect_dynamics
from osc_utils.volatility import PeriodMismatchError, VolatilityStats, volatility_stats

DEFAULT_GAP = 3


class CompositionError(RuntimeError):
    """拼接后两个部件发生了相互作用"""


@dataclass(frozen=True)
class Composite:
    pattern: Pattern
    period: int
    offset: Tuple[int, int]
    stats: VolatilityStats

    def to_dict(self) -> Dict[str, Any]:
        return {
            'period': self.period,
            'offset': list(self.offset),
            'population': self.pattern.population,
            'volatility': self.stats.to_dict(),
            'rle': write_rle(self.pattern),
        }


def _verified_report(pattern: Pattern, period: int) -> DynamicsReport:
    report = detect_dynamics(pattern, max_gens=period)
    if report.kind != DynamicsKind.OSCILLATOR or report.period != period:
        raise PeriodMismatchError(f'部件不是周期 {period} 的振荡器 (实测 {report.kind.value} {report.period})')
    return report


def compose_lcm(a: Pattern, pa: int, b: Pattern, pb: int, gap: int = DEFAULT_GAP) -> Composite:
    """平移 b 使两者的周期包围盒之间至少隔 gap 列死细胞, 再模拟验证

    Args:
        a, pa: 第一个振荡器及其周期
        b, pb: 第二个振荡器及其周期
        gap: 两个包围盒之间的死列数, 发生相互作用时调用方可加大后重试

    Returns:
        Composite: 拼接图案、周期、b 的平移量与易变性统计
    """
    box_a = _verified_report(a, pa).cycle_bounding_box
    box_b = _verified_report(b, pb).cycle_bounding_box
    if box_a is None or box_b is None:
        offset = (0, 0)
    else:
        offset = (box_a[2] + gap + 1 - box_b[0], box_a[1] - box_b[1])
    moved = b.translate(*offset)
    composite = a | moved
    period = lcm(pa, pb)

    phases_a: List[Pattern] = list(iter_phases(a, count=pa))
    phases_b: List[Pattern] = list(iter_phases(moved, count=pb))
    for t, phase in enumerate(iter_phases(composite, count=period)):
        if phase != phases_a[t % pa] | phases_b[t % pb]:
            raise CompositionError(f'第 {t} 代两个部件发生相互作用, 可加大间隔 (当前 {gap}) 后重试')

    report = detect_dynamics(composite, max_gens=period)
    if report.kind != DynamicsKind.OSCILLATOR or report.period != period:
        raise CompositionError(f'拼接结果周期为 {report.period}, 期望 lcm({pa}, {pb}) = {period}')
    return Composite(composite, period, offset, volatility_stats(composite, period))
