"""任意周期求解: p <= 42 取目录中的首个已知振荡器, p >= 43 合成 Snark 回路"""
from dataclasses import dataclass
from typing import Any, Dict, Optional

from catalog_utils.catalog_manager import CatalogManager, default_catalog
from life_utils.life_engine import Pattern
from life_utils.rle_codec import write_rle
from osc_utils.dynamics import DynamicsKind, DynamicsReport, detect_dynamics
from osc_utils.volatility import PeriodMismatchError
from .snark_loop import MIN_SNARK_PERIOD, synth_snark_loop


@dataclass(frozen=True)
class ResolvedOscillator:
    period: int
    pattern: Pattern
    provenance: str
    name: str
    report: DynamicsReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            'period': self.period,
            'provenance': self.provenance,
            'name': self.name,
            'population': self.pattern.population,
            'report': self.report.to_dict(),
            'rle': write_rle(self.pattern),
        }


def resolve_period(p: int, catalog: Optional[CatalogManager] = None) -> ResolvedOscillator:
    """返回一个经模拟验证、周期恰为 p 的振荡器"""
    if p < 1:
        raise ValueError(f'周期必须为正整数, 收到 {p}')
    if p >= MIN_SNARK_PERIOD:
        pattern = synth_snark_loop(p)
        provenance, name = 'snark-loop', f'p{p} Snark loop'
    else:
        entry = (catalog or default_catalog()).first_known(p)
        if entry is None:
            raise PeriodMismatchError(f'目录中没有周期 {p} 的图案')
        pattern = entry.pattern()
        provenance, name = 'catalog', entry.name

    report = detect_dynamics(pattern, max_gens=p)
    if report.kind != DynamicsKind.OSCILLATOR or report.period != p:
        raise PeriodMismatchError(f'{name} 实测为 {report.kind.value} 周期 {report.period}, 期望 {p}')
    return ResolvedOscillator(p, pattern, provenance, name, report)
