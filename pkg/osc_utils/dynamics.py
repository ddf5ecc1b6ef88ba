"""振荡器/飞船识别模块"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from life_utils.life_engine import BoundingBox, D8Transform, LifeGrid, Pattern, PLANE

DEFAULT_MAX_GENS = 4096


class DynamicsKind(str, Enum):
    OSCILLATOR = 'oscillator'
    SPACESHIP = 'spaceship'
    UNRESOLVED = 'unresolved'


@dataclass(frozen=True)
class DynamicsReport:
    kind: DynamicsKind
    period: Optional[int]
    displacement: Optional[Tuple[int, int]]
    generations_examined: int
    min_population: Optional[int] = None
    max_population: Optional[int] = None
    cycle_bounding_box: Optional[BoundingBox] = None
    preperiod: Optional[int] = None
    note: str = ''

    @property
    def is_periodic(self) -> bool:
        return self.kind != DynamicsKind.UNRESOLVED

    def transformed(self, g: D8Transform) -> 'DynamicsReport':
        """对图案作用 g 后应得到的报告: 位移与包围盒协变, 类型与周期不变"""
        displacement = None if self.displacement is None else g.apply_vector(*self.displacement)
        box = self.cycle_bounding_box
        if box is not None:
            ax, ay = g.apply(box[0], box[1])
            bx, by = g.apply(box[2], box[3])
            box = (min(ax, bx), min(ay, by), max(ax, bx), max(ay, by))
        return replace(self, displacement=displacement, cycle_bounding_box=box)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'period': self.period,
            'displacement': list(self.displacement) if self.displacement is not None else None,
            'generations_examined': self.generations_examined,
            'min_population': self.min_population,
            'max_population': self.max_population,
            'cycle_bounding_box': list(self.cycle_bounding_box) if self.cycle_bounding_box else None,
            'preperiod': self.preperiod,
            'note': self.note,
        }


def _union_box(boxes) -> Optional[BoundingBox]:
    boxes = [b for b in boxes if b is not None]
    if not boxes:
        return None
    return (min(b[0] for b in boxes), min(b[1] for b in boxes),
            max(b[2] for b in boxes), max(b[3] for b in boxes))


def detect_dynamics(pattern: Pattern, max_gens: int = DEFAULT_MAX_GENS) -> DynamicsReport:
    """在平面上模拟至多 max_gens 代, 以初始代的首次复现判定周期

    以平移归一化后的形状为键记录每一代。初始代在偏移 0 处复现为振荡器,
    在非零偏移处复现为飞船; 若先复现的是后续某代, 说明存在前周期, 报告未决。
    """
    if max_gens <= 0:
        raise ValueError(f'max_gens 必须为正整数, 收到 {max_gens}')

    state = LifeGrid.from_pattern(pattern, PLANE)
    origin = (state.x0, state.y0)
    initial_key = state.shape_key()
    seen = {initial_key: 0}
    populations = [state.population]
    boxes = [state.bounding_box()]

    for t in range(1, max_gens + 1):
        state = state.advance()
        key = state.shape_key()
        if key == initial_key:
            displacement = (state.x0 - origin[0], state.y0 - origin[1])
            if pattern.is_empty():
                displacement = (0, 0)
            kind = DynamicsKind.OSCILLATOR if displacement == (0, 0) else DynamicsKind.SPACESHIP
            return DynamicsReport(
                kind=kind,
                period=t,
                displacement=displacement,
                generations_examined=t,
                min_population=min(populations),
                max_population=max(populations),
                cycle_bounding_box=_union_box(boxes),
            )
        if key in seen:
            start = seen[key]
            return DynamicsReport(
                kind=DynamicsKind.UNRESOLVED,
                period=None,
                displacement=None,
                generations_examined=t,
                preperiod=start,
                note=f'第 {start} 代起进入长度 {t - start} 的循环, 初始代不在循环内',
            )
        seen[key] = t
        populations.append(state.population)
        boxes.append(state.bounding_box())

    return DynamicsReport(
        kind=DynamicsKind.UNRESOLVED,
        period=None,
        displacement=None,
        generations_examined=max_gens,
        note=f'{max_gens} 代内未出现复现',
    )
