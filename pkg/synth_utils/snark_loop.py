#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Snark 回路合成 - 对任意 p >= 43 构造周期恰为 p 的振荡器

四个 Snark 围成对角矩形, 宽 n 条对角线、高 m 条对角线:
    n = (p - 1) // 2, m = p - 1 - n
滑翔机绕行一周耗时 4 * (2n + 2m) + 8 = 8p 代, 均匀放入 8 个滑翔机即得周期 p。
几何参数 (反射器朝向/偏移、每条边的拖尾参考滑翔机) 来自 snark_geometry.yaml,
以 p43 参考回路为原点框架, 随 n、m 平移拉伸。合成结果在返回前必须经模拟验证。

用法:
    from synth_utils.snark_loop import synth_snark_loop
    pattern = synth_snark_loop(100)
"""

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from alert_utils.console_logger import log_error
from life_utils.life_engine import D8Transform, Pattern, PLANE, naive_step, step_n, transform
from life_utils.rle_codec import parse_rle_body
from osc_utils.dynamics import DynamicsKind, detect_dynamics

GEOMETRY_PATH = Path(__file__).parent / 'snark_geometry.yaml'
MIN_SNARK_PERIOD = 43
GLIDER_PERIOD = 4
GLIDERS_PER_LOOP = 8


class SnarkLoopError(ValueError):
    """请求的周期无法用 Snark 回路实现"""


class LoopVerificationError(RuntimeError):
    """合成结果未通过模拟验证"""

    def __init__(self, message: str, spec: 'SnarkLoopSpec'):
        super().__init__(message)
        self.spec = spec


@dataclass(frozen=True)
class SnarkFixture:
    """Snark 反射器夹具: 静态细胞 (回路框架坐标) 与元数据"""
    pattern: Pattern
    repeat_time: int
    reflection_delay: int
    input_direction: Tuple[int, int]
    output_direction: Tuple[int, int]

    def is_still_life(self) -> bool:
        return naive_step(self.pattern) == self.pattern


@dataclass(frozen=True)
class GliderInsertion:
    leg: int
    leg_time: int      # 相对该边拖尾参考滑翔机的代数
    phase: int         # 滑翔机相位 0..3
    lane_position: int  # 沿行进方向相对参考滑翔机的对角线步数
    cells: Pattern


@dataclass(frozen=True)
class SnarkLoopSpec:
    p: int
    n: int
    m: int
    phase_offset: int
    reflector_placements: Tuple[D8Transform, ...]
    glider_insertions: Tuple[GliderInsertion, ...]

    @property
    def traversal_time(self) -> int:
        return 8 * (self.n + self.m + 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'n': self.n,
            'm': self.m,
            'traversal_time': self.traversal_time,
            'phase_offset': self.phase_offset,
            'reflectors': [
                {'element': g.element, 'dx': g.dx, 'dy': g.dy} for g in self.reflector_placements
            ],
            'gliders': [
                {'leg': gi.leg, 'leg_time': gi.leg_time, 'phase': gi.phase, 'lane_position': gi.lane_position}
                for gi in self.glider_insertions
            ],
        }


@lru_cache(maxsize=4)
def load_geometry(path: Path = GEOMETRY_PATH) -> Dict[str, Any]:
    """加载回路几何参数"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f)
    except Exception as e:
        log_error(f'加载 Snark 几何文件失败: {e}')
        raise


def load_fixture(path: Path = GEOMETRY_PATH) -> SnarkFixture:
    snark = load_geometry(path)['snark']
    ox, oy = snark['origin']
    return SnarkFixture(
        pattern=parse_rle_body(snark['rle']).translate(ox, oy),
        repeat_time=snark['repeat_time'],
        reflection_delay=snark['reflection_delay'],
        input_direction=tuple(snark['input_direction']),
        output_direction=tuple(snark['output_direction']),
    )


def verify_fixture(path: Path = GEOMETRY_PATH) -> SnarkFixture:
    """加载夹具并确认反射器是静物"""
    fixture = load_fixture(path)
    if not fixture.is_still_life():
        raise SnarkLoopError('Snark 夹具不是静物, 几何文件可能已损坏')
    return fixture


def _shift(item: Dict[str, Any], k: int, j: int) -> Tuple[int, int]:
    kx, ky = item['shift_k']
    jx, jy = item['shift_j']
    return kx * k + jx * j, ky * k + jy * j


def _locate(s: int, starts: List[int], windows: List[Tuple[int, int]], total: int) -> Optional[Tuple[int, int]]:
    """找出绕行时刻 s 的滑翔机可放置的边与边内时刻; 多个候选时取最后一个"""
    found = None
    for leg, (lo, hi) in enumerate(windows):
        for wrap in (-total, 0, total):
            r = s + wrap - starts[leg]
            if lo <= r <= hi:
                found = (leg, r)
    return found


def plan_snark_loop(p: int, path: Path = GEOMETRY_PATH) -> SnarkLoopSpec:
    """根据周期计算反射器放置与 8 个滑翔机的插入位置"""
    if p < MIN_SNARK_PERIOD:
        raise SnarkLoopError(f'Snark 回路只能实现 p >= {MIN_SNARK_PERIOD} 的周期, 收到 {p}; 请改用 resolve_period')
    geometry = load_geometry(path)
    loop = geometry['loop']
    n = (p - 1) // 2
    m = p - 1 - n
    k = n - loop['base_diagonals']
    j = m - loop['base_diagonals']
    stretch = {'k': k, 'j': j}

    placements = []
    for reflector in loop['reflectors']:
        ox, oy = reflector['offset']
        sx, sy = _shift(reflector, k, j)
        placements.append(D8Transform(reflector['orientation'], ox + sx, oy + sy))

    legs = loop['legs']
    lo, hi = loop['safe_window']
    lengths = [loop['base_leg_length'] + GLIDER_PERIOD * stretch[leg['stretch']] for leg in legs]
    windows = [(lo, hi + GLIDER_PERIOD * stretch[leg['stretch']]) for leg in legs]
    starts = [sum(lengths[:i]) for i in range(len(legs))]
    total = 8 * p

    for offset in range(p):
        slots = [_locate((offset + i * p) % total, starts, windows, total) for i in range(GLIDERS_PER_LOOP)]
        if all(slots):
            break
    else:
        raise SnarkLoopError(f'p{p}: 找不到让 8 个滑翔机都落在安全窗口内的相位')

    insertions = []
    for leg_index, r in slots:
        leg = legs[leg_index]
        lane, phase = divmod(r, GLIDER_PERIOD)
        dx, dy = leg['direction']
        sx, sy = _shift(leg, k, j)
        base = Pattern(tuple(c) for c in leg['trailing_glider'])
        cells = step_n(base, PLANE, phase).translate(sx + lane * dx, sy + lane * dy)
        insertions.append(GliderInsertion(leg_index, r, phase, lane, cells))

    return SnarkLoopSpec(p, n, m, offset, tuple(placements), tuple(insertions))


def build_snark_loop(spec: SnarkLoopSpec, fixture: Optional[SnarkFixture] = None) -> Pattern:
    """按规格拼出回路图案 (不做验证)"""
    fixture = fixture or load_fixture()
    cells = set()
    for g in spec.reflector_placements:
        cells |= transform(fixture.pattern, g).cells
    for glider in spec.glider_insertions:
        cells |= glider.cells.cells
    return Pattern(cells)


def verify_snark_loop(spec: SnarkLoopSpec, pattern: Pattern):
    """校验规格算术与模拟周期, 失败时抛出 LoopVerificationError"""
    if spec.n + spec.m + 1 != spec.p or spec.n <= 13 or spec.m <= 13:
        raise LoopVerificationError(f'p{spec.p}: n={spec.n}, m={spec.m} 不满足回路算术约束', spec)
    if spec.traversal_time != 8 * spec.p:
        raise LoopVerificationError(f'p{spec.p}: 绕行时间 {spec.traversal_time} != 8p', spec)
    report = detect_dynamics(pattern, max_gens=spec.p)
    if report.kind != DynamicsKind.OSCILLATOR or report.period != spec.p:
        raise LoopVerificationError(
            f'p{spec.p}: 模拟结果为 {report.kind.value} 周期 {report.period}, 与目标不符', spec)


def synth_snark_loop(p: int) -> Pattern:
    """构造并验证周期为 p 的 Snark 回路"""
    spec = plan_snark_loop(p)
    pattern = build_snark_loop(spec)
    verify_snark_loop(spec, pattern)
    return pattern
