#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
随机汤普查 - 在环面上把随机汤演化到循环, 分离灰烬中的对象并计数

随机数 (按位固定, 可跨实现复现):
    xorshift64:  x ^= x << 13; x ^= x >> 7; x ^= x << 17   (均取低 64 位)
    状态为 0 时以 0x9E3779B97F4A7C15 代替
    mix(seed, i): splitmix64 终结函数作用于 seed + (i + 1) * 0x9E3779B97F4A7C15
    细胞按行优先 (先 y 后 x) 逐个抽样: 推进一次状态, 取高 53 位 u,
    当 u < floor(density * 2^53) 时该细胞存活
汤放在环面中央: 偏移 ((W - w) // 2, (H - h) // 2)。
"""

from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Tuple

from alert_utils.console_logger import log_census_summary, log_progress
from life_utils.life_engine import Cell, D8Transform, LifeGrid, Pattern, PLANE, Torus, iter_phases, step_n, transform
from life_utils.rle_codec import encode_body, parse_rle_body
from osc_utils.dynamics import DynamicsKind, detect_dynamics

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
DEFAULT_DENSITY = Fraction(3, 8)
UNRESOLVED_KEY = 'unresolved'
SPACESHIP_MAX_PERIOD = 16

# 内置对象字典: 名称 -> RLE 主体
OBJECT_DICTIONARY = {
    'block': '2o$2o!',
    'blinker': '3o!',
    'beehive': 'b2o$o2bo$b2o!',
    'loaf': 'b2o$o2bo$bobo$2bo!',
    'boat': '2o$obo$bo!',
    'tub': 'bo$obo$bo!',
    'pond': 'b2o$o2bo$o2bo$b2o!',
    'ship': '2o$obo$b2o!',
    'glider': 'bo$2bo$3o!',
}
_DICTIONARY_PERIODS = {'blinker': 2, 'glider': 4}


class UnresolvedCycleError(RuntimeError):
    """代数上限内没有进入循环"""

    def __init__(self, generations: int):
        super().__init__(f'{generations} 代内未检测到重复状态')
        self.generations = generations


def xorshift64(state: int) -> int:
    state ^= (state << 13) & MASK64
    state ^= state >> 7
    state ^= (state << 17) & MASK64
    return state & MASK64


def mix(seed: int, index: int) -> int:
    """由总种子与汤序号派生单个汤的种子 (splitmix64)"""
    z = (seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def random_soup(seed: int, width: int, height: int, density=DEFAULT_DENSITY) -> Pattern:
    """在 [0, width) × [0, height) 内生成确定性随机汤"""
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ValueError(f'密度须在 [0, 1] 内, 收到 {density}')
    threshold = int(density * (1 << 53))
    state = (seed & MASK64) or GOLDEN_GAMMA
    cells = []
    for y in range(height):
        for x in range(width):
            state = xorshift64(state)
            if (state >> 11) < threshold:
                cells.append((x, y))
    return Pattern(cells)


@dataclass(frozen=True)
class CycleResult:
    preperiod: int
    period: int
    cycle_phase: Pattern


def run_to_cycle(pattern: Pattern, torus: Torus, max_gens: int) -> CycleResult:
    """用状态摘要检测首个重复状态, 返回进入循环的代数、循环长度与首个循环内状态"""
    state = LifeGrid.from_pattern(pattern, torus)
    seen = {state.digest(): 0}
    history = [state]
    for t in range(1, max_gens + 1):
        state = state.advance()
        key = state.digest()
        if key in seen:
            start = seen[key]
            return CycleResult(start, t - start, history[start].to_pattern())
        seen[key] = t
        history.append(state)
    raise UnresolvedCycleError(max_gens)


def _unwrap_axis(values: Iterable[int], size: int) -> int:
    """环面上一维坐标集合的展开偏移: 让最大空隙落在边界上"""
    points = sorted(set(values))
    if len(points) >= size:
        return 0
    best_gap, best_start = -1, points[0]
    for i, v in enumerate(points):
        nxt = points[(i + 1) % len(points)] + (size if i + 1 == len(points) else 0)
        gap = nxt - v - 1
        if gap > best_gap:
            best_gap, best_start = gap, points[(i + 1) % len(points)]
    return -best_start


def unwrap(cells: Iterable[Cell], torus: Optional[Torus]) -> Pattern:
    """把环面上的一组细胞展开成平面图案 (平面时原样返回)"""
    cells = list(cells)
    if torus is None or not cells:
        return Pattern(cells)
    sx = _unwrap_axis((x for x, _ in cells), torus.width)
    sy = _unwrap_axis((y for _, y in cells), torus.height)
    return Pattern(((x + sx) % torus.width, (y + sy) % torus.height) for x, y in cells)


def canonical_form(phases: List[Pattern]) -> Pattern:
    """所有相位与 D8 变换下规范化到原点后字典序最小的细胞集合"""
    best = None
    best_key = None
    for phase in phases:
        if phase.is_empty():
            continue
        for element in range(8):
            image = transform(phase, D8Transform(element)).normalize()
            key = sorted(image.cells)
            if best_key is None or key < best_key:
                best, best_key = image, key
    return best if best is not None else Pattern()


@lru_cache(maxsize=1)
def dictionary_forms() -> Dict[str, str]:
    """规范形 RLE -> 名称"""
    forms = {}
    for name, body in OBJECT_DICTIONARY.items():
        pattern = parse_rle_body(body)
        phases = list(iter_phases(pattern, PLANE, _DICTIONARY_PERIODS.get(name, 1)))
        forms[encode_body(canonical_form(phases))] = name
    return forms


@dataclass(frozen=True)
class AshObject:
    pattern: Pattern
    canonical: str
    name: Optional[str]

    @property
    def label(self) -> str:
        return self.name or self.canonical


def _components(union: set, torus: Optional[Torus]) -> List[List[Cell]]:
    """8 连通分量, 环面上邻接按模回绕"""
    remaining = set(union)
    components = []
    for start in sorted(union):
        if start not in remaining:
            continue
        remaining.discard(start)
        queue = deque([start])
        component = [start]
        while queue:
            x, y = queue.popleft()
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    nx, ny = x + dx, y + dy
                    if torus is not None:
                        nx, ny = nx % torus.width, ny % torus.height
                    if (nx, ny) in remaining:
                        remaining.discard((nx, ny))
                        queue.append((nx, ny))
                        component.append((nx, ny))
        components.append(sorted(component))
    return components


def _split_spaceships(phase: Pattern, torus: Optional[Torus]) -> Tuple[List[Tuple[Pattern, int]], Pattern]:
    """取出单相位中独立运动的飞船分量, 返回 (飞船及其周期, 其余细胞)

    环面上飞船的跨相位并集是一条回绕的斜带, 不能再按并集切分。
    分量在平面上单独演化须是飞船, 且在原环面状态中确实整体平移。
    """
    topology = torus if torus is not None else PLANE
    ships, rest = [], set(phase.cells)
    for component in _components(phase.cells, torus):
        body = unwrap(component, torus)
        report = detect_dynamics(body, max_gens=SPACESHIP_MAX_PERIOD)
        if report.kind != DynamicsKind.SPACESHIP:
            continue
        dx, dy = report.displacement
        moved = step_n(phase, topology, report.period).cells
        if torus is not None:
            shifted = {((x + dx) % torus.width, (y + dy) % torus.height) for x, y in component}
        else:
            shifted = {(x + dx, y + dy) for x, y in component}
        if shifted <= moved:
            ships.append((body, report.period))
            rest -= set(component)
    return ships, Pattern(rest)


def separate_objects(cycle_phase: Pattern, period: int, torus: Optional[Torus] = None) -> List[AshObject]:
    """以所有相位活细胞并集的 8 连通性切分对象, 并规范化、查字典"""
    topology = torus if torus is not None else PLANE
    forms = dictionary_forms()
    objects = []

    ships, rest = _split_spaceships(cycle_phase, torus)
    for body, ship_period in ships:
        canonical = encode_body(canonical_form(list(iter_phases(body, PLANE, ship_period))))
        objects.append(AshObject(pattern=body, canonical=canonical, name=forms.get(canonical)))

    phases = list(iter_phases(rest, topology, period))
    union = set()
    for phase in phases:
        union |= phase.cells

    for component in _components(union, torus):
        members = set(component)
        object_phases = [unwrap(phase.cells & members, torus) for phase in phases]
        canonical = encode_body(canonical_form(object_phases))
        objects.append(AshObject(
            pattern=unwrap(phases[0].cells & members, torus),
            canonical=canonical,
            name=forms.get(canonical),
        ))
    return objects


@dataclass(frozen=True)
class SoupConfig:
    seed: int
    soup_width: int
    soup_height: int
    torus: Torus
    density: Fraction = DEFAULT_DENSITY
    max_gens: int = 2048
    soup_count: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'density', Fraction(self.density))
        if self.soup_width > self.torus.width or self.soup_height > self.torus.height:
            raise ValueError('汤的尺寸不能超过环面')
        if self.soup_width <= 0 or self.soup_height <= 0 or self.max_gens <= 0 or self.soup_count < 0:
            raise ValueError('汤尺寸与代数上限须为正, 汤数不能为负')
        if not 0 <= self.density <= 1:
            raise ValueError(f'密度须在 [0, 1] 内, 收到 {self.density}')

    def to_dict(self) -> Dict[str, Any]:
        return {
            'seed': self.seed,
            'soup_size': [self.soup_width, self.soup_height],
            'torus': [self.torus.width, self.torus.height],
            'density': float(self.density),
            'max_gens': self.max_gens,
            'soups': self.soup_count,
        }


@dataclass
class CensusTally:
    objects: Counter = field(default_factory=Counter)
    soups: int = 0
    unresolved: int = 0
    periods: Counter = field(default_factory=Counter)
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def total_objects(self) -> int:
        return sum(self.objects.values())

    def merge(self, other: 'CensusTally'):
        self.objects.update(other.objects)
        self.periods.update(other.periods)
        self.soups += other.soups
        self.unresolved += other.unresolved

    def named(self) -> Dict[str, int]:
        """只保留字典内对象的计数"""
        names = set(OBJECT_DICTIONARY)
        return {k: v for k, v in self.objects.items() if k in names}

    def ranked(self, counts: Optional[Dict[str, int]] = None) -> List[Tuple[str, int]]:
        counts = self.objects if counts is None else counts
        return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))

    def to_dict(self) -> Dict[str, Any]:
        objects = dict(self.ranked())
        if self.unresolved:
            objects[UNRESOLVED_KEY] = self.unresolved
        return {
            'objects': objects,
            'soups': self.soups,
            'unresolved': self.unresolved,
            'periods': {str(k): v for k, v in sorted(self.periods.items())},
            'config': self.config,
        }


def soup_offset(cfg: SoupConfig) -> Tuple[int, int]:
    return (cfg.torus.width - cfg.soup_width) // 2, (cfg.torus.height - cfg.soup_height) // 2


def census_soup(cfg: SoupConfig, index: int) -> CensusTally:
    """处理单个汤"""
    tally = CensusTally(soups=1)
    soup = random_soup(mix(cfg.seed, index), cfg.soup_width, cfg.soup_height, cfg.density)
    soup = soup.translate(*soup_offset(cfg))
    try:
        cycle = run_to_cycle(soup, cfg.torus, cfg.max_gens)
    except UnresolvedCycleError:
        tally.unresolved = 1
        return tally
    tally.periods[cycle.period] += 1
    for obj in separate_objects(cycle.cycle_phase, cycle.period, cfg.torus):
        tally.objects[obj.label] += 1
    return tally


def _census_chunk(cfg: SoupConfig, indices: List[int]) -> CensusTally:
    tally = CensusTally()
    for i in indices:
        tally.merge(census_soup(cfg, i))
    return tally


def run_census(cfg: SoupConfig, jobs: int = 1) -> CensusTally:
    """普查结果只取决于 cfg, 与并行度无关"""
    indices = list(range(cfg.soup_count))
    chunk_count = max(1, min(len(indices), jobs * 8))
    chunks = [indices[i::chunk_count] for i in range(chunk_count)] if indices else []
    tally = CensusTally(config=cfg.to_dict())
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for done, part in enumerate(pool.map(_census_chunk, [cfg] * len(chunks), chunks), 1):
                tally.merge(part)
                log_progress(done, len(chunks), '普查分块')
    else:
        for done, chunk in enumerate(chunks, 1):
            tally.merge(_census_chunk(cfg, chunk))
            log_progress(done, len(chunks), '普查分块')
    log_census_summary(tally.soups, tally.unresolved, dict(tally.ranked(tally.named())[:5]))
    return tally
