#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
催化剂穷举搜索 - 在活动区周围放置静物催化剂, 寻找使整体成为振荡器的摆放

放置单元: (催化剂, D8 朝向, 放置框内偏移) 的一个具体细胞集合, 相同细胞集合只保留一个;
C2 模式下单元是一对关于中心旋转 180° 的像。每个单元有一圈光环: 距其细胞切比雪夫距离
不超过 2 的全部格子。光环外的活动细胞与该单元之间不存在共同邻居, 互不影响。

即时放置 (just in time):
    分支沿时间推进, 记 R_t = 状态 Δ 已放置催化剂细胞。单元只在 R_t 首次进入其光环的
    那一代被考虑; 在该代没被放下的单元此后永久排除。这样每个单元组合恰好沿一条路径
    被访问一次, 与先全部放好再模拟的穷举结果一致。
    分支在以下情形结束:
        状态回到初始构型          -> 用共享判定检验并记录
        到达周期/代数上限         -> 放弃
        某催化剂损坏超过恢复期限   -> 放弃

判定 (即时搜索与穷举共用):
    单元两两相距至少 3 格且不与活动区重叠; 整体是满足 require_period 的振荡器;
    每个单元在一个周期内至少被触及一次; 每个单元的连续损坏代数不超过其恢复期限。
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple
import json

from alert_utils.console_logger import log_error, log_info, log_search_progress, log_warning
from catalog_utils.catalog_manager import default_catalog
from life_utils.life_engine import Cell, D8Transform, Pattern, iter_phases, step, transform
from life_utils.rle_codec import encode_body, load_pattern, write_rle
from osc_utils.dynamics import DynamicsKind, DynamicsReport, detect_dynamics

DEFAULT_RECOVERY_DEADLINE = 64
DEFAULT_MAX_GENS = 256
HALO_RADIUS = 2


class SearchConfigError(ValueError):
    """搜索配置非法"""


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class CatalystSpec:
    pattern: Pattern
    allowed_transforms: Tuple[int, ...] = tuple(range(8))
    recovery_deadline: int = DEFAULT_RECOVERY_DEADLINE
    name: str = ''

    def is_still_life(self) -> bool:
        return step(self.pattern) == self.pattern


@dataclass(frozen=True)
class SearchConfig:
    active_region: Pattern
    catalysts: Tuple[CatalystSpec, ...]
    max_catalysts: int
    placement_box: Tuple[int, int, int, int]
    max_gens: int = DEFAULT_MAX_GENS
    require_period: Optional[int] = None
    symmetry_center2: Optional[Tuple[int, int]] = None
    node_budget: Optional[int] = None

    def __post_init__(self):
        if self.max_catalysts < 1:
            raise SearchConfigError(f'max_catalysts 至少为 1, 收到 {self.max_catalysts}')
        x0, y0, x1, y1 = self.placement_box
        if x1 < x0 or y1 < y0:
            raise SearchConfigError(f'放置框为空: {self.placement_box}')
        if self.max_gens <= 0:
            raise SearchConfigError(f'max_gens 必须为正整数, 收到 {self.max_gens}')
        if self.require_period is not None and self.require_period <= 0:
            raise SearchConfigError(f'require_period 必须为正整数, 收到 {self.require_period}')

    @property
    def horizon(self) -> int:
        if self.require_period is None:
            return self.max_gens
        return min(self.require_period, self.max_gens)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'active_region': encode_body(self.active_region),
            'catalysts': [{'name': c.name, 'rle': encode_body(c.pattern),
                           'transforms': list(c.allowed_transforms),
                           'recovery_deadline': c.recovery_deadline} for c in self.catalysts],
            'max_catalysts': self.max_catalysts,
            'placement_box': list(self.placement_box),
            'max_gens': self.max_gens,
            'require_period': self.require_period,
            'symmetry': None if self.symmetry_center2 is None
            else {'type': 'C2', 'center2': list(self.symmetry_center2)},
            'node_budget': self.node_budget,
        }


Placement = Tuple[int, D8Transform]


@dataclass(frozen=True)
class SearchSolution:
    placements: Tuple[Placement, ...]
    resulting_pattern: Pattern
    report: DynamicsReport

    def sort_key(self):
        return (len(self.placements),
                tuple((i, g.element, g.dx, g.dy) for i, g in self.placements))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'placements': [{'catalyst': i, 'transform': [g.element, g.dx, g.dy]} for i, g in self.placements],
            'period': self.report.period,
            'population': self.resulting_pattern.population,
            'rle': write_rle(self.resulting_pattern),
        }


@dataclass
class SearchResult:
    solutions: List[SearchSolution] = field(default_factory=list)
    incomplete: bool = False
    nodes: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'solutions': [s.to_dict() for s in self.solutions],
            'count': len(self.solutions),
            'incomplete': self.incomplete,
            'nodes': self.nodes,
        }


@dataclass(frozen=True)
class _Unit:
    catalyst: int
    placements: Tuple[D8Transform, ...]
    cells: FrozenSet[Cell]
    halo: FrozenSet[Cell]
    deadline: int


@dataclass
class _Branch:
    t: int
    state: Pattern
    placed: Tuple[int, ...]
    last: int
    blocked: FrozenSet[int]
    damaged_since: Dict[int, int] = field(default_factory=dict)


def _halo(cells) -> FrozenSet[Cell]:
    r = HALO_RADIUS
    return frozenset((x + dx, y + dy) for x, y in cells
                     for dx in range(-r, r + 1) for dy in range(-r, r + 1))


def _longest_run(flags: Sequence[bool]) -> int:
    best = run = 0
    for flag in flags:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


class CatalystSearcher:
    """单元表 + 即时放置深度优先搜索"""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        if cfg.active_region.is_empty():
            raise SearchConfigError('活动区不能为空')
        for i, catalyst in enumerate(cfg.catalysts):
            if catalyst.pattern.is_empty() or not catalyst.is_still_life():
                raise SearchConfigError(f'第 {i} 个催化剂 {catalyst.name or ""} 不是静物')
        self.active = cfg.active_region
        self.units: List[_Unit] = self._build_units()
        self.index: Dict[Cell, List[int]] = {}
        for uid, unit in enumerate(self.units):
            for cell in unit.halo:
                self.index.setdefault(cell, []).append(uid)
        self.nodes = 0
        self.budget: Optional[int] = None

    def _build_units(self) -> List[_Unit]:
        x0, y0, x1, y1 = self.cfg.placement_box
        center = self.cfg.symmetry_center2
        units, seen = [], set()
        for ci, catalyst in enumerate(self.cfg.catalysts):
            for element in sorted(set(catalyst.allowed_transforms)):
                image = transform(catalyst.pattern, D8Transform(element))
                mx, my = image.bounding_box()[:2]
                for oy in range(y0, y1 + 1):
                    for ox in range(x0, x1 + 1):
                        g = D8Transform(element, ox - mx, oy - my)
                        cells = image.translate(ox - mx, oy - my).cells
                        placements = (g,)
                        if center is not None:
                            g2 = D8Transform(2, center[0], center[1]).compose(g)
                            mirrored = transform(catalyst.pattern, g2).cells
                            if mirrored != cells:
                                if mirrored & cells:
                                    continue
                                pair = Pattern(cells | mirrored)
                                if step(pair) != pair:
                                    continue
                                placements = tuple(sorted((g, g2), key=lambda t: (t.element, t.dx, t.dy)))
                                cells = cells | mirrored
                        if cells & self.active.cells or cells in seen:
                            continue
                        seen.add(cells)
                        units.append(_Unit(ci, placements, cells, _halo(cells), catalyst.recovery_deadline))
        return units

    # ---------- 共享判定 ----------

    def _separated(self, uid: int, placed: Sequence[int]) -> bool:
        cells = self.units[uid].cells
        return all(not (cells & self.units[v].halo) for v in placed)

    def _catalyst_cells(self, placed: Sequence[int]) -> FrozenSet[Cell]:
        cells = frozenset()
        for uid in placed:
            cells |= self.units[uid].cells
        return cells

    def evaluate(self, placed: Sequence[int]) -> Optional[SearchSolution]:
        """对一组单元做完整判定, 通过时返回解"""
        placed = tuple(sorted(placed))
        for i, uid in enumerate(placed):
            if self.units[uid].cells & self.active.cells or not self._separated(uid, placed[:i]):
                return None
        catalysts = self._catalyst_cells(placed)
        pattern = self.active | Pattern(catalysts)
        report = detect_dynamics(pattern, max_gens=self.cfg.max_gens)
        if report.kind != DynamicsKind.OSCILLATOR:
            return None
        if self.cfg.require_period is not None and report.period != self.cfg.require_period:
            return None

        phases = list(iter_phases(pattern, count=report.period))
        for uid in placed:
            unit = self.units[uid]
            if not any(unit.halo & (phase.cells ^ catalysts) for phase in phases):
                return None
            if _longest_run([not unit.cells <= phase.cells for phase in phases]) > unit.deadline:
                return None

        placements = tuple(sorted(
            ((self.units[uid].catalyst, g) for uid in placed for g in self.units[uid].placements),
            key=lambda p: (p[0], p[1].element, p[1].dx, p[1].dy),
        ))
        return SearchSolution(placements, pattern, report)

    # ---------- 即时放置搜索 ----------

    def _touched(self, region) -> set:
        touched = set()
        for cell in region:
            touched.update(self.index.get(cell, ()))
        return touched

    def _tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted()

    def _place(self, branch: _Branch, uid: int) -> _Branch:
        return _Branch(branch.t, branch.state | Pattern(self.units[uid].cells),
                       branch.placed + (uid,), uid, branch.blocked, dict(branch.damaged_since))

    def _candidates(self, branch: _Branch, touched: set) -> List[int]:
        if len(branch.placed) >= self.cfg.max_catalysts:
            return []
        found = []
        for uid in sorted(touched - branch.blocked):
            if uid in branch.placed or uid <= branch.last:
                continue
            if self.units[uid].cells & branch.state.cells:
                continue
            if self._separated(uid, branch.placed):
                found.append(uid)
        return found

    def explore(self, branch: _Branch, solutions: List[SearchSolution], expand: bool = True) -> List[_Branch]:
        """沿时间推进一个分支; expand=False 时不递归, 而是把子分支返回给调用方"""
        catalysts = self._catalyst_cells(branch.placed)
        initial = self.active | Pattern(catalysts)
        horizon = self.cfg.horizon
        deferred = []
        t, state = branch.t, branch.state
        blocked = set(branch.blocked)
        damaged = branch.damaged_since
        last = branch.last

        while True:
            if t > 0 and state == initial:
                solution = self.evaluate(branch.placed)
                if solution is not None:
                    solutions.append(solution)
                return deferred
            if t >= horizon:
                return deferred

            touched = self._touched(state.cells ^ catalysts)
            current = _Branch(t, state, branch.placed, last, frozenset(blocked), damaged)
            for uid in self._candidates(current, touched):
                child = self._place(current, uid)
                if expand:
                    self.explore(child, solutions)
                else:
                    deferred.append(child)
            blocked |= touched
            last = -1

            state = step(state)
            t += 1
            self._tick()
            for uid in branch.placed:
                if self.units[uid].cells <= state.cells:
                    damaged.pop(uid, None)
                    continue
                since = damaged.setdefault(uid, t)
                if t - since + 1 > self.units[uid].deadline:
                    return deferred

    def root(self) -> _Branch:
        return _Branch(0, self.active, (), -1, frozenset())

    def run_branch(self, branch: _Branch) -> Tuple[List[SearchSolution], bool, int]:
        """运行一个顶层分支, 返回 (解, 是否耗尽预算, 模拟代数)"""
        self.nodes = 0
        self.budget = self.cfg.node_budget
        solutions: List[SearchSolution] = []
        exhausted = False
        try:
            self.explore(branch, solutions)
        except _BudgetExhausted:
            exhausted = True
        return solutions, exhausted, self.nodes

    def exhaustive(self) -> SearchResult:
        """不剪枝的穷举: 枚举 0..max_catalysts 个单元的全部组合"""
        solutions = []
        evaluated = 0
        for size in range(self.cfg.max_catalysts + 1):
            for combo in combinations(range(len(self.units)), size):
                evaluated += 1
                solution = self.evaluate(combo)
                if solution is not None:
                    solutions.append(solution)
        return SearchResult(solutions, False, evaluated)


_WORKER_SEARCHER: Optional[CatalystSearcher] = None


def _init_worker(searcher: CatalystSearcher):
    global _WORKER_SEARCHER
    _WORKER_SEARCHER = searcher


def _run_worker_branch(branch: _Branch):
    return _WORKER_SEARCHER.run_branch(branch)


def _finalize(solutions: List[SearchSolution]) -> List[SearchSolution]:
    """按放置排序后以整体图案的 D8 规范形去重"""
    unique, seen = [], set()
    for solution in sorted(solutions, key=SearchSolution.sort_key):
        key = solution.resulting_pattern.canonical_d8().cells
        if key in seen:
            continue
        seen.add(key)
        unique.append(solution)
    return unique


def search_catalysts(cfg: SearchConfig, jobs: int = 1, exhaustive: bool = False) -> SearchResult:
    """
    催化剂搜索入口

    Args:
        cfg: 搜索配置
        jobs: 并行进程数, 顶层分支各自独立, 结果与并行度无关
        exhaustive: True 时改用不剪枝的组合穷举 (用作对照)

    Returns:
        SearchResult: 去重排序后的解; 任一分支耗尽 node_budget 时 incomplete 为 True
    """
    searcher = CatalystSearcher(cfg)
    log_info(f'🧩 放置单元 {len(searcher.units)} 个, 上限 {cfg.max_catalysts} 个催化剂, 视界 {cfg.horizon} 代')
    if exhaustive:
        result = searcher.exhaustive()
        result.solutions = _finalize(result.solutions)
        return result

    # 裸活动区路径在本进程内推进, 它产生的子分支作为独立任务分发
    solutions: List[SearchSolution] = []
    searcher.budget = cfg.node_budget
    try:
        tasks = searcher.explore(searcher.root(), solutions, expand=False)
    except _BudgetExhausted:
        log_warning('裸活动区路径已耗尽预算')
        return SearchResult(_finalize(solutions), True, searcher.nodes)
    nodes = searcher.nodes
    incomplete = False

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(searcher,)) as pool:
            outcomes = pool.map(_run_worker_branch, tasks, chunksize=max(1, len(tasks) // (jobs * 8)))
            for done, (found, exhausted, used) in enumerate(outcomes, 1):
                solutions.extend(found)
                incomplete |= exhausted
                nodes += used
                log_search_progress(done, len(tasks), len(solutions), nodes)
    else:
        for done, task in enumerate(tasks, 1):
            found, exhausted, used = searcher.run_branch(task)
            solutions.extend(found)
            incomplete |= exhausted
            nodes += used
            log_search_progress(done, len(tasks), len(solutions), nodes)

    if incomplete:
        log_warning('部分分支耗尽 node_budget, 结果不完整')
    return SearchResult(_finalize(solutions), incomplete, nodes)


def _placement_box(raw: Any, region: Pattern) -> Tuple[int, int, int, int]:
    if isinstance(raw, dict) and 'margin' in raw:
        margin = int(raw['margin'])
        x0, y0, x1, y1 = region.bounding_box()
        return x0 - margin, y0 - margin, x1 + margin, y1 + margin
    if isinstance(raw, (list, tuple)) and len(raw) == 4:
        return tuple(int(v) for v in raw)
    raise SearchConfigError(f'placement_box 须为 {{"margin": N}} 或 [x0, y0, x1, y1], 收到 {raw!r}')


def _active_region(raw: Any) -> Pattern:
    """RLE 文本, 或 {"catalog": 条目 id} 引用目录中的图案"""
    if isinstance(raw, dict):
        entry_id = raw.get('catalog')
        entry = next((e for e in default_catalog().entries if e.id == entry_id), None)
        if entry is None or entry.rle is None:
            raise SearchConfigError(f'目录中没有带图案的条目 {entry_id!r}')
        return entry.pattern()
    return load_pattern(raw)


def load_search_config(path, default_deadline: int = DEFAULT_RECOVERY_DEADLINE,
                       node_budget: Optional[int] = None) -> SearchConfig:
    """读取 JSON 搜索配置; 失败时记录日志后以 SearchConfigError 抛出"""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            raw = json.load(f)
        region = _active_region(raw['active_region'])
        catalysts = tuple(
            CatalystSpec(
                pattern=load_pattern(c['rle']),
                allowed_transforms=tuple(c.get('transforms', range(8))),
                recovery_deadline=int(c.get('recovery_deadline', default_deadline)),
                name=c.get('name', ''),
            )
            for c in raw.get('catalysts', [])
        )
        symmetry = raw.get('symmetry')
        center2 = None
        if symmetry:
            if symmetry.get('type') != 'C2':
                raise SearchConfigError(f'只支持 C2 对称, 收到 {symmetry.get("type")!r}')
            center2 = tuple(int(v) for v in symmetry['center2'])
        if region.is_empty():
            raise SearchConfigError('活动区不能为空')
        budget = raw.get('node_budget', node_budget)
        return SearchConfig(
            active_region=region,
            catalysts=catalysts,
            max_catalysts=int(raw.get('max_catalysts', 1)),
            placement_box=_placement_box(raw.get('placement_box', {'margin': 8}), region),
            max_gens=int(raw.get('max_gens', DEFAULT_MAX_GENS)),
            require_period=raw.get('require_period'),
            symmetry_center2=center2,
            node_budget=None if budget is None else int(budget),
        )
    except SearchConfigError as e:
        log_error(f'搜索配置无效: {e}')
        raise
    except Exception as e:
        log_error(f'加载搜索配置失败: {e}')
        raise SearchConfigError(str(e)) from e


def write_solutions(result: SearchResult, out_dir) -> Path:
    """写出 solution_NNN.rle 与 index.json, 返回索引文件路径"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    index = []
    for n, solution in enumerate(result.solutions, 1):
        name = f'solution_{n:03d}.rle'
        (out_dir / name).write_text(write_rle(solution.resulting_pattern), encoding='utf-8')
        entry = solution.to_dict()
        entry.pop('rle')
        entry['file'] = name
        index.append(entry)
    index_path = out_dir / 'index.json'
    with open(index_path, 'w', encoding='utf-8') as f:
        json.dump({'solutions': index, 'incomplete': result.incomplete}, f, ensure_ascii=False, indent=2)
    return index_path
