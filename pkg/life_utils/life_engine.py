#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
生命游戏核心引擎 - 图案、拓扑、D8 变换与 B3/S23 演化

坐标约定: x 向右为正, y 向下为正, 与 RLE 的读取顺序一致。
两套演化实现:
    naive_step  逐细胞统计邻居的参考实现
    LifeGrid    基于 numpy 布尔数组的快速实现 (包围盒裁剪, 每代外扩 1 格)
两者对任意输入必须逐位一致, step/step_n 默认走快速实现。
"""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple, Union

import numpy as np

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1

Cell = Tuple[int, int]
BoundingBox = Tuple[int, int, int, int]

NEIGHBOUR_OFFSETS = tuple(
    (dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dx or dy
)

# D8 元素的矩阵 (a, b, c, d): x' = a*x + b*y, y' = c*x + d*y
# 0 恒等, 1/2/3 旋转 90/180/270, 4..7 四种反射
D8_MATRICES = (
    (1, 0, 0, 1),
    (0, -1, 1, 0),
    (-1, 0, 0, -1),
    (0, 1, -1, 0),
    (-1, 0, 0, 1),
    (0, 1, 1, 0),
    (1, 0, 0, -1),
    (0, -1, -1, 0),
)
_MATRIX_INDEX = {m: i for i, m in enumerate(D8_MATRICES)}


class CoordinateOverflowError(OverflowError):
    """坐标超出 64 位有符号整数范围"""


class TopologyError(ValueError):
    """拓扑参数非法, 或图案不在环面范围内"""


def _check_range(lo: int, hi: int):
    if lo < INT64_MIN or hi > INT64_MAX:
        raise CoordinateOverflowError(f'坐标范围 [{lo}, {hi}] 超出 64 位有符号整数')


@dataclass(frozen=True)
class Pattern:
    """有限活细胞集合, 其余细胞均为死; 相等即集合相等 (与位置有关)"""
    cells: frozenset = frozenset()

    def __post_init__(self):
        cells = frozenset((int(x), int(y)) for x, y in self.cells)
        if cells:
            xs = [x for x, _ in cells]
            ys = [y for _, y in cells]
            _check_range(min(min(xs), min(ys)), max(max(xs), max(ys)))
        object.__setattr__(self, 'cells', cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.cells

    def __or__(self, other: 'Pattern') -> 'Pattern':
        return Pattern(self.cells | other.cells)

    def __and__(self, other: 'Pattern') -> 'Pattern':
        return Pattern(self.cells & other.cells)

    def __sub__(self, other: 'Pattern') -> 'Pattern':
        return Pattern(self.cells - other.cells)

    @property
    def population(self) -> int:
        return len(self.cells)

    def is_empty(self) -> bool:
        return not self.cells

    def bounding_box(self) -> Optional[BoundingBox]:
        """返回 (min_x, min_y, max_x, max_y), 空图案返回 None"""
        if not self.cells:
            return None
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> 'Pattern':
        return Pattern((x + dx, y + dy) for x, y in self.cells)

    def normalize(self) -> 'Pattern':
        """平移到包围盒左上角为 (0, 0)"""
        box = self.bounding_box()
        if box is None:
            return self
        return self.translate(-box[0], -box[1])

    def to_array(self) -> Tuple[np.ndarray, int, int]:
        """转换为 (布尔数组[y, x], 原点 x0, 原点 y0)"""
        box = self.bounding_box()
        if box is None:
            return np.zeros((0, 0), dtype=bool), 0, 0
        x0, y0, x1, y1 = box
        grid = np.zeros((y1 - y0 + 1, x1 - x0 + 1), dtype=bool)
        for x, y in self.cells:
            grid[y - y0, x - x0] = True
        return grid, x0, y0

    @classmethod
    def from_array(cls, grid: np.ndarray, x0: int = 0, y0: int = 0) -> 'Pattern':
        ys, xs = np.nonzero(grid)
        return cls(zip((int(x) + x0 for x in xs), (int(y) + y0 for y in ys)))

    def canonical_d8(self) -> 'Pattern':
        """8 种对称变换下规范化到原点后字典序最小的像"""
        if not self.cells:
            return self
        images = [transform(self, D8Transform(e)).normalize() for e in range(8)]
        return min(images, key=lambda p: sorted(p.cells))


@dataclass(frozen=True)
class Plane:
    """无限平面"""


@dataclass(frozen=True)
class Torus:
    """W×H 环面宇宙, 边界相接"""
    width: int
    height: int

    def __post_init__(self):
        if self.width < 3 or self.height < 3:
            raise TopologyError(f'环面尺寸至少 3×3, 收到 {self.width}×{self.height}')

    def contains(self, pattern: Pattern) -> bool:
        return all(0 <= x < self.width and 0 <= y < self.height for x, y in pattern.cells)


Topology = Union[Plane, Torus]
PLANE = Plane()


@dataclass(frozen=True)
class D8Transform:
    """正方形对称群元素加平移: 先作用对称, 再平移"""
    element: int = 0
    dx: int = 0
    dy: int = 0

    def __post_init__(self):
        if not 0 <= self.element < 8:
            raise ValueError(f'D8 元素编号须在 0..7 之间, 收到 {self.element}')

    @property
    def matrix(self) -> Tuple[int, int, int, int]:
        return D8_MATRICES[self.element]

    def apply_vector(self, x: int, y: int) -> Cell:
        """只作用对称部分 (用于位移向量)"""
        a, b, c, d = self.matrix
        return a * x + b * y, c * x + d * y

    def apply(self, x: int, y: int) -> Cell:
        vx, vy = self.apply_vector(x, y)
        return vx + self.dx, vy + self.dy

    def compose(self, other: 'D8Transform') -> 'D8Transform':
        """返回 self∘other, 即先作用 other 再作用 self"""
        a, b, c, d = self.matrix
        e, f, g, h = other.matrix
        product = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        tx, ty = self.apply(other.dx, other.dy)
        return D8Transform(_MATRIX_INDEX[product], tx, ty)

    def inverse(self) -> 'D8Transform':
        a, b, c, d = self.matrix
        inv = D8Transform(_MATRIX_INDEX[(a, c, b, d)])
        tx, ty = inv.apply_vector(-self.dx, -self.dy)
        return D8Transform(inv.element, tx, ty)


IDENTITY = D8Transform()


def transform(pattern: Pattern, g: D8Transform) -> Pattern:
    """对每个细胞作用 g; 结果越界时抛出 CoordinateOverflowError"""
    return Pattern(g.apply(x, y) for x, y in pattern.cells)


def _guard_plane_growth(box: Optional[BoundingBox]):
    if box is not None:
        _check_range(min(box[0], box[1]) - 1, max(box[2], box[3]) + 1)


def _require_inside(pattern: Pattern, topology: Topology):
    if isinstance(topology, Torus) and not topology.contains(pattern):
        raise TopologyError(f'图案超出 {topology.width}×{topology.height} 环面范围')


def naive_step(pattern: Pattern, topology: Topology = PLANE) -> Pattern:
    """参考实现: 逐细胞累计邻居数"""
    _require_inside(pattern, topology)
    counts = Counter()
    if isinstance(topology, Torus):
        w, h = topology.width, topology.height
        for x, y in pattern.cells:
            for dx, dy in NEIGHBOUR_OFFSETS:
                counts[((x + dx) % w, (y + dy) % h)] += 1
    else:
        _guard_plane_growth(pattern.bounding_box())
        for x, y in pattern.cells:
            for dx, dy in NEIGHBOUR_OFFSETS:
                counts[(x + dx, y + dy)] += 1
    alive = pattern.cells
    return Pattern(c for c, n in counts.items() if n == 3 or (n == 2 and c in alive))


def _life_rule(counts: np.ndarray, alive: np.ndarray) -> np.ndarray:
    return (counts == 3) | ((counts == 2) & alive)


def _crop(grid: np.ndarray, x0: int, y0: int) -> Tuple[np.ndarray, int, int]:
    rows = np.flatnonzero(grid.any(axis=1))
    if rows.size == 0:
        return np.zeros((0, 0), dtype=bool), 0, 0
    cols = np.flatnonzero(grid.any(axis=0))
    r0, r1, c0, c1 = int(rows[0]), int(rows[-1]), int(cols[0]), int(cols[-1])
    return grid[r0:r1 + 1, c0:c1 + 1], x0 + c0, y0 + r0


class LifeGrid:
    """numpy 支撑的演化状态

    平面上数组只覆盖活细胞包围盒, (x0, y0) 为数组左上角的平面坐标;
    环面上数组覆盖整个宇宙, 原点固定为 (0, 0)。
    """

    def __init__(self, grid: np.ndarray, x0: int = 0, y0: int = 0, topology: Topology = PLANE):
        self.grid = grid
        self.x0 = x0
        self.y0 = y0
        self.topology = topology

    @classmethod
    def from_pattern(cls, pattern: Pattern, topology: Topology = PLANE) -> 'LifeGrid':
        _require_inside(pattern, topology)
        if isinstance(topology, Torus):
            grid = np.zeros((topology.height, topology.width), dtype=bool)
            for x, y in pattern.cells:
                grid[y, x] = True
            return cls(grid, 0, 0, topology)
        grid, x0, y0 = pattern.to_array()
        return cls(grid, x0, y0, topology)

    @property
    def population(self) -> int:
        return int(self.grid.sum())

    def bounding_box(self) -> Optional[BoundingBox]:
        if isinstance(self.topology, Torus):
            return self.to_pattern().bounding_box()
        if self.grid.size == 0:
            return None
        h, w = self.grid.shape
        return self.x0, self.y0, self.x0 + w - 1, self.y0 + h - 1

    def shape_key(self) -> Tuple[Tuple[int, int], bytes]:
        """平移无关的形状键 (平面上数组总是裁剪到包围盒)"""
        return self.grid.shape, np.packbits(self.grid).tobytes()

    def digest(self) -> bytes:
        """环面状态摘要, 与位置相关"""
        return np.packbits(self.grid).tobytes()

    def advance(self, generations: int = 1) -> 'LifeGrid':
        state = self
        for _ in range(generations):
            state = state._step()
        return state

    def _step(self) -> 'LifeGrid':
        if isinstance(self.topology, Torus):
            padded = np.pad(self.grid, 1, mode='wrap').astype(np.uint8)
            h, w = self.grid.shape
            counts = np.zeros((h, w), dtype=np.uint8)
            for dx, dy in NEIGHBOUR_OFFSETS:
                counts += padded[1 + dy:h + 1 + dy, 1 + dx:w + 1 + dx]
            return LifeGrid(_life_rule(counts, self.grid), 0, 0, self.topology)

        if self.grid.size == 0:
            return self
        _guard_plane_growth(self.bounding_box())
        h, w = self.grid.shape
        padded = np.pad(self.grid, 2).astype(np.uint8)
        counts = np.zeros((h + 2, w + 2), dtype=np.uint8)
        for dx, dy in NEIGHBOUR_OFFSETS:
            counts += padded[1 + dy:h + 3 + dy, 1 + dx:w + 3 + dx]
        grown = _life_rule(counts, padded[1:h + 3, 1:w + 3].astype(bool))
        grid, x0, y0 = _crop(grown, self.x0 - 1, self.y0 - 1)
        return LifeGrid(grid, x0, y0, self.topology)

    def to_pattern(self) -> Pattern:
        return Pattern.from_array(self.grid, self.x0, self.y0)


def fast_step(pattern: Pattern, topology: Topology = PLANE) -> Pattern:
    return LifeGrid.from_pattern(pattern, topology).advance().to_pattern()


def step(pattern: Pattern, topology: Topology = PLANE) -> Pattern:
    """返回 B3/S23 后继"""
    return fast_step(pattern, topology)


def step_n(pattern: Pattern, topology: Topology = PLANE, n: int = 1) -> Pattern:
    if n < 0:
        raise ValueError(f'代数不能为负: {n}')
    if n == 0:
        _require_inside(pattern, topology)
        return pattern
    return LifeGrid.from_pattern(pattern, topology).advance(n).to_pattern()


def iter_phases(pattern: Pattern, topology: Topology = PLANE, count: int = 1) -> Iterable[Pattern]:
    """依次产出第 0..count-1 代"""
    state = LifeGrid.from_pattern(pattern, topology)
    for i in range(count):
        if i:
            state = state.advance()
        yield state.to_pattern()
