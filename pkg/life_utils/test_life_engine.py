#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
演化引擎测试: 基本图案、快慢两套实现逐位一致、D8 与平移等变、环面回绕
"""

import numpy as np
import pytest

from life_utils.life_engine import (
    IDENTITY, INT64_MAX, PLANE, CoordinateOverflowError, D8Transform, LifeGrid, Pattern,
    TopologyError, Torus, fast_step, iter_phases, naive_step, step, step_n, transform,
)
from life_utils.rle_codec import parse_rle_body

GLIDER = parse_rle_body('bo$2bo$3o!')
BLOCK = parse_rle_body('2o$2o!')
BLINKER = parse_rle_body('3o!')
R_PENTOMINO = parse_rle_body('b2o$2o$bo!')


def seeded_soup(seed: int, width: int = 16, height: int = 16, density: float = 0.375) -> Pattern:
    rng = np.random.default_rng(seed)
    return Pattern.from_array(rng.random((height, width)) < density)


def test_glider_moves_one_cell_diagonally():
    assert step_n(GLIDER, PLANE, 4) == GLIDER.translate(1, 1)


def test_still_life_and_blinker():
    assert step(BLOCK) == BLOCK
    assert step(BLINKER) != BLINKER
    assert step_n(BLINKER, PLANE, 2) == BLINKER


def test_empty_pattern_stays_empty():
    assert step(Pattern()) == Pattern()
    assert step(Pattern(), Torus(5, 5)) == Pattern()


ORACLE_GENERATIONS = 64


@pytest.mark.parametrize('seed', range(25))
def test_fast_stepper_matches_reference_on_plane(seed):
    pattern = seeded_soup(seed, 32, 32)
    for _ in range(ORACLE_GENERATIONS):
        expected = naive_step(pattern)
        assert fast_step(pattern) == expected
        pattern = expected


@pytest.mark.parametrize('seed', range(25))
def test_fast_stepper_matches_reference_on_torus(seed):
    torus = Torus(64, 64)
    # 汤跨越环面边界放置
    pattern = Pattern(((x + 40) % 64, (y + 40) % 64) for x, y in seeded_soup(1000 + seed, 32, 32).cells)
    for _ in range(ORACLE_GENERATIONS):
        expected = naive_step(pattern, torus)
        assert fast_step(pattern, torus) == expected
        pattern = expected


def test_lifegrid_advance_matches_repeated_steps():
    state = LifeGrid.from_pattern(R_PENTOMINO)
    pattern = R_PENTOMINO
    for _ in range(50):
        pattern = naive_step(pattern)
    assert state.advance(50).to_pattern() == pattern
    assert state.advance(50).population == pattern.population


def test_glider_wraps_around_torus():
    torus = Torus(8, 8)
    assert step_n(GLIDER, torus, 32) == GLIDER
    moved = step_n(GLIDER, torus, 4 * 6)
    assert moved == Pattern(((x + 6) % 8, (y + 6) % 8) for x, y in GLIDER.cells)


def test_small_torus_wrap_counts_neighbours_once_per_cell():
    # 3×3 环面上每个格子都是所有其他格子的邻居
    torus = Torus(3, 3)
    three = Pattern([(0, 0), (1, 0), (2, 0)])
    assert naive_step(three, torus) == fast_step(three, torus)


def test_torus_validation():
    with pytest.raises(TopologyError):
        Torus(2, 5)
    with pytest.raises(TopologyError):
        step(Pattern([(10, 0)]), Torus(5, 5))


def test_coordinate_range_is_checked():
    with pytest.raises(CoordinateOverflowError):
        Pattern([(INT64_MAX + 1, 0)])
    with pytest.raises(CoordinateOverflowError):
        step(BLOCK.translate(INT64_MAX - 1, 0))
    with pytest.raises(CoordinateOverflowError):
        transform(Pattern([(-(2 ** 63), 0)]), D8Transform(2))


@pytest.mark.parametrize('element', range(8))
def test_step_commutes_with_d8(element):
    g = D8Transform(element, 3, -7)
    for pattern in (GLIDER, R_PENTOMINO, seeded_soup(element, 10, 10)):
        assert step(transform(pattern, g)) == transform(step(pattern), g)


def test_step_is_translation_equivariant():
    pattern = seeded_soup(7, 12, 12)
    assert step(pattern.translate(-40, 25)) == step(pattern).translate(-40, 25)


@pytest.mark.parametrize('element', range(8))
def test_d8_compose_and_inverse(element):
    g = D8Transform(element, 5, -2)
    assert g.compose(g.inverse()) == IDENTITY
    assert g.inverse().compose(g) == IDENTITY
    h = D8Transform((element + 3) % 8, -1, 4)
    for cell in [(0, 0), (2, 5), (-3, 1)]:
        assert g.compose(h).apply(*cell) == g.apply(*h.apply(*cell))


def test_d8_rotation_direction():
    assert D8Transform(1).apply(1, 0) == (0, 1)
    assert D8Transform(2).apply(1, 2) == (-1, -2)
    with pytest.raises(ValueError):
        D8Transform(8)


def test_pattern_helpers():
    assert GLIDER.population == 5
    assert GLIDER.bounding_box() == (0, 0, 2, 2)
    assert GLIDER.translate(4, 5).normalize() == GLIDER
    assert Pattern().bounding_box() is None
    grid, x0, y0 = GLIDER.translate(-3, 2).to_array()
    assert grid.shape == (3, 3)
    assert Pattern.from_array(grid, x0, y0) == GLIDER.translate(-3, 2)
    assert (0, 2) in GLIDER
    assert list(BLOCK) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_canonical_d8_is_symmetry_invariant():
    canonical = R_PENTOMINO.canonical_d8()
    for element in range(8):
        image = transform(R_PENTOMINO, D8Transform(element, 11, -4))
        assert image.canonical_d8() == canonical


def test_iter_phases():
    phases = list(iter_phases(BLINKER, count=3))
    assert phases[0] == BLINKER
    assert phases[2] == BLINKER
    assert phases[1] == Pattern([(1, -1), (1, 0), (1, 1)])
