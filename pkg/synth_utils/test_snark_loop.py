#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Snark 回路测试: 夹具、p43 参考回路、规格算术与 43..120 全量扫描
"""

from dataclasses import replace

import pytest

from catalog_utils.catalog_manager import default_catalog
from osc_utils.dynamics import DynamicsKind, detect_dynamics
from synth_utils.snark_loop import (
    LoopVerificationError, SnarkLoopError, build_snark_loop, load_fixture, plan_snark_loop,
    synth_snark_loop, verify_fixture, verify_snark_loop,
)


def catalog_entry(entry_id: str):
    return next(e for e in default_catalog().entries if e.id == entry_id)


def test_fixture_is_the_catalog_snark():
    fixture = verify_fixture()
    assert fixture.pattern.population == 49
    assert fixture.repeat_time == 43
    assert fixture.reflection_delay == 2
    assert fixture.input_direction == (1, 1)
    assert fixture.output_direction == (1, -1)
    assert fixture.pattern.normalize() == catalog_entry('x-snark').pattern().normalize()


def test_p43_matches_reference_loop():
    assert synth_snark_loop(43).normalize() == catalog_entry('x-p43-snark-loop').pattern().normalize()


@pytest.mark.parametrize('p', [43, 44, 57, 100])
def test_spec_arithmetic(p):
    spec = plan_snark_loop(p)
    assert spec.n == (p - 1) // 2
    assert spec.m == p - 1 - spec.n
    assert spec.n + spec.m + 1 == p
    assert spec.traversal_time == 8 * p
    assert len(spec.reflector_placements) == 4
    assert len(spec.glider_insertions) == 8
    assert 0 <= spec.phase_offset < p
    assert all(0 <= g.phase < 4 for g in spec.glider_insertions)
    assert all(g.cells.population == 5 for g in spec.glider_insertions)


@pytest.mark.parametrize('p', [44, 100])
def test_synthesized_loop_has_exact_period(p):
    report = detect_dynamics(synth_snark_loop(p), max_gens=p)
    assert report.kind == DynamicsKind.OSCILLATOR
    assert report.period == p


def test_sweep_43_to_120():
    for p in range(43, 121):
        pattern = synth_snark_loop(p)
        report = detect_dynamics(pattern, max_gens=p)
        assert (report.kind, report.period) == (DynamicsKind.OSCILLATOR, p), p


def test_loop_population_is_reflectors_plus_gliders():
    assert synth_snark_loop(60).population == 4 * 49 + 8 * 5


@pytest.mark.parametrize('p', [0, 1, 42])
def test_small_periods_are_rejected(p):
    with pytest.raises(SnarkLoopError):
        synth_snark_loop(p)


def test_tampered_loop_fails_verification():
    spec = plan_snark_loop(50)
    broken = replace(spec, glider_insertions=spec.glider_insertions[:-1])
    with pytest.raises(LoopVerificationError) as excinfo:
        verify_snark_loop(broken, build_snark_loop(broken, load_fixture()))
    assert excinfo.value.spec is broken


def test_spec_to_dict():
    data = plan_snark_loop(43).to_dict()
    assert data['p'] == 43
    assert data['traversal_time'] == 344
    assert len(data['gliders']) == 8
