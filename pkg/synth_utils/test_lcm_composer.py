import pytest

from catalog_utils.catalog_manager import default_catalog
from life_utils.life_engine import iter_phases
from life_utils.rle_codec import parse_rle_body
from osc_utils.dynamics import DynamicsKind, detect_dynamics
from osc_utils.volatility import PeriodMismatchError, cell_period_map
from synth_utils.lcm_composer import CompositionError, compose_lcm


def catalog_pattern(entry_id: str):
    return next(e for e in default_catalog().entries if e.id == entry_id).pattern()


def test_jam_and_mold_make_trivial_p12():
    composite = compose_lcm(catalog_pattern('x-jam'), 3, catalog_pattern('x-mold'), 4)
    assert composite.period == 12
    assert composite.stats.trivial
    assert not composite.stats.strictly_volatile
    report = detect_dynamics(composite.pattern, max_gens=12)
    assert (report.kind, report.period) == (DynamicsKind.OSCILLATOR, 12)


def test_blinker_and_pulsar_make_p6():
    blinker = parse_rle_body('3o!')
    pulsar = catalog_pattern('p03-pulsar')
    composite = compose_lcm(blinker, 2, pulsar, 3)
    assert composite.period == 6
    assert composite.pattern.population == blinker.population + pulsar.population
    for phase, expected in zip(iter_phases(composite.pattern, count=6),
                               iter_phases(blinker, count=6)):
        assert expected.cells <= phase.cells


def test_block_and_blinker_make_p2():
    composite = compose_lcm(parse_rle_body('2o$2o!'), 1, parse_rle_body('3o!'), 2)
    assert composite.period == 2


def test_octagon_and_figure_eight_make_trivial_p40():
    composite = compose_lcm(catalog_pattern('p05-octagon-2'), 5, catalog_pattern('p08-figure-eight'), 8)
    assert composite.period == 40
    assert composite.stats.trivial


@pytest.mark.parametrize('a_id, pa, b_id, pb', [
    ('x-jam', 3, 'x-mold', 4),
    ('p02-blinker', 2, 'p03-pulsar', 3),
])
def test_cell_periods_survive_composition(a_id, pa, b_id, pb):
    a, b = catalog_pattern(a_id), catalog_pattern(b_id)
    composite = compose_lcm(a, pa, b, pb)
    combined = cell_period_map(composite.pattern, composite.period)
    own_a = dict(cell_period_map(a, pa))
    dx, dy = composite.offset
    own_b = {(x + dx, y + dy): p for (x, y), p in cell_period_map(b, pb).items()}
    assert combined.restrict(own_a) == own_a
    assert combined.restrict(own_b) == own_b


def test_components_are_separated_by_gap():
    composite = compose_lcm(parse_rle_body('3o!'), 2, parse_rle_body('3o!'), 2, gap=5)
    dx, dy = composite.offset
    # 闪烁器周期包围盒宽 3, 两盒之间留 5 列
    assert dx == 2 + 5 + 1
    assert dy == 0
    assert composite.period == 2


def test_non_oscillator_component_is_rejected():
    with pytest.raises(PeriodMismatchError):
        compose_lcm(parse_rle_body('bo$2bo$3o!'), 4, parse_rle_body('3o!'), 2)
    with pytest.raises(PeriodMismatchError):
        compose_lcm(parse_rle_body('3o!'), 3, parse_rle_body('3o!'), 2)


def test_touching_components_raise():
    block = parse_rle_body('2o$2o!')
    with pytest.raises(CompositionError):
        compose_lcm(block, 1, block, 1, gap=0)


def test_composite_to_dict():
    data = compose_lcm(catalog_pattern('x-jam'), 3, catalog_pattern('x-mold'), 4).to_dict()
    assert data['period'] == 12
    assert data['volatility']['trivial'] is True
    assert data['rle'].startswith('x = ')
