# Soup census package
from .soup_census import (
    AshObject, CensusTally, CycleResult, SoupConfig, UnresolvedCycleError,
    canonical_form, mix, random_soup, run_census, run_to_cycle, separate_objects, xorshift64,
)

__all__ = [
    'AshObject', 'CensusTally', 'CycleResult', 'SoupConfig', 'UnresolvedCycleError',
    'canonical_form', 'mix', 'random_soup', 'run_census', 'run_to_cycle', 'separate_objects', 'xorshift64',
]
