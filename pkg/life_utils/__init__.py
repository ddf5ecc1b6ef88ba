# Life engine utilities package
from .life_engine import (
    Pattern, Plane, Torus, PLANE, D8Transform, IDENTITY, LifeGrid,
    CoordinateOverflowError, TopologyError,
    naive_step, fast_step, step, step_n, transform, iter_phases,
)
from .rle_codec import RleDocument, RleParseError, parse_rle, parse_rle_body, write_rle, encode_body, load_pattern

__all__ = [
    'Pattern', 'Plane', 'Torus', 'PLANE', 'D8Transform', 'IDENTITY', 'LifeGrid',
    'CoordinateOverflowError', 'TopologyError',
    'naive_step', 'fast_step', 'step', 'step_n', 'transform', 'iter_phases',
    'RleDocument', 'RleParseError', 'parse_rle', 'parse_rle_body', 'write_rle', 'encode_body', 'load_pattern',
]
