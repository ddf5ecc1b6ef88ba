# Oscillator synthesis package
from .snark_loop import (
    GliderInsertion, LoopVerificationError, SnarkFixture, SnarkLoopError, SnarkLoopSpec,
    build_snark_loop, load_fixture, plan_snark_loop, synth_snark_loop, verify_fixture, verify_snark_loop,
)
from .lcm_composer import Composite, CompositionError, compose_lcm
from .period_resolver import ResolvedOscillator, resolve_period

__all__ = [
    'GliderInsertion', 'LoopVerificationError', 'SnarkFixture', 'SnarkLoopError', 'SnarkLoopSpec',
    'build_snark_loop', 'load_fixture', 'plan_snark_loop', 'synth_snark_loop', 'verify_fixture', 'verify_snark_loop',
    'Composite', 'CompositionError', 'compose_lcm',
    'ResolvedOscillator', 'resolve_period',
]
