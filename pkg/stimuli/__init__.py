from .rng import PinnedRng, SplitMix64, derive_seed, splitmix64
from .spec import (
    StimulusClass,
    StimulusSpec,
    EngineBoomParams,
    WindWhistleParams,
    RoadNoiseParams,
    PARAMS_TYPES,
    DEFAULT_DURATION_S,
)
from .base_stimulus import Stimulus, PARAMS_STREAM, SYNTH_STREAM
from .classes import STIMULI_REGISTRY
from .generator import get_stimulus, synth, jittered_spec, default_spec, export_stimulus
from .test_tones import test_tone, TEST_TONE_KINDS

__all__ = [
    'PinnedRng',
    'SplitMix64',
    'derive_seed',
    'splitmix64',
    'StimulusClass',
    'StimulusSpec',
    'EngineBoomParams',
    'WindWhistleParams',
    'RoadNoiseParams',
    'PARAMS_TYPES',
    'DEFAULT_DURATION_S',
    'Stimulus',
    'PARAMS_STREAM',
    'SYNTH_STREAM',
    'STIMULI_REGISTRY',
    'get_stimulus',
    'synth',
    'jittered_spec',
    'default_spec',
    'export_stimulus',
    'test_tone',
    'TEST_TONE_KINDS',
]
