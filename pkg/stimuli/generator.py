import json
import os
import logging
from typing import Dict, Optional, Union

from signal_core.errors import ParameterError
from signal_core.signal import CANONICAL_SAMPLE_RATE, Signal
from signal_core.wav_io import write_wav

from .base_stimulus import PARAMS_STREAM, Stimulus
from .classes import STIMULI_REGISTRY
from .rng import PinnedRng, derive_seed
from .spec import DEFAULT_DURATION_S, PARAMS_TYPES, StimulusClass, StimulusSpec

logger = logging.getLogger(__name__)


def get_stimulus(label: Union[str, StimulusClass]) -> Stimulus:
    """Get a stimulus generator by class label or CLI name"""
    label = StimulusClass.parse(label)
    stimulus_class = STIMULI_REGISTRY.get(label.cli_name)
    if not stimulus_class:
        raise ParameterError(f"Unsupported stimulus class: {label}")
    return stimulus_class()


def synth(spec: StimulusSpec) -> Signal:
    return get_stimulus(spec.class_label).synth(spec)


def jittered_spec(
    class_label: Union[str, StimulusClass],
    base_seed: int,
    index: int,
    duration_s: float = DEFAULT_DURATION_S,
    sample_rate: int = CANONICAL_SAMPLE_RATE,
) -> StimulusSpec:
    """Spec for item `index`, seeded by SplitMix64(base_seed XOR index)"""
    stimulus = get_stimulus(class_label)
    seed = derive_seed(base_seed, index)
    params = stimulus.draw_params(PinnedRng(seed, stream=PARAMS_STREAM))
    return StimulusSpec(
        class_label=stimulus.label,
        seed=seed,
        params=params,
        duration_s=duration_s,
        sample_rate=sample_rate,
    )


def default_spec(
    class_label: Union[str, StimulusClass],
    seed: int,
    overrides: Optional[Dict[str, float]] = None,
    duration_s: float = DEFAULT_DURATION_S,
    sample_rate: int = CANONICAL_SAMPLE_RATE,
) -> StimulusSpec:
    """Spec with the nominal parameters of a class, optionally overridden"""
    stimulus = get_stimulus(class_label)
    params = PARAMS_TYPES[stimulus.label]().with_overrides(**(overrides or {}))
    spec = StimulusSpec(
        class_label=stimulus.label,
        seed=seed,
        params=params,
        duration_s=duration_s,
        sample_rate=sample_rate,
    )
    spec.validate()
    return spec


def export_stimulus(spec: StimulusSpec, wav_path: str, signal: Optional[Signal] = None) -> str:
    """Write the stimulus WAV and a sidecar JSON spec next to it; returns the sidecar path"""
    if signal is None:
        signal = synth(spec)
    write_wav(signal, wav_path)
    sidecar = os.path.splitext(wav_path)[0] + '.json'
    with open(sidecar, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(spec.to_dict(), f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info(f"Wrote {spec.class_label.value} stimulus (seed {spec.seed}) to {wav_path}")
    return sidecar
