from .engine_boom import EngineBoomStimulus
from .wind_whistle import WindWhistleStimulus
from .road_noise import RoadNoiseStimulus

# Registry of all stimulus classes, keyed by CLI name
STIMULI_REGISTRY = {
    'engine-boom': EngineBoomStimulus,
    'wind-whistle': WindWhistleStimulus,
    'road-noise': RoadNoiseStimulus,
}

__all__ = [
    'EngineBoomStimulus',
    'WindWhistleStimulus',
    'RoadNoiseStimulus',
    'STIMULI_REGISTRY',
]
