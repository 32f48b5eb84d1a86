import json

import numpy as np
import pytest

from metrics.tonality import tonality_proxy
from signal_core.errors import ParameterError
from signal_core.wav_io import read_wav
from stimuli.base_stimulus import PEAK_LIMIT, apply_fades, peak_limit, time_axis
from stimuli.generator import default_spec, export_stimulus, get_stimulus, jittered_spec, synth
from stimuli.rng import PinnedRng, SplitMix64, derive_seed
from stimuli.spec import EngineBoomParams, StimulusClass, StimulusSpec
from stimuli.test_tones import TEST_TONE_KINDS, am_tone, silence, sine, test_tone, tone_in_noise


class TestPinnedRng:
    def test_splitmix64_reference_value(self):
        assert SplitMix64(0).next() == 0xE220A8397B1DCDAF

    def test_derive_seed_is_deterministic(self):
        assert derive_seed(123, 4) == derive_seed(123, 4)
        assert derive_seed(123, 4) != derive_seed(123, 5)

    def test_draws_do_not_depend_on_chunking(self):
        whole = PinnedRng(7).uniform(150)
        rng = PinnedRng(7)
        parts = np.concatenate([rng.uniform(10), rng.uniform(77), rng.uniform(63)])
        np.testing.assert_array_equal(whole, parts)

    def test_streams_are_independent(self):
        assert not np.array_equal(PinnedRng(7, stream=0).uniform(8), PinnedRng(7, stream=1).uniform(8))

    def test_uniform_open_interval(self):
        u = PinnedRng(1).uniform(10000, 2.0, 3.0)
        assert np.all(u > 2.0) and np.all(u < 3.0)

    def test_normal_moments(self):
        z = PinnedRng(5).normal(200000)
        assert abs(float(np.mean(z))) < 0.01
        assert float(np.std(z)) == pytest.approx(1.0, abs=0.01)

    def test_permutation(self):
        order = PinnedRng(3).permutation(50)
        assert sorted(order.tolist()) == list(range(50))

    def test_integers_range(self):
        values = PinnedRng(3).integers(7, 1000)
        assert values.min() >= 0 and values.max() <= 6

    def test_choice_is_distinct(self):
        picked = PinnedRng(3).choice([0, 1, 2, 3, 4, 5], 2)
        assert len(set(picked)) == 2


class TestStimulusClass:
    @pytest.mark.parametrize('name', ['engine-boom', 'EngineBoom', 'engine_boom', 'ENGINE-BOOM'])
    def test_parse(self, name):
        assert StimulusClass.parse(name) is StimulusClass.ENGINE_BOOM

    def test_parse_unknown(self):
        with pytest.raises(ParameterError):
            StimulusClass.parse('jet-engine')

    def test_index_order(self):
        assert [label.index for label in StimulusClass] == [0, 1, 2]

    def test_get_stimulus(self):
        assert get_stimulus('road-noise').label is StimulusClass.ROAD_NOISE


class TestSynth:
    def test_same_spec_gives_identical_samples(self):
        spec = jittered_spec('wind-whistle', 123, 5, duration_s=0.5)
        np.testing.assert_array_equal(synth(spec).samples, synth(spec).samples)

    def test_engine_boom_harmonics(self):
        params = EngineBoomParams(f0=120.0, n_harmonics=5, mod_depth=0.0)
        spec = StimulusSpec(StimulusClass.ENGINE_BOOM, seed=1, params=params, duration_s=1.0)
        stimulus = get_stimulus(spec.class_label)
        samples = stimulus.render(spec, time_axis(spec), PinnedRng(1))
        magnitudes = np.abs(np.fft.rfft(samples))
        freqs = np.fft.rfftfreq(samples.size, d=1.0 / spec.sample_rate)
        top = sorted(freqs[np.argsort(magnitudes)[-5:]].tolist())
        assert top == pytest.approx([120.0, 240.0, 360.0, 480.0, 600.0])

    @pytest.mark.parametrize('label', list(StimulusClass))
    def test_no_clipping(self, label):
        for index in range(5):
            signal = synth(jittered_spec(label, 123, index, duration_s=0.5))
            assert np.max(np.abs(signal.samples)) <= PEAK_LIMIT + 1e-12

    def test_wind_whistle_more_tonal_than_road_noise(self):
        whistle = synth(default_spec('wind-whistle', 3))
        road = synth(default_spec('road-noise', 3))
        assert tonality_proxy(whistle)[0].value > tonality_proxy(road)[0].value

    def test_tone_above_nyquist_rejected(self):
        with pytest.raises(ParameterError):
            default_spec('wind-whistle', 1, {'tone_freq': 9000.0}, sample_rate=16000)

    def test_out_of_range_parameter_rejected(self):
        with pytest.raises(ParameterError):
            default_spec('road-noise', 1, {'cutoff': 5000.0})

    def test_unknown_override_rejected(self):
        with pytest.raises(ParameterError):
            default_spec('road-noise', 1, {'tone_freq': 3000.0})

    def test_road_noise_level(self):
        signal = synth(default_spec('road-noise', 2, {'level_dbfs': -15.0}))
        # Fades trim a little energy at the ends
        assert signal.level_dbfs() == pytest.approx(-15.0, abs=0.2)

    def test_peak_limit_scales_not_clips(self):
        samples = np.array([0.0, 2.0, -1.0])
        limited = peak_limit(samples)
        assert limited.max() == pytest.approx(PEAK_LIMIT)
        assert limited[2] == pytest.approx(-PEAK_LIMIT / 2.0)

    def test_peak_limit_leaves_quiet_input_alone(self):
        samples = np.array([0.1, -0.2])
        assert peak_limit(samples) is samples

    def test_fades_start_and_end_at_zero(self):
        faded = apply_fades(np.ones(4800), 48000)
        assert faded[0] == 0.0
        assert faded[-1] == pytest.approx(0.0, abs=1e-2)
        assert faded[2400] == 1.0


class TestJitteredSpec:
    def test_deterministic(self):
        assert jittered_spec('engine-boom', 123, 0) == jittered_spec('engine-boom', 123, 0)

    def test_items_differ(self):
        assert jittered_spec('engine-boom', 123, 0).params.f0 != jittered_spec('engine-boom', 123, 1).params.f0

    def test_ranges(self):
        for index in range(100):
            params = jittered_spec('engine-boom', 123, index).params
            assert 100.0 <= params.f0 <= 200.0
            assert 30.0 <= params.mod_freq <= 70.0
            assert 0.5 <= params.mod_depth <= 1.0

    def test_seed_comes_from_splitmix(self):
        assert jittered_spec('road-noise', 9, 4).seed == derive_seed(9, 4)

    def test_spec_round_trips_through_dict(self):
        spec = jittered_spec('wind-whistle', 123, 2)
        assert StimulusSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec


class TestExportStimulus:
    def test_writes_wav_and_sidecar(self, tmp_path):
        spec = default_spec('engine-boom', 7, duration_s=0.5)
        wav_path = str(tmp_path / 'boom.wav')
        sidecar = export_stimulus(spec, wav_path)
        assert sidecar == str(tmp_path / 'boom.json')
        with open(sidecar) as f:
            assert StimulusSpec.from_dict(json.load(f)) == spec
        signal = read_wav(wav_path)
        np.testing.assert_allclose(signal.samples, synth(spec).samples, atol=1e-7)


class TestTestTones:
    def test_sine_rms(self):
        assert sine(997.0, 1.0, 10.0).rms() == pytest.approx(0.7071067811865476, abs=1e-6)

    def test_silence(self):
        assert not np.any(silence(1.0).samples)

    def test_am_tone_peak(self):
        assert np.max(np.abs(am_tone(depth=1.0).samples)) <= 1.0

    def test_tone_in_noise_duration(self):
        assert tone_in_noise(duration_s=1.0).duration == pytest.approx(1.0)

    @pytest.mark.parametrize('kind', TEST_TONE_KINDS)
    def test_dispatch(self, kind):
        params = {
            'sine': {'freq': 440.0},
            'am_tone': {},
            'tone_in_noise': {'duration_s': 1.0},
            'silence': {},
            'white_noise': {},
            'band_noise': {'lo_bark': 3.0, 'hi_bark': 4.0},
        }[kind]
        assert len(test_tone(kind, **params)) > 0

    def test_dispatch_unknown(self):
        with pytest.raises(ParameterError):
            test_tone('square')

    def test_frequency_above_nyquist(self):
        with pytest.raises(ParameterError):
            sine(30000.0)

    def test_am_depth_out_of_range(self):
        with pytest.raises(ParameterError):
            am_tone(depth=1.5)
