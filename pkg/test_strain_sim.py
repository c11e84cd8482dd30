import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from simulation import (
    CHORD,
    DIAGONAL,
    MemberModel,
    SimConfig,
    TrainSpec,
    clean_signal,
    default_members,
    influence_ordinate,
    preset_train,
    sample_count,
    simulate_run,
)

SPAN = 45.72
NO_NOISE = dict(noise_fraction=0.0)


class TestInfluence:
    chord = MemberModel("c", CHORD, scale=1.0, apex=0.5)
    diagonal = MemberModel("d", DIAGONAL, scale=1.0, apex=0.35, reversal=0.45, negative_ratio=0.55)

    def test_triangular_shape(self):
        assert influence_ordinate(self.chord, SPAN / 2, SPAN) == 1.0
        assert influence_ordinate(self.chord, 0.0, SPAN) == 0.0
        assert influence_ordinate(self.chord, SPAN, SPAN) == 0.0
        assert influence_ordinate(self.chord, SPAN / 4, SPAN) == pytest.approx(0.5, rel=1e-15)

    def test_zero_off_span(self):
        x = np.array([-10.0, -0.1, SPAN + 0.1, SPAN + 50.0])
        for member in (self.chord, self.diagonal):
            assert_array_equal(influence_ordinate(member, x, SPAN), np.zeros(4))

    def test_diagonal_reverses_sign(self):
        ordinates = influence_ordinate(self.diagonal, np.linspace(0.0, SPAN, 2001), SPAN)
        assert ordinates.max() == pytest.approx(1.0)
        assert ordinates.min() == pytest.approx(-0.55)
        assert np.sum(ordinates[ordinates > 0]) > 0 and np.sum(ordinates[ordinates < 0]) < 0

    def test_continuous(self):
        x = np.linspace(0.0, SPAN, 100001)
        for member in default_members():
            steps = np.abs(np.diff(influence_ordinate(member, x, SPAN)))
            assert steps.max() < 1e-3

    def test_member_validation(self):
        with pytest.raises(ValueError):
            MemberModel("x", "parabolic")
        with pytest.raises(ValueError):
            MemberModel("x", CHORD, apex=1.0)
        with pytest.raises(ValueError):
            MemberModel("x", DIAGONAL, apex=0.5, reversal=0.4)
        with pytest.raises(ValueError):
            influence_ordinate(self.chord, 1.0, 0.0)


class TestTrains:
    def test_offsets_strictly_increase(self):
        for kind in ("test", "passenger"):
            offsets = preset_train(kind).offsets
            assert offsets[0] == 0.0
            assert all(b > a for a, b in zip(offsets, offsets[1:]))

    def test_passenger_engine_dominates(self):
        loads = np.array(preset_train("passenger").loads)
        assert loads[:6].max() / loads[6:].mean() >= 1.8

    def test_test_train_loads_near_uniform(self):
        loads = np.array(preset_train("test").loads)
        assert loads.std() / loads.mean() <= 0.1

    def test_validation(self):
        with pytest.raises(ValueError):
            preset_train("freight")
        with pytest.raises(ValueError):
            TrainSpec("bad", ((0.0, 10.0), (0.0, 10.0)))
        with pytest.raises(ValueError):
            TrainSpec("bad", ((1.0, 10.0),))
        with pytest.raises(ValueError):
            TrainSpec("bad", ((0.0, -1.0),))
        with pytest.raises(ValueError):
            TrainSpec("bad", ())


class TestSimulate:
    def test_sample_count_formula(self):
        train = preset_train("test")
        cfg = SimConfig(speed_kmph=50.0)
        expected = int(np.floor((SPAN + train.length) / (cfg.speed_ms * 0.025))) + 1
        assert sample_count(train, cfg) == expected
        assert simulate_run(train, cfg=cfg).length == expected

    def test_halving_speed_doubles_samples(self):
        train = preset_train("passenger")
        fast = sample_count(train, SimConfig(speed_kmph=50.0))
        slow = sample_count(train, SimConfig(speed_kmph=25.0))
        assert abs(slow - 2 * fast) <= 1

    def test_single_axle_peak(self):
        unit = TrainSpec("unit", ((0.0, 1.0),))
        member = MemberModel("m", CHORD, scale=1.0, apex=0.5)
        cfg = SimConfig(speed_kmph=50.0, **NO_NOISE)
        signal = simulate_run(unit, [member], cfg).channel("m")
        peak = int(np.argmax(signal))
        exact_time = (SPAN / 2) / cfg.speed_ms
        assert abs(peak * cfg.dt - exact_time) <= cfg.dt
        assert signal[peak] == pytest.approx(1.0, abs=cfg.speed_ms * cfg.dt / (SPAN / 2))

    def test_superposition(self):
        members = default_members()
        cfg = SimConfig(speed_kmph=36.0, **NO_NOISE)  # 0.25 m per sample
        pair = clean_signal(TrainSpec("pair", ((0.0, 100.0), (5.0, 50.0))), members, cfg)
        unit = clean_signal(TrainSpec("unit", ((0.0, 1.0),)), members, cfg)
        shift = 20
        for m in members:
            u = np.zeros(len(pair[m.label]))
            u[:len(unit[m.label])] = unit[m.label]
            lagged = np.concatenate([np.zeros(shift), u[:-shift]])
            assert_allclose(pair[m.label], 100.0 * u + 50.0 * lagged, rtol=0, atol=1e-12)

    def test_cross_channel_correlation(self):
        run = simulate_run(preset_train("test"), cfg=SimConfig(speed_kmph=50.0, **NO_NOISE))
        assert np.corrcoef(run.channel("loc1"), run.channel("loc3"))[0, 1] > 0.99
        assert np.corrcoef(run.channel("loc1"), run.channel("loc4"))[0, 1] < 0.9

    def test_clean_signals_start_at_rest_and_end_near_rest(self):
        for kind in ("test", "passenger"):
            run = simulate_run(preset_train(kind), cfg=SimConfig(speed_kmph=50.0, **NO_NOISE))
            for label in run.labels:
                values = run.channel(label)
                assert values[0] == 0.0
                # the last sample has the final axle within one step of the exit support
                assert abs(values[-1]) <= 0.02 * np.abs(values).max()

    def test_passenger_engine_gives_early_peak(self):
        run = simulate_run(preset_train("passenger"), cfg=SimConfig(speed_kmph=5.0, **NO_NOISE))
        loc4 = np.abs(run.channel("loc4"))
        third = len(loc4) // 3
        assert loc4[:third].max() > loc4[2 * third:].mean()

    def test_deterministic_and_seeded(self):
        train = preset_train("test")
        a = simulate_run(train, cfg=SimConfig(seed=3))
        b = simulate_run(train, cfg=SimConfig(seed=3))
        c = simulate_run(train, cfg=SimConfig(seed=4))
        assert a == b
        assert not np.array_equal(a.channel("loc1"), c.channel("loc1"))
        quiet = [simulate_run(train, cfg=SimConfig(seed=s, **NO_NOISE)) for s in (3, 4)]
        assert quiet[0].channels.keys() == quiet[1].channels.keys()
        for label in quiet[0].labels:
            assert_array_equal(quiet[0].channel(label), quiet[1].channel(label))

    def test_noise_level(self):
        train = preset_train("test")
        clean = simulate_run(train, cfg=SimConfig(**NO_NOISE))
        noisy = simulate_run(train, cfg=SimConfig(noise_fraction=0.02, seed=9))
        for label in clean.labels:
            peak = np.abs(clean.channel(label)).max()
            residual = noisy.channel(label) - clean.channel(label)
            assert residual.std() == pytest.approx(0.02 * peak, rel=0.25)
        fixed = simulate_run(train, cfg=SimConfig(noise_sigma=0.0))
        for label in clean.labels:
            assert_array_equal(fixed.channel(label), clean.channel(label))

    def test_metadata(self):
        run = simulate_run(preset_train("passenger"), cfg=SimConfig(speed_kmph=5.0, seed=12))
        assert run.meta.train_type == "passenger"
        assert run.meta.speed_kmph == 5.0
        assert "seed=12" in run.meta.source
        assert run.labels == ["loc1", "loc2", "loc3", "loc4", "loc5"]

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig(speed_kmph=0.0)
        with pytest.raises(ValueError):
            SimConfig(dt=-0.1)
        with pytest.raises(ValueError):
            SimConfig(noise_sigma=-1.0)
