# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import logging
import random
from datetime import date
from decimal import Decimal

import pytest

from ecoindex.errors import EmptySample, SpeedAtCreation
from ecoindex.indicators import (
    AccelerationMode,
    Bin,
    Cohort,
    DayZeroPolicy,
    QuantileSpec,
    assign_bin,
    cohort_acceleration,
    cohort_speed,
    cumulative_funding,
    ecosystem_acceleration,
    ecosystem_speed,
    fundraising_speed,
    funding_timeline,
    nth_year_series,
    nth_year_speed,
    quantile,
    rank_ecosystems,
    speed_observations,
    startup_acceleration,
)
from ecoindex.ingestion import Dataset
from ecoindex.model import Indicator, IndicatorSeries, Point, Unit

from . import oracle
from .builders import dataset, funding, random_dataset, scaled, shifted, startup

S1 = startup("s1", date(2010, 1, 1))


class TestCumulativeFunding:
    rounds = [funding(S1, 100, 1_000_000), funding(S1, 300, 2_000_000)]

    def test_no_rounds(self) -> None:
        assert cumulative_funding(S1, [], 1000) == 0

    def test_full_and_partial(self) -> None:
        assert cumulative_funding(S1, self.rounds, 300) == 3_000_000
        assert cumulative_funding(S1, self.rounds, 200) == 1_000_000
        assert cumulative_funding(S1, self.rounds, 99) == 0

    def test_ignores_unknown_amounts(self) -> None:
        rounds = [*self.rounds, funding(S1, 150, None)]
        assert cumulative_funding(S1, rounds, 300) == 3_000_000

    def test_monotonic(self) -> None:
        values = [cumulative_funding(S1, self.rounds, t) for t in range(0, 400, 7)]
        assert values == sorted(values)


class TestFundraisingSpeed:
    def test_single_round(self) -> None:
        speed = fundraising_speed(S1, [funding(S1, 365, 1_000_000)], 365)
        assert float(speed) == pytest.approx(2739.73, abs=0.01)

    def test_nothing_raised_yet(self) -> None:
        assert fundraising_speed(S1, [funding(S1, 365, 1_000_000)], 100) == 0

    def test_at_creation(self) -> None:
        with pytest.raises(SpeedAtCreation):
            fundraising_speed(S1, [funding(S1, 0, 1_000_000)], 0)


class TestSpeedObservations:
    def test_one_per_round(self) -> None:
        d = dataset([S1], [funding(S1, 100, 1_000_000), funding(S1, 300, 2_000_000)])
        obs = speed_observations(d, "Berlin")
        assert [(o.t_days, o.cumulative_usd) for o in obs] == [(100, 1_000_000), (300, 3_000_000)]
        assert obs[1].speed_usd_per_day == 10_000

    def test_skips_unknown_amounts(self) -> None:
        d = dataset([S1], [funding(S1, 100, None), funding(S1, 300, 3_000_000)])
        assert [o.t_days for o in speed_observations(d, "Berlin")] == [300]

    def test_founding_day_clamped(self) -> None:
        d = dataset([S1], [funding(S1, 0, 500_000)])
        (obs,) = speed_observations(d, "Berlin")
        assert obs.t_days == 1
        assert obs.speed_usd_per_day == 500_000

    def test_founding_day_dropped_but_counted(self) -> None:
        d = dataset([S1], [funding(S1, 0, 500_000), funding(S1, 100, 500_000)])
        (obs,) = speed_observations(d, "Berlin", DayZeroPolicy.DROP)
        assert obs.t_days == 100
        assert obs.cumulative_usd == 1_000_000

    def test_coincident_rounds_merged(self) -> None:
        rounds = [funding(S1, 50, 100), funding(S1, 50, 200), funding(S1, 80, 300)]
        assert funding_timeline(S1, rounds) == [(50, 300), (80, 600)]

    def test_clamp_merges_with_day_one(self) -> None:
        rounds = [funding(S1, 0, 100), funding(S1, 1, 200)]
        assert funding_timeline(S1, rounds) == [(1, 300)]


class TestBinning:
    @pytest.mark.parametrize(
        ("t_days", "index"),
        [(0, 0), (182, 0), (183, 1), (200, 1), (365, 1), (366, 2), (420, 2), (1826, 9), (1827, 10)],
    )
    def test_assign_bin(self, t_days: int, index: int) -> None:
        assert assign_bin(t_days) == Bin(index)

    def test_matches_exact_division(self) -> None:
        for t in range(0, 4000):
            assert assign_bin(t).index == int(t // 182.625)

    def test_labels(self) -> None:
        assert Bin(0).label == "0-6 months"
        assert Bin(1).label == "6-12 months"
        assert Bin(2).label == "12-18 months"

    def test_negative(self) -> None:
        with pytest.raises(ValueError):
            assign_bin(-1)


class TestQuantile:
    def test_examples(self) -> None:
        assert quantile([5]) == 5
        assert quantile([1, 2, 3, 4]) == 2.5
        assert quantile([Decimal(3), Decimal(1), Decimal(2)]) == 2

    def test_empty(self) -> None:
        with pytest.raises(EmptySample):
            quantile([])

    def test_invalid_spec(self) -> None:
        for q in (0, 1, -0.5, 2):
            with pytest.raises(ValueError):
                QuantileSpec(q)

    @pytest.mark.parametrize("q", [0.5, 0.1])
    def test_against_sorting(self, q: float) -> None:
        rng = random.Random(1729)
        for _ in range(1000):
            values = [rng.uniform(-1e6, 1e7) for _ in range(rng.randint(1, 200))]
            assert quantile(values, QuantileSpec(q)) == pytest.approx(
                oracle.sorted_quantile(values, q),
                rel=1e-12,
                abs=1e-9,
            )

    def test_bounds_and_permutation(self) -> None:
        rng = random.Random(7)
        for _ in range(200):
            values = [rng.uniform(0, 100) for _ in range(rng.randint(1, 30))]
            shuffled = rng.sample(values, len(values))
            m = quantile(values)
            assert min(values) <= m <= max(values)
            assert quantile(shuffled) == m

    def test_median_stability(self) -> None:
        values = [1.0, 4.0, 9.0, 16.0, 25.0]
        assert quantile([*values, quantile(values)]) == quantile(values)


class TestEcosystemSpeed:
    def test_single_round(self) -> None:
        d = dataset([S1], [funding(S1, 200, 1_000_000)])
        series = ecosystem_speed(d, "Berlin")
        assert series.unit is Unit.USD_PER_YEAR
        assert series.indicator is Indicator.SPEED
        assert len(series.points) == 1
        assert series.points[0].index == 1
        assert series.points[0].value == pytest.approx(1_826_250)
        assert series.points[0].sample_count == 1
        assert series.points[0].label == "6-12 months"

    def test_median_of_two(self) -> None:
        s2 = startup("s2", date(2010, 1, 1))
        d = dataset([S1, s2], [funding(S1, 200, 400_000), funding(s2, 200, 800_000)])
        (pt,) = ecosystem_speed(d, "Berlin").points
        assert pt.value == pytest.approx(3000 * 365.25)
        assert pt.sample_count == 2

    def test_empty(self) -> None:
        d = dataset([S1], [])
        with pytest.raises(EmptySample):
            ecosystem_speed(d, "Berlin")
        with pytest.raises(EmptySample):
            ecosystem_speed(d, "London")

    def test_max_years(self) -> None:
        d = dataset([S1], [funding(S1, 100, 1), funding(S1, 800, 1), funding(S1, 1900, 1)])
        assert [pt.index for pt in ecosystem_speed(d, "Berlin").points] == [0, 4]
        assert [pt.index for pt in ecosystem_speed(d, "Berlin", max_years=2).points] == [0]
        assert [pt.index for pt in ecosystem_speed(d, "Berlin", max_years=None).points] == [
            0,
            4,
            10,
        ]

    def test_gaps_omitted(self) -> None:
        d = dataset([S1], [funding(S1, 10, 1), funding(S1, 700, 1)])
        assert [pt.index for pt in ecosystem_speed(d, "Berlin").points] == [0, 3]


class TestAcceleration:
    def test_startup_acceleration(self) -> None:
        rounds = [funding(S1, 100, 1_000_000), funding(S1, 200, 3_000_000)]
        assert startup_acceleration(S1, rounds) == [(200, pytest.approx(100.0))]

    def test_constant_speed(self) -> None:
        rounds = [funding(S1, 100, 1_000_000), funding(S1, 200, 1_000_000)]
        assert startup_acceleration(S1, rounds) == [(200, 0.0)]

    def test_slowing_down(self) -> None:
        rounds = [funding(S1, 100, 1_000_000), funding(S1, 300, 500_000)]
        assert startup_acceleration(S1, rounds) == [(300, pytest.approx(-25.0))]

    def test_single_round(self) -> None:
        with pytest.raises(EmptySample):
            startup_acceleration(S1, [funding(S1, 100, 1)])

    def test_identical_startups(self) -> None:
        startups = [startup(f"s{i}", date(2010, 1, 1)) for i in range(5)]
        rounds = [
            r
            for s in startups
            for r in (funding(s, 100, 1_000_000), funding(s, 200, 3_000_000))
        ]
        (pt,) = ecosystem_acceleration(dataset(startups, rounds), "Berlin").points
        assert pt.index == 1
        assert pt.value == pytest.approx(100 * 365.25**2 / 1e6)
        assert pt.sample_count == 5

    def test_mirror_population(self) -> None:
        up = startup("up", date(2010, 1, 1))
        down = startup("down", date(2010, 1, 1))
        rounds = [
            funding(up, 100, 1_000_000),
            funding(up, 200, 3_000_000),
            funding(down, 100, 3_000_000),
            funding(down, 200, 1_000_000),
        ]
        # Speeds: up 10k -> 20k, down 30k -> 20k per day
        (pt,) = ecosystem_acceleration(dataset([up, down], rounds), "Berlin").points
        assert pt.value == pytest.approx(0.0, abs=1e-9)


def planted_cohorts(early_usd_per_year: float, late_usd_per_year: float) -> Dataset:
    """One startup per cohort, each raising in bin 1 at the given annualized speed."""
    early = startup("early", date(2011, 3, 1))
    late = startup("late", date(2015, 3, 1))
    per_day = Decimal(365.25)
    return dataset(
        [early, late],
        [
            funding(early, 200, Decimal(early_usd_per_year) * 200 / per_day),
            funding(late, 200, Decimal(late_usd_per_year) * 200 / per_day),
        ],
    )


class TestCohortAcceleration:
    early = Cohort(2010, 2012)
    late = Cohort(2014, 2016)

    def test_planted(self) -> None:
        d = planted_cohorts(1_000_000, 2_000_000)
        absolute = cohort_acceleration(d, "Berlin", self.early, self.late)
        percent = cohort_acceleration(
            d, "Berlin", self.early, self.late, mode=AccelerationMode.PERCENT
        )

        assert absolute.unit is Unit.USD_MILLION_PER_YEAR2
        assert percent.unit is Unit.PERCENT
        assert absolute.variant == "2010-2012 vs 2014-2016"
        assert [pt.index for pt in absolute.points] == [1]
        assert absolute.points[0].value == pytest.approx(0.25, rel=1e-12)
        assert absolute.points[0].sample_count == 2
        assert percent.points[0].value == pytest.approx(100.0, rel=1e-12)

    def test_identical_cohorts(self) -> None:
        d = planted_cohorts(1_000_000, 1_000_000)
        for mode in AccelerationMode:
            series = cohort_acceleration(d, "Berlin", self.early, self.late, mode=mode)
            assert series.values() == [pytest.approx(0.0, abs=1e-9)]

    def test_only_shared_bins(self) -> None:
        early = startup("early", date(2011, 3, 1))
        late = startup("late", date(2015, 3, 1))
        d = dataset(
            [early, late],
            [funding(early, 10, 1000), funding(early, 200, 1000), funding(late, 200, 3000)],
        )
        series = cohort_acceleration(d, "Berlin", self.early, self.late)
        assert [pt.index for pt in series.points] == [1]

    def test_percent_skips_zero_speed(self, caplog: pytest.LogCaptureFixture) -> None:
        d = planted_cohorts(0, 1_000_000)
        with caplog.at_level(logging.WARNING):
            series = cohort_acceleration(
                d, "Berlin", self.early, self.late, mode=AccelerationMode.PERCENT
            )
        assert series.points == ()
        assert "percent mode" in caplog.text

    def test_empty_cohort(self) -> None:
        d = planted_cohorts(1_000_000, 2_000_000)
        with pytest.raises(EmptySample):
            cohort_acceleration(d, "Berlin", Cohort(2000, 2001), self.late)

    def test_overlapping_cohorts(self) -> None:
        d = planted_cohorts(1_000_000, 2_000_000)
        with pytest.raises(ValueError):
            cohort_acceleration(d, "Berlin", Cohort(2010, 2014), Cohort(2014, 2016))

    def test_cohort_speed_overlay(self) -> None:
        d = planted_cohorts(1_000_000, 2_000_000)
        series = cohort_speed(d, "Berlin", self.late)
        assert series.variant == "2014-2016"
        assert series.values() == [pytest.approx(2_000_000)]


class TestNthYearSpeed:
    def test_single_startup(self) -> None:
        s = startup("s", date(2010, 6, 1))
        d = dataset([s], [funding(s, 400, 1_200_000)])
        value, count = nth_year_speed(d, "Berlin", 2010, 2)
        assert value == pytest.approx(1_095_750)
        assert count == 1

    def test_outside_window(self) -> None:
        s = startup("s", date(2010, 6, 1))
        d = dataset([s], [funding(s, 400, 1_200_000)])
        with pytest.raises(EmptySample):
            nth_year_speed(d, "Berlin", 2010, 1)
        with pytest.raises(EmptySample):
            nth_year_speed(d, "Berlin", 2011, 2)

    def test_median_of_two(self) -> None:
        a = startup("a", date(2012, 1, 1))
        b = startup("b", date(2012, 12, 1))
        d = dataset([a, b], [funding(a, 100, 100_000), funding(b, 100, 300_000)])
        value, count = nth_year_speed(d, "Berlin", 2012, 1)
        assert value == pytest.approx(2000 * 365.25)
        assert count == 2

    def test_last_observation_in_window(self) -> None:
        s = startup("s", date(2010, 1, 1))
        d = dataset([s], [funding(s, 400, 400_000), funding(s, 700, 1_000_000)])
        value, count = nth_year_speed(d, "Berlin", 2010, 2)
        assert value == pytest.approx(1_400_000 / 700 * 365.25)
        assert count == 1

    def test_window_bounds(self) -> None:
        s = startup("s", date(2010, 1, 1))
        d = dataset([s], [funding(s, 365, 365_000)])
        assert nth_year_speed(d, "Berlin", 2010, 2).sample_count == 1
        with pytest.raises(EmptySample):
            nth_year_speed(d, "Berlin", 2010, 1)

    def test_invalid_n(self) -> None:
        d = dataset([S1], [funding(S1, 100, 1)])
        with pytest.raises(ValueError):
            nth_year_speed(d, "Berlin", 2010, 0)

    def test_series_omits_empty_years(self) -> None:
        a = startup("a", date(2010, 3, 1))
        b = startup("b", date(2012, 3, 1))
        d = dataset([a, b], [funding(a, 100, 1000), funding(b, 100, 2000)])
        series = nth_year_series(d, "Berlin", 1, range(2010, 2014))
        assert [pt.index for pt in series.points] == [2010, 2012]
        assert series.variant == "n=1"


def test_rank_ecosystems() -> None:
    def series(ecosystem: str, *values: float) -> IndicatorSeries:
        return IndicatorSeries(
            ecosystem,
            Indicator.SPEED,
            Unit.USD_PER_YEAR,
            tuple(Point(i, v, 1) for i, v in enumerate(values)),
        )

    ranking = rank_ecosystems(
        [series("Slow", 1, 1, 100), series("Fast", 5, 5), series("Mid", 3, 3, 0)],
    )
    assert ranking == [("Fast", 5.0), ("Mid", 3.0), ("Slow", 1.0)]
    assert all(type(mean) is float for _, mean in ranking)
    assert rank_ecosystems([series("Fast", 5, 5), series("Slow", 1, 100)], max_bin=1)[0][0] == (
        "Fast"
    )
    assert rank_ecosystems([]) == []


class TestAgainstOracle:
    @pytest.fixture(scope="class", params=[1, 2, 3])
    def d(self, request: pytest.FixtureRequest) -> Dataset:
        return random_dataset(seed=request.param)

    @pytest.mark.parametrize("q", [0.5, 0.1])
    def test_speed(self, d: Dataset, q: float) -> None:
        for ecosystem in ("Alpha", "Beta"):
            series = ecosystem_speed(d, ecosystem, QuantileSpec(q))
            expected = oracle.speed(d, ecosystem, q)
            assert [pt.index for pt in series.points] == list(expected)
            for pt in series.points:
                assert pt.value == pytest.approx(expected[pt.index][0], rel=1e-9)
                assert pt.sample_count == expected[pt.index][1]

    def test_acceleration(self, d: Dataset) -> None:
        for ecosystem in ("Alpha", "Beta"):
            series = ecosystem_acceleration(d, ecosystem)
            expected = oracle.acceleration(d, ecosystem)
            assert [pt.index for pt in series.points] == list(expected)
            for pt in series.points:
                assert pt.value == pytest.approx(expected[pt.index][0], rel=1e-9, abs=1e-6)
                assert pt.sample_count == expected[pt.index][1]

    @pytest.mark.parametrize("mode", list(AccelerationMode))
    def test_cohort_acceleration(self, d: Dataset, mode: AccelerationMode) -> None:
        early, late = (2008, 2011), (2013, 2017)
        for ecosystem in ("Alpha", "Beta"):
            series = cohort_acceleration(
                d, ecosystem, Cohort(*early), Cohort(*late), mode=mode
            )
            expected = oracle.cohort_acceleration(
                d, ecosystem, early, late, percent=mode is AccelerationMode.PERCENT
            )
            assert [pt.index for pt in series.points] == list(expected)
            for pt in series.points:
                assert pt.value == pytest.approx(expected[pt.index], rel=1e-9, abs=1e-9)

    def test_nth_year_speed(self, d: Dataset) -> None:
        checked = 0
        for ecosystem in ("Alpha", "Beta"):
            for year in range(2008, 2019):
                for n in (1, 2, 3):
                    expected = oracle.nth_year_speed(d, ecosystem, year, n)
                    if expected is None:
                        with pytest.raises(EmptySample):
                            nth_year_speed(d, ecosystem, year, n)
                        continue
                    value, count = nth_year_speed(d, ecosystem, year, n)
                    assert value == pytest.approx(expected[0], rel=1e-9)
                    assert count == expected[1]
                    checked += 1
        assert checked > 0


class TestProperties:
    d = random_dataset(seed=42)

    @pytest.mark.parametrize("c", ["0.5", "3", "1000000"])
    def test_scale_equivariance(self, c: str) -> None:
        factor = Decimal(c)
        big = scaled(self.d, factor)
        for ecosystem in ("Alpha", "Beta"):
            base = ecosystem_speed(self.d, ecosystem)
            assert ecosystem_speed(big, ecosystem).values() == pytest.approx(
                [v * float(factor) for v in base.values()], rel=1e-12
            )

            early, late = Cohort(2008, 2011), Cohort(2013, 2017)
            absolute = cohort_acceleration(self.d, ecosystem, early, late)
            assert cohort_acceleration(big, ecosystem, early, late).values() == pytest.approx(
                [v * float(factor) for v in absolute.values()], rel=1e-12, abs=1e-12
            )

            for year in range(2008, 2019):
                try:
                    value, count = nth_year_speed(self.d, ecosystem, year, 1)
                except EmptySample:
                    continue
                assert nth_year_speed(big, ecosystem, year, 1) == (
                    pytest.approx(value * float(factor), rel=1e-12),
                    count,
                )

            percent = cohort_acceleration(
                self.d, ecosystem, early, late, mode=AccelerationMode.PERCENT
            )
            assert cohort_acceleration(
                big, ecosystem, early, late, mode=AccelerationMode.PERCENT
            ).values() == pytest.approx(percent.values(), rel=1e-12, abs=1e-12)

    def test_time_shift_invariance(self) -> None:
        # 1461 days is exactly four calendar years here, so day counts stay the same
        moved = shifted(self.d, 1461)
        early, late = Cohort(2008, 2011), Cohort(2013, 2017)
        for ecosystem in ("Alpha", "Beta"):
            assert ecosystem_speed(moved, ecosystem) == ecosystem_speed(self.d, ecosystem)
            assert ecosystem_acceleration(moved, ecosystem) == ecosystem_acceleration(
                self.d, ecosystem
            )
            assert cohort_acceleration(
                moved, ecosystem, Cohort(2012, 2015), Cohort(2017, 2021)
            ).values() == pytest.approx(
                cohort_acceleration(self.d, ecosystem, early, late).values(), rel=1e-12
            )

    def test_day_zero_policies_differ_only_at_founding(self) -> None:
        for ecosystem in ("Alpha", "Beta"):
            clamped = {o.t_days for o in speed_observations(self.d, ecosystem)}
            dropped = {
                o.t_days for o in speed_observations(self.d, ecosystem, DayZeroPolicy.DROP)
            }
            assert dropped <= clamped
            assert clamped - dropped <= {1}


def test_fixture_berlin_faster_than_london(fixture_dataset: Dataset) -> None:
    berlin = ecosystem_speed(fixture_dataset, "Berlin")
    london = ecosystem_speed(fixture_dataset, "London")
    for pt in berlin.points:
        if (other := london.point_at(pt.index)) is not None:
            assert pt.value > other.value

    ranking = [name for name, _ in rank_ecosystems([london, berlin])]
    assert ranking == ["Berlin", "London"]
