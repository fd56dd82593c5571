from src.telemetry.sampling import head_sample, sampler_seed_for, trace_hash


def test_rate_extremes():
    assert not any(head_sample(i, 0.0, 7) for i in range(1000))
    assert all(head_sample(i, 1.0, 7) for i in range(1000))


def test_kept_fraction_matches_the_rate():
    kept = sum(head_sample(i, 0.05, 99) for i in range(100_000))

    assert 4793 <= kept <= 5207


def test_lower_rate_keeps_a_subset():
    seed = sampler_seed_for(42)
    ids = range(10_000)

    for low, high in ((0.01, 0.05), (0.05, 0.10), (0.10, 0.50)):
        kept_low = {i for i in ids if head_sample(i, low, seed)}
        kept_high = {i for i in ids if head_sample(i, high, seed)}
        assert kept_low <= kept_high


def test_hash_depends_on_the_seed():
    assert trace_hash(1, 1) != trace_hash(1, 2)
    assert trace_hash(1, 1) == trace_hash(1, 1)


def test_sampler_seed_differs_from_the_run_seed():
    assert sampler_seed_for(42) == sampler_seed_for(42)
    assert sampler_seed_for(42) != 42
    assert sampler_seed_for(42) != sampler_seed_for(43)
