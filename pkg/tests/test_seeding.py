from rfflms.seeding import derive_seed, make_rng


def test_derivation_is_deterministic():
    assert derive_seed(7, 0, "stream") == derive_seed(7, 0, "stream")
    assert make_rng(7, "x").standard_normal() == make_rng(7, "x").standard_normal()


def test_paths_are_independent():
    seeds = {
        derive_seed(7),
        derive_seed(7, 0),
        derive_seed(7, 1),
        derive_seed(7, 0, "stream"),
        derive_seed(7, 0, "bank"),
        derive_seed(8, 0, "stream"),
    }
    assert len(seeds) == 6


def test_string_labels_hash_stably():
    # pinned so that seeds survive interpreter restarts and platforms
    assert derive_seed(0, "stream") == derive_seed(0, "stream")
    assert derive_seed(0, "stream") != derive_seed(0, "bank")
    assert derive_seed(0, 1) != derive_seed(1, 0)
