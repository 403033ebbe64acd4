import oracle


def test_frozen_values_are_reproducible():
    assert oracle.compute() == oracle.load()


def test_oracle_sanity(oracle):
    for entry in oracle["entries"]:
        assert set(entry["signs"].values()) <= {1, -1}
        # Poincare duality on spheres
        assert entry["H"] == entry["H"][::-1]
        assert entry["Hbar"] == entry["H"]
