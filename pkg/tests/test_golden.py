import pytest

from hamlattice import golden


@pytest.fixture(scope="module")
def fresh():
    return golden.generate()


@pytest.mark.parametrize("name", golden.NAMES)
def test_golden_matches_recomputation(fresh, name):
    assert golden.dumps(golden.load(name)) == golden.dumps(fresh[name])


def test_bless_to_temp_dir(tmp_path):
    paths = golden.bless(tmp_path)
    assert sorted(p.name for p in paths) == sorted(golden.NAMES)
    for p in paths:
        assert p.read_text() == golden.dumps(golden.load(p.name))


def test_exceptional_golden_counts():
    data = golden.load("exceptional.json")
    assert [len(data[str(k)]) for k in range(1, 9)] == [1, 3, 6, 10, 16, 27, 56, 240]
