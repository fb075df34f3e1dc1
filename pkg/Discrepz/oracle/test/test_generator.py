import pytest

from Discrepz.oracle import GeneratorSpec, generate, GENERATOR_KINDS
from Discrepz.utilities.errors import InstanceError


@pytest.mark.parametrize('kind', GENERATOR_KINDS)
def test_degree_is_exact(kind):
    sys = generate(GeneratorSpec(kind, n=20, num_sets=10, d=3, seed=1))
    assert sys.d == 3
    assert sys.n == 20
    assert sys.m == 10


@pytest.mark.parametrize('kind', GENERATOR_KINDS)
def test_reproducible(kind):
    spec = GeneratorSpec(kind, n=30, num_sets=12, d=4, seed=2 ** 63 + 7)
    assert generate(spec) == generate(spec)


def test_seeds_differ():
    a = generate(GeneratorSpec('random-bounded-degree', n=30, num_sets=12, d=4, seed=1))
    b = generate(GeneratorSpec('random-bounded-degree', n=30, num_sets=12, d=4, seed=2))
    assert a != b


def test_tight_sets_have_size_d():
    sys = generate(GeneratorSpec('tight-sets', n=20, num_sets=10, d=4, seed=3))
    assert sum(1 for s in sys.sets if len(s) == 4) * 2 >= sys.m
    sys = generate(GeneratorSpec('tight-sets', n=8, num_sets=8, d=4, seed=3))
    assert all(len(s) == 4 for s in sys.sets)


@pytest.mark.parametrize('spec', [GeneratorSpec('star', 5, 5, 2),
                                  GeneratorSpec('near-regular', 5, 2, 3),
                                  GeneratorSpec('tight-sets', 5, 6, 2),
                                  GeneratorSpec('random-bounded-degree', 0, 3, 1),
                                  GeneratorSpec('random-bounded-degree', 5, 3, 1, seed=-1)])
def test_infeasible(spec):
    with pytest.raises(InstanceError):
        generate(spec)
