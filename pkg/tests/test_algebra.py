import random
from concurrent.futures import ThreadPoolExecutor

from hypothesis import given, strategies as st

from vdwtif.algebra import SetAlgebra, cantor_pair, cantor_unpair, clause_literals, finite_set_of_index
from vdwtif.epset import EMPTY, NAT, complement, from_bits, intersect, res, shift_left, union

from conftest import epsets

A = res(0, 3)
NOISY = from_bits("1101", "001")


def test_finite_set_of_index():
    assert finite_set_of_index(1) == {1}
    assert finite_set_of_index(5) == {1, 3}
    assert finite_set_of_index(6) == {2, 3}


@given(st.integers(0, 10**6))
def test_cantor_round_trip(z):
    assert cantor_pair(*cantor_unpair(z)) == z


@given(st.integers(1, 3**8))
def test_clause_decoding_is_injective_on_signs(c):
    lits = clause_literals(c)
    assert lits
    assert sum(3 ** (k - 1) * (1 if pos else 2) for k, pos in lits) == c


def test_generator_examples():
    alg = SetAlgebra([A])
    assert alg.generator(1) == A
    assert alg.decode_generator(2) == (0, 1)
    assert alg.generator(2) == shift_left(A, 1)
    t = NAT - A
    two = SetAlgebra([A, t])
    i = cantor_pair(1, 0) + 1
    assert two.decode_generator(i) == (1, 0)
    assert two.generator(i) == t


def test_element_examples():
    alg = SetAlgebra([NOISY])
    g1, g2 = alg.generator(1), alg.generator(2)
    assert alg.element(1) == g1
    assert alg.element(2) == complement(g1)
    # clauses 1 and 3: generator 1 and generator 2, both positive
    assert alg.decode_element(5) == [[(1, True)], [(2, True)]]
    assert alg.element(5) == union(g1, g2)


def test_index_of_examples():
    alg = SetAlgebra([A])
    assert alg.index_of(alg.element(7), 1000) <= 7
    n = alg.index_of(NAT, 1000)
    assert n is not None and alg.element(n) == NAT
    assert alg.index_of(res(0, 5), 500) is None


def test_nat_and_empty_early():
    for seeds in ([A], [NAT], [NOISY]):
        alg = SetAlgebra(seeds)
        prefix = [alg.element(n) for n in range(1, 65)]
        assert NAT in prefix
    # the empty set needs two disjoint generators, which A provides
    assert EMPTY in [SetAlgebra([A]).element(n) for n in range(1, 65)]


def test_closure_by_enumeration():
    alg = SetAlgebra([A])
    rng = random.Random(11)
    for _ in range(40):
        x, y = alg.element(rng.randint(1, 100)), alg.element(rng.randint(1, 100))
        for z in (union(x, y), intersect(x, y), complement(x), shift_left(x, 1)):
            assert alg.index_of(z, 4096) is not None


@given(epsets(max_a=4, max_p=6), st.integers(1, 300), st.integers(1, 300))
def test_closure_exact(seed, m, n):
    alg = SetAlgebra([seed])
    x, y = alg.element(m), alg.element(n)
    for z in (union(x, y), intersect(x, y), complement(x), shift_left(x, 1)):
        assert alg.contains(z)


@given(epsets(max_a=4, max_p=6))
def test_atoms_partition(seed):
    alg = SetAlgebra([seed])
    atoms = alg.atoms()
    acc = EMPTY
    for x in atoms:
        assert not x.is_empty()
        assert intersect(acc, x) == EMPTY
        acc = union(acc, x)
    assert acc == NAT
    for g in alg.distinct_generators():
        assert alg.contains(g)


def test_not_in_algebra():
    assert not SetAlgebra([A]).contains(res(0, 2))


def test_determinism():
    a1, a2 = SetAlgebra([NOISY, A]), SetAlgebra([NOISY, A])
    for n in range(1, 10_001):
        assert a1.element(n) == a2.element(n)


def test_concurrent_queries_agree():
    ref = SetAlgebra([NOISY])
    expected = [ref.element(n) for n in range(1, 2001)]
    shared = SetAlgebra([NOISY])
    with ThreadPoolExecutor(8) as pool:
        chunks = list(pool.map(lambda lo: [shared.element(n) for n in range(lo, lo + 500)], range(1, 2001, 500)))
    assert [x for chunk in chunks for x in chunk] == expected
