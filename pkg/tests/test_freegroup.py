import random

from hypothesis import given
from hypothesis import strategies as st

from torusmcg import freegroup as fg

letters = st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0)
words = st.lists(letters, max_size=10).map(tuple)


@given(words)
def test_reduce_idempotent(w):
    r = fg.reduce_word(w)
    assert fg.reduce_word(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(words)
def test_inverse_cancels(w):
    r = fg.reduce_word(w)
    assert fg.mul(r, fg.invert_word(r)) == ()
    assert fg.mul(fg.invert_word(r), r) == ()


@given(words, words)
def test_mul_associative_with_reduce(u, v):
    assert fg.mul(fg.reduce_word(u), fg.reduce_word(v)) == fg.reduce_word(tuple(u) + tuple(v))


@given(words)
def test_cyclic_reduce_decomposition(w):
    r = fg.reduce_word(w)
    core, u = fg.cyclic_reduce(r)
    assert fg.mul(u, core, fg.invert_word(u)) == r
    if core:
        assert core[0] != -core[-1]


@given(words, words)
def test_canonical_cycle_conjugation_invariant(w, c):
    r = fg.reduce_word(w)
    assert fg.canonical_cycle(fg.conjugate(r, fg.reduce_word(c))) == fg.canonical_cycle(r)


@given(words, st.integers(min_value=0, max_value=9))
def test_canonical_cycle_rotation_invariant(w, k):
    core, _ = fg.cyclic_reduce(fg.reduce_word(w))
    if not core:
        return
    k %= len(core)
    rotated = core[k:] + core[:k]
    assert fg.canonical_cycle(rotated) == fg.canonical_cycle(core)


def test_power_and_conjugate():
    w = (1, 2)
    assert fg.power(w, 3) == (1, 2, 1, 2, 1, 2)
    assert fg.power(w, -1) == (-2, -1)
    assert fg.conjugate((2,), (1,)) == (1, 2, -1)


def _random_auto(rank, rng, steps=4):
    aut = fg.FreeAutomorphism.identity(rank)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:  # inner
            g = rng.choice([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)])
            step = fg.FreeAutomorphism.inner(rank, (g,))
        elif kind == 1:  # swap two generators
            i, j = rng.sample(range(1, rank + 1), 2)
            images = [(k,) for k in range(1, rank + 1)]
            images[i - 1], images[j - 1] = (j,), (i,)
            step = fg.FreeAutomorphism(rank, images, images)
        else:  # right multiplication g_i -> g_i g_j
            i, j = rng.sample(range(1, rank + 1), 2)
            images = [(k,) for k in range(1, rank + 1)]
            inverse = [(k,) for k in range(1, rank + 1)]
            images[i - 1] = (i, j)
            inverse[i - 1] = (i, -j)
            step = fg.FreeAutomorphism(rank, images, inverse)
        aut = step.compose(aut)
    return aut


def test_automorphism_compose_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(25):
        aut = _random_auto(3, rng)
        both = aut.compose(aut.inverse())
        for g in range(1, 4):
            assert both.apply((g,)) == (g,)


def test_is_inner_detects_inner():
    rng = random.Random(11)
    for _ in range(20):
        w = tuple(rng.choice([1, 2, 3, -1, -2, -3]) for _ in range(rng.randrange(5)))
        aut = fg.FreeAutomorphism.inner(3, fg.reduce_word(w))
        assert fg.is_inner(aut) is not None


def test_is_inner_rejects_non_inner():
    # swapping two generators is not inner (abelianization is not identity)
    images = [(2,), (1,), (3,)]
    aut = fg.FreeAutomorphism(3, images, images)
    assert fg.is_inner(aut) is None
    # g1 -> g1 g2 is not inner either
    images = [(1, 2), (2,), (3,)]
    inverse = [(1, -2), (2,), (3,)]
    assert fg.is_inner(fg.FreeAutomorphism(3, images, inverse)) is None


def test_peripheral_check_identity_and_swap():
    words = [(2, -4), (3, -2), (1, 4, -1, -3)]
    ps = fg.PeripheralStructure(words)
    ident = fg.FreeAutomorphism.identity(4)
    assert fg.peripheral_check(ident, ps) == (0, 1, 2)
    # conjugated identity still permutes peripherals trivially
    conj = fg.FreeAutomorphism.inner(4, (1, 2))
    assert fg.peripheral_check(conj, ps) == (0, 1, 2)
