import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraccrypt.errors import PreconditionError
from fraccrypt.permute import (
    KeystreamState,
    Permutation,
    apply_permutation,
    gen_permutation,
    invert_permutation,
    keystream,
    keystream_next,
)

M64 = (1 << 64) - 1


def oracle_splitmix(seed, count):
    """Reference SplitMix64 written from the published recurrence."""
    out, s = [], seed
    for _ in range(count):
        s = (s + 0x9E3779B97F4A7C15) & M64
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        out.append(z ^ (z >> 31))
    return out


def oracle_fisher_yates(seed, n):
    perm = list(range(n))
    stream = oracle_splitmix(seed, n - 1)
    for step, i in enumerate(range(n - 1, 0, -1)):
        j = stream[step] % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def test_golden_first_output_seed_zero():
    value, _ = keystream_next(KeystreamState(0))
    assert value == 0xE220A8397B1DCDAF == oracle_splitmix(0, 1)[0]


def test_keystream_is_deterministic():
    a = KeystreamState(123)
    assert keystream_next(a) == keystream_next(a)


def test_distinct_seeds_distinct_first_outputs():
    assert keystream_next(KeystreamState(1))[0] == 0x910A2DEC89025CC1
    assert keystream_next(KeystreamState(2))[0] == 0x975835DE1C9756CE


@pytest.mark.parametrize("seed", [0, 1, 2**63 + 5, M64])
def test_vector_stream_matches_scalar_steps(backend, seed):
    state = KeystreamState(seed)
    scalar = []
    for _ in range(16):
        value, state = keystream_next(state)
        scalar.append(value)
    assert scalar == oracle_splitmix(seed, 16)
    assert keystream(seed, 16).tolist() == scalar


def test_golden_permutation_seed0_n4(backend):
    # hand trace: j = 3 (i=3), 0 (i=2), 1 (i=1)
    assert gen_permutation(0, 4).mapping.tolist() == [2, 1, 0, 3]


@pytest.mark.parametrize("seed,n", [(0, 1), (7, 2), (99, 17), (2**64 - 1, 300), (123456789, 4096)])
def test_permutation_matches_oracle(backend, seed, n):
    assert gen_permutation(seed, n).mapping.tolist() == oracle_fisher_yates(seed, n)


def test_single_element():
    assert gen_permutation(42, 1).mapping.tolist() == [0]


def test_zero_length_rejected():
    with pytest.raises(PreconditionError):
        gen_permutation(0, 0)


@given(st.integers(0, M64), st.integers(1, 4096))
def test_permutation_is_bijection(seed, n):
    assert np.array_equal(np.sort(gen_permutation(seed, n).mapping), np.arange(n))


def test_distinct_seeds_give_distinct_permutations():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a, b = (int(s) for s in rng.integers(0, 2**63, size=2))
        if a != b:
            assert gen_permutation(a, 16) != gen_permutation(b, 16)


def test_apply_example():
    assert apply_permutation(np.array(["a", "b", "c"]), Permutation([2, 0, 1])).tolist() == ["c", "a", "b"]


def test_invert_example():
    assert invert_permutation(np.array(["c", "a", "b"]), Permutation([2, 0, 1])).tolist() == ["a", "b", "c"]


def test_identity_permutation_is_noop(rng):
    data = rng.normal(size=10)
    p = Permutation.identity(10)
    assert np.array_equal(apply_permutation(data, p), data)
    assert np.array_equal(invert_permutation(data, p), data)


@given(st.integers(0, M64), st.integers(1, 10_000))
def test_apply_invert_roundtrips(seed, n):
    data = np.random.default_rng(seed % 1000).normal(size=n) + 1j
    p = gen_permutation(seed, n)
    assert np.array_equal(invert_permutation(apply_permutation(data, p), p), data)
    assert np.array_equal(apply_permutation(invert_permutation(data, p), p), data)


def test_length_mismatch():
    with pytest.raises(PreconditionError):
        apply_permutation(np.zeros(3), Permutation([0, 1]))
    with pytest.raises(PreconditionError):
        invert_permutation(np.zeros(1), Permutation([0, 1]))


@pytest.mark.parametrize("mapping", [[0, 0], [1, 2], [-1, 0], []])
def test_rejects_non_bijection(mapping):
    with pytest.raises(PreconditionError):
        Permutation(mapping)


def test_mapping_is_read_only():
    p = gen_permutation(3, 5)
    with pytest.raises(ValueError):
        p.mapping[0] = 1
