import pytest
import sympy
from hypothesis import given, settings as hsettings, strategies as st

from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.rsa import (
    RsaPrivateKey,
    RsaPublicKey,
    block_size,
    decode_blocks,
    encode_blocks,
    enlarge_exponent,
    key_from_text,
    rsa_decrypt,
    rsa_decrypt_crt,
    rsa_encrypt,
    rsa_keygen,
    rsa_keygen_from_primes,
    rsa_sign,
    rsa_verify,
)


@pytest.fixture(scope="module")
def small_key():
    return rsa_keygen_from_primes(11, 23, 3)


def test_worked_example(small_key):
    pk, sk = small_key
    assert (pk.n, pk.e, sk.d, sk.phi) == (253, 3, 147, 220)


def test_every_message_round_trips(small_key):
    pk, sk = small_key
    for m in range(pk.n):
        c = rsa_encrypt(pk, m)
        assert rsa_decrypt(sk, c) == m
        assert rsa_decrypt_crt(sk, c) == m


def test_default_exponent_is_smallest_coprime():
    pk, _ = rsa_keygen_from_primes(11, 23)
    assert pk.e == 3
    pk, _ = rsa_keygen_from_primes(7, 13)
    assert pk.e == 5


@pytest.mark.parametrize("p,q,e", [(11, 11, 3), (11, 21, 3), (11, 23, 2), (11, 23, 220), (11, 23, 5)])
def test_keygen_rejects_bad_inputs(p, q, e):
    with pytest.raises(InvalidArgument):
        rsa_keygen_from_primes(p, q, e)


def test_range_checks(small_key):
    pk, sk = small_key
    with pytest.raises(InvalidArgument):
        rsa_encrypt(pk, 253)
    with pytest.raises(InvalidArgument):
        rsa_decrypt(sk, 300)
    assert not rsa_verify(pk, 253, 1)


@hsettings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_random_keys_are_consistent(seed):
    pk, sk = rsa_keygen(64, Rng(seed))
    assert sympy.isprime(sk.p) and sympy.isprime(sk.q)
    assert sk.p * sk.q == pk.n
    assert pk.e * sk.d % sk.phi == 1
    m = seed % pk.n
    assert rsa_decrypt(sk, rsa_encrypt(pk, m)) == m


def test_keygen_with_fixed_exponent():
    pk, sk = rsa_keygen(128, Rng(5), e=65537)
    assert pk.e == 65537
    assert pk.n.bit_length() == 128


def test_sign_and_verify(small_key):
    pk, sk = small_key
    signature = rsa_sign(sk, 42)
    assert rsa_verify(pk, 42, signature)
    assert not rsa_verify(pk, 43, signature)


def test_key_text_format(small_key):
    pk, sk = small_key
    assert pk.to_text() == "rsa-pub n=0xfd e=0x3"
    assert key_from_text(pk.to_text()) == pk
    assert key_from_text(sk.to_text()) == sk
    assert key_from_text("rsa-priv n=0xfd d=0x93") == RsaPrivateKey(253, 147)
    with pytest.raises(InvalidArgument):
        key_from_text("rsa-pub n=0xfd")
    with pytest.raises(InvalidArgument):
        key_from_text("dsa-pub n=0x1")


def test_enlarged_exponent_keeps_decryption(small_key):
    pk, sk = small_key
    bigger = enlarge_exponent(pk, sk, 5)
    assert bigger.e == 3 + 5 * 220
    assert rsa_decrypt(sk, rsa_encrypt(bigger, 77)) == 77


def test_phi_needs_factors():
    with pytest.raises(InvalidArgument):
        RsaPrivateKey(253, 147).phi


def test_block_size():
    assert block_size(2 ** 16 + 1) == 2
    with pytest.raises(InvalidArgument):
        block_size(253)


@given(st.binary(max_size=64))
def test_blocks_round_trip(data):
    pk, sk = rsa_keygen(96, Rng(11))
    blocks = encode_blocks(data, pk.n)
    assert all(b < pk.n for b in blocks)
    encrypted = [rsa_encrypt(pk, b) for b in blocks]
    assert decode_blocks([rsa_decrypt(sk, c) for c in encrypted], pk.n, len(data)) == data


def test_random_padding_changes_ciphertext_but_not_message():
    pk, sk = rsa_keygen(96, Rng(11))
    data = b"attack at dawn"
    first = encode_blocks(data, pk.n, pad=3, rng=Rng(1))
    second = encode_blocks(data, pk.n, pad=3, rng=Rng(2))
    assert first != second
    assert decode_blocks(first, pk.n, len(data), pad=3) == data
    assert decode_blocks(second, pk.n, len(data), pad=3) == data
    with pytest.raises(InvalidArgument):
        encode_blocks(data, pk.n, pad=3)
    with pytest.raises(InvalidArgument):
        encode_blocks(data, pk.n, pad=11)
