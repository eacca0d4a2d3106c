from math import gcd

import pytest

from workbench.core.errors import InvalidArgument, ProtocolAbort
from workbench.core.rng import Rng
from workbench.services.aowf import (
    certificate_domain,
    shift_domain,
    sigma_cert,
    totalize,
    weakly_but_not_associative,
)
from workbench.services.channel import Channel, Erich
from workbench.services.graphs import complete_graph
from workbench.services.numtheory import discrete_log_bruteforce, power_mod
from workbench.services.protocols import (
    DhParams,
    dh_keyagree,
    dh_mitm,
    dh_shared_key,
    eavesdrop,
    elgamal_decrypt,
    elgamal_encrypt,
    elgamal_exchange,
    elgamal_keygen,
    elgamal_sign,
    elgamal_signature_exchange,
    elgamal_verify,
    find_associativity_witness,
    hybrid_dh,
    hybrid_dh_open,
    key_to_vigenere,
    rabi_sherman_exchange,
    rabi_sherman_sign,
    rabi_sherman_verify,
    rivest_sherman_algebra,
    rivest_sherman_keyagree,
    shamir_no_key,
    shamir_no_key_algebra,
)

PARAMS = DhParams(2147483647, 7)
SMALL = DhParams(23, 5)


def _exponent(rng: Rng, p: int, coprime: bool = False) -> int:
    while True:
        value = rng.randint(1, p - 2)
        if not coprime or gcd(value, p - 1) == 1:
            return value


def test_params_need_a_primitive_root():
    with pytest.raises(InvalidArgument):
        DhParams(23, 2)
    with pytest.raises(InvalidArgument):
        DhParams(21, 2)


def test_channel_records_and_substitutes():
    erich = Erich({("alice", "x"): lambda v: v + 1})
    channel = Channel("demo", {"p": 5}, seed=1, erich=erich)
    assert channel.send(1, "alice", "x", 10) == 11
    assert channel.send(2, "bob", "y", 3) == 3
    t = channel.finish(bob=3)
    assert [(m.sender, m.label, m.payload) for m in t.messages] == [
        ("alice", "x", 10), ("erich", "x", 11), ("bob", "y", 3),
    ]
    assert erich.active
    assert erich.seen("y") == 3
    with pytest.raises(ValueError):
        channel.send(1, "alice", "late", 0)


def test_dh_small_example():
    t, k_a, k_b = dh_keyagree(SMALL, 6, 15)
    assert k_a == k_b == 2
    assert t.payloads() == [power_mod(5, 15, 23), power_mod(5, 6, 23)]
    assert dh_shared_key(SMALL, 6, 15) == (2, 2)


@pytest.mark.parametrize("seed", range(100))
def test_dh_agrees(seed):
    rng = Rng(seed)
    t, k_a, k_b = dh_keyagree(PARAMS, _exponent(rng, PARAMS.p), _exponent(rng, PARAMS.p), seed)
    assert k_a == k_b
    assert t.outputs == {"alice": k_a, "bob": k_b}


def test_dh_exponent_range():
    with pytest.raises(InvalidArgument):
        dh_keyagree(SMALL, 0, 3)
    with pytest.raises(InvalidArgument):
        dh_keyagree(SMALL, 3, 22)


def test_eavesdropper_sees_only_public_values():
    t, k, _ = dh_keyagree(SMALL, 6, 15)
    view = eavesdrop(t)
    assert view["params"] == {"p": 23, "g": 5}
    payloads = [payload for _, _, payload in view["messages"]]
    assert 6 not in payloads and 15 not in payloads and k not in payloads
    # at desk scale Erich can still take discrete logarithms
    alpha = t.messages[1].payload
    assert power_mod(5, discrete_log_bruteforce(5, alpha, 23), 23) == alpha


@pytest.mark.parametrize("seed", range(100))
def test_man_in_the_middle(seed):
    rng = Rng(seed)
    a, b, e1, e2 = (_exponent(rng, PARAMS.p) for _ in range(4))
    t, keys, detected = dh_mitm(PARAMS, a, b, e1, e2, seed)
    honest = power_mod(PARAMS.g, a * b, PARAMS.p)
    assert keys["alice-erich"] == t.outputs["alice"]
    assert keys["erich-bob"] == t.outputs["bob"]
    if e2 != b:
        assert t.outputs["alice"] != honest
    if e1 != a:
        assert t.outputs["bob"] != honest
    assert detected is False
    assert [m.sender for m in t.messages] == ["bob", "erich", "alice", "erich"]


def test_mitm_keys_differ_from_honest_run():
    a, b, e1, e2 = 6, 15, 3, 9
    t, keys, _ = dh_mitm(SMALL, a, b, e1, e2)
    honest = dh_shared_key(SMALL, a, b)[0]
    assert keys["alice-erich"] == power_mod(5, a * e2, 23) != honest
    assert keys["erich-bob"] == power_mod(5, b * e1, 23) != honest


def test_hybrid_key_letters():
    assert key_to_vigenere(2019) == "CABJ"


@pytest.mark.parametrize("seed", range(100))
def test_hybrid_dh_round_trip(seed):
    rng = Rng(seed)
    b, a = _exponent(rng, PARAMS.p), _exponent(rng, PARAMS.p)
    t = hybrid_dh(PARAMS, b, a, "ATTACKATDAWN", seed)
    assert t.outputs["bob"] == "ATTACKATDAWN"
    alpha = t.messages[1].payload
    assert hybrid_dh_open(PARAMS, b, alpha, t.messages[2].payload) == "ATTACKATDAWN"


@pytest.mark.parametrize("seed", range(100))
def test_elgamal_round_trip(seed):
    rng = Rng(seed)
    b, beta = elgamal_keygen(PARAMS, rng)
    a = _exponent(rng, PARAMS.p, coprime=True)
    m = rng.randint(1, PARAMS.p - 1)
    alpha, c = elgamal_encrypt(PARAMS, beta, a, m)
    assert elgamal_decrypt(PARAMS, b, alpha, c) == m
    assert elgamal_exchange(PARAMS, b, a, m, seed).outputs["bob"] == m


def test_elgamal_message_range():
    with pytest.raises(InvalidArgument):
        elgamal_encrypt(SMALL, 10, 3, 0)
    with pytest.raises(InvalidArgument):
        elgamal_encrypt(SMALL, 10, 3, 23)


@pytest.mark.parametrize("a", [2, 11, 20])
def test_elgamal_encrypt_needs_a_coprime_to_p_minus_1(a):
    with pytest.raises(InvalidArgument):
        elgamal_encrypt(SMALL, 10, a, 5)
    alpha, c = elgamal_encrypt(SMALL, 10, 3, 5)
    assert (alpha, c) == (power_mod(5, 3, 23), 5 * power_mod(10, 3, 23) % 23)


@pytest.mark.parametrize("seed", range(100))
def test_elgamal_signatures(seed):
    rng = Rng(seed)
    b = _exponent(rng, PARAMS.p, coprime=True)
    r = _exponent(rng, PARAMS.p, coprime=True)
    m = rng.randbelow(PARAMS.p - 1)
    beta, rho, s = elgamal_sign(PARAMS, b, r, m)
    assert elgamal_verify(PARAMS, beta, m, rho, s)
    assert not elgamal_verify(PARAMS, beta, (m + 1) % (PARAMS.p - 1), rho, s)
    assert elgamal_signature_exchange(PARAMS, b, r, m, seed).outputs["alice"] is True


def test_elgamal_sign_rejects_r_sharing_factor_with_p_minus_1():
    with pytest.raises(InvalidArgument):
        elgamal_sign(SMALL, 3, 2, 5)


@pytest.mark.parametrize("seed", range(100))
def test_shamir_no_key(seed):
    rng = Rng(seed)
    a = _exponent(rng, PARAMS.p, coprime=True)
    b = _exponent(rng, PARAMS.p, coprime=True)
    m = rng.randint(1, PARAMS.p - 1)
    assert shamir_no_key_algebra(PARAMS.p, a, b, m) == m
    t = shamir_no_key(PARAMS.p, a, b, m, seed=seed)
    assert t.outputs["bob"] == m
    assert [m.label for m in t.messages] == ["x", "y", "z"]


def test_shamir_edge_cases():
    assert shamir_no_key(23, 1, 3, 9).messages[0].payload == 9
    with pytest.raises(InvalidArgument):
        shamir_no_key(23, 3, 5, 23)
    assert shamir_no_key(23, 3, 5, 23, allow_degenerate=True).outputs["bob"] == 0
    with pytest.raises(InvalidArgument):
        shamir_no_key(23, 2, 5, 9)


@pytest.mark.parametrize("seed", range(100))
def test_rivest_sherman_with_addition(seed):
    rng = Rng(seed)
    x, y, z = (rng.randbelow(10 ** 9) for _ in range(3))
    t, k_a, k_b = rivest_sherman_keyagree(lambda u, v: u + v, x, y, z, seed)
    assert k_a == k_b == x + y + z
    assert t.outputs["agreed"] is True


@pytest.mark.parametrize("seed", range(100))
def test_rivest_sherman_with_totalized_certificate_function(seed):
    rng = Rng(seed)
    domain = shift_domain(certificate_domain(complete_graph(3)))
    x, y, z = (rng.choice(domain) for _ in range(3))
    _, k_a, k_b = rivest_sherman_keyagree(totalize(sigma_cert), x, y, z, seed)
    assert k_a == k_b


def test_rivest_sherman_disagrees_for_non_associative_sigma():
    subtract = lambda u, v: abs(u - v)
    witness = find_associativity_witness(subtract, lambda r: r.randbelow(100), Rng(1))
    assert witness is not None
    t, k_a, k_b = rivest_sherman_keyagree(subtract, *witness)
    assert k_a != k_b
    assert t.outputs["agreed"] is False
    assert rivest_sherman_algebra(subtract, *witness) == (k_a, k_b)


def test_rivest_sherman_aborts_on_undefined_sigma():
    control = weakly_but_not_associative()
    with pytest.raises(ProtocolAbort):
        rivest_sherman_keyagree(control, 0, 1, 2)


@pytest.mark.parametrize("seed", range(100))
def test_rabi_sherman_signatures(seed):
    rng = Rng(seed)
    add = lambda u, v: u + v
    x_a, y_a, m = (rng.randbelow(10 ** 9) for _ in range(3))
    public, sig = rabi_sherman_sign(add, x_a, y_a, m)
    assert rabi_sherman_verify(add, public, m, sig)
    assert not rabi_sherman_verify(add, public, m + 1, sig)
    assert rabi_sherman_exchange(add, x_a, y_a, m, seed).outputs["bob"] is True


def test_rabi_sherman_with_totalized_certificate_function():
    sigma = totalize(sigma_cert)
    domain = shift_domain(certificate_domain(complete_graph(3)))
    for x_a in domain[1:8]:
        for m in domain[1:8]:
            public, sig = rabi_sherman_sign(sigma, x_a, domain[3], m)
            assert rabi_sherman_verify(sigma, public, m, sig)
