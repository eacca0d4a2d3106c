import pytest
from hypothesis import given, strategies as st

from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.aowf import (
    BOT,
    bot_extend,
    certificate_domain,
    check_associative,
    check_commutative,
    check_overstrong_candidate,
    check_weakly_associative,
    decode_certificate,
    decode_graph,
    default_rho,
    encode_certificate,
    encode_graph,
    even,
    invert_first_bruteforce,
    invert_second_bruteforce,
    is_certificate,
    odd,
    pair,
    shift_domain,
    sigma_cert,
    sigma_cert_fn,
    sigma_strong,
    totalize,
    universal_inverter_for_sigma_strong,
    unpair,
    weakly_but_not_associative,
)
from workbench.services.graphs import complete_graph, cycle_graph, enumerate_3colorings, path_graph

NAMED = {"K3": complete_graph(3), "P3": path_graph(3), "C5": cycle_graph(5)}


@given(st.integers(min_value=0, max_value=10 ** 30), st.integers(min_value=0, max_value=10 ** 30))
def test_pairing_round_trip(x, y):
    assert unpair(pair(x, y)) == (x, y)


def test_pairing_starts_at_zero():
    assert pair(0, 0) == 0
    assert [unpair(z) for z in range(4)] == [(0, 0), (1, 0), (0, 1), (2, 0)]
    with pytest.raises(InvalidArgument):
        pair(-1, 0)


def test_bottom_extension_and_totalization():
    partial = lambda a, b: a - b if a >= b else None
    extended = bot_extend(partial)
    assert extended(3, 1) == 2
    assert extended(1, 3) is BOT
    assert extended(BOT, 1) is BOT
    total = totalize(partial)
    assert total(4, 2) == 3
    assert total(2, 4) == 0
    assert total(0, 5) == 0
    assert shift_domain([0, 4]) == [0, 1, 5]


@pytest.mark.parametrize("name", sorted(NAMED))
def test_graph_and_certificate_codecs(name):
    g = NAMED[name]
    x = encode_graph(g)
    assert decode_graph(x) == g
    for psi in enumerate_3colorings(g):
        z = encode_certificate(x, psi)
        assert decode_certificate(x, z) == psi
        assert is_certificate(x, z)
    assert not is_certificate(x, x)
    assert decode_graph(0) is None
    assert decode_graph(2) is None


@pytest.mark.parametrize("name,size", [("K3", 30), ("P3", 30), ("C5", 33)])
def test_certificate_domain_sizes(name, size):
    domain = certificate_domain(NAMED[name])
    assert len(domain) == size
    assert len(set(domain)) == size
    assert len(domain) ** 3 >= 27_000


def test_sigma_cert_cases():
    g = complete_graph(3)
    x = encode_graph(g)
    z1, z2 = sorted(encode_certificate(x, psi) for psi in enumerate_3colorings(g)[:2])
    assert sigma_cert(pair(x, z1), pair(x, z2)) == pair(x, z1)
    assert sigma_cert(pair(x, x), pair(x, z2)) == pair(x, x)
    assert sigma_cert(pair(x, z2), pair(x, x)) == pair(x, x)
    assert sigma_cert(pair(x, x), pair(x, x)) is None
    other = encode_graph(path_graph(3))
    assert sigma_cert(pair(x, z1), pair(other, other)) is None


@pytest.mark.parametrize("name", sorted(NAMED))
def test_sigma_cert_is_associative_and_commutative(name):
    fn = sigma_cert_fn(NAMED[name])
    assert check_associative(fn, fn.domain).holds
    assert check_commutative(fn, fn.domain).holds
    assert check_weakly_associative(fn, fn.domain).holds


@pytest.mark.parametrize("name", sorted(NAMED))
def test_totalized_sigma_cert_keeps_both_properties(name):
    domain = shift_domain(certificate_domain(NAMED[name]))
    total = totalize(sigma_cert)
    assert check_associative(total, domain).holds
    assert check_commutative(total, domain).holds


def test_control_function_is_weakly_but_not_fully_associative():
    control = weakly_but_not_associative()
    assert check_weakly_associative(control, control.domain).holds
    result = check_associative(control, control.domain)
    assert not result.holds
    assert result.witness == [0, 1, 2]
    assert result.domain_size == 4


def test_subtraction_is_not_associative():
    result = check_associative(lambda a, b: a - b if a >= b else None, range(4))
    assert not result.holds
    assert check_commutative(lambda a, b: a - b if a >= b else None, range(4)).witness == [0, 1]


def test_sigma_strong_is_total_and_commutative():
    rng = Rng(12)
    for _ in range(2000):
        a, b = rng.randbelow(10 ** 4), rng.randbelow(10 ** 4)
        value = sigma_strong(a, b)
        assert isinstance(value, int) and value >= 0
        assert value == sigma_strong(b, a)


def test_universal_inverter_for_sigma_strong():
    rng = Rng(13)
    for _ in range(10 ** 4):
        z = rng.randbelow(10 ** 12)
        x, y = universal_inverter_for_sigma_strong(z)
        assert sigma_strong(x, y) == z
    assert check_overstrong_candidate(
        sigma_strong, lambda i, z, a: universal_inverter_for_sigma_strong(z), list(range(40))
    ).holds


def test_overstrong_candidate_can_fail():
    result = check_overstrong_candidate(lambda a, b: a * b, lambda i, z, a: (z, 0), list(range(4)))
    assert not result.holds
    assert result.property == "inverted-by-candidate"


def test_bruteforce_inverters():
    assert invert_first_bruteforce(sigma_strong, 0, 17, 20) == 17
    assert invert_second_bruteforce(sigma_strong, 0, 17, 20) == 17
    assert invert_first_bruteforce(lambda a, b: a + b, 5, 3, 10) is None


@pytest.mark.parametrize("a, b, expected", [
    (0, 0, 0),
    (0, 9, 9),
    (12, 0, 12),
    (3, 5, 17),
    (4, 6, 21),
])
def test_sigma_strong_values(a, b, expected):
    assert sigma_strong(a, b) == expected


@pytest.mark.parametrize("a", [1, 3, 7, 17, 101])
@pytest.mark.parametrize("b", [2, 4, 10, 64])
def test_sigma_strong_mixed_parity_applies_rho_to_the_odd_argument(a, b):
    expected = even(default_rho(*unpair(a)))
    assert sigma_strong(a, b) == expected
    assert sigma_strong(b, a) == expected
    assert sigma_strong(a, b, rho=lambda x, y: 50) == 100


def test_sigma_strong_parity_sweep():
    for a in range(60):
        for b in range(60):
            value = sigma_strong(a, b)
            if a == 0 or b == 0:
                assert value == a + b
            else:
                assert (value % 2 == 0) == (a % 2 != b % 2), (a, b)


def test_odd_and_even():
    assert [odd(n) for n in range(4)] == [1, 3, 5, 7]
    assert [even(n) for n in range(4)] == [0, 2, 4, 6]


def test_invert_second_on_addition():
    assert invert_second_bruteforce(lambda a, b: a + b, 3, 10, 20) == 7
    assert invert_first_bruteforce(lambda a, b: a + b, 3, 10, 20) == 7
    assert invert_second_bruteforce(lambda a, b: a + b, 3, 10, 5) is None


# pairs whose Cantor code is odd, so some odd argument carries them
@pytest.mark.parametrize("x, y", [(1, 0), (2, 1), (0, 2), (3, 2), (5, 4)])
def test_inverting_with_fixed_argument_two_recovers_the_rho_input(x, y):
    assert pair(x, y) % 2 == 1
    z = even(default_rho(x, y))
    b = invert_first_bruteforce(sigma_strong, 2, z, 200)
    assert b is not None and b % 2 == 1
    assert sorted(unpair(b)) == sorted((x, y))
    assert sigma_strong(2, b) == z


TOTAL_FUNCTIONS = [
    ("addition", lambda a, b: a + b, list(range(8)), True),
    ("product mod 7", lambda a, b: a * b % 7, list(range(7)), True),
    ("maximum", max, list(range(6)), True),
    ("floored subtraction", lambda a, b: max(a - b, 0), list(range(6)), False),
    ("distance", lambda a, b: abs(a - b), list(range(6)), False),
    ("mean", lambda a, b: (a + b) // 2, list(range(6)), False),
    ("totalized sigma_cert", totalize(sigma_cert), shift_domain(certificate_domain(complete_graph(3))), True),
]


@pytest.mark.parametrize("name, f, domain, associative", TOTAL_FUNCTIONS, ids=[t[0] for t in TOTAL_FUNCTIONS])
def test_total_functions_are_weakly_associative_iff_associative(name, f, domain, associative):
    weak = check_weakly_associative(f, domain)
    full = check_associative(f, domain)
    assert weak.holds == full.holds == associative
    if not associative:
        assert weak.witness is not None
