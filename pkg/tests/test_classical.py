from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.classical import (
    ALPHABET,
    Direction,
    FiniteCryptosystem,
    HillKey,
    buchmann_system,
    caesar,
    ciphertext_probability,
    dump_cryptosystem,
    frequency_count,
    hill,
    is_perfectly_secret,
    letters_to_text,
    load_cryptosystem,
    one_time_pad,
    one_time_pad_system,
    posterior,
    posterior_bayes,
    sample_corpus,
    shannon_conditions,
    shannon_sweep,
    shift_system,
    text_to_letters,
    vigenere,
)

letter_strings = st.text(alphabet=ALPHABET, max_size=60)


def test_caesar_examples():
    assert caesar(11, "SUMMER") == "DFXXPC"
    assert caesar(11, "DNSZZW", Direction.DECRYPT) == "SCHOOL"


def test_caesar_key_range():
    with pytest.raises(InvalidArgument):
        caesar(26, "ABC")


def test_vigenere_example():
    assert vigenere("ENGLISH", "FINNISHISALLGREEKTOGERMANS") == "JVTYQKOMFGWTYYIRQEWYLVZGYA"


@given(st.integers(min_value=0, max_value=25), letter_strings)
def test_caesar_round_trip(key, text):
    assert caesar(key, caesar(key, text), Direction.DECRYPT) == text


@given(st.text(alphabet=ALPHABET, min_size=1, max_size=8), letter_strings)
def test_vigenere_round_trip(key, text):
    assert vigenere(key, vigenere(key, text), Direction.DECRYPT) == text


def test_vigenere_with_one_letter_key_is_caesar():
    assert vigenere("L", "SUMMER") == caesar(11, "SUMMER")


def test_letters_outside_alphabet_are_rejected():
    with pytest.raises(InvalidArgument):
        caesar(3, "hello")
    with pytest.raises(InvalidArgument):
        vigenere("", "ABC")


def test_hill_example():
    key = HillKey(((3, 3), (2, 5)))
    assert hill(key, "HELP") == "HIAT"
    assert hill(key, "HIAT", Direction.DECRYPT) == "HELP"


def test_hill_rejects_singular_key_and_ragged_text():
    with pytest.raises(InvalidArgument):
        HillKey(((2, 4), (1, 2)))
    with pytest.raises(InvalidArgument):
        HillKey(((13, 0), (0, 1)))
    with pytest.raises(InvalidArgument):
        hill(HillKey(((3, 3), (2, 5))), "ABC")


@given(st.text(alphabet=ALPHABET, max_size=30).map(lambda s: s[: len(s) - len(s) % 3]))
def test_hill_round_trip_3x3(text):
    key = HillKey(((6, 24, 1), (13, 16, 10), (20, 17, 15)))
    assert hill(key, hill(key, text), Direction.DECRYPT) == text


@given(st.lists(st.integers(min_value=0, max_value=1), max_size=32), st.data())
def test_one_time_pad_is_an_involution(key, data):
    message = data.draw(st.lists(st.integers(min_value=0, max_value=1), min_size=len(key), max_size=len(key)))
    assert one_time_pad(key, one_time_pad(key, message)) == message


def test_one_time_pad_length_mismatch():
    with pytest.raises(InvalidArgument):
        one_time_pad([0, 1], [1])


def test_text_helpers():
    assert text_to_letters("Hello, World!") == "HELLOWORLD"
    assert letters_to_text("HELLOWORLD", group=5) == "HELLO WORLD"
    with pytest.raises(InvalidArgument):
        letters_to_text("hello")


def test_frequency_count_on_bundled_sample():
    frequencies = frequency_count(sample_corpus())
    assert sum(frequencies.values()) == 1
    assert max(frequencies, key=frequencies.get) == "E"
    with pytest.raises(InvalidArgument):
        frequency_count("")


def test_buchmann_probabilities():
    system = buchmann_system()
    assert ciphertext_probability(system, "a") == Fraction(5, 8)
    assert ciphertext_probability(system, "b") == Fraction(3, 8)
    assert posterior(system, 0, "a") == Fraction(1, 10)
    assert posterior(system, 1, "a") == Fraction(9, 10)
    assert posterior(system, 0, "b") == Fraction(1, 2)
    assert posterior(system, 1, "b") == Fraction(1, 2)


def test_buchmann_is_not_perfectly_secret():
    verdict = is_perfectly_secret(buchmann_system())
    assert not verdict.holds
    assert verdict.witness == (0, "a")


def test_posterior_routes_agree_on_buchmann():
    system = buchmann_system()
    for p in system.plaintexts:
        for c in system.ciphertexts:
            assert posterior(system, p, c) == posterior_bayes(system, p, c)


@pytest.mark.parametrize("bits", [2, 3])
def test_one_time_pad_is_perfectly_secret(bits):
    system = one_time_pad_system(bits)
    assert is_perfectly_secret(system).holds
    assert shannon_conditions(system).both


def test_one_time_pad_with_skewed_plaintexts_stays_secret():
    dist = {"00": Fraction(1, 2), "01": Fraction(1, 4), "10": Fraction(1, 8), "11": Fraction(1, 8)}
    assert is_perfectly_secret(one_time_pad_system(2, dist)).holds


def test_shift_system_is_perfectly_secret():
    assert is_perfectly_secret(shift_system(5)).holds


def test_posterior_on_impossible_ciphertext():
    system = FiniteCryptosystem(
        plaintexts=(0,), ciphertexts=("a", "b"), keys=("K", "L"),
        enc={("K", 0): "a", ("L", 0): "a"},
        plaintext_dist={0: 1}, key_dist={"K": Fraction(1, 2), "L": Fraction(1, 2)},
    )
    with pytest.raises(InvalidArgument):
        posterior(system, 0, "b")


def test_cryptosystem_validation():
    with pytest.raises(InvalidArgument):
        FiniteCryptosystem(
            plaintexts=(0, 1), ciphertexts=("a",), keys=("K",),
            enc={("K", 0): "a", ("K", 1): "a"},
            plaintext_dist={0: Fraction(1, 2), 1: Fraction(1, 2)}, key_dist={"K": 1},
        )
    with pytest.raises(InvalidArgument):
        FiniteCryptosystem(
            plaintexts=(0,), ciphertexts=("a",), keys=("K",), enc={("K", 0): "a"},
            plaintext_dist={0: Fraction(1, 2)}, key_dist={"K": 1},
        )


def test_shannon_conditions_need_equal_sizes():
    system = FiniteCryptosystem(
        plaintexts=(0,), ciphertexts=("a", "b"), keys=("K",), enc={("K", 0): "a"},
        plaintext_dist={0: 1}, key_dist={"K": 1},
    )
    with pytest.raises(InvalidArgument):
        shannon_conditions(system)


def test_shannon_sweep_has_no_mismatches():
    report = shannon_sweep(250, Rng(1))
    assert report.systems == 250
    assert report.mismatches == ()
    assert 0 < report.perfectly_secret < 250


def test_table_format_round_trip_keeps_probabilities():
    system = load_cryptosystem(dump_cryptosystem(buchmann_system()))
    assert ciphertext_probability(system, "a") == Fraction(5, 8)
    assert is_perfectly_secret(system).witness == ("0", "a")


def test_table_format_errors_carry_line_numbers():
    with pytest.raises(InvalidArgument, match="line 2"):
        load_cryptosystem("P: 0\nbogus line\n")
    with pytest.raises(InvalidArgument):
        load_cryptosystem("P: 0\nC: a\n")
