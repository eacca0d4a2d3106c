"""
Two-party protocols over the in-process channel.

Each protocol exists twice: a pure function of every secret (`*_algebra`,
`dh_shared_key`, the ElGamal primitives) and a run in which Alice and Bob are
separate objects talking through a `Channel`. Only the channel run produces a
transcript; both must agree.
"""
import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Callable, Dict, Optional, Tuple

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument, ProtocolAbort
from workbench.core.rng import Rng
from workbench.schemas.transcript import Transcript
from workbench.services.channel import Channel, Erich
from workbench.services.classical import ALPHABET, Direction, LetterString, vigenere
from workbench.services.numtheory import Natural, is_primitive_root, mod_inverse, power_mod

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

Sigma = Callable[[Natural, Natural], Optional[Natural]]


@dataclass(frozen=True)
class DhParams:
    p: Natural
    g: Natural

    def __post_init__(self):
        if not is_primitive_root(self.g, self.p):
            raise InvalidArgument(f"{self.g} is not a primitive root of {self.p}")

    def as_dict(self) -> Dict[str, Natural]:
        return {"p": self.p, "g": self.g}


def _check_exponent(params: DhParams, value: Natural, name: str) -> None:
    if not 1 <= value <= params.p - 2:
        raise InvalidArgument(f"{name} must lie in [1, p-2] = [1, {params.p - 2}], got {value}")


def eavesdrop(transcript: Transcript) -> Dict[str, Any]:
    """Everything Erich learns from a run: the public parameters and every payload sent."""
    return {
        "params": dict(transcript.params),
        "messages": [(m.sender, m.label, m.payload) for m in transcript.messages],
    }


# ===== Diffie-Hellman =====

class DhParty:
    """One side of a Diffie-Hellman exchange; the exponent never leaves this object."""

    def __init__(self, params: DhParams, exponent: Natural, name: str):
        _check_exponent(params, exponent, f"{name}'s exponent")
        self._params = params
        self._exponent = exponent
        self.name = name

    def public_value(self) -> Natural:
        return power_mod(self._params.g, self._exponent, self._params.p)

    def derive(self, received: Natural) -> Natural:
        return power_mod(received, self._exponent, self._params.p)


def dh_shared_key(params: DhParams, a: Natural, b: Natural) -> Tuple[Natural, Natural]:
    """(beta^a, alpha^b) computed directly from both secrets."""
    _check_exponent(params, a, "a")
    _check_exponent(params, b, "b")
    alpha, beta = power_mod(params.g, a, params.p), power_mod(params.g, b, params.p)
    return power_mod(beta, a, params.p), power_mod(alpha, b, params.p)


def dh_keyagree(params: DhParams, a: Natural, b: Natural, seed: Optional[int] = None) -> Tuple[Transcript, Natural, Natural]:
    alice, bob = DhParty(params, a, "alice"), DhParty(params, b, "bob")
    channel = Channel("diffie-hellman", params.as_dict(), seed)
    beta_at_alice = channel.send(1, "bob", "beta", bob.public_value())
    alpha_at_bob = channel.send(1, "alice", "alpha", alice.public_value())
    k_alice, k_bob = alice.derive(beta_at_alice), bob.derive(alpha_at_bob)
    return channel.finish(alice=k_alice, bob=k_bob), k_alice, k_bob


class MitmErich(Erich):
    """Erich in the middle: sends g^e1 to Bob as alpha and g^e2 to Alice as beta."""

    def __init__(self, params: DhParams, e1: Natural, e2: Natural):
        _check_exponent(params, e1, "e1")
        _check_exponent(params, e2, "e2")
        self._to_bob = DhParty(params, e1, "erich")
        self._to_alice = DhParty(params, e2, "erich")
        super().__init__({
            ("alice", "alpha"): lambda _: self._to_bob.public_value(),
            ("bob", "beta"): lambda _: self._to_alice.public_value(),
        })

    def session_keys(self) -> Dict[str, Natural]:
        return {
            "alice-erich": self._to_alice.derive(self.seen("alpha", "alice")),
            "erich-bob": self._to_bob.derive(self.seen("beta", "bob")),
        }


def dh_mitm(
        params: DhParams, a: Natural, b: Natural, e1: Natural, e2: Natural, seed: Optional[int] = None,
) -> Tuple[Transcript, Dict[str, Natural], bool]:
    """
    Diffie-Hellman with Erich substituting both public values.

    `detected` is always False: nothing in the base protocol lets Alice or Bob
    notice that their keys differ.
    """
    erich = MitmErich(params, e1, e2)
    alice, bob = DhParty(params, a, "alice"), DhParty(params, b, "bob")
    channel = Channel("diffie-hellman-mitm", params.as_dict(), seed, erich)
    beta_at_alice = channel.send(1, "bob", "beta", bob.public_value())
    alpha_at_bob = channel.send(1, "alice", "alpha", alice.public_value())
    k_alice, k_bob = alice.derive(beta_at_alice), bob.derive(alpha_at_bob)
    keys = erich.session_keys()
    logger.info("man-in-the-middle run finished; Erich holds both session keys")
    return channel.finish(alice=k_alice, bob=k_bob), keys, False


def key_to_vigenere(k: Natural) -> LetterString:
    """Decimal digits of k written as letters, 0 -> A through 9 -> J."""
    return "".join(ALPHABET[int(digit)] for digit in str(k))


def hybrid_dh_open(params: DhParams, b: Natural, alpha: Natural, c: LetterString) -> LetterString:
    """Bob's side: k = alpha^b, then Vigenere decryption under k's digits."""
    bob = DhParty(params, b, "bob")
    return vigenere(key_to_vigenere(bob.derive(alpha)), c, Direction.DECRYPT)


def hybrid_dh(params: DhParams, b: Natural, a: Natural, m: LetterString, seed: Optional[int] = None) -> Transcript:
    """Bob publishes beta first; Alice derives k = beta^a and sends alpha with E_k(m)."""
    bob, alice = DhParty(params, b, "bob"), DhParty(params, a, "alice")
    channel = Channel("hybrid-diffie-hellman", params.as_dict(), seed)
    beta = channel.send(1, "bob", "beta", bob.public_value())
    c = vigenere(key_to_vigenere(alice.derive(beta)), m)
    alpha = channel.send(2, "alice", "alpha", alice.public_value())
    c_at_bob = channel.send(2, "alice", "c", c)
    recovered = vigenere(key_to_vigenere(bob.derive(alpha)), c_at_bob, Direction.DECRYPT)
    return channel.finish(bob=recovered)


# ===== ElGamal =====

def elgamal_keygen(params: DhParams, rng: Rng) -> Tuple[Natural, Natural]:
    """(b, beta) with b drawn from Z*_{p-1}."""
    while True:
        b = rng.randint(1, params.p - 2)
        if gcd(b, params.p - 1) == 1:
            return b, power_mod(params.g, b, params.p)


def elgamal_encrypt(params: DhParams, beta: Natural, a: Natural, m: Natural) -> Tuple[Natural, Natural]:
    """(alpha, c) = (g^a, m·beta^a) mod p, with a drawn from Z*_{p-1}."""
    _check_exponent(params, a, "a")
    if gcd(a, params.p - 1) != 1:
        raise InvalidArgument(f"a = {a} must be coprime to p-1 = {params.p - 1}")
    if m % params.p == 0 or not 1 <= m <= params.p - 1:
        raise InvalidArgument(f"ElGamal messages must lie in [1, p-1], got {m}")
    return power_mod(params.g, a, params.p), m * power_mod(beta, a, params.p) % params.p


def elgamal_decrypt(params: DhParams, b: Natural, alpha: Natural, c: Natural) -> Natural:
    """c·alpha^(p-1-b) mod p."""
    _check_exponent(params, b, "b")
    return c * power_mod(alpha, params.p - 1 - b, params.p) % params.p


def elgamal_exchange(params: DhParams, b: Natural, a: Natural, m: Natural, seed: Optional[int] = None) -> Transcript:
    channel = Channel("elgamal", params.as_dict(), seed)
    beta = channel.send(1, "bob", "beta", power_mod(params.g, b, params.p))
    alpha, c = elgamal_encrypt(params, beta, a, m)
    alpha = channel.send(2, "alice", "alpha", alpha)
    c = channel.send(2, "alice", "c", c)
    return channel.finish(bob=elgamal_decrypt(params, b, alpha, c))


def elgamal_sign(params: DhParams, b: Natural, r: Natural, m: Natural) -> Tuple[Natural, Natural, Natural]:
    """
    Sign m with secret b and per-message r.

    Solves b·rho + r·s = m (mod p-1) for s, using the inverse of r modulo p-1.

    Returns:
        Tuple[Natural, Natural, Natural]: (beta, rho, s).
    """
    _check_exponent(params, b, "b")
    if not 1 <= r <= params.p - 2 or gcd(r, params.p - 1) != 1:
        raise InvalidArgument(f"r = {r} must be coprime to p-1 = {params.p - 1}")
    order = params.p - 1
    rho = power_mod(params.g, r, params.p)
    s = mod_inverse(r, order) * (m - b * rho) % order
    return power_mod(params.g, b, params.p), rho, s


def elgamal_verify(params: DhParams, beta: Natural, m: Natural, rho: Natural, s: Natural) -> bool:
    """g^m = beta^rho · rho^s (mod p)."""
    if not 1 <= rho <= params.p - 1:
        return False
    left = power_mod(params.g, m % (params.p - 1), params.p)
    return left == power_mod(beta, rho, params.p) * power_mod(rho, s, params.p) % params.p


def elgamal_signature_exchange(params: DhParams, b: Natural, r: Natural, m: Natural,
                               seed: Optional[int] = None) -> Transcript:
    channel = Channel("elgamal-signature", params.as_dict(), seed)
    beta, rho, s = elgamal_sign(params, b, r, m)
    beta = channel.send(1, "bob", "beta", beta)
    m = channel.send(1, "bob", "m", m)
    rho, s = channel.send(1, "bob", "sig", [rho, s])
    return channel.finish(alice=elgamal_verify(params, beta, m, rho, s))


# ===== Shamir's no-key protocol =====

class ShamirParty:
    def __init__(self, p: Natural, exponent: Natural, name: str):
        if gcd(exponent, p - 1) != 1:
            raise InvalidArgument(f"{name}'s exponent {exponent} is not coprime to p-1 = {p - 1}")
        self._p = p
        self._lock = exponent
        self._unlock = mod_inverse(exponent, p - 1) if p > 2 else 1
        self.name = name

    def lock(self, value: Natural) -> Natural:
        return power_mod(value, self._lock, self._p)

    def unlock(self, value: Natural) -> Natural:
        return power_mod(value, self._unlock, self._p)


def _check_no_key_message(p: Natural, m: Natural, allow_degenerate: bool) -> None:
    if not 1 <= m <= p:
        raise InvalidArgument(f"no-key messages must lie in [1, p], got {m}")
    if m == p and not allow_degenerate:
        raise InvalidArgument("m = p reduces to 0 mod p and is only sent with allow_degenerate")


def shamir_no_key_algebra(p: Natural, a: Natural, b: Natural, m: Natural, allow_degenerate: bool = False) -> Natural:
    _check_no_key_message(p, m, allow_degenerate)
    alice, bob = ShamirParty(p, a, "alice"), ShamirParty(p, b, "bob")
    return bob.unlock(alice.unlock(bob.lock(alice.lock(m))))


def shamir_no_key(p: Natural, a: Natural, b: Natural, m: Natural, allow_degenerate: bool = False,
                  seed: Optional[int] = None) -> Transcript:
    """
    x = m^a, y = x^b, z = y^(a^-1) cross the channel; Bob outputs z^(b^-1) mod p.

    With a = 1 the message itself is sent in the clear as x.
    """
    _check_no_key_message(p, m, allow_degenerate)
    alice, bob = ShamirParty(p, a, "alice"), ShamirParty(p, b, "bob")
    channel = Channel("shamir-no-key", {"p": p}, seed)
    x = channel.send(1, "alice", "x", alice.lock(m))
    y = channel.send(2, "bob", "y", bob.lock(x))
    z = channel.send(3, "alice", "z", alice.unlock(y))
    return channel.finish(bob=bob.unlock(z))


# ===== Protocols over an associative sigma =====

def _apply(sigma: Sigma, a: Natural, b: Natural, who: str) -> Natural:
    value = sigma(a, b)
    if value is None:
        raise ProtocolAbort(f"{who}: sigma is undefined at ({a}, {b})")
    return value


def rivest_sherman_algebra(sigma: Sigma, x: Natural, y: Natural, z: Natural) -> Tuple[Natural, Natural]:
    return (
        _apply(sigma, x, _apply(sigma, y, z, "bob"), "alice"),
        _apply(sigma, _apply(sigma, x, y, "alice"), z, "bob"),
    )


def rivest_sherman_keyagree(sigma: Sigma, x: Natural, y: Natural, z: Natural,
                            seed: Optional[int] = None) -> Tuple[Transcript, Natural, Natural]:
    """
    Alice keeps x and sends y with sigma(x, y); Bob keeps z and sends sigma(y, z).

    k_alice = sigma(x, sigma(y, z)), k_bob = sigma(sigma(x, y), z). The
    transcript output `agreed` is False when sigma is not associative on
    this triple.
    """
    channel = Channel("rivest-sherman", {}, seed)
    y_at_bob = channel.send(1, "alice", "y", y)
    xy_at_bob = channel.send(1, "alice", "sigma_xy", _apply(sigma, x, y, "alice"))
    yz_at_alice = channel.send(2, "bob", "sigma_yz", _apply(sigma, y_at_bob, z, "bob"))
    k_alice = _apply(sigma, x, yz_at_alice, "alice")
    k_bob = _apply(sigma, xy_at_bob, z, "bob")
    if k_alice != k_bob:
        logger.warning(f"Rivest-Sherman keys differ: sigma is not associative at ({x}, {y}, {z})")
    return channel.finish(alice=k_alice, bob=k_bob, agreed=k_alice == k_bob), k_alice, k_bob


def find_associativity_witness(sigma: Sigma, sampler: Callable[[Rng], Natural], rng: Rng,
                               trials: int = 1000) -> Optional[Tuple[Natural, Natural, Natural]]:
    """Random triples from `sampler` until one makes the two Rivest-Sherman keys differ."""
    for _ in range(trials):
        x, y, z = sampler(rng), sampler(rng), sampler(rng)
        try:
            k_alice, k_bob = rivest_sherman_algebra(sigma, x, y, z)
        except ProtocolAbort:
            continue
        if k_alice != k_bob:
            return x, y, z
    return None


def rabi_sherman_sign(sigma: Sigma, x_a: Natural, y_a: Natural, m: Natural) -> Tuple[Tuple[Natural, Natural], Natural]:
    """Public part (y_A, sigma(x_A, y_A)) and signature sigma(m, x_A)."""
    public = (y_a, _apply(sigma, x_a, y_a, "alice"))
    return public, _apply(sigma, m, x_a, "alice")


def rabi_sherman_verify(sigma: Sigma, public: Tuple[Natural, Natural], m: Natural, sig: Natural) -> bool:
    """sigma(m, sigma(x_A, y_A)) == sigma(sig, y_A)."""
    y_a, published = public
    return _apply(sigma, m, published, "bob") == _apply(sigma, sig, y_a, "bob")


def rabi_sherman_exchange(sigma: Sigma, x_a: Natural, y_a: Natural, m: Natural,
                          seed: Optional[int] = None) -> Transcript:
    channel = Channel("rabi-sherman", {}, seed)
    (y_a, published), sig = rabi_sherman_sign(sigma, x_a, y_a, m)
    y_at_bob = channel.send(1, "alice", "y", y_a)
    published_at_bob = channel.send(1, "alice", "sigma_xy", published)
    m_at_bob = channel.send(2, "alice", "m", m)
    sig_at_bob = channel.send(2, "alice", "sig", sig)
    return channel.finish(bob=rabi_sherman_verify(sigma, (y_at_bob, published_at_bob), m_at_bob, sig_at_bob))
