"""Raw (unpadded) RSA: key generation, encryption, decryption and signatures."""
import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.numtheory import (
    Natural,
    crt_solve,
    from_hex,
    gen_prime,
    is_probable_prime,
    mod_inverse,
    power_mod,
    to_hex,
)

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)


@dataclass(frozen=True)
class RsaPublicKey:
    n: Natural
    e: Natural

    def to_text(self) -> str:
        return f"rsa-pub n={to_hex(self.n)} e={to_hex(self.e)}"


@dataclass(frozen=True)
class RsaPrivateKey:
    """Private exponent plus the prime factors when they are known (keys recovered by attacks may lack them)."""
    n: Natural
    d: Natural
    p: Optional[Natural] = None
    q: Optional[Natural] = None

    @property
    def phi(self) -> Natural:
        if self.p is None or self.q is None:
            raise InvalidArgument("phi(n) needs the prime factors of n")
        return (self.p - 1) * (self.q - 1)

    def to_text(self) -> str:
        text = f"rsa-priv n={to_hex(self.n)} d={to_hex(self.d)}"
        if self.p is not None and self.q is not None:
            text += f" p={to_hex(self.p)} q={to_hex(self.q)}"
        return text


def key_from_text(text: str):
    """Parse either key line format back into its key object."""
    kind, *fields = text.split()
    try:
        values = {name: from_hex(value) for name, value in (f.split("=", 1) for f in fields)}
        if kind == "rsa-pub":
            return RsaPublicKey(n=values["n"], e=values["e"])
        if kind == "rsa-priv":
            return RsaPrivateKey(n=values["n"], d=values["d"], p=values.get("p"), q=values.get("q"))
    except (KeyError, ValueError) as exc:
        raise InvalidArgument(f"malformed key line {text!r}: {exc}") from exc
    raise InvalidArgument(f"unknown key kind {kind!r}")


def _smallest_exponent(phi: Natural) -> Optional[Natural]:
    e = 3
    while e < phi:
        if gcd(e, phi) == 1:
            return e
        e += 2
    return None


def rsa_keygen_from_primes(p: Natural, q: Natural, e: Optional[Natural] = None) -> Tuple[RsaPublicKey, RsaPrivateKey]:
    """
    Build the key pair for fixed primes.

    Args:
        p (Natural): First prime.
        q (Natural): Second prime, distinct from p.
        e (Optional[Natural]): Public exponent; the smallest odd e >= 3 coprime to phi(n) if omitted.

    Returns:
        Tuple[RsaPublicKey, RsaPrivateKey]: The public and private key.
    """
    if p == q:
        raise InvalidArgument("RSA needs two distinct primes")
    for prime in (p, q):
        if not is_probable_prime(prime):
            raise InvalidArgument(f"{prime} is not prime")
    n, phi = p * q, (p - 1) * (q - 1)
    if e is None:
        e = _smallest_exponent(phi)
        if e is None:
            raise InvalidArgument(f"no public exponent exists for phi(n) = {phi}")
    if not 1 < e < phi or gcd(e, phi) != 1:
        raise InvalidArgument(f"e = {e} must satisfy 1 < e < phi(n) and gcd(e, phi(n)) = 1")
    d = mod_inverse(e, phi)
    logger.debug(f"RSA key built: n={n}, e={e}")
    return RsaPublicKey(n=n, e=e), RsaPrivateKey(n=n, d=d, p=max(p, q), q=min(p, q))


def rsa_keygen(bits: int, rng: Rng, e: Optional[Natural] = None) -> Tuple[RsaPublicKey, RsaPrivateKey]:
    """Random key pair with a `bits`-bit modulus; primes are redrawn until e fits."""
    if bits < 8:
        raise InvalidArgument("rsa_keygen requires bits >= 8")
    half = bits // 2
    while True:
        p = gen_prime(bits - half, rng)
        q = gen_prime(half, rng)
        if p == q:
            logger.debug("drew p == q, drawing again")
            continue
        phi = (p - 1) * (q - 1)
        if e is not None and (gcd(e, phi) != 1 or not 1 < e < phi):
            continue
        if e is None and _smallest_exponent(phi) is None:
            continue
        return rsa_keygen_from_primes(p, q, e)


def _check_range(value: Natural, n: Natural, what: str) -> None:
    if not 0 <= value < n:
        raise InvalidArgument(f"{what} must lie in [0, n), got {value}")


def rsa_encrypt(pk: RsaPublicKey, m: Natural) -> Natural:
    _check_range(m, pk.n, "message")
    return power_mod(m, pk.e, pk.n)


def rsa_decrypt(sk: RsaPrivateKey, c: Natural) -> Natural:
    _check_range(c, sk.n, "ciphertext")
    return power_mod(c, sk.d, sk.n)


def rsa_decrypt_crt(sk: RsaPrivateKey, c: Natural) -> Natural:
    """Decrypt via m_p = c^(d mod p-1) mod p, m_q likewise, recombined by CRT."""
    _check_range(c, sk.n, "ciphertext")
    if sk.p is None or sk.q is None:
        raise InvalidArgument("CRT decryption needs the prime factors of n")
    m_p = power_mod(c % sk.p, sk.d % (sk.p - 1), sk.p)
    m_q = power_mod(c % sk.q, sk.d % (sk.q - 1), sk.q)
    return crt_solve([m_p, m_q], [sk.p, sk.q])


def rsa_sign(sk: RsaPrivateKey, m: Natural) -> Natural:
    _check_range(m, sk.n, "message")
    return power_mod(m, sk.d, sk.n)


def rsa_verify(pk: RsaPublicKey, m: Natural, s: Natural) -> bool:
    if not (0 <= m < pk.n and 0 <= s < pk.n):
        return False
    return power_mod(s, pk.e, pk.n) == m


def enlarge_exponent(pk: RsaPublicKey, sk: RsaPrivateKey, multiple: int) -> RsaPublicKey:
    """Replace e by e + l·phi(n); decryption with the same d still works."""
    if multiple < 0:
        raise InvalidArgument("the multiple of phi(n) must be nonnegative")
    return RsaPublicKey(n=pk.n, e=pk.e + multiple * sk.phi)


# ===== Message blocking =====

def block_size(n: Natural) -> int:
    """Bytes per block: floor((bits(n) - 1) / 8)."""
    size = (n.bit_length() - 1) // 8
    if size < 1:
        raise InvalidArgument(f"modulus {n} is too small to carry a single byte")
    return size


def encode_blocks(data: bytes, n: Natural, pad: int = 0, rng: Optional[Rng] = None) -> List[Natural]:
    """
    Split `data` into base-256 big-endian integers below n.

    With `pad` > 0 every block starts with that many random bytes, the
    pseudorandom-padding countermeasure; payload bytes per block shrink accordingly.
    """
    size = block_size(n)
    payload = size - pad
    if payload < 1:
        raise InvalidArgument(f"padding of {pad} bytes leaves no room in {size}-byte blocks")
    if pad and rng is None:
        raise InvalidArgument("random padding needs an rng")
    blocks = []
    for start in range(0, len(data), payload):
        chunk = data[start:start + payload]
        prefix = bytes(rng.getrandbits(8) for _ in range(pad)) if pad else b""
        blocks.append(int.from_bytes(prefix + chunk, "big"))
    return blocks


def decode_blocks(blocks: List[Natural], n: Natural, length: int, pad: int = 0) -> bytes:
    """Inverse of `encode_blocks`; `length` is the original byte length."""
    size = block_size(n)
    payload = size - pad
    out = bytearray()
    for i, block in enumerate(blocks):
        chunk_len = min(payload, length - i * payload)
        raw = block.to_bytes(pad + chunk_len, "big")
        out += raw[pad:]
    return bytes(out)
