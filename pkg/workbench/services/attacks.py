"""
Cryptanalysis of raw RSA at desk scale.

Attacks see public keys only. The chosen-ciphertext attack gets decryption
power solely through the oracle callable it is handed.

Each attack has a `run_*` form returning an `AttackReport` (what the CLI
prints) and a plain form returning just the recovered value.
"""
import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Any, Callable, List, Optional, Sequence, Tuple

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng
from workbench.services.numtheory import (
    Natural,
    crt_solve,
    gen_prime,
    integer_nth_root,
    mod_inverse,
    power_mod,
)
from workbench.services.rsa import RsaPrivateKey, RsaPublicKey, rsa_verify

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

WIENER_PROBES = (2, 3)
POLLARD_GCD_INTERVAL = 64


@dataclass(frozen=True)
class AttackReport:
    attack: str
    succeeded: bool
    recovered: Any = None
    work: int = 0


@dataclass(frozen=True)
class ContinuedFraction:
    partial_quotients: Tuple[Natural, ...]
    convergents: Tuple[Tuple[Natural, Natural], ...]


# ===== Factoring =====

def run_trial_division(n: Natural, bound: Optional[Natural] = None) -> AttackReport:
    if n < 2:
        raise InvalidArgument("trial division needs n >= 2")
    limit = isqrt(n) if bound is None else min(bound, isqrt(n))
    work = 0
    for d in range(2, limit + 1):
        work += 1
        if n % d == 0:
            return AttackReport("trial-division", True, (d, n // d), work)
    return AttackReport("trial-division", False, None, work)


def trial_division(n: Natural, bound: Optional[Natural] = None) -> Optional[Tuple[Natural, Natural]]:
    return run_trial_division(n, bound).recovered


def congruence_of_squares_factor(n: Natural, a: Natural, b: Natural) -> Optional[Natural]:
    """gcd(a - b, n) when a^2 = b^2 (mod n) and that gcd is a nontrivial factor."""
    if (a * a - b * b) % n != 0:
        raise InvalidArgument(f"{a}^2 and {b}^2 are not congruent modulo {n}")
    g = gcd(abs(a - b), n)
    return g if 1 < g < n else None


def run_pollard_pm1(n: Natural, bound: Natural) -> AttackReport:
    """
    Pollard's p-1: a <- a^j for j = 2..bound, checking gcd(a - 1, n) every 64 steps.

    When a check overshoots to gcd = n, the last block is replayed one step at a
    time; if that still only gives n, the next base is tried.
    """
    work = 0
    for base in (2, 3, 5, 7):
        if gcd(base, n) not in (1, n):
            return AttackReport("pollard-p-1", True, gcd(base, n), work)
        a = base
        checkpoint_a, checkpoint_j = a, 2
        j = 2
        while j <= bound:
            a = power_mod(a, j, n)
            work += 1
            if (j - 1) % POLLARD_GCD_INTERVAL == 0 or j == bound:
                g = gcd(a - 1, n)
                if 1 < g < n:
                    return AttackReport("pollard-p-1", True, g, work)
                if g == n:
                    g = _pollard_replay(n, checkpoint_a, checkpoint_j, j)
                    if g is not None:
                        return AttackReport("pollard-p-1", True, g, work)
                    break
                checkpoint_a, checkpoint_j = a, j + 1
            j += 1
        else:
            return AttackReport("pollard-p-1", False, None, work)
    return AttackReport("pollard-p-1", False, None, work)


def _pollard_replay(n: Natural, a: Natural, start: int, stop: int) -> Optional[Natural]:
    for j in range(start, stop + 1):
        a = power_mod(a, j, n)
        g = gcd(a - 1, n)
        if 1 < g < n:
            return g
        if g == n:
            return None
    return None


def pollard_pm1(n: Natural, bound: Natural) -> Optional[Natural]:
    return run_pollard_pm1(n, bound).recovered


# ===== Wiener =====

def continued_fraction(num: Natural, den: Natural) -> ContinuedFraction:
    if den == 0:
        raise InvalidArgument("continued fraction of x/0 is undefined")
    quotients: List[int] = []
    while den:
        q = num // den
        quotients.append(q)
        num, den = den, num - q * den
    convergents = []
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for q in quotients:
        h_prev, h = h, q * h + h_prev
        k_prev, k = k, q * k + k_prev
        convergents.append((h, k))
    return ContinuedFraction(tuple(quotients), tuple(convergents))


def _probe_exponent(pk: RsaPublicKey, d: Natural) -> bool:
    return all(power_mod(power_mod(m % pk.n, pk.e, pk.n), d, pk.n) == m % pk.n for m in WIENER_PROBES)


def _factor_from_phi(n: Natural, phi: Natural) -> Optional[Tuple[Natural, Natural]]:
    s = n - phi + 1
    disc = s * s - 4 * n
    if disc < 0:
        return None
    root = isqrt(disc)
    if root * root != disc:
        return None
    p, q = (s + root) // 2, (s - root) // 2
    return (p, q) if p * q == n else None


def run_wiener_attack(pk: RsaPublicKey) -> AttackReport:
    """
    Scan the convergents k/d of e/n and keep the first d that decrypts the probes.

    When k divides e·d - 1 the factors of n are recovered as well.
    """
    work = 0
    for k, d in continued_fraction(pk.e, pk.n).convergents:
        work += 1
        if d < 1 or not _probe_exponent(pk, d):
            continue
        p = q = None
        if k and (pk.e * d - 1) % k == 0:
            factors = _factor_from_phi(pk.n, (pk.e * d - 1) // k)
            if factors:
                p, q = factors
        logger.info(f"Wiener attack recovered d after {work} convergents")
        return AttackReport("wiener", True, RsaPrivateKey(n=pk.n, d=d, p=p, q=q), work)
    return AttackReport("wiener", False, None, work)


def wiener_attack(pk: RsaPublicKey) -> Optional[RsaPrivateKey]:
    return run_wiener_attack(pk).recovered


def wiener_bound_holds(n: Natural, d: Natural) -> bool:
    """d < (1/3)·n^(1/4), decided exactly as (3d)^4 < n."""
    return (3 * d) ** 4 < n


def _balanced_primes(bits: int, rng: Rng) -> Tuple[Natural, Natural]:
    half = bits // 2
    while True:
        p, q = gen_prime(half, rng), gen_prime(half, rng)
        p, q = max(p, q), min(p, q)
        if q < p < 2 * q:
            return p, q


def make_wiener_vulnerable_key(bits: int, rng: Rng) -> Tuple[RsaPublicKey, RsaPrivateKey]:
    """Key with q < p < 2q and d < (1/3)·n^(1/4), built by picking d first."""
    p, q = _balanced_primes(bits, rng)
    n, phi = p * q, (p - 1) * (q - 1)
    root, _ = integer_nth_root(n, 4)
    limit = root // 3
    if limit < 3:
        raise InvalidArgument(f"a {bits}-bit modulus leaves no room for a Wiener-vulnerable d")
    while True:
        d = rng.randint(3, limit)
        if gcd(d, phi) == 1 and wiener_bound_holds(n, d):
            e = mod_inverse(d, phi)
            return RsaPublicKey(n=n, e=e), RsaPrivateKey(n=n, d=d, p=p, q=q)


def make_large_d_key(bits: int, rng: Rng) -> Tuple[RsaPublicKey, RsaPrivateKey]:
    """Key with d > n^0.35 (checked exactly as d^20 > n^7)."""
    p, q = _balanced_primes(bits, rng)
    n, phi = p * q, (p - 1) * (q - 1)
    low, _ = integer_nth_root(n ** 7, 20)
    while True:
        d = rng.randint(low + 1, isqrt(n))
        if gcd(d, phi) == 1 and d ** 20 > n ** 7:
            e = mod_inverse(d, phi)
            return RsaPublicKey(n=n, e=e), RsaPrivateKey(n=n, d=d, p=p, q=q)


# ===== Low exponent and small messages =====

def run_broadcast_attack_e3(ciphertexts: Sequence[Natural], moduli: Sequence[Natural]) -> AttackReport:
    if len(ciphertexts) != 3 or len(moduli) != 3:
        raise InvalidArgument("the e = 3 broadcast attack takes exactly three ciphertexts and moduli")
    combined = crt_solve(list(ciphertexts), list(moduli))
    root, exact = integer_nth_root(combined, 3)
    if exact and all(power_mod(root, 3, n) == c % n for c, n in zip(ciphertexts, moduli)):
        return AttackReport("broadcast-e3", True, root, 1)
    return AttackReport("broadcast-e3", False, None, 1)


def broadcast_attack_e3(ciphertexts: Sequence[Natural], moduli: Sequence[Natural]) -> Optional[Natural]:
    return run_broadcast_attack_e3(ciphertexts, moduli).recovered


def small_message_attack(pk: RsaPublicKey, c: Natural) -> Optional[Natural]:
    """If m^e < n the ciphertext is m^e itself and ordinary root extraction returns m."""
    root, exact = integer_nth_root(c, pk.e)
    return root if exact and power_mod(root, pk.e, pk.n) == c else None


# ===== Signatures and chosen ciphertexts =====

def _signed_power(x: Natural, k: int, n: Natural) -> Natural:
    if k >= 0:
        return power_mod(x, k, n)
    inverse = mod_inverse(x, n)
    if inverse is None:
        raise InvalidArgument(f"{x} has no inverse modulo n, so it cannot take exponent {k}")
    return power_mod(inverse, -k, n)


def forge_signature(
        pk: RsaPublicKey,
        known: Sequence[Tuple[Natural, Natural]],
        exponents: Sequence[int],
        r: Natural,
) -> Tuple[Natural, Natural]:
    """
    New valid pair m = r^e·prod(m_i^e_i), sig = r·prod(sig_i^e_i), all mod n.

    Only the public key and previously observed pairs are used.
    """
    if len(known) != len(exponents):
        raise InvalidArgument("forge_signature needs one exponent per known pair")
    if gcd(r, pk.n) != 1:
        raise InvalidArgument("r must be coprime to n")
    for m_i, s_i in known:
        if not rsa_verify(pk, m_i, s_i):
            raise InvalidArgument(f"known pair ({m_i}, {s_i}) does not verify")
    m = power_mod(r, pk.e, pk.n)
    sig = r % pk.n
    for (m_i, s_i), k in zip(known, exponents):
        m = m * _signed_power(m_i, k, pk.n) % pk.n
        sig = sig * _signed_power(s_i, k, pk.n) % pk.n
    return m, sig


def blinding_attack(
        pk: RsaPublicKey,
        decrypt_oracle: Callable[[Natural], Natural],
        c: Natural,
        r: Optional[Natural] = None,
        rng: Optional[Rng] = None,
) -> Natural:
    """Ask the oracle for c·r^e instead of c, then strip r off the answer."""
    if r is None:
        if rng is None:
            raise InvalidArgument("blinding_attack needs either r or an rng to draw it")
        r = rng.randint(2, pk.n - 1)
        while gcd(r, pk.n) != 1:
            r = rng.randint(2, pk.n - 1)
    r_inverse = mod_inverse(r, pk.n)
    if r_inverse is None:
        raise InvalidArgument("blinding factor r must be invertible modulo n")
    blinded = c * power_mod(r, pk.e, pk.n) % pk.n
    return r_inverse * decrypt_oracle(blinded) % pk.n


def run_superencryption_cycle(pk: RsaPublicKey, c: Natural, max_iters: int) -> AttackReport:
    """
    Encrypt c repeatedly until it comes back; the step before is the plaintext.

    Recovered payload is (cycle length k, plaintext E^(k-1)(c)).
    """
    if not 0 <= c < pk.n:
        raise InvalidArgument("ciphertext must lie in [0, n)")
    previous, current = c, power_mod(c, pk.e, pk.n)
    for k in range(1, max_iters + 1):
        if current == c:
            return AttackReport("superencryption", True, (k, previous), k)
        previous, current = current, power_mod(current, pk.e, pk.n)
    return AttackReport("superencryption", False, None, max_iters)


def superencryption_cycle(pk: RsaPublicKey, c: Natural, max_iters: int) -> Optional[int]:
    report = run_superencryption_cycle(pk, c, max_iters)
    return report.recovered[0] if report.succeeded else None
