"""
Exact modular arithmetic and the number-theoretic primitives the protocols and
attacks are built on.

Python's `int` is the arbitrary-precision carrier throughout; `Natural` marks
values that must be nonnegative. Nothing in here touches floating point.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import integer_nthroot

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

Natural = int


@dataclass(frozen=True)
class ExtGcdResult:
    g: Natural
    x: int
    y: int


@dataclass(frozen=True)
class EuclidRow:
    """One row of the extended-Euclid table; `q` is None where no quotient is taken."""
    i: int
    b: int
    x: int
    y: int
    q: Optional[int]


@dataclass(frozen=True)
class ExpCost:
    squarings: int
    multiplications: int


class Primality(str, Enum):
    PROBABLY_PRIME = "probably-prime"
    COMPOSITE = "composite"


def to_hex(value: Natural) -> str:
    if value < 0:
        raise InvalidArgument(f"cannot hex-encode negative value {value}")
    return hex(value)


def from_hex(text: str) -> Natural:
    if not text.startswith("0x"):
        raise InvalidArgument(f"expected 0x-prefixed hexadecimal, got {text!r}")
    return int(text, 16)


def ext_gcd_trace(b0: Natural, b1: Natural) -> List[EuclidRow]:
    """
    Run the extended algorithm of Euclid and return its full table.

    The loop runs while b_i does not divide b_{i-1}; the last row carries the
    result (b_i = gcd, x_i, y_i) with x_i·b0 + y_i·b1 = gcd.

    Args:
        b0 (Natural): First input.
        b1 (Natural): Second input, at least 1.

    Returns:
        List[EuclidRow]: Rows i = 0, 1, ..., k in order.
    """
    if b1 < 1:
        raise InvalidArgument("ext_gcd requires b1 >= 1")
    if b0 < 0:
        raise InvalidArgument("ext_gcd requires b0 >= 0")
    bs, xs, ys = [b0, b1], [1, 0], [0, 1]
    quotients: List[Optional[int]] = [None]
    i = 1
    while bs[i - 1] % bs[i] != 0:
        q = bs[i - 1] // bs[i]
        quotients.append(q)
        bs.append(bs[i - 1] - q * bs[i])
        xs.append(xs[i - 1] - q * xs[i])
        ys.append(ys[i - 1] - q * ys[i])
        i += 1
    quotients.append(None)
    return [EuclidRow(j, bs[j], xs[j], ys[j], quotients[j]) for j in range(i + 1)]


def ext_gcd(b0: Natural, b1: Natural) -> ExtGcdResult:
    last = ext_gcd_trace(b0, b1)[-1]
    return ExtGcdResult(g=last.b, x=last.x, y=last.y)


def mod_inverse(e: Natural, m: Natural) -> Optional[Natural]:
    """Inverse of e modulo m in [1, m), or None when gcd(e, m) != 1."""
    if m < 2:
        raise InvalidArgument("mod_inverse requires m >= 2")
    e %= m
    if e == 0:
        return None
    # run Euclid as (m, e) so that y is the coefficient of e
    result = ext_gcd(m, e)
    if result.g != 1:
        return None
    return result.y % m


def mod_exp(m: Natural, e: Natural, n: Natural) -> Tuple[Natural, ExpCost]:
    """
    Square-and-multiply: compute m^e mod n from the successive squares m^(2^i).

    Cost is counted the way the operations are performed: one squaring per
    bit above the lowest, one multiplication per set bit beyond the first.

    Args:
        m (Natural): Base.
        e (Natural): Exponent.
        n (Natural): Modulus, at least 2.

    Returns:
        Tuple[Natural, ExpCost]: The power and the operation counts.
    """
    if n < 2:
        raise InvalidArgument("mod_exp requires n >= 2")
    if e < 0 or m < 0:
        raise InvalidArgument("mod_exp takes nonnegative base and exponent")
    squarings = multiplications = 0
    result: Optional[int] = None
    power = m % n
    for i in range(e.bit_length()):
        if i > 0:
            power = power * power % n
            squarings += 1
        if (e >> i) & 1:
            if result is None:
                result = power
            else:
                result = result * power % n
                multiplications += 1
    if result is None:
        result = 1 % n
    return result, ExpCost(squarings=squarings, multiplications=multiplications)


def power_mod(m: Natural, e: Natural, n: Natural) -> Natural:
    """mod_exp without the cost bookkeeping."""
    return mod_exp(m, e, n)[0]


def miller_rabin(n: Natural, rounds: Optional[int] = None, rng: Optional[Rng] = None) -> Primality:
    """
    Miller-Rabin test with bases drawn uniformly from [2, n-2].

    A COMPOSITE verdict is always right; PROBABLY_PRIME errs with
    probability at most 4^(-rounds).
    """
    if n < 2:
        raise InvalidArgument("miller_rabin requires n >= 2")
    rounds = settings.MILLER_RABIN_ROUNDS if rounds is None else rounds
    if rounds < 1:
        raise InvalidArgument("miller_rabin requires rounds >= 1")
    if n in (2, 3):
        return Primality.PROBABLY_PRIME
    if n % 2 == 0:
        return Primality.COMPOSITE
    rng = rng if rng is not None else Rng(n)
    s, d = 0, n - 1
    while d % 2 == 0:
        s += 1
        d //= 2
    for _ in range(rounds):
        a = rng.randint(2, n - 2)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return Primality.COMPOSITE
    return Primality.PROBABLY_PRIME


def is_probable_prime(n: Natural, rng: Optional[Rng] = None) -> bool:
    return n >= 2 and miller_rabin(n, rng=rng) is Primality.PROBABLY_PRIME


def gen_prime(bits: int, rng: Rng) -> Natural:
    """
    Random probable prime with exactly `bits` bits.

    Every trial is a fresh candidate with the top bit and the low bit forced.
    """
    if bits < 2:
        raise InvalidArgument("gen_prime requires bits >= 2")
    trials = 0
    while True:
        trials += 1
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if miller_rabin(candidate, rng=rng) is Primality.PROBABLY_PRIME:
            logger.debug(f"gen_prime({bits}) found a prime after {trials} trials")
            return candidate


def factorize(n: Natural) -> Dict[Natural, int]:
    """Trial-division factorization; desk-scale inputs only."""
    if n < 1:
        raise InvalidArgument("factorize requires n >= 1")
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def euler_phi(n: Natural) -> Natural:
    if n == 0:
        raise InvalidArgument("euler_phi(0) is undefined")
    phi = n
    for p in factorize(n):
        phi = phi // p * (p - 1)
    return phi


def crt_solve(residues: Sequence[Natural], moduli: Sequence[Natural]) -> Natural:
    """Unique x in [0, prod(moduli)) with x = residues[i] mod moduli[i]."""
    if len(residues) != len(moduli) or not moduli:
        raise InvalidArgument("crt_solve needs equally long, nonempty residue and modulus lists")
    if any(m < 1 for m in moduli):
        raise InvalidArgument("crt_solve moduli must be positive")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if gcd(moduli[i], moduli[j]) != 1:
                raise InvalidArgument(f"moduli {moduli[i]} and {moduli[j]} are not coprime")
    x, modulus = 0, 1
    for r, m in zip(residues, moduli):
        if m == 1:
            continue
        t = ((r - x) * mod_inverse(modulus, m)) % m
        x += modulus * t
        modulus *= m
    return x % modulus


def _require_prime(p: Natural) -> None:
    if not is_probable_prime(p):
        raise InvalidArgument(f"{p} is not prime")


def is_primitive_root(g: Natural, p: Natural) -> bool:
    """True iff g generates Z_p^*, tested on the prime divisors of p-1."""
    _require_prime(p)
    if not 1 <= g < p:
        raise InvalidArgument(f"expected 1 <= g < {p}, got {g}")
    order = p - 1
    return all(pow(g, order // q, p) != 1 for q in factorize(order)) if order > 1 else g == 1


def find_primitive_root(p: Natural, rng: Rng) -> Natural:
    _require_prime(p)
    if p == 2:
        return 1
    while True:
        g = rng.randint(2, p - 1)
        if is_primitive_root(g, p):
            return g


def discrete_log_bruteforce(g: Natural, alpha: Natural, p: Natural) -> Optional[Natural]:
    """Smallest a >= 0 with g^a = alpha (mod p), by walking the powers of g. Test oracle."""
    alpha %= p
    value = 1 % p
    for a in range(p):
        if value == alpha:
            return a
        value = value * g % p
    return None


def integer_nth_root(x: Natural, n: int) -> Tuple[Natural, bool]:
    """floor(x^(1/n)) and whether it is exact."""
    if n < 1:
        raise InvalidArgument("integer_nth_root requires n >= 1")
    if x < 0:
        raise InvalidArgument("integer_nth_root takes a nonnegative radicand")
    root, exact = integer_nthroot(x, n)
    return int(root), bool(exact)
