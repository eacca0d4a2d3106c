"""
Classical ciphers over the 26-letter alphabet (A=0, ..., Z=25) and an exact
analyzer for finite cryptosystems: posteriors, perfect secrecy and Shannon's
two conditions, all by total enumeration with rational arithmetic.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from math import gcd
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy import Matrix

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.core.rng import Rng

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
MODULUS = 26
SAMPLE_CORPUS = Path(__file__).resolve().parent.parent / "data" / "english_sample.txt"

# Letter strings are plain `str` restricted to A-Z; `letters` gives the Z_26 view.
LetterString = str
Symbol = Hashable


class Direction(str, Enum):
    ENCRYPT = "encrypt"
    DECRYPT = "decrypt"


def letters(text: LetterString) -> List[int]:
    """Residues of `text`; anything outside A-Z is rejected."""
    bad = sorted({ch for ch in text if ch not in ALPHABET})
    if bad:
        raise InvalidArgument(f"letter strings may only contain A-Z, found {''.join(bad)!r}")
    return [ord(ch) - ord("A") for ch in text]


def from_letters(values: Sequence[int]) -> LetterString:
    return "".join(ALPHABET[v % MODULUS] for v in values)


def text_to_letters(text: str) -> LetterString:
    """Upper-case `text` and drop everything that is not a letter A-Z."""
    return "".join(ch for ch in text.upper() if ch in ALPHABET)


def letters_to_text(text: LetterString, group: int = 0) -> str:
    """Letter string for display, optionally split into blocks of `group` letters."""
    letters(text)
    if group <= 0:
        return text
    return " ".join(text[i:i + group] for i in range(0, len(text), group))


def _sign(direction: Direction) -> int:
    return 1 if Direction(direction) is Direction.ENCRYPT else -1


def caesar(key: int, text: LetterString, direction: Direction = Direction.ENCRYPT) -> LetterString:
    if not 0 <= key < MODULUS:
        raise InvalidArgument(f"Caesar key must lie in [0, 25], got {key}")
    shift = _sign(direction) * key
    return from_letters(v + shift for v in letters(text))


def vigenere(key: LetterString, text: LetterString, direction: Direction = Direction.ENCRYPT) -> LetterString:
    """Shift each letter by the key letter written above it, repeating the key as needed."""
    shifts = letters(key)
    if not shifts:
        raise InvalidArgument("Vigenere key must be nonempty")
    sign = _sign(direction)
    return from_letters(v + sign * shifts[i % len(shifts)] for i, v in enumerate(letters(text)))


@dataclass(frozen=True)
class HillKey:
    """An n x n matrix over Z_26 that is invertible mod 26."""
    matrix: Tuple[Tuple[int, ...], ...]
    inverse: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) % MODULUS for v in row) for row in self.matrix)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise InvalidArgument("Hill key must be a nonempty square matrix")
        det = int(Matrix(rows).det()) % MODULUS
        if gcd(det, MODULUS) != 1:
            raise InvalidArgument(f"Hill key determinant {det} is not invertible mod 26")
        inverse = Matrix(rows).inv_mod(MODULUS)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "inverse", tuple(tuple(int(v) for v in inverse.row(i)) for i in range(len(rows))))

    @property
    def dimension(self) -> int:
        return len(self.matrix)


def hill(key: HillKey, text: LetterString, direction: Direction = Direction.ENCRYPT) -> LetterString:
    """Block-wise K·p mod 26 (or K^-1·c); lengths that are not a multiple of n are rejected."""
    values = letters(text)
    n = key.dimension
    if len(values) % n:
        raise InvalidArgument(f"text length {len(values)} is not a multiple of the block size {n}")
    matrix = Matrix(key.matrix if Direction(direction) is Direction.ENCRYPT else key.inverse)
    out: List[int] = []
    for start in range(0, len(values), n):
        block = matrix * Matrix(values[start:start + n])
        out.extend(int(v) % MODULUS for v in block)
    return from_letters(out)


def one_time_pad(key: Sequence[int], data: Sequence[int]) -> List[int]:
    if len(key) != len(data):
        raise InvalidArgument(f"one-time pad key has {len(key)} bits but data has {len(data)}")
    if any(b not in (0, 1) for b in (*key, *data)):
        raise InvalidArgument("one-time pad operates on bits only")
    return [k ^ d for k, d in zip(key, data)]


def frequency_count(text: LetterString) -> Dict[str, Fraction]:
    values = letters(text)
    if not values:
        raise InvalidArgument("frequency_count needs a nonempty text")
    counts = Counter(from_letters([v]) for v in values)
    return {letter: Fraction(count, len(values)) for letter, count in sorted(counts.items())}


def sample_corpus() -> LetterString:
    """The bundled English sample reduced to upper-case letters."""
    return text_to_letters(SAMPLE_CORPUS.read_text(encoding="utf-8"))


# ===== Finite cryptosystems =====

def _as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class FiniteCryptosystem:
    """
    An explicit (P, C, K, E) with distributions on P and K.

    The encryption table is stored extensionally as {(key, plaintext): ciphertext}.
    """
    plaintexts: Tuple[Symbol, ...]
    ciphertexts: Tuple[Symbol, ...]
    keys: Tuple[Symbol, ...]
    enc: Dict[Tuple[Symbol, Symbol], Symbol]
    plaintext_dist: Dict[Symbol, Fraction]
    key_dist: Dict[Symbol, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "plaintexts", tuple(self.plaintexts))
        object.__setattr__(self, "ciphertexts", tuple(self.ciphertexts))
        object.__setattr__(self, "keys", tuple(self.keys))
        object.__setattr__(self, "plaintext_dist", {p: _as_fraction(self.plaintext_dist.get(p, 0)) for p in self.plaintexts})
        object.__setattr__(self, "key_dist", {k: _as_fraction(self.key_dist.get(k, 0)) for k in self.keys})
        if len(self.plaintexts) * len(self.keys) > 10_000:
            raise InvalidArgument("encryption table larger than 10^4 cells")
        for name, dist in (("plaintext", self.plaintext_dist), ("key", self.key_dist)):
            if any(v < 0 for v in dist.values()) or sum(dist.values()) != 1:
                raise InvalidArgument(f"{name} distribution must be nonnegative and sum to 1")
        cipher_set = set(self.ciphertexts)
        for k in self.keys:
            images = []
            for p in self.plaintexts:
                if (k, p) not in self.enc:
                    raise InvalidArgument(f"encryption table has no entry for key {k!r}, plaintext {p!r}")
                c = self.enc[(k, p)]
                if c not in cipher_set:
                    raise InvalidArgument(f"E_{k}({p}) = {c!r} is not a ciphertext")
                images.append(c)
            if len(set(images)) != len(images):
                raise InvalidArgument(f"E_{k} is not injective, so it cannot be decrypted")

    def encrypt(self, key: Symbol, plaintext: Symbol) -> Symbol:
        return self.enc[(key, plaintext)]


def joint_probability(sys: FiniteCryptosystem, p: Symbol, c: Symbol) -> Fraction:
    """Pr(p and c) = sum of Pr(p)·Pr(k) over keys with E_k(p) = c."""
    return sum(
        (sys.plaintext_dist[p] * sys.key_dist[k] for k in sys.keys if sys.encrypt(k, p) == c),
        Fraction(0),
    )


def ciphertext_probability(sys: FiniteCryptosystem, c: Symbol) -> Fraction:
    return sum((joint_probability(sys, p, c) for p in sys.plaintexts), Fraction(0))


def posterior(sys: FiniteCryptosystem, p: Symbol, c: Symbol) -> Fraction:
    """Pr(p | c) straight from the definition Pr(p and c) / Pr(c)."""
    pr_c = ciphertext_probability(sys, c)
    if pr_c == 0:
        raise InvalidArgument(f"ciphertext {c!r} has probability 0; cannot condition on it")
    return joint_probability(sys, p, c) / pr_c


def posterior_bayes(sys: FiniteCryptosystem, p: Symbol, c: Symbol) -> Fraction:
    """Pr(p | c) via Bayes: Pr(c | p)·Pr(p) / Pr(c)."""
    pr_c = ciphertext_probability(sys, c)
    if pr_c == 0:
        raise InvalidArgument(f"ciphertext {c!r} has probability 0; cannot condition on it")
    pr_c_given_p = sum((sys.key_dist[k] for k in sys.keys if sys.encrypt(k, p) == c), Fraction(0))
    return pr_c_given_p * sys.plaintext_dist[p] / pr_c


@dataclass(frozen=True)
class SecrecyVerdict:
    holds: bool
    witness: Optional[Tuple[Symbol, Symbol]] = None


@dataclass(frozen=True)
class ShannonConditions:
    uniform_keys: bool
    unique_key_per_pair: bool

    @property
    def both(self) -> bool:
        return self.uniform_keys and self.unique_key_per_pair


def is_perfectly_secret(sys: FiniteCryptosystem) -> SecrecyVerdict:
    if any(sys.plaintext_dist[p] == 0 for p in sys.plaintexts):
        raise InvalidArgument("perfect secrecy analysis needs Pr(p) > 0 for every plaintext")
    for p in sys.plaintexts:
        for c in sys.ciphertexts:
            if ciphertext_probability(sys, c) == 0:
                continue
            if posterior(sys, p, c) != sys.plaintext_dist[p]:
                logger.debug(f"perfect secrecy violated at p={p!r}, c={c!r}")
                return SecrecyVerdict(holds=False, witness=(p, c))
    return SecrecyVerdict(holds=True)


def shannon_conditions(sys: FiniteCryptosystem) -> ShannonConditions:
    if len(sys.ciphertexts) != len(sys.keys):
        raise InvalidArgument("Shannon's theorem needs |C| = |K|")
    if any(sys.plaintext_dist[p] == 0 for p in sys.plaintexts):
        raise InvalidArgument("Shannon's theorem needs Pr(p) > 0 for every plaintext")
    uniform = len(set(sys.key_dist.values())) == 1
    unique = all(
        sum(1 for k in sys.keys if sys.encrypt(k, p) == c) == 1
        for p in sys.plaintexts
        for c in sys.ciphertexts
    )
    return ShannonConditions(uniform_keys=uniform, unique_key_per_pair=unique)


# ===== Fixture systems =====

def buchmann_system() -> FiniteCryptosystem:
    """Two plaintexts, two keys, skewed distributions; not perfectly secret."""
    return FiniteCryptosystem(
        plaintexts=(0, 1),
        ciphertexts=("a", "b"),
        keys=("A", "B"),
        enc={("A", 0): "a", ("A", 1): "b", ("B", 0): "b", ("B", 1): "a"},
        plaintext_dist={0: Fraction(1, 4), 1: Fraction(3, 4)},
        key_dist={"A": Fraction(1, 4), "B": Fraction(3, 4)},
    )


def one_time_pad_system(bits: int, plaintext_dist: Optional[Dict[str, Fraction]] = None) -> FiniteCryptosystem:
    """Vernam's pad on `bits`-bit strings with uniform keys."""
    words = [format(i, f"0{bits}b") for i in range(2 ** bits)]
    uniform = Fraction(1, len(words))
    enc = {
        (k, p): "".join(str(b) for b in one_time_pad([int(x) for x in k], [int(x) for x in p]))
        for k in words for p in words
    }
    return FiniteCryptosystem(
        plaintexts=tuple(words),
        ciphertexts=tuple(words),
        keys=tuple(words),
        enc=enc,
        plaintext_dist=plaintext_dist or {w: uniform for w in words},
        key_dist={w: uniform for w in words},
    )


def shift_system(modulus: int, plaintext_dist: Optional[Dict[int, Fraction]] = None) -> FiniteCryptosystem:
    """Shift cipher on Z_m with uniform keys."""
    elems = tuple(range(modulus))
    return FiniteCryptosystem(
        plaintexts=elems,
        ciphertexts=elems,
        keys=elems,
        enc={(k, p): (p + k) % modulus for k in elems for p in elems},
        plaintext_dist=plaintext_dist or {p: Fraction(1, modulus) for p in elems},
        key_dist={k: Fraction(1, modulus) for k in elems},
    )


def _random_distribution(symbols: Sequence[Symbol], rng: Rng, uniform: bool) -> Dict[Symbol, Fraction]:
    if uniform:
        return {s: Fraction(1, len(symbols)) for s in symbols}
    weights = [rng.randint(1, 4) for _ in symbols]
    total = sum(weights)
    return {s: Fraction(w, total) for s, w in zip(symbols, weights)}


def random_small_system(rng: Rng, max_size: int = 4) -> FiniteCryptosystem:
    """
    A random system with |P| = |C| = |K| and Pr(p) > 0. With fewer plaintexts
    than keys the equivalence breaks (one plaintext under skewed keys is
    perfectly secret), so the sweep family keeps the three sizes equal.

    Half of the draws use a Latin-style table (each (p, c) reached by exactly
    one key) so both verdicts show up in a sweep.
    """
    size = rng.randint(1, max_size)
    n_plain = size
    plaintexts = tuple(range(n_plain))
    ciphertexts = tuple(f"c{i}" for i in range(size))
    keys = tuple(f"k{i}" for i in range(size))
    enc: Dict[Tuple[Symbol, Symbol], Symbol] = {}
    if rng.bit():
        cipher_order = list(ciphertexts)
        rng.shuffle(cipher_order)
        for j, k in enumerate(keys):
            for p in plaintexts:
                enc[(k, p)] = cipher_order[(p + j) % size]
    else:
        injections = list(permutations(ciphertexts, n_plain))
        # every ciphertext must occur, otherwise Pr(p | c) is undefined somewhere
        while not enc or set(enc.values()) != set(ciphertexts):
            enc.clear()
            for k in keys:
                row = rng.choice(injections)
                for p, c in zip(plaintexts, row):
                    enc[(k, p)] = c
    return FiniteCryptosystem(
        plaintexts=plaintexts,
        ciphertexts=ciphertexts,
        keys=keys,
        enc=enc,
        plaintext_dist=_random_distribution(plaintexts, rng, uniform=bool(rng.bit())),
        key_dist=_random_distribution(keys, rng, uniform=bool(rng.bit())),
    )


@dataclass(frozen=True)
class SweepReport:
    systems: int
    perfectly_secret: int
    mismatches: Tuple[FiniteCryptosystem, ...]


def shannon_sweep(count: int, rng: Rng) -> SweepReport:
    """Check perfect secrecy <=> (uniform keys and unique keys) on `count` random small systems."""
    mismatches: List[FiniteCryptosystem] = []
    secret = 0
    for _ in range(count):
        sys = random_small_system(rng)
        verdict = is_perfectly_secret(sys)
        secret += verdict.holds
        if verdict.holds != shannon_conditions(sys).both:
            mismatches.append(sys)
    logger.info(f"Shannon sweep: {count} systems, {secret} perfectly secret, {len(mismatches)} mismatches")
    return SweepReport(systems=count, perfectly_secret=secret, mismatches=tuple(mismatches))


# ===== Text table format =====

def load_cryptosystem(text: str) -> FiniteCryptosystem:
    """
    Parse the table format:

        P: 0 1
        C: a b
        K: A B
        dist P 0=1/4 1=3/4
        dist K A=1/4 B=3/4
        enc A 0 a
    """
    spaces: Dict[str, List[str]] = {}
    dists: Dict[str, Dict[str, Fraction]] = {"P": {}, "K": {}}
    enc: Dict[Tuple[str, str], str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        try:
            if head in ("P:", "C:", "K:"):
                spaces[head[0]] = rest.split()
            elif head == "dist":
                which, *entries = rest.split()
                for entry in entries:
                    symbol, _, value = entry.partition("=")
                    dists[which][symbol] = Fraction(value)
            elif head == "enc":
                k, p, c = rest.split()
                enc[(k, p)] = c
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, KeyError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"line {lineno}: {exc}") from exc
    missing = {"P", "C", "K"} - spaces.keys()
    if missing:
        raise InvalidArgument(f"cryptosystem table lacks {', '.join(sorted(missing))} header(s)")
    return FiniteCryptosystem(
        plaintexts=tuple(spaces["P"]),
        ciphertexts=tuple(spaces["C"]),
        keys=tuple(spaces["K"]),
        enc=enc,
        plaintext_dist=dists["P"],
        key_dist=dists["K"],
    )


def dump_cryptosystem(sys: FiniteCryptosystem) -> str:
    lines = [
        "P: " + " ".join(str(p) for p in sys.plaintexts),
        "C: " + " ".join(str(c) for c in sys.ciphertexts),
        "K: " + " ".join(str(k) for k in sys.keys),
        "dist P " + " ".join(f"{p}={v.numerator}/{v.denominator}" for p, v in sys.plaintext_dist.items()),
        "dist K " + " ".join(f"{k}={v.numerator}/{v.denominator}" for k, v in sys.key_dist.items()),
    ]
    lines += [f"enc {k} {p} {sys.encrypt(k, p)}" for k in sys.keys for p in sys.plaintexts]
    return "\n".join(lines) + "\n"
