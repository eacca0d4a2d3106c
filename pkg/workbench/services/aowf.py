"""
Two-argument functions with partial domains: the bottom extension, exhaustive
associativity / commutativity checkers, bounded inverters, and two concrete
constructions.

`sigma_cert` is built over three-colorability. Its arguments are pairs
<x, z> where x encodes a graph and z is either x itself or a certificate
(a legal three-coloring of that graph). `sigma_strong` cannot be inverted
on a fixed argument without inverting its inner `rho`, yet it is inverted
outright by z -> (0, z).
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt
from typing import Callable, List, Optional, Sequence, Tuple, Union

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument
from workbench.schemas.report import PropertyCheckResult
from workbench.services.graphs import (
    COLORS,
    Coloring3,
    Graph,
    edgeless_graph,
    enumerate_3colorings,
    graph_from_text,
    is_legal_3coloring,
)
from workbench.services.numtheory import Natural

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

Evaluator = Callable[[Natural, Natural], Optional[Natural]]


class Bottom(Enum):
    BOT = "⊥"

    def __repr__(self) -> str:
        return "⊥"


BOT = Bottom.BOT
BottomExtended = Union[Natural, Bottom]


@dataclass(frozen=True)
class PartialBinaryFn:
    """A deterministic two-argument function; `None` means undefined."""
    name: str
    evaluator: Evaluator
    domain: Optional[Tuple[Natural, ...]] = None

    def __call__(self, a: Natural, b: Natural) -> Optional[Natural]:
        return self.evaluator(a, b)


# ===== Pairing =====

def pair(x: Natural, y: Natural) -> Natural:
    """Cantor pairing; pair(0, 0) = 0."""
    if x < 0 or y < 0:
        raise InvalidArgument("pairing is defined on naturals only")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: Natural) -> Tuple[Natural, Natural]:
    if z < 0:
        raise InvalidArgument("unpair takes a natural")
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


# ===== Bottom extension and totalization =====

def bot_extend(f: Evaluator) -> Callable[[BottomExtended, BottomExtended], BottomExtended]:
    def extended(a: BottomExtended, b: BottomExtended) -> BottomExtended:
        if a is BOT or b is BOT:
            return BOT
        value = f(a, b)
        return BOT if value is None else value

    return extended


def totalize(f: Evaluator) -> Callable[[Natural, Natural], Natural]:
    """
    Total version on shifted encodings: a natural v stands for v + 1 and 0 is
    the absorbing element.
    """
    def total(a: Natural, b: Natural) -> Natural:
        if a == 0 or b == 0:
            return 0
        value = f(a - 1, b - 1)
        return 0 if value is None else value + 1

    return total


def shift_domain(domain: Sequence[Natural]) -> List[Natural]:
    """The encodings of `domain` under `totalize`, plus the absorbing 0."""
    return [0] + [v + 1 for v in domain]


# ===== Property checks =====

def check_associative(f: Evaluator, domain: Sequence[Natural]) -> PropertyCheckResult:
    """Test σ⊥(σ⊥(a, b), c) = σ⊥(a, σ⊥(b, c)) on every triple of `domain`."""
    g = bot_extend(f)
    for a, b, c in itertools.product(domain, repeat=3):
        left, right = g(g(a, b), c), g(a, g(b, c))
        if left != right:
            logger.debug(f"associativity fails at ({a}, {b}, {c}): {left!r} != {right!r}")
            return PropertyCheckResult(property="associative", domain_size=len(domain), holds=False, witness=[a, b, c])
    return PropertyCheckResult(property="associative", domain_size=len(domain), holds=True)


def check_weakly_associative(f: Evaluator, domain: Sequence[Natural]) -> PropertyCheckResult:
    """The associativity equation, asked only where all four applications are defined."""
    for a, b, c in itertools.product(domain, repeat=3):
        ab, bc = f(a, b), f(b, c)
        if ab is None or bc is None:
            continue
        left, right = f(ab, c), f(a, bc)
        if left is None or right is None:
            continue
        if left != right:
            return PropertyCheckResult(
                property="weakly-associative", domain_size=len(domain), holds=False, witness=[a, b, c]
            )
    return PropertyCheckResult(property="weakly-associative", domain_size=len(domain), holds=True)


def check_commutative(f: Evaluator, domain: Sequence[Natural]) -> PropertyCheckResult:
    g = bot_extend(f)
    for a, b in itertools.combinations(domain, 2):
        if g(a, b) != g(b, a):
            return PropertyCheckResult(property="commutative", domain_size=len(domain), holds=False, witness=[a, b])
    return PropertyCheckResult(property="commutative", domain_size=len(domain), holds=True)


def invert_first_bruteforce(f: Evaluator, a: Natural, z: Natural, bound: Natural) -> Optional[Natural]:
    """Smallest b <= bound with f(a, b) = z (the first argument is the one given)."""
    for b in range(bound + 1):
        if f(a, b) == z:
            return b
    return None


def invert_second_bruteforce(f: Evaluator, b: Natural, z: Natural, bound: Natural) -> Optional[Natural]:
    """Smallest a <= bound with f(a, b) = z."""
    for a in range(bound + 1):
        if f(a, b) == z:
            return a
    return None


def check_overstrong_candidate(
        f: Evaluator,
        candidate: Callable[[int, Natural, Natural], Tuple[Natural, Natural]],
        domain: Sequence[Natural],
) -> PropertyCheckResult:
    """
    Try to falsify overstrongness of f on a finite slice.

    For i in {1, 2} and every (z, a) realized inside `domain` (some b gives
    f(a, b) = z for i = 1, or f(b, a) = z for i = 2), the candidate must
    return a preimage of z. `holds` reports whether it did every time; a True
    result only says f is not overstrong, a False result proves nothing.
    """
    realized = set()
    for a, b in itertools.product(domain, repeat=2):
        z = f(a, b)
        if z is not None:
            realized.add((1, z, a))
        z = f(b, a)
        if z is not None:
            realized.add((2, z, a))
    for i, z, a in sorted(realized):
        x, y = candidate(i, z, a)
        if f(x, y) != z:
            return PropertyCheckResult(
                property="inverted-by-candidate", domain_size=len(domain), holds=False, witness=[i, z, a]
            )
    return PropertyCheckResult(property="inverted-by-candidate", domain_size=len(domain), holds=True)


# ===== Certificate-based σ over three-colorability =====

_COLOR_DIGIT = {color: digit for digit, color in enumerate(COLORS, start=1)}
_DIGIT_COLOR = {digit: color for color, digit in _COLOR_DIGIT.items()}


def _base4_length(v: Natural) -> int:
    return max(1, (v.bit_length() + 1) // 2)


def encode_graph(g: Graph) -> Natural:
    """The graph's text form read as a base-256 number, plus one."""
    return int.from_bytes(g.to_text().encode("ascii"), "big") + 1


@lru_cache(maxsize=1024)
def decode_graph(x: Natural) -> Optional[Graph]:
    if x < 1:
        return None
    raw = (x - 1).to_bytes(((x - 1).bit_length() + 7) // 8, "big")
    try:
        graph, _ = graph_from_text(raw.decode("ascii"))
    except (UnicodeDecodeError, InvalidArgument):
        return None
    return graph if encode_graph(graph) == x else None


def encode_certificate(x: Natural, psi: Coloring3) -> Natural:
    """
    Digits (base 4, most significant first): a 1, then |x| zeros, then one
    digit 1..3 per vertex. |x| counts base-4 digits, so |z| = |x| + n + 1.
    """
    z = 1
    z <<= 2 * _base4_length(x)
    for color in psi.assignment:
        z = (z << 2) | _COLOR_DIGIT[color]
    return z


def decode_certificate(x: Natural, z: Natural) -> Optional[Coloring3]:
    graph = decode_graph(x)
    if graph is None:
        return None
    n = graph.vertex_count
    if _base4_length(z) != _base4_length(x) + n + 1:
        return None
    if z >> (2 * (_base4_length(x) + n)) != 1:
        return None
    if (z >> (2 * n)) & ((1 << (2 * _base4_length(x))) - 1):
        return None
    digits = [(z >> (2 * (n - 1 - v))) & 3 for v in range(n)]
    if 0 in digits:
        return None
    return Coloring3(tuple(_DIGIT_COLOR[d] for d in digits))


@lru_cache(maxsize=65536)
def is_certificate(x: Natural, z: Natural) -> bool:
    psi = decode_certificate(x, z)
    return psi is not None and is_legal_3coloring(decode_graph(x), psi)


def sigma_cert(a: Natural, b: Natural) -> Optional[Natural]:
    """
    <x, z1>, <x, z2> with both certificates      -> <x, min(z1, z2)>
    <x, x> with <x, z>, either order, z certificate -> <x, x>
    anything else                                 -> undefined
    """
    x1, z1 = unpair(a)
    x2, z2 = unpair(b)
    if x1 != x2:
        return None
    x = x1
    cert1, cert2 = is_certificate(x, z1), is_certificate(x, z2)
    if cert1 and cert2:
        return pair(x, min(z1, z2))
    if (z1 == x and cert2) or (cert1 and z2 == x):
        return pair(x, x)
    return None


def certificate_domain(g: Graph, size: int = 30) -> List[Natural]:
    """
    Finite slice for exhaustive checks on `sigma_cert`.

    Holds <x, x>, every legal certificate of g, two elements of a foreign
    one-vertex graph, and then illegal colorings of g (and after those,
    short non-certificates) until `size` elements are reached.
    """
    x = encode_graph(g)
    elements = [pair(x, x)]
    elements += [pair(x, encode_certificate(x, psi)) for psi in enumerate_3colorings(g)]
    foreign = edgeless_graph(1)
    y = encode_graph(foreign)
    elements += [pair(y, y), pair(y, encode_certificate(y, Coloring3((COLORS[0],))))]
    if g.vertex_count <= settings.COLORING_VERTEX_LIMIT:
        for assignment in itertools.product(COLORS, repeat=g.vertex_count):
            if len(elements) >= size:
                break
            psi = Coloring3(assignment)
            if not is_legal_3coloring(g, psi):
                elements.append(pair(x, encode_certificate(x, psi)))
    junk = 0
    while len(elements) < size:
        elements.append(pair(x, junk))
        junk += 1
    return elements


def sigma_cert_fn(g: Graph, size: int = 30) -> PartialBinaryFn:
    return PartialBinaryFn("sigma-cert", sigma_cert, tuple(certificate_domain(g, size)))


# ===== Strongly noninvertible yet invertible σ =====

def odd(n: Natural) -> Natural:
    return 2 * n + 1


def even(n: Natural) -> Natural:
    return 2 * n


def default_rho(x: Natural, y: Natural) -> Natural:
    return pair(x * y + 1, x + y)


def sigma_strong(a: Natural, b: Natural, rho: Callable[[Natural, Natural], Natural] = default_rho) -> Natural:
    if a == 0 or b == 0:
        return a + b
    if a % 2 == 1 and b % 2 == 0:
        return even(rho(*unpair(a)))
    if a % 2 == 0 and b % 2 == 1:
        return even(rho(*unpair(b)))
    return odd(a + b)


def universal_inverter_for_sigma_strong(z: Natural) -> Tuple[Natural, Natural]:
    return 0, z


def weakly_but_not_associative() -> PartialBinaryFn:
    """
    Defined only at (1, 2) -> 3 and (0, 3) -> 4.

    No triple has all four applications defined, so the weak equation holds
    vacuously, but under ⊥ the triple (0, 1, 2) gives ⊥ on one side and 4 on
    the other.
    """
    table = {(1, 2): 3, (0, 3): 4}
    return PartialBinaryFn("weak-only", lambda a, b: table.get((a, b)), (0, 1, 2, 3))
