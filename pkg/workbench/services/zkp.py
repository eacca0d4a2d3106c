"""
Interactive proofs: graph non-isomorphism, the GMW zero-knowledge protocol for
graph isomorphism, and Fiat-Shamir identification, with their simulators.

Every round has an explicit-coin form (`*_from_coins`) so that the real and
simulated transcript distributions can be enumerated exactly; the
rng-driven provers, verifiers and simulators draw the coins and call it.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, Hashable, List, Literal, Mapping, Optional, Sequence, Tuple

from sympy import Rational, gamma, uppergamma

from workbench.core.config import settings
from workbench.core.errors import InvalidArgument, ResourceLimit
from workbench.core.rng import Rng
from workbench.services.graphs import (
    Graph,
    Permutation,
    apply_permutation,
    are_isomorphic_bruteforce,
    compose,
    inverse,
    path_graph,
    random_graph,
    random_permutation,
)
from workbench.services.numtheory import Natural, gen_prime, mod_inverse

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG if settings.DEBUG else logging.ERROR)

GniStrategy = Literal["honest", "cheating"]
CHI_SQUARE_SIGNIFICANCE = 0.001


@dataclass(frozen=True)
class RoundTriple:
    """
    One round as the verifier sees it.

    GMW: (H, b, sigma). Fiat-Shamir: (x, b, y). GNI: (H, b, a), where b is
    the verifier's hidden bit revealed after the prover answered a.
    """
    commitment: Any
    challenge: int
    response: Any

    def canonical(self) -> Tuple[Hashable, int, Hashable]:
        return _canonical(self.commitment), self.challenge, _canonical(self.response)

    def as_record(self) -> Dict[str, Any]:
        commitment, challenge, response = self.canonical()
        return {"commitment": commitment, "challenge": challenge, "response": response}


def _canonical(value: Any) -> Hashable:
    if isinstance(value, Graph):
        return tuple(value.sorted_edges())
    if isinstance(value, Permutation):
        return value.mapping
    return value


@dataclass
class ProtocolOutcome:
    accepted: bool
    rounds: List[RoundTriple] = field(default_factory=list)
    verdicts: List[bool] = field(default_factory=list)
    coin_trace: List[int] = field(default_factory=list)


def _run_rounds(
        rounds: int, rng: Rng, play: Callable[[Rng], Tuple[RoundTriple, bool]],
) -> ProtocolOutcome:
    if rounds < 1:
        raise InvalidArgument("a protocol run needs at least one round")
    outcome = ProtocolOutcome(accepted=True)
    for i in range(rounds):
        child = rng.split(f"round-{i}")
        triple, verdict = play(child)
        outcome.rounds.append(triple)
        outcome.verdicts.append(verdict)
        outcome.coin_trace.append(child.seed)
    outcome.accepted = all(outcome.verdicts)
    return outcome


# ===== Graph non-isomorphism =====

class GniVerifier:
    def __init__(self, g1: Graph, g2: Graph, rng: Rng):
        self._graphs = {1: g1, 2: g2}
        self._rng = rng
        self.b: Optional[int] = None

    def challenge(self) -> Graph:
        self.b = 1 + self._rng.bit()
        pi = random_permutation(self._graphs[self.b].vertex_count, self._rng)
        return apply_permutation(pi, self._graphs[self.b])

    def check(self, a: int) -> bool:
        return a == self.b


class GniProver:
    """
    `honest` decides by brute-force isomorphism and guesses only when H matches
    both graphs; `cheating` always guesses.
    """

    def __init__(self, g1: Graph, g2: Graph, strategy: GniStrategy, rng: Rng):
        if strategy not in ("honest", "cheating"):
            raise InvalidArgument(f"unknown GNI prover strategy {strategy!r}")
        self._g1, self._g2 = g1, g2
        self._strategy = strategy
        self._rng = rng

    def answer(self, h: Graph) -> int:
        if self._strategy == "honest":
            like_1 = are_isomorphic_bruteforce(h, self._g1) is not None
            like_2 = are_isomorphic_bruteforce(h, self._g2) is not None
            if like_1 != like_2:
                return 1 if like_1 else 2
        return 1 + self._rng.bit()


def _check_gni_inputs(g1: Graph, g2: Graph) -> None:
    if g1.vertex_count != g2.vertex_count:
        raise InvalidArgument("GNI inputs must have the same vertex count")
    if g1.vertex_count > settings.ISOMORPHISM_VERTEX_LIMIT:
        raise ResourceLimit(
            f"GNI prover works by brute force up to {settings.ISOMORPHISM_VERTEX_LIMIT} vertices, got {g1.vertex_count}"
        )


def gni_round(g1: Graph, g2: Graph, prover: GniStrategy, rng: Rng) -> Tuple[RoundTriple, bool]:
    _check_gni_inputs(g1, g2)
    verifier = GniVerifier(g1, g2, rng.split("verifier"))
    responder = GniProver(g1, g2, prover, rng.split("prover"))
    h = verifier.challenge()
    a = responder.answer(h)
    return RoundTriple(h, verifier.b, a), verifier.check(a)


def gni_protocol(g1: Graph, g2: Graph, rounds: int, rng: Rng, prover: GniStrategy = "honest") -> ProtocolOutcome:
    _check_gni_inputs(g1, g2)
    return _run_rounds(rounds, rng, lambda child: gni_round(g1, g2, prover, child))


# ===== GMW zero-knowledge proof of graph isomorphism =====

@dataclass(frozen=True)
class GmwPublic:
    g1: Graph
    g2: Graph

    def graph(self, index: int) -> Graph:
        if index not in (1, 2):
            raise InvalidArgument(f"GMW graphs are indexed 1 and 2, got {index}")
        return self.g1 if index == 1 else self.g2


def gmw_keygen(n_vertices: int, rng: Rng) -> Tuple[GmwPublic, Permutation]:
    """Random G1, random pi, G2 = pi(G1). Returns the public pair and the secret pi."""
    if n_vertices < 3:
        raise InvalidArgument("GMW keys need at least 3 vertices")
    g1 = random_graph(n_vertices, rng)
    pi = random_permutation(n_vertices, rng)
    return GmwPublic(g1, apply_permutation(pi, g1)), pi


def gmw_fixture() -> Tuple[GmwPublic, Permutation]:
    """Three-vertex path 0-1-2 and its image under pi = (1, 2, 0)."""
    g1 = path_graph(3)
    pi = Permutation((1, 2, 0))
    return GmwPublic(g1, apply_permutation(pi, g1)), pi


def gmw_response(pi: Permutation, rho: Permutation, a: int, b: int) -> Permutation:
    """sigma = rho if b = a; rho∘pi if b = 1, a = 2; rho∘pi^-1 if b = 2, a = 1."""
    if a == b:
        return rho
    if b == 1:
        return compose(rho, pi)
    return compose(rho, inverse(pi))


def gmw_check(public: GmwPublic, triple: RoundTriple) -> bool:
    """sigma(G_b) = H."""
    return apply_permutation(triple.response, public.graph(triple.challenge)) == triple.commitment


def gmw_round_from_coins(public: GmwPublic, pi: Permutation, rho: Permutation, a: int, b: int) -> RoundTriple:
    h = apply_permutation(rho, public.graph(a))
    return RoundTriple(h, b, gmw_response(pi, rho, a, b))


def gmw_simulated_from_coins(public: GmwPublic, rho: Permutation, a: int, b: int) -> Optional[RoundTriple]:
    """The simulator's attempt: kept only when the guessed a equals the verifier's b."""
    if a != b:
        return None
    return RoundTriple(apply_permutation(rho, public.graph(a)), b, rho)


def gmw_coin_space(n_vertices: int) -> List[Tuple[Permutation, int, int]]:
    return [
        (Permutation(mapping), a, b)
        for mapping in itertools.permutations(range(n_vertices))
        for a in (1, 2)
        for b in (1, 2)
    ]


class GmwProver:
    """Knows pi, or with `pi=None` is an impostor who commits to a guessed a and answers rho."""

    def __init__(self, public: GmwPublic, pi: Optional[Permutation], rng: Rng):
        self._public = public
        self._pi = pi
        self._rng = rng
        self._rho: Optional[Permutation] = None
        self._a: Optional[int] = None

    def commit(self) -> Graph:
        self._a = 1 + self._rng.bit()
        self._rho = random_permutation(self._public.g1.vertex_count, self._rng)
        return apply_permutation(self._rho, self._public.graph(self._a))

    def respond(self, b: int) -> Permutation:
        if self._pi is None:
            return self._rho
        return gmw_response(self._pi, self._rho, self._a, b)


class GmwVerifier:
    def __init__(self, public: GmwPublic, rng: Rng):
        self._public = public
        self._rng = rng

    def challenge(self) -> int:
        return 1 + self._rng.bit()

    def check(self, triple: RoundTriple) -> bool:
        return gmw_check(self._public, triple)


def run_round(prover, verifier) -> Tuple[RoundTriple, bool]:
    """commit, challenge, respond, check."""
    commitment = prover.commit()
    b = verifier.challenge()
    triple = RoundTriple(commitment, b, prover.respond(b))
    return triple, verifier.check(triple)


def gmw_round(public: GmwPublic, rng: Rng, pi: Optional[Permutation] = None) -> Tuple[RoundTriple, bool]:
    return run_round(GmwProver(public, pi, rng.split("prover")), GmwVerifier(public, rng.split("verifier")))


def gmw_protocol(public: GmwPublic, rounds: int, rng: Rng, pi: Optional[Permutation] = None) -> ProtocolOutcome:
    return _run_rounds(rounds, rng, lambda child: gmw_round(public, child, pi))


class GmwSimulator:
    """Rejection-sampling simulator. Built from public values only."""

    def __init__(self, public: GmwPublic, rng: Rng):
        self._public = public
        self._rng = rng
        self.attempts = 0

    def round(self) -> RoundTriple:
        n = self._public.g1.vertex_count
        while True:
            self.attempts += 1
            a = 1 + self._rng.bit()
            rho = random_permutation(n, self._rng)
            b = 1 + self._rng.bit()
            triple = gmw_simulated_from_coins(self._public, rho, a, b)
            if triple is not None:
                return triple


def gmw_simulator_round(public: GmwPublic, rng: Rng) -> RoundTriple:
    return GmwSimulator(public, rng).round()


# ===== Fiat-Shamir identification =====

@dataclass(frozen=True)
class FsPublic:
    n: Natural
    v: Natural


@dataclass(frozen=True)
class FsKeys:
    p: Natural
    q: Natural
    n: Natural
    s: Natural
    v: Natural

    def __post_init__(self):
        if gcd(self.s, self.n) != 1:
            raise InvalidArgument("the Fiat-Shamir secret must be coprime to n")
        if self.v != self.s * self.s % self.n:
            raise InvalidArgument("v must equal s^2 mod n")

    @property
    def public(self) -> FsPublic:
        return FsPublic(self.n, self.v)


def fs_keygen(bits: int, rng: Rng) -> FsKeys:
    if bits < 8:
        raise InvalidArgument("fs_keygen requires bits >= 8")
    while True:
        p, q = gen_prime(bits - bits // 2, rng), gen_prime(bits // 2, rng)
        if p != q:
            break
    n = p * q
    while True:
        s = rng.randint(2, n - 1)
        if gcd(s, n) == 1:
            return FsKeys(p=p, q=q, n=n, s=s, v=s * s % n)


def fs_fixture_keys() -> FsKeys:
    """n = 15 (p = 3, q = 5) with s = 2, v = 4."""
    return FsKeys(p=3, q=5, n=15, s=2, v=4)


def _units(n: Natural) -> List[Natural]:
    return [r for r in range(1, n) if gcd(r, n) == 1]


def _random_unit(n: Natural, rng: Rng) -> Natural:
    while True:
        r = rng.randint(1, n - 1)
        if gcd(r, n) == 1:
            return r


def fs_check(public: FsPublic, triple: RoundTriple, strict: Optional[bool] = None) -> bool:
    """
    y^2 = x·v^b (mod n). The strict verifier also turns away x = 0 and y = 0,
    which the bare congruence would let a prover with r = 0 through.
    """
    strict = settings.STRICT_FIAT_SHAMIR if strict is None else strict
    n = public.n
    x, b, y = triple.commitment % n, triple.challenge, triple.response % n
    if strict and (x == 0 or y == 0):
        return False
    return y * y % n == x * pow(public.v, b, n) % n


def fs_round_from_coins(public: FsPublic, s: Natural, r: Natural, b: int) -> RoundTriple:
    n = public.n
    return RoundTriple(r * r % n, b, r * pow(s, b, n) % n)


def fs_simulated_from_coins(public: FsPublic, r: Natural, c: int, b: int) -> Optional[RoundTriple]:
    """x = r^2·v^(-c); kept only when the verifier's b equals the guessed c."""
    if c != b:
        return None
    n = public.n
    v_inverse = mod_inverse(public.v, n)
    if v_inverse is None:
        raise InvalidArgument("v is not invertible modulo n")
    return RoundTriple(r * r * pow(v_inverse, c, n) % n, b, r)


def fs_real_coin_space(n: Natural) -> List[Tuple[Natural, int]]:
    return [(r, b) for r in _units(n) for b in (0, 1)]


def fs_simulator_coin_space(n: Natural) -> List[Tuple[Natural, int, int]]:
    return [(r, c, b) for r in _units(n) for c in (0, 1) for b in (0, 1)]


class FsProver:
    """
    With `s` the honest prover. With `s=None` an impostor who guesses c,
    commits x = r^2·v^(-c) and answers y = r, passing exactly when b = c.
    """

    def __init__(self, public: FsPublic, s: Optional[Natural], rng: Rng):
        self._public = public
        self._s = s
        self._rng = rng
        self._r: Optional[Natural] = None
        self._c: Optional[int] = None

    def commit(self) -> Natural:
        n = self._public.n
        self._r = _random_unit(n, self._rng)
        if self._s is not None:
            return self._r * self._r % n
        self._c = self._rng.bit()
        v_inverse = mod_inverse(self._public.v, n)
        if v_inverse is None:
            raise InvalidArgument("v is not invertible modulo n")
        return self._r * self._r * pow(v_inverse, self._c, n) % n

    def respond(self, b: int) -> Natural:
        if self._s is None:
            return self._r
        return self._r * pow(self._s, b, self._public.n) % self._public.n


class ZeroProver:
    """Sends x = 0 and y = 0, which satisfy the congruence for every b."""

    def commit(self) -> Natural:
        return 0

    def respond(self, b: int) -> Natural:
        return 0


class FsVerifier:
    def __init__(self, public: FsPublic, rng: Rng, strict: Optional[bool] = None):
        self._public = public
        self._rng = rng
        self._strict = strict

    def challenge(self) -> int:
        return self._rng.bit()

    def check(self, triple: RoundTriple) -> bool:
        return fs_check(self._public, triple, self._strict)


def fs_round(public: FsPublic, rng: Rng, s: Optional[Natural] = None,
             strict: Optional[bool] = None) -> Tuple[RoundTriple, bool]:
    return run_round(FsProver(public, s, rng.split("prover")), FsVerifier(public, rng.split("verifier"), strict))


def fs_protocol(public: FsPublic, rounds: int, rng: Rng, s: Optional[Natural] = None,
                strict: Optional[bool] = None) -> ProtocolOutcome:
    return _run_rounds(rounds, rng, lambda child: fs_round(public, child, s, strict))


class FsSimulator:
    """Rejection-sampling simulator. Built from public values only."""

    def __init__(self, public: FsPublic, rng: Rng):
        if mod_inverse(public.v, public.n) is None:
            raise InvalidArgument("v is not invertible modulo n")
        self._public = public
        self._rng = rng
        self.attempts = 0

    def round(self) -> RoundTriple:
        while True:
            self.attempts += 1
            r = _random_unit(self._public.n, self._rng)
            c = self._rng.bit()
            b = self._rng.bit()
            triple = fs_simulated_from_coins(self._public, r, c, b)
            if triple is not None:
                return triple


def fs_simulator_round(public: FsPublic, rng: Rng) -> RoundTriple:
    return FsSimulator(public, rng).round()


# ===== Distributions and amplification =====

def exact_distribution(source: Callable[..., Optional[RoundTriple]],
                       coin_space: Sequence[Tuple]) -> Dict[Hashable, Fraction]:
    """
    Enumerate equally likely coin tuples; outcomes where `source` returns None
    are discarded and the rest renormalized, which is what a rejection
    sampler's kept rounds follow.
    """
    if len(coin_space) > settings.COIN_SPACE_LIMIT:
        raise ResourceLimit(f"coin space of {len(coin_space)} exceeds {settings.COIN_SPACE_LIMIT}")
    counts: Counter = Counter()
    for coins in coin_space:
        triple = source(*coins)
        if triple is not None:
            counts[triple.canonical()] += 1
    total = sum(counts.values())
    if total == 0:
        raise InvalidArgument("no coin outcome produced a round")
    return {key: Fraction(count, total) for key, count in counts.items()}


def transcript_counts(source: Callable[[Rng], RoundTriple], samples: int, rng: Rng) -> Counter:
    counts: Counter = Counter()
    for _ in range(samples):
        counts[source(rng).canonical()] += 1
    return counts


def transcript_distribution(source: Callable[[Rng], RoundTriple], samples: int, rng: Rng) -> Dict[Hashable, Fraction]:
    if samples < 1:
        raise InvalidArgument("need at least one sample")
    counts = transcript_counts(source, samples, rng)
    return {key: Fraction(count, samples) for key, count in counts.items()}


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    degrees_of_freedom: int
    p_value: float
    same: bool


def chi_square_same_distribution(
        first: Mapping[Hashable, int], second: Mapping[Hashable, int],
        significance: float = CHI_SQUARE_SIGNIFICANCE,
) -> ChiSquareResult:
    """Two-sample chi-square homogeneity test on count maps."""
    total_a, total_b = sum(first.values()), sum(second.values())
    if total_a == 0 or total_b == 0:
        raise InvalidArgument("both samples must be nonempty")
    categories = sorted(set(first) | set(second), key=repr)
    statistic = 0.0
    for key in categories:
        a, b = first.get(key, 0), second.get(key, 0)
        expected_a = (a + b) * total_a / (total_a + total_b)
        expected_b = (a + b) * total_b / (total_a + total_b)
        statistic += (a - expected_a) ** 2 / expected_a + (b - expected_b) ** 2 / expected_b
    dof = len(categories) - 1
    if dof == 0:
        p_value = 1.0
    else:
        half = Rational(dof, 2)
        p_value = float((uppergamma(half, statistic / 2) / gamma(half)).evalf())
    return ChiSquareResult(statistic, dof, p_value, p_value >= significance)


def acceptance_rate(per_round: Callable[[], bool], trials: int) -> Fraction:
    if trials < 1:
        raise InvalidArgument("need at least one trial")
    return Fraction(sum(1 for _ in range(trials) if per_round()), trials)


def amplified_accept(
        per_round: Callable[[], bool], k: int, thresholds: Tuple[float, float] = (0.75, 0.25),
        policy: Literal["all", "majority"] = "all",
) -> bool:
    """
    Run k independent rounds.

    `all` accepts only if every round passes (stopping at the first failure),
    which is how GNI, GMW and Fiat-Shamir are repeated. `majority` accepts when
    the pass fraction exceeds the midpoint of the accept/reject thresholds.
    """
    if k < 1:
        raise InvalidArgument("amplification needs k >= 1")
    if policy == "all":
        return all(per_round() for _ in range(k))
    accept, reject = thresholds
    passes = sum(1 for _ in range(k) if per_round())
    return passes / k > (accept + reject) / 2
