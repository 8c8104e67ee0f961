"""
Admissible-Word Languages

A Language is the finite shadow of a subshift: the admissible words of
every length up to a depth L. Full-shift, finite-type and tilde languages
are implicit (membership predicate plus canonical on-demand enumeration);
substitution languages keep explicit factor sets.
"""

import logging
import threading
from abc import ABC, abstractmethod
from math import comb
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..errors import InvalidInputError, NonConvergenceError, ResolutionExceededError
from .specs import FiniteType, FullShift, ShiftSpaceSpec, Substitution, TildeExtension
from .words import Word, alphabet, delete_twos

logger = logging.getLogger(__name__)

DEFAULT_STEP_CAP = 40
DEFAULT_MAX_LENGTH = 2 ** 22
MAX_STATES = 2 ** 16


def prune_stranded(G: nx.DiGraph) -> None:
    """Remove, in place, every vertex from which no infinite forward path starts"""
    stranded = [q for q in G if not G.out_edges(q)]
    while stranded:
        frontier = {q for (q, _) in G.in_edges(stranded)}
        G.remove_nodes_from(stranded)
        stranded = [q for q in frontier if q in G and not G.out_edges(q)]


class Language(ABC):
    """Factor-closed, extension-consistent set of admissible words up to `depth`"""

    def __init__(self, spec: ShiftSpaceSpec, depth: int):
        if depth < 1:
            raise InvalidInputError(f"language depth must be at least 1, got {depth}")
        self.spec = spec
        self.depth = depth
        self.k = spec.alphabet_size
        self.symbols = alphabet(self.k)
        self._words: Dict[int, Tuple[Word, ...]] = {0: ("",)}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.to_text()!r}, depth={self.depth})"

    @abstractmethod
    def _accepts(self, w: Word) -> bool:
        """Membership for a nonempty word over the alphabet, |w| <= depth"""

    def check_length(self, length: int, what: str = "word") -> None:
        if length > self.depth:
            raise ResolutionExceededError(f"{what} of length {length} is beyond the language", length, self.depth)

    def is_admissible(self, w: Word) -> bool:
        """
        Test whether w occurs in some point of the subshift

        Args:
            w: Word over the digit alphabet

        Returns:
            True for admissible words; the empty word is always admissible
        """
        self.check_length(len(w))
        if not w:
            return True
        if any(symbol not in self.symbols for symbol in w):
            return False
        return self._accepts(w)

    def extensions(self, w: Word) -> List[Word]:
        """Admissible one-symbol right extensions of w, in canonical order"""
        self.check_length(len(w) + 1, "extension")
        return [w + symbol for symbol in self.symbols if self._accepts(w + symbol)]

    def words(self, n: int) -> Tuple[Word, ...]:
        """All admissible words of length n, canonically ordered"""
        self.check_length(n)
        with self._lock:
            cached = self._words.get(n)
            if cached is not None:
                return cached
            start = max(length for length in self._words if length <= n)
            level = self._words[start]
            for length in range(start + 1, n + 1):
                level = tuple(
                    w + symbol for w in level for symbol in self.symbols if self._accepts(w + symbol)
                )
                self._words[length] = level
            return level

    def count(self, n: int) -> int:
        """Number of admissible words of length n"""
        return len(self.words(n))

    def completions(self, prefix: Word, length: int) -> Iterator[Word]:
        """
        Admissible words of the given length that begin with `prefix`

        Yields in canonical order; nothing when the prefix itself is inadmissible.
        """
        self.check_length(length)
        if len(prefix) > length or not self.is_admissible(prefix):
            return
        stack = [prefix]
        while stack:
            w = stack.pop()
            if len(w) == length:
                yield w
                continue
            for symbol in reversed(self.symbols):
                if self._accepts(w + symbol):
                    stack.append(w + symbol)

    def first_completion(self, prefix: Word, length: int) -> Optional[Word]:
        return next(self.completions(prefix, length), None)

    def orbit_prefix(self, length: int) -> Word:
        """Prefix of a distinguished orbit; only substitution-backed languages have one"""
        raise InvalidInputError(f"{self.spec.to_text()} has no distinguished orbit")

    @property
    def has_orbit(self) -> bool:
        return False


class FullShiftLanguage(Language):
    """Every word over the alphabet is admissible"""

    def _accepts(self, w: Word) -> bool:
        return True

    def count(self, n: int) -> int:
        self.check_length(n)
        return self.k ** n


class FiniteTypeLanguage(Language):
    """
    One-sided shift of finite type

    A word is admissible when it avoids every forbidden word and continues to
    an infinite forbidden-free sequence. The state graph has the forbidden-free
    words of length M-1 (M the longest forbidden word) as vertices and one edge
    per readable symbol; vertices with no way forward are pruned.
    """

    def __init__(self, spec: FiniteType, depth: int):
        super().__init__(spec, depth)
        self.forbidden = spec.forbidden
        self.memory = spec.memory
        self.state_length = max(self.memory - 1, 0)
        if self.k ** self.state_length > MAX_STATES:
            raise InvalidInputError(
                f"forbidden words of length {self.memory} over {self.k} symbols give too many states"
            )
        self.states = [w for w in self._all_words(self.state_length) if self.avoids_forbidden(w)]
        self.graph = self._state_graph(self.states)
        prune_stranded(self.graph)
        self.live_states = sorted(self.graph)
        if not self.live_states:
            raise InvalidInputError(f"{spec.to_text()} defines an empty subshift")
        self._live_prefixes: Set[Word] = {s[:i] for s in self.live_states for i in range(len(s) + 1)}
        logger.debug(f"{spec.to_text()}: {len(self.states)} states, {len(self.live_states)} live")

    def _all_words(self, n: int) -> List[Word]:
        level = [""]
        for _ in range(n):
            level = [w + symbol for w in level for symbol in self.symbols]
        return level

    def avoids_forbidden(self, w: Word) -> bool:
        return not any(f in w for f in self.forbidden)

    def _step(self, state: Word, symbol: str) -> Optional[Word]:
        """Next state after reading symbol, or None when a forbidden word is completed"""
        window = state + symbol
        if any(window.endswith(f) for f in self.forbidden):
            return None
        return window[1:] if self.state_length else ""

    def _state_graph(self, states: List[Word]) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        G.add_nodes_from(states)
        for s in states:
            for symbol in self.symbols:
                t = self._step(s, symbol)
                if t is not None:
                    G.add_edge(s, t, label=symbol)
        return G

    def _accepts(self, w: Word) -> bool:
        if not self.avoids_forbidden(w):
            return False
        if len(w) >= self.state_length:
            return w[len(w) - self.state_length:] in self.graph
        return w in self._live_prefixes

    def count(self, n: int) -> int:
        self.check_length(n)
        if n <= self.state_length:
            return sum(1 for p in self._live_prefixes if len(p) == n)
        walks = {s: 1 for s in self.live_states}
        for _ in range(n - self.state_length):
            walks = {s: sum(walks[t] for _, t in self.graph.out_edges(s)) for s in self.live_states}
        return sum(walks.values())


class SubstitutionLanguage(Language):
    """
    Factors of the fixed point of a non-erasing substitution

    The substitution is iterated from the seed until the factor sets of every
    length up to the depth agree for two consecutive iterates.
    """

    def __init__(
        self,
        spec: Substitution,
        depth: int,
        step_cap: int = DEFAULT_STEP_CAP,
        max_length: int = DEFAULT_MAX_LENGTH,
    ):
        super().__init__(spec, depth)
        self.substitution = spec
        self.step_cap = step_cap
        self.max_length = max_length
        self._fixed_point = spec.seed
        self._factors = self._stabilize()
        self._words.update({n: tuple(sorted(f)) for n, f in self._factors.items()})

    def _factor_sets(self, w: Word) -> Dict[int, Set[Word]]:
        top = self.depth
        longest = {w[i:i + top] for i in range(len(w) - top + 1)}
        tail = w[max(len(w) - top + 1, 0):]
        sets = {}
        for n in range(1, top + 1):
            sets[n] = {x[:n] for x in longest} | {tail[i:i + n] for i in range(len(tail) - n + 1)}
        return sets

    def _stabilize(self) -> Dict[int, Set[Word]]:
        current = self.substitution.seed
        previous: Optional[Dict[int, Set[Word]]] = None
        for step in range(1, self.step_cap + 1):
            following = self.substitution.apply(current)
            if following == current:
                raise InvalidInputError(f"{self.spec.to_text()} has a finite fixed point {current!r}")
            if len(following) > self.max_length:
                raise NonConvergenceError(
                    f"{self.spec.to_text()} exceeded {self.max_length} symbols before its factors stabilized",
                    self.step_cap,
                )
            current = following
            if len(current) < self.depth:
                continue
            sets = self._factor_sets(current)
            logger.debug(f"{self.spec.to_text()} step {step}: length {len(current)}, {len(sets[self.depth])} factors")
            if previous is not None and sets == previous:
                self._fixed_point = current
                logger.info(f"Factors of {self.spec.to_text()} stabilized after {step} steps at depth {self.depth}")
                return sets
            previous = sets
        raise NonConvergenceError(f"factors of {self.spec.to_text()} did not stabilize at depth {self.depth}", self.step_cap)

    def _accepts(self, w: Word) -> bool:
        return w in self._factors[len(w)]

    def count(self, n: int) -> int:
        self.check_length(n)
        return len(self._words[n]) if n else 1

    @property
    def has_orbit(self) -> bool:
        return True

    def orbit_prefix(self, length: int) -> Word:
        """Prefix of the substitution fixed point, grown on demand"""
        if length > self.max_length:
            raise ResolutionExceededError(f"orbit prefix of {length} symbols exceeds the cap {self.max_length}")
        with self._lock:
            while len(self._fixed_point) < length:
                self._fixed_point = self.substitution.apply(self._fixed_point)
            return self._fixed_point[:length]


class TildeLanguage(Language):
    """Ternary words whose 2-deletion is admissible in a binary inner language"""

    def __init__(self, spec: TildeExtension, depth: int, inner: Language):
        super().__init__(spec, depth)
        if inner.k != 2:
            raise InvalidInputError(f"tilde extension needs a 2-symbol inner language, got k={inner.k}")
        if inner.depth < depth:
            raise ResolutionExceededError("inner language too shallow for the tilde language", depth, inner.depth)
        self.inner = inner

    def _accepts(self, w: Word) -> bool:
        return self.inner.is_admissible(delete_twos(w))

    def count(self, n: int) -> int:
        self.check_length(n)
        return sum(comb(n, i) * self.inner.count(i) for i in range(n + 1))

    @property
    def has_orbit(self) -> bool:
        return self.inner.has_orbit

    def orbit_prefix(self, length: int) -> Word:
        return self.inner.orbit_prefix(length)


def generate_language(
    spec: ShiftSpaceSpec,
    depth: int,
    step_cap: int = DEFAULT_STEP_CAP,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> Language:
    """
    Build the language of a subshift up to the given depth

    Args:
        spec: Subshift specification
        depth: Resolution L
        step_cap: Iteration cap for substitution languages
        max_length: Length guard for substitution iterates

    Returns:
        Language of the requested family
    """
    if isinstance(spec, FullShift):
        lang: Language = FullShiftLanguage(spec, depth)
    elif isinstance(spec, FiniteType):
        lang = FiniteTypeLanguage(spec, depth)
    elif isinstance(spec, Substitution):
        lang = SubstitutionLanguage(spec, depth, step_cap=step_cap, max_length=max_length)
    elif isinstance(spec, TildeExtension):
        inner = generate_language(spec.inner, depth, step_cap=step_cap, max_length=max_length)
        lang = TildeLanguage(spec, depth, inner)
    else:
        raise InvalidInputError(f"unsupported spec {spec!r}")
    logger.info(f"Generated language for {spec.to_text()} at depth {depth}")
    return lang


def tilde_of(inner: Language, depth: Optional[int] = None) -> TildeLanguage:
    """Tilde language over an already generated binary inner language"""
    return TildeLanguage(TildeExtension(inner=inner.spec), depth or inner.depth, inner)


def language_complexity(lang: Language, max_length: Optional[int] = None) -> List[int]:
    """Factor complexity: number of admissible words for each length 1..max_length"""
    top = lang.depth if max_length is None else max_length
    return [lang.count(n) for n in range(1, top + 1)]
