"""Symbolic dynamics over finite alphabets.

Finite words are tuples of positive integer symbols.  Infinite strings
are restricted to the eventually periodic ones, stored in a canonical
preperiod/period form so that structural equality coincides with
equality of the infinite sequences.  Shift spaces are described by
finite sets of banned words.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

Word = tuple[int, ...]


class EmptySpaceError(ValueError):
    """Raised when a shift space constrained by banned words is empty."""


# ---------------------------------------------------------------------------
# Finite words.
# ---------------------------------------------------------------------------


def parse_word(text: str) -> Word:
    """Parse a word: a digit string like "212" for symbols up to 9, or a
    comma-separated list like "10,2,3" otherwise.  "" is the empty word."""
    text = text.strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        symbols = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"malformed word {text!r}") from exc
    _check_symbols(symbols)
    return symbols


def format_word(word: Sequence[int]) -> str:
    word = tuple(word)
    if any(s > 9 for s in word):
        return ",".join(str(s) for s in word)
    return "".join(str(s) for s in word)


def _check_symbols(symbols: Iterable[int]) -> None:
    for s in symbols:
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise ValueError(f"symbols must be positive integers, got {s!r}")


def is_factor(factor: Sequence[int], word: Sequence[int]) -> bool:
    """True iff ``factor`` occurs as a contiguous block of ``word``."""
    f, w = tuple(factor), tuple(word)
    if not f:
        return True
    return any(w[i : i + len(f)] == f for i in range(len(w) - len(f) + 1))


def word_order(w: Sequence[int], v: Sequence[int]) -> Optional[int]:
    """The partial order in which w < v means every continuation of w
    stays below every continuation of v.

    Returns -1, 0 or 1 when comparable and None when one word is a proper
    prefix of the other (continuations can then fall on either side).
    """
    w, v = tuple(w), tuple(v)
    if w == v:
        return 0
    for a, b in zip(w, v):
        if a != b:
            return -1 if a < b else 1
    return None


# ---------------------------------------------------------------------------
# Eventually periodic strings.
# ---------------------------------------------------------------------------


class EventuallyPeriodicString:
    """An infinite string pre . per per per ... in canonical form.

    Canonical means the period is primitive (not a power of a shorter
    word) and the preperiod is as short as possible; two instances are
    equal as objects exactly when they are equal as infinite strings.
    """

    __slots__ = ("pre", "per")

    def __init__(self, pre: Iterable[int], per: Iterable[int]):
        pre, per = tuple(pre), tuple(per)
        _check_symbols(pre)
        _check_symbols(per)
        if not per:
            raise ValueError("the period must be nonempty")
        # primitive period
        n = len(per)
        for d in range(1, n + 1):
            if n % d == 0 and per[:d] * (n // d) == per:
                per = per[:d]
                break
        # pull the period start as far left as it goes
        while pre and pre[-1] == per[-1]:
            per = (per[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    def __setattr__(self, name, value):
        raise AttributeError("EventuallyPeriodicString is immutable")

    def __reduce__(self):
        return (EventuallyPeriodicString, (self.pre, self.per))

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicString":
        """Parse the "pre(per)" form, e.g. "3(1)" or "(12)"."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise ValueError(f"expected 'pre(per)', got {text!r}")
        head, _, tail = text[:-1].partition("(")
        return cls(parse_word(head.rstrip(",")), parse_word(tail))

    def symbol(self, i: int) -> int:
        """The symbol at 0-based position i."""
        if i < 0:
            raise IndexError("negative position")
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> Word:
        return tuple(self.symbol(i) for i in range(n))

    def shift(self) -> "EventuallyPeriodicString":
        """Drop the first symbol."""
        if self.pre:
            return EventuallyPeriodicString(self.pre[1:], self.per)
        return EventuallyPeriodicString((), self.per[1:] + self.per[:1])

    def __eq__(self, other):
        if not isinstance(other, EventuallyPeriodicString):
            return NotImplemented
        return self.pre == other.pre and self.per == other.per

    def __hash__(self):
        return hash((self.pre, self.per))

    def __str__(self):
        return f"{format_word(self.pre)}({format_word(self.per)})"

    def __repr__(self):
        return f"EventuallyPeriodicString({self.pre!r}, {self.per!r})"


def eps(pre: str | Sequence[int], per: str | Sequence[int]) -> EventuallyPeriodicString:
    """Convenience constructor accepting words or their string forms."""
    if isinstance(pre, str):
        pre = parse_word(pre)
    if isinstance(per, str):
        per = parse_word(per)
    return EventuallyPeriodicString(pre, per)


def first_difference(
    x: EventuallyPeriodicString, y: EventuallyPeriodicString
) -> Optional[int]:
    """The least 0-based position where x and y differ, or None if equal.

    Scanning max preperiod length plus the lcm of the period lengths is
    enough: past the preperiods both strings repeat with that lcm, so
    agreement on one full window propagates forever.
    """
    bound = max(len(x.pre), len(y.pre)) + lcm(len(x.per), len(y.per))
    for i in range(bound):
        if x.symbol(i) != y.symbol(i):
            return i
    return None


def compare_lex(x: EventuallyPeriodicString, y: EventuallyPeriodicString) -> int:
    """Lexicographic three-way comparison of the infinite strings."""
    i = first_difference(x, y)
    if i is None:
        return 0
    return -1 if x.symbol(i) < y.symbol(i) else 1


def metric(x: EventuallyPeriodicString, y: EventuallyPeriodicString) -> Fraction:
    """The standard sequence metric 2**(-k), with k the 1-based position
    of the first disagreement; 0 for equal strings."""
    i = first_difference(x, y)
    if i is None:
        return Fraction(0)
    return Fraction(1, 2 ** (i + 1))


# ---------------------------------------------------------------------------
# Banned-word shift spaces.
# ---------------------------------------------------------------------------


def _checked_banned(banned: Iterable[Sequence[int]]) -> frozenset[Word]:
    out = set()
    for w in banned:
        w = tuple(w)
        if not w:
            raise ValueError("the empty word cannot be banned")
        _check_symbols(w)
        out.add(w)
    return frozenset(out)


def avoids(x: EventuallyPeriodicString, banned: Iterable[Sequence[int]]) -> bool:
    """True iff no banned word occurs as a factor of x, i.e. x belongs to
    the shift space defined by the banned set.

    Only a finite prefix needs checking: any occurrence beyond the
    preperiod recurs within one period of its first appearance.
    """
    bset = _checked_banned(banned)
    if not bset:
        return True
    maxlen = max(len(w) for w in bset)
    window = x.prefix(len(x.pre) + len(x.per) + maxlen - 1)
    return not any(is_factor(w, window) for w in bset)


def reduce_banned(banned: Iterable[Sequence[int]]) -> frozenset[Word]:
    """Drop banned words that contain a shorter banned word as a factor;
    the reduced set defines the same shift space."""
    bset = _checked_banned(banned)
    return frozenset(
        w
        for w in bset
        if not any(u != w and len(u) < len(w) and is_factor(u, w) for u in bset)
    )


def min_string(
    n_symbols: int,
    banned_pairs: Iterable[Sequence[int]],
    first_symbols: Optional[Iterable[int]] = None,
) -> EventuallyPeriodicString:
    """The lexicographically least string of the shift space over symbols
    1..n_symbols with the given banned length-2 words, optionally
    restricted to a set of allowed first symbols.

    Greedily takes the least symbol that still admits an infinite
    continuation; since symbols are the only state, the walk closes into
    a cycle within n_symbols steps.  Raises EmptySpaceError when nothing
    survives.
    """
    if n_symbols < 1:
        raise ValueError("need at least one symbol")
    bset = _checked_banned(banned_pairs)
    for w in bset:
        if len(w) != 2:
            raise ValueError(f"banned words must have length 2, got {w!r}")
        if max(w) > n_symbols:
            raise ValueError(f"banned word {w!r} uses symbols beyond {n_symbols}")
    succ = {
        a: {b for b in range(1, n_symbols + 1) if (a, b) not in bset}
        for a in range(1, n_symbols + 1)
    }
    alive = set(range(1, n_symbols + 1))
    changed = True
    while changed:
        changed = False
        for a in sorted(alive):
            if not (succ[a] & alive):
                alive.discard(a)
                changed = True
    if first_symbols is None:
        starts = alive
    else:
        starts = alive & set(first_symbols)
    if not starts:
        raise EmptySpaceError("no string satisfies the constraints")
    cur = min(starts)
    seq = [cur]
    seen = {cur: 0}
    while True:
        cur = min(succ[cur] & alive)
        if cur in seen:
            k = seen[cur]
            return EventuallyPeriodicString(seq[:k], seq[k:])
        seen[cur] = len(seq)
        seq.append(cur)
