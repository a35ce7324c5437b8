"""Reduced banned words of the overlapping two-map IFS on the line.

The system is f1(x) = rho*x, f2(x) = rho*x + (1 - rho) with 1/2 <= rho < 1,
acting on [0, 1].  A word alpha over {1, 2} is *banned* when the right
endpoint of f_alpha([0, 1]) lies at or below the overlap point rho, i.e.
endpoint(alpha) = f_alpha(1) <= rho; it is *reduced* when no proper factor
starting with 2 is itself banned.  Reduced banned words are exactly the
factors that addresses of the top must avoid, so enumerating them decides
whether the top shift is of finite type.

Everything here is exact: rho may be any rational or real algebraic number,
and all endpoint comparisons go through `exactnum`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import ExactReal, IntPoly
from .symbolic import Word, format_word, is_factor

__all__ = [
    "RbwEntry",
    "RbwReport",
    "alpha_poly",
    "check_rho",
    "conjecture_scan",
    "endpoint",
    "enumerate_rbw",
    "first_rbw_length",
    "is_reduced_banned",
    "pattern_scan",
]

_HALF = Fraction(1, 2)


def check_rho(value) -> ExactReal:
    """Validate a contraction ratio and return it as an ``ExactReal``.

    Accepts an ``ExactReal``, ``Fraction``, ``int``, or a string such as
    ``"2/3"``.  Raises ``ValueError`` unless 1/2 <= rho < 1 holds exactly.
    """
    if isinstance(value, ExactReal):
        rho = value
    else:
        rho = ExactReal(value)
    if not (_HALF <= rho < 1):
        raise ValueError(
            f"contraction ratio must satisfy 1/2 <= rho < 1, got {rho}"
        )
    return rho


def _check_word(word: Word) -> Word:
    word = tuple(word)
    if not word:
        raise ValueError("word must be nonempty")
    for c in word:
        if c not in (1, 2):
            raise ValueError(f"word symbols must be 1 or 2, got {c!r}")
    return word


def alpha_poly(word: Word) -> IntPoly:
    """The polynomial alpha(x) = sum_i (alpha_i - 1) x^(i-1).

    Evaluated at rho it gives the offset of the composite map:
    f_word(x) = rho^n * x + (1 - rho) * alpha(rho).
    """
    word = _check_word(word)
    return IntPoly([c - 1 for c in word])


def _raw_rho(rho: ExactReal):
    """Fast-path representation: plain Fraction when rational."""
    return rho.as_fraction() if rho.is_rational else rho


def endpoint(word: Word, rho) -> ExactReal:
    """Right endpoint of f_word([0, 1]): rho^n + (1 - rho) * alpha(rho)."""
    word = _check_word(word)
    rho = check_rho(rho)
    r = _raw_rho(rho)
    value = r ** len(word) + (1 - r) * alpha_poly(word)(r)
    return value if isinstance(value, ExactReal) else ExactReal(value)


def _proper_two_factors(word: Word):
    """All proper factors starting with 2, shortest first, then leftmost."""
    n = len(word)
    for length in range(1, n):
        for start in range(0, n - length + 1):
            if word[start] == 2:
                yield word[start : start + length]


def is_reduced_banned(word: Word, rho) -> tuple[bool, str | None, Word | None]:
    """Decide whether ``word`` is a reduced banned word at ratio ``rho``.

    Returns ``(verdict, failed_condition, witness)`` where the conditions are

    * ``"A.1"`` — the word must start with symbol 2;
    * ``"A.2"`` — endpoint(word) <= rho must hold exactly;
    * ``"A.3"`` — every proper factor starting with 2 must have endpoint
      strictly above rho (witness: the shortest, leftmost violating factor).

    Requires 1/2 < rho strictly; at rho = 1/2 the system is just touching and
    no word is banned, so the question is rejected rather than answered.
    """
    word = _check_word(word)
    rho = check_rho(rho)
    if rho == _HALF:
        raise ValueError("no banned words exist at rho = 1/2 (just touching)")
    if word[0] != 2:
        return False, "A.1", None
    if not (endpoint(word, rho) <= rho):
        return False, "A.2", None
    for factor in _proper_two_factors(word):
        if endpoint(factor, rho) <= rho:
            return False, "A.3", factor
    return True, None, None


def first_rbw_length(rho, cap: int = 64) -> int:
    """Least n with rho^n + 1 - 2*rho <= 0.

    This is the length of the shortest banned word 21...1 (and hence of the
    first reduced banned word).  Raises ``ValueError`` when rho = 1/2 (no
    banned words) or when no such n <= cap exists, which only happens for
    rho extremely close to 1/2 relative to ``cap``.
    """
    rho = check_rho(rho)
    if rho == _HALF:
        raise ValueError("no banned words exist at rho = 1/2 (just touching)")
    if cap < 3:
        raise ValueError("cap must be at least 3")
    r = _raw_rho(rho)
    bound = 2 * r - 1
    power = r * r
    for n in range(3, cap + 1):
        power = power * r
        if power <= bound:
            return n
    raise ValueError(f"no banned word of length <= {cap}; rho too close to 1/2")


@dataclass(frozen=True)
class RbwEntry:
    """One reduced banned word with its exact endpoint value."""

    word: Word
    endpoint: ExactReal
    equality: bool  # endpoint == rho exactly

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "endpoint": self.endpoint.to_json(),
            "equality": self.equality,
        }


@dataclass
class RbwReport:
    """Result of enumerating reduced banned words up to a length bound."""

    rho: ExactReal
    max_len: int
    entries: list[RbwEntry]
    finite_type_sufficient: bool
    truncated: bool
    lemma_checks: dict[str, bool]
    conjecture_status: dict
    patterns: list[dict]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rho": self.rho.to_json(),
            "max_len": self.max_len,
            "entries": [e.to_json() for e in self.entries],
            "finite_type_sufficient": self.finite_type_sufficient,
            "truncated": self.truncated,
            "lemma_checks": dict(self.lemma_checks),
            "conjecture_status": dict(self.conjecture_status),
            "pattern_scan": [dict(p) for p in self.patterns],
            "notes": list(self.notes),
        }


def _search(r, max_len: int) -> tuple[list[tuple[Word, object, bool]], bool]:
    """Depth-first enumeration of reduced banned words of length <= max_len.

    ``r`` is the ratio as a Fraction or ExactReal.  For the current word we
    keep, for every suffix starting with 2, the pair (scale, endpoint) of the
    composite map of that suffix; extending the word by symbol c updates each
    endpoint via f_{beta c}(1) = f_beta(f_c(1)) with f_1(1) = rho, f_2(1) = 1,
    so (s, e) becomes (s*r, e - s*(1 - r)) for c = 1 and (s*r, e) for c = 2.

    A branch dies as soon as any proper suffix endpoint drops to <= rho:
    every extension would contain that banned factor.  When the full word's
    endpoint drops to <= rho (with all proper suffixes still above), it is
    recorded and the branch stops.  An exact hit endpoint == rho caps the
    remaining search at that length: no longer reduced banned word can exist,
    which is what "finite type sufficient" reports.
    """
    one_minus = 1 - r
    found: list[tuple[Word, object, bool]] = []
    # effective length bound; shrinks when an equality entry appears
    eff = [max_len]
    hit_equality = [False]

    def extend(word: Word, states: list) -> None:
        if len(word) >= eff[0]:
            return
        for c in (1, 2):
            if c == 1:
                new_states = [(s * r, e - s * one_minus) for s, e in states]
            else:
                new_states = [(s * r, e) for s, e in states]
                new_states.append((r, 1))
            # proper factors first: any banned suffix kills the branch
            if any(e <= r for _, e in new_states[1:]):
                continue
            grown = word + (c,)
            e0 = new_states[0][1]
            if e0 <= r:
                eq = e0 == r
                found.append((grown, e0, eq))
                if eq:
                    hit_equality[0] = True
                    if len(grown) < eff[0]:
                        eff[0] = len(grown)
                continue
            extend(grown, new_states)

    if max_len >= 1:
        extend((2,), [(r, 1)])
    return found, hit_equality[0]


def _lemma_checks(
    rho: ExactReal,
    max_len: int,
    entries: list[RbwEntry],
    finite_type_sufficient: bool,
    notes: list[str],
) -> dict[str, bool]:
    checks: dict[str, bool] = {}

    strict_entries = [e for e in entries if not e.equality]
    checks["ends_with_1"] = all(e.word[-1] == 1 for e in strict_entries)
    for e in entries:
        if e.equality and e.word[-1] == 2:
            notes.append(
                f"equality-boundary entry {format_word(e.word)} ends in 2; "
                "the ends-with-1 rule only covers strict entries"
            )

    if entries:
        m = len(entries[0].word)
        xi = (2,) + (1,) * (m - 1)
        checks["first_is_xi"] = (
            entries[0].word == xi and m == first_rbw_length(rho, cap=max_len)
        )
    else:
        checks["first_is_xi"] = True

    lengths = [len(e.word) for e in entries]
    checks["unique_lengths"] = len(set(lengths)) == len(lengths)

    checks["increasing_endpoints"] = all(
        entries[i].endpoint < entries[i + 1].endpoint
        for i in range(len(entries) - 1)
    )

    if len(entries) >= 2 and entries[0].endpoint < rho:
        m = len(entries[0].word)
        head = (2,) + (1,) * (m - 2) + (2,)
        checks["second_prefix"] = entries[1].word[:m] == head
    else:
        checks["second_prefix"] = True

    equality_positions = [i for i, e in enumerate(entries) if e.equality]
    if equality_positions:
        checks["equality_terminates"] = (
            equality_positions == [len(entries) - 1] and finite_type_sufficient
        )
    else:
        checks["equality_terminates"] = not finite_type_sufficient

    return checks


def conjecture_scan(entries: list[RbwEntry]) -> dict:
    """Check that gamma^i gamma^i contains no alpha^j (j <= i) as a factor.

    Here alpha^i is the i-th entry and gamma^i is alpha^i with its last
    symbol removed.  Returns the first counterexample found, scanning i in
    order and j ascending, or reports that the property holds for the list.
    """
    for i, entry in enumerate(entries, start=1):
        gamma = entry.word[:-1]
        doubled = gamma + gamma
        for j in range(1, i + 1):
            other = entries[j - 1].word
            if is_factor(other, doubled):
                return {
                    "holds_up_to_max_len": False,
                    "counterexample": {
                        "i": i,
                        "j": j,
                        "factor": format_word(other),
                        "doubled": format_word(doubled),
                    },
                }
    return {"holds_up_to_max_len": True, "counterexample": None}


def pattern_scan(entries: list[RbwEntry]) -> list[dict]:
    """Decompose each entry after the first against its predecessor.

    For i > 1 the scan reports whether alpha^i equals (gamma^(i-1))^j, a pure
    power, or (gamma^(i-1))^j followed by a prefix of gamma^(i-1) of length k
    with 1 < k < |gamma^(i-1)| - 1, where gamma^(i-1) is the previous entry
    with its last symbol removed.  Entries that fit neither shape are marked
    "broken".
    """
    results: list[dict] = []
    for i in range(2, len(entries) + 1):
        word = entries[i - 1].word
        gamma = entries[i - 2].word[:-1]
        g = len(gamma)
        verdict: dict = {
            "i": i,
            "word": format_word(word),
            "pattern": "broken",
            "j": None,
            "k": None,
        }
        if g > 0:
            j = 1
            while j * g <= len(word):
                k = len(word) - j * g
                if (k == 0 or 1 < k < g - 1) and word == gamma * j + gamma[:k]:
                    verdict["pattern"] = "power" if k == 0 else "power_prefix"
                    verdict["j"] = j
                    verdict["k"] = None if k == 0 else k
                    break
                j += 1
        results.append(verdict)
    return results


def enumerate_rbw(rho, max_len: int) -> RbwReport:
    """Enumerate all reduced banned words of length <= max_len, with checks.

    The report carries the sorted entries, whether an exact endpoint == rho
    hit certifies that the list is complete (finite type), whether the search
    was merely truncated at ``max_len``, the structural lemma checks, and the
    conjecture and pattern scans over the resulting list.
    """
    rho = check_rho(rho)
    if max_len < 1:
        raise ValueError("max_len must be at least 1")

    notes: list[str] = []
    if rho == _HALF:
        entries: list[RbwEntry] = []
        notes.append(
            "rho = 1/2: the two maps are just touching, no word is banned; "
            "the empty list is complete"
        )
        lemma = _lemma_checks(rho, max_len, entries, False, notes)
        return RbwReport(
            rho=rho,
            max_len=max_len,
            entries=entries,
            finite_type_sufficient=False,
            truncated=False,
            lemma_checks=lemma,
            conjecture_status=conjecture_scan(entries),
            patterns=pattern_scan(entries),
            notes=notes,
        )

    raw, hit_equality = _search(_raw_rho(rho), max_len)
    raw.sort(key=lambda t: (len(t[0]), t[0]))
    entries = [
        RbwEntry(
            word=w,
            endpoint=e if isinstance(e, ExactReal) else ExactReal(e),
            equality=eq,
        )
        for w, e, eq in raw
    ]
    if hit_equality:
        notes.append(
            "an entry meets rho exactly; no longer reduced banned word can "
            "exist, so the list is complete and the shift is of finite type"
        )
    lemma = _lemma_checks(rho, max_len, entries, hit_equality, notes)
    return RbwReport(
        rho=rho,
        max_len=max_len,
        entries=entries,
        finite_type_sufficient=hit_equality,
        truncated=not hit_equality,
        lemma_checks=lemma,
        conjecture_status=conjecture_scan(entries),
        patterns=pattern_scan(entries),
        notes=notes,
    )
