# braid.py - Positive braid words in the generators σ_1..σ_n of B_{n+1}
# A word is read left to right; its image in S_{n+1} is the product of the
# transpositions s_i = (i, i+1) in the same order.

from __future__ import annotations

from dataclasses import dataclass

from twistbench.errors import PreconditionError


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise PreconditionError(f"strand parameter must be >= 1, got {self.n!r}")
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        bad = [i for i in self.letters if not 1 <= i <= self.n]
        if bad:
            raise PreconditionError(f"letters {bad} out of range 1..{self.n}")

    @classmethod
    def parse(cls, n: int, text: str) -> BraidWord:
        """"1,2,1" -> (1, 2, 1); the empty string is the empty word."""
        parts = [t.strip() for t in text.split(",") if t.strip()]
        try:
            letters = tuple(int(t) for t in parts)
        except ValueError as exc:
            raise PreconditionError(f"cannot parse braid word {text!r}") from exc
        return cls(n, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise PreconditionError("cannot concatenate words of different braid groups")
        return BraidWord(self.n, self.letters + other.letters)

    def __str__(self) -> str:
        return ",".join(map(str, self.letters)) or "()"


def longest_word(n: int) -> BraidWord:
    """w₀ for B_{n+1}: w₀(n) = w₀(n-1) followed by n, n-1, ..., 1."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"n must be >= 1, got {n!r}")
    letters: list[int] = []
    for m in range(1, n + 1):
        letters.extend(range(m, 0, -1))
    return BraidWord(n, tuple(letters))


def word_permutation(w: BraidWord) -> tuple[int, ...]:
    """One-line notation of the image of w in S_{n+1}."""
    perm = list(range(1, w.n + 2))
    for i in w:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def is_longest(w: BraidWord) -> bool:
    """Reduced expression of the longest element of S_{n+1}."""
    n = w.n
    return len(w) == n * (n + 1) // 2 and word_permutation(w) == tuple(range(n + 1, 0, -1))
