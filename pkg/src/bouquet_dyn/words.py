"""Word algebra for self-maps of a bouquet of n circles.

A map is described by where it sends each petal generator: generator j
goes to a word ``A_j`` over the letters ``a1..an`` and their inverses.
Words must be sign-homogeneous (all plain letters or all inverses), which
models maps that are monotone on every petal.  Letters serialize as
``a3`` and ``a3'`` (apostrophe marks the inverse).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetError, InputError

#: branch class of a map whose branching point is never periodic
BRANCH_FREE = math.inf

_LETTER_RE = re.compile(r"^a([1-9][0-9]*)('?)$")


@dataclass(frozen=True)
class Letter:
    """One generator symbol: ``a<index>`` or its inverse ``a<index>'``."""

    index: int
    sign: int

    def __post_init__(self):
        if self.index < 1:
            raise InputError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise InputError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def token(self) -> str:
        return f"a{self.index}" + ("'" if self.sign < 0 else "")

    @staticmethod
    def parse(tok: str) -> "Letter":
        m = _LETTER_RE.match(tok)
        if not m:
            raise InputError(f"bad letter token {tok!r} (expected e.g. a2 or a2')")
        return Letter(int(m.group(1)), -1 if m.group(2) else 1)


@dataclass(frozen=True)
class Word:
    """A nonempty, sign-homogeneous sequence of letters."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        if not self.letters:
            raise InputError("empty words are not allowed")
        signs = {l.sign for l in self.letters}
        if len(signs) > 1:
            raise InputError(
                "word mixes plain and inverse letters: " + self.text()
            )

    @property
    def sign(self) -> int:
        return self.letters[0].sign

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def max_index(self) -> int:
        return max(l.index for l in self.letters)

    def text(self) -> str:
        return " ".join(l.token() for l in self.letters)

    @staticmethod
    def parse(text: str) -> "Word":
        toks = text.split()
        if not toks:
            raise InputError("empty word")
        return Word(tuple(Letter.parse(t) for t in toks))


def word(text: str) -> Word:
    """Shorthand: ``word("a1 a2'")``."""
    return Word.parse(text)


@dataclass(frozen=True)
class MapAction:
    """A bouquet self-map given by its petal images and branch-orbit class.

    ``images[j-1]`` is the image word of generator j.  All image words must
    share one global sign (the map is orientation preserving or reversing
    as a whole).  ``branch_class`` is the least period k of the branching
    point, or ``BRANCH_FREE`` if the branching point is never periodic; it
    is user metadata — the words alone cannot determine it.
    """

    n: int
    images: tuple[Word, ...]
    branch_class: float = BRANCH_FREE

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"need at least one circle, got n={self.n}")
        if len(self.images) != self.n:
            raise InputError(
                f"expected {self.n} image words, got {len(self.images)}"
            )
        for j, w in enumerate(self.images, start=1):
            if w.max_index() > self.n:
                raise InputError(
                    f"image of a{j} uses generator a{w.max_index()} "
                    f"but n={self.n}"
                )
        signs = {w.sign for w in self.images}
        if len(signs) > 1:
            raise InputError(
                "image words disagree on orientation: all words must be "
                "plain or all inverse"
            )
        k = self.branch_class
        if k != BRANCH_FREE and (not isinstance(k, int) or k < 1):
            raise InputError(f"branch class must be a positive integer or free, got {k!r}")

    @property
    def global_sign(self) -> int:
        return self.images[0].sign

    def image(self, j: int) -> Word:
        if not 1 <= j <= self.n:
            raise InputError(f"generator index {j} out of range 1..{self.n}")
        return self.images[j - 1]

    @staticmethod
    def from_texts(texts: Sequence[str], branch_class: float = BRANCH_FREE) -> "MapAction":
        ws = tuple(Word.parse(t) for t in texts)
        return MapAction(len(ws), ws, branch_class)


def action(*texts: str, k: float = BRANCH_FREE) -> MapAction:
    """Shorthand: ``action("a1 a3", "a1", "a1 a3", k=1)``."""
    return MapAction.from_texts(texts, k)


# ---------------------------------------------------------------------------
# counting functions

def chi(w: Word, j: int) -> int:
    """Signed number of occurrences of generator j anywhere in w."""
    if j < 1:
        raise InputError(f"generator index {j} out of range")
    return sum(l.sign for l in w if l.index == j)


def gamma(w: Word, j: int) -> int:
    """Signed occurrence count of generator j at strictly interior positions."""
    if j < 1:
        raise InputError(f"generator index {j} out of range")
    return sum(l.sign for l in w.letters[1:-1] if l.index == j)


# ---------------------------------------------------------------------------
# the induced endomorphism

def apply_endo(f: MapAction, w: Word) -> Word:
    """Image of w under the endomorphism induced by f.

    Each plain letter aj is replaced by its image word, each inverse
    letter by the reversed sign-flipped image word; pieces concatenate in
    order.  Allowed words never cancel, so no reduction is needed.
    """
    out: list[Letter] = []
    for l in w:
        img = f.image(l.index)
        if l.sign > 0:
            out.extend(img.letters)
        else:
            out.extend(img.inverse().letters)
    return Word(tuple(out))


def iterate_action(f: MapAction, m: int, budget: int = 10**6) -> MapAction:
    """The action of the m-th iterate, with image words fully expanded.

    Raises BudgetError (naming the smallest offending iterate) if the
    expanded words would exceed ``budget`` letters in total.  Large-m
    counting should go through chi_of_iterate / gamma_of_iterate instead.
    """
    if m < 1:
        raise InputError(f"iterate must be >= 1, got {m}")
    words = f.images
    for step in range(2, m + 1):
        words = tuple(apply_endo(f, w) for w in words)
        total = sum(len(w) for w in words)
        if total > budget:
            raise BudgetError(
                f"expanded words of iterate {step} need {total} letters "
                f"(budget {budget})",
                smallest_m=step,
            )
    return MapAction(f.n, words, f.branch_class)


def _abelian_matrix(f: MapAction) -> list[list[int]]:
    # entry (i, j) counts generator i in the image of generator j
    return [[chi(f.image(j), i) for j in range(1, f.n + 1)]
            for i in range(1, f.n + 1)]


def _column_of_power(f: MapAction, m: int, j: int) -> list[int]:
    """Column j of the m-th power of the occurrence-count matrix."""
    mat = _abelian_matrix(f)
    v = [0] * f.n
    v[j - 1] = 1
    for _ in range(m):
        v = [sum(mat[i][k] * v[k] for k in range(f.n)) for i in range(f.n)]
    return v


def chi_of_iterate(f: MapAction, m: int, j: int) -> int:
    """chi_j of the m-th iterate image of generator j, without expansion.

    Valid because allowed words admit no cancellation: occurrence counts
    compose linearly, so the answer is an entry of an exact integer matrix
    power.
    """
    if m < 1:
        raise InputError(f"iterate must be >= 1, got {m}")
    if not 1 <= j <= f.n:
        raise InputError(f"generator index {j} out of range 1..{f.n}")
    return _column_of_power(f, m, j)[j - 1]


def boundary_letters(f: MapAction, m: int, j: int) -> tuple[Letter, Letter]:
    """First and last letter of the m-th iterate image of generator j.

    Tracked by an O(m) recursion: the first letter of f(w) is the first
    letter of the image of w's first letter (with reversal under inverse
    letters), and symmetrically for the last letter.
    """
    first = Letter(j, 1)
    last = Letter(j, 1)
    for _ in range(m):
        if first.sign > 0:
            first = f.image(first.index).letters[0]
        else:
            first = f.image(first.index).letters[-1].inverse()
        if last.sign > 0:
            last = f.image(last.index).letters[-1]
        else:
            last = f.image(last.index).letters[0].inverse()
    return first, last


def gamma_of_iterate(f: MapAction, m: int, j: int) -> int:
    """gamma_j of the m-th iterate image of generator j, without expansion.

    Computed as chi minus the signed boundary contributions of the first
    and last letters.
    """
    if m < 1:
        raise InputError(f"iterate must be >= 1, got {m}")
    if not 1 <= j <= f.n:
        raise InputError(f"generator index {j} out of range 1..{f.n}")
    col = _column_of_power(f, m, j)
    length = sum(abs(c) for c in col)
    if length <= 1:
        return 0
    out = col[j - 1]
    sign = f.global_sign if m % 2 == 1 else 1
    first, last = boundary_letters(f, m, j)
    if first.index == j:
        out -= sign
    if last.index == j:
        out -= sign
    return out


# ---------------------------------------------------------------------------
# orientation

def orientation(f: MapAction) -> str:
    """'preserving' or 'reversing', read off the global word sign."""
    return "preserving" if f.global_sign > 0 else "reversing"


def orientation_of_power(f: MapAction, m: int) -> str:
    """Orientation of the m-th iterate (a reversing map squares to preserving)."""
    if f.global_sign > 0 or m % 2 == 0:
        return "preserving"
    return "reversing"
