"""Words over the alphabet {1, 2}, substitutions, and incidence matrices.

Words are plain Python strings over the characters '1' and '2'; letters are
one-character strings.  All matrix and counting arithmetic is exact (Python
integers), so products over hundreds of substitutions never overflow or
round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ALPHABET = ("1", "2")

Vec2 = tuple  # (int, int) pairs; abelianizations and lattice points

_SUB_PART = re.compile(r"\s*([12])\s*->\s*([12]+)\s*$")


def check_word(word: str) -> str:
    """Validate that ``word`` only uses the letters '1' and '2'."""
    if word.strip("12"):
        bad = word.strip("12")[0]
        raise ValueError(f"invalid letter {bad!r} in word")
    return word


def abelianize(word: str) -> tuple[int, int]:
    """Letter-count vector (|w|_1, |w|_2) of a word."""
    ones = word.count("1")
    return (ones, len(word) - ones)


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix [[a, b], [c, d]] with exact arithmetic."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative matrix power")
        result = Mat2.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_vec(self, v: tuple) -> tuple:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def is_positive(self) -> bool:
        return self.a > 0 and self.b > 0 and self.c > 0 and self.d > 0

    def is_nonnegative(self) -> bool:
        return self.a >= 0 and self.b >= 0 and self.c >= 0 and self.d >= 0

    def column(self, j: int) -> tuple:
        if j == 1:
            return (self.a, self.c)
        if j == 2:
            return (self.b, self.d)
        raise ValueError("column index must be 1 or 2")

    def rows(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class Substitution:
    """A morphism of the free monoid on {1, 2} with non-empty letter images."""

    image1: str
    image2: str

    def __post_init__(self):
        for img in (self.image1, self.image2):
            if not img:
                raise ValueError("substitution images must be non-empty")
            check_word(img)

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        """Parse the text format ``1->12, 2->1`` (whitespace-insensitive)."""
        images: dict[str, str] = {}
        for part in text.split(","):
            m = _SUB_PART.match(part)
            if m is None:
                raise ValueError(f"cannot parse substitution rule {part.strip()!r}")
            letter, image = m.group(1), m.group(2)
            if letter in images:
                raise ValueError(f"duplicate rule for letter {letter}")
            images[letter] = image
        if set(images) != {"1", "2"}:
            raise ValueError("a substitution needs exactly the rules 1->... and 2->...")
        return cls(images["1"], images["2"])

    @classmethod
    def identity(cls) -> "Substitution":
        return cls("1", "2")

    def image(self, letter: str) -> str:
        if letter == "1":
            return self.image1
        if letter == "2":
            return self.image2
        raise ValueError(f"invalid letter {letter!r}")

    def apply(self, word: str) -> str:
        """Image of a word: images concatenated letterwise."""
        img1, img2 = self.image1, self.image2
        return "".join(img1 if ch == "1" else img2 for ch in word)

    def incidence(self) -> Mat2:
        """Incidence matrix; column j is the abelianization of the image of j."""
        c1 = abelianize(self.image1)
        c2 = abelianize(self.image2)
        return Mat2(c1[0], c2[0], c1[1], c2[1])

    def compose(self, inner: "Substitution") -> "Substitution":
        """(self o inner): first apply ``inner``, then ``self``."""
        return Substitution(self.apply(inner.image1), self.apply(inner.image2))

    def __mul__(self, inner: "Substitution") -> "Substitution":
        return self.compose(inner)

    def is_unimodular(self) -> bool:
        return abs(self.incidence().det()) == 1

    def __str__(self) -> str:
        return f"1->{self.image1}, 2->{self.image2}"
