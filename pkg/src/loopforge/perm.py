"""Permutations of {0, ..., n-1} written on the right: x goes to images[x].

Composition reads left to right, matching the application order: the image
of x under compose(p, q) is the image under q of the image under p.
"""

from __future__ import annotations

from typing import Iterable

from .errors import DegreeMismatch


class Perm:
    """An immutable permutation stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if not imgs or sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs!r}")
        self.images = imgs

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Perm({list(self.images)!r})"


def identity(n: int) -> Perm:
    return Perm(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """The permutation sending x to the q-image of the p-image of x."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degree {p.degree} composed with degree {q.degree}")
    qi = q.images
    return Perm(qi[v] for v in p.images)


def inverse(p: Perm) -> Perm:
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Perm(inv)


def format_perm(p: Perm) -> str:
    """Comma-separated image list, e.g. "1,2,0"."""
    return ",".join(str(v) for v in p.images)


def parse_perm(text: str) -> Perm:
    try:
        return Perm(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad permutation text {text!r}: {exc}") from None
