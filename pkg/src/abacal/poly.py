"""Objects of the abacus category: monomials and polynomials over one generator N.

A monomial N^k is stored as its power ``k`` (a plain ``int``); ``0`` is the
multiplicative unit I.  A polynomial is an ordered sequence of monomials; the
empty sequence is the additive unit 0.  No normal form is ever applied, so
equality is sequence equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Monomial = int


def check_monomial(u: int) -> int:
    if not isinstance(u, int) or isinstance(u, bool) or u < 0:
        raise ValueError(f"monomial power must be a natural number, got {u!r}")
    return u


def mono_tensor(u: Monomial, v: Monomial) -> Monomial:
    return check_monomial(u) + check_monomial(v)


@dataclass(frozen=True, slots=True)
class Polynomial:
    summands: tuple[int, ...] = ()

    def __post_init__(self):
        s = tuple(self.summands)
        for u in s:
            check_monomial(u)
        object.__setattr__(self, "summands", s)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[int]:
        return iter(self.summands)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Polynomial(self.summands[i])
        return self.summands[i]

    def __add__(self, other: Polynomial) -> Polynomial:
        return poly_add(self, other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        return poly_mul(self, other)

    def __repr__(self) -> str:
        return f"poly{list(self.summands)}"

    def endswith(self, suffix: Polynomial) -> bool:
        n = len(suffix.summands)
        return n == 0 or self.summands[-n:] == suffix.summands

    def num_states(self, max_counter: int) -> int:
        """Number of machine states with every counter at most ``max_counter``."""
        return sum((max_counter + 1) ** k for k in self.summands)


def poly(*powers: int) -> Polynomial:
    return Polynomial(tuple(powers))


def as_poly(p: Polynomial | Iterable[int]) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(tuple(p))


ZERO = Polynomial(())
UNIT = Polynomial((0,))
N = Polynomial((1,))


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial(p.summands + q.summands)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    # row-major: summand (i, j) of the product sits at i * len(q) + j
    return Polynomial(tuple(u + v for u in p.summands for v in q.summands))
