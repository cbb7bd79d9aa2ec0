"""Symbolic service-time entries for transition matrices.

A matrix entry is rendered as a (+)-combination of (x)-products of the
per-node service-time symbols t1, t2, ...  Internally an entry is a set
of monomials, each monomial a sorted tuple of 1-based node ids (with
multiplicity).  Two simplifications keep entries canonical:

* idempotency: duplicate monomials collapse (x (+) x = x);
* positivity domination: since every service time is strictly positive,
  a monomial whose multiset of factors is contained in another monomial
  of the same entry is redundant (t2 (+) t2*t3 = t2*t3) and is dropped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .semiring import EPS


def _dominated(m1, m2) -> bool:
    """True if monomial m1 <= m2 is forced by positivity (m1 != m2)."""
    if m1 == m2 or len(m1) > len(m2):
        return False
    c1, c2 = Counter(m1), Counter(m2)
    return all(c2[k] >= c for k, c in c1.items())


def _canonical(monomials) -> frozenset:
    terms = set(monomials)
    return frozenset(m for m in terms
                     if not any(_dominated(m, other) for other in terms))


@dataclass(frozen=True)
class Poly:
    """A finite entry of a symbolic max-plus matrix."""

    terms: frozenset

    @staticmethod
    def one() -> "Poly":
        """The empty product, i.e. the max-plus identity 0."""
        return Poly(frozenset({()}))

    @staticmethod
    def var(i: int) -> "Poly":
        """The service-time symbol of node i (1-based)."""
        return Poly(frozenset({(i,)}))

    def join(self, other: "Poly") -> "Poly":
        return Poly(_canonical(self.terms | other.terms))

    def times(self, other: "Poly") -> "Poly":
        prods = {tuple(sorted(a + b)) for a in self.terms for b in other.terms}
        return Poly(_canonical(prods))

    def evaluate(self, tau):
        """Numeric value at a service-time assignment {node id: tau_i}."""
        return max(sum(tau[i] for i in m) for m in self.terms)

    def render(self) -> str:
        parts = ["*".join(f"t{i}" for i in m) if m else "0"
                 for m in sorted(self.terms, key=lambda m: (len(m), m))]
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.render()})"


def poly_dominates(lo: Poly, hi: Poly) -> bool:
    """True if every monomial of ``lo`` is bounded by one of ``hi``.

    Under strictly positive service times this guarantees lo <= hi
    pointwise (equal monomials count as bounded).
    """
    return all(any(_covers(m1, m2) for m2 in hi.terms) for m1 in lo.terms)


def _covers(m1, m2) -> bool:
    return m1 == m2 or _dominated(m1, m2)


def render_entry(x) -> str:
    return "eps" if x is EPS else x.render()
