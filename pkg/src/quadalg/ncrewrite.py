"""Bounded rewriting for noncommutative polynomials over {x, y, z}.

Polynomials are finite sums of words in the free algebra on up to three
letters with exact scalar coefficients.  A rewrite system holds rules whose
left sides are words of length two, oriented by a degree-lexicographic order
with a declared letter precedence; construction checks that every right-hand
monomial is strictly below the left side, so reduction terminates and never
raises the degree.

Reducing a polynomial to zero proves it lies in the two-sided ideal spanned
by the rules' differences, for any system.  Uniqueness of normal forms needs
confluence; confluence_smoke checks all length-three overlap ambiguities,
which for quadratic left sides is the complete local test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .scalar import Scalar, as_scalar

ALPHABET = "xyz"

Word = str


class NotOrientableError(ValueError):
    pass


class DegreeBoundError(ValueError):
    pass


def _check_word(w: Word) -> Word:
    for ch in w:
        if ch not in ALPHABET:
            raise ValueError(f"letter {ch!r} is outside the alphabet {ALPHABET}")
    return w


class NCPoly:
    """Immutable noncommutative polynomial: words mapped to nonzero scalars."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, object]] = None):
        clean: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c)
                if not c.is_zero():
                    clean[_check_word(w)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({"": 1})

    @classmethod
    def variable(cls, letter: str) -> "NCPoly":
        return cls({letter: 1})

    @classmethod
    def term(cls, word: Word, coeff=1) -> "NCPoly":
        return cls({word: coeff})

    def terms(self) -> Iterable[Tuple[Word, Scalar]]:
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, word: Word) -> Scalar:
        return self._terms.get(word, Scalar.zero())

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(len(w) for w in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            if w in out:
                out[w] = out[w] + c
            else:
                out[w] = c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = as_scalar(other)
            return NCPoly({w: c * s for w, c in self._terms.items()})
        if isinstance(other, NCPoly):
            out: Dict[Word, Scalar] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    if w in out:
                        out[w] = out[w] + c
                    else:
                        out[w] = c
            return NCPoly(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "NCPoly(0)"
        parts = [f"{c}*{w or '1'}" for w, c in sorted(self._terms.items())]
        return "NCPoly(" + " + ".join(parts) + ")"


def _as_poly(x) -> Union["NCPoly", type(NotImplemented)]:
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (Scalar, int, Fraction)):
        return NCPoly({"": x})
    return NotImplemented


# --- term order -------------------------------------------------------------


def parse_precedence(text: Union[str, Sequence[str]]) -> Tuple[str, ...]:
    """Letter precedence low-to-high, accepting forms like "z<y<x"."""
    if isinstance(text, str):
        letters = tuple(part.strip() for part in text.split("<"))
    else:
        letters = tuple(text)
    if len(set(letters)) != len(letters):
        raise ValueError("precedence letters must be distinct")
    for ch in letters:
        if ch not in ALPHABET:
            raise ValueError(f"unknown letter {ch!r} in precedence")
    return letters


def _order_key(word: Word, rank: Mapping[str, int]):
    return (len(word), tuple(rank[ch] for ch in word))


def leading_word(p: NCPoly, precedence: Sequence[str]) -> Word:
    if p.is_zero():
        raise NotOrientableError("the zero polynomial has no leading word")
    rank = {ch: i for i, ch in enumerate(parse_precedence(precedence))}
    for w in p.words():
        for ch in w:
            if ch not in rank:
                raise ValueError(f"letter {ch!r} missing from the precedence")
    return max(p.words(), key=lambda w: _order_key(w, rank))


# --- rewrite systems --------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: NCPoly

    def difference(self) -> NCPoly:
        """lhs - rhs, the ideal element this rule encodes."""
        return NCPoly.term(self.lhs) - self.rhs


@dataclass(frozen=True)
class RewriteSystem:
    rules: Tuple[Rule, ...]
    precedence: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "precedence", parse_precedence(self.precedence))
        object.__setattr__(self, "rules", tuple(self.rules))
        rank = {ch: i for i, ch in enumerate(self.precedence)}
        seen = set()
        for rule in self.rules:
            if len(rule.lhs) != 2:
                raise ValueError("rule left sides must be words of length 2")
            _check_word(rule.lhs)
            if rule.lhs in seen:
                raise ValueError(f"duplicate rule for {rule.lhs!r}")
            seen.add(rule.lhs)
            key = _order_key(rule.lhs, rank)
            for w, _ in rule.rhs.terms():
                if _order_key(w, rank) >= key:
                    raise ValueError(
                        f"rule {rule.lhs!r} does not dominate its right side"
                    )

    def lhs_map(self) -> Dict[Word, NCPoly]:
        return {r.lhs: r.rhs for r in self.rules}


def orient(f: NCPoly, precedence: Union[str, Sequence[str]]) -> Rule:
    """Turn a relation into a rule: leading word rewrites to minus the rest."""
    precedence = parse_precedence(precedence)
    lead = leading_word(f, precedence)
    if len(lead) != 2:
        raise NotOrientableError(
            f"leading word {lead!r} is not quadratic; cannot orient"
        )
    c = f.coeff(lead)
    rest = f - NCPoly.term(lead, c)
    rhs = rest * (-c.inverse())
    rank = {ch: i for i, ch in enumerate(precedence)}
    key = _order_key(lead, rank)
    for w, _ in rhs.terms():
        if _order_key(w, rank) >= key:
            raise NotOrientableError(
                f"right side of {lead!r} is not dominated under this precedence"
            )
    return Rule(lead, rhs)


def system_from_relations(
    relations: Iterable[NCPoly], precedence: Union[str, Sequence[str]]
) -> RewriteSystem:
    precedence = parse_precedence(precedence)
    return RewriteSystem(
        tuple(orient(f, precedence) for f in relations), precedence
    )


def reduce(p: NCPoly, sys: RewriteSystem, degree_bound: int) -> NCPoly:
    """Normal form: rewrite the leftmost redex of each word, exhaustively.

    Rules never raise word degree, so the bound only guards the input size.
    """
    table = sys.lhs_map()
    out: Dict[Word, Scalar] = {}
    stack = list(p.terms())
    while stack:
        word, coeff = stack.pop()
        if len(word) > degree_bound:
            raise DegreeBoundError(
                f"word {word!r} exceeds the degree bound {degree_bound}"
            )
        for i in range(len(word) - 1):
            rhs = table.get(word[i : i + 2])
            if rhs is not None:
                pre, post = word[:i], word[i + 2 :]
                for w2, c2 in rhs.terms():
                    stack.append((pre + w2 + post, coeff * c2))
                break
        else:
            if word in out:
                out[word] = out[word] + coeff
            else:
                out[word] = coeff
    return NCPoly(out)


def substitute(mapping: Mapping[str, NCPoly], p: NCPoly) -> NCPoly:
    """Apply a letter-to-polynomial map homomorphically."""
    images = {}
    for letter, img in mapping.items():
        if letter not in ALPHABET:
            raise ValueError(f"unknown letter {letter!r}")
        images[letter] = _as_poly(img)
        if images[letter] is NotImplemented:
            raise TypeError(f"image of {letter!r} is not a polynomial")
    out = NCPoly.zero()
    for word, coeff in p.terms():
        prod = NCPoly.one()
        for ch in word:
            prod = prod * images.get(ch, NCPoly.variable(ch))
        out = out + prod * coeff
    return out


def confluence_smoke(sys: RewriteSystem, max_degree: int = 6) -> bool:
    """Check that all overlap ambiguities resolve to a common normal form.

    With quadratic left sides every overlap word has length three, so this
    is the complete local-confluence test whenever max_degree >= 3.
    """
    if max_degree > 8:
        raise ValueError("confluence_smoke supports max_degree up to 8")
    for r1 in sys.rules:
        for r2 in sys.rules:
            if r1.lhs[1] != r2.lhs[0]:
                continue
            word = r1.lhs + r2.lhs[1]
            if len(word) > max_degree:
                continue
            left = reduce(
                r1.rhs * NCPoly.variable(r2.lhs[1]), sys, max_degree
            )
            right = reduce(
                NCPoly.variable(r1.lhs[0]) * r2.rhs, sys, max_degree
            )
            if left != right:
                return False
    return True
