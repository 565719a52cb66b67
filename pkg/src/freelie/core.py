"""Exact arithmetic in a free Lie algebra over Z or Q.

Elements are sparse linear combinations of Lyndon basis words.  Products
of basis words are rewritten into the basis by a triangular Jacobi
recursion on standard factorizations; the associative envelope (letters
to letters, brackets to commutators) is kept as a fully independent
oracle and never feeds the rewriting.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import coeffs, expr
from .errors import CoefficientError, RingMismatchError, ZeroElementError
from .words import (
    Alphabet,
    BasisElement,
    LyndonWord,
    _std_split,
    lyndon_words_raw,
)

# Structure constants are alphabet-independent integers, so both caches are
# shared module-wide.  Entries are only ever written with their final value,
# which keeps concurrent use deterministic.
_PAIR_CACHE: dict = {}
_ASSOC_CACHE: dict = {}


def _pair_product(x, y):
    """Bracket of basis words ``x < y`` (lex) in the Lyndon basis, over Z."""
    try:
        return _PAIR_CACHE[(x, y)]
    except KeyError:
        pass
    w = x + y
    if _std_split(w) == len(x):
        res = {w: 1}
    else:
        # x cannot be a letter here; recurse through its factorization.
        i = _std_split(x)
        x1, x2 = x[:i], x[i:]
        res: dict = {}
        for b, c in _pair_product(x2, y).items():
            for b2, c2 in _signed_pair(x1, b).items():
                res[b2] = res.get(b2, 0) + c * c2
        for b, c in _pair_product(x1, y).items():
            for b2, c2 in _signed_pair(x2, b).items():
                res[b2] = res.get(b2, 0) - c * c2
        res = {b: c for b, c in res.items() if c}
    _PAIR_CACHE[(x, y)] = res
    return res


def _signed_pair(a, b):
    """Bracket of basis words in either order (antisymmetry built in)."""
    if a == b:
        return {}
    if a < b:
        return _pair_product(a, b)
    return {w: -c for w, c in _pair_product(b, a).items()}


def _assoc_of_word(w):
    """Envelope expansion of the bracketing of a basis word, over Z."""
    try:
        return _ASSOC_CACHE[w]
    except KeyError:
        pass
    if len(w) == 1:
        res = {w: 1}
    else:
        i = _std_split(w)
        left, right = _assoc_of_word(w[:i]), _assoc_of_word(w[i:])
        res = {}
        for u, cu in left.items():
            for v, cv in right.items():
                res[u + v] = res.get(u + v, 0) + cu * cv
                res[v + u] = res.get(v + u, 0) - cu * cv
        res = {u: c for u, c in res.items() if c}
    _ASSOC_CACHE[w] = res
    return res


class LieAlgebra:
    """A free Lie algebra on an ordered alphabet over Z or Q."""

    __slots__ = ("alphabet", "ring")

    def __init__(self, alphabet, ring: str = "Z"):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        self.alphabet = alphabet
        self.ring = coeffs.check_ring(ring)

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.alphabet == other.alphabet
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.alphabet, self.ring))

    def __repr__(self):
        return "LieAlgebra(%r, ring=%r)" % (list(self.alphabet.letters), self.ring)

    def coerce(self, value):
        return coeffs.coerce(self.ring, value)

    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def gen(self, name: str) -> "LieElement":
        i = self.alphabet.index(name)
        return LieElement(self, {(i,): self.coerce(1)})

    def gens(self):
        return [self.gen(name) for name in self.alphabet]

    def element(self, terms) -> "LieElement":
        """Build an element from a mapping word -> coefficient.

        Keys may be index tuples, word strings or :class:`LyndonWord`.
        """
        out: dict = {}
        for key, value in terms.items():
            if isinstance(key, LyndonWord):
                word = key.word
            elif isinstance(key, str):
                word = self.alphabet.parse_word(key)
            else:
                word = tuple(key)
            LyndonWord(self.alphabet, word)  # validates
            c = self.coerce(value)
            if c:
                out[word] = out.get(word, self.coerce(0)) + c
        return LieElement(self, {w: c for w, c in out.items() if c})

    def from_word(self, word, coeff=1) -> "LieElement":
        return self.element({word: coeff})

    def basis_words(self, degree: int):
        return lyndon_words_raw(len(self.alphabet), degree)

    def basis(self, degree: int):
        return [
            BasisElement(LyndonWord(self.alphabet, w)) for w in self.basis_words(degree)
        ]

    def basis_words_upto(self, max_degree: int):
        out = []
        for d in range(1, max_degree + 1):
            out.extend(self.basis_words(d))
        return out

    def precompute(self, max_degree: int):
        """Populate the basis product table up to a total degree bound."""
        for total in range(2, max_degree + 1):
            for d in range(1, total):
                for x in self.basis_words(d):
                    for y in self.basis_words(total - d):
                        if x < y:
                            _pair_product(x, y)


class LieElement:
    """Immutable sparse element of a :class:`LieAlgebra`."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: LieAlgebra, terms: dict):
        self.algebra = algebra
        self._terms = terms

    def items(self):
        """Term list in canonical (degree, word) order."""
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def support(self):
        return [LyndonWord(self.algebra.alphabet, w) for w in self.words()]

    def coefficient(self, word):
        if isinstance(word, LyndonWord):
            word = word.word
        elif isinstance(word, str):
            word = self.algebra.alphabet.parse_word(word)
        return self._terms.get(tuple(word), self.algebra.coerce(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.algebra == other.algebra
            and self._terms == other._terms
        )

    __hash__ = None

    def _check_same(self, other):
        if not isinstance(other, LieElement):
            raise TypeError("expected a LieElement, got %r" % (other,))
        if self.algebra != other.algebra:
            raise RingMismatchError(
                "mixed algebras: %r vs %r" % (self.algebra, other.algebra)
            )

    def __add__(self, other):
        self._check_same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return LieElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LieElement(self.algebra, {w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar):
        c = self.algebra.coerce(scalar)
        if not c:
            return self.algebra.zero()
        return LieElement(self.algebra, {w: c * v for w, v in self._terms.items()})

    __rmul__ = __mul__

    def bracket(self, other) -> "LieElement":
        """Lie product, rewritten into the Lyndon basis."""
        self._check_same(other)
        out: dict = {}
        for wu, cu in self._terms.items():
            for wv, cv in other._terms.items():
                c = cu * cv
                for w, n in _signed_pair(wu, wv).items():
                    s = out.get(w, 0) + c * n
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
        return LieElement(self.algebra, out)

    def degrees(self):
        return sorted({len(w) for w in self._terms})

    def components(self) -> dict:
        """Homogeneous components, keyed by degree."""
        out: dict = {}
        for w, c in self._terms.items():
            out.setdefault(len(w), {})[w] = c
        return {d: LieElement(self.algebra, terms) for d, terms in sorted(out.items())}

    def weight(self) -> int:
        if not self._terms:
            raise ZeroElementError("the zero element has no weight")
        return max(len(w) for w in self._terms)

    def top(self) -> "LieElement":
        """Homogeneous component of the highest degree."""
        d = self.weight()
        return LieElement(
            self.algebra, {w: c for w, c in self._terms.items() if len(w) == d}
        )

    def to_associative(self) -> "AssocPoly":
        out: dict = {}
        for w, c in self._terms.items():
            for u, n in _assoc_of_word(w).items():
                s = out.get(u, 0) + c * n
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
        return AssocPoly(self.algebra, out)

    def __str__(self):
        if not self._terms:
            return "0"
        bits = []
        for w, c in self.items():
            name = "(%s)" % self.algebra.alphabet.word_str(w)
            if c == 1:
                text = name
            elif c == -1:
                text = "-" + name
            else:
                text = "%s*%s" % (coeffs.to_str(c), name)
            bits.append(text)
        out = bits[0]
        for text in bits[1:]:
            out += " - " + text[1:] if text.startswith("-") else " + " + text
        return out

    __repr__ = __str__


class AssocPoly:
    """Sparse polynomial in the free associative envelope (oracle side)."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: LieAlgebra, terms: dict):
        self.algebra = algebra
        self._terms = terms

    @classmethod
    def letter(cls, algebra: LieAlgebra, name: str) -> "AssocPoly":
        i = algebra.alphabet.index(name)
        return cls(algebra, {(i,): algebra.coerce(1)})

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return (
            isinstance(other, AssocPoly)
            and self.algebra == other.algebra
            and self._terms == other._terms
        )

    __hash__ = None

    def _check_same(self, other):
        if not isinstance(other, AssocPoly):
            raise TypeError("expected an AssocPoly, got %r" % (other,))
        if self.algebra != other.algebra:
            raise RingMismatchError("mixed algebras in envelope arithmetic")

    def __add__(self, other):
        self._check_same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return AssocPoly(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AssocPoly(self.algebra, {w: -c for w, c in self._terms.items()})

    def scale(self, scalar) -> "AssocPoly":
        c = self.algebra.coerce(scalar)
        if not c:
            return AssocPoly(self.algebra, {})
        return AssocPoly(self.algebra, {w: c * v for w, v in self._terms.items()})

    def concat(self, other) -> "AssocPoly":
        """Associative (concatenation) product."""
        self._check_same(other)
        out: dict = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                w = u + v
                s = out.get(w, 0) + cu * cv
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return AssocPoly(self.algebra, out)

    def commutator(self, other) -> "AssocPoly":
        return self.concat(other) - other.concat(self)

    def __str__(self):
        if not self._terms:
            return "0"
        bits = []
        for w, c in self.items():
            name = self.algebra.alphabet.word_str(w)
            if c == 1:
                text = name
            elif c == -1:
                text = "-" + name
            else:
                text = "%s*%s" % (coeffs.to_str(c), name)
            bits.append(text)
        out = bits[0]
        for text in bits[1:]:
            out += " - " + text[1:] if text.startswith("-") else " + " + text
        return out

    __repr__ = __str__


def bracket(u: LieElement, v: LieElement) -> LieElement:
    return u.bracket(v)


def _coerce_fraction(algebra: LieAlgebra, value: Fraction):
    try:
        return algebra.coerce(value)
    except CoefficientError:
        raise CoefficientError(
            "coefficient %s is not valid over ring %s" % (value, algebra.ring)
        ) from None


def normal_form(node, algebra: LieAlgebra) -> LieElement:
    """Evaluate an expression tree to its canonical basis representation."""
    if isinstance(node, expr.Gen):
        return algebra.gen(node.name)
    if isinstance(node, expr.Sum):
        out = algebra.zero()
        for sign, item in node.items:
            part = normal_form(item, algebra)
            out = out + (part if sign > 0 else -part)
        return out
    if isinstance(node, expr.Scaled):
        return _coerce_fraction(algebra, node.coeff) * normal_form(node.factor, algebra)
    if isinstance(node, expr.Bracket):
        return normal_form(node.left, algebra).bracket(normal_form(node.right, algebra))
    if isinstance(node, expr.Chain):
        out = normal_form(node.base, algebra)
        for vnode, alpha in node.factors:
            v = normal_form(vnode, algebra)
            out = out.bracket(v) + _coerce_fraction(algebra, alpha) * out
        return out
    raise TypeError("not an expression node: %r" % (node,))


def eval_assoc(node, algebra: LieAlgebra) -> AssocPoly:
    """Evaluate an expression tree directly in the associative envelope.

    Independent of the Lyndon rewriting: letters map to letters and
    brackets to commutators, nothing else.
    """
    if isinstance(node, expr.Gen):
        return AssocPoly.letter(algebra, node.name)
    if isinstance(node, expr.Sum):
        out = AssocPoly(algebra, {})
        for sign, item in node.items:
            part = eval_assoc(item, algebra)
            out = out + (part if sign > 0 else -part)
        return out
    if isinstance(node, expr.Scaled):
        return eval_assoc(node.factor, algebra).scale(_coerce_fraction(algebra, node.coeff))
    if isinstance(node, expr.Bracket):
        return eval_assoc(node.left, algebra).commutator(eval_assoc(node.right, algebra))
    if isinstance(node, expr.Chain):
        out = eval_assoc(node.base, algebra)
        for vnode, alpha in node.factors:
            v = eval_assoc(vnode, algebra)
            out = out.commutator(v) + out.scale(_coerce_fraction(algebra, alpha))
        return out
    raise TypeError("not an expression node: %r" % (node,))


def homogeneous_decomposition(u: LieElement):
    """Components by degree plus the top component and its weight.

    Raises :class:`ZeroElementError` on the zero element (which still has
    a well-defined, empty, component map via ``u.components()``).
    """
    if u.is_zero():
        raise ZeroElementError("zero element has no top component or weight")
    comps = u.components()
    weight = max(comps)
    return comps, comps[weight], weight


def proportional(u: LieElement, v: LieElement):
    """Nonzero ``(alpha, beta)`` with ``alpha*u == beta*v``, if it exists.

    Over Z the pair is gcd-reduced with ``alpha > 0``; over Q it is
    normalized to ``alpha == 1``.
    """
    if u.is_zero() or v.is_zero():
        raise ZeroElementError("proportionality is about nonzero elements")
    u._check_same(v)
    uw, vw = u.words(), v.words()
    if uw != vw:
        return None
    w0 = uw[0]
    a0, b0 = u._terms[w0], v._terms[w0]
    for w in uw[1:]:
        if u._terms[w] * b0 != v._terms[w] * a0:
            return None
    if u.algebra.ring == "Z":
        alpha, beta = b0, a0
        g = math.gcd(alpha, beta)
        alpha //= g
        beta //= g
        if alpha < 0:
            alpha, beta = -alpha, -beta
        return (alpha, beta)
    return (Fraction(1), Fraction(a0, 1) / Fraction(b0, 1))


def element_to_json(u: LieElement) -> dict:
    """Canonical JSON form: sorted terms, exact coefficient strings."""
    return {
        "ring": u.algebra.ring,
        "alphabet": list(u.algebra.alphabet.letters),
        "terms": [
            {"word": u.algebra.alphabet.word_str(w), "coeff": coeffs.to_str(c)}
            for w, c in u.items()
        ],
    }


def element_from_json(data: dict) -> LieElement:
    try:
        ring = data["ring"]
        alphabet = Alphabet(data["alphabet"])
        raw_terms = data["terms"]
    except (KeyError, TypeError):
        raise CoefficientError("malformed element object: %r" % (data,)) from None
    algebra = LieAlgebra(alphabet, ring)
    terms = {}
    for entry in raw_terms:
        word = alphabet.parse_word(entry["word"])
        c = coeffs.parse(ring, entry["coeff"])
        if word in terms:
            raise CoefficientError("duplicate word %r in element object" % (entry["word"],))
        if c:
            terms[word] = c
    return algebra.element(terms)
