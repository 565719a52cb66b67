"""Scalar-line predicates, divisibility certificates and bounded evaluation.

The predicates here are the semantic counterparts of definable relations
on the algebra: membership in a scalar line ``R*z``, transport of line
points between lines, the induced ring structure on a line, certificates
that pin down which shifts divide a chain, bracket-width checks, and a
three-valued evaluator that searches bounded fragments for witnesses or
counterexamples and otherwise answers "unknown".
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import coeffs
from .core import LieAlgebra, LieElement
from .errors import (
    BoundError,
    CommutativeAlgebraError,
    ConsistencyError,
    DecompositionError,
    ExprSyntaxError,
    LineError,
    OffLineError,
    SizeGuardError,
    WindowError,
    ZeroElementError,
)
from .shifted import decompose_L2, divide_shifted, shifted_chain
from .words import BasisElement, LyndonWord


def in_Rz(x: LieElement, z: LieElement):
    """The unique scalar ``r`` with ``x == r*z``, or None; 0 lies on every line."""
    if z.is_zero():
        raise LineError("the zero element spans no line")
    x._check_same(z)
    if x.is_zero():
        return x.algebra.coerce(0)
    if x.words() != z.words():
        return None
    w0 = x.words()[0]
    r = Fraction(x._terms[w0]) / Fraction(z._terms[w0])
    if x.algebra.ring == "Z" and r.denominator != 1:
        return None
    r = x.algebra.coerce(r)
    if any(x._terms[w] != r * z._terms[w] for w in x.words()):
        return None
    return r


def transport(x: LieElement, x_prime: LieElement, y: LieElement):
    """Move ``x_prime = r*x`` to the line of ``y``, giving ``r*y``; else None."""
    if x.is_zero() or y.is_zero():
        raise LineError("transport needs nonzero line base points")
    r = in_Rz(x_prime, x)
    if r is None:
        return None
    return r * y


def rx_combine(x: LieElement, p: LieElement, q: LieElement, op: str) -> LieElement:
    """Ring operations on the line ``R*x``: induced sum or product.

    ``plus`` is the ambient sum; ``times`` sends ``(r*x, s*x)`` to
    ``(r*s)*x``.  With these operations the line is a unital commutative
    ring with identity ``x``, isomorphic to the coefficient ring.
    """
    if x.is_zero():
        raise LineError("the zero element spans no line")
    r = in_Rz(p, x)
    if r is None:
        raise OffLineError("first operand %s is not on the line of %s" % (p, x))
    s = in_Rz(q, x)
    if s is None:
        raise OffLineError("second operand %s is not on the line of %s" % (q, x))
    if op == "plus":
        return p + q
    if op == "times":
        return (r * s) * x
    raise ValueError("op must be 'plus' or 'times', got %r" % (op,))


@dataclass(frozen=True)
class NatCertificate:
    """Record of which shifts divide the chain ``v = a(b+0)...(b+m)``.

    ``table`` maps each probed shift ``k`` to the quotient element when
    ``divide_shifted(v, b, k)`` succeeds and to None otherwise.  The
    certificate is sound by construction — every quotient re-multiplies
    to ``v`` — and ``counterexamples`` lists any probed shift whose
    divisibility disagrees with the expected window ``{0, ..., m}``.
    """

    b: LieElement
    m: int
    aux: LieElement
    v: LieElement
    window: tuple
    table: dict = field(compare=False)

    @property
    def divisible(self):
        return tuple(k for k in self.window if self.table[k] is not None)

    @property
    def expected(self):
        return tuple(k for k in self.window if 0 <= k <= self.m)

    @property
    def counterexamples(self):
        return tuple(
            k
            for k in self.window
            if (self.table[k] is not None) != (0 <= k <= self.m)
        )

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def verify(self) -> bool:
        """Re-check every recorded quotient by re-multiplication."""
        return all(
            shifted_chain(u, self.b, [k]) == self.v
            for k, u in self.table.items()
            if u is not None
        )


def _auxiliary_element(b: LieElement) -> LieElement:
    """Deterministic auxiliary chain base, independent of ``b``.

    The first generator whose letter does not occur in ``b`` is used; if
    every letter occurs, the first basis element outside the span of
    ``b``'s support.
    """
    algebra = b.algebra
    used_letters = {i for w in b._terms for i in w}
    for i, name in enumerate(algebra.alphabet):
        if i not in used_letters:
            return algebra.gen(name)
    support = set(b._terms)
    degree = 1
    while degree <= b.weight() + 1:
        for w in algebra.basis_words(degree):
            if w not in support:
                return algebra.from_word(w)
        degree += 1
    raise ConsistencyError("no basis element outside the support of %s" % (b,))


def nat_certify(
    b: LieElement, m: int, window=None, degree_bound=None
) -> NatCertificate:
    """Divisibility certificate for the chain ``v = a(b+0)(b+1)...(b+m)``.

    Probes ``divide_shifted(v, b, k)`` for every ``k`` in the window
    (default ``{-3, ..., m+3}``), which must cover ``{0, ..., m}``.  The
    shifts ``0..m`` divide ``v`` because chain factors commute; sound
    failures elsewhere are what the certificate documents.
    """
    if b.is_zero():
        raise LineError("certificate base must be nonzero")
    if m < 0:
        raise WindowError("m must be a natural number, got %r" % (m,))
    algebra = b.algebra
    if len(algebra.alphabet) < 2:
        raise CommutativeAlgebraError(
            "divisibility certificates need at least two generators"
        )
    if window is None:
        window = range(-3, m + 4)
    window = tuple(algebra.coerce(k) for k in window)
    if len(set(window)) != len(window):
        raise WindowError("window values must be distinct")
    required = {algebra.coerce(k) for k in range(m + 1)}
    if not required <= set(window):
        raise WindowError("window must cover 0..%d" % (m,))
    aux = _auxiliary_element(b)
    v = shifted_chain(aux, b, [algebra.coerce(k) for k in range(m + 1)])
    if v.is_zero():
        raise ConsistencyError("certificate chain collapsed to zero")
    if degree_bound is not None and v.weight() > degree_bound:
        raise BoundError(
            "certificate chain has weight %d, above the bound %d"
            % (v.weight(), degree_bound)
        )
    table = {k: divide_shifted(v, b, k) for k in window}
    return NatCertificate(b=b, m=m, aux=aux, v=v, window=window, table=table)


def width_check(m: int, gens, max_degree: int):
    """Check that every basis element of degree 2..max_degree decomposes
    as at most ``m`` brackets against the given generators.

    Returns None on success, or the first failing basis element.  Every
    successful decomposition is re-expanded exactly (inside
    :func:`decompose_L2`).
    """
    gens = list(gens)
    if len(gens) != m:
        raise ValueError("expected %d generators, got %d" % (m, len(gens)))
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    algebra = gens[0].algebra
    for degree in range(2, max_degree + 1):
        for word in algebra.basis_words(degree):
            element = algebra.from_word(word)
            try:
                parts = decompose_L2(element, gens)
            except DecompositionError:
                return BasisElement(LyndonWord(algebra.alphabet, word))
            if len(parts) > m:
                return BasisElement(LyndonWord(algebra.alphabet, word))
    return None


# ---------------------------------------------------------------------------
# Bounded three-valued evaluation of first-order formulas
# ---------------------------------------------------------------------------

TRUE = "witnessed-true"
FALSE = "counterexample-false"
UNKNOWN = "unknown"

LIE = "lie"
SCALAR = "scalar"

_CANDIDATE_GUARD = 2_000_000


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TZero:
    pass


@dataclass(frozen=True)
class TScaled:
    scalar: object  # SVar or SConst
    base: object


@dataclass(frozen=True)
class TSp:
    u: object
    v: object
    shift: object  # SVar or SConst


@dataclass(frozen=True)
class SVar:
    name: str


@dataclass(frozen=True)
class SConst:
    value: Fraction


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class InLine:
    x: object
    z: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Quantifier:
    kind: str  # "E" or "A"
    var: str
    sort: str  # LIE or SCALAR
    degree_bound: int | None
    height_bound: int | None
    body: object
    bound_complete: bool = False


@dataclass(frozen=True)
class EvalResult:
    status: str
    witness: dict | None = None

    @property
    def is_true(self):
        return self.status == TRUE

    @property
    def is_false(self):
        return self.status == FALSE


def _eval_scalar(term, env, algebra):
    if isinstance(term, SConst):
        return algebra.coerce(term.value)
    if isinstance(term, SVar):
        value = env.get(term.name)
        if value is None:
            raise ExprSyntaxError("unbound scalar variable %r" % (term.name,))
        return algebra.coerce(value)
    raise TypeError("not a scalar term: %r" % (term,))


def _eval_term(term, env, algebra) -> LieElement:
    if isinstance(term, TZero):
        return algebra.zero()
    if isinstance(term, TVar):
        value = env.get(term.name)
        if not isinstance(value, LieElement):
            raise ExprSyntaxError("unbound element variable %r" % (term.name,))
        return value
    if isinstance(term, TScaled):
        return _eval_scalar(term.scalar, env, algebra) * _eval_term(
            term.base, env, algebra
        )
    if isinstance(term, TSp):
        u = _eval_term(term.u, env, algebra)
        v = _eval_term(term.v, env, algebra)
        k = _eval_scalar(term.shift, env, algebra)
        return u.bracket(v) + k * u
    raise TypeError("not an element term: %r" % (term,))


def lie_candidates(algebra: LieAlgebra, degree_bound: int, height_bound: int):
    """All elements with the given degree and coefficient-height bounds.

    Deterministic order: coefficient vectors over the (degree, word)
    sorted basis, earlier basis words varying slowest and coefficient
    values ordered by height.
    """
    words = algebra.basis_words_upto(degree_bound)
    values = coeffs.candidates(algebra.ring, height_bound)
    total = len(values) ** len(words)
    if total > _CANDIDATE_GUARD:
        raise SizeGuardError(
            "bounded search space has %d candidates (guard %d)"
            % (total, _CANDIDATE_GUARD)
        )
    for vector in itertools.product(values, repeat=len(words)):
        yield algebra.element(
            {w: c for w, c in zip(words, vector) if c}
        )


def bounded_eval(formula, env, algebra: LieAlgebra) -> EvalResult:
    """Three-valued evaluation with bounded quantifier search.

    Existentials report true only with a checked witness; universals
    report false only with a checked counterexample.  A quantifier whose
    bounded search is exhausted without a decision yields "unknown"
    unless the node is tagged ``bound_complete``.
    """
    if isinstance(formula, Eq):
        left = _eval_term(formula.left, env, algebra)
        right = _eval_term(formula.right, env, algebra)
        return EvalResult(TRUE if left == right else FALSE)
    if isinstance(formula, InLine):
        x = _eval_term(formula.x, env, algebra)
        z = _eval_term(formula.z, env, algebra)
        return EvalResult(TRUE if in_Rz(x, z) is not None else FALSE)
    if isinstance(formula, Not):
        inner = bounded_eval(formula.body, env, algebra)
        if inner.is_true:
            return EvalResult(FALSE, inner.witness)
        if inner.is_false:
            return EvalResult(TRUE, inner.witness)
        return EvalResult(UNKNOWN)
    if isinstance(formula, And):
        left = bounded_eval(formula.left, env, algebra)
        if left.is_false:
            return left
        right = bounded_eval(formula.right, env, algebra)
        if right.is_false:
            return right
        if left.is_true and right.is_true:
            return EvalResult(TRUE, _merge(left.witness, right.witness))
        return EvalResult(UNKNOWN)
    if isinstance(formula, Or):
        left = bounded_eval(formula.left, env, algebra)
        if left.is_true:
            return left
        right = bounded_eval(formula.right, env, algebra)
        if right.is_true:
            return right
        if left.is_false and right.is_false:
            return EvalResult(FALSE, _merge(left.witness, right.witness))
        return EvalResult(UNKNOWN)
    if isinstance(formula, Implies):
        return bounded_eval(Or(Not(formula.left), formula.right), env, algebra)
    if isinstance(formula, Quantifier):
        return _eval_quantifier(formula, env, algebra)
    raise TypeError("not a formula node: %r" % (formula,))


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    out = dict(a)
    out.update(b)
    return out


def _quantifier_candidates(node: Quantifier, algebra: LieAlgebra):
    if node.sort == SCALAR:
        if node.height_bound is None:
            raise BoundError("scalar quantifier %r needs a height bound" % (node.var,))
        return coeffs.candidates(algebra.ring, node.height_bound)
    if node.degree_bound is None or node.height_bound is None:
        raise BoundError(
            "element quantifier %r needs degree and height bounds" % (node.var,)
        )
    return lie_candidates(algebra, node.degree_bound, node.height_bound)


def _eval_quantifier(node: Quantifier, env, algebra: LieAlgebra) -> EvalResult:
    saw_unknown = False
    for candidate in _quantifier_candidates(node, algebra):
        child_env = dict(env)
        child_env[node.var] = candidate
        result = bounded_eval(node.body, child_env, algebra)
        if node.kind == "E" and result.is_true:
            return EvalResult(TRUE, _merge({node.var: candidate}, result.witness))
        if node.kind == "A" and result.is_false:
            return EvalResult(FALSE, _merge({node.var: candidate}, result.witness))
        if result.status == UNKNOWN:
            saw_unknown = True
    if node.bound_complete and not saw_unknown:
        return EvalResult(TRUE if node.kind == "A" else FALSE)
    return EvalResult(UNKNOWN)


# ---------------------------------------------------------------------------
# Formula text syntax
# ---------------------------------------------------------------------------

_FORMULA_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<le><=)|(?P<int>\d+)|"
    r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()\[\],.=~&|*/+\-]))"
)


def _formula_tokens(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _FORMULA_TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(
                "unexpected character %r" % (stripped[0],), len(text) - len(stripped)
            )
        for group in ("arrow", "le", "int", "name", "sym"):
            value = m.group(group)
            if value is not None:
                tokens.append((group if group in ("int", "name") else "sym", value, m.start()))
                break
        pos = m.end()
    return tokens


class _FormulaParser:
    """Recursive descent for the formula syntax.

    Precedence (loosest first): ``->``, ``|``, ``&``, ``~``; quantifier
    bodies extend as far right as possible.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _formula_tokens(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of formula", len(self.text))
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise ExprSyntaxError("expected %r, found %r" % (value, tok[1]), tok[2])
        return tok

    def at(self, value):
        tok = self.peek()
        return tok is not None and tok[1] == value

    def parse(self):
        out = self.parse_implies()
        if self.peek() is not None:
            tok = self.peek()
            raise ExprSyntaxError("trailing input %r" % (tok[1],), tok[2])
        return out

    def parse_implies(self):
        left = self.parse_or()
        if self.at("->"):
            self.next()
            return Implies(left, self.parse_implies())
        return left

    def parse_or(self):
        out = self.parse_and()
        while self.at("|"):
            self.next()
            out = Or(out, self.parse_and())
        return out

    def parse_and(self):
        out = self.parse_unary()
        while self.at("&"):
            self.next()
            out = And(out, self.parse_unary())
        return out

    def parse_unary(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of formula", len(self.text))
        if tok[1] == "~":
            self.next()
            return Not(self.parse_unary())
        if tok[1] in ("E", "A"):
            return self.parse_quantifier()
        if tok[1] == "(":
            # could be a grouped formula; atoms never start with "("
            self.next()
            inner = self.parse_implies()
            self.expect(")")
            return inner
        return self.parse_atom()

    def parse_quantifier(self):
        kind = self.next()[1]
        self.expect("[")
        degree_bound = height_bound = None
        while True:
            name = self.next()
            if name[1] == "d":
                self.expect("<=")
                degree_bound = int(self.next()[1])
            elif name[1] == "h":
                self.expect("<=")
                height_bound = int(self.next()[1])
            else:
                raise ExprSyntaxError("expected bound 'd' or 'h'", name[2])
            if self.at(","):
                self.next()
                continue
            break
        self.expect("]")
        var = self.next()
        if var[0] != "name":
            raise ExprSyntaxError("expected a variable name", var[2])
        self.expect(".")
        body = self.parse_implies()
        sort = LIE if degree_bound is not None else SCALAR
        return Quantifier(
            kind=kind,
            var=var[1],
            sort=sort,
            degree_bound=degree_bound,
            height_bound=height_bound,
            body=body,
        )

    def parse_atom(self):
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "in_line":
            self.next()
            self.expect("(")
            x = self.parse_term()
            self.expect(",")
            z = self.parse_term()
            self.expect(")")
            return InLine(x, z)
        left = self.parse_term()
        self.expect("=")
        right = self.parse_term()
        return Eq(left, right)

    def parse_scalar(self):
        tok = self.next()
        sign = 1
        if tok[1] == "-":
            sign = -1
            tok = self.next()
        if tok[0] == "int":
            num = int(tok[1])
            if self.at("/"):
                self.next()
                den = self.next()
                if den[0] != "int" or int(den[1]) == 0:
                    raise ExprSyntaxError("expected a positive denominator", den[2])
                return SConst(Fraction(sign * num, int(den[1])))
            return SConst(Fraction(sign * num))
        if tok[0] == "name":
            if sign < 0:
                raise ExprSyntaxError("cannot negate a scalar variable", tok[2])
            return SVar(tok[1])
        raise ExprSyntaxError("expected a scalar", tok[2])

    def parse_term(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of formula", len(self.text))
        if tok[0] == "name" and tok[1] == "sp":
            self.next()
            self.expect("(")
            u = self.parse_term()
            self.expect(",")
            v = self.parse_term()
            self.expect(",")
            k = self.parse_scalar()
            self.expect(")")
            return TSp(u, v, k)
        if tok[0] == "int" and tok[1] == "0" and not self._scalar_mul_ahead():
            self.next()
            return TZero()
        if tok[0] == "int" or tok[1] == "-":
            scalar = self.parse_scalar()
            self.expect("*")
            return TScaled(scalar, self.parse_term())
        if tok[0] == "name":
            self.next()
            if self.at("*"):
                self.next()
                return TScaled(SVar(tok[1]), self.parse_term())
            return TVar(tok[1])
        raise ExprSyntaxError("unexpected token %r in term" % (tok[1],), tok[2])

    def _scalar_mul_ahead(self):
        nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        return nxt is not None and nxt[1] in ("*", "/")


def parse_formula(text: str):
    """Parse the formula text syntax into an AST."""
    if not text.strip():
        raise ExprSyntaxError("empty formula", 0)
    return _FormulaParser(text).parse()


def tag_bound_complete(formula):
    """Copy of the formula with every quantifier marked bound-complete."""
    if isinstance(formula, Quantifier):
        return Quantifier(
            kind=formula.kind,
            var=formula.var,
            sort=formula.sort,
            degree_bound=formula.degree_bound,
            height_bound=formula.height_bound,
            body=tag_bound_complete(formula.body),
            bound_complete=True,
        )
    if isinstance(formula, Not):
        return Not(tag_bound_complete(formula.body))
    if isinstance(formula, (And, Or, Implies)):
        return type(formula)(
            tag_bound_complete(formula.left), tag_bound_complete(formula.right)
        )
    return formula
