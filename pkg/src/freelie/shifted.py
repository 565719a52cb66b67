"""Shifted-product calculus: chains, exact division, witnesses, bracket spans.

The shifted product ``u(v+a)`` is ``[u,v] + a*u``; chains fold such
factors left to right and commute in their factors.  Division by a
shifted factor is an exact linear solve; witnesses for systems of
divisibilities follow a deterministic two-term recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import LieAlgebra, LieElement
from .errors import (
    ConsistencyError,
    DecompositionError,
    DivisionError,
    InconsistentChainError,
    NotInL2Error,
    ShiftDistinctnessError,
)
from .words import bracketing_of


def shifted_product(u: LieElement, v: LieElement, alpha) -> LieElement:
    """``u(v+alpha) = [u,v] + alpha*u``."""
    return u.bracket(v) + u.algebra.coerce(alpha) * u


def shifted_chain(u: LieElement, v: LieElement, alphas) -> LieElement:
    """Left fold ``(..(u(v+a1))(v+a2)..)(v+an)``; empty ``alphas`` gives u."""
    out = u
    for alpha in alphas:
        out = shifted_product(out, v, alpha)
    return out


@dataclass(frozen=True)
class WitnessGammaW:
    """Certificate ``gamma * u == chain(w, v, alphas)`` with gamma nonzero."""

    gamma: object
    w: LieElement

    def __post_init__(self):
        if not self.gamma:
            raise ConsistencyError("witness scalar must be nonzero")


def divide_shifted(target: LieElement, v: LieElement, alpha):
    """The unique ``u`` with ``u(v+alpha) == target``, or None.

    Solves an exact linear system over the fraction field for the
    coordinates of ``u``; over Z the solution is accepted only if every
    coordinate is integral.  Any returned value re-multiplies to
    ``target`` exactly (this is re-checked before returning).
    """
    if target.is_zero() or v.is_zero():
        raise DivisionError("division needs a nonzero target and divisor")
    target._check_same(v)
    algebra = target.algebra
    alpha = algebra.coerce(alpha)
    max_deg = target.weight()
    if not alpha:
        max_deg -= min(len(w) for w in v._terms)
    if max_deg < 1:
        return None
    candidates = algebra.basis_words_upto(max_deg)
    images = [
        shifted_product(algebra.from_word(w), v, alpha) for w in candidates
    ]
    row_words = sorted(
        {w for im in images for w in im._terms} | set(target._terms),
        key=lambda w: (len(w), w),
    )
    rows = [[Fraction(im._terms.get(w, 0)) for im in images] for w in row_words]
    rhs = [Fraction(target._terms.get(w, 0)) for w in row_words]
    solution = linalg.solve_fractions(rows, rhs)
    if solution is None:
        return None
    if algebra.ring == "Z" and any(c.denominator != 1 for c in solution):
        return None
    u = algebra.element(
        {w: c for w, c in zip(candidates, solution) if c}
    )
    if shifted_product(u, v, alpha) != target:
        return None
    return u


def main_lemma_witness(v: LieElement, pairs) -> WitnessGammaW:
    """Witness ``(gamma, w)`` for a system ``u == u_i(v + alpha_i)``.

    ``pairs`` is a list of ``(alpha_i, u_i)`` with pairwise distinct
    shifts whose shifted products agree on a common nonzero value ``u``.
    The recursion is:

    * one pair: ``(1, u_1)``;
    * two pairs: ``(a2 - a1, u_1 - u_2)``;
    * more: combine the witnesses of ``pairs[:-1]`` and
      ``pairs[:-2] + [pairs[-1]]`` as
      ``((a_n - a_{n-1}) * g1 * g2,  g2*w1 - g1*w2)``.

    The result is re-expanded and checked against the defining equation
    before returning.
    """
    if not pairs:
        raise ShiftDistinctnessError("need at least one (alpha, u) pair")
    algebra = v.algebra
    pairs = [(algebra.coerce(alpha), u) for alpha, u in pairs]
    alphas = [alpha for alpha, _ in pairs]
    if len(set(alphas)) != len(alphas):
        raise ShiftDistinctnessError("shift scalars must be pairwise distinct")
    values = [shifted_product(u_i, v, alpha_i) for alpha_i, u_i in pairs]
    u = values[0]
    if any(val != u for val in values[1:]):
        raise InconsistentChainError("the shifted products do not share a common value")
    if u.is_zero():
        raise InconsistentChainError("the common value must be nonzero")

    def recurse(pairs_):
        if len(pairs_) == 1:
            return WitnessGammaW(algebra.coerce(1), pairs_[0][1])
        if len(pairs_) == 2:
            (a1, u1), (a2, u2) = pairs_
            return WitnessGammaW(a2 - a1, u1 - u2)
        first = recurse(pairs_[:-1])
        second = recurse(pairs_[:-2] + [pairs_[-1]])
        gap = pairs_[-1][0] - pairs_[-2][0]
        return WitnessGammaW(
            gap * first.gamma * second.gamma,
            second.gamma * first.w - first.gamma * second.w,
        )

    witness = recurse(pairs)
    if shifted_chain(witness.w, v, alphas) != witness.gamma * u:
        raise ConsistencyError("witness failed its defining equation")
    return witness


def _tree_element(algebra: LieAlgebra, tree) -> LieElement:
    if isinstance(tree, int):
        return LieElement(algebra, {(tree,): algebra.coerce(1)})
    left, right = tree
    return _tree_element(algebra, left).bracket(_tree_element(algebra, right))


def _letter_gens(gens):
    """Letter indices if every generator is a plain letter with coefficient 1."""
    letters = []
    for g in gens:
        terms = list(g._terms.items())
        if len(terms) != 1:
            return None
        word, c = terms[0]
        if len(word) != 1 or c != 1:
            return None
        letters.append(word[0])
    return letters


def decompose_L2(p: LieElement, gens):
    """Write ``p`` as ``sum_i [z_i, x_i]`` over the given generators.

    Returns ``(z_i, x_i)`` pairs (zero ``z_i`` dropped), verified by
    re-expansion.  When the generators are exactly the free generators
    the decomposition follows the bracket recursion
    ``u(v1 v2) = (v2 u)v1 + (u v1)v2`` on bracketing trees; otherwise it
    falls back to an exact linear solve per homogeneous component.

    Raises :class:`NotInL2Error` if ``p`` has a degree-1 component and
    :class:`DecompositionError` (with the offending homogeneous piece as
    witness) if some piece is not a bracket combination over ``gens``.
    """
    if not gens:
        raise DecompositionError("no generators given", witness=p)
    algebra = p.algebra
    for g in gens:
        p._check_same(g)
        if g.is_zero():
            raise DecompositionError("zero generator", witness=p)
    if p.is_zero():
        return []
    if 1 in {len(w) for w in p._terms}:
        raise NotInL2Error("element has a degree-1 component")

    letters = _letter_gens(gens)
    if letters is not None and set(letters) == set(range(len(algebra.alphabet))) and len(
        set(letters)
    ) == len(letters):
        parts = _decompose_letters(p, letters)
    else:
        parts = _decompose_solve(p, gens)

    out = [(z, g) for z, g in zip(parts, gens) if not z.is_zero()]
    total = algebra.zero()
    for z, g in out:
        total = total + z.bracket(g)
    if total != p:
        raise ConsistencyError("decomposition failed to re-expand")
    return out


def _decompose_letters(p: LieElement, letters):
    """Bracket-tree recursion; ``letters`` cover the alphabet exactly."""
    algebra = p.algebra
    acc = {i: algebra.zero() for i in letters}

    def walk(z: LieElement, tree):
        if z.is_zero():
            return
        if isinstance(tree, int):
            acc[tree] = acc[tree] + z
            return
        if z.bracket(_tree_element(algebra, tree)).is_zero():
            return
        left, right = tree
        walk(_tree_element(algebra, right).bracket(z), left)
        walk(z.bracket(_tree_element(algebra, left)), right)

    for word, c in p.items():
        tree = bracketing_of(word)
        left, right = tree
        walk(c * _tree_element(algebra, left), right)
    return [acc[i] for i in letters]


def _decompose_solve(p: LieElement, gens):
    """Exact linear solve, one homogeneous component at a time."""
    algebra = p.algebra
    totals = [algebra.zero() for _ in gens]
    for degree, piece in p.components().items():
        columns = []  # (gen index, candidate word)
        images = []
        for gi, g in enumerate(gens):
            min_deg = min(len(w) for w in g._terms)
            for w in algebra.basis_words_upto(max(degree - min_deg, 0)):
                columns.append((gi, w))
                images.append(algebra.from_word(w).bracket(g))
        if not columns:
            raise DecompositionError(
                "no candidates for degree %d" % degree, witness=piece
            )
        row_words = sorted(
            {w for im in images for w in im._terms} | set(piece._terms),
            key=lambda w: (len(w), w),
        )
        rows = [[Fraction(im._terms.get(w, 0)) for im in images] for w in row_words]
        rhs = [Fraction(piece._terms.get(w, 0)) for w in row_words]
        solution = linalg.solve_fractions(rows, rhs)
        if solution is None or (
            algebra.ring == "Z" and any(c.denominator != 1 for c in solution)
        ):
            raise DecompositionError(
                "degree-%d piece is not a bracket combination over the generators"
                % degree,
                witness=piece,
            )
        for (gi, w), c in zip(columns, solution):
            if c:
                totals[gi] = totals[gi] + algebra.from_word(w, c)
    return totals
