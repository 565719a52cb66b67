"""Seeded acceptance suite: one callable per criterion, deterministic output.

Every criterion draws its randomness from its own child generator of the
given seed, so criteria can run in any order or subset and still produce
identical results.  Summaries never include timings; budget violations
flip ``passed`` instead, keeping repeated runs byte-identical.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import expr as E
from .core import (
    LieAlgebra,
    element_from_json,
    element_to_json,
    eval_assoc,
    normal_form,
    proportional,
)
from .errors import DecompositionError, FreeLieError
from .finite import (
    FiniteBilinearInstance,
    brute_force_psw,
    psw_space,
    truncated_free_lie_instance,
)
from .interpret import in_Rz, nat_certify, rx_combine, transport, width_check
from .shifted import (
    divide_shifted,
    main_lemma_witness,
    shifted_chain,
    shifted_product,
)
from .words import lyndon_words_raw, witt_dimension


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    summary: str

    def line(self) -> str:
        return "%s  %2d %-20s %s" % (
            "PASS" if self.passed else "FAIL",
            self.number,
            self.name,
            self.summary,
        )


def _rng(seed: int, label: str) -> random.Random:
    return random.Random("%d:%s" % (seed, label))


def random_element(
    rng: random.Random,
    algebra: LieAlgebra,
    max_degree: int,
    height: int = 5,
    max_terms: int = 3,
    nonzero: bool = True,
    homogeneous: bool = False,
):
    """Sparse random element with small support and bounded coefficients."""
    while True:
        if homogeneous:
            degree = rng.randint(1, max_degree)
            pool = list(algebra.basis_words(degree))
        else:
            pool = list(algebra.basis_words_upto(max_degree))
        terms = {}
        for w in rng.sample(pool, min(rng.randint(1, max_terms), len(pool))):
            c = rng.randint(-height, height)
            if algebra.ring == "Q" and rng.random() < 0.3:
                c = Fraction(c, rng.randint(1, height))
            if c:
                terms[w] = c
        element = algebra.element(terms)
        if not nonzero or not element.is_zero():
            return element


def random_bracket_tree(rng: random.Random, letters, leaves: int):
    if leaves == 1:
        node = E.Gen(rng.choice(letters))
        if rng.random() < 0.25:
            return E.Scaled(Fraction(rng.randint(1, 9)), node)
        return node
    split = rng.randint(1, leaves - 1)
    return E.Bracket(
        random_bracket_tree(rng, letters, split),
        random_bracket_tree(rng, letters, leaves - split),
    )


def random_expr_ast(rng: random.Random, letters, max_leaves: int = 6) -> E.Sum:
    """Random canonical AST: a signed sum of scaled bracket monomials."""
    items = []
    for _ in range(rng.randint(1, 3)):
        tree = random_bracket_tree(rng, letters, rng.randint(1, max_leaves))
        if rng.random() < 0.4 and not isinstance(tree, E.Scaled):
            tree = E.Scaled(Fraction(rng.randint(1, 9)), tree)
        items.append((rng.choice((1, -1)), tree))
    return E.Sum(tuple(items))


def random_chain_ast(rng: random.Random, letters) -> E.Sum:
    base = random_expr_ast(rng, letters, max_leaves=2)
    factors = tuple(
        (random_expr_ast(rng, letters, max_leaves=2), Fraction(rng.randint(-4, 4)))
        for _ in range(rng.randint(1, 2))
    )
    return E.Sum(((1, E.Chain(base, factors)),))


def criterion_1(seed: int) -> CriterionResult:
    rng = _rng(seed, "oracle")
    started = time.monotonic()
    checked = 0
    for i in range(1000):
        letters = "ab" if i % 2 == 0 else "abc"
        algebra = LieAlgebra(letters, "Z")
        ast = random_expr_ast(rng, letters, max_leaves=6)
        nf = normal_form(ast, algebra)
        if nf.to_associative() != eval_assoc(ast, algebra):
            return CriterionResult(
                1, "oracle-equivalence", False, "mismatch on case %d" % i
            )
        checked += 1
    elapsed = time.monotonic() - started
    if elapsed >= 60.0:
        return CriterionResult(
            1, "oracle-equivalence", False, "runtime budget of 60 s exceeded"
        )
    return CriterionResult(
        1, "oracle-equivalence", True, "%d expressions, exact agreement" % checked
    )


def criterion_2(seed: int) -> CriterionResult:
    expected_k2 = [2, 1, 2, 3, 6, 9, 18, 30]
    for k in (2, 3):
        for n in range(1, 9):
            if len(lyndon_words_raw(k, n)) != witt_dimension(k, n):
                return CriterionResult(
                    2, "dimensions", False, "count mismatch at k=%d n=%d" % (k, n)
                )
    if [witt_dimension(2, n) for n in range(1, 9)] != expected_k2:
        return CriterionResult(2, "dimensions", False, "frozen k=2 sequence mismatch")
    return CriterionResult(
        2, "dimensions", True, "counts match the necklace oracle for k=2,3 up to n=8"
    )


def criterion_3(seed: int) -> CriterionResult:
    rng = _rng(seed, "laws")
    for i in range(500):
        algebra = LieAlgebra("ab" if i % 2 else "abc", "Z" if i % 3 else "Q")
        u = random_element(rng, algebra, 3)
        v = random_element(rng, algebra, 3)
        w = random_element(rng, algebra, 3)
        jac = u.bracket(v.bracket(w)) + v.bracket(w.bracket(u)) + w.bracket(u.bracket(v))
        if not jac.is_zero():
            return CriterionResult(3, "algebra-laws", False, "Jacobi failed at %d" % i)
        if not (u.bracket(v) + v.bracket(u)).is_zero():
            return CriterionResult(3, "algebra-laws", False, "antisymmetry failed at %d" % i)
        c = algebra.coerce(rng.randint(-9, 9))
        if (u + w).bracket(v) != u.bracket(v) + w.bracket(v):
            return CriterionResult(3, "algebra-laws", False, "additivity failed at %d" % i)
        if (c * u).bracket(v) != c * u.bracket(v):
            return CriterionResult(3, "algebra-laws", False, "homogeneity failed at %d" % i)
        if not u.bracket(u).is_zero():
            return CriterionResult(3, "algebra-laws", False, "alternation failed at %d" % i)
    return CriterionResult(3, "algebra-laws", True, "500 random triples, exact zero")


def criterion_4(seed: int) -> CriterionResult:
    rng = _rng(seed, "shifted")
    name = "shifted-properties"
    for i in range(500):
        algebra = LieAlgebra("ab" if i % 2 else "abc", "Z")
        u = random_element(rng, algebra, 3)
        w = random_element(rng, algebra, 3)
        v = random_element(rng, algebra, 2)
        alpha = algebra.coerce(rng.randint(-6, 6))
        beta = algebra.coerce(rng.randint(-6, 6))
        # a) additivity in the left slot
        if shifted_product(u + w, v, alpha) != shifted_product(u, v, alpha) + shifted_product(w, v, alpha):
            return CriterionResult(4, name, False, "property a failed at %d" % i)
        # b) factor exchange
        alphas = [algebra.coerce(rng.randint(-6, 6)) for _ in range(rng.randint(2, 4))]
        shuffled = list(alphas)
        rng.shuffle(shuffled)
        if shifted_chain(u, v, alphas) != shifted_chain(u, v, shuffled):
            return CriterionResult(4, name, False, "property b failed at %d" % i)
        # c) scaling and absorption
        if beta * shifted_product(u, v, alpha) != shifted_product(u, beta * v, beta * alpha):
            return CriterionResult(4, name, False, "property c (scaling) failed at %d" % i)
        if shifted_product(u, v, alpha) != shifted_product(u, v + beta * u, alpha):
            return CriterionResult(4, name, False, "property c (absorption) failed at %d" % i)
        # d) chains kill nothing
        if not v.is_zero() and shifted_product(u, v, alpha).is_zero() != u.is_zero():
            return CriterionResult(4, name, False, "property d failed at %d" % i)
    # e) weight growth with non-commuting tops
    count_e = 0
    while count_e < 60:
        algebra = LieAlgebra("ab", "Z")
        u = random_element(rng, algebra, 3)
        v = random_element(rng, algebra, 2)
        if u.top().bracket(v.top()).is_zero():
            continue
        n = rng.randint(1, 3)
        alphas = [algebra.coerce(rng.randint(-4, 4)) for _ in range(n)]
        chain = shifted_chain(u, v, alphas)
        if chain.weight() != u.weight() + n * v.weight():
            return CriterionResult(4, name, False, "property e failed")
        count_e += 1
    # f) weight growth with proportional tops
    count_f = 0
    while count_f < 60:
        algebra = LieAlgebra("ab", "Z")
        top = random_element(rng, algebra, 3, homogeneous=True)
        low_u = random_element(rng, algebra, top.weight() - 1) if top.weight() > 1 else None
        low_v = random_element(rng, algebra, top.weight() - 1) if top.weight() > 1 else None
        if low_u is None or low_v is None:
            continue
        c1, c2 = rng.randint(1, 4), rng.randint(1, 4)
        u = c1 * top + low_u
        v = c2 * top + low_v
        if u.is_zero() or v.is_zero() or u.bracket(v).is_zero():
            continue
        if not u.top().bracket(v.top()).is_zero():
            continue
        pair = proportional(u.top(), v.top())
        if pair is None:
            continue
        alpha, beta = pair
        v_prime = beta * v - alpha * u
        if v_prime.is_zero():
            continue
        n = rng.randint(1, 3)
        alphas = [algebra.coerce(rng.randint(-4, 4)) for _ in range(n)]
        chain = shifted_chain(u, v, alphas)
        if chain.weight() != u.weight() + n * v_prime.weight():
            return CriterionResult(4, name, False, "property f failed")
        count_f += 1
    return CriterionResult(
        4, name, True, "500 random checks for a-d, 60 constructed cases each for e and f"
    )


def criterion_5(seed: int) -> CriterionResult:
    rng = _rng(seed, "lemma")
    for i in range(200):
        algebra = LieAlgebra("ab" if i % 2 else "abc", "Z")
        n = rng.choice((2, 3, 4))
        base = random_element(rng, algebra, 2)
        v = random_element(rng, algebra, 2)
        alphas = rng.sample(range(-6, 7), n)
        u = shifted_chain(base, v, alphas)
        if u.is_zero():
            continue
        pairs = []
        for j, alpha in enumerate(alphas):
            rest = alphas[:j] + alphas[j + 1 :]
            pairs.append((alpha, shifted_chain(base, v, rest)))
        witness = main_lemma_witness(v, pairs)
        if not witness.gamma or shifted_chain(witness.w, v, alphas) != witness.gamma * u:
            return CriterionResult(5, "main-lemma", False, "bad witness at case %d" % i)
    return CriterionResult(
        5, "main-lemma", True, "200 constructed systems with n in {2,3,4}"
    )


def criterion_6(seed: int) -> CriterionResult:
    rng = _rng(seed, "division")
    agreements = 0
    for i in range(200):
        algebra = LieAlgebra("ab", "Z")
        rational = LieAlgebra("ab", "Q")
        u = random_element(rng, algebra, 3)
        v = random_element(rng, algebra, 2)
        alpha = rng.randint(-5, 5)
        target = shifted_product(u, v, alpha)
        if target.is_zero():
            continue
        if rng.random() < 0.4:
            noise = random_element(rng, algebra, target.weight())
            target = target + noise
            if target.is_zero():
                continue
        result = divide_shifted(target, v, alpha)
        if result is not None and shifted_product(result, v, alpha) != target:
            return CriterionResult(6, "division", False, "re-multiplication failed at %d" % i)
        q_target = rational.element(dict(target._terms))
        q_v = rational.element(dict(v._terms))
        q_result = divide_shifted(q_target, q_v, Fraction(alpha))
        if result is None:
            integral = q_result is not None and all(
                Fraction(c).denominator == 1 for _, c in q_result.items()
            )
            if integral:
                return CriterionResult(
                    6, "division", False, "Z solver missed an integral solution at %d" % i
                )
        else:
            expected = rational.element(dict(result._terms))
            if q_result != expected:
                return CriterionResult(
                    6, "division", False, "Z and Q solves disagree at %d" % i
                )
        agreements += 1
    return CriterionResult(
        6, "division", True, "%d cases, Z and Q routes agree exactly" % agreements
    )


def criterion_7(seed: int) -> CriterionResult:
    algebra = LieAlgebra("ab", "Z")
    b = algebra.gen("b")
    for m in (0, 1, 2, 3):
        started = time.monotonic()
        certificate = nat_certify(b, m, window=range(-3, m + 4))
        elapsed = time.monotonic() - started
        expected = tuple(range(m + 1))
        if certificate.divisible != expected or not certificate.verify():
            return CriterionResult(
                7, "nat-certificates", False, "divisible set wrong for m=%d" % m
            )
        if certificate.v.weight() != m + 2:
            return CriterionResult(
                7, "nat-certificates", False, "chain weight is not m+2 for m=%d" % m
            )
        if elapsed >= 30.0:
            return CriterionResult(
                7, "nat-certificates", False, "30 s budget exceeded for m=%d" % m
            )
    return CriterionResult(
        7,
        "nat-certificates",
        True,
        "m in {0,1,2,3}: divisible exactly on 0..m over window -3..m+3",
    )


def _random_instance(rng: random.Random, p: int, d1: int, d2: int, dN: int):
    if d1 * d2 < dN:
        return None
    for _ in range(300):
        tensor = tuple(
            tuple(tuple(rng.randrange(p) for _ in range(dN)) for _ in range(d2))
            for _ in range(d1)
        )
        try:
            return FiniteBilinearInstance(p=p, d1=d1, d2=d2, dN=dN, tensor=tensor)
        except FreeLieError:
            continue
    return None


def _instance_family(seed: int):
    rng = _rng(seed, "instances")
    family = []
    for p in (2, 3):
        family.append(
            (
                "alternating p=%d" % p,
                FiniteBilinearInstance(
                    p=p, d1=2, d2=2, dN=1, tensor=(((0,), (1,)), (((p - 1),), (0,)))
                ),
            )
        )
        family.append(
            (
                "multiplication p=%d" % p,
                FiniteBilinearInstance(p=p, d1=1, d2=1, dN=1, tensor=(((1,),),)),
            )
        )
        family.append(("truncated p=%d" % p, truncated_free_lie_instance(2, p, 2)))
        for d1 in (1, 2):
            for d2 in (1, 2):
                for dN in (1, 2):
                    instance = _random_instance(rng, p, d1, d2, dN)
                    if instance is not None:
                        family.append(("random p=%d dims=%d%d%d" % (p, d1, d2, dN), instance))
    gram = ((1, 0, 0), (0, 1, 1), (0, 1, 0))
    family.append(
        (
            "dim-3 form p=2",
            FiniteBilinearInstance(
                p=2,
                d1=3,
                d2=3,
                dN=1,
                tensor=tuple(tuple((gram[i][j],) for j in range(3)) for i in range(3)),
            ),
        )
    )
    return family


def criterion_8(seed: int) -> CriterionResult:
    checked = 0
    for label, instance in _instance_family(seed):
        fast = psw_space(instance)
        slow = brute_force_psw(instance)
        if not fast.same_elements(slow):
            return CriterionResult(
                8, "scalar-rings", False, "routes disagree on %s" % label
            )
        for triple in fast.triples:
            if not triple.satisfies(instance):
                return CriterionResult(
                    8, "scalar-rings", False, "identity violated on %s" % label
                )
        fast.identity_index()
        checked += 1
    return CriterionResult(
        8,
        "scalar-rings",
        True,
        "%d instances: linear-algebra and enumeration routes agree" % checked,
    )


def criterion_9(seed: int) -> CriterionResult:
    for p in (2, 3, 5):
        table = psw_space(truncated_free_lie_instance(2, p, 2))
        if table.size != p or not table.is_prime_field():
            return CriterionResult(
                9, "truncated-scalars", False, "ring for p=%d is not the prime field" % p
            )
    return CriterionResult(
        9, "truncated-scalars", True, "p in {2,3,5}: ring of size p isomorphic to F_p"
    )


def criterion_10(seed: int) -> CriterionResult:
    algebra = LieAlgebra("ab", "Z")
    a, b = algebra.gen("a"), algebra.gen("b")
    if width_check(2, [a, b], 6) is not None:
        return CriterionResult(10, "width", False, "two-generator width check failed")
    witness = width_check(1, [a], 3)
    if witness is None or str(witness.lyndon) != "abb" or witness.degree != 3:
        return CriterionResult(
            10, "width", False, "expected failure witness (abb) at degree 3"
        )
    return CriterionResult(
        10, "width", True, "width 2 passes to degree 6; width 1 fails first at (abb)"
    )


def criterion_11(seed: int) -> CriterionResult:
    rng = _rng(seed, "lines")
    algebra = LieAlgebra("ab", "Z")
    bases = [
        algebra.gen("a"),
        algebra.element({"ab": 1}),
        algebra.gen("a") + 2 * algebra.element({"ab": 1}),
    ]
    for x in bases:
        for i in range(100):
            r, s, t = (rng.randint(-9, 9) for _ in range(3))
            p, q, w = r * x, s * x, t * x
            if rx_combine(x, rx_combine(x, p, q, "times"), w, "times") != rx_combine(
                x, p, rx_combine(x, q, w, "times"), "times"
            ):
                return CriterionResult(11, "line-ring", False, "associativity failed")
            if rx_combine(x, p, q, "times") != rx_combine(x, q, p, "times"):
                return CriterionResult(11, "line-ring", False, "commutativity failed")
            if rx_combine(x, p, rx_combine(x, q, w, "plus"), "times") != rx_combine(
                x,
                rx_combine(x, p, q, "times"),
                rx_combine(x, p, w, "times"),
                "plus",
            ):
                return CriterionResult(11, "line-ring", False, "distributivity failed")
            if rx_combine(x, p, x, "times") != p:
                return CriterionResult(11, "line-ring", False, "identity failed")
            if rx_combine(x, p, q, "times") != (r * s) * x or rx_combine(
                x, p, q, "plus"
            ) != (r + s) * x:
                return CriterionResult(11, "line-ring", False, "isomorphism failed")
    for i in range(300):
        x = random_element(rng, algebra, 3)
        y = random_element(rng, algebra, 3)
        r = rng.randint(-9, 9)
        x_prime = r * x
        y_prime = transport(x, x_prime, y)
        if y_prime is None or transport(y, y_prime, x) != x_prime:
            return CriterionResult(11, "line-ring", False, "transport round-trip failed")
        if in_Rz(y_prime, y) != algebra.coerce(r):
            return CriterionResult(11, "line-ring", False, "transport scalar mismatch")
    return CriterionResult(
        11, "line-ring", True, "ring laws on 3 lines x 300 points; 300 transport round-trips"
    )


def criterion_12(seed: int) -> CriterionResult:
    rng = _rng(seed, "cli")
    for i in range(1000):
        letters = "ab" if i % 2 else "abc"
        ast = random_chain_ast(rng, letters) if i % 5 == 0 else random_expr_ast(rng, letters)
        text = E.print_expr(ast)
        reparsed = E.parse_expr(text)
        if reparsed != ast:
            return CriterionResult(12, "cli-roundtrip", False, "AST round-trip failed: %s" % text)
        algebra = LieAlgebra(letters, "Q")
        if normal_form(reparsed, algebra) != normal_form(ast, algebra):
            return CriterionResult(12, "cli-roundtrip", False, "normal forms diverged")
    for i in range(200):
        algebra = LieAlgebra("ab" if i % 2 else "abc", "Z" if i % 3 else "Q")
        element = random_element(rng, algebra, 4, nonzero=False)
        doc = element_to_json(element)
        text = json.dumps(doc)
        back = element_from_json(json.loads(text))
        if back != element or json.dumps(element_to_json(back)) != text:
            return CriterionResult(12, "cli-roundtrip", False, "JSON round-trip failed")
    return CriterionResult(
        12, "cli-roundtrip", True, "1000 AST and 200 element JSON round-trips, bit-exact"
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(seed: int = 42, numbers=None):
    """Run the requested criteria (all by default) in numeric order."""
    selected = sorted(CRITERIA) if numbers is None else sorted(set(numbers))
    results = []
    for number in selected:
        if number not in CRITERIA:
            raise ValueError("no criterion %r" % (number,))
        results.append(CRITERIA[number](seed))
    return results
