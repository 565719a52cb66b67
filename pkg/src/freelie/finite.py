"""Scalar rings of finite bilinear instances over prime fields.

An instance is the structure-constant tensor of a bilinear map
``f: M1 x M2 -> N`` over F_p, required to be non-degenerate and onto.
The scalar ring is computed two independent ways: linear algebra
(symmetric pairs cut down by the relation-kernel closure, with the N-side
action solved from a spanning set) and plain exhaustive enumeration of
all matrix triples satisfying the defining identity
``f(A x, y) = f(x, B y) = S f(x, y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .core import LieAlgebra, _signed_pair
from .errors import (
    CommutativeAlgebraError,
    ConsistencyError,
    InstanceError,
    SizeGuardError,
)

_BRUTE_GUARD = 2**24
_RING_SIZE_GUARD = 2**12


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FiniteBilinearInstance:
    """Structure constants of a non-degenerate onto bilinear map over F_p.

    ``tensor[i][j]`` is the coordinate vector of ``f(e_i, e_j)`` in N.
    """

    p: int
    d1: int
    d2: int
    dN: int
    tensor: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InstanceError("modulus %r is not prime" % (self.p,))
        if min(self.d1, self.d2, self.dN) < 1:
            raise InstanceError("dimensions must be positive")
        if len(self.tensor) != self.d1 or any(
            len(row) != self.d2 for row in self.tensor
        ):
            raise InstanceError("tensor shape does not match (d1, d2)")
        for row in self.tensor:
            for vec in row:
                if len(vec) != self.dN or any(
                    not isinstance(v, int) or not 0 <= v < self.p for v in vec
                ):
                    raise InstanceError("tensor entries must lie in F_p^dN")
        self._validate()

    def _validate(self):
        # left annihilator: x with f(x, e_j) = 0 for all j
        left_rows = [
            [self.tensor[i][j][n] for i in range(self.d1)]
            for j in range(self.d2)
            for n in range(self.dN)
        ]
        if linalg.nullspace_mod(left_rows, self.p, self.d1):
            raise InstanceError("degenerate instance: nonzero left annihilator")
        right_rows = [
            [self.tensor[i][j][n] for j in range(self.d2)]
            for i in range(self.d1)
            for n in range(self.dN)
        ]
        if linalg.nullspace_mod(right_rows, self.p, self.d2):
            raise InstanceError("degenerate instance: nonzero right annihilator")
        span = [list(self.tensor[i][j]) for i in range(self.d1) for j in range(self.d2)]
        if linalg.rank_mod(span, self.p) != self.dN:
            raise InstanceError("instance is not onto: values do not span N")

    def value(self, i: int, j: int):
        return list(self.tensor[i][j])

    def apply(self, x, y):
        """f(x, y) for coordinate vectors x, y."""
        out = [0] * self.dN
        for i in range(self.d1):
            if not x[i]:
                continue
            for j in range(self.d2):
                if not y[j]:
                    continue
                c = x[i] * y[j]
                vec = self.tensor[i][j]
                for n in range(self.dN):
                    out[n] = (out[n] + c * vec[n]) % self.p
        return out

    def left_images(self, a):
        """All f(A e_i, e_j) for a matrix A acting on M1."""
        return [
            [
                [
                    sum(a[r][i] * self.tensor[r][j][n] for r in range(self.d1)) % self.p
                    for n in range(self.dN)
                ]
                for j in range(self.d2)
            ]
            for i in range(self.d1)
        ]

    def right_images(self, b):
        """All f(e_i, B e_j) for a matrix B acting on M2."""
        return [
            [
                [
                    sum(b[r][j] * self.tensor[i][r][n] for r in range(self.d2)) % self.p
                    for n in range(self.dN)
                ]
                for j in range(self.d2)
            ]
            for i in range(self.d1)
        ]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d1": self.d1,
            "d2": self.d2,
            "dN": self.dN,
            "tensor": [[list(vec) for vec in row] for row in self.tensor],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteBilinearInstance":
        try:
            tensor = tuple(
                tuple(tuple(int(v) for v in vec) for vec in row)
                for row in data["tensor"]
            )
            return cls(
                p=int(data["p"]),
                d1=int(data["d1"]),
                d2=int(data["d2"]),
                dN=int(data["dN"]),
                tensor=tensor,
            )
        except (KeyError, TypeError, ValueError):
            raise InstanceError("malformed instance object") from None


@dataclass(frozen=True)
class ScalarTriple:
    """Matrices ``(A, B, S)`` with ``f(Ax, y) = f(x, By) = S f(x, y)``."""

    A: tuple
    B: tuple
    sigma: tuple

    def key(self):
        return (
            tuple(v for row in self.A for v in row),
            tuple(v for row in self.B for v in row),
            tuple(v for row in self.sigma for v in row),
        )

    def satisfies(self, instance: FiniteBilinearInstance) -> bool:
        p = instance.p
        left = instance.left_images([list(r) for r in self.A])
        right = instance.right_images([list(r) for r in self.B])
        for i in range(instance.d1):
            for j in range(instance.d2):
                expected = linalg.mat_vec_mod(
                    [list(r) for r in self.sigma], instance.value(i, j), p
                )
                if left[i][j] != expected or right[i][j] != expected:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "A": [list(r) for r in self.A],
            "B": [list(r) for r in self.B],
            "sigma": [list(r) for r in self.sigma],
        }


def _freeze(matrix) -> tuple:
    return tuple(tuple(row) for row in matrix)


@dataclass(frozen=True)
class FiniteRingTable:
    """A finite commutative unital ring of scalar triples, with tables."""

    p: int
    triples: tuple
    add: tuple
    mul: tuple

    @property
    def size(self) -> int:
        return len(self.triples)

    def index(self, triple: ScalarTriple) -> int:
        return self._lookup()[triple.key()]

    def _lookup(self):
        return {t.key(): i for i, t in enumerate(self.triples)}

    def identity_index(self) -> int:
        n1 = len(self.triples[0].A)
        n2 = len(self.triples[0].B)
        nn = len(self.triples[0].sigma)
        ident = (
            tuple(v for row in linalg.identity_mod(n1) for v in row),
            tuple(v for row in linalg.identity_mod(n2) for v in row),
            tuple(v for row in linalg.identity_mod(nn) for v in row),
        )
        return self._lookup()[ident]

    def same_elements(self, other: "FiniteRingTable") -> bool:
        return self.p == other.p and [t.key() for t in self.triples] == [
            t.key() for t in other.triples
        ]

    def __eq__(self, other):
        return isinstance(other, FiniteRingTable) and self.same_elements(other)

    __hash__ = None

    def is_prime_field(self) -> bool:
        """True when the table is isomorphic to F_p via n -> n * identity."""
        if self.size != self.p:
            return False
        try:
            one = self.identity_index()
        except KeyError:
            return False
        reps = [None] * self.p
        zero = next(
            i
            for i, t in enumerate(self.triples)
            if all(v == 0 for part in t.key() for v in part)
        )
        reps[0] = zero
        current = zero
        for n in range(1, self.p):
            current = self.add[current][one]
            reps[n] = current
        if sorted(reps) != list(range(self.size)):
            return False
        for n in range(self.p):
            for m in range(self.p):
                if self.add[reps[n]][reps[m]] != reps[(n + m) % self.p]:
                    return False
                if self.mul[reps[n]][reps[m]] != reps[(n * m) % self.p]:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "size": self.size,
            "triples": [t.to_json() for t in self.triples],
            "add": [list(row) for row in self.add],
            "mul": [list(row) for row in self.mul],
        }


def ring_table_from_triples(p: int, triples) -> FiniteRingTable:
    """Canonicalize a triple set and verify the ring structure.

    Checks closure under both operations, commutativity, associativity
    and the presence of the identity triple; any violation is a hard
    error since the constructions guarantee these properties.
    """
    unique = {t.key(): t for t in triples}
    ordered = tuple(unique[k] for k in sorted(unique))
    n = len(ordered)
    if n == 0:
        raise ConsistencyError("empty scalar ring")
    if n > _RING_SIZE_GUARD:
        raise SizeGuardError("scalar ring has %d elements (guard %d)" % (n, _RING_SIZE_GUARD))
    lookup = {t.key(): i for i, t in enumerate(ordered)}
    add = []
    mul = []
    for s in ordered:
        add_row = []
        mul_row = []
        for t in ordered:
            total = ScalarTriple(
                _freeze(linalg.mat_add_mod(s.A, t.A, p)),
                _freeze(linalg.mat_add_mod(s.B, t.B, p)),
                _freeze(linalg.mat_add_mod(s.sigma, t.sigma, p)),
            )
            product = ScalarTriple(
                _freeze(linalg.mat_mul_mod(s.A, t.A, p)),
                _freeze(linalg.mat_mul_mod(s.B, t.B, p)),
                _freeze(linalg.mat_mul_mod(s.sigma, t.sigma, p)),
            )
            try:
                add_row.append(lookup[total.key()])
                mul_row.append(lookup[product.key()])
            except KeyError:
                raise ConsistencyError("scalar ring is not closed") from None
        add.append(tuple(add_row))
        mul.append(tuple(mul_row))
    table = FiniteRingTable(p=p, triples=ordered, add=tuple(add), mul=tuple(mul))
    for i in range(n):
        for j in range(n):
            if table.mul[i][j] != table.mul[j][i]:
                raise ConsistencyError("scalar ring is not commutative")
    if n <= 256:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table.mul[table.mul[i][j]][k] != table.mul[i][table.mul[j][k]]:
                        raise ConsistencyError("scalar ring is not associative")
    try:
        table.identity_index()
    except KeyError:
        raise ConsistencyError("scalar ring is missing the identity triple") from None
    return table


def sym_space(instance: FiniteBilinearInstance):
    """Basis of the pairs ``(A, B)`` with ``f(Ax, y) = f(x, By)``."""
    p = instance.p
    d1, d2, dN = instance.d1, instance.d2, instance.dN
    ncols = d1 * d1 + d2 * d2
    rows = []
    for i in range(d1):
        for j in range(d2):
            for n in range(dN):
                row = [0] * ncols
                for r in range(d1):
                    row[r * d1 + i] = instance.tensor[r][j][n] % p
                for r in range(d2):
                    row[d1 * d1 + r * d2 + j] = (-instance.tensor[i][r][n]) % p
                rows.append(row)
    basis = []
    for vec in linalg.nullspace_mod(rows, p, ncols):
        a = [vec[r * d1 : (r + 1) * d1] for r in range(d1)]
        b = [vec[d1 * d1 + r * d2 : d1 * d1 + (r + 1) * d2] for r in range(d2)]
        basis.append((_freeze(a), _freeze(b)))
    return basis


def _relation_kernel(instance: FiniteBilinearInstance):
    """Kernel of ``c -> sum c_ij f(e_i, e_j)`` over F_p."""
    rows = [
        [instance.tensor[i][j][n] for i in range(instance.d1) for j in range(instance.d2)]
        for n in range(instance.dN)
    ]
    return linalg.nullspace_mod(rows, instance.p, instance.d1 * instance.d2)


def _spanning_pairs(instance: FiniteBilinearInstance):
    """Pairs (i, j) whose values form a basis of N, greedily chosen."""
    chosen = []
    rows = []
    for i in range(instance.d1):
        for j in range(instance.d2):
            candidate = rows + [instance.value(i, j)]
            if linalg.rank_mod(candidate, instance.p) > len(rows):
                rows = candidate
                chosen.append((i, j))
                if len(rows) == instance.dN:
                    return chosen
    raise ConsistencyError("onto instance has no spanning value set")


def _sigma_for(instance: FiniteBilinearInstance, a):
    """The N-side matrix induced by A, solved from a spanning value set."""
    pairs = _spanning_pairs(instance)
    span = [[instance.value(i, j)[n] for (i, j) in pairs] for n in range(instance.dN)]
    left = instance.left_images([list(r) for r in a])
    images = [[left[i][j][n] for (i, j) in pairs] for n in range(instance.dN)]
    inv = linalg.mat_inverse_mod(span, instance.p)
    if inv is None:
        raise ConsistencyError("spanning value set is singular")
    return linalg.mat_mul_mod(images, inv, instance.p)


def psw_space(instance: FiniteBilinearInstance) -> FiniteRingTable:
    """The scalar ring computed by linear algebra.

    Symmetric pairs are intersected with the relation-kernel closure
    (whenever ``sum c_ij f(e_i,e_j) = 0``, also
    ``sum c_ij f(A e_i, e_j) = 0``); the N-side matrix is then solved
    from a spanning set of values and the defining identity is verified
    on every basis pair before the ring is assembled.
    """
    p = instance.p
    sym = sym_space(instance)
    if not sym:
        raise ConsistencyError("symmetric space lost the identity pair")
    images = [instance.left_images([list(r) for r in a]) for a, _ in sym]
    rows = []
    for c in _relation_kernel(instance):
        for n in range(instance.dN):
            rows.append(
                [
                    sum(
                        c[i * instance.d2 + j] * images[s][i][j][n]
                        for i in range(instance.d1)
                        for j in range(instance.d2)
                    )
                    % p
                    for s in range(len(sym))
                ]
            )
    coords = linalg.nullspace_mod(rows, p, len(sym)) if rows else [
        [1 if i == s else 0 for i in range(len(sym))] for s in range(len(sym))
    ]
    if p ** len(coords) > _RING_SIZE_GUARD:
        raise SizeGuardError(
            "scalar ring would have %d elements (guard %d)"
            % (p ** len(coords), _RING_SIZE_GUARD)
        )
    triples = []
    for combo in itertools.product(range(p), repeat=len(coords)):
        a = [[0] * instance.d1 for _ in range(instance.d1)]
        b = [[0] * instance.d2 for _ in range(instance.d2)]
        for c, vec in zip(combo, coords):
            if not c:
                continue
            for s, weight in enumerate(vec):
                w = (c * weight) % p
                if not w:
                    continue
                sa, sb = sym[s]
                for r in range(instance.d1):
                    for t in range(instance.d1):
                        a[r][t] = (a[r][t] + w * sa[r][t]) % p
                for r in range(instance.d2):
                    for t in range(instance.d2):
                        b[r][t] = (b[r][t] + w * sb[r][t]) % p
        sigma = _sigma_for(instance, a)
        triple = ScalarTriple(_freeze(a), _freeze(b), _freeze(sigma))
        if not triple.satisfies(instance):
            raise ConsistencyError(
                "induced N-side action failed the defining identity"
            )
        triples.append(triple)
    return ring_table_from_triples(p, triples)


def _all_matrices(n: int, p: int):
    cells = n * n
    for flat in itertools.product(range(p), repeat=cells):
        yield [list(flat[r * n : (r + 1) * n]) for r in range(n)]


def brute_force_psw(instance: FiniteBilinearInstance) -> FiniteRingTable:
    """Independent oracle: enumerate every matrix triple and filter."""
    p = instance.p
    count = p ** (instance.d1**2 + instance.d2**2 + instance.dN**2)
    if count > _BRUTE_GUARD:
        raise SizeGuardError(
            "brute force would enumerate %d triples (guard %d)" % (count, _BRUTE_GUARD)
        )
    triples = []
    for a in _all_matrices(instance.d1, p):
        left = instance.left_images(a)
        for b in _all_matrices(instance.d2, p):
            right = instance.right_images(b)
            if left != right:
                continue
            for sigma in _all_matrices(instance.dN, p):
                ok = True
                for i in range(instance.d1):
                    for j in range(instance.d2):
                        if (
                            linalg.mat_vec_mod(sigma, instance.value(i, j), p)
                            != left[i][j]
                        ):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    triples.append(
                        ScalarTriple(_freeze(a), _freeze(b), _freeze(sigma))
                    )
    return ring_table_from_triples(p, triples)


def truncated_free_lie_instance(
    k: int, p: int, max_degree: int
) -> FiniteBilinearInstance:
    """Bilinear instance of a degree-truncated free Lie algebra over F_p.

    Builds the algebra on ``k`` generators modulo degree > ``max_degree``,
    quotients out the annihilator on both sides and takes the bracket
    span as the target module.
    """
    if k < 2:
        raise CommutativeAlgebraError(
            "need at least 2 generators for a nonzero bracket span"
        )
    if max_degree < 2:
        raise InstanceError("truncation degree must be >= 2")
    if not _is_prime(p):
        raise InstanceError("modulus %r is not prime" % (p,))
    algebra = LieAlgebra("abcdefghij"[:k], "Z")
    words = algebra.basis_words_upto(max_degree)
    index = {w: i for i, w in enumerate(words)}
    dim = len(words)

    def bracket_vec(x, y):
        out = [0] * dim
        for i, wx in enumerate(words):
            if not x[i]:
                continue
            for j, wy in enumerate(words):
                if not y[j]:
                    continue
                c = x[i] * y[j]
                for w, n in _signed_pair(wx, wy).items():
                    if len(w) <= max_degree:
                        pos = index[w]
                        out[pos] = (out[pos] + c * n) % p
        return out

    def unit(i):
        return [1 if j == i else 0 for j in range(dim)]

    # annihilator: x with [x, w] = 0 (in the truncation) for every basis w
    ad_rows = []
    for j in range(dim):
        columns = [bracket_vec(unit(i), unit(j)) for i in range(dim)]
        for n in range(dim):
            ad_rows.append([columns[i][n] for i in range(dim)])
    ann = linalg.nullspace_mod(ad_rows, p, dim)
    _, ann_pivots = linalg._rref_mod(ann, p) if ann else ([], [])
    reps = [i for i in range(dim) if i not in ann_pivots]
    if not reps:
        raise ConsistencyError("annihilator swallowed the whole truncation")
    # bracket span: spanned by the degree >= 2 part
    span_words = [w for w in words if len(w) >= 2]
    span_index = {index[w]: n for n, w in enumerate(span_words)}
    products = []
    for i in reps:
        for j in reps:
            products.append(bracket_vec(unit(i), unit(j)))
    for vec in products:
        for pos, value in enumerate(vec):
            if value and pos not in span_index:
                raise ConsistencyError("bracket value outside the expected span")
    if linalg.rank_mod(
        [[vec[index[w]] for w in span_words] for vec in products], p
    ) != len(span_words):
        raise ConsistencyError("bracket values do not span the degree >= 2 part")
    tensor = tuple(
        tuple(
            tuple(
                bracket_vec(unit(i), unit(j))[index[w]] % p for w in span_words
            )
            for j in reps
        )
        for i in reps
    )
    return FiniteBilinearInstance(
        p=p, d1=len(reps), d2=len(reps), dN=len(span_words), tensor=tensor
    )
