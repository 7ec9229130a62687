import logging
import random
from typing import List, Optional, Tuple
from src.algebra.algebra import FiniteDimAlgebra, Vector
from src.algebra.filtration import IdealFiltration
from src.linalg.matrix import EchelonBasis, Mat, kernel_basis, rank
from src.models.m_errors import ModuleErrors
from src.models.base_errors import Degenerate, NotSymmetric

logger = logging.getLogger(__name__)


class TraceForm:
    """Bilinear form (u, v) = lambda(u v) with its Gram matrix on the basis."""

    def __init__(self, algebra: FiniteDimAlgebra, functional: Vector, gram: Mat):
        self.algebra = algebra
        self.functional = functional
        self.gram = gram

    def value(self, vec: Vector):
        zero = self.algebra.FIELD.zero
        total = zero
        for idx, c in vec.items():
            total += c * self.functional.get(idx, zero)
        return total

    def pair(self, u: int, v: int):
        return self.gram.data[u][v]

    def rendered_functional(self) -> dict:
        return {self.algebra.BASIS[i].label: self.algebra.FIELD.render(c) for i, c in sorted(self.functional.items())}


def gram_matrix(a: FiniteDimAlgebra, functional: Vector) -> Mat:
    field = a.FIELD
    gram = Mat.zeros(field, a.DIM, a.DIM)
    for (u, v), w in a.TABLE.items():
        total = field.zero
        for idx, c in w.items():
            total += c * functional.get(idx, field.zero)
        gram.data[u][v] = total
    return gram


def check_symmetric(a: FiniteDimAlgebra, functional: Vector, limit: int = 10000, rng: random.Random = None) -> TraceForm:
    """
    Certify that lambda(u v) is a symmetric, associative, nondegenerate form.

    Raises:
        NotSymmetric: with the first asymmetric basis pair.
        Degenerate: with a vector of the radical of the form.
    """
    rng = rng or random.Random(0)
    gram = gram_matrix(a, functional)
    form = TraceForm(a, functional, gram)
    labels = [b.label for b in a.BASIS]
    for u in range(a.DIM):
        for v in range(u + 1, a.DIM):
            if gram.data[u][v] != gram.data[v][u]:
                raise NotSymmetric(
                    ModuleErrors.NOT_SYMMETRIC.value.format(u=labels[u], v=labels[v]),
                    {"pair": [labels[u], labels[v]]},
                )
    one = a.FIELD.one
    for u, v, w in a.triples(limit, rng):
        left = form.value(a.product(a.multiply(u, v), {w: one}))
        right = form.value(a.product({u: one}, a.multiply(v, w)))
        if left != right:
            raise NotSymmetric(
                ModuleErrors.NOT_SYMMETRIC.value.format(u=labels[u], v=labels[w]),
                {"triple": [labels[u], labels[v], labels[w]]},
            )
    radical = kernel_basis(gram)
    if radical:
        vector = {labels[k]: a.FIELD.render(c) for k, c in enumerate(radical[0]) if c != a.FIELD.zero}
        raise Degenerate(ModuleErrors.DEGENERATE.value.format(vector=vector), {"radical_vector": vector})
    logger.debug("form on %s certified", a.name)
    return form


def symmetric_functionals(a: FiniteDimAlgebra) -> List[Vector]:
    """Basis of the functionals with lambda(u v) = lambda(v u) for all basis pairs."""
    field = a.FIELD
    rows = []
    for u in range(a.DIM):
        for v in range(u, a.DIM):
            row = [field.zero] * a.DIM
            for idx, c in a.multiply(u, v).items():
                row[idx] += c
            for idx, c in a.multiply(v, u).items():
                row[idx] -= c
            if any(c != field.zero for c in row):
                rows.append(row)
    if not rows:
        basis = [[field.one if i == k else field.zero for i in range(a.DIM)] for k in range(a.DIM)]
    else:
        basis = kernel_basis(Mat.from_rows(field, rows, a.DIM))
    return [{k: c for k, c in enumerate(vec) if c != field.zero} for vec in basis]


def find_symmetric_form(a: FiniteDimAlgebra, rng: random.Random, attempts: int = 8) -> Optional[TraceForm]:
    """Nondegenerate random combination of the symmetric functionals; None is not a proof over a small prime field."""
    field = a.FIELD
    candidates = symmetric_functionals(a)
    if not candidates:
        return None
    for attempt in range(field.search_attempts(attempts)):
        functional: Vector = {}
        for vec in candidates:
            scale = field.of(1 if attempt == 0 and len(candidates) == 1 else rng.randint(1, 97))
            for idx, c in vec.items():
                value = functional.get(idx, field.zero) + scale * c
                if value == field.zero:
                    functional.pop(idx, None)
                else:
                    functional[idx] = value
        gram = gram_matrix(a, functional)
        if rank(gram) == a.DIM:
            return TraceForm(a, functional, gram)
    return None


def check_pairing_condition(a: FiniteDimAlgebra, f: IdealFiltration, t: TraceForm) -> Tuple[bool, Optional[int]]:
    """
    For every j, I_{N-j} must be the orthogonal complement of I_j and pair
    nondegenerately with lifts of A/I_j. Returns (ok, first failing j).
    """
    field = a.FIELD
    N = f.N
    for j in range(N + 1):
        inner = f.layer(j)
        complement = f.layer(N - j)
        lifts = [idx for idx in range(a.DIM) if f.level(idx) < j]
        if inner:
            rows = [[t.gram.data[v][w] for v in range(a.DIM)] for w in inner]
            perp = EchelonBasis(field, a.DIM).extend(kernel_basis(Mat.from_rows(field, rows, a.DIM)))
        else:
            perp = EchelonBasis(field, a.DIM).extend(
                [field.one if i == k else field.zero for i in range(a.DIM)] for k in range(a.DIM)
            )
        expected = EchelonBasis(field, a.DIM).extend(
            [field.one if i == k else field.zero for i in range(a.DIM)] for k in complement
        )
        if not perp.same_span(expected):
            return False, j
        if len(lifts) != len(complement):
            return False, j
        if lifts:
            block = Mat.from_rows(field, [[t.gram.data[u][w] for w in complement] for u in lifts], len(complement))
            if rank(block) != len(lifts):
                return False, j
    return True, None
