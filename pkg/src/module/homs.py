import logging
import random
from typing import Dict, Hashable, List, Optional
from src.linalg.matrix import EchelonBasis, Mat, kernel_basis, rank
from src.module.module import ModuleRep, Span, render_object

logger = logging.getLogger(__name__)

Morphism = Dict[Hashable, Mat]


def _matrix(mod: ModuleRep, idx: int) -> Optional[Mat]:
    return mod.acts.get(idx)


def hom_space(m: ModuleRep, n: ModuleRep) -> List[Morphism]:
    """
    Basis of Hom(m, n): families of maps m(Y) -> n(Y) commuting with the
    action of every generator, solved as one linear system.
    """
    algebra = m.algebra
    field = m.FIELD
    common = [obj for obj in m.support() if obj in n.dims]
    offset: Dict[Hashable, int] = {}
    total = 0
    for obj in common:
        offset[obj] = total
        total += n.dims[obj] * m.dims[obj]
    if not total:
        return []

    def var(obj, r, c):
        return offset[obj] + r * m.dims[obj] + c

    generators = set(algebra.generators())
    rows = []
    for y in m.support():
        for idx in algebra.out_of(y):
            if idx not in generators:
                continue
            z = algebra.BASIS[idx].target
            if z not in n.dims:
                continue
            mb, nb = _matrix(m, idx), _matrix(n, idx)
            for r in range(n.dims[z]):
                for c in range(m.dims[y]):
                    row = [field.zero] * total
                    if mb is not None and z in offset:
                        for k in range(m.dims[z]):
                            if mb.data[k][c] != field.zero:
                                row[var(z, r, k)] += mb.data[k][c]
                    if nb is not None and y in offset:
                        for k in range(n.dims[y]):
                            if nb.data[r][k] != field.zero:
                                row[var(y, k, c)] -= nb.data[r][k]
                    if any(a != field.zero for a in row):
                        rows.append(row)
    if rows:
        solutions = kernel_basis(Mat.from_rows(field, rows, total))
    else:
        solutions = [[field.one if i == k else field.zero for i in range(total)] for k in range(total)]
    basis = []
    for vec in solutions:
        phi = {}
        for obj in common:
            data = [
                [vec[var(obj, r, c)] for c in range(m.dims[obj])] for r in range(n.dims[obj])
            ]
            phi[obj] = Mat(field, n.dims[obj], m.dims[obj], data)
        basis.append(phi)
    return basis


def combine(field, basis: List[Morphism], coefficients: list) -> Morphism:
    out: Morphism = {}
    for phi, c in zip(basis, coefficients):
        for obj, mat in phi.items():
            out[obj] = out[obj] + mat.scale(c) if obj in out else mat.scale(c)
    return out


def _random_member(field, basis: List[Morphism], rng: random.Random) -> Morphism:
    return combine(field, basis, [field.of(rng.randint(1, 997)) for _ in basis])


def intertwines(m: ModuleRep, n: ModuleRep, phi: Morphism) -> bool:
    """Check phi against every non-unit basis element acting on either module."""
    field = m.FIELD
    indices = sorted(set(m.active()) | set(n.active()) | _crossing(m, n))
    for idx in indices:
        b = m.algebra.BASIS[idx]
        y, z = b.source, b.target
        left = Mat.zeros(field, n.dim_at(z), m.dim_at(y))
        right = Mat.zeros(field, n.dim_at(z), m.dim_at(y))
        mb, nb = _matrix(m, idx), _matrix(n, idx)
        if mb is not None and z in phi:
            left = phi[z] @ mb
        if nb is not None and y in phi:
            right = nb @ phi[y]
        if left != right:
            return False
    return True


def _crossing(m: ModuleRep, n: ModuleRep) -> set:
    out = set()
    for y in m.support():
        for idx in m.algebra.out_of(y):
            if not m.algebra.is_unit(idx) and m.algebra.BASIS[idx].target in n.dims:
                out.add(idx)
    return out


def find_isomorphism(m: ModuleRep, n: ModuleRep, rng: random.Random, attempts: int = 4) -> Optional[Morphism]:
    """
    Random member of Hom(m, n) that is invertible at every object, or None.

    The search is probabilistic: None after the attempts means no draw was
    invertible, which over a small prime field is not a proof that none exists.
    """
    if m.dims != n.dims:
        return None
    basis = hom_space(m, n)
    if not basis:
        return None
    for _ in range(m.FIELD.search_attempts(attempts)):
        phi = _random_member(m.FIELD, basis, rng)
        if all(rank(phi[obj]) == d for obj, d in m.dims.items()):
            return phi
    return None


def find_surjection(m: ModuleRep, n: ModuleRep, rng: random.Random, attempts: int = 4) -> Optional[Morphism]:
    """Random member of Hom(m, n) that is onto at every object; probabilistic like find_isomorphism."""
    if any(obj not in m.dims for obj in n.dims):
        return None
    basis = hom_space(m, n)
    if not basis:
        return None
    for _ in range(m.FIELD.search_attempts(attempts)):
        phi = _random_member(m.FIELD, basis, rng)
        if all(rank(phi[obj]) == d for obj, d in n.dims.items()):
            return phi
    return None


def kernel(m: ModuleRep, phi: Morphism) -> Span:
    """Kernel of phi as spans inside m."""
    spans = {}
    for obj, d in m.dims.items():
        span = EchelonBasis(m.FIELD, d)
        if obj in phi:
            span.extend(kernel_basis(phi[obj]))
        else:
            span.extend([m.FIELD.one if i == k else m.FIELD.zero for i in range(d)] for k in range(d))
        spans[obj] = span
    return spans


def render_morphism(phi: Morphism) -> dict:
    return {render_object(obj): mat.render() for obj, mat in phi.items()}
