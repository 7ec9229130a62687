import logging
import random
from typing import Dict, List
from src.algebra.algebra import same_structure
from src.envelope.category import WindowedCategory, build_B, build_C, reduce_into_slot, slot_cutoff
from src.envelope.window import Window
from src.models.base_errors import PreconditionError

logger = logging.getLogger(__name__)


def band_violations(c: WindowedCategory) -> List[list]:
    out = []
    for x, y in c.blocks():
        if abs(x[1] - y[1]) >= c.N:
            out.append([list(x), list(y)])
    return out


def shift_check(c: WindowedCategory) -> bool:
    """Shifting every level by one preserves hom dimensions and structure constants inside the window."""
    hi = c.window.hi
    for (x, y) in c.blocks():
        if max(x[1], y[1]) >= hi:
            continue
        block = c.hom(x, y)
        moved = c.hom((x[0], x[1] + 1), (y[0], y[1] + 1))
        if len(block) != len(moved):
            return False
        if any(c.shifted(idx, 1) is None for idx in block):
            return False
    for u, v in c.composable_pairs():
        bu, bv = c.BASIS[u], c.BASIS[v]
        if max(bu.target[1], bv.source[1], bv.target[1]) >= hi:
            continue
        su, sv = c.shifted(u, 1), c.shifted(v, 1)
        expected = {c.shifted(k, 1): coeff for k, coeff in c.multiply(u, v).items()}
        if c.multiply(su, sv) != expected:
            return False
    return True


def lift_independence(c: WindowedCategory, limit: int, rng: random.Random) -> List[list]:
    """
    Replacing the lift of a quotient-slot factor by another lift of the same
    class must not change the reduced product.
    """
    a = c.filtration.ALGEBRA
    f = c.filtration
    pairs = [
        (u, v)
        for u, v in c.composable_pairs()
        if c.BASIS[u].origin[0] == "C" and c.BASIS[v].origin[0] == "C"
        and (_is_lower(c, u) or _is_lower(c, v))
    ]
    if len(pairs) > limit:
        pairs = rng.sample(pairs, limit)
    failures = []
    one = a.FIELD.one
    for u, v in pairs:
        _, p, _, k = c.BASIS[u].origin
        _, q, i, j = c.BASIS[v].origin
        expected = c.multiply(u, v)
        variants = []
        for z in _other_lifts(c, q, i, j):
            variants.append(a.product({p: one}, {q: one, z: one}))
        for z in _other_lifts(c, p, j, k):
            variants.append(a.product({p: one, z: one}, {q: one}))
        for product in variants:
            try:
                image = reduce_into_slot(c, product, i, k)
            except PreconditionError:
                image = None
            if image != expected:
                failures.append([c.BASIS[u].label, c.BASIS[v].label])
                break
    return failures


def _is_lower(c: WindowedCategory, idx: int) -> bool:
    _, _, i, j = c.BASIS[idx].origin
    return j < i


def _other_lifts(c: WindowedCategory, w: int, i: int, j: int) -> List[int]:
    """Elements of I_cutoff in the A-block of w, for a quotient slot i -> j."""
    if j >= i:
        return []
    f = c.filtration
    a = f.ALGEBRA
    _, high = slot_cutoff(f, i, j)
    b = a.BASIS[w]
    return [z for z in a.hom(b.source, b.target) if f.level(z) >= high]


def ideal_check(c: WindowedCategory, half_width: int = None) -> Dict[str, bool]:
    """
    On a small window of the unreduced model: J absorbs products from both
    sides and the quotient by J has the structure constants of C.
    """
    f = c.filtration
    width = half_width if half_width is not None else f.N
    window = Window.around(width, f.N)
    b, ideal = build_B(f.ALGEBRA, f, window)
    members = set(ideal)
    absorbing = True
    for u, v in b.composable_pairs():
        if u in members or v in members:
            if any(w not in members for w in b.multiply(u, v)):
                absorbing = False
                break
    small = build_C(f.ALGEBRA, f, window)
    quotient = b.without([b.BASIS[idx].label for idx in ideal])
    identity = {e.label: e.label for e in quotient.BASIS}
    return {"ideal": absorbing, "quotient_matches": same_structure(quotient, small, identity)}


def structural_suite(c: WindowedCategory, limit: int, rng: random.Random) -> Dict[str, object]:
    results: Dict[str, object] = {
        "band": not band_violations(c),
        "associativity": not c.associativity_failures(limit, rng),
        "units": c.units_neutral(),
        "shift": shift_check(c),
        "lift_independence": not lift_independence(c, limit, rng),
    }
    if c.kind == "C":
        results.update(ideal_check(c))
    logger.info("structural suite on %s: %s", c.name, results)
    return results
