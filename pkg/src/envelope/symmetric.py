import logging
import random
from typing import Dict, List
from src.algebra.algebra import Vector
from src.algebra.forms import TraceForm, check_pairing_condition
from src.envelope.category import WindowedCategory
from src.linalg.matrix import Mat, rank
from src.module.module import render_object
from src.models.m_errors import EnvelopeErrors, ModuleErrors
from src.models.base_errors import FormDegenerate, NotSymmetric, PairingFailed

logger = logging.getLogger(__name__)


def _value(c: WindowedCategory, functional: Vector, vec: Vector):
    zero = c.FIELD.zero
    total = zero
    for idx, coeff in vec.items():
        total += coeff * functional.get(idx, zero)
    return total


def certify_form(c: WindowedCategory, functional: Vector, limit: int, rng: random.Random) -> dict:
    """
    Certify lambda(u v) on every pair of opposite hom blocks touching an
    interior object: symmetric, associative on sampled triples and
    nondegenerate block by block.

    Raises:
        NotSymmetric: on the first asymmetric pair or triple.
        FormDegenerate: with the offending slot pair.
    """
    field = c.FIELD
    ranks: List[dict] = []
    seen = set()
    for x in c.interior_objects():
        for y in c.OBJECTS:
            if (y, x) in seen:
                continue
            seen.add((x, y))
            forward, backward = c.hom(x, y), c.hom(y, x)
            if not forward and not backward:
                continue
            gram = Mat.zeros(field, len(forward), len(backward))
            for r, u in enumerate(forward):
                for s, v in enumerate(backward):
                    value = _value(c, functional, c.multiply(u, v))
                    if value != _value(c, functional, c.multiply(v, u)):
                        raise NotSymmetric(
                            ModuleErrors.NOT_SYMMETRIC.value.format(u=c.BASIS[u].label, v=c.BASIS[v].label),
                            {"pair": [c.BASIS[u].label, c.BASIS[v].label]},
                        )
                    gram.data[r][s] = value
            pair = [render_object(x), render_object(y)]
            if len(forward) != len(backward) or rank(gram) != len(forward):
                raise FormDegenerate(EnvelopeErrors.FORM_DEGENERATE.value.format(pair=pair), {"pair": pair})
            ranks.append({"pair": pair, "rank": len(forward)})
    one = field.one
    for u, v, w in c.triples(limit, rng):
        left = _value(c, functional, c.product(c.multiply(u, v), {w: one}))
        right = _value(c, functional, c.product({u: one}, c.multiply(v, w)))
        if left != right:
            labels = [c.BASIS[k].label for k in (u, v, w)]
            raise NotSymmetric(
                ModuleErrors.NOT_SYMMETRIC.value.format(u=labels[0], v=labels[2]), {"triple": labels}
            )
    logger.info("form on %s nondegenerate on %d slot pairs", c.name, len(ranks))
    return {"slot_pairs": len(ranks), "ranks": ranks}


def form_on_C(c: WindowedCategory, t: TraceForm, limit: int, rng: random.Random) -> dict:
    """Attach (a_ij, b_kl) = [j = k][i = l] lambda(a b) to C after checking the pairing condition."""
    f = c.filtration
    ok, failing = check_pairing_condition(f.ALGEBRA, f, t)
    if not ok:
        raise PairingFailed(EnvelopeErrors.PAIRING.value.format(index=failing), {"j": failing})
    functional: Dict[int, object] = {}
    for idx, b in enumerate(c.BASIS):
        kind, w, i, j = b.origin
        if kind == "C" and i == j and w in t.functional:
            functional[idx] = t.functional[w]
    c.form = functional
    return certify_form(c, functional, limit, rng)


def form_on_D(d: WindowedCategory, limit: int, rng: random.Random) -> dict:
    """The canonical form ((a, f), (b, g)) = f(b) + g(a) attached by build_D."""
    return certify_form(d, d.form, limit, rng)
