import logging
import random
from typing import Dict, List, Tuple
from src.algebra.extensions import dual_tables, trivial_extension
from src.envelope.category import WindowedCategory

logger = logging.getLogger(__name__)


def restricted_dual(c: WindowedCategory) -> Dict[tuple, dict]:
    """
    Bimodule action on the dual of every hom block, indexed like the trivial
    extension: dual of basis element w has index c.DIM + w.
    """
    return dual_tables(c)


def check_dual_action(c: WindowedCategory, table: Dict[tuple, dict], limit: int, rng: random.Random) -> List[tuple]:
    """
    Compare (a f b)(x) with f(b x a) on composable triples (a, w, b) for f the
    dual of w. Returns the failing triples as label lists.
    """
    n = c.DIM
    one = c.FIELD.one
    zero = c.FIELD.zero

    def act(left: dict, right: dict) -> dict:
        out: dict = {}
        for u, x in left.items():
            for v, y in right.items():
                for k, coeff in table.get((u, v), {}).items():
                    value = out.get(k, zero) + x * y * coeff
                    if value == zero:
                        out.pop(k, None)
                    else:
                        out[k] = value
        return out

    triples: List[Tuple[int, int, int]] = []
    for w, bw in enumerate(c.BASIS):
        for a in c.out_of(bw.source):
            for b in c.into(bw.target):
                triples.append((a, w, b))
    if len(triples) > limit:
        triples = rng.sample(triples, limit)
    failures = []
    for a, w, b in triples:
        functional = act(act({a: one}, {n + w: one}), {b: one})
        ba, bb = c.BASIS[a], c.BASIS[b]
        for x in c.hom(ba.target, bb.source):
            expected = c.product({b: one}, c.product({x: one}, {a: one})).get(w, zero)
            if functional.get(n + x, zero) != expected:
                failures.append([c.BASIS[a].label, c.BASIS[w].label, c.BASIS[b].label])
                break
    return failures


def build_D(c: WindowedCategory, name: str = "") -> WindowedCategory:
    """Windowed trivial extension C + C* with the canonical symmetric form attached."""
    te = trivial_extension(c, c.N)
    d = WindowedCategory(
        c.FIELD,
        c.OBJECTS,
        te.BASIS,
        te.TABLE,
        c.UNITS,
        name or f"D({c.base.name})",
        c.window,
        c.base,
        c.filtration,
        "D",
        c.untilded,
    )
    d.form = {c.DIM + idx: c.FIELD.one for idx in c.UNITS.values()}
    logger.info("built %s: dim %d", d.name, d.DIM)
    return d
