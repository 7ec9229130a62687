import logging
from typing import List
from src.borel.subalgebra import SubalgebraEmbedding
from src.envelope.category import WindowedCategory
from src.linalg.matrix import Mat, rank
from src.models.models import Certificate, Verdict
from src.module.module import render_object

logger = logging.getLogger(__name__)


def triangular_decomposition(
    c: WindowedCategory, upper: SubalgebraEmbedding, lower: SubalgebraEmbedding, digest: str = ""
) -> Certificate:
    """
    For every pair of interior objects X, Z the multiplication map
    sum over Y of upper(Y, Z) (x) lower(X, Y) -> c(X, Z), b (x) beta -> b beta,
    is bijective: the tensor product over the units has the dimension of the
    hom space and the map has full rank. The tensor product is balanced over
    the units, so it splits as a sum over intermediate objects.
    """
    field = c.FIELD
    interior = c.interior_objects()
    slots: List[dict] = []
    failures: List[dict] = []
    for x in interior:
        for z in interior:
            target = c.hom(x, z)
            columns = []
            for y in c.OBJECTS:
                for beta in lower.sub.hom(x, y):
                    for b in upper.sub.hom(y, z):
                        product = c.multiply(upper.indices[b], lower.indices[beta])
                        columns.append(c.local(product, x, z))
            if not target and not columns:
                continue
            image_rank = rank(Mat.from_columns(field, columns, len(target))) if columns and target else 0
            slot = {
                "source": render_object(x),
                "target": render_object(z),
                "dim": len(target),
                "domain": len(columns),
                "rank": image_rank,
            }
            slots.append(slot)
            if not (len(columns) == len(target) == image_rank):
                failures.append(slot)
    passed = not failures
    logger.info("triangular decomposition of %s: %d slots, %d failures", c.name, len(slots), len(failures))
    return Certificate(
        claim="triangular_decomposition",
        target=c.kind,
        input_digest=digest,
        header={**c.header(), "upper": upper.describe(), "lower": lower.describe()},
        witnesses=[{"slots": slots, "failures": failures}],
        notes=["bijectivity of multiplication also witnesses freeness of the ambient over the lower subalgebra"],
        verdict=Verdict.PASS.value if passed else Verdict.FAIL.value,
    )
