import os
import random
import unittest
from ddt import ddt, data, unpack
from src.algebra.extensions import tilde_extension
from src.algebra.filtration import layer_vectors_from_labels, radical_filtration, validate_filtration
from src.algebra.paths import compute_basis
from src.borel.induction import compare_induced, induce_simple, induction_suite, projective_dimension_vectors
from src.borel.subalgebra import (
    SubalgebraEmbedding,
    build_B_graded,
    build_Bbar,
    build_tildeB,
    check_directed,
    line_corner,
)
from src.borel.triangular import triangular_decomposition
from src.envelope.category import build_C
from src.envelope.dual import build_D
from src.envelope.window import Window
from src.models.models import AlgebraPresentation, Verdict
from src.models.base_errors import FiltrationMismatch, SplittingNotClosed
from src.qh.order import Order
from src.utils.utils import load_model

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def _load(name: str):
    return compute_basis(load_model(os.path.join(CORPUS, "algebras", name), AlgebraPresentation))


def _envelope(name: str):
    a = _load(name)
    f = radical_filtration(a)
    return build_C(a, f, Window.around(4 * f.N, f.N))


def _dual_extension(name: str):
    t = tilde_extension(_load(name))
    f = t.filtration
    return build_D(build_C(f.ALGEBRA, f, Window.around(4 * f.N, f.N), untilded=t.untilded))


@ddt
class TestSubalgebras(unittest.TestCase):
    def test_dual_numbers_band(self):
        # Arrange
        c = _envelope("d.json")

        # Act
        tilde_b = build_tildeB(c)
        band = build_B_graded(c)

        # Assert
        self.assertEqual(tilde_b.direction, "descending")
        self.assertEqual(set(tilde_b.dims()), {-1, 0})
        self.assertEqual(band.direction, "ascending")
        self.assertEqual(set(band.dims()), {0, 1})
        self.assertIn(c.index("x[0>1]"), band.indices)
        self.assertNotIn(c.index("x[0>0]"), band.indices)

    @data(("first", "tildeB", "decreasing"), ("first", "B", "increasing"), ("second", "tildeB", "increasing"))
    @unpack
    def test_directed(self, base, which, direction):
        # Arrange
        c = _envelope("d.json")
        s = build_tildeB(c) if which == "tildeB" else build_B_graded(c)

        # Act
        result = check_directed(s.sub, Order(base, c))

        # Assert
        self.assertTrue(result[direction])
        self.assertTrue(result["directed"])

    def test_envelope_itself_is_not_directed(self):
        # Arrange
        c = _envelope("d.json")

        # Act
        result = check_directed(c, Order("first", c))

        # Assert
        self.assertFalse(result["directed"])

    def test_span_not_closed(self):
        # Arrange
        c = _envelope("d.json")
        indices = [c.index("x[0>1]"), c.index("e1[1>0]")]

        # Act / Assert
        with self.assertRaises(SplittingNotClosed):
            SubalgebraEmbedding(c, indices, "broken", "ascending")

    def test_file_filtration_is_not_graded(self):
        # Arrange
        a = _load("d.json")
        f = validate_filtration(a, layer_vectors_from_labels(a, [[{"x": "1"}]]))
        c = build_C(a, f, Window.around(4 * f.N, f.N))

        # Act / Assert
        with self.assertRaises(FiltrationMismatch):
            build_B_graded(c)

    def test_dual_band_on_trivial_extension(self):
        # Arrange
        t = tilde_extension(_load("k.json"))
        f = t.filtration
        d = build_D(build_C(f.ALGEBRA, f, Window.around(4 * f.N, f.N), untilded=t.untilded))

        # Act
        bbar = build_Bbar(d)

        # Assert
        self.assertEqual(bbar.direction, "ascending")
        self.assertTrue(any(d.BASIS[idx].origin[0] == "D" for idx in bbar.indices))
        self.assertTrue(check_directed(bbar.sub, Order("first", d))["directed"])

    @data("k.json", "d.json", "a2.json")
    def test_line_corner(self, name):
        # Arrange
        c = _envelope(name)
        tilde_b = build_tildeB(c)

        # Act
        corners = [line_corner(tilde_b, v) for v in c.VERTICES]

        # Assert
        self.assertTrue(all(corner["ok"] for corner in corners), corners)


@ddt
class TestInduction(unittest.TestCase):
    def test_induced_simple_is_standard(self):
        # Arrange
        c = _envelope("d.json")
        band = build_B_graded(c)

        # Act
        induced = induce_simple(band, ("1", 0))
        result = compare_induced(band, ("1", 0), "left", Order("first", c), random.Random(0))

        # Assert
        self.assertEqual(induced.dimension_vector(), {"(1,-1)": 1, "(1,0)": 1})
        self.assertEqual(result["dimension_vector"], induced.dimension_vector())

    @data("first", "second")
    def test_suite_on_dual_numbers(self, base):
        # Arrange
        c = _envelope("d.json")
        subalgebras = {"tildeB": build_tildeB(c), "B": build_B_graded(c)}

        # Act
        certificate = induction_suite(subalgebras, base, random.Random(0), digest="abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(len(certificate.witnesses), 2)
        self.assertEqual(certificate.order, {"base": base})

    @data(("k.json", "first"), ("k.json", "second"), ("d.json", "first"), ("d.json", "second"), ("a2.json", "first"), ("a2.json", "second"))
    @unpack
    def test_suite_on_dual_extension(self, name, base):
        # Arrange
        d = _dual_extension(name)
        subalgebras = {"tildeB": build_tildeB(d), "Bbar": build_Bbar(d)}

        # Act
        certificate = induction_suite(subalgebras, base, random.Random(0), digest="abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(len(certificate.witnesses), 2)
        self.assertEqual(
            {(w["side"], w["subalgebra"]["name"]) for w in certificate.witnesses},
            {
                "first": {("left", f"Bbar({d.name})"), ("right", f"tildeB({d.name})")},
                "second": {("left", f"tildeB({d.name})"), ("right", f"Bbar({d.name})")},
            }[base],
        )

    @data("d.json", "a2.json")
    def test_band_projectives_match_standards(self, name):
        # Arrange
        c = _envelope(name)

        # Act
        result = projective_dimension_vectors(build_tildeB(c), c)

        # Assert
        self.assertTrue(result["ok"], result["mismatches"])


@ddt
class TestTriangular(unittest.TestCase):
    @data("k.json", "d.json", "a2.json")
    def test_multiplication_is_bijective(self, name):
        # Arrange
        c = _envelope(name)

        # Act
        certificate = triangular_decomposition(c, build_tildeB(c), build_B_graded(c), "abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(certificate.witnesses[0]["failures"], [])
        self.assertTrue(certificate.witnesses[0]["slots"])

    @data("k.json", "d.json", "a2.json")
    def test_dual_extension_multiplication_is_bijective(self, name):
        # Arrange
        d = _dual_extension(name)

        # Act
        certificate = triangular_decomposition(d, build_tildeB(d), build_Bbar(d), "abc")

        # Assert
        self.assertEqual(certificate.verdict, Verdict.PASS.value)
        self.assertEqual(certificate.witnesses[0]["failures"], [])
