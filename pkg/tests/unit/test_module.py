import random
import unittest
from ddt import ddt, data, unpack
from src.algebra.paths import compute_basis
from src.module.homs import find_isomorphism, find_surjection, hom_space, intertwines, kernel
from src.module.module import projective_module, radical_layers, render_object, simple_module
from src.models.models import AlgebraPresentation

A2 = {"name": "A2", "vertices": ["1", "2"], "arrows": [["a", "1", "2"]]}
N3 = {"name": "N3", "vertices": ["1"], "arrows": [["x", "1", "1"]], "relations": [[["1", ["x", "x", "x"]]]]}


def _algebra(spec: dict):
    return compute_basis(AlgebraPresentation(**spec))


@ddt
class TestModuleRep(unittest.TestCase):
    @data(("1", {"1": 1, "2": 1}), ("2", {"2": 1}))
    @unpack
    def test_projective_dimension_vectors(self, vertex, expected):
        # Arrange
        a = _algebra(A2)

        # Act
        p = projective_module(a, vertex)

        # Assert
        self.assertEqual(p.dimension_vector(), expected)

    def test_radical_layers_of_projective(self):
        # Arrange
        a = _algebra(A2)
        p = projective_module(a, "1")

        # Act
        layers = radical_layers(p)

        # Assert
        self.assertEqual(layers, [{"1": 1}, {"2": 1}])
        self.assertEqual(p.top(), {"1": 1})

    def test_radical_layers_of_truncated_polynomials(self):
        # Arrange
        p = projective_module(_algebra(N3), "1")

        # Act
        layers = radical_layers(p)

        # Assert
        self.assertEqual(layers, [{"1": 1}, {"1": 1}, {"1": 1}])

    def test_quotient_by_radical_is_simple(self):
        # Arrange
        a = _algebra(A2)
        p = projective_module(a, "1")

        # Act
        top, projections = p.quotient(p.radical(), "top")

        # Assert
        self.assertEqual(top.dimension_vector(), simple_module(a, "1").dimension_vector())
        self.assertIn("1", projections)
        self.assertNotIn("2", top.dims)

    def test_submodule_generated_by_arrow(self):
        # Arrange
        a = _algebra(A2)
        p = projective_module(a, "1")
        field = a.FIELD

        # Act
        spans = p.generated([("2", [field.one])])
        sub, inclusions = p.submodule(spans, "rad")

        # Assert
        self.assertTrue(p.is_submodule(spans))
        self.assertEqual(sub.dimension_vector(), {"2": 1})
        self.assertEqual(set(inclusions), {"2"})

    def test_dual_lives_over_opposite(self):
        # Arrange
        a = _algebra(A2)
        p = projective_module(a, "1")

        # Act
        dual = p.dual()

        # Assert
        self.assertIs(dual.algebra, a.opposite())
        self.assertEqual(dual.side, "right")
        self.assertEqual(dual.dimension_vector(), p.dimension_vector())

    @data((("1", 2), "(1,2)"), ("x", "x"))
    @unpack
    def test_render_object(self, obj, expected):
        # Act / Assert
        self.assertEqual(render_object(obj), expected)


@ddt
class TestHoms(unittest.TestCase):
    @data(("2", "1", 1), ("1", "2", 0), ("1", "1", 1))
    @unpack
    def test_hom_between_projectives(self, source, target, expected):
        # Arrange
        a = _algebra(A2)

        # Act
        basis = hom_space(projective_module(a, source), projective_module(a, target))

        # Assert
        self.assertEqual(len(basis), expected)

    def test_surjection_onto_simple_and_kernel(self):
        # Arrange
        a = _algebra(A2)
        p = projective_module(a, "1")
        s = simple_module(a, "1")

        # Act
        phi = find_surjection(p, s, random.Random(0))
        spans = kernel(p, phi)

        # Assert
        self.assertIsNotNone(phi)
        self.assertTrue(intertwines(p, s, phi))
        self.assertEqual(spans["1"].rank, 0)
        self.assertEqual(spans["2"].rank, 1)

    def test_isomorphism_needs_equal_dimension_vectors(self):
        # Arrange
        a = _algebra(A2)

        # Act
        same = find_isomorphism(projective_module(a, "1"), projective_module(a, "1"), random.Random(0))
        different = find_isomorphism(projective_module(a, "1"), projective_module(a, "2"), random.Random(0))

        # Assert
        self.assertIsNotNone(same)
        self.assertIsNone(different)

    def test_isomorphism_over_two_elements(self):
        # Arrange
        a = _algebra({**N3, "field": {"kind": "prime", "p": 2}})
        p = projective_module(a, "1")

        # Act
        phi = find_isomorphism(p, p, random.Random(0))

        # Assert
        self.assertIsNotNone(phi)
        self.assertTrue(intertwines(p, p, phi))

    def test_endomorphisms_of_local_projective(self):
        # Arrange
        p = projective_module(_algebra(N3), "1")

        # Act
        basis = hom_space(p, p)

        # Assert
        self.assertEqual(len(basis), 3)
