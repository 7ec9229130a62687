import unittest
from ddt import ddt, data, unpack
from pydantic import ValidationError
from src.linalg.field import Field
from src.linalg.matrix import EchelonBasis, Mat, inverse, kernel_basis, rank, rref, solve
from src.models.models import FieldSpec
from src.models.base_errors import DimensionMismatch, PresentationError

QQ_FIELD = Field()
GF5 = Field(FieldSpec(kind="prime", p=5))


def _mat(field, rows):
    return Mat.from_rows(field, [[field.parse(x) for x in row] for row in rows], len(rows[0]))


@ddt
class TestMatrix(unittest.TestCase):
    @data(
        ([["1", "2"], ["2", "4"]], 1),
        ([["1", "0"], ["0", "1"]], 2),
        ([["0", "0", "0"]], 0),
        ([["1", "1", "0"], ["0", "1", "1"], ["1", "2", "1"]], 2),
    )
    @unpack
    def test_rank(self, rows, expected):
        # Arrange
        m = _mat(QQ_FIELD, rows)

        # Act
        result = rank(m)

        # Assert
        self.assertEqual(result, expected)

    def test_rref_pivots(self):
        # Arrange
        m = _mat(QQ_FIELD, [["0", "2", "4"], ["1", "1", "1"]])

        # Act
        reduced, pivots = rref(m)

        # Assert
        self.assertEqual(pivots, (0, 1))
        self.assertEqual(reduced.data[1][2], QQ_FIELD.parse("2"))
        self.assertEqual(reduced.data[0][2], QQ_FIELD.parse("-1"))

    def test_kernel_basis_annihilated(self):
        # Arrange
        m = _mat(QQ_FIELD, [["1", "1", "0"], ["0", "1", "1"]])

        # Act
        kernel = kernel_basis(m)

        # Assert
        self.assertEqual(len(kernel), 1)
        self.assertTrue(all(x == QQ_FIELD.zero for x in m.apply(kernel[0])))

    def test_kernel_of_empty_rows_is_everything(self):
        # Arrange
        m = Mat(QQ_FIELD, 0, 3)

        # Act
        kernel = kernel_basis(m)

        # Assert
        self.assertEqual(len(kernel), 3)

    @data(
        ([["1", "1"], ["1", "-1"]], ["2", "0"], ["1", "1"]),
        ([["2", "0"], ["0", "4"]], ["1", "1"], ["1/2", "1/4"]),
    )
    @unpack
    def test_solve(self, rows, rhs, expected):
        # Arrange
        m = _mat(QQ_FIELD, rows)

        # Act
        x = solve(m, [QQ_FIELD.parse(v) for v in rhs])

        # Assert
        self.assertEqual(x, [QQ_FIELD.parse(v) for v in expected])

    def test_solve_inconsistent(self):
        # Arrange
        m = _mat(QQ_FIELD, [["1", "1"], ["2", "2"]])

        # Act
        x = solve(m, [QQ_FIELD.one, QQ_FIELD.zero])

        # Assert
        self.assertIsNone(x)

    def test_solve_dimension_mismatch(self):
        # Arrange
        m = _mat(QQ_FIELD, [["1", "1"]])

        # Act / Assert
        with self.assertRaises(DimensionMismatch):
            solve(m, [QQ_FIELD.one, QQ_FIELD.one])

    def test_inverse_over_prime_field(self):
        # Arrange
        m = _mat(GF5, [["2", "0"], ["0", "3"]])

        # Act
        inv = inverse(m)

        # Assert
        self.assertEqual(inv @ m, Mat.identity(GF5, 2))
        self.assertEqual(GF5.render(inv.data[0][0]), "3")

    def test_inverse_singular(self):
        # Arrange
        m = _mat(QQ_FIELD, [["1", "2"], ["2", "4"]])

        # Act / Assert
        self.assertIsNone(inverse(m))


@ddt
class TestEchelonBasis(unittest.TestCase):
    def test_add_and_contains(self):
        # Arrange
        span = EchelonBasis(QQ_FIELD, 3)
        one, zero = QQ_FIELD.one, QQ_FIELD.zero

        # Act
        first = span.add([one, one, zero])
        second = span.add([QQ_FIELD.parse("2"), QQ_FIELD.parse("2"), zero])
        span.add([zero, one, one])

        # Assert
        self.assertTrue(first)
        self.assertFalse(second)
        self.assertEqual(span.rank, 2)
        self.assertTrue(span.contains([one, zero, -one]))
        self.assertFalse(span.contains([zero, zero, one]))

    def test_same_span_ignores_generators(self):
        # Arrange
        one, zero = QQ_FIELD.one, QQ_FIELD.zero
        a = EchelonBasis(QQ_FIELD, 2).extend([[one, zero], [zero, one]])
        b = EchelonBasis(QQ_FIELD, 2).extend([[one, one], [one, -one]])

        # Act / Assert
        self.assertTrue(a.same_span(b))
        self.assertEqual(a.canonical(), b.canonical())


@ddt
class TestField(unittest.TestCase):
    @data(("3/2", "3/2"), ("-4", "-4"), ("6/4", "3/2"))
    @unpack
    def test_parse_rational(self, text, expected):
        # Act / Assert
        self.assertEqual(QQ_FIELD.render(QQ_FIELD.parse(text)), expected)

    @data("x", "1/0")
    def test_parse_invalid(self, text):
        # Act / Assert
        with self.assertRaises(PresentationError):
            QQ_FIELD.parse(text)

    def test_prime_field_requires_prime(self):
        # Act / Assert
        with self.assertRaises(ValidationError):
            FieldSpec(kind="prime", p=6)

    def test_prime_field_wraps(self):
        # Act / Assert
        self.assertEqual(GF5.render(GF5.parse("7")), "2")

    @data((None, 4, 4), (2, 4, 64), (5, 4, 28), (37, 4, 4), (3, 8, 88))
    @unpack
    def test_search_attempts_grow_on_small_prime_fields(self, p, base, expected):
        # Arrange
        field = Field(FieldSpec(kind="prime", p=p)) if p else QQ_FIELD

        # Act / Assert
        self.assertEqual(field.search_attempts(base), expected)
