import random
from fractions import Fraction

import pytest

import oracles
from reesalg import (
    CoefField,
    GuardExceeded,
    Guards,
    LinearModule,
    NotFiniteLengthError,
    PolyRing,
    PreconditionError,
    SymPowerBasis,
    ZeroQuotientError,
    check_detadj,
    graded_product,
    maximal_minors,
    minors_ideal_of_sym_power,
    normalize_basis,
    sym_power,
    t1_coefficient_check,
)
from reesalg.linalg import det_bareiss, det_cofactor, det_leibniz, determinant, inverse, rank, solve
from reesalg.modalg import in_power_of_m, module_minors

QQ = CoefField()
R1 = PolyRing(QQ, ("x",))
R2 = PolyRing(QQ, ("x", "y"))


def module(ring, r, forms):
    full = ring.with_ext(r)
    return LinearModule.from_forms(full, [full.parse(f) for f in forms])


FOUR = module(R2, 2, ["x^2*T1", "y^2*T1", "x^2*T2", "y^2*T2"])


def test_linear_module_matrix_and_forms():
    M = module(R2, 2, ["x*T1 + y*T2", "x^2*T2"])
    assert M.r == 2 and M.d == 2
    assert [[str(e) for e in row] for row in M.matrix] == [["x", "0"], ["y", "x^2"]]
    assert [str(f) for f in M.forms()] == ["x*T1 + y*T2", "x^2*T2"]
    assert list(M.labels) == ["L1", "L2"]


def test_nonlinear_form_rejected():
    full = R2.with_ext(2)
    with pytest.raises(ValueError):
        LinearModule.from_forms(full, [full.parse("x*T1^2")])
    with pytest.raises(ValueError):
        LinearModule.from_forms(full, [full.parse("x*T1 + 1")])


def test_sym_power_basis_order():
    assert SymPowerBasis(2, 2).monomials == [(2, 0), (1, 1), (0, 2)]
    assert len(SymPowerBasis(3, 2)) == 6


def test_sym_power_generators():
    piece = sym_power(module(R1, 2, ["x*T1", "x*T2"]), 2)
    assert [str(f) for f in piece.forms()] == ["x^2*T1^2", "x^2*T1*T2", "x^2*T2^2"]
    assert piece.contains(piece.module.ring.parse("x^3*T1*T2 - x^2*T2^2"))
    assert not piece.contains(piece.module.ring.parse("x*T1^2"))


def test_sym_power_dedupes_scalar_multiples():
    piece = sym_power(module(R1, 1, ["x*T1", "2*x*T1"]), 2)
    assert len(piece.forms()) == 1


def test_graded_product_mixes_free_part():
    M = module(R2, 2, ["x*T1", "y*T2"])
    piece = graded_product(M, 1, 1)
    ring = M.ring
    assert piece.contains(ring.parse("x*T1*T2"))
    assert piece.contains(ring.parse("y*T2^2"))
    assert not piece.contains(ring.parse("T1^2"))
    assert graded_product(M, 0, 2).contains(ring.parse("T1^2"))


def test_minors_of_four_column_module():
    assert [str(p) for p in module_minors(FOUR).polys] == ["x^4", "x^2*y^2", "y^4"]


def test_minors_zero_when_too_few_columns():
    assert module_minors(module(R2, 2, ["x*T1", "2*x*T1"])).is_zero()
    assert minors_ideal_of_sym_power(module(R2, 2, ["x*T1"]), 2).is_zero()


def test_diagonal_closed_form():
    M = module(R1, 2, ["x*T1", "x*T2"])
    for n in range(1, 5):
        assert minors_ideal_of_sym_power(M, n).polys == [R1.monomial((n * (n + 1),))]


def test_guards():
    with pytest.raises(GuardExceeded):
        maximal_minors(FOUR.matrix, Guards(max_minor_size=1))
    with pytest.raises(GuardExceeded):
        maximal_minors(FOUR.matrix, Guards(max_minors=2))
    with pytest.raises(GuardExceeded):
        sym_power(FOUR, 2, Guards(max_products=3))
    with pytest.raises(GuardExceeded):
        minors_ideal_of_sym_power(FOUR, 6)  # 7 x 7 minors exceed the default size 6


def test_detadj_four_column():
    rep = check_detadj(FOUR, 2)
    assert rep.passed and len(rep.checks) == 7 * 3


def test_detadj_note_when_degenerate():
    rep = check_detadj(module(R2, 2, ["x*T1"]), 1)
    assert rep.passed and rep.note


# -- normalization ---------------------------------------------------------


def test_normalize_swap():
    nb = normalize_basis(module(R1, 2, ["T1 + x*T2", "x^2*T2"]))
    assert nb.survivor == 1
    assert nb.change_of_basis == [[0, 1], [1, 0]]
    assert [str(e) for e in nb.transformed.matrix[0]] == ["x", "x^2"]
    assert nb.verified and nb.quotient_length == 1


def test_normalize_already_normal():
    nb = normalize_basis(FOUR)
    assert nb.survivor == 0 and nb.verified


def test_normalize_rejections():
    with pytest.raises(ZeroQuotientError):
        normalize_basis(module(R2, 2, ["T1", "T2"]))
    with pytest.raises(NotFiniteLengthError):
        normalize_basis(module(R2, 2, ["x*T1", "x*T2"]))
    with pytest.raises(NotFiniteLengthError):
        normalize_basis(module(R2, 2, ["x*T1"]))


def test_t1_check():
    nb = normalize_basis(module(R1, 2, ["T1 + x*T2", "x^2*T2"]))
    for n, k in [(2, 0), (2, 1), (3, 1)]:
        assert t1_coefficient_check(nb.transformed, n, k).passed
    with pytest.raises(PreconditionError):
        t1_coefficient_check(module(R1, 2, ["T1 + x*T2", "x^2*T2"]), 2, 0)


def test_in_power_of_m():
    assert in_power_of_m(R2.parse("x^2 + x*y^3"), 2)
    assert not in_power_of_m(R2.parse("x^2 + y"), 2)
    assert in_power_of_m(R2.zero(), 5)


# -- linear algebra --------------------------------------------------------


def test_field_linear_algebra():
    A = [[2, 1], [1, 1]]
    assert rank(A, QQ) == 2
    assert inverse(A, QQ) == [[1, -1], [-1, 2]]
    assert solve(A, [3, 2], QQ) == [1, 1]
    assert rank([[1, 2], [2, 4]], QQ) == 1


@pytest.mark.parametrize("size", [2, 3, 4, 5])
def test_determinants_agree(size):
    rng = random.Random(size)
    for _ in range(4):
        entries = [[rng.choice(["0", "x", "y", "x*y - 1", "2*x^2", "1/2*y + 3", "-x + y"]) for _ in range(size)] for _ in range(size)]
        mat = [[R2.parse(e) for e in row] for row in entries]
        ref = oracles.det_leibniz([[{k: Fraction(v) for k, v in p.terms.items()} for p in row] for row in mat], 2)
        for fn in (det_cofactor, det_bareiss, det_leibniz, determinant):
            assert dict(fn(mat).terms) == ref
