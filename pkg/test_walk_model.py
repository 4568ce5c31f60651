import pytest

from errors import EmptyStepSet, ParseError
from exact_algebra import RING, XR, YR, X, Y, is_kernel_irreducible
from walk_model import (
    DiscardReason,
    StepSet,
    census,
    census_survivors,
    generating_poly,
    has_vertical_symmetry,
    kernel_of,
    survivors_before_dedup,
)


def test_parse_tokens_any_order_and_case():
    """Test token parsing ignores order and case"""
    assert StepSet.parse("ne, w,S") == StepSet.parse("S,W,NE")
    assert StepSet.parse("NE,W,S").mask == 138


def test_parse_numeric_masks():
    """Test decimal and binary masks"""
    assert StepSet.parse("0b10011000") == StepSet(mask=152)
    assert StepSet.parse("138") == StepSet.parse("NE,W,S")


def test_parse_rejects_unknown_token():
    """Test an unknown compass token is a parse error"""
    with pytest.raises(ParseError):
        StepSet.parse("NE,UP")
    with pytest.raises(ParseError):
        StepSet.parse("")


def test_string_form_uses_bit_order():
    """Test compass tokens are emitted in bit order"""
    assert str(StepSet.parse("NE,W,S")) == "S,W,NE"
    assert str(StepSet.parse("E,W,NE,SW")) == "SW,W,E,NE"


def test_diagonal_and_mirror():
    """Test the diagonal and vertical mirror images"""
    S = StepSet.parse("N,W,SE")
    assert S.diagonal() == StepSet.parse("E,S,NW")
    assert S.mirror() == StepSet.parse("N,E,SW")


def test_kernel_boundary_coefficients(gessel, kreweras, vertical_model):
    """Test c for Gessel, Kreweras and a vertically symmetric model"""
    assert kernel_of(gessel).c == RING.one
    assert kernel_of(kreweras).c == X
    assert kernel_of(vertical_model).c == RING.one + X ** 2


def test_kernel_c_tilde_and_indicator(gessel, kreweras):
    """Test c~ and the south-west indicator"""
    assert kernel_of(gessel).c_tilde == RING.one + Y
    assert kernel_of(gessel).sw_indicator == 1
    assert kernel_of(kreweras).c_tilde == Y
    assert kernel_of(kreweras).sw_indicator == 0


def test_kernel_of_empty_set():
    """Test the empty step set has no kernel"""
    with pytest.raises(EmptyStepSet):
        kernel_of(StepSet(mask=0))


def test_vertical_symmetry(vertical_model, kreweras, gessel):
    """Test mirror closure detection"""
    assert has_vertical_symmetry(vertical_model)
    assert not has_vertical_symmetry(kreweras)
    assert not has_vertical_symmetry(gessel)


def test_generating_poly(gessel, kreweras):
    """Test the Laurent step polynomial"""
    assert generating_poly(gessel) == XR + 1 / XR + XR * YR + 1 / (XR * YR)
    assert generating_poly(kreweras) == XR * YR + 1 / XR + 1 / YR
    assert generating_poly(StepSet.parse("N")) == YR


def test_census_covers_every_mask():
    """Test all 256 masks are classified exactly once"""
    entries = census()
    assert len(entries) == 256
    assert [e.steps.mask for e in entries] == list(range(256))
    assert entries[0].discard_reason == DiscardReason.EMPTY


def test_census_counts():
    """Test 138 survivors before diagonal dedup and 79 after"""
    assert len(survivors_before_dedup()) == 138
    survivors = census_survivors()
    assert len(survivors) == 79
    self_symmetric = [S for S in survivors if S.diagonal() == S]
    assert len(self_symmetric) == 20


def test_census_is_deterministic():
    """Test two census runs agree"""
    assert census() == census()


def test_duplicates_point_at_surviving_canonical():
    """Test every diagonal duplicate names a surviving canonical model"""
    survivors = set(census_survivors())
    for entry in census():
        if entry.discard_reason == DiscardReason.DIAGONAL_DUPLICATE:
            assert entry.canonical in survivors
            assert entry.canonical == entry.steps.diagonal()


def test_catalog_orientation(gessel, tandem, order8_holonomic, vertical_model):
    """Test the canonical orientation keeps the displayed models"""
    survivors = census_survivors()
    for S in (gessel, tandem, order8_holonomic, vertical_model):
        assert S in survivors


def test_survivor_kernels_are_irreducible():
    """Test every canonical model has an irreducible quadratic kernel"""
    for S in census_survivors():
        kernel = kernel_of(S)
        assert kernel.view.a
        assert kernel.view.a_tilde
        assert is_kernel_irreducible(kernel.view)


def test_vertical_symmetry_shares_c_tilde_with_mirror():
    """Test mirror-closed sets have the same c~ as their mirror"""
    for S in census_survivors():
        if has_vertical_symmetry(S):
            assert kernel_of(S).c_tilde == kernel_of(S.mirror()).c_tilde
