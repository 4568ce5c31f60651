import pytest

from catalog_ops import CatalogOperations
from catalog_store import CatalogStore
from errors import ParseError
from models import CatalogFile, Nature


def test_summary_lines(catalog):
    """Test the three census summary lines"""
    stats = CatalogOperations(catalog).summary()
    assert stats["lines"] == [
        "finite:23 infinite-or-exceeds-bound:56",
        "algebraic:4 holonomic-nonalgebraic:19",
        "order4:16 order6:5 order8:2",
    ]
    assert stats["models"] == 79


def test_get_by_mask(catalog):
    """Test looking up Kreweras by mask"""
    record = CatalogOperations(catalog).get_by_mask(138)
    assert record is not None
    assert record.steps == "S,W,NE"
    assert record.nature == Nature.ALGEBRAIC


def test_get_by_mask_missing(catalog):
    """Test a non-canonical mask has no record"""
    assert CatalogOperations(catalog).get_by_mask(0) is None


def test_get_by_steps(catalog):
    """Test lookup by compass string in any order"""
    record = CatalogOperations(catalog).get_by_steps("ne,sw,e,w")
    assert record.mask == 153


def test_get_by_steps_invalid(catalog):
    """Test an unparseable step set raises"""
    with pytest.raises(ParseError):
        CatalogOperations(catalog).get_by_steps("NE,UP")


def test_get_all_pagination(catalog):
    """Test skip and limit with the total count"""
    ops = CatalogOperations(catalog)
    page, total = ops.get_all(skip=10, limit=5)
    assert total == 79
    assert len(page) == 5
    assert page[0] == catalog.models[10]


def test_get_all_with_filter(catalog):
    """Test equality filters on record fields"""
    records, total = CatalogOperations(catalog).get_all(filter_dict={"c_is_one": True, "norm_ok": True})
    assert total == len(records)
    assert all(r.c_is_one and r.norm_ok for r in records)


def test_get_by_nature(catalog):
    """Test the four algebraic models"""
    records, total = CatalogOperations(catalog).get_by_nature(Nature.ALGEBRAIC)
    assert total == 4
    assert {r.mask for r in records} == {81, 138, 153, 219}


def test_get_by_order(catalog):
    """Test the two order-8 models"""
    records = CatalogOperations(catalog).get_by_order(8)
    assert {r.steps for r in records} == {"SW,W,E,NE", "SE,W,E,NW"}


def test_get_finite(catalog):
    """Test the finite models"""
    records, total = CatalogOperations(catalog).get_finite(limit=10)
    assert total == 23
    assert len(records) == 10


def test_catalog_sorted_by_mask(catalog):
    """Test records are ordered by canonical mask"""
    masks = [r.mask for r in catalog.models]
    assert masks == sorted(masks)


def test_save_and_load_round_trip(catalog, tmp_catalog_path):
    """Test parse(serialize(catalog)) = catalog"""
    CatalogStore.catalog = catalog
    CatalogStore.save(str(tmp_catalog_path))
    loaded = CatalogStore.load(str(tmp_catalog_path))
    assert loaded == catalog
    assert CatalogFile.model_validate_json(catalog.model_dump_json()) == catalog


def test_load_missing_file(tmp_path, catalog):
    """Test loading a missing file raises and keeps the old catalog"""
    CatalogStore.catalog = catalog
    with pytest.raises(FileNotFoundError):
        CatalogStore.load(str(tmp_path / "absent.json"))
    assert CatalogStore.catalog is catalog


@pytest.mark.slow
def test_build_is_deterministic(catalog):
    """Test two builds serialize to identical bytes"""
    again = CatalogStore.build()
    assert again.model_dump_json(indent=2) == catalog.model_dump_json(indent=2)
    CatalogStore.catalog = catalog
