import logging
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from classifier import classify
from models import CatalogFile
from settings import get_settings
from walk_model import census_survivors

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

VERSION = "walks 1.0.0"


class CatalogStore:
    """Process-wide handle on the classified catalog"""

    catalog: Optional[CatalogFile] = None
    path: Optional[Path] = None

    @classmethod
    def build(cls, n_max: Optional[int] = None) -> CatalogFile:
        """Classify every canonical model; the result is ordered by mask"""
        records = [classify(S, n_max) for S in census_survivors()]
        cls.catalog = CatalogFile(generated_with=VERSION, models=sorted(records, key=lambda r: r.mask))
        print(f"✓ Classified {len(records)} models")
        return cls.catalog

    @classmethod
    def load(cls, path: Optional[str] = None) -> CatalogFile:
        """Read a catalog written by save"""
        cls.path = Path(path or get_settings().catalog_path)
        try:
            cls.catalog = CatalogFile.model_validate_json(cls.path.read_text(encoding="utf-8"))
            print(f"✓ Loaded catalog from {cls.path}")
        except Exception as e:
            print(f"✗ Failed to load catalog from {cls.path}: {e}")
            raise e
        return cls.catalog

    @classmethod
    def save(cls, path: Optional[str] = None) -> Path:
        target = Path(path or get_settings().catalog_path)
        target.write_text(cls.get_catalog().model_dump_json(indent=2) + "\n", encoding="utf-8")
        cls.path = target
        print(f"✓ Catalog written to {target}")
        return target

    @classmethod
    def get_catalog(cls) -> CatalogFile:
        """Catalog instance; loaded from disk when present, built otherwise"""
        if cls.catalog is None:
            path = Path(get_settings().catalog_path)
            if path.exists():
                cls.load(str(path))
            else:
                logger.info("no catalog at %s, building one", path)
                cls.build()
        return cls.catalog

    @classmethod
    def close(cls) -> None:
        if cls.catalog is not None:
            cls.catalog = None
            print("✓ Catalog released")


def get_catalog() -> CatalogFile:
    """Dependency to get the catalog instance"""
    return CatalogStore.get_catalog()
