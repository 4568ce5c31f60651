from collections import Counter
from typing import Any, Dict, List, Optional

from models import CatalogFile, ClassificationRecord, Nature
from walk_model import StepSet


class CatalogOperations:
    """Read operations over a classified catalog"""

    def __init__(self, catalog: CatalogFile):
        self.catalog = catalog

    def get_by_mask(self, mask: int) -> Optional[ClassificationRecord]:
        """Get a record by its canonical mask"""
        for record in self.catalog.models:
            if record.mask == mask:
                return record
        return None

    def get_by_steps(self, steps: str) -> Optional[ClassificationRecord]:
        """Get the record of a step set given in any accepted notation"""
        return self.get_by_mask(StepSet.parse(steps).mask)

    def get_all(
        self,
        skip: int = 0,
        limit: int = 100,
        filter_dict: Optional[Dict[str, Any]] = None
    ) -> tuple[List[ClassificationRecord], int]:
        """Get records with pagination and optional field equality filters"""
        query = filter_dict if filter_dict else {}
        matches = [
            record for record in self.catalog.models
            if all(getattr(record, field) == value for field, value in query.items())
        ]
        return matches[skip:skip + limit], len(matches)

    def get_by_nature(
        self,
        nature: Nature,
        skip: int = 0,
        limit: int = 100
    ) -> tuple[List[ClassificationRecord], int]:
        return self.get_all(skip=skip, limit=limit, filter_dict={"nature": nature})

    def get_by_order(self, order: int) -> List[ClassificationRecord]:
        """Models whose group on the curve has the given finite order"""
        return [r for r in self.catalog.models if r.order_H.finite and r.order_H.value == order]

    def get_finite(
        self,
        skip: int = 0,
        limit: int = 100
    ) -> tuple[List[ClassificationRecord], int]:
        finite = [r for r in self.catalog.models if r.order_H.finite]
        return finite[skip:skip + limit], len(finite)

    def summary(self) -> Dict[str, Any]:
        """Counts by group finiteness, nature and order"""
        models = self.catalog.models
        natures = Counter(r.nature for r in models)
        orders = Counter(r.order_H.value for r in models if r.order_H.finite)
        finite = sum(orders.values())
        stats = {
            "models": len(models),
            "finite": finite,
            "infinite_or_exceeds_bound": len(models) - finite,
            "algebraic": natures[Nature.ALGEBRAIC],
            "holonomic_nonalgebraic": natures[Nature.HOLONOMIC_NON_ALGEBRAIC],
            "by_order": {str(order): count for order, count in sorted(orders.items())},
        }
        stats["lines"] = self.summary_lines(stats)
        return stats

    @staticmethod
    def summary_lines(stats: Dict[str, Any]) -> List[str]:
        return [
            f"finite:{stats['finite']} infinite-or-exceeds-bound:{stats['infinite_or_exceeds_bound']}",
            f"algebraic:{stats['algebraic']} holonomic-nonalgebraic:{stats['holonomic_nonalgebraic']}",
            " ".join(f"order{order}:{count}" for order, count in stats["by_order"].items()),
        ]
