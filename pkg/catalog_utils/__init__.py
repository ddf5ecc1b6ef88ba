# Oscillator catalog package
from .catalog_manager import (
    CatalogEntry, CatalogManager, CatalogReport, EntryResult,
    catalog_lookup, default_catalog, verify_catalog, verify_entry,
)

__all__ = [
    'CatalogEntry', 'CatalogManager', 'CatalogReport', 'EntryResult',
    'catalog_lookup', 'default_catalog', 'verify_catalog', 'verify_entry',
]
