from .catalog import (
    AerospikeCatalog,
    CatalogEntry,
    FiberEntry,
    GetCatalogOp,
    GetFiberOp,
    ListCatalogsOp,
    PutCatalogOp,
    PutFiberOp,
    cached_enumerate,
    cached_fiber,
)

__all__ = [
    "AerospikeCatalog",
    "CatalogEntry",
    "FiberEntry",
    "GetCatalogOp",
    "GetFiberOp",
    "ListCatalogsOp",
    "PutCatalogOp",
    "PutFiberOp",
    "cached_enumerate",
    "cached_fiber",
]
