import asyncio
import logging
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, NamedTuple

from aerospike_helpers import expressions as exp
from aerospike_helpers.operations import map_operations, operations

import aerospike
import aerospike.exception  # noqa: F401  # expose `aerospike.exception` submodule for type checkers
from hyperperiods.moduli.config import Settings
from hyperperiods.moduli.enumerate import enumerate_full_dim
from hyperperiods.moduli.fiber import TopologyReport, fiber_report
from hyperperiods.moduli.graph import PlanarTree, canonical_form
from hyperperiods.moduli.periods import PeriodVector
from hyperperiods.moduli.serialization import (
    complex_to_dict,
    report_from_dict,
    tree_from_document,
    tree_to_document,
    vector,
)

logger = logging.getLogger(__name__)

SEP = "|"
CATALOG = "catalog"
FIBER = "fiber"


def _now_utc() -> datetime:
    return datetime.now(tz=timezone.utc)


def _target(target: PeriodVector | Sequence[Fraction | int | str]) -> list[str]:
    return vector([Fraction(x) for x in target])


# --------------- Ops and results ---------------


class PutCatalogOp(NamedTuple):
    """Store the full-dimensional cells of ``(genus, ovals)``; ``graphs=None`` deletes."""

    genus: int
    ovals: int
    graphs: Sequence[PlanarTree] | None
    ttl: float | None = None


class GetCatalogOp(NamedTuple):
    genus: int
    ovals: int
    refresh_ttl: bool | None = None


class PutFiberOp(NamedTuple):
    """Store the topology report (and optionally the glued complex) over one target."""

    genus: int
    ovals: int
    target: Sequence[Fraction | int | str]
    report: TopologyReport | None
    complex: dict[str, Any] | None = None
    ttl: float | None = None


class GetFiberOp(NamedTuple):
    genus: int
    ovals: int
    target: Sequence[Fraction | int | str]
    refresh_ttl: bool | None = None


class ListCatalogsOp(NamedTuple):
    genus: int | None = None
    limit: int | None = None
    offset: int = 0


CatalogOp = PutCatalogOp | GetCatalogOp | PutFiberOp | GetFiberOp | ListCatalogsOp


@dataclass(frozen=True)
class CatalogEntry:
    genus: int
    ovals: int
    count: int
    keys: tuple[str, ...]
    graphs: tuple[dict[str, Any], ...]
    created_at: str
    updated_at: str

    def trees(self) -> list[PlanarTree]:
        return [tree_from_document(doc) for doc in self.graphs]


@dataclass(frozen=True)
class FiberEntry:
    genus: int
    ovals: int
    target: tuple[str, ...]
    report: TopologyReport
    complex: dict[str, Any] | None
    created_at: str
    updated_at: str


# --------------- Catalog ---------------


class AerospikeCatalog:
    """Aerospike-backed cache of cell catalogs and fiber reports.

    Every record lives in one set; ``kind`` tells catalogs from fibers. All
    writes and reads go through :meth:`batch`, the convenience methods only
    build ops.
    """

    def __init__(
        self,
        client: aerospike.Client,
        namespace: str = "test",
        set: str = "hyperperiods",
        default_ttl: float | None = None,
        refresh_on_read: bool = False,
    ) -> None:
        self.client = client
        self.ns = namespace
        self.set = set
        self.default_ttl = default_ttl
        self.refresh_on_read = refresh_on_read

    @classmethod
    def from_env(cls, **kwargs: Any) -> "AerospikeCatalog":
        """Connect with ``AEROSPIKE_HOST``/``AEROSPIKE_PORT`` and pick namespace and set."""
        host = os.getenv("AEROSPIKE_HOST", "127.0.0.1")
        port = int(os.getenv("AEROSPIKE_PORT", "3000"))
        client = aerospike.client({"hosts": [(host, port)]}).connect()
        return cls(
            client,
            namespace=os.getenv("AEROSPIKE_NAMESPACE", "test"),
            set=os.getenv("AEROSPIKE_SET", "hyperperiods"),
            **kwargs,
        )

    # --------------- Aerospike helper functions ------------------

    def _key(self, *parts: object) -> tuple[str, str, str]:
        return (self.ns, self.set, SEP.join(str(p) for p in parts))

    def _catalog_key(self, genus: int, ovals: int) -> tuple[str, str, str]:
        return self._key(CATALOG, genus, ovals)

    def _fiber_key(
        self, genus: int, ovals: int, target: Sequence[Fraction | int | str]
    ) -> tuple[str, str, str]:
        return self._key(FIBER, genus, ovals, ",".join(_target(target)))

    def _time_to_live(self, ttl: float | None) -> int:
        # Minutes; None falls back to the default, and no default means never expire.
        ttl = ttl if ttl is not None else self.default_ttl
        if ttl is None or ttl < 0:
            return -1
        return int(ttl * 60)

    def _read_policy(self, refresh_ttl: bool | None) -> dict[str, Any]:
        if refresh_ttl or (refresh_ttl is None and self.refresh_on_read):
            return {"read_touch_ttl_percent": 100}
        return {}

    def _write(self, key: tuple[str, str, str], bins: dict[str, Any], ttl: float | None) -> None:
        now = _now_utc().isoformat()
        ops = [operations.write(name, value) for name, value in bins.items()]
        ops += [
            map_operations.map_put(
                "meta",
                "created_at",
                now,
                map_policy={
                    "map_write_flags": (
                        aerospike.MAP_WRITE_FLAGS_CREATE_ONLY | aerospike.MAP_WRITE_FLAGS_NO_FAIL
                    ),
                },
            ),
            map_operations.map_put("meta", "updated_at", now),
        ]
        try:
            self.client.operate(key, ops, policy={"ttl": self._time_to_live(ttl)})
        except aerospike.exception.AerospikeError as e:
            raise RuntimeError(f"Aerospike put failed for {key[2]}: {e}") from e

    def _remove(self, key: tuple[str, str, str]) -> None:
        try:
            self.client.remove(key)
        except aerospike.exception.RecordNotFound:
            return
        except aerospike.exception.AerospikeError as e:
            raise RuntimeError(f"Aerospike remove failed for {key[2]}: {e}") from e

    def _read(self, key: tuple[str, str, str], refresh_ttl: bool | None) -> dict[str, Any] | None:
        policy = self._read_policy(refresh_ttl)
        try:
            if policy:
                _, _, bins = self.client.get(key, policy=policy)
            else:
                _, _, bins = self.client.get(key)
        except aerospike.exception.AerospikeError:
            return None
        return bins

    # --------------- Per-op handlers (called from batch) --------------------

    def _handle_put_catalog(self, op: PutCatalogOp) -> None:
        key = self._catalog_key(op.genus, op.ovals)
        if op.graphs is None:
            self._remove(key)
            return
        graphs = list(op.graphs)
        bins = {
            "kind": CATALOG,
            "genus": op.genus,
            "ovals": op.ovals,
            "count": len(graphs),
            "keys": [canonical_form(t) for t in graphs],
            "graphs": [tree_to_document(t) for t in graphs],
        }
        self._write(key, bins, op.ttl)
        logger.debug("stored %d cell(s) for g=%d k=%d", len(graphs), op.genus, op.ovals)

    def _handle_get_catalog(self, op: GetCatalogOp) -> CatalogEntry | None:
        bins = self._read(self._catalog_key(op.genus, op.ovals), op.refresh_ttl)
        if not bins or bins.get("graphs") is None:
            return None
        meta = bins.get("meta") or {}
        now = _now_utc().isoformat()
        return CatalogEntry(
            genus=bins.get("genus", op.genus),
            ovals=bins.get("ovals", op.ovals),
            count=bins.get("count", len(bins["graphs"])),
            keys=tuple(bins.get("keys", ())),
            graphs=tuple(bins["graphs"]),
            created_at=meta.get("created_at", now),
            updated_at=meta.get("updated_at", now),
        )

    def _handle_put_fiber(self, op: PutFiberOp) -> None:
        key = self._fiber_key(op.genus, op.ovals, op.target)
        if op.report is None:
            self._remove(key)
            return
        bins: dict[str, Any] = {
            "kind": FIBER,
            "genus": op.genus,
            "ovals": op.ovals,
            "target": _target(op.target),
            "report": op.report.to_dict(),
        }
        if op.complex is not None:
            bins["complex"] = op.complex
        self._write(key, bins, op.ttl)

    def _handle_get_fiber(self, op: GetFiberOp) -> FiberEntry | None:
        bins = self._read(self._fiber_key(op.genus, op.ovals, op.target), op.refresh_ttl)
        if not bins or bins.get("report") is None:
            return None
        meta = bins.get("meta") or {}
        now = _now_utc().isoformat()
        return FiberEntry(
            genus=bins.get("genus", op.genus),
            ovals=bins.get("ovals", op.ovals),
            target=tuple(bins.get("target", _target(op.target))),
            report=report_from_dict(bins["report"]),
            complex=bins.get("complex"),
            created_at=meta.get("created_at", now),
            updated_at=meta.get("updated_at", now),
        )

    def _handle_list_catalogs(self, op: ListCatalogsOp) -> list[tuple[int, int]]:
        filter_exprs = [exp.Eq(exp.StrBin("kind"), exp.Val(CATALOG))]
        if op.genus is not None:
            filter_exprs.append(exp.Eq(exp.IntBin("genus"), exp.Val(op.genus)))
        policy = {"expressions": exp.And(*filter_exprs).compile()}
        try:
            scan = self.client.scan(self.ns, self.set)
            records = scan.results(policy=policy)
        except aerospike.exception.AerospikeError as e:
            raise RuntimeError(f"Aerospike scan failed: {e}") from e

        # Scans come back in digest order; sort before paginating.
        pairs = sorted({(bins["genus"], bins["ovals"]) for _, _, bins in records})
        if op.offset:
            pairs = pairs[op.offset :]
        if op.limit is not None:
            pairs = pairs[: op.limit]
        return pairs

    # --------------- Batch ------------------

    def batch(self, ops: Iterable[CatalogOp]) -> list[Any]:
        result: list[Any] = []
        for op in ops:
            if isinstance(op, GetCatalogOp):
                result.append(self._handle_get_catalog(op))
            elif isinstance(op, PutCatalogOp):
                self._handle_put_catalog(op)
                result.append(None)
            elif isinstance(op, GetFiberOp):
                result.append(self._handle_get_fiber(op))
            elif isinstance(op, PutFiberOp):
                self._handle_put_fiber(op)
                result.append(None)
            elif isinstance(op, ListCatalogsOp):
                result.append(self._handle_list_catalogs(op))
            else:
                raise TypeError(f"Unsupported operation type: {type(op)}")
        return result

    async def abatch(self, ops: Iterable[CatalogOp]) -> list[Any]:
        return await asyncio.to_thread(self.batch, ops)

    # --------------- Convenience methods ------------------

    def put_catalog(
        self, genus: int, ovals: int, graphs: Sequence[PlanarTree], ttl: float | None = None
    ) -> None:
        self.batch([PutCatalogOp(genus, ovals, graphs, ttl)])

    def delete_catalog(self, genus: int, ovals: int) -> None:
        self.batch([PutCatalogOp(genus, ovals, None)])

    def get_catalog(
        self, genus: int, ovals: int, refresh_ttl: bool | None = None
    ) -> CatalogEntry | None:
        entry: CatalogEntry | None = self.batch([GetCatalogOp(genus, ovals, refresh_ttl)])[0]
        return entry

    def put_fiber(
        self,
        genus: int,
        ovals: int,
        target: Sequence[Fraction | int | str],
        report: TopologyReport,
        complex: dict[str, Any] | None = None,
        ttl: float | None = None,
    ) -> None:
        self.batch([PutFiberOp(genus, ovals, target, report, complex, ttl)])

    def get_fiber(
        self,
        genus: int,
        ovals: int,
        target: Sequence[Fraction | int | str],
        refresh_ttl: bool | None = None,
    ) -> FiberEntry | None:
        entry: FiberEntry | None = self.batch([GetFiberOp(genus, ovals, target, refresh_ttl)])[0]
        return entry

    def list_catalogs(
        self, genus: int | None = None, limit: int | None = None, offset: int = 0
    ) -> list[tuple[int, int]]:
        pairs: list[tuple[int, int]] = self.batch([ListCatalogsOp(genus, limit, offset)])[0]
        return pairs

    async def aput_catalog(
        self, genus: int, ovals: int, graphs: Sequence[PlanarTree], ttl: float | None = None
    ) -> None:
        await self.abatch([PutCatalogOp(genus, ovals, graphs, ttl)])

    async def aget_catalog(
        self, genus: int, ovals: int, refresh_ttl: bool | None = None
    ) -> CatalogEntry | None:
        results = await self.abatch([GetCatalogOp(genus, ovals, refresh_ttl)])
        entry: CatalogEntry | None = results[0]
        return entry

    async def aput_fiber(
        self,
        genus: int,
        ovals: int,
        target: Sequence[Fraction | int | str],
        report: TopologyReport,
        complex: dict[str, Any] | None = None,
        ttl: float | None = None,
    ) -> None:
        await self.abatch([PutFiberOp(genus, ovals, target, report, complex, ttl)])

    async def aget_fiber(
        self,
        genus: int,
        ovals: int,
        target: Sequence[Fraction | int | str],
        refresh_ttl: bool | None = None,
    ) -> FiberEntry | None:
        results = await self.abatch([GetFiberOp(genus, ovals, target, refresh_ttl)])
        entry: FiberEntry | None = results[0]
        return entry

    async def alist_catalogs(
        self, genus: int | None = None, limit: int | None = None, offset: int = 0
    ) -> list[tuple[int, int]]:
        results = await self.abatch([ListCatalogsOp(genus, limit, offset)])
        pairs: list[tuple[int, int]] = results[0]
        return pairs


# --------------- Read-through helpers ---------------


def cached_enumerate(
    catalog: AerospikeCatalog, genus: int, ovals: int, settings: Settings | None = None
) -> list[PlanarTree]:
    """Stored cells of ``(genus, ovals)``, enumerating and storing them on a miss."""
    entry = catalog.get_catalog(genus, ovals)
    if entry is not None:
        return entry.trees()
    trees = enumerate_full_dim(genus, ovals, settings)
    catalog.put_catalog(genus, ovals, trees)
    return trees


def cached_fiber(
    catalog: AerospikeCatalog,
    genus: int,
    ovals: int,
    target: PeriodVector,
    settings: Settings | None = None,
) -> TopologyReport:
    """Stored fiber report over ``target``, computing and storing it on a miss."""
    entry = catalog.get_fiber(genus, ovals, target)
    if entry is not None:
        return entry.report
    _, complex_, report = fiber_report(genus, ovals, target, settings)
    catalog.put_fiber(genus, ovals, target, report, complex_to_dict(complex_))
    return report
