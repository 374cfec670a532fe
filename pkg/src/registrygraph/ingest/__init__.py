"""Three-phase graph construction from registry publications.

Phase 1 ingests structured record columns into strong entity and event
nodes.  Phase 2 extracts additional entities from free text through a
language model and materializes them as weak nodes.  Phase 3 resolves
identities: every entity is bound to a name hub derived from its
normalized name, duplicate hubs are merged, and weak nodes that
co-occur with a strong sibling on the same event are absorbed.
"""

from registrygraph.ingest.extraction import (
    ExtractionEntity,
    ExtractionStats,
    extract_batch,
    load_stoplist,
)
from registrygraph.ingest.hubkeys import EmptyKey, generate_hub_key, name_slug
from registrygraph.ingest.pipeline import (
    EXTRACTION_RUBRICS,
    IngestStats,
    ROLE_EDGE_MAP,
    ensure_hub_links,
    ingest_structured,
    materialize_weak_nodes,
    select_extraction_targets,
)
from registrygraph.ingest.records import EntityRef, RegistryRecord, read_records, write_records
from registrygraph.ingest.resolution import (
    AbsorbStats,
    MergeStats,
    absorb_weak_nodes,
    dedup_name_hubs,
)

__all__ = [
    "AbsorbStats",
    "EXTRACTION_RUBRICS",
    "EmptyKey",
    "EntityRef",
    "ExtractionEntity",
    "ExtractionStats",
    "IngestStats",
    "MergeStats",
    "ROLE_EDGE_MAP",
    "RegistryRecord",
    "absorb_weak_nodes",
    "dedup_name_hubs",
    "ensure_hub_links",
    "extract_batch",
    "generate_hub_key",
    "ingest_structured",
    "load_stoplist",
    "materialize_weak_nodes",
    "name_slug",
    "read_records",
    "select_extraction_targets",
    "write_records",
]
