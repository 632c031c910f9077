from .container import payload_digest, unwrap, wrap
from .filestore import EDIT_LOG_SCHEMA, EditLogEntry, GraphDocument, GraphListing, Store

__all__ = [
    "EDIT_LOG_SCHEMA",
    "EditLogEntry",
    "GraphDocument",
    "GraphListing",
    "Store",
    "payload_digest",
    "unwrap",
    "wrap",
]
