from .feeds import FeedFormat, detect_format, parse_feed, read_feed_file
from .inventory import dump_topology, load_topology, match_inventory
from .records import CveRecord, InventoryItem, Topology

__all__ = [
    "CveRecord",
    "FeedFormat",
    "InventoryItem",
    "Topology",
    "detect_format",
    "dump_topology",
    "load_topology",
    "match_inventory",
    "parse_feed",
    "read_feed_file",
]
