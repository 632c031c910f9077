"""postural: CVE feeds + inventory -> attack graphs, risk scores, what-if edits."""

__version__ = "0.1.0"
