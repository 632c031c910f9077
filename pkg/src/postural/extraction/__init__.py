from .annotations import description_digest, import_annotations
from .attributes import PORT_OF_LABEL, NodeAttributes, assemble_attributes
from .entities import EntityLabel, EntitySpan, ExtractionRules, extract_entities, load_lexicon

__all__ = [
    "EntityLabel",
    "EntitySpan",
    "ExtractionRules",
    "NodeAttributes",
    "PORT_OF_LABEL",
    "assemble_attributes",
    "description_digest",
    "extract_entities",
    "import_annotations",
    "load_lexicon",
]
