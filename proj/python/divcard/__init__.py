"""Software Diversity Card toolchain: parse, validate, grade, export and scan."""

from ._core import (
    PRIVACY_K_DEFAULT,
    SCHEMA_VERSION,
    Card,
    import_json,
    lookup_country,
    lookup_language,
    match_community_file,
    new_card,
    parse,
    parse_date,
    scan_path,
    skeleton_from_path,
)

__all__ = [
    "PRIVACY_K_DEFAULT",
    "SCHEMA_VERSION",
    "Card",
    "import_json",
    "lookup_country",
    "lookup_language",
    "match_community_file",
    "new_card",
    "parse",
    "parse_date",
    "scan_path",
    "skeleton_from_path",
]
