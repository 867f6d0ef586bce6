from turnscope.io.annotations import ANNOTATION_COLUMNS, AnnotationLoad, load_annotations, read_annotations
from turnscope.io.skeleton_file import (
    SKELETON_SUFFIX,
    dumps_sequence,
    load_sequence,
    loads_sequence,
    save_sequence,
)
from turnscope.io.tables import format_float, read_table, render_csv, render_text, write_table

__all__ = [
    "ANNOTATION_COLUMNS",
    "AnnotationLoad",
    "SKELETON_SUFFIX",
    "dumps_sequence",
    "format_float",
    "load_annotations",
    "load_sequence",
    "loads_sequence",
    "read_annotations",
    "read_table",
    "render_csv",
    "render_text",
    "save_sequence",
    "write_table",
]
