"""Figure rendering for the zhangmap workbench's CSV outputs.

Consumes only CSV files (no in-process binding to the computing package):
heatmap <- sweep CSV, curve <- curve CSV, bifurcation <- bifurcate CSV,
orbittrace <- orbit CSV.
"""

from .render import (
    EmptyInput,
    FigureSpec,
    SchemaMismatch,
    KINDS,
    SCHEMAS,
    render,
)

__version__ = "0.1.0"
