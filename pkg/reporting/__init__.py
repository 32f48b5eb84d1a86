from .tables import write_csv, read_csv, write_json, read_json, dumps_json, format_cell, to_jsonable
from .figures import line_plot, bar_plot, scatter_plot, confusion_plot

__all__ = [
    'write_csv',
    'read_csv',
    'write_json',
    'read_json',
    'dumps_json',
    'format_cell',
    'to_jsonable',
    'line_plot',
    'bar_plot',
    'scatter_plot',
    'confusion_plot',
]
