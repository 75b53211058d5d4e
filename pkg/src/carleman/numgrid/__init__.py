from .apply import apply_op
from .carleman import CarlemanRatio, admissible_mask, carleman_ratio, rayleigh_min
from .grid import (Bindings, DerivativeCache, Field, GridSpec, derivative, export_csv,
                   read_field, save_field, write_field)

__all__ = ["apply_op", "carleman_ratio", "rayleigh_min", "CarlemanRatio", "admissible_mask",
           "Bindings", "Field", "GridSpec", "DerivativeCache", "derivative", "export_csv",
           "read_field", "write_field", "save_field"]
