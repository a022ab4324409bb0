from .cf_core import eval_cf, simple_cf, crossing_number, canonicalize
from .slopes import analyze
