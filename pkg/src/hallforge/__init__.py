"""hallforge: exact Hall-algebra computations for quivers with loops over F_q."""

__version__ = "0.1.0"
