from ._toric import ToricError, hodge, is_reflexive, kodaira, points, polar, run_criteria, vertices

__all__ = ["ToricError", "hodge", "is_reflexive", "kodaira", "points", "polar", "run_criteria", "vertices"]
