from .measure import ComplexityKind, ComplexityMeasure, complexity_path, measure

__all__ = ["ComplexityKind", "ComplexityMeasure", "complexity_path", "measure"]
