"""Aritmetica exacta: surds, reales perezosos, fracciones continuas y SL(2,Z)."""
