"""Calculo exacto de aproximaciones en orbitas de SL(2,Z)."""
