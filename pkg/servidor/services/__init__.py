"""Construcciones, oraculo, factorizacion y analisis."""
