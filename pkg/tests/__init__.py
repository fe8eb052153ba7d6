"""Tests del proyecto."""
