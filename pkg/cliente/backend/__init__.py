"""Controlador, gateway, validadores y formateadores del cliente."""
