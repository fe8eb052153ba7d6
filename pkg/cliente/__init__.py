"""Cliente de linea de comandos de orbitas."""
