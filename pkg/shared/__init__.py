"""DTOs, gramatica de entrada y errores compartidos."""
