"""Superficie argparse del cliente."""
