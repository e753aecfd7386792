"""Input helpers for the command line."""
