"""Keeps the tests directory on sys.path so the shared oracle module imports."""
