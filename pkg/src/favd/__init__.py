"""favd: rank dangerous words in function names and triage likely-vulnerable functions."""

__version__ = "0.1.0"
