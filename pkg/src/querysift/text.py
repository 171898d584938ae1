"""Tokenization shared by every stage.

Casefold, split on runs of non-alphanumeric characters, drop empties.
No stemming and no stopword removal.
"""
import re

_TOKEN = re.compile(r"[^\W_]+")


def tokenize(text):
    return _TOKEN.findall(text.casefold())


def normalize_query(text):
    """Trimmed, casefolded form used for exact text matching."""
    return text.strip().casefold()
