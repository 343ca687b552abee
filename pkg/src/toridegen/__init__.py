"""Small toric degenerations, reflexive polytopes and mirror periods in exact arithmetic."""

__version__ = "0.1.0"
