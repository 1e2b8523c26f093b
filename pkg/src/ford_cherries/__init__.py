"""Ford alpha-model trees, their six-colour urn, and exact cherry/pitchfork statistics."""

__version__ = "0.1.0"
