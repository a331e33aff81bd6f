"""HTTP service exposing evolved games for human play and rating."""

from .app import create_app
from .store import DuplicateRatingError, GameRegistry, RatingsStore, SessionStore

__all__ = [
    "create_app",
    "DuplicateRatingError",
    "GameRegistry",
    "RatingsStore",
    "SessionStore",
]
