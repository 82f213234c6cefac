"""FastAPI service exposing the library over HTTP."""

from .app import create_app

__all__ = ["create_app"]
