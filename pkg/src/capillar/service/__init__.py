"""HTTP service wrapping the core package: pydantic schemas, handlers, app."""

from . import handlers, schemas

__all__ = ["handlers", "schemas"]
