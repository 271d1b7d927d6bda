"""Python bindings for the meshcast C++ library."""

from ._meshcast import *  # noqa: F401,F403
from ._meshcast import MeshcastError, Network

__all__ = [name for name in dir() if not name.startswith("_")]
