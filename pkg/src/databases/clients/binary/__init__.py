"""Little-endian binary container client."""

from .container import BinaryReader, BinaryWriter

__all__ = ["BinaryReader", "BinaryWriter"]
