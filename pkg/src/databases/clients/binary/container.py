"""Little-endian primitives for the dataset and checkpoint containers.

Both containers start with 4 magic bytes and an unsigned 16-bit format
version; everything after that is written with these helpers.
"""

import json
import struct
from pathlib import Path
from typing import Any, BinaryIO

import numpy as np

from src.errors import FormatError


class BinaryWriter:
    """Sequential writer over a binary stream."""

    def __init__(self, stream: BinaryIO):
        self.stream = stream

    def header(self, magic: bytes, version: int) -> None:
        """Write magic bytes and format version."""
        self.stream.write(magic)
        self.u16(version)

    def u8(self, v: int) -> None:
        self.stream.write(struct.pack("<B", v))

    def u16(self, v: int) -> None:
        self.stream.write(struct.pack("<H", v))

    def u32(self, v: int) -> None:
        self.stream.write(struct.pack("<I", v))

    def i32(self, v: int) -> None:
        self.stream.write(struct.pack("<i", v))

    def text(self, s: str) -> None:
        """Write a u16 length-prefixed UTF-8 string."""
        data = s.encode("utf-8")
        if len(data) > 0xFFFF:
            raise FormatError(f"string too long for container: {len(data)} bytes")
        self.u16(len(data))
        self.stream.write(data)

    def blob_json(self, obj: Any) -> None:
        """Write a u32 length-prefixed JSON document with sorted keys."""
        data = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
        self.u32(len(data))
        self.stream.write(data)

    def f64_array(self, arr: np.ndarray) -> None:
        """Write values as row-major little-endian IEEE-754 doubles."""
        self.stream.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())

    def u32_array(self, arr: np.ndarray) -> None:
        self.stream.write(np.ascontiguousarray(arr, dtype="<u4").tobytes())


class BinaryReader:
    """Sequential reader over a binary stream; truncation raises FormatError."""

    def __init__(self, stream: BinaryIO, source: str | Path = "<stream>"):
        self.stream = stream
        self.source = str(source)

    def _read(self, n: int) -> bytes:
        data = self.stream.read(n)
        if len(data) != n:
            raise FormatError(f"truncated container: {self.source}")
        return data

    def header(self, magic: bytes, version: int) -> int:
        """Read and check magic bytes and format version.

        Raises:
            FormatError: If the magic bytes differ or the version is unsupported.
        """
        found = self._read(len(magic))
        if found != magic:
            raise FormatError(f"bad magic bytes in {self.source}: expected {magic!r}, got {found!r}")
        found_version = self.u16()
        if found_version != version:
            raise FormatError(
                f"format version mismatch in {self.source}: expected {version}, got {found_version}"
            )
        return found_version

    def u8(self) -> int:
        return struct.unpack("<B", self._read(1))[0]

    def u16(self) -> int:
        return struct.unpack("<H", self._read(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self._read(4))[0]

    def i32(self) -> int:
        return struct.unpack("<i", self._read(4))[0]

    def text(self) -> str:
        n = self.u16()
        return self._read(n).decode("utf-8")

    def blob_json(self) -> Any:
        n = self.u32()
        try:
            return json.loads(self._read(n).decode("utf-8"))
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid metadata block in {self.source}: {e}") from e

    def f64_array(self, count: int) -> np.ndarray:
        return np.frombuffer(self._read(8 * count), dtype="<f8").astype(np.float64)

    def u32_array(self, count: int) -> np.ndarray:
        return np.frombuffer(self._read(4 * count), dtype="<u4").astype(np.int64)

    def at_end(self) -> bool:
        """True when no bytes remain."""
        return self.stream.read(1) == b""
