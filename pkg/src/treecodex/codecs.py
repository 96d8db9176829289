"""Uniform registry of the four tree codes.

Each :class:`Codec` bundles the production (linear-time) encoder/decoder, the
raw array kernels used for bulk work, and — where one exists — the literal
surgery implementation used as a differential oracle.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels, blob, dandelion, happy, prufer
from .core import Code, RootedTree
from .errors import NotATree

Encoder = Callable[[RootedTree], Code]
Decoder = Callable[..., RootedTree]


def _happy_array(s: np.ndarray) -> np.ndarray:
    code, ok = _kernels.happy_encode(s)
    if not ok:
        raise NotATree("input is not a tree")
    return code


@dataclass(frozen=True)
class Codec:
    name: str
    encode: Encoder
    decode: Decoder
    encode_array: Callable[[np.ndarray], np.ndarray]
    decode_array: Callable[[np.ndarray], np.ndarray]
    encode_surgery: Encoder | None = None
    decode_surgery: Decoder | None = None

    def methods(self) -> tuple[str, ...]:
        return ("fast", "surgery") if self.encode_surgery else ("fast",)


CODECS: dict[str, Codec] = {
    "prufer": Codec(
        "prufer",
        prufer.prufer_encode,
        prufer.prufer_decode,
        _kernels.prufer_encode,
        _kernels.prufer_decode,
    ),
    "blob": Codec(
        "blob",
        blob.blob_encode,
        blob.blob_decode,
        _kernels.blob_encode,
        _kernels.blob_decode,
        blob.blob_encode_surgery,
        blob.blob_decode_surgery,
    ),
    "happy": Codec(
        "happy",
        happy.happy_encode,
        happy.happy_decode,
        _happy_array,
        _kernels.happy_decode,
        happy.happy_encode_surgery,
        happy.happy_decode_surgery,
    ),
    "dandelion": Codec(
        "dandelion",
        dandelion.dandelion_encode_fast,
        dandelion.dandelion_decode,
        _kernels.dandelion_encode,
        _kernels.dandelion_decode,
        dandelion.dandelion_encode,
        dandelion.dandelion_decode_surgery,
    ),
}

#: Codecs that have a matrix (involution-principle) definition.
MATRIX_CODECS = ("blob", "happy", "dandelion")


def get_codec(name: str) -> Codec:
    try:
        return CODECS[name]
    except KeyError:
        raise ValueError(f"unknown codec {name!r}; choose from {', '.join(CODECS)}") from None


def encode(t: RootedTree | Sequence[int], codec: str, method: str = "fast") -> Code:
    c = get_codec(codec)
    if method == "fast":
        return c.encode(t)
    if method == "surgery":
        return (c.encode_surgery or c.encode)(t)
    raise ValueError(f"unknown method {method!r}")


def decode(code: Sequence[int], codec: str, method: str = "fast", n: int | None = None) -> RootedTree:
    c = get_codec(codec)
    if method == "fast":
        return c.decode(code, n)
    if method == "surgery":
        return (c.decode_surgery or c.decode)(code, n)
    raise ValueError(f"unknown method {method!r}")


def warm_up() -> None:
    """Compile (or load from cache) every array kernel once."""
    s = np.array([0, 2, 0], dtype=np.int64)
    c = np.array([1], dtype=np.int64)
    for codec in CODECS.values():
        codec.encode_array(s)
        codec.decode_array(c)
    _kernels.first_cycle_vertex(s)
