"""Shipped groups, representation tuples and UBBs."""

from __future__ import annotations

from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .formats import read_cover, read_group, read_tuple, read_ubb
from .group import PermutationGroup
from .twisted import TwistedCode
from .ubb import CoveringDesign, Ubb

__all__ = ["CODES", "GROUPS", "data_path", "load_code", "load_cover", "load_group", "load_ubb"]

CODES = ("s6", "a6", "asl32", "psl2_11", "m12", "a7_15", "aff_a6", "aff_s6", "m22")
GROUPS = CODES + ("pgl27",)


def data_path(name: str) -> Path:
    return Path(str(files("twistcode.data").joinpath(name)))


@lru_cache(maxsize=None)
def load_code(key: str) -> TwistedCode:
    return read_tuple(data_path(f"{key}.tuple"))


@lru_cache(maxsize=None)
def load_group(key: str) -> PermutationGroup:
    """The group of a fixture; for codes this is the code's first component group."""
    if key in CODES:
        return load_code(key).g1
    return read_group(data_path(f"{key}.group"))


def load_ubb(key: str) -> Ubb:
    return read_ubb(data_path(f"{key}.ubb"), load_group(key))


def load_cover(name: str) -> CoveringDesign:
    if not name.endswith(".cover"):
        name += ".cover"
    return read_cover(data_path(name))
