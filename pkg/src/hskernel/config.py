"""Desk-scale resource bounds shared by every module."""

from dataclasses import dataclass


class DeskScaleError(RuntimeError):
    """A configured size bound was exceeded; no partial answer is returned."""


@dataclass
class Limits:
    max_vars: int = 8
    max_length: int = 16
    # labelled set-partition enumeration (oracle route only)
    max_partition_size: int = 8
    max_pairs: int = 100_000


LIMITS = Limits()


def check_vars(n: int) -> None:
    if n > LIMITS.max_vars:
        raise DeskScaleError(f"{n} variables exceeds the limit of {LIMITS.max_vars}")


def check_length(m: int) -> None:
    if m > LIMITS.max_length:
        raise DeskScaleError(f"length {m} exceeds the limit of {LIMITS.max_length}")
