"""Reproducible random streams.

Every random draw in the package flows through a Philox4x64 generator keyed
by (master_seed, stream label).  Philox is counter-based, so two streams with
different labels are statistically independent and a stream's output depends
only on its key, never on how many draws other streams made.  This is what
makes experiment CSVs byte-identical across reruns and across worker counts.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def fold_label(path: str) -> int:
    """Fold an arbitrary label string into a uint64 (first 8 bytes of blake2b)."""
    digest = hashlib.blake2b(path.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def stream_generator(master_seed: int, *labels: object) -> np.random.Generator:
    """Generator for the stream named by the label path under master_seed."""
    path = "/".join(str(part) for part in labels)
    key = [master_seed & _MASK64, fold_label(path)]
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class RngTree:
    """A node in the label hierarchy; `child` refines the path, `generator` taps it.

    Typical use: RngTree(seed).child("spectrum-arch").child("n12").child("inst3")
    handed to a circuit assembler, which taps per-block children ("heat-1", ...).
    """

    master_seed: int
    path: tuple[str, ...] = ()

    def child(self, label: object) -> "RngTree":
        return RngTree(self.master_seed, self.path + (str(label),))

    def generator(self) -> np.random.Generator:
        return stream_generator(self.master_seed, *self.path)
