"""Linear deterministic channel model: channels, knowledge structures, schemes.

The channel maps length-m binary transmit vectors through down-shift matrices,
Y_i = sum_j S^(m - n_ij) X_j over GF(2), where n_ij is the integer gain from
transmitter j to receiver i and m is the largest gain in the network.  A
linear scheme assigns each transmitter one GF(2) generator matrix per message
it knows; zero-error decodability reduces to a rank condition on the
per-message receive maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .gf2 import BinaryMatrix, hstack

# Gains beyond this do not fit the packed-word layout; documented limit.
MAX_LEVELS = 64


class UndecodableSchemeError(Exception):
    """Raised when a scheme fails zero-error decoding at some receiver."""

    def __init__(self, receiver: int):
        self.receiver = receiver
        super().__init__(f"receiver {receiver} cannot decode its message")


def shift_matrix(m: int, n: int) -> BinaryMatrix:
    """The m-by-m down-shift matrix S^(m-n) for a link of gain n.

    Shifts an input vector down by (m - n) positions, so only the top n
    input levels survive; n = m gives the identity, n = 0 annihilates.
    """
    if n < 0 or m < 0 or n > m:
        raise ValueError(f"gain n={n} outside [0, m={m}]")
    if m > MAX_LEVELS:
        raise ValueError(f"m={m} exceeds the supported {MAX_LEVELS} levels")
    t = m - n
    return BinaryMatrix(m, m, tuple((1 << (r - t)) if r >= t else 0 for r in range(m)))


def shift_power(m: int, t: int) -> BinaryMatrix:
    """S^t for any t >= 0 (the zero matrix once t >= m)."""
    if t < 0:
        raise ValueError("negative shift power")
    return shift_matrix(m, max(m - t, 0))


@dataclass(frozen=True)
class LdaChannel:
    """A K-user channel given by its K x K integer gain matrix.

    gains[i][j] is the exponent n_ij from transmitter j+1 to receiver i+1.
    """

    gains: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.gains)
        if k < 1:
            raise ValueError("channel needs at least one user")
        for row in self.gains:
            if len(row) != k:
                raise ValueError("gain matrix must be square")
            for g in row:
                if not isinstance(g, int) or g < 0:
                    raise ValueError("gains must be nonnegative integers")
        if self.m > MAX_LEVELS:
            raise ValueError(f"max gain {self.m} exceeds the supported {MAX_LEVELS} levels")

    @property
    def K(self) -> int:
        return len(self.gains)

    @property
    def m(self) -> int:
        return max(max(row) for row in self.gains)

    def gain(self, rx: int, tx: int) -> int:
        """n_ij with 1-based receiver rx and transmitter tx."""
        return self.gains[rx - 1][tx - 1]

    def link(self, rx: int, tx: int) -> BinaryMatrix:
        """The shift matrix applied to transmitter tx as seen by receiver rx."""
        return shift_matrix(self.m, self.gain(rx, tx))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "LdaChannel":
        return LdaChannel(tuple(tuple(int(g) for g in row) for row in rows))

    @staticmethod
    def symmetric(n_d: int, n_i: int, n_c: int, n_33: int,
                  n_31: Optional[int] = None, n_32: Optional[int] = None) -> "LdaChannel":
        """Three-user channel with equal direct, cross and cognitive links.

        Links into the third (cognitive) receiver are unconstrained by the
        parameterization; they default to the cross gain n_i.
        """
        a = n_i if n_31 is None else n_31
        b = n_i if n_32 is None else n_32
        return LdaChannel.from_rows([[n_d, n_i, n_c], [n_i, n_d, n_c], [a, b, n_33]])

    def to_json(self) -> str:
        return json.dumps({"K": self.K, "gains": [list(r) for r in self.gains]})

    @staticmethod
    def from_json(text: str) -> "LdaChannel":
        data = json.loads(text)
        ch = LdaChannel.from_rows(data["gains"])
        if "K" in data and data["K"] != ch.K:
            raise ValueError("K field disagrees with the gain matrix")
        return ch


@dataclass(frozen=True)
class KnowledgeStructure:
    """Which message indices each transmitter may encode (all 1-based).

    known[j-1] is the set for transmitter j.  A transmitter whose own index
    is absent from every set is a pure relay; its message rate is
    structurally zero.
    """

    known: tuple[frozenset[int], ...]

    def __post_init__(self):
        k = len(self.known)
        for s in self.known:
            for msg in s:
                if not 1 <= msg <= k:
                    raise ValueError(f"message index {msg} outside 1..{k}")

    @property
    def K(self) -> int:
        return len(self.known)

    def knows(self, tx: int, msg: int) -> bool:
        return msg in self.known[tx - 1]

    def transmitters_knowing(self, msg: int) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.K + 1) if msg in self.known[j - 1])

    @staticmethod
    def of(sets: Sequence[Sequence[int]]) -> "KnowledgeStructure":
        return KnowledgeStructure(tuple(frozenset(s) for s in sets))

    @staticmethod
    def cms(k: int) -> "KnowledgeStructure":
        """Cumulative sharing: transmitter j knows messages 1..j."""
        return KnowledgeStructure.of([range(1, j + 1) for j in range(1, k + 1)])

    @staticmethod
    def coms(k: int) -> "KnowledgeStructure":
        """Cognitive-only sharing: the last transmitter knows everything."""
        return KnowledgeStructure.of([[j] for j in range(1, k)] + [list(range(1, k + 1))])

    @staticmethod
    def pms(k: int) -> "KnowledgeStructure":
        """Primary sharing: every transmitter knows message 1 and its own."""
        return KnowledgeStructure.of([{1, j} for j in range(1, k + 1)])

    @staticmethod
    def ifc_cr(k: int) -> "KnowledgeStructure":
        """Interference channel plus a message-less cognitive relay (last Tx)."""
        return KnowledgeStructure.of([[j] for j in range(1, k)] + [list(range(1, k))])

    def to_json(self) -> str:
        return json.dumps({"known": [sorted(s) for s in self.known]})

    @staticmethod
    def from_json(text: str) -> "KnowledgeStructure":
        return KnowledgeStructure.of(json.loads(text)["known"])


@dataclass(frozen=True)
class LinearScheme:
    """Per-message bit counts plus one m x b_k generator per (tx, message).

    generators[(j, k)] maps the b_k message bits of W_k onto transmitter j's
    levels; a missing entry is the all-zero generator.  Transmit vectors are
    X_j = sum_k G_{j,k} W_k over GF(2).
    """

    bits: tuple[int, ...]
    generators: Mapping[tuple[int, int], BinaryMatrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "generators", MappingProxyType(dict(self.generators)))
        for b in self.bits:
            if b < 0:
                raise ValueError("negative bit count")
        for (j, k), g in self.generators.items():
            if not 1 <= k <= len(self.bits):
                raise ValueError(f"generator for unknown message {k}")
            if g.cols != self.bits[k - 1]:
                raise ValueError(f"generator ({j},{k}) has {g.cols} columns, "
                                 f"expected {self.bits[k - 1]}")

    @property
    def K(self) -> int:
        return len(self.bits)

    def generator(self, tx: int, msg: int, m: int) -> BinaryMatrix:
        return self.generators.get((tx, msg), BinaryMatrix.zeros(m, self.bits[msg - 1]))

    def validate(self, channel: LdaChannel, knowledge: KnowledgeStructure) -> None:
        """Raise unless every generator is allowed and correctly shaped."""
        if self.K != channel.K or knowledge.K != channel.K:
            raise ValueError("user-count mismatch between channel, knowledge, scheme")
        for (j, k), g in self.generators.items():
            if not knowledge.knows(j, k):
                raise ValueError(f"transmitter {j} does not know message {k}")
            if g.rows != channel.m:
                raise ValueError(f"generator ({j},{k}) has {g.rows} rows, expected m={channel.m}")
        for k, b in enumerate(self.bits, start=1):
            if b > 0 and not knowledge.transmitters_knowing(k):
                raise ValueError(f"message {k} has rate but no transmitter knows it")

    def to_json(self) -> str:
        gens = [{"tx": j, "message": k, "rows": g.to_row_strings()}
                for (j, k), g in sorted(self.generators.items())]
        return json.dumps({"bits": list(self.bits), "generators": gens}, indent=2)

    @staticmethod
    def from_json(text: str) -> "LinearScheme":
        data = json.loads(text)
        gens = {}
        for item in data["generators"]:
            gens[(item["tx"], item["message"])] = BinaryMatrix.from_row_strings(item["rows"])
        return LinearScheme(tuple(data["bits"]), gens)


def receive_map(channel: LdaChannel, knowledge: KnowledgeStructure,
                scheme: LinearScheme, rx: int) -> list[BinaryMatrix]:
    """Per-message maps M_{rx,k} with Y_rx = sum_k M_{rx,k} W_k.

    M_{rx,k} aggregates every transmitter knowing message k through its link
    shift, so a relay's contribution lands in the same block as the message
    it carries.
    """
    scheme.validate(channel, knowledge)
    m = channel.m
    out = []
    for k in range(1, channel.K + 1):
        acc = BinaryMatrix.zeros(m, scheme.bits[k - 1])
        for j in knowledge.transmitters_knowing(k):
            g = scheme.generators.get((j, k))
            if g is not None:
                acc = acc + (channel.link(rx, j) @ g)
        out.append(acc)
    return out


def decodable(channel: LdaChannel, knowledge: KnowledgeStructure,
              scheme: LinearScheme, rx: int) -> bool:
    """Zero-error decodability of W_rx at receiver rx.

    True iff rank[M_{rx,1} | ... | M_{rx,K}] = rank[interference blocks] + b_rx,
    i.e. no GF(2) combination of interference columns can mimic a nonzero
    message-word difference.
    """
    b = scheme.bits[rx - 1]
    if b == 0:
        return True
    maps = receive_map(channel, knowledge, scheme, rx)
    full = hstack(maps)
    interference = [mk for k, mk in enumerate(maps, start=1) if k != rx]
    interference_rank = hstack(interference).rank() if interference else 0
    return full.rank() == interference_rank + b


def scheme_rates(channel: LdaChannel, knowledge: KnowledgeStructure,
                 scheme: LinearScheme) -> tuple[int, ...]:
    """Rate vector (b_1, ..., b_K) in bits per channel use.

    Raises UndecodableSchemeError naming the first receiver that fails.
    """
    for rx in range(1, channel.K + 1):
        if scheme.bits[rx - 1] > 0 and not decodable(channel, knowledge, scheme, rx):
            raise UndecodableSchemeError(rx)
    return tuple(scheme.bits)
