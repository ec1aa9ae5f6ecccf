"""Constructive schemes and an exhaustive search oracle for small channels.

relay_zero_force builds the canonical relay-aided scheme: both primaries send
plain bits on their top levels and the relay superposes shifted copies so the
cross interference cancels over GF(2) at both primary receivers.
sneak_bits_extension adds private bits for user 3 on the levels that neither
primary receiver observes, pre-cancelling any residual interference there.

brute_force_best is an independent oracle.  Decodability of a scheme depends
only on the GF(2) span of each message's received columns at each receiver
with positive rate, so the search enumerates, per message, every reachable
tuple of projected column spans (a complete quotient of the space of
generator assignments) and then looks for a compatible tuple across messages.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .gf2 import BinaryMatrix, solve, solve_matrix
from .lda import (
    KnowledgeStructure,
    LdaChannel,
    LinearScheme,
    decodable,
    scheme_rates,
)

ORACLE_MAX_LEVELS = 4
ORACLE_MAX_BITS = 8
_MAX_JOINT_DIM = 13
_MAX_STATES = 200_000


class OracleBudgetError(Exception):
    """Raised when a channel is too large for the exhaustive oracle."""


@dataclass(frozen=True)
class OracleResult:
    rates: tuple[int, ...]
    scheme: LinearScheme

    @property
    def sum_rate(self) -> int:
        return sum(self.rates)


# ---------------------------------------------------------------------------
# constructive schemes
# ---------------------------------------------------------------------------

def _top_bits(m: int, b: int) -> BinaryMatrix:
    """m x b generator placing b message bits on the top b levels."""
    return BinaryMatrix(m, b, tuple((1 << r) if r < b else 0 for r in range(m)))


def relay_zero_force(channel: LdaChannel, b1: int, b2: int) -> Optional[LinearScheme]:
    """Relay-aided scheme with rates (b1, b2, 0), or None when infeasible.

    Transmitter 3 carries no message of its own; its generators are solved so
    that message 2 vanishes at receiver 1 and message 1 vanishes at
    receiver 2.  None is returned when the cancellations have no solution or
    the resulting scheme fails the decodability check.
    """
    if channel.K != 3:
        raise ValueError("relay construction is defined for K = 3")
    if b1 < 0 or b2 < 0:
        raise ValueError("negative rates requested")
    m = channel.m
    if b1 > m or b2 > m:
        return None
    g11 = _top_bits(m, b1)
    g22 = _top_bits(m, b2)
    g32 = solve_matrix(channel.link(1, 3), channel.link(1, 2) @ g22)
    g31 = solve_matrix(channel.link(2, 3), channel.link(2, 1) @ g11)
    if g31 is None or g32 is None:
        return None
    gens = {(1, 1): g11, (2, 2): g22, (3, 1): g31, (3, 2): g32}
    scheme = LinearScheme((b1, b2, 0), {k: g for k, g in gens.items() if not g.is_zero()})
    knowledge = KnowledgeStructure.ifc_cr(3)
    if not (decodable(channel, knowledge, scheme, 1)
            and decodable(channel, knowledge, scheme, 2)):
        return None
    return scheme


def sneak_bits_extension(channel: LdaChannel, knowledge: KnowledgeStructure,
                         base: LinearScheme) -> LinearScheme:
    """Add n33 - max(n13, n23) private bits for user 3 below the overheard levels.

    The added bits ride on levels of X_3 that neither primary receiver
    observes, so users 1 and 2 are untouched.  Residual interference on the
    corresponding receive positions of receiver 3 is pre-cancelled by editing
    transmitter 3's generators on those same hidden levels, which requires
    transmitter 3 to know every message it cancels.
    """
    if channel.K != 3:
        raise ValueError("extension is defined for K = 3")
    m = channel.m
    thresh = max(channel.gain(1, 3), channel.gain(2, 3))
    n33 = channel.gain(3, 3)
    if n33 <= thresh:
        raise ValueError("own link does not exceed the overheard levels; nothing to add")
    if base.bits[2] != 0:
        raise ValueError("base scheme already assigns bits to user 3")
    if not knowledge.knows(3, 3):
        raise ValueError("transmitter 3 must know its own message")
    b3 = n33 - thresh
    hidden_rows = range(thresh, n33)
    g33 = BinaryMatrix.from_columns([1 << r for r in hidden_rows], m)
    gens = dict(base.generators)
    gens[(3, 3)] = g33
    draft = LinearScheme((base.bits[0], base.bits[1], b3), gens)
    from .lda import receive_map  # local import avoids a cycle at module load

    maps = receive_map(channel, knowledge, draft, 3)
    shift = m - n33
    for k in (1, 2):
        fixes = {}
        for row in hidden_rows:
            word = maps[k - 1].words[row + shift]
            if word:
                fixes[row] = word
        if not fixes:
            continue
        if not knowledge.knows(3, k):
            raise ValueError(f"message {k} interferes on hidden levels but transmitter 3 "
                             "does not know it")
        old = gens.get((3, k), BinaryMatrix.zeros(m, base.bits[k - 1]))
        words = list(old.words)
        for row, word in fixes.items():
            words[row] ^= word
        gens[(3, k)] = BinaryMatrix(m, old.cols, tuple(words))
    return LinearScheme((base.bits[0], base.bits[1], b3),
                        {k: g for k, g in gens.items() if not g.is_zero()})


_EXAMPLE_GAINS = {
    1: [[5, 3, 3], [3, 2, 3], [5, 3, 2]],
    2: [[1, 2, 3], [1, 3, 2], [1, 3, 4]],
    3: [[3, 2, 4], [1, 2, 2], [3, 3, 3]],
}


def example_scheme(which: int) -> tuple[LdaChannel, KnowledgeStructure, LinearScheme]:
    """The three reference channels with verified sum-optimal schemes.

    1: relay-only zero forcing, rates (5, 3, 0).
    2: relay base plus one private bit below the overheard levels, rates (1, 2, 1).
    3: distributed relaying of user 1's bits through both cognitive
       transmitters, rates (4, 2, 0); a message-less relay alone caps at 4.
    """
    if which not in _EXAMPLE_GAINS:
        raise ValueError("example index must be 1, 2 or 3")
    channel = LdaChannel.from_rows(_EXAMPLE_GAINS[which])
    if which == 1:
        scheme = relay_zero_force(channel, 5, 3)
        assert scheme is not None
        return channel, KnowledgeStructure.ifc_cr(3), scheme
    if which == 2:
        base = relay_zero_force(channel, 1, 2)
        assert base is not None
        knowledge = KnowledgeStructure.of([[1], [2], [1, 2, 3]])
        return channel, knowledge, sneak_bits_extension(channel, knowledge, base)
    knowledge = KnowledgeStructure.of([[1], [1, 2], [1, 2]])
    i4 = BinaryMatrix.identity(4)
    g21 = BinaryMatrix.from_entries([[0, 0, 0, 1], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    g22 = BinaryMatrix.from_entries([[1, 0], [0, 1], [0, 0], [0, 0]])
    g31 = BinaryMatrix.from_entries([[0, 0, 0, 1], [1, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])
    g32 = BinaryMatrix.from_entries([[0, 0], [0, 0], [1, 0], [0, 1]])
    scheme = LinearScheme((4, 2, 0), {(1, 1): i4, (2, 1): g21, (2, 2): g22,
                                      (3, 1): g31, (3, 2): g32})
    return channel, knowledge, scheme


# ---------------------------------------------------------------------------
# subspace tables for the oracle (vectors of F_2^m as ints 0..2^m-1)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _subspace_tables(m: int):
    """Canonical IDs for every subspace of F_2^m plus extend/sum/dim tables."""
    nvec = 1 << m

    def closure(mask: int, v: int) -> int:
        out = mask
        rest = mask
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            out |= 1 << (e ^ v)
        return out

    masks = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for mask in frontier:
            for v in range(1, nvec):
                c = closure(mask, v)
                if c not in masks:
                    masks.add(c)
                    nxt.append(c)
        frontier = nxt
    ordered = sorted(masks, key=lambda mk: (bin(mk).count("1"), mk))
    index = {mk: i for i, mk in enumerate(ordered)}
    dim = np.array([bin(mk).count("1").bit_length() - 1 for mk in ordered], dtype=np.int8)
    ext = np.zeros((len(ordered), nvec), dtype=np.int16)
    for i, mk in enumerate(ordered):
        for v in range(nvec):
            ext[i, v] = index[closure(mk, v)]
    ssum = np.zeros((len(ordered), len(ordered)), dtype=np.int16)
    for i, mi in enumerate(ordered):
        for j, mj in enumerate(ordered):
            acc = mi
            rest = mj
            while rest:
                e = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc = closure(acc, e)
            ssum[i, j] = index[acc]
    trivial_int = dim[ssum] == dim[:, None] + dim[None, :]
    return ext, ssum, dim, trivial_int


# ---------------------------------------------------------------------------
# per-message reachable signatures
# ---------------------------------------------------------------------------

def _span_reduce(vectors: list[int]) -> list[int]:
    """Greedy GF(2) basis of a list of packed vectors."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


class _MessageSpace:
    """Joint receive space of one message over the active receiver blocks."""

    def __init__(self, channel: LdaChannel, knowledge: KnowledgeStructure,
                 msg: int, active: tuple[int, ...]):
        self.m = channel.m
        self.active = active
        self.knowers = knowledge.transmitters_knowing(msg)
        columns = []
        for j in self.knowers:
            links = [channel.link(rx, j) for rx in active]
            for level in range(self.m):
                joint = 0
                for pos, link in enumerate(links):
                    joint |= link.column(level) << (pos * self.m)
                columns.append(joint)
        self.phi_columns = columns
        basis = _span_reduce(columns)
        if len(basis) > _MAX_JOINT_DIM:
            raise OracleBudgetError(
                f"joint receive space of message {msg} has dimension {len(basis)}; "
                f"the oracle supports at most {_MAX_JOINT_DIM}")
        elements = [0]
        for b in basis:
            elements += [e ^ b for e in elements]
        self.elements = sorted(elements)

    def blocks(self, joint: int) -> tuple[int, ...]:
        mask = (1 << self.m) - 1
        return tuple((joint >> (pos * self.m)) & mask for pos in range(len(self.active)))

    def preimage_generators(self, joints: list[int]) -> dict[int, BinaryMatrix]:
        """Solve for per-transmitter generator columns realizing the joint columns."""
        m = self.m
        phi = BinaryMatrix.from_columns(self.phi_columns, len(self.active) * m)
        per_tx: dict[int, list[int]] = {j: [] for j in self.knowers}
        for joint in joints:
            a = solve(phi, joint)
            if a is None:
                raise RuntimeError("witness vector left the reachable space")
            for idx, j in enumerate(self.knowers):
                per_tx[j].append((a >> (idx * m)) & ((1 << m) - 1))
        return {j: BinaryMatrix.from_columns(cols, m) for j, cols in per_tx.items()}


class _SignatureSearch:
    """Reachable span-signature sets per message, by subspace-BFS with witnesses."""

    def __init__(self, channel: LdaChannel, knowledge: KnowledgeStructure,
                 msg: int, active: tuple[int, ...], max_level: int):
        self.space = _MessageSpace(channel, knowledge, msg, active)
        ext, _, _, _ = _subspace_tables(channel.m)
        nblocks = len(active)
        vec_blocks = np.array([self.space.blocks(v) for v in self.space.elements],
                              dtype=np.int16)
        start = tuple([0] * nblocks)
        self.levels: list[np.ndarray] = [np.array([start], dtype=np.int16)]
        self.witness: list[dict[tuple, tuple]] = [{}]
        nv = len(self.space.elements)
        for _ in range(max_level):
            cur = self.levels[-1]
            wit: dict[tuple, tuple] = {}
            uniq_rows: dict[tuple, None] = {}
            chunk = max(1, 4_000_000 // max(1, nv * nblocks))
            for lo in range(0, len(cur), chunk):
                part = cur[lo:lo + chunk]
                nxt = ext[part[:, None, :], vec_blocks[None, :, :]]
                flat = nxt.reshape(-1, nblocks)
                uniq, first = np.unique(flat, axis=0, return_index=True)
                for row, idx in zip(uniq, first):
                    key = tuple(int(x) for x in row)
                    if key in wit:
                        continue
                    src, vec = divmod(int(idx), nv)
                    parent = tuple(int(x) for x in part[src])
                    wit[key] = (parent, self.space.elements[vec])
                    uniq_rows[key] = None
            if len(uniq_rows) > _MAX_STATES:
                raise OracleBudgetError("signature search exceeded the state budget")
            self.levels.append(np.array(sorted(uniq_rows), dtype=np.int16))
            self.witness.append(wit)

    def signatures(self, level: int) -> np.ndarray:
        return self.levels[level]

    def witness_vectors(self, level: int, state: tuple) -> list[int]:
        """Backtrack one deterministic chain of added joint columns."""
        out = []
        cur = state
        for t in range(level, 0, -1):
            parent, vec = self.witness[t][cur]
            out.append(vec)
            cur = parent
        out.reverse()
        return out


# ---------------------------------------------------------------------------
# the oracle
# ---------------------------------------------------------------------------

def _message_caps(channel: LdaChannel, knowledge: KnowledgeStructure) -> list[int]:
    """Single-user cut per message: the best gain into its receiver from any
    transmitter that knows it (zero when nobody does)."""
    caps = []
    for k in range(1, channel.K + 1):
        knowers = knowledge.transmitters_knowing(k)
        caps.append(max((channel.gain(k, j) for j in knowers), default=0))
    return caps


def _allocations(caps: list[int], total: int):
    ranges = [range(min(c, total) + 1) for c in caps]
    for alloc in itertools.product(*ranges):
        if sum(alloc) == total:
            yield alloc


def _feasible_assignment(channel, knowledge, bits, searches, tables):
    """Find one signature per active message satisfying all rank conditions."""
    _, ssum, dim, triv = tables
    m = channel.m
    active = tuple(i for i in range(1, channel.K + 1) if bits[i - 1] > 0)
    pos_of = {rx: p for p, rx in enumerate(active)}

    cands = {}
    for k in active:
        arr = searches[k].signatures(bits[k - 1])
        own = arr[:, pos_of[k]]
        keep = dim[own] == bits[k - 1]
        for i in active:
            if i != k:
                keep &= dim[arr[:, pos_of[i]]] <= m - bits[i - 1]
        arr = arr[keep]
        if len(arr) == 0:
            return None
        cands[k] = arr

    order = sorted(active, key=lambda k: len(cands[k]))

    def extend(depth, chosen, interf):
        if depth == len(order):
            return dict(chosen)
        k = order[depth]
        pk = pos_of[k]
        for row in cands[k]:
            new_interf = list(interf)
            ok = True
            for i in active:
                pi = pos_of[i]
                if i == k:
                    continue
                new_interf[pi] = int(ssum[new_interf[pi], row[pi]])
                if dim[new_interf[pi]] > m - bits[i - 1]:
                    ok = False
                    break
                if i in chosen and not triv[chosen[i][pi], new_interf[pi]]:
                    ok = False
                    break
            if ok and not triv[row[pk], interf[pk]]:
                ok = False
            if not ok:
                continue
            chosen[k] = row
            found = extend(depth + 1, chosen, new_interf)
            if found is not None:
                return found
            del chosen[k]
        return None

    assignment = extend(0, {}, [0] * len(active))
    if assignment is None:
        return None
    return {k: tuple(int(x) for x in v) for k, v in assignment.items()}


def brute_force_best(channel: LdaChannel, knowledge: KnowledgeStructure,
                     max_total_bits: int) -> OracleResult:
    """Best decodable linear scheme by sum rate, by complete search.

    Enumerates bit allocations in decreasing sum (lexicographic within a sum,
    so the first hit is the lexicographically smallest maximizing rate
    vector), certifying infeasibility of every larger sum.  Refuses channels
    beyond the search budget.
    """
    if channel.m > ORACLE_MAX_LEVELS:
        raise OracleBudgetError(
            f"oracle budget is m <= {ORACLE_MAX_LEVELS}; channel has m = {channel.m}")
    if max_total_bits > ORACLE_MAX_BITS:
        raise OracleBudgetError(
            f"oracle budget is at most {ORACLE_MAX_BITS} total bits")
    if knowledge.K != channel.K:
        raise ValueError("knowledge structure does not match the channel")
    tables = _subspace_tables(channel.m)
    caps = _message_caps(channel, knowledge)
    search_cache: dict[tuple, dict[int, _SignatureSearch]] = {}

    for total in range(min(max_total_bits, sum(caps)), -1, -1):
        for bits in _allocations(caps, total):
            active = tuple(i for i in range(1, channel.K + 1) if bits[i - 1] > 0)
            if not active:
                return OracleResult(bits, LinearScheme(bits, {}))
            searches = search_cache.get(active)
            if searches is None:
                searches = {
                    k: _SignatureSearch(channel, knowledge, k, active,
                                        min(caps[k - 1], max_total_bits))
                    for k in active
                }
                search_cache[active] = searches
            assignment = _feasible_assignment(channel, knowledge, bits, searches, tables)
            if assignment is None:
                continue
            gens: dict[tuple[int, int], BinaryMatrix] = {}
            for k in active:
                joints = searches[k].witness_vectors(bits[k - 1], assignment[k])
                for j, g in searches[k].space.preimage_generators(joints).items():
                    if not g.is_zero():
                        gens[(j, k)] = g
            scheme = LinearScheme(bits, gens)
            rates = scheme_rates(channel, knowledge, scheme)
            return OracleResult(rates, scheme)
    raise RuntimeError("unreachable: the all-zero allocation is always feasible")
