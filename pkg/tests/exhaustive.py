"""Brute-force zero-error decoding check by enumerating all message tuples.

This is the independent oracle for the rank-based decodability criterion: it
simulates the channel output for every message tuple and asks whether the
output at a receiver determines that receiver's message uniquely.  Kept out
of the package on purpose; tests compare it against cifc.lda.decodable.
"""

from __future__ import annotations

import itertools

from cifc.lda import KnowledgeStructure, LdaChannel, LinearScheme

MAX_TOTAL_BITS = 12


def _transmit_words(channel: LdaChannel, knowledge: KnowledgeStructure,
                    scheme: LinearScheme, messages: tuple[int, ...]) -> list[int]:
    xs = []
    for j in range(1, channel.K + 1):
        x = 0
        for k in range(1, channel.K + 1):
            g = scheme.generators.get((j, k))
            if g is not None:
                x ^= g.mul_vec(messages[k - 1])
        xs.append(x)
    return xs


def simulate_zero_error(channel: LdaChannel, knowledge: KnowledgeStructure,
                        scheme: LinearScheme, rx: int) -> bool:
    """True iff receiver rx recovers its message exactly for every tuple."""
    if sum(scheme.bits) > MAX_TOTAL_BITS:
        raise ValueError("simulation budget exceeded")
    scheme.validate(channel, knowledge)
    links = [channel.link(rx, j) for j in range(1, channel.K + 1)]
    seen: dict[int, int] = {}
    spaces = [range(1 << b) for b in scheme.bits]
    for messages in itertools.product(*spaces):
        xs = _transmit_words(channel, knowledge, scheme, messages)
        y = 0
        for link, x in zip(links, xs):
            y ^= link.mul_vec(x)
        want = messages[rx - 1]
        if y in seen:
            if seen[y] != want:
                return False
        else:
            seen[y] = want
    return True


def simulate_all(channel: LdaChannel, knowledge: KnowledgeStructure,
                 scheme: LinearScheme) -> list[bool]:
    return [simulate_zero_error(channel, knowledge, scheme, rx)
            for rx in range(1, channel.K + 1)]
