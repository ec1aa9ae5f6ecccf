import json

import pytest
from hypothesis import given, settings, strategies as st

from cifc.gf2 import BinaryMatrix
from cifc.lda import (
    KnowledgeStructure,
    LdaChannel,
    LinearScheme,
    UndecodableSchemeError,
    decodable,
    receive_map,
    scheme_rates,
    shift_matrix,
    shift_power,
)
from cifc.schemes import example_scheme

from tests.exhaustive import simulate_all, simulate_zero_error


# -- shift matrices ----------------------------------------------------------

def test_shift_matrix_contract_cases():
    assert shift_matrix(3, 3) == BinaryMatrix.identity(3)
    assert shift_matrix(3, 0).is_zero()
    s = shift_matrix(5, 3)
    ones = [(r + 1, c + 1) for r in range(5) for c in range(5) if s.entry(r, c)]
    assert ones == [(3, 1), (4, 2), (5, 3)]


def test_shift_matrix_domain_errors():
    with pytest.raises(ValueError):
        shift_matrix(3, 4)
    with pytest.raises(ValueError):
        shift_matrix(3, -1)
    with pytest.raises(ValueError):
        shift_matrix(65, 0)


def test_shift_algebra_composition():
    # S^(m-a) S^(m-b) = S^(2m-a-b) for all 0 <= a,b <= m <= 6
    for m in range(1, 7):
        for a in range(m + 1):
            for b in range(m + 1):
                lhs = shift_matrix(m, a) @ shift_matrix(m, b)
                assert lhs == shift_power(m, 2 * m - a - b)


# -- channel and serialization ----------------------------------------------

def test_channel_json_round_trip():
    ch = LdaChannel.from_rows([[5, 3, 3], [3, 2, 3], [5, 3, 2]])
    again = LdaChannel.from_json(ch.to_json())
    assert again == ch and json.loads(ch.to_json())["K"] == 3


def test_channel_validation():
    with pytest.raises(ValueError):
        LdaChannel.from_rows([[1, 2], [3, -1]])
    with pytest.raises(ValueError):
        LdaChannel.from_rows([[1, 2, 3], [1, 2, 3]])
    with pytest.raises(ValueError):
        LdaChannel.from_rows([[65]])


def test_symmetric_constructor():
    ch = LdaChannel.symmetric(2, 1, 1, 1)
    assert ch.gains == ((2, 1, 1), (1, 2, 1), (1, 1, 1))
    assert ch.m == 2


def test_scheme_json_round_trip():
    _, _, scheme = example_scheme(1)
    again = LinearScheme.from_json(scheme.to_json())
    assert again.bits == scheme.bits
    assert dict(again.generators) == dict(scheme.generators)


def test_knowledge_structures():
    assert KnowledgeStructure.cms(3).known == (frozenset({1}), frozenset({1, 2}),
                                               frozenset({1, 2, 3}))
    assert KnowledgeStructure.coms(3).known[0] == frozenset({1})
    assert KnowledgeStructure.coms(3).known[2] == frozenset({1, 2, 3})
    assert KnowledgeStructure.pms(4).known[2] == frozenset({1, 3})
    relay = KnowledgeStructure.ifc_cr(3)
    assert relay.known[2] == frozenset({1, 2})
    assert relay.transmitters_knowing(3) == ()
    round_trip = KnowledgeStructure.from_json(relay.to_json())
    assert round_trip == relay


# -- receive maps ------------------------------------------------------------

def test_receive_map_single_user_identity():
    ch = LdaChannel.from_rows([[3]])
    kn = KnowledgeStructure.cms(1)
    scheme = LinearScheme((3,), {(1, 1): BinaryMatrix.identity(3)})
    maps = receive_map(ch, kn, scheme, 1)
    assert maps[0] == BinaryMatrix.identity(3)


def test_receive_map_example1_zero_forcing():
    ch, kn, scheme = example_scheme(1)
    maps = receive_map(ch, kn, scheme, 1)
    assert maps[1].is_zero()          # message 2 cancelled at receiver 1
    maps2 = receive_map(ch, kn, scheme, 2)
    assert maps2[0].is_zero()         # message 1 cancelled at receiver 2


def test_receive_map_all_zero_generators():
    ch = LdaChannel.from_rows([[2, 1], [1, 2]])
    kn = KnowledgeStructure.of([[1], [2]])
    scheme = LinearScheme((1, 1), {(1, 1): BinaryMatrix.zeros(2, 1),
                                   (2, 2): BinaryMatrix.zeros(2, 1)})
    for rx in (1, 2):
        assert all(m.is_zero() for m in receive_map(ch, kn, scheme, rx))


def test_receive_map_rejects_unknown_message():
    ch = LdaChannel.from_rows([[2, 1], [1, 2]])
    kn = KnowledgeStructure.of([[1], [2]])
    scheme = LinearScheme((1, 1), {(1, 2): BinaryMatrix.zeros(2, 1),
                                   (2, 2): BinaryMatrix.zeros(2, 1)})
    with pytest.raises(ValueError):
        receive_map(ch, kn, scheme, 1)


# -- decodability ------------------------------------------------------------

def test_decodable_zero_bits_trivially_true():
    ch = LdaChannel.from_rows([[1, 1], [1, 1]])
    kn = KnowledgeStructure.of([[1], [2]])
    scheme = LinearScheme((0, 1), {(2, 2): BinaryMatrix.identity(1)})
    assert decodable(ch, kn, scheme, 1)


def test_decodable_one_bit_collision():
    # both users put one bit on the same received level with no cognition
    ch = LdaChannel.from_rows([[1, 1], [1, 1]])
    kn = KnowledgeStructure.of([[1], [2]])
    one = BinaryMatrix.identity(1)
    scheme = LinearScheme((1, 1), {(1, 1): one, (2, 2): one})
    assert not decodable(ch, kn, scheme, 1)
    assert not simulate_zero_error(ch, kn, scheme, 1)


def test_scheme_rates_reports_first_failing_receiver():
    ch = LdaChannel.from_rows([[1, 1], [1, 1]])
    kn = KnowledgeStructure.of([[1], [2]])
    one = BinaryMatrix.identity(1)
    scheme = LinearScheme((1, 1), {(1, 1): one, (2, 2): one})
    with pytest.raises(UndecodableSchemeError) as err:
        scheme_rates(ch, kn, scheme)
    assert err.value.receiver == 1


def test_scheme_rates_all_zero_scheme():
    ch = LdaChannel.from_rows([[2, 1], [1, 2]])
    kn = KnowledgeStructure.of([[1], [2]])
    assert scheme_rates(ch, kn, LinearScheme((0, 0), {})) == (0, 0)


# -- rank criterion vs exhaustive simulation ---------------------------------

@st.composite
def channel_knowledge_scheme(draw, symmetric12=False):
    k = draw(st.integers(2, 3))
    gains = [[draw(st.integers(0, 3)) for _ in range(k)] for _ in range(k)]
    gains[0][0] = max(gains[0][0], 1)  # keep m >= 1
    if symmetric12:
        gains[1][1] = gains[0][0]
        gains[1][0] = gains[0][1]
        if k == 3:
            gains[1][2] = gains[0][2]
            gains[2][1] = gains[2][0]
    ch = LdaChannel.from_rows(gains)
    sets = []
    for j in range(1, k + 1):
        extra = draw(st.sets(st.integers(1, k), max_size=k))
        sets.append({j} | extra)
    kn = KnowledgeStructure.of(sets)
    bits = [draw(st.integers(0, 2)) for _ in range(k)]
    while sum(bits) > 6:
        bits[bits.index(max(bits))] -= 1
    gens = {}
    for j in range(1, k + 1):
        for msg in sorted(kn.known[j - 1]):
            b = bits[msg - 1]
            if b == 0:
                continue
            words = tuple(draw(st.integers(0, (1 << b) - 1)) for _ in range(ch.m))
            gens[(j, msg)] = BinaryMatrix(ch.m, b, words)
    return ch, kn, LinearScheme(tuple(bits), gens)


@settings(max_examples=150, deadline=None)
@given(channel_knowledge_scheme())
def test_rank_criterion_matches_simulation(data):
    ch, kn, scheme = data
    for rx in range(1, ch.K + 1):
        assert decodable(ch, kn, scheme, rx) == simulate_zero_error(ch, kn, scheme, rx)


def test_examples_decode_under_simulation():
    for which in (1, 2, 3):
        ch, kn, scheme = example_scheme(which)
        assert all(simulate_all(ch, kn, scheme))


# -- user relabeling symmetry -------------------------------------------------

def _swap12(ch, kn, scheme):
    rename = lambda u: {1: 2, 2: 1}.get(u, u)
    sets: list = [None] * ch.K
    for j in range(1, ch.K + 1):
        sets[rename(j) - 1] = {rename(msg) for msg in kn.known[j - 1]}
    bits = list(scheme.bits)
    bits[0], bits[1] = bits[1], bits[0]
    gens = {(rename(j), rename(k)): g for (j, k), g in scheme.generators.items()}
    return KnowledgeStructure.of(sets), LinearScheme(tuple(bits), gens)


@settings(max_examples=100, deadline=None)
@given(channel_knowledge_scheme(symmetric12=True))
def test_relabeling_symmetry(data):
    ch, kn, scheme = data
    kn2, scheme2 = _swap12(ch, kn, scheme)
    for rx in range(1, ch.K + 1):
        swapped_rx = {1: 2, 2: 1}.get(rx, rx)
        assert decodable(ch, kn, scheme, rx) == decodable(ch, kn2, scheme2, swapped_rx)
