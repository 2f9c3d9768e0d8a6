import pytest
from hypothesis import given

from helpers import all_frames, fixture_frame, frames
from modalcube.errors import FrameParseError, InvalidArgumentError
from modalcube.kripke import (
    Condition,
    Frame,
    check_condition,
    check_condition_set,
    frame_parse,
    frame_print,
    parse_conditions,
)
from modalcube.oracle import naive_check_condition

REFL, SYM, SER, TRANS, EUCL = Condition


def test_single_loop_is_reflexive():
    assert check_condition(Frame.from_edges(1, [(0, 0)]), 0, REFL)


def test_c1_frame_not_transitive():
    frame = Frame.from_edges(2, [(0, 0), (0, 1), (1, 0)])
    assert not check_condition(frame, 0, TRANS)


def test_c17_frame():
    frame = Frame.from_edges(2, [(0, 0), (0, 1), (1, 1)])
    assert check_condition(frame, 0, SER)
    assert check_condition(frame, 0, TRANS)
    assert not check_condition(frame, 0, EUCL)


def test_c18_frame():
    frame = Frame.from_edges(3, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)])
    assert check_condition(frame, 0, SER)
    assert check_condition(frame, 0, EUCL)
    assert not check_condition(frame, 0, TRANS)
    assert check_condition_set(frame, 0, {SER, EUCL})
    assert not check_condition_set(frame, 0, {SER, TRANS, EUCL})


def test_empty_condition_set_always_holds():
    for frame in all_frames(2):
        assert check_condition_set(frame, 0, frozenset())


def test_relation_index_out_of_range():
    frame = Frame.from_edges(1, [(0, 0)])
    with pytest.raises(InvalidArgumentError):
        check_condition(frame, 1, REFL)
    with pytest.raises(InvalidArgumentError):
        check_condition_set(frame, 3, {SER})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_word_parallel_checkers_match_naive_oracle(n):
    for frame in all_frames(n):
        for cond in Condition:
            assert check_condition(frame, 0, cond) == naive_check_condition(frame, 0, cond), (frame, cond)


@given(frames(max_worlds=6))
def test_refl_implies_ser(frame):
    if check_condition(frame, 0, REFL):
        assert check_condition(frame, 0, SER)


@given(frames(max_worlds=6))
def test_sym_and_trans_imply_eucl(frame):
    if check_condition_set(frame, 0, {SYM, TRANS}):
        assert check_condition(frame, 0, EUCL)


@given(frames(max_worlds=6))
def test_refl_and_eucl_imply_sym(frame):
    if check_condition_set(frame, 0, {REFL, EUCL}):
        assert check_condition(frame, 0, SYM)


def test_frame_rejects_phantom_edges():
    with pytest.raises(InvalidArgumentError):
        Frame(2, ((0b100, 0),))
    with pytest.raises(InvalidArgumentError):
        Frame(0, ((),))
    with pytest.raises(InvalidArgumentError):
        Frame(1, ())


def test_codes_round_trip():
    for code in range(16):
        assert Frame.from_code(2, code).code() == code
    assert Frame.from_edges(2, [(1, 1)]).code() == 8


# -- text format -------------------------------------------------------------

def test_parse_empty_relation():
    frame = frame_parse("worlds: 1\nrel 0:")
    assert frame == Frame.from_edges(1, [])


def test_parse_one_based_pairs():
    frame = frame_parse("worlds: 2\nrel 0: (1,1) (1,2) (2,1)")
    assert frame == Frame.from_edges(2, [(0, 0), (0, 1), (1, 0)])


def test_parse_comments_blank_lines_and_multiple_relations():
    text = "# header\n\nworlds: 3  # three\nrel 0: (1,2)\n\nrel 1: ( 3 , 3 ) (2,1)\n"
    frame = frame_parse(text)
    assert frame.edges(0) == [(0, 1)]
    assert frame.edges(1) == [(1, 0), (2, 2)]


def test_print_format():
    frame = Frame.from_edges(2, [(0, 0), (0, 1), (1, 0)])
    assert frame_print(frame) == "worlds: 2\nrel 0: (1,1) (1,2) (2,1)\n"
    assert frame_print(Frame.from_edges(1, [])) == "worlds: 1\nrel 0:\n"


@given(frames(max_worlds=6, max_rels=3))
def test_print_parse_round_trip(frame):
    assert frame_parse(frame_print(frame)) == frame


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("world: 2\nrel 0:", 1, 1),
        ("worlds: 0\nrel 0:", 1, 9),
        ("worlds: 2", 2, 1),
        ("worlds: 2\nrel 0: (1,3)", 2, 8),
        ("worlds: 2\nrel 0: (0,1)", 2, 8),
        ("worlds: 2\nrel 0: (1,2) (1,2)", 2, 14),
        ("worlds: 2\nrel 0: (1,2) 1,2", 2, 14),
        ("worlds: 2\nrel 0:\nrel 0:", 3, 5),
        ("worlds: 2\nrel 1: (1,1)", 2, 1),
        ("worlds: 2\nrelation 0:", 2, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(FrameParseError) as info:
        frame_parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_fixture_files_parse():
    assert fixture_frame("c1") == Frame.from_edges(2, [(0, 0), (0, 1), (1, 0)])
    assert fixture_frame("c8") == Frame.from_edges(1, [])


def test_parse_conditions():
    assert parse_conditions("ser, trans") == {SER, TRANS}
    assert parse_conditions("") == frozenset()
    with pytest.raises(KeyError):
        parse_conditions("reflexive")
