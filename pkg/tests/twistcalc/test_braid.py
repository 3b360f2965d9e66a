"""Braid words, their permutations and the longest element."""

import pytest

from twistbench.errors import PreconditionError
from twistbench.twistcalc import BraidWord, is_longest, longest_word, word_permutation


def test_parse():
    w = BraidWord.parse(3, " 1, 2,1 ")
    assert w.letters == (1, 2, 1)
    assert str(w) == "1,2,1"
    assert len(BraidWord.parse(3, "")) == 0
    assert str(BraidWord(3)) == "()"


@pytest.mark.parametrize("text", ["1,x", "0", "1,5"])
def test_parse_rejects(text):
    with pytest.raises(PreconditionError):
        BraidWord.parse(4, text)


def test_concatenation_needs_same_group():
    assert (BraidWord(2, (1,)) + BraidWord(2, (2,))).letters == (1, 2)
    with pytest.raises(PreconditionError):
        BraidWord(2, (1,)) + BraidWord(3, (1,))


def test_longest_word():
    assert longest_word(1).letters == (1,)
    assert longest_word(3).letters == (1, 2, 1, 3, 2, 1)
    for n in range(1, 6):
        assert is_longest(longest_word(n))


def test_permutation_reads_left_to_right():
    assert word_permutation(BraidWord(2, (1, 2))) == (2, 3, 1)
    assert word_permutation(BraidWord(2, (1, 2, 1))) == (3, 2, 1)


def test_non_reduced_words_are_not_longest():
    assert not is_longest(BraidWord(2, (1, 1, 1)))
    assert not is_longest(BraidWord(2, (1, 2)))
    assert is_longest(BraidWord(2, (2, 1, 2)))


def test_longest_word_needs_positive_n():
    with pytest.raises(PreconditionError):
        longest_word(0)
