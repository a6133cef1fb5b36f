import pytest

from mathdup.lcs import lcs_length, lcs_ratio

hypothesis = pytest.importorskip("hypothesis")
from hypothesis import given, settings
from hypothesis import strategies as st


def _lcs_oracle(a, b):
    # plain quadratic DP, kept independent of the implementation under test
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[len(a)][len(b)]


def test_known_values():
    assert lcs_length("abcbdab", "bdcaba") == 4
    assert lcs_length("", "anything") == 0
    assert lcs_length("same", "same") == 4


def test_ratio_normalizes_by_longer():
    assert lcs_ratio("ab", "abcd") == pytest.approx(2 / 4)
    assert lcs_ratio([], []) == 0.0
    assert lcs_ratio("x", []) == 0.0


@given(
    a=st.lists(st.sampled_from("abc"), max_size=12),
    b=st.lists(st.sampled_from("abc"), max_size=12),
)
@settings(max_examples=300)
def test_matches_oracle(a, b):
    assert lcs_length(a, b) == _lcs_oracle(a, b)


@given(
    a=st.lists(st.sampled_from("abcd"), max_size=15),
    b=st.lists(st.sampled_from("abcd"), max_size=15),
)
@settings(max_examples=100)
def test_symmetric_and_bounded(a, b):
    assert lcs_length(a, b) == lcs_length(b, a)
    assert 0.0 <= lcs_ratio(a, b) <= 1.0
