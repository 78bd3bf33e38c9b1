import string

from hypothesis import given, strategies as st

from editkit.tokenizer import detokenize, tokenize


def test_empty():
    assert tokenize("") == []


def test_hyphen_kept_and_punct_split():
    assert tokenize("well-known fact.") == ["well-known", "fact", "."]


def test_whitespace_split():
    assert tokenize("He ran") == ["He", "ran"]


def test_wrapping_punctuation():
    assert tokenize("(hello), world!") == ["(", "hello", ")", ",", "world", "!"]


def test_pure_punctuation_chunk():
    assert tokenize("...") == [".", ".", "."]


def test_no_empty_tokens():
    for text in ["a  b", " x ", "-", "--", "a- -b"]:
        assert all(tok for tok in tokenize(text))


words = st.text(alphabet=string.ascii_letters + string.digits + ".,;:!?()-'\"", min_size=1, max_size=12)


@given(st.lists(words, max_size=8))
def test_idempotent_on_own_output(chunks):
    toks = tokenize(" ".join(chunks))
    assert tokenize(detokenize(toks)) == toks
