import io

import numpy as np
import pytest

from robustsimplex import (
    CorpusProfile,
    ingest,
    make_prob_vector,
    merge_profiles,
    profile_to_reference,
    rebin,
    rebin_counts,
)
from robustsimplex.errors import DimensionMismatch, EmptyCorpus


def counts_of(text, k=10):
    return ingest(text, k=k).counts


# ---------------------------------------------------------------------------
# Tokenization
# ---------------------------------------------------------------------------


def test_two_sentences():
    profile = ingest("One two. Three!", k=10)
    assert profile.total_sentences == 2
    assert profile.counts[1] == 1  # one 2-word sentence
    assert profile.counts[0] == 1  # one 1-word sentence


def test_empty_corpus():
    with pytest.raises(EmptyCorpus):
        ingest("", k=10)
    with pytest.raises(EmptyCorpus):
        ingest("   \n\t  ", k=10)
    with pytest.raises(EmptyCorpus):
        ingest("!!! ??. --", k=10)  # punctuation runs are not words


def test_length_clipping():
    long_sentence = " ".join(["word"] * 500) + "."
    profile = ingest(long_sentence, k=100)
    assert profile.counts[99] == 1
    assert profile.total_sentences == 1


def test_decimal_point_does_not_split():
    profile = ingest("The value 3.14 is pi.", k=10)
    assert profile.total_sentences == 1
    assert profile.counts[4] == 1  # The / value / 3.14 / is / pi.


def test_abbreviation_splits_by_design():
    profile = ingest("M. Dupont est venu. Bonjour!", k=10)
    # the period of "M." is followed by a space, so it ends a sentence
    assert profile.total_sentences == 3
    assert profile.counts[0] == 2  # "M." and "Bonjour!"
    assert profile.counts[2] == 1  # "Dupont est venu."


def test_ellipsis_and_question_marks():
    profile = ingest("Vraiment… Oui! Non? Peut-être", k=10)
    assert profile.total_sentences == 4
    assert profile.counts[0] == 4


def test_trailing_fragment_counts():
    profile = ingest("One two. Three four five", k=10)
    assert profile.total_sentences == 2
    assert profile.counts[1] == 1
    assert profile.counts[2] == 1


def test_words_require_alphanumerics():
    profile = ingest("alpha -- beta.", k=10)
    assert profile.counts[1] == 1  # "--" is not a word


def test_newlines_are_whitespace():
    a = counts_of("One two.\nThree four.")
    b = counts_of("One two. Three four.")
    assert a == b


# ---------------------------------------------------------------------------
# Byte handling
# ---------------------------------------------------------------------------


def test_bytes_and_str_agree():
    text = "Première phrase. Deuxième phrase!"
    assert ingest(text, k=10).counts == ingest(text.encode("utf-8"), k=10).counts


def test_stream_equals_bytes():
    text = ("Une phrase assez longue pour traverser les blocs. " * 5000).strip()
    data = text.encode("utf-8")
    from_bytes = ingest(data, k=20)
    from_stream = ingest(io.BytesIO(data), k=20)
    assert from_bytes.counts == from_stream.counts
    assert from_bytes.total_sentences == from_stream.total_sentences


def test_invalid_bytes_replaced_and_counted():
    data = b"Bonjour \xff\xfe monde. Fin."
    profile = ingest(data, k=10)
    assert profile.replaced_byte_runs == 2
    assert profile.total_sentences == 2


def test_split_multibyte_across_chunks():
    # a two-byte character sitting on the 64 KiB chunk boundary must survive
    pad = b"a" * 65535
    data = pad + "é fin.".encode("utf-8")
    profile = ingest(io.BytesIO(data), k=10)
    assert profile.replaced_byte_runs == 0
    assert profile.total_sentences == 1


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


def test_profile_validation():
    with pytest.raises(ValueError):
        CorpusProfile(name="x", k=3, counts=(1, 2), total_sentences=3)
    with pytest.raises(ValueError):
        CorpusProfile(name="x", k=2, counts=(1, 2), total_sentences=4)
    with pytest.raises(ValueError):
        CorpusProfile(name="x", k=2, counts=(-1, 2), total_sentences=1)


def test_profile_to_reference():
    profile = CorpusProfile(name="x", k=2, counts=(1, 1), total_sentences=2)
    assert np.array_equal(profile_to_reference(profile).entries, [0.5, 0.5])
    degenerate = CorpusProfile(name="y", k=2, counts=(0, 4), total_sentences=4)
    assert np.array_equal(profile_to_reference(degenerate).entries, [0.0, 1.0])
    with pytest.raises(EmptyCorpus):
        profile_to_reference(CorpusProfile(name="z", k=2, counts=(0, 0), total_sentences=0))


def test_two_corpora_distinct_and_valid():
    a = ingest("Short one. Short two. Short three.", k=15, name="a")
    b = ingest(
        "This sentence is noticeably longer than the others. "
        "Here is another long sentence with many words inside!",
        k=15,
        name="b",
    )
    va, vb = profile_to_reference(a), profile_to_reference(b)
    gap = 0.5 * float(np.abs(va.entries - vb.entries).sum())
    assert gap > 0.0


def test_merge_profiles():
    a = ingest("One two. Three!", k=10, name="a")
    b = ingest("Four five six. Seven!", k=10, name="b")
    merged = merge_profiles(a, b)
    assert merged.total_sentences == 4
    assert merged.counts[0] == 2
    both = ingest("One two. Three! Four five six. Seven!", k=10)
    assert merged.counts == both.counts
    with pytest.raises(DimensionMismatch):
        merge_profiles(a, ingest("Hi there.", k=5))


def test_merge_is_commutative_and_associative():
    a = ingest("Un deux. Trois quatre cinq.", k=8, name="a")
    b = ingest("Six. Sept huit!", k=8, name="b")
    c = ingest("Neuf dix onze douze?", k=8, name="c")
    ab_c = merge_profiles(merge_profiles(a, b), c)
    a_bc = merge_profiles(a, merge_profiles(b, c))
    assert ab_c.counts == a_bc.counts
    assert merge_profiles(a, b).counts == merge_profiles(b, a).counts


def test_ingest_deterministic():
    text = "Toute phrase repetee donne le meme profil. Encore une fois!"
    assert ingest(text, k=12).counts == ingest(text, k=12).counts


def test_json_schema_round_trip():
    profile = ingest("One two. Three!", k=10, name="tiny")
    obj = profile.to_json_obj()
    assert set(obj) == {"name", "k", "counts", "total_sentences"}
    again = CorpusProfile.from_json_obj(obj)
    assert again.counts == profile.counts
    assert again.name == "tiny"


def test_rebin_commutes_with_normalization():
    rng = np.random.default_rng(17)
    counts = tuple(int(c) for c in rng.integers(0, 50, size=30))
    if sum(counts) == 0:
        counts = (1,) + counts[1:]
    profile = CorpusProfile(name="x", k=30, counts=counts, total_sentences=sum(counts))
    for new_k in (1, 7, 15, 30):
        via_vector = rebin(profile_to_reference(profile), new_k)
        regrouped = rebin_counts(profile.counts, new_k)
        via_counts = profile_to_reference(
            CorpusProfile(name="x", k=new_k, counts=regrouped, total_sentences=sum(regrouped))
        )
        assert np.allclose(via_vector.entries, via_counts.entries, atol=1e-12)
