"""Smoke test for the qamus Python bindings.

Build and install first:

    pip install --no-build-isolation -e crates/python
"""

import pathlib
import sys
import tempfile

import qamus

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def main():
    assert qamus.arabic_to_buckwalter("وَبُنُودِ") == "wabunuwdi"
    assert qamus.buckwalter_to_arabic("bnd") == "بند"
    assert qamus.strip_diacritics("say~Arapu") == "syArp"
    assert qamus.match_score("wabunuwdi", "wabunuwd") == (2, 0, 2)
    assert qamus.match_score("wabunuwdi", "qalam") is None
    kinds = [k for _, k, _, _ in qamus.tokenize("وبنود 2015.")]
    assert kinds == ["arabic", "whitespace", "number", "punctuation"], kinds

    with tempfile.TemporaryDirectory() as tmp:
        dict_path = pathlib.Path(tmp) / "dict.tsv"
        n = qamus.build_dictionary([str(FIXTURES / "corpus.txt")], str(dict_path), encoding="buckwalter")
        assert n == 13, n
        assert dict_path.read_text() == (FIXTURES / "dict.tsv").read_text()

    lex = str(FIXTURES / "lexicon")
    lem = qamus.Lemmatizer(str(FIXTURES / "dict.tsv"), lex)
    r = lem.lemmatize("وبنود")
    assert (r.lemma, r.lemma_buckwalter, r.source) == ("بند", "bnd", "dictionary"), r
    assert lem.lemmatize("syArp").lemma_buckwalter == "syAr"
    assert lem.lemmatize("hwng").source == "passthrough"
    lemmas = [x.lemma for x in lem.lemmatize_text("وبنود سيارة، هونغ")]
    assert lemmas == ["بند", "سيار", "،", "هونغ"], lemmas

    with_overrides = qamus.Lemmatizer(
        str(FIXTURES / "dict.tsv"), lex, overrides=str(FIXTURES / "overrides.tsv"), normalize_hamza=True
    )
    assert with_overrides.lemmatize("syArp").lemma_buckwalter == "syArp"
    scored, correct, accuracy = with_overrides.evaluate(str(FIXTURES / "gold.tsv"))
    assert scored == 5 and 0.0 <= accuracy <= 1.0

    try:
        qamus.Lemmatizer(str(FIXTURES / "missing.tsv"), lex)
    except OSError as e:
        assert "missing.tsv" in str(e)
    else:
        raise AssertionError("missing dictionary accepted")

    print(f"ok: gold accuracy {correct}/{scored}")


if __name__ == "__main__":
    sys.exit(main())
