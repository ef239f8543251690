mod common;

use std::collections::HashMap;
use std::fs;

use proptest::prelude::*;
use qamus::dictionary::{DictionaryBuilder, DictionaryError};
use qamus::{buckwalter_to_arabic, DiacritizationDictionary, Encoding};

use common::{naive_strip, random_word, Lcg};

/// Corpus files of random words, plus the words in file order.
fn synthetic_corpus(seed: u64, files: usize, words_per_file: usize) -> Vec<Vec<String>> {
    let mut rng = Lcg(seed);
    // A small vocabulary so forms repeat.
    let vocab: Vec<String> = (0..400).map(|_| random_word(&mut rng)).collect();
    (0..files)
        .map(|_| {
            (0..words_per_file)
                .map(|_| vocab[rng.below(vocab.len())].clone())
                .collect()
        })
        .collect()
}

fn recount(files: &[Vec<String>]) -> HashMap<String, Vec<(String, u64)>> {
    let mut counts: HashMap<String, HashMap<String, u64>> = HashMap::new();
    for w in files.iter().flatten() {
        *counts
            .entry(naive_strip(w))
            .or_default()
            .entry(w.clone())
            .or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(bare, forms)| {
            let mut forms: Vec<(String, u64)> = forms.into_iter().collect();
            forms.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            (bare, forms)
        })
        .collect()
}

fn write_files(
    dir: &std::path::Path,
    files: &[Vec<String>],
    arabic: bool,
) -> Vec<std::path::PathBuf> {
    files
        .iter()
        .enumerate()
        .map(|(i, words)| {
            let path = dir.join(format!("part{i}.txt"));
            let mut text = String::new();
            for (j, w) in words.iter().enumerate() {
                let w = if arabic {
                    buckwalter_to_arabic(w).unwrap()
                } else {
                    w.clone()
                };
                text.push_str(&w);
                text.push_str(if j % 12 == 11 {
                    "\n"
                } else if j % 5 == 0 {
                    "، "
                } else {
                    " "
                });
            }
            fs::write(&path, text).unwrap();
            path
        })
        .collect()
}

fn as_map(d: &DiacritizationDictionary) -> HashMap<String, Vec<(String, u64)>> {
    d.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

#[test]
fn matches_independent_recount() {
    let files = synthetic_corpus(1, 6, 3000);
    let dir = tempfile::tempdir().unwrap();
    let expected = recount(&files);
    for arabic in [false, true] {
        let paths = write_files(dir.path(), &files, arabic);
        let encoding = if arabic {
            Encoding::Arabic
        } else {
            Encoding::Buckwalter
        };
        let d = DiacritizationDictionary::build_from_corpus(&paths, encoding, 1).unwrap();
        assert_eq!(as_map(&d), expected);
        assert_eq!(d.total_tokens(), 18_000);
        assert_eq!(d.distinct_bare_words(), expected.len());
        for (bare, forms) in &expected {
            assert_eq!(d.most_frequent(bare), Some(forms[0].0.as_str()));
        }
    }
}

#[test]
fn file_order_does_not_matter() {
    let files = synthetic_corpus(2, 5, 1000);
    let dir = tempfile::tempdir().unwrap();
    let mut paths = write_files(dir.path(), &files, false);
    let a = DiacritizationDictionary::build_from_corpus(&paths, Encoding::Buckwalter, 1).unwrap();
    paths.reverse();
    paths.swap(0, 2);
    let b = DiacritizationDictionary::build_from_corpus(&paths, Encoding::Buckwalter, 1).unwrap();
    assert_eq!(a, b);
    let mut bytes_a = Vec::new();
    let mut bytes_b = Vec::new();
    a.write_to(&mut bytes_a).unwrap();
    b.write_to(&mut bytes_b).unwrap();
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn merge_is_order_independent() {
    let files = synthetic_corpus(3, 4, 500);
    let builders: Vec<DictionaryBuilder> = files
        .iter()
        .map(|words| {
            let mut b = DictionaryBuilder::new();
            for w in words {
                b.add_word(w);
            }
            b
        })
        .collect();
    let forward = builders
        .iter()
        .cloned()
        .fold(DictionaryBuilder::new(), DictionaryBuilder::merge)
        .finish(1);
    let backward = builders
        .into_iter()
        .rev()
        .fold(DictionaryBuilder::new(), DictionaryBuilder::merge)
        .finish(1);
    assert_eq!(forward, backward);
    assert_eq!(as_map(&forward), recount(&files));
}

#[test]
fn min_count_prunes_but_keeps_total() {
    let files = synthetic_corpus(4, 1, 2000);
    let dir = tempfile::tempdir().unwrap();
    let paths = write_files(dir.path(), &files, false);
    let d = DiacritizationDictionary::build_from_corpus(&paths, Encoding::Buckwalter, 5).unwrap();
    assert_eq!(d.total_tokens(), 2000);
    let mut expected = recount(&files);
    expected.retain(|_, forms| {
        forms.retain(|(_, n)| *n >= 5);
        !forms.is_empty()
    });
    assert_eq!(as_map(&d), expected);
}

#[test]
fn corpus_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "123 ... !!\n").unwrap();
    assert!(matches!(
        DiacritizationDictionary::build_from_corpus(&[&empty], Encoding::Arabic, 1),
        Err(DictionaryError::EmptyCorpus)
    ));
    let missing = dir.path().join("missing.txt");
    match DiacritizationDictionary::build_from_corpus(&[&empty, &missing], Encoding::Arabic, 1) {
        Err(DictionaryError::Io { path, .. }) => assert_eq!(path, missing),
        other => panic!("expected Io error, got {other:?}"),
    }
}

#[test]
fn load_rejects_bad_files() {
    let cases = [
        ("wbnwd\twabunuwdi\t3\n", 1),
        ("#qamus-dict v1\nwbnwd\twabunuwdi\n", 2),
        ("#qamus-dict v1\nwbnwd\twabunuwdi\tmany\n", 2),
        (
            "#qamus-dict v1\nwbnwd\twabanuwdi\t1\nwbnwd\twabunuwdi\t3\n",
            3,
        ),
        (
            "#qamus-dict v1\nwbnwd\twabunuwdi\t3\nqlm\tqalam\t1\nwbnwd\twabanuwdi\t1\n",
            4,
        ),
        ("#qamus-dict v1\nbnd\twabunuwdi\t3\n", 2),
    ];
    for (text, line) in cases {
        match DiacritizationDictionary::parse(text) {
            Err(DictionaryError::MalformedDictionaryLine { line_no, .. }) => {
                assert_eq!(line_no, line, "{text:?}")
            }
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(
        DiacritizationDictionary::parse("#qamus-dict v1\nwbnwd\twabunuwdi\t0\n"),
        Err(DictionaryError::CountNotPositive { line_no: 2 })
    ));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("dict.tsv");
    assert!(matches!(
        DiacritizationDictionary::load(&missing),
        Err(DictionaryError::Io { .. })
    ));
}

#[test]
fn fixture_dictionary_loads() {
    let d = DiacritizationDictionary::load(common::fixtures().join("dict.tsv")).unwrap();
    assert_eq!(d.most_frequent("wbnwd"), Some("wabunuwdi"));
    assert_eq!(d.forms("wbnwd").unwrap()[0].1, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn save_load_round_trip(seed in any::<u64>(), n in 0usize..300) {
        let mut rng = Lcg(seed);
        let mut builder = DictionaryBuilder::new();
        for _ in 0..n {
            builder.add_word(&random_word(&mut rng));
        }
        let d = builder.finish(1);
        let mut bytes = Vec::new();
        d.write_to(&mut bytes).unwrap();
        let back = DiacritizationDictionary::parse(std::str::from_utf8(&bytes).unwrap()).unwrap();
        prop_assert_eq!(&back, &d);
        let mut again = Vec::new();
        back.write_to(&mut again).unwrap();
        prop_assert_eq!(again, bytes);
    }
}
